"""Decision tree with information-gain threshold splits.

Each internal node tests one numeric feature against a threshold
(instances with value <= threshold go left). Split selection maximizes
information gain

    G = H(parent) - sum_side (W_side / W) * H(side)

with entropy H = -sum_c p_c log2(p_c) over (optionally weighted) class
proportions. Candidate thresholds are the midpoints between consecutive
distinct sorted feature values. Growth stops at purity, max_depth,
min_leaf, or when no candidate split has positive gain.

Instance weights make this the weak learner for boosting: class
proportions inside the entropy use weight mass, while min_leaf keeps
counting raw instances.

Random-forest support: when `subset_size` is given and smaller than the
feature count, each node draws that many distinct features from the
passed generator before evaluating splits (preorder: a node draws before
its left subtree, which draws before the right). When subset_size covers
every feature the draw is skipped entirely, making the forest reduce
exactly to bagging.

Gain ties break toward the lowest feature index, then lowest threshold;
leaf majorities break toward the lowest class index.
"""

from __future__ import annotations

import numpy as np

from ..errors import ModelError
from .base import Model, TreeConfig, fmt_floats, parse_floats

_GAIN_EPS = 1e-12


class TreeNode:
    __slots__ = ("feature", "threshold", "left", "right", "class_index", "distribution")

    def __init__(self):
        self.feature = -1
        self.threshold = 0.0
        self.left = None
        self.right = None
        self.class_index = -1
        self.distribution = None  # leaf-only: weighted class proportions

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def entropy(class_weights: np.ndarray) -> float:
    """Entropy in bits of a per-class weight (or count) vector."""
    total = class_weights.sum()
    if total <= 0.0:
        return 0.0
    p = class_weights[class_weights > 0.0] / total
    return float(-(p * np.log2(p)).sum())


def _entropy_rows(cw: np.ndarray) -> np.ndarray:
    totals = cw.sum(axis=1, keepdims=True)
    safe = np.where(totals > 0.0, totals, 1.0)
    p = cw / safe
    terms = np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
    return -terms.sum(axis=1)


def _best_split(X, y, w, n_classes, min_leaf, features):
    """Best (gain, feature, threshold) over the candidate features, or None."""
    n = X.shape[0]
    total_cw = np.zeros(n_classes)
    np.add.at(total_cw, y, w)
    total_w = total_cw.sum()
    parent_h = entropy(total_cw)
    best = None
    for f in features:
        order = np.argsort(X[:, f], kind="stable")
        xv = X[order, f]
        boundaries = np.nonzero(xv[1:] != xv[:-1])[0]  # split between i and i+1
        if boundaries.size == 0:
            continue
        counts = boundaries + 1
        valid = (counts >= min_leaf) & (n - counts >= min_leaf)
        boundaries = boundaries[valid]
        if boundaries.size == 0:
            continue
        cw = np.zeros((n, n_classes))
        cw[np.arange(n), y[order]] = w[order]
        cum = cw.cumsum(axis=0)
        left_cw = cum[boundaries]
        right_cw = total_cw - left_cw
        left_w = left_cw.sum(axis=1)
        right_w = right_cw.sum(axis=1)
        gains = parent_h - (left_w * _entropy_rows(left_cw) + right_w * _entropy_rows(right_cw)) / total_w
        i = int(np.argmax(gains))  # first max = lowest threshold
        gain = float(gains[i])
        if best is None or gain > best[0]:
            thr = float((xv[boundaries[i]] + xv[boundaries[i] + 1]) / 2.0)
            best = (gain, f, thr)
    return best


def grow_tree(
    X: np.ndarray,
    y: np.ndarray,
    weights: np.ndarray,
    n_classes: int,
    max_depth: int | None,
    min_leaf: int,
    rng=None,
    subset_size: int | None = None,
    depth: int = 0,
) -> TreeNode:
    node = TreeNode()
    cw = np.zeros(n_classes)
    np.add.at(cw, y, weights)
    n = X.shape[0]
    can_split = (
        n >= 2 * min_leaf
        and (max_depth is None or depth < max_depth)
        and np.count_nonzero(cw) > 1
    )
    if can_split:
        d = X.shape[1]
        if subset_size is not None and subset_size < d:
            features = rng.sample_indices(d, subset_size)
        else:
            features = range(d)
        best = _best_split(X, y, weights, n_classes, min_leaf, features)
        if best is not None and best[0] > _GAIN_EPS:
            _, node.feature, node.threshold = best
            mask = X[:, node.feature] <= node.threshold
            node.left = grow_tree(
                X[mask], y[mask], weights[mask], n_classes,
                max_depth, min_leaf, rng, subset_size, depth + 1,
            )
            node.right = grow_tree(
                X[~mask], y[~mask], weights[~mask], n_classes,
                max_depth, min_leaf, rng, subset_size, depth + 1,
            )
            return node
    total = cw.sum()
    node.distribution = cw / total if total > 0.0 else np.full(n_classes, 1.0 / n_classes)
    node.class_index = int(np.argmax(cw))
    return node


def tree_apply(node: TreeNode, x: np.ndarray) -> TreeNode:
    while not node.is_leaf:
        node = node.left if x[node.feature] <= node.threshold else node.right
    return node


def tree_predict_batch(node: TreeNode, X: np.ndarray) -> np.ndarray:
    return np.array([tree_apply(node, row).class_index for row in X], dtype=np.intp)


def tree_lines(node: TreeNode) -> list[str]:
    """Preorder serialization: `split f thr` / `leaf class p0 p1 ...`."""
    if node.is_leaf:
        return [f"leaf {node.class_index} {fmt_floats(node.distribution)}"]
    lines = [f"split {node.feature} {repr(node.threshold)}"]
    lines.extend(tree_lines(node.left))
    lines.extend(tree_lines(node.right))
    return lines


def tree_from_lines(lines: list[str], pos: int = 0) -> tuple[TreeNode, int]:
    parts = lines[pos].split()
    node = TreeNode()
    if parts[0] == "split":
        node.feature = int(parts[1])
        node.threshold = float(parts[2])
        node.left, pos = tree_from_lines(lines, pos + 1)
        node.right, pos = tree_from_lines(lines, pos)
        return node, pos
    if parts[0] == "leaf":
        node.class_index = int(parts[1])
        node.distribution = parse_floats(" ".join(parts[2:]))
        return node, pos + 1
    raise ValueError(f"bad tree line {lines[pos]!r}")


class DecisionTreeModel(Model):
    variant = "dtree"

    def __init__(self, class_values, feature_width, root: TreeNode, config: TreeConfig):
        super().__init__(class_values, feature_width)
        self.root = root
        self.config = config

    def predict_scores(self, x) -> list[float]:
        vec = self.check_vector(x)
        return [float(p) for p in tree_apply(self.root, vec).distribution]

    def _body_lines(self) -> list[str]:
        depth = -1 if self.config.max_depth is None else self.config.max_depth
        return [f"max_depth {depth}", f"min_leaf {self.config.min_leaf}"] + tree_lines(self.root)

    @classmethod
    def _from_body(cls, body, class_values, feature_width):
        depth = int(body[0].split()[1])
        config = TreeConfig(None if depth < 0 else depth, int(body[1].split()[1]))
        root, end = tree_from_lines(body, 2)
        if end != len(body):
            raise ValueError("trailing data after tree")
        return cls(class_values, feature_width, root, config)


def train_dtree(matrix, max_depth: int | None = None, min_leaf: int = 1,
                sample_weights: np.ndarray | None = None) -> DecisionTreeModel:
    """Grow a tree on a FeatureMatrix. sample_weights (if given) must be
    positive and is used for boosting; it does not need to sum to 1 here."""
    config = TreeConfig(max_depth, min_leaf)
    if matrix.rows.shape[0] == 0:
        raise ModelError("cannot train a tree on an empty matrix")
    y = matrix.label_indices()
    if sample_weights is None:
        sample_weights = np.ones(len(y))
    root = grow_tree(
        matrix.rows, y, np.asarray(sample_weights, dtype=np.float64),
        len(matrix.class_values), config.max_depth, config.min_leaf,
    )
    return DecisionTreeModel(matrix.class_values, matrix.width, root, config)
