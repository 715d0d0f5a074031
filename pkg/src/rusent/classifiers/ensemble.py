"""Bootstrap-aggregated tree ensembles: bagging and random forest.

Member i derives its own splitmix64 stream from (seed, i), so training
members in any order (or in parallel) yields the identical ensemble.
Each member's stream is consumed in a documented order: first the n
bootstrap index draws, then (random forest only) the per-node feature
subset draws in preorder.

Prediction is a majority vote over member class predictions, ties broken
toward the lowest class index; scores are vote fractions.
"""

from __future__ import annotations

import numpy as np

from ..errors import ModelError
from ..rng import SplitMix64, derive
from .base import Model, TreeConfig
from .tree import grow_tree, tree_apply, tree_from_lines, tree_lines


class _VotingTreeEnsemble(Model):
    def __init__(self, class_values, feature_width, trees, base: TreeConfig, seed: int):
        super().__init__(class_values, feature_width)
        self.trees = list(trees)
        self.base = base
        self.seed = int(seed)

    def predict_scores(self, x) -> list[float]:
        vec = self.check_vector(x)
        votes = np.zeros(len(self.class_values))
        for root in self.trees:
            votes[tree_apply(root, vec).class_index] += 1.0
        return [float(v) / len(self.trees) for v in votes]

    def _common_lines(self) -> list[str]:
        depth = -1 if self.base.max_depth is None else self.base.max_depth
        lines = [
            f"m {len(self.trees)}",
            f"seed {self.seed}",
            f"base_max_depth {depth}",
            f"base_min_leaf {self.base.min_leaf}",
        ]
        for i, root in enumerate(self.trees):
            lines.append(f"member {i}")
            lines.extend(tree_lines(root))
        return lines

    @classmethod
    def _parse_common(cls, body):
        m = int(body[0].split()[1])
        seed = int(body[1].split()[1])
        depth = int(body[2].split()[1])
        base = TreeConfig(None if depth < 0 else depth, int(body[3].split()[1]))
        return m, seed, base

    @classmethod
    def _parse_members(cls, body, start, m):
        trees = []
        pos = start
        for i in range(m):
            if body[pos] != f"member {i}":
                raise ValueError(f"expected 'member {i}', got {body[pos]!r}")
            root, pos = tree_from_lines(body, pos + 1)
            trees.append(root)
        if pos != len(body):
            raise ValueError("trailing data after ensemble members")
        return trees


class BaggingModel(_VotingTreeEnsemble):
    variant = "bagging"

    def _body_lines(self):
        return self._common_lines()

    @classmethod
    def _from_body(cls, body, class_values, feature_width):
        m, seed, base = cls._parse_common(body)
        trees = cls._parse_members(body, 4, m)
        return cls(class_values, feature_width, trees, base, seed)


class RandomForestModel(_VotingTreeEnsemble):
    variant = "rforest"

    def __init__(self, class_values, feature_width, trees, base, seed, features_per_split):
        super().__init__(class_values, feature_width, trees, base, seed)
        self.features_per_split = int(features_per_split)

    def _body_lines(self):
        return [f"features_per_split {self.features_per_split}"] + self._common_lines()

    @classmethod
    def _from_body(cls, body, class_values, feature_width):
        fps = int(body[0].split()[1])
        m, seed, base = cls._parse_common(body[1:])
        trees = cls._parse_members(body, 5, m)
        return cls(class_values, feature_width, trees, base, seed, fps)


def _bootstrap_trees(matrix, m, base: TreeConfig, seed, subset_size):
    if m < 1:
        raise ModelError("ensemble size m must be >= 1")
    X = matrix.rows
    y = matrix.label_indices()
    n = X.shape[0]
    if n == 0:
        raise ModelError("cannot train an ensemble on an empty matrix")
    n_classes = len(matrix.class_values)
    trees = []
    for i in range(m):
        rng = SplitMix64(derive(seed, i))
        indices = np.array([rng.next_below(n) for _ in range(n)], dtype=np.intp)
        trees.append(
            grow_tree(
                X[indices], y[indices], np.ones(n), n_classes,
                base.max_depth, base.min_leaf,
                rng=rng, subset_size=subset_size,
            )
        )
    return trees


def train_bagging(matrix, m: int = 10, base: TreeConfig = TreeConfig(), seed: int = 0) -> BaggingModel:
    trees = _bootstrap_trees(matrix, m, base, seed, subset_size=None)
    return BaggingModel(matrix.class_values, matrix.width, trees, base, seed)


def train_rforest(
    matrix,
    m: int = 10,
    features_per_split: int | None = None,
    base: TreeConfig = TreeConfig(),
    seed: int = 0,
) -> RandomForestModel:
    d = matrix.width
    if features_per_split is None:
        features_per_split = int(np.ceil(np.sqrt(d)))  # ceil(sqrt(d)) default
    if not 1 <= features_per_split <= d:
        raise ModelError(f"features_per_split must be in [1, {d}]")
    trees = _bootstrap_trees(matrix, m, base, seed, subset_size=features_per_split)
    return RandomForestModel(
        matrix.class_values, matrix.width, trees, base, seed, features_per_split
    )
