"""AdaBoost over depth-limited decision trees (binary classes only).

Classes map to signs: the lower class index is -1, the higher is +1 (the
same convention the linear SVM uses). Per round t:

* fit the weak tree on the current instance weights (weighted entropy),
* weighted error e_t = sum of weights of misclassified instances,
* stage weight a_t = 0.5 * ln((1 - e_t) / e_t),
* multiply misclassified weights by exp(a_t), the rest by exp(-a_t),
  renormalize to sum 1.

That update makes the round-t learner's weighted error under the new
weights exactly 0.5. Degenerate rounds: e_t = 0 caps a_t at ln(1e10)/2
and stops; e_t >= 0.5 discards the round and stops.

The ensemble predicts sign(sum_t a_t h_t(x)), a zero sum going to the
lower class index; scores are the (-margin, margin) pair.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ModelError
from .base import Model, TreeConfig, require_binary
from .tree import grow_tree, tree_apply, tree_from_lines, tree_lines, tree_predict_batch

ALPHA_CAP = math.log(1e10) / 2.0


class AdaBoostModel(Model):
    variant = "adaboost"

    def __init__(self, class_values, feature_width, stages, weak: TreeConfig, rounds: int):
        super().__init__(class_values, feature_width)
        self.stages = list(stages)  # (alpha, tree root) pairs
        self.weak = weak
        self.rounds = int(rounds)

    def decision_value(self, x) -> float:
        vec = self.check_vector(x)
        total = 0.0
        for alpha, root in self.stages:
            sign = 1.0 if tree_apply(root, vec).class_index == 1 else -1.0
            total += alpha * sign
        return total

    def predict_scores(self, x) -> list[float]:
        v = self.decision_value(x)
        return [-v, v]

    def _body_lines(self):
        depth = -1 if self.weak.max_depth is None else self.weak.max_depth
        lines = [
            f"rounds {self.rounds}",
            f"weak_max_depth {depth}",
            f"weak_min_leaf {self.weak.min_leaf}",
            f"stages {len(self.stages)}",
        ]
        for i, (alpha, root) in enumerate(self.stages):
            lines.append(f"stage {i} {repr(alpha)}")
            lines.extend(tree_lines(root))
        return lines

    @classmethod
    def _from_body(cls, body, class_values, feature_width):
        rounds = int(body[0].split()[1])
        depth = int(body[1].split()[1])
        weak = TreeConfig(None if depth < 0 else depth, int(body[2].split()[1]))
        n_stages = int(body[3].split()[1])
        stages = []
        pos = 4
        for i in range(n_stages):
            head = body[pos].split()
            if head[0] != "stage" or int(head[1]) != i:
                raise ValueError(f"expected stage {i}, got {body[pos]!r}")
            alpha = float(head[2])
            root, pos = tree_from_lines(body, pos + 1)
            stages.append((alpha, root))
        if pos != len(body):
            raise ValueError("trailing data after stages")
        return cls(class_values, feature_width, stages, weak, rounds)


def train_adaboost(
    matrix,
    rounds: int = 10,
    weak: TreeConfig = TreeConfig(max_depth=1),
    seed: int = 0,
) -> AdaBoostModel:
    # seed is accepted for interface uniformity; the boosting loop itself
    # is deterministic (weighted tree fitting draws nothing).
    require_binary(matrix.class_values)
    if rounds < 1:
        raise ModelError("rounds must be >= 1")
    X = matrix.rows
    y = matrix.label_indices()
    n = X.shape[0]
    if n == 0:
        raise ModelError("cannot boost an empty matrix")
    weights = np.full(n, 1.0 / n)
    stages = []
    for _ in range(rounds):
        root = grow_tree(X, y, weights, 2, weak.max_depth, weak.min_leaf)
        preds = tree_predict_batch(root, X)
        miss = preds != y
        eps = float(weights[miss].sum())
        if eps <= 0.0:
            stages.append((ALPHA_CAP, root))
            break
        if eps >= 0.5:
            break
        alpha = 0.5 * math.log((1.0 - eps) / eps)
        stages.append((alpha, root))
        weights = weights * np.where(miss, math.exp(alpha), math.exp(-alpha))
        weights /= weights.sum()
    return AdaBoostModel(matrix.class_values, matrix.width, stages, weak, rounds)
