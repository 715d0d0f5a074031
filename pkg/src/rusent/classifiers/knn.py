"""k-nearest-neighbor classifier.

Training just stores the feature matrix. Prediction ranks training
instances by distance (euclidean, manhattan, or minkowski with a
configurable exponent), breaking distance ties toward the lowest training
index, then takes the majority label of the k nearest, breaking vote ties
toward the lowest class index. Scores are vote fractions.
"""

from __future__ import annotations

import numpy as np

from ..errors import ModelError
from .base import Model, fmt_floats, parse_floats

DISTANCES = ("euclidean", "manhattan", "minkowski")


def _distances(rows: np.ndarray, x: np.ndarray, metric: str, p: float) -> np.ndarray:
    diff = np.abs(rows - x)
    if metric == "euclidean":
        return np.sqrt((diff * diff).sum(axis=1))
    if metric == "manhattan":
        return diff.sum(axis=1)
    return (diff**p).sum(axis=1) ** (1.0 / p)


class KnnModel(Model):
    variant = "knn"

    def __init__(self, class_values, feature_width, k, metric, p, rows, labels):
        super().__init__(class_values, feature_width)
        self.k = int(k)
        self.metric = metric
        self.p = float(p)
        self.rows = np.asarray(rows, dtype=np.float64)
        self.labels = np.asarray(labels, dtype=np.intp)

    def predict_scores(self, x) -> list[float]:
        vec = self.check_vector(x)
        dist = _distances(self.rows, vec, self.metric, self.p)
        order = np.argsort(dist, kind="stable")[: self.k]  # stable = lowest index first
        votes = np.bincount(self.labels[order], minlength=len(self.class_values))
        return [float(v) / self.k for v in votes]

    def _body_lines(self) -> list[str]:
        lines = [
            f"k {self.k}",
            f"distance {self.metric}",
            f"p {repr(self.p)}",
            f"labels {' '.join(str(int(l)) for l in self.labels)}",
        ]
        lines.extend(f"row {fmt_floats(row)}" for row in self.rows)
        return lines

    @classmethod
    def _from_body(cls, body, class_values, feature_width):
        k = int(body[0].split()[1])
        metric = body[1].split()[1]
        p = float(body[2].split()[1])
        labels = [int(t) for t in body[3].split()[1:]]
        rows = np.array([parse_floats(line.split(" ", 1)[1]) for line in body[4:]])
        rows = rows.reshape(len(labels), feature_width)
        return cls(class_values, feature_width, k, metric, p, rows, labels)


def train_knn(matrix, k: int = 1, distance: str = "euclidean", p: float = 3.0) -> KnnModel:
    if distance not in DISTANCES:
        raise ModelError(f"distance must be one of {DISTANCES}")
    if k < 1:
        raise ModelError("k must be >= 1")
    if k > matrix.rows.shape[0]:
        raise ModelError(f"k={k} exceeds the {matrix.rows.shape[0]} training instances")
    if distance == "minkowski" and p <= 0:
        raise ModelError("minkowski exponent must be positive")
    return KnnModel(
        matrix.class_values, matrix.width, k, distance, p,
        matrix.rows.copy(), matrix.label_indices(),
    )
