"""Multinomial naive Bayes with Laplace smoothing.

Training stores, per class c:

    log P(c)      = log(n_c / n)
    log P(w | c)  = log((count(w, c) + alpha) / (sum_w' count(w', c) + alpha * |V|))

and scoring a vector x computes log P(c) + sum_i x_i * log P(w_i | c) in
log space. predict_scores exponentiates and normalizes the log posteriors
into probabilities summing to 1.
"""

from __future__ import annotations

import numpy as np

from ..errors import ModelError
from .base import Model, fmt_floats, parse_floats


class MultinomialNBModel(Model):
    variant = "mnb"

    def __init__(self, class_values, feature_width, alpha, log_prior, log_likelihood):
        super().__init__(class_values, feature_width)
        self.alpha = float(alpha)
        self.log_prior = np.asarray(log_prior, dtype=np.float64)
        self.log_likelihood = np.asarray(log_likelihood, dtype=np.float64)  # (C, d)

    def log_posteriors(self, x) -> np.ndarray:
        vec = self.check_vector(x)
        return self.log_prior + self.log_likelihood @ vec

    def predict_scores(self, x) -> list[float]:
        log_post = self.log_posteriors(x)
        shifted = np.exp(log_post - log_post.max())
        probs = shifted / shifted.sum()
        return [float(p) for p in probs]

    def predict(self, x) -> str:
        # argmax in log space; ties go to the lowest class index
        return self.class_values[int(np.argmax(self.log_posteriors(x)))]

    def _body_lines(self) -> list[str]:
        lines = [f"alpha {repr(self.alpha)}", f"log_prior {fmt_floats(self.log_prior)}"]
        for c, row in enumerate(self.log_likelihood):
            lines.append(f"log_likelihood {c} {fmt_floats(row)}")
        return lines

    @classmethod
    def _from_body(cls, body, class_values, feature_width):
        alpha = float(body[0].split()[1])
        log_prior = parse_floats(body[1].split(" ", 1)[1])
        rows = []
        for line in body[2:]:
            parts = line.split(" ", 2)
            if parts[0] != "log_likelihood":
                raise ValueError(f"unexpected line {line!r}")
            rows.append(parse_floats(parts[2]))
        return cls(class_values, feature_width, alpha, log_prior, np.vstack(rows))


def train_mnb(matrix, alpha: float = 1.0) -> MultinomialNBModel:
    if alpha <= 0.0:
        raise ModelError("smoothing alpha must be positive")
    if np.any(matrix.rows < 0):
        raise ModelError("multinomial NB requires non-negative feature values")
    y = matrix.label_indices()
    n_classes = len(matrix.class_values)
    n = len(y)
    class_counts = np.bincount(y, minlength=n_classes)
    if np.any(class_counts == 0):
        missing = matrix.class_values[int(np.argmin(class_counts))]
        raise ModelError(f"class {missing!r} has no training instances")
    word_counts = np.zeros((n_classes, matrix.width))
    for c in range(n_classes):
        word_counts[c] = matrix.rows[y == c].sum(axis=0)
    log_prior = np.log(class_counts / n)
    smoothed = word_counts + alpha
    log_likelihood = np.log(smoothed / smoothed.sum(axis=1, keepdims=True))
    return MultinomialNBModel(
        matrix.class_values, matrix.width, alpha, log_prior, log_likelihood
    )
