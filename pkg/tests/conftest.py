import numpy as np
import pytest

from rusent.vectorize import FeatureMatrix


def make_matrix(rows, labels, class_values=("neg", "pos")):
    return FeatureMatrix(np.asarray(rows, dtype=float), list(labels), tuple(class_values))


@pytest.fixture
def hand_corpus():
    """The 4-document oracle corpus over vocabulary (achi, gari, kharab):
    pos docs "achi gari", "achi"; neg docs "kharab gari", "kharab"."""
    rows = [
        [1, 1, 0],
        [1, 0, 0],
        [0, 1, 1],
        [0, 0, 1],
    ]
    return make_matrix(rows, ["pos", "pos", "neg", "neg"], ("neg", "pos"))


@pytest.fixture
def separable_1d():
    """One feature that perfectly separates the classes."""
    rows = [[0.0], [1.0], [2.0], [10.0], [11.0], [12.0]]
    return make_matrix(rows, ["neg"] * 3 + ["pos"] * 3, ("neg", "pos"))
