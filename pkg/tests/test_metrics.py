import itertools

import numpy as np
import pytest
from sklearn.metrics import normalized_mutual_info_score

from wocce.errors import SizeError
from wocce.metrics import accuracy, contingency, nmi


def brute_accuracy(pred, truth):
    pred, truth = np.asarray(pred), np.asarray(truth)
    kp, kt = pred.max() + 1, truth.max() + 1
    size = max(kp, kt)
    best = 0
    for perm in itertools.permutations(range(size)):
        best = max(best, sum(perm[p] == t for p, t in zip(pred, truth)))
    return 100.0 * best / len(pred)


def test_accuracy_example():
    assert accuracy([0, 1, 1, 1], [0, 0, 1, 1]) == 75.0
    assert brute_accuracy([0, 1, 1, 1], [0, 0, 1, 1]) == 75.0


def test_accuracy_relabel_invariant():
    truth = np.array([0, 0, 1, 1, 2, 2])
    assert accuracy(truth, truth) == 100.0
    assert accuracy(np.array([2, 0, 1])[truth], truth) == 100.0


def test_accuracy_matches_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = int(rng.integers(2, 15))
        pred = rng.integers(0, rng.integers(1, 5), n)
        truth = rng.integers(0, rng.integers(1, 5), n)
        pred = np.unique(pred, return_inverse=True)[1]
        truth = np.unique(truth, return_inverse=True)[1]
        assert accuracy(pred, truth) == pytest.approx(brute_accuracy(pred, truth))


def test_nmi_examples():
    assert nmi([0, 0, 1, 1, 2], [0, 0, 1, 1, 2]) == pytest.approx(1.0)
    assert nmi([0, 0, 0, 0], [0, 0, 1, 1]) == 0.0
    assert nmi([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(0.0, abs=1e-15)
    assert nmi([0, 0, 0], [1, 1, 1]) == 1.0


def test_nmi_matches_sklearn_geometric():
    rng = np.random.default_rng(1)
    for _ in range(50):
        n = int(rng.integers(5, 60))
        a = rng.integers(0, 4, n)
        b = rng.integers(0, 5, n)
        if len(set(a)) < 2 or len(set(b)) < 2:
            continue
        ref = normalized_mutual_info_score(a, b, average_method="geometric")
        assert nmi(a, b) == pytest.approx(ref, abs=1e-10)
        assert nmi(a, b) == pytest.approx(nmi(b, a), abs=1e-12)


def test_contingency_and_length_mismatch():
    np.testing.assert_array_equal(contingency([0, 0, 1], [1, 0, 1]), [[1, 1], [0, 1]])
    with pytest.raises(SizeError):
        accuracy([0, 1], [0, 1, 1])
    with pytest.raises(SizeError):
        nmi([0, 1], [0])
