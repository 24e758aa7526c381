"""External validation against ground-truth labels."""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .base_clustering import Partition
from .errors import SizeError

__all__ = ["contingency", "accuracy", "nmi"]


def _labels(x):
    y = x.labels if isinstance(x, Partition) else np.asarray(x)
    if y.ndim != 1:
        raise SizeError("labels must be a vector")
    return y


def contingency(a, b) -> np.ndarray:
    a, b = _labels(a), _labels(b)
    if a.shape != b.shape:
        raise SizeError(f"label vectors differ in length: {a.size} vs {b.size}")
    _, ia = np.unique(a, return_inverse=True)
    _, ib = np.unique(b, return_inverse=True)
    table = np.zeros((ia.max() + 1, ib.max() + 1), dtype=np.int64)
    np.add.at(table, (ia, ib), 1)
    return table


def accuracy(pred, truth) -> float:
    """Percentage of samples matched under the best one-to-one relabelling."""
    table = contingency(pred, truth)
    size = max(table.shape)
    square = np.zeros((size, size), dtype=np.int64)
    square[: table.shape[0], : table.shape[1]] = table
    rows, cols = linear_sum_assignment(square, maximize=True)
    return 100.0 * square[rows, cols].sum() / table.sum()


def nmi(p1, p2) -> float:
    """Normalized mutual information, ``I / sqrt(H1 * H2)``.

    If either labelling has zero entropy the result is 1 when the two are
    the same set partition and 0 otherwise.
    """
    table = contingency(p1, p2).astype(float)
    n = table.sum()
    pa = table.sum(1) / n
    pb = table.sum(0) / n
    ha = -(pa * np.log(pa)).sum()
    hb = -(pb * np.log(pb)).sum()
    if ha == 0.0 or hb == 0.0:
        same = table.shape[0] == table.shape[1] == np.count_nonzero(table)
        return 1.0 if same else 0.0
    pij = table / n
    nz = pij > 0
    mi = (pij[nz] * np.log(pij[nz] / np.outer(pa, pb)[nz])).sum()
    return float(min(max(mi / np.sqrt(ha * hb), 0.0), 1.0))
