"""Independence between partitions, judged from their initial parameters."""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .base_clustering import Partition
from .errors import InconsistencyError, SizeError

__all__ = ["likeness", "likeness_trace", "bpi", "independence", "align_params"]


def likeness_trace(a, b):
    """Greedy min-distance elimination between the rows of ``a`` and ``b``.

    Returns ``(max_dis, sims)``: the largest entry of the initial distance
    matrix and the minimum removed at each step.  Ties go to the smallest
    row index, then the smallest column index.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    if a.shape != b.shape or a.size == 0:
        raise SizeError(f"parameter matrices must be nonempty and equal-shaped, got {a.shape} vs {b.shape}")
    lmat = cdist(a, b)
    max_dis = float(lmat.max())
    work = lmat.copy()
    sims = []
    for _ in range(a.shape[0]):
        # row-major argmin gives the (row, col) tie rule
        i, j = np.unravel_index(np.argmin(work), work.shape)
        sims.append(float(work[i, j]))
        work[i, :] = np.inf
        work[:, j] = np.inf
    return max_dis, sims


def likeness(a, b) -> float:
    """``1 - sum(sims) / max_dis`` clamped to [0, 1]; 1 when ``max_dis`` is 0."""
    max_dis, sims = likeness_trace(a, b)
    if max_dis == 0.0:
        return 1.0
    return float(min(max(1.0 - sum(sims) / max_dis, 0.0), 1.0))


def align_params(a: np.ndarray, b: np.ndarray):
    """Make two parameter matrices comparable when their row counts differ.

    Rows are sorted lexicographically and both are truncated to the
    shorter length.
    """
    if a.shape[0] == b.shape[0]:
        return a, b
    m = min(a.shape[0], b.shape[0])
    a = a[np.lexsort(a.T[::-1])][:m]
    b = b[np.lexsort(b.T[::-1])][:m]
    return a, b


def bpi(p1: Partition, p2: Partition) -> float:
    """Pairwise independence: 1 across algorithm types, else 1 - likeness."""
    if p1.descriptor != p2.descriptor:
        return 1.0
    e1, e2 = p1.basic_params.size == 0, p2.basic_params.size == 0
    if e1 and e2:
        return 0.0
    if e1 != e2:
        raise InconsistencyError(
            f"same algorithm type {p1.descriptor} with and without basic parameters"
        )
    a, b = align_params(p1.basic_params, p2.basic_params)
    return 1.0 - likeness(a, b)


def independence(p: Partition, crowd: Sequence[Partition]) -> float:
    """Mean BPI of ``p`` against the crowd; 1 for an empty crowd."""
    if len(crowd) == 0:
        return 1.0
    return float(np.mean([bpi(p, q) for q in crowd]))
