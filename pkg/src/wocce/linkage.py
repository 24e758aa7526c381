"""Agglomerative clustering by Lance-Williams distance updates.

Used both by the hierarchical base algorithms and by the consensus stage.
Node ids follow the usual convention: leaves are ``0 .. n-1`` and the
cluster created by merge ``t`` gets id ``n + t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import ConfigError, SizeError

LINKAGES = ("single", "average", "complete", "ward")
METRICS = ("euclidean", "hamming", "cosine")


@dataclass(frozen=True)
class Dendrogram:
    """Merge history of an agglomeration.

    ``merges[t] = (left, right, height, new_id)`` with ``left < right``.
    """

    merges: Tuple[Tuple[int, int, float, int], ...]
    n: int

    def heights(self) -> np.ndarray:
        return np.array([m[2] for m in self.merges], dtype=float)

    def to_linkage_matrix(self) -> np.ndarray:
        """SciPy-style ``(n-1, 4)`` linkage matrix."""
        sizes = np.ones(2 * self.n - 1)
        z = np.zeros((len(self.merges), 4))
        for t, (a, b, h, new) in enumerate(self.merges):
            sizes[new] = sizes[a] + sizes[b]
            z[t] = (a, b, h, sizes[new])
        return z


def pairwise_distances(x: np.ndarray, metric: str = "euclidean") -> np.ndarray:
    """Square distance matrix under ``metric``.

    ``hamming`` is the fraction of coordinates that differ exactly.
    ``cosine`` is ``1 - cos(x_i, x_j)``; a zero vector has similarity 0
    with everything, itself excluded (the diagonal is always 0).
    """
    x = np.asarray(x, dtype=float)
    if metric == "euclidean":
        d = squareform(pdist(x, "euclidean"))
    elif metric == "hamming":
        d = squareform(pdist(x, "hamming"))
    elif metric == "cosine":
        norms = np.linalg.norm(x, axis=1)
        unit = np.zeros_like(x)
        nz = norms > 0
        unit[nz] = x[nz] / norms[nz, None]
        d = 1.0 - unit @ unit.T
        np.clip(d, 0.0, 2.0, out=d)
        d = (d + d.T) / 2.0
        np.fill_diagonal(d, 0.0)
    else:
        raise ConfigError(f"unknown metric {metric!r}")
    return d


def _lance_williams(method, d_ki, d_kj, d_ij, n_i, n_j, n_k):
    if method == "single":
        return np.minimum(d_ki, d_kj)
    if method == "complete":
        return np.maximum(d_ki, d_kj)
    if method == "average":
        return (n_i * d_ki + n_j * d_kj) / (n_i + n_j)
    if method == "ward":
        tot = n_i + n_j + n_k
        sq = ((n_k + n_i) * d_ki**2 + (n_k + n_j) * d_kj**2 - n_k * d_ij**2) / tot
        return np.sqrt(np.maximum(sq, 0.0))
    raise ConfigError(f"unknown linkage {method!r}")


def agglomerate(d: np.ndarray, method: str = "average") -> Dendrogram:
    """Build the full dendrogram of a dissimilarity matrix.

    Among pairs at the current minimum distance the one with the smallest
    ``(min node id, max node id)`` is merged first.
    """
    if method not in LINKAGES:
        raise ConfigError(f"unknown linkage {method!r}")
    d = np.array(d, dtype=float)
    n = d.shape[0]
    if d.shape != (n, n):
        raise SizeError(f"dissimilarity must be square, got {d.shape}")
    if n < 1:
        raise SizeError("empty dissimilarity matrix")

    work = d.copy()
    np.fill_diagonal(work, np.inf)
    node = np.arange(n)
    size = np.ones(n)
    active = np.ones(n, dtype=bool)
    merges: List[Tuple[int, int, float, int]] = []

    for t in range(n - 1):
        h = work.min()
        ii, jj = np.nonzero(work == h)
        keep = ii < jj
        ii, jj = ii[keep], jj[keep]
        if ii.size > 1:
            a, b = node[ii], node[jj]
            lo, hi = np.minimum(a, b), np.maximum(a, b)
            pick = np.lexsort((hi, lo))[0]
            i, j = ii[pick], jj[pick]
        else:
            i, j = ii[0], jj[0]
        a, b = sorted((int(node[i]), int(node[j])))
        merges.append((a, b, float(h), n + t))

        others = active.copy()
        others[[i, j]] = False
        upd = _lance_williams(
            method, work[i, others], work[j, others], work[i, j], size[i], size[j], size[others]
        )
        work[i, others] = upd
        work[others, i] = upd
        work[j, :] = np.inf
        work[:, j] = np.inf
        active[j] = False
        size[i] += size[j]
        node[i] = n + t

    return Dendrogram(merges=tuple(merges), n=n)


def cut(dend: Dendrogram, k: int) -> np.ndarray:
    """Labels obtained by undoing the last ``k - 1`` merges.

    Labels are contiguous and numbered by first occurrence.
    """
    n = dend.n
    if not 1 <= k <= n:
        raise SizeError(f"cannot cut {n} leaves into {k} clusters")
    parent = np.arange(2 * n - 1)

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b, _, new in dend.merges[: n - k]:
        parent[find(a)] = new
        parent[find(b)] = new
    roots = np.array([find(i) for i in range(n)])
    return relabel_first_occurrence(roots)


def relabel_first_occurrence(labels) -> np.ndarray:
    """Map arbitrary labels to ``0 .. k-1`` in order of first appearance."""
    labels = np.asarray(labels)
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first))
    return order[inverse].astype(np.int64)
