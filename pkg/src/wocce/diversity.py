"""Cluster-vs-partition similarity (APMM) and the A3 diversity score.

All logarithms are natural; the APMM ratio does not depend on the base.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .base_clustering import Partition
from .errors import DomainError, SizeError

__all__ = ["ClusterView", "apmm", "apmm_raw", "aapmm", "a3", "diversity", "clusters_of"]


@dataclass(frozen=True)
class ClusterView:
    """One cluster, seen as a set of sample indices out of ``n``."""

    member_indices: np.ndarray
    n: int

    def __post_init__(self):
        idx = np.unique(np.asarray(self.member_indices, dtype=np.int64))
        if idx.size == 0:
            raise SizeError("a cluster must be nonempty")
        if idx[0] < 0 or idx[-1] >= self.n:
            raise SizeError("cluster indices out of range")
        object.__setattr__(self, "member_indices", idx)

    @property
    def size(self) -> int:
        return int(self.member_indices.size)


def clusters_of(p: Partition):
    """The clusters of ``p`` as :class:`ClusterView` objects, in label order."""
    order = np.argsort(p.labels, kind="stable")
    bounds = np.cumsum(p.cluster_sizes())[:-1]
    return [ClusterView(ix, p.n) for ix in np.split(order, bounds)]


def _xlogx_over_n(sizes, n):
    sizes = np.asarray(sizes, dtype=float)
    sizes = sizes[sizes > 0]
    return float((sizes * np.log(sizes / n)).sum())


def apmm_raw(c: ClusterView, p: Partition) -> float:
    """APMM before clamping; may exceed 1 for near single-cluster ``p``."""
    if c.n != p.n:
        raise SizeError(f"cluster over n={c.n} samples, partition over n={p.n}")
    n, nc = float(c.n), float(c.size)
    num = -2.0 * nc * np.log(n / nc)
    den = nc * np.log(nc / n) + _xlogx_over_n(p.cluster_sizes(), n)
    if den == 0.0:
        # only when C is every sample and p has a single cluster
        return 1.0
    return num / den


def apmm(c: ClusterView, p: Partition) -> float:
    """Similarity of cluster ``c`` to partition ``p``, clamped to [0, 1]."""
    return min(max(apmm_raw(c, p), 0.0), 1.0)


def aapmm(c: ClusterView, reference: Sequence[Partition]) -> float:
    """Mean APMM of ``c`` over a nonempty reference set."""
    if len(reference) == 0:
        raise DomainError("AAPMM needs a nonempty reference set")
    return float(np.mean([apmm(c, p) for p in reference]))


def a3(p: Partition, reference: Sequence[Partition]) -> float:
    """Size-weighted mean AAPMM of the clusters of ``p``.

    Evaluated in one shot: APMM only depends on the size of the cluster
    and on the size profile of each reference partition.
    """
    if len(reference) == 0:
        raise DomainError("A3 needs a nonempty reference set")
    n = p.n
    for q in reference:
        if q.n != n:
            raise SizeError(f"cluster over n={n} samples, partition over n={q.n}")
    nc = p.cluster_sizes().astype(float)
    ref_terms = np.array([_xlogx_over_n(q.cluster_sizes(), n) for q in reference])
    num = (-2.0 * nc * np.log(n / nc))[:, None]
    den = (nc * np.log(nc / n))[:, None] + ref_terms[None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        raw = np.where(den == 0.0, 1.0, num / np.where(den == 0.0, 1.0, den))
    scores = np.clip(raw, 0.0, 1.0).mean(axis=1)
    return float(nc @ scores / n)


def diversity(p: Partition, crowd: Sequence[Partition]) -> float:
    """``1 - A3(p, crowd)``; an empty crowd is maximally diverse (1)."""
    if len(crowd) == 0:
        return 1.0
    return 1.0 - a3(p, crowd)
