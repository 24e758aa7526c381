"""Co-association aggregation and the average-linkage consensus cut."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .base_clustering import CONSENSUS_DESCRIPTOR, Partition, make_partition
from .crowd import Crowd
from .errors import DomainError, SizeError
from .linkage import Dendrogram, agglomerate, cut

__all__ = [
    "CoAssociation",
    "Dendrogram",
    "co_association",
    "average_linkage",
    "consensus_cut",
    "wocce_consensus",
]


class CoAssociation(np.ndarray):
    """Symmetric ``n x n`` matrix of co-clustering frequencies.

    A plain ndarray subclass that also knows how many partitions it was
    built from (``n_members``).
    """

    def __new__(cls, values, n_members=None):
        obj = np.asarray(values, dtype=float).view(cls)
        obj.n_members = n_members
        return obj

    def __array_finalize__(self, obj):
        self.n_members = getattr(obj, "n_members", None)

    def to_csv(self, path: Union[str, Path]) -> None:
        np.savetxt(path, np.asarray(self), delimiter=",", fmt="%.10g")


def _members(crowd):
    return crowd.members if isinstance(crowd, Crowd) else list(crowd)


def co_association(crowd: Union[Crowd, Sequence], n: int) -> CoAssociation:
    """Fraction of partitions that put each pair of samples together.

    Members may be :class:`Partition` objects or label vectors.  A label
    of ``-1`` marks a sample absent from that partition, so the general
    ``n_ij / m_ij`` form applies to subsampled members.
    """
    members = _members(crowd)
    if len(members) == 0:
        raise DomainError("co-association of an empty crowd")
    together = np.zeros((n, n))
    present = np.zeros((n, n))
    for p in members:
        y = np.asarray(p.labels if isinstance(p, Partition) else p)
        if y.shape != (n,):
            raise SizeError(f"member over {y.shape[0]} samples, expected {n}")
        here = (y >= 0).astype(float)
        onehot = np.zeros((n, y.max() + 1))
        onehot[np.flatnonzero(y >= 0), y[y >= 0]] = 1.0
        together += onehot @ onehot.T
        present += np.outer(here, here)
    with np.errstate(invalid="ignore", divide="ignore"):
        c = np.where(present > 0, together / present, 0.0)
    np.fill_diagonal(c, 1.0)
    return CoAssociation(c, n_members=len(members))


def average_linkage(d: np.ndarray) -> Dendrogram:
    """Unweighted average-linkage (UPGMA) dendrogram of a dissimilarity."""
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise SizeError(f"dissimilarity must be square, got {d.shape}")
    return agglomerate(d, "average")


def consensus_cut(dend: Dendrogram, k: int) -> Partition:
    """Undo the ``k - 1`` last merges and return the resulting partition."""
    return make_partition(cut(dend, k), CONSENSUS_DESCRIPTOR, d=0)


def wocce_consensus(crowd: Union[Crowd, Sequence], n: int, kb: int) -> Partition:
    """Co-association, ``1 - C`` dissimilarity, average linkage, cut at ``kb``."""
    c = co_association(crowd, n)
    return consensus_cut(average_linkage(1.0 - np.asarray(c)), kb)
