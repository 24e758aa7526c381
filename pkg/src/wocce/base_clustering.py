"""Base (primary) clustering algorithms producing crowd candidates.

Every algorithm returns a :class:`Partition` that remembers which
algorithm produced it (:class:`AlgorithmDescriptor`) and the *initial*
parameters it started from (``basic_params``), which is what the
independence check compares.

Roster strings
--------------
``kmeans``, ``fcm``, ``gmm``, ``subtractive[:radius]`` and
``hier:<single|average|complete|ward>:<euclidean|hamming|cosine>``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy.special import logsumexp

from . import linkage as _lk
from .data_io import Dataset
from .errors import ConfigError, DegenerateFitError, SizeError

__all__ = [
    "Family",
    "AlgorithmDescriptor",
    "Partition",
    "parse_descriptor",
    "parse_roster",
    "DEFAULT_ROSTER",
    "run_base",
    "kmeans",
    "fuzzy_cmeans",
    "gmm_em",
    "hierarchical",
    "subtractive",
    "make_partition",
]

KMEANS_MAX_ITER = 300
FCM_FUZZIFIER = 2.0
FCM_TOL = 1e-5
FCM_MAX_ITER = 200
GMM_REG = 1e-6
GMM_TOL = 1e-6
GMM_MAX_ITER = 200
SUBTRACTIVE_RADIUS = 0.5
SUBTRACTIVE_SQUASH = 1.5
SUBTRACTIVE_ACCEPT = 0.5
SUBTRACTIVE_REJECT = 0.15


class Family(str, enum.Enum):
    KMEANS = "kmeans"
    FCM = "fcm"
    GMM = "gmm"
    SUBTRACTIVE = "subtractive"
    HIERARCHICAL = "hier"
    CONSENSUS = "consensus"


_STOCHASTIC = {Family.KMEANS, Family.FCM, Family.GMM}


@dataclass(frozen=True)
class AlgorithmDescriptor:
    """Identity of a base algorithm.

    Two partitions come from the "same algorithm type" exactly when their
    descriptors compare equal.  ``linkage``/``metric`` are set only for
    hierarchical families, ``radius`` only for subtractive clustering.
    """

    family: Family
    linkage: Optional[str] = None
    metric: Optional[str] = None
    radius: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        hier = self.family is Family.HIERARCHICAL
        if hier != (self.linkage is not None) or hier != (self.metric is not None):
            raise ConfigError("linkage and metric are required for, and only for, hierarchical")
        if hier:
            if self.linkage not in _lk.LINKAGES:
                raise ConfigError(f"unknown linkage {self.linkage!r}")
            if self.metric not in _lk.METRICS:
                raise ConfigError(f"unknown metric {self.metric!r}")
        if self.family is Family.SUBTRACTIVE:
            r = SUBTRACTIVE_RADIUS if self.radius is None else float(self.radius)
            if not r > 0:
                raise ConfigError("subtractive radius must be positive")
            object.__setattr__(self, "radius", r)
        elif self.radius is not None:
            raise ConfigError("radius applies to subtractive clustering only")

    @property
    def stochastic(self) -> bool:
        return self.family in _STOCHASTIC

    def __str__(self):
        if self.family is Family.HIERARCHICAL:
            return f"hier:{self.linkage}:{self.metric}"
        if self.family is Family.SUBTRACTIVE:
            return f"subtractive:{self.radius:g}"
        return self.family.value


CONSENSUS_DESCRIPTOR = AlgorithmDescriptor(Family.CONSENSUS)


def parse_descriptor(text: str) -> AlgorithmDescriptor:
    parts = [p.strip().lower() for p in str(text).split(":")]
    head = parts[0]
    aliases = {"fuzzy_cmeans": "fcm", "fcm": "fcm", "gaussian": "gmm", "gmm": "gmm",
               "kmeans": "kmeans", "subtractive": "subtractive", "hier": "hier",
               "hierarchical": "hier"}
    if head not in aliases:
        raise ConfigError(f"unknown algorithm {text!r}")
    head = aliases[head]
    if head == "hier":
        if len(parts) != 3:
            raise ConfigError(f"hierarchical descriptor must be hier:<linkage>:<metric>, got {text!r}")
        return AlgorithmDescriptor(Family.HIERARCHICAL, linkage=parts[1], metric=parts[2])
    if head == "subtractive":
        if len(parts) > 2:
            raise ConfigError(f"bad subtractive descriptor {text!r}")
        try:
            radius = float(parts[1]) if len(parts) == 2 else None
        except ValueError:
            raise ConfigError(f"bad subtractive radius in {text!r}") from None
        return AlgorithmDescriptor(Family.SUBTRACTIVE, radius=radius)
    if len(parts) != 1:
        raise ConfigError(f"{head} takes no options, got {text!r}")
    return AlgorithmDescriptor(Family(head))


def parse_roster(entries) -> List[AlgorithmDescriptor]:
    """Parse a comma-separated string or an iterable of descriptor strings."""
    if isinstance(entries, str):
        entries = [s for s in entries.split(",") if s.strip()]
    return [d if isinstance(d, AlgorithmDescriptor) else parse_descriptor(d) for d in entries]


DEFAULT_ROSTER = tuple(
    parse_roster(
        ["kmeans", "fcm", "gmm", "subtractive"]
        + [f"hier:{l}:{m}" for l in ("single", "average", "complete", "ward")
           for m in ("euclidean", "hamming", "cosine")]
    )
)


@dataclass(frozen=True)
class Partition:
    """Hard labelling of every sample plus its provenance."""

    labels: np.ndarray
    descriptor: AlgorithmDescriptor
    basic_params: np.ndarray
    source_seed: Optional[int] = None
    info: Dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        y = np.asarray(self.labels, dtype=np.int64)
        y.setflags(write=False)
        object.__setattr__(self, "labels", y)
        object.__setattr__(self, "basic_params", np.atleast_2d(np.asarray(self.basic_params, float)))

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @property
    def k(self) -> int:
        return int(self.labels.max()) + 1

    def cluster_sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)


def make_partition(labels, descriptor, basic_params=None, d=None, seed=None, **info) -> Partition:
    """Relabel to contiguous ids and wrap in a :class:`Partition`."""
    if basic_params is None:
        basic_params = np.empty((0, d if d is not None else 0))
    return Partition(
        labels=_lk.relabel_first_occurrence(labels),
        descriptor=descriptor,
        basic_params=basic_params,
        source_seed=seed,
        info=info,
    )


def _sq_dists(x, c):
    d2 = (x * x).sum(1)[:, None] - 2.0 * x @ c.T + (c * c).sum(1)[None, :]
    return np.maximum(d2, 0.0)


def _check_k(ds: Dataset, k: int):
    if not 1 <= k <= ds.n:
        raise SizeError(f"cluster count {k} outside [1, {ds.n}]")


# --------------------------------------------------------------------------
# k-means
# --------------------------------------------------------------------------

def _lloyd(x, centers, max_iter=KMEANS_MAX_ITER):
    k = centers.shape[0]
    centers = centers.copy()
    labels = None
    sse = []
    for it in range(max_iter):
        d2 = _sq_dists(x, centers)
        new = d2.argmin(1)
        counts = np.bincount(new, minlength=k)
        while (counts == 0).any():
            # reseed at the point farthest from its own center
            own = d2[np.arange(len(x)), new]
            own[counts[new] < 2] = -1.0
            far = own.argmax()
            counts[new[far]] -= 1
            new[far] = np.flatnonzero(counts == 0)[0]
            counts[new[far]] += 1
            d2[far] = 0.0
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for c in range(k):
            centers[c] = x[labels == c].mean(0)
        sse.append(float(((x - centers[labels]) ** 2).sum()))
    return labels, centers, sse


def kmeans(ds: Dataset, k: int, seed=None, init=None) -> Partition:
    """Lloyd's algorithm from ``k`` distinct data rows chosen at random.

    Stops when the assignment no longer changes.  ``init`` overrides the
    random choice of starting centers.  ``basic_params`` holds the
    initial centers.
    """
    _check_k(ds, k)
    x = ds.features
    if init is None:
        rng = np.random.default_rng(seed)
        init = x[rng.choice(ds.n, size=k, replace=False)].copy()
    else:
        init = np.array(init, dtype=float).reshape(k, ds.d)
    labels, centers, sse = _lloyd(x, init)
    return make_partition(
        labels, AlgorithmDescriptor(Family.KMEANS), init, seed=seed,
        centers=centers, objective=sse,
    )


# --------------------------------------------------------------------------
# fuzzy c-means
# --------------------------------------------------------------------------

def _fcm_memberships(d2, m):
    zero = d2 <= 0.0
    hit = zero.any(1)
    u = np.empty_like(d2)
    if (~hit).any():
        inv = d2[~hit] ** (-1.0 / (m - 1.0))
        u[~hit] = inv / inv.sum(1, keepdims=True)
    if hit.any():
        z = zero[hit].astype(float)
        u[hit] = z / z.sum(1, keepdims=True)
    return u


def fuzzy_cmeans(ds: Dataset, k: int, seed=None, m: float = FCM_FUZZIFIER,
                 tol: float = FCM_TOL, max_iter: int = FCM_MAX_ITER) -> Partition:
    """Fuzzy c-means, hardened by the largest membership of each point."""
    _check_k(ds, k)
    x = ds.features
    rng = np.random.default_rng(seed)
    init = x[rng.choice(ds.n, size=k, replace=False)].copy()
    centers = init.copy()
    u = _fcm_memberships(_sq_dists(x, centers), m)
    objective = []
    for it in range(max_iter):
        w = u**m
        centers = (w.T @ x) / w.sum(0)[:, None]
        d2 = _sq_dists(x, centers)
        u_new = _fcm_memberships(d2, m)
        objective.append(float((u_new**m * d2).sum()))
        delta = np.abs(u_new - u).max()
        u = u_new
        if delta < tol:
            break
    return make_partition(
        u.argmax(1), AlgorithmDescriptor(Family.FCM), init, seed=seed,
        centers=centers, objective=objective, iterations=it + 1,
    )


# --------------------------------------------------------------------------
# Gaussian mixture
# --------------------------------------------------------------------------

def _log_gauss(x, means, covs):
    d = x.shape[1]
    chols = np.linalg.cholesky(covs)
    # whiten every component at once through the inverse Cholesky factors
    inv = np.linalg.inv(chols)
    diff = x[:, None, :] - means[None, :, :]
    z = np.einsum("kij,nkj->nki", inv, diff)
    logdet = 2.0 * np.log(np.diagonal(chols, axis1=1, axis2=2)).sum(1)
    return -0.5 * (d * np.log(2 * np.pi) + logdet[None, :] + (z * z).sum(2))


def _gmm_fit(x, k, rng, reg, tol, max_iter):
    n, d = x.shape
    init_part = kmeans(Dataset("init", x), k, seed=rng.integers(2**63))
    labels = init_part.labels
    k_eff = init_part.k  # kmeans keeps k fixed
    means = init_part.info["centers"].copy()
    init_means = means.copy()
    weights = np.bincount(labels, minlength=k_eff) / n
    covs = np.empty((k_eff, d, d))
    for c in range(k_eff):
        diff = x[labels == c] - means[c]
        covs[c] = diff.T @ diff / max(len(diff), 1) + reg * np.eye(d)

    trace = []
    resp = None
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for it in range(max_iter):
            lp = _log_gauss(x, means, covs) + np.log(weights)
            norm = logsumexp(lp, axis=1)
            ll = float(norm.sum())
            if not np.isfinite(ll):
                raise np.linalg.LinAlgError("non-finite log-likelihood")
            if trace and ll < trace[-1]:
                # the diagonal loading makes the M-step inexact near a
                # collapsing component; keep the previous iterate
                means = prev_means
                break
            trace.append(ll)
            resp = np.exp(lp - norm[:, None])
            if len(trace) > 1 and trace[-1] - trace[-2] < tol:
                break
            nk = resp.sum(0)
            if np.any(nk <= 0):
                raise np.linalg.LinAlgError("empty mixture component")
            prev_means = means
            weights = nk / n
            means = (resp.T @ x) / nk[:, None]
            diff = x[:, None, :] - means[None, :, :]
            covs = np.einsum("nk,nki,nkj->kij", resp, diff, diff) / nk[:, None, None]
            covs += reg * np.eye(d)
    return resp, init_means, means, trace


def gmm_em(ds: Dataset, k: int, seed=None, reg: float = GMM_REG, tol: float = GMM_TOL,
           max_iter: int = GMM_MAX_ITER) -> Partition:
    """EM for a full-covariance Gaussian mixture initialised by k-means.

    ``reg`` is added to every covariance diagonal.  A numerically collapsed
    fit is retried once with a fresh seed.  ``info["loglik"]`` keeps the
    log-likelihood at every iteration.
    """
    _check_k(ds, k)
    rng = np.random.default_rng(seed)
    last = None
    for attempt in range(2):
        try:
            resp, init_means, means, trace = _gmm_fit(ds.features, k, rng, reg, tol, max_iter)
            break
        except np.linalg.LinAlgError as exc:
            last = exc
    else:
        raise DegenerateFitError(f"gaussian mixture collapsed twice: {last}")
    return make_partition(
        resp.argmax(1), AlgorithmDescriptor(Family.GMM), init_means, seed=seed,
        means=means, loglik=trace, attempts=attempt + 1,
    )


# --------------------------------------------------------------------------
# hierarchical
# --------------------------------------------------------------------------

def hierarchical(ds: Dataset, linkage: str, metric: str, k: int, dendrogram=None) -> Partition:
    """Agglomerative clustering cut into exactly ``k`` clusters.

    Pass a precomputed ``dendrogram`` to skip the agglomeration; the
    result is deterministic so callers may cache it per descriptor.
    """
    _check_k(ds, k)
    desc = AlgorithmDescriptor(Family.HIERARCHICAL, linkage=linkage, metric=metric)
    if dendrogram is None:
        dendrogram = _lk.agglomerate(_lk.pairwise_distances(ds.features, metric), linkage)
    return make_partition(_lk.cut(dendrogram, k), desc, d=ds.d)


# --------------------------------------------------------------------------
# subtractive
# --------------------------------------------------------------------------

def subtractive(ds: Dataset, radius: float = SUBTRACTIVE_RADIUS,
                squash: float = SUBTRACTIVE_SQUASH, accept: float = SUBTRACTIVE_ACCEPT,
                reject: float = SUBTRACTIVE_REJECT) -> Partition:
    """Chiu's subtractive (mountain) clustering.

    Data are rescaled to the unit hypercube before potentials are computed,
    so ``radius`` is relative to each feature's range.  The number of
    clusters emerges from the accept/reject ratios.
    """
    if not radius > 0:
        raise SizeError("radius must be positive")
    x = ds.features
    lo, span = x.min(0), np.ptp(x, axis=0)
    span = np.where(span > 0, span, 1.0)
    z = (x - lo) / span

    alpha = 4.0 / radius**2
    beta = 4.0 / (squash * radius) ** 2
    d2 = _sq_dists(z, z)
    potential = np.exp(-alpha * d2).sum(1)

    first = int(potential.argmax())
    p_first = potential[first]
    if not p_first > 0:
        raise DegenerateFitError("subtractive clustering found no center")
    centers = [first]
    potential = potential - p_first * np.exp(-beta * d2[first])
    while True:
        cand = int(potential.argmax())
        p = potential[cand]
        if p > accept * p_first:
            pass
        elif p < reject * p_first:
            break
        else:
            dmin = np.sqrt(d2[cand, centers].min())
            if dmin / radius + p / p_first < 1.0:
                potential[cand] = 0.0
                if potential.max() <= 0:
                    break
                continue
        centers.append(cand)
        potential = potential - p * np.exp(-beta * d2[cand])

    labels = d2[:, centers].argmin(1)
    desc = AlgorithmDescriptor(Family.SUBTRACTIVE, radius=radius)
    return make_partition(labels, desc, x[centers].copy(), center_rows=centers)


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------

def run_base(desc: AlgorithmDescriptor, ds: Dataset, k: int, seed=None, cache=None) -> Partition:
    """Run one roster entry and return its partition.

    ``cache`` (a dict) memoises hierarchical dendrograms across calls on
    the same dataset; it must not be shared between datasets.
    """
    if not isinstance(desc, AlgorithmDescriptor):
        desc = parse_descriptor(desc)
    fam = desc.family
    if fam is Family.SUBTRACTIVE:
        part = subtractive(ds, desc.radius)
    else:
        if not 2 <= k <= ds.n:
            raise SizeError(f"cluster count {k} outside [2, {ds.n}]")
        if fam is Family.KMEANS:
            part = kmeans(ds, k, seed)
        elif fam is Family.FCM:
            part = fuzzy_cmeans(ds, k, seed)
        elif fam is Family.GMM:
            part = gmm_em(ds, k, seed)
        elif fam is Family.HIERARCHICAL:
            dend = None
            if cache is not None:
                key = str(desc)
                if key not in cache:
                    cache[key] = _lk.agglomerate(
                        _lk.pairwise_distances(ds.features, desc.metric), desc.linkage
                    )
                dend = cache[key]
            part = hierarchical(ds, desc.linkage, desc.metric, k, dendrogram=dend)
        else:
            raise ConfigError(f"cannot run family {fam.value!r} as a base algorithm")
    return Partition(part.labels, part.descriptor, part.basic_params, seed, part.info)
