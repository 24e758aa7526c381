"""Feedback construction of the wise crowd.

Candidates are generated round-robin over the roster, each with a fresh
seed and a cluster count in ``[kb, ct * kb]``.  A candidate joins the crowd
only if its independence exceeds ``it`` and then its diversity exceeds
``dt``, both measured against the crowd as it stands at that moment.
"""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .base_clustering import AlgorithmDescriptor, Partition, parse_roster, run_base
from .data_io import Dataset
from .diversity import diversity
from .errors import ConfigError, DegenerateFitError, NoWiseCrowdError
from .independence import independence

__all__ = [
    "ThresholdConfig",
    "Verdict",
    "AdmissionRecord",
    "Crowd",
    "sample_cluster_count",
    "admit",
    "build_crowd",
]


@dataclass(frozen=True)
class ThresholdConfig:
    """Admission thresholds and generation settings.

    Attributes
    ----------
    it, dt : float in [0, 1]
        Independence and diversity thresholds; 0 disables a filter.
    ct : int >= 1
        Decentralization coefficient; 1 disables it.
    kb : int >= 2
        Number of clusters of the final consensus partition.
    candidate_budget : int, optional
        Number of candidates to generate; defaults to 10 x roster size.
    target_crowd_size : int, optional
        Stop early once the crowd has this many members.
    exact_ct : bool
        Always use ``ct * kb`` clusters instead of sampling the count.
    """

    it: float = 0.0
    dt: float = 0.0
    ct: int = 1
    kb: int = 2
    candidate_budget: Optional[int] = None
    target_crowd_size: Optional[int] = None
    exact_ct: bool = False

    def __post_init__(self):
        if not 0.0 <= self.it <= 1.0 or not 0.0 <= self.dt <= 1.0:
            raise ConfigError(f"thresholds must lie in [0, 1], got it={self.it}, dt={self.dt}")
        if int(self.ct) != self.ct or self.ct < 1:
            raise ConfigError(f"ct must be a positive integer, got {self.ct}")
        if int(self.kb) != self.kb or self.kb < 2:
            raise ConfigError(f"kb must be an integer >= 2, got {self.kb}")
        if self.candidate_budget is not None and self.candidate_budget < 1:
            raise ConfigError("candidate_budget must be >= 1")
        if self.target_crowd_size is not None and self.target_crowd_size < 1:
            raise ConfigError("target_crowd_size must be >= 1")
        object.__setattr__(self, "ct", int(self.ct))
        object.__setattr__(self, "kb", int(self.kb))


class Verdict(str, enum.Enum):
    ACCEPTED = "accepted"
    REJECTED_INDEPENDENCE = "rejected_independence"
    REJECTED_DIVERSITY = "rejected_diversity"
    FAILED = "failed"  # the base algorithm itself raised


@dataclass
class AdmissionRecord:
    attempt: int
    descriptor: str
    k: int
    seed: Optional[int]
    independence: Optional[float]
    diversity: Optional[float]
    verdict: Verdict

    def to_dict(self):
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d


@dataclass
class Crowd:
    members: List[Partition] = field(default_factory=list)
    admission_log: List[AdmissionRecord] = field(default_factory=list)

    def __len__(self):
        return len(self.members)

    def log_jsonl(self) -> str:
        return "".join(json.dumps(r.to_dict()) + "\n" for r in self.admission_log)


def sample_cluster_count(kb: int, ct: int, rng, exact: bool = False) -> int:
    """Uniform integer in ``[kb, ct * kb]`` (or exactly ``ct * kb``).

    One draw is consumed in every case so that the generator stream does
    not depend on ``ct``.
    """
    if ct < 1:
        raise ConfigError("ct must be >= 1")
    # a single double per call; bounded integer sampling is rejection based
    # and would make the draw count depend on the range
    span = (ct - 1) * kb + 1
    k = kb + min(int(rng.random() * span), span - 1)
    return ct * kb if exact else k


def admit(candidate: Partition, crowd: Crowd, cfg: ThresholdConfig, attempt: int = -1) -> Verdict:
    """Score ``candidate`` against the current crowd and append it if it passes."""
    ind = independence(candidate, crowd.members)
    div = None
    if ind > cfg.it:
        div = diversity(candidate, crowd.members)
        verdict = Verdict.ACCEPTED if div > cfg.dt else Verdict.REJECTED_DIVERSITY
    else:
        verdict = Verdict.REJECTED_INDEPENDENCE
    if verdict is Verdict.ACCEPTED:
        crowd.members.append(candidate)
    crowd.admission_log.append(
        AdmissionRecord(
            attempt=attempt,
            descriptor=str(candidate.descriptor),
            k=candidate.k,
            seed=candidate.source_seed,
            independence=ind,
            diversity=div,
            verdict=verdict,
        )
    )
    return verdict


def build_crowd(ds: Dataset, roster: Sequence, cfg: ThresholdConfig, seed=None, cache=None) -> Crowd:
    """Generate candidates and admit them through the feedback loop.

    Fully deterministic for a fixed ``seed``: the ``i``-th candidate
    (algorithm, cluster count and seed) never depends on earlier verdicts.
    ``cache`` is forwarded to :func:`run_base`.
    """
    roster: List[AlgorithmDescriptor] = parse_roster(roster)
    if len(set(roster)) < 2:
        raise ConfigError("decentralization needs more than one distinct base algorithm")
    budget = cfg.candidate_budget or 10 * len(roster)
    rng = np.random.default_rng(seed)
    if cache is None:
        cache = {}
    crowd = Crowd()
    for attempt in range(budget):
        desc = roster[attempt % len(roster)]
        k = min(sample_cluster_count(cfg.kb, cfg.ct, rng, cfg.exact_ct), ds.n)
        child_seed = int(rng.integers(2**63 - 1))
        try:
            cand = run_base(desc, ds, k, seed=child_seed if desc.stochastic else None, cache=cache)
        except DegenerateFitError:
            crowd.admission_log.append(
                AdmissionRecord(attempt, str(desc), k, child_seed, None, None, Verdict.FAILED)
            )
            continue
        admit(cand, crowd, cfg, attempt)
        if cfg.target_crowd_size is not None and len(crowd) >= cfg.target_crowd_size:
            break
    if len(crowd) == 0:
        raise NoWiseCrowdError(
            f"no candidate passed it={cfg.it}, dt={cfg.dt} in {budget} attempts",
            crowd.admission_log,
        )
    return crowd
