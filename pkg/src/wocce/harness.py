"""Multi-run experiments, baselines, threshold sweeps and report files."""

from __future__ import annotations

import csv
import json
import logging
import time
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .base_clustering import DEFAULT_ROSTER, Family, parse_descriptor, parse_roster, run_base
from .consensus import wocce_consensus
from .crowd import ThresholdConfig, build_crowd
from .data_io import Dataset, load_dataset
from .errors import ConfigError, NoWiseCrowdError
from .metrics import accuracy, nmi

__all__ = [
    "ExperimentConfig",
    "MethodResult",
    "ExperimentReport",
    "BASELINES",
    "child_seed",
    "run_experiment",
    "roster_scores",
    "run_sweep",
    "sweep_grid",
    "write_outputs",
]

log = logging.getLogger(__name__)

BASELINES = ("kmeans", "fcm", "subtractive", "single_linkage", "eac")
SWEEP_PARAMS = ("it", "dt", "ct")
NMI_VARIANT = "geometric: I(a;b) / sqrt(H(a) H(b)), natural log"


@dataclass
class ExperimentConfig:
    """Everything needed to replay an experiment.

    ``thresholds.kb`` is replaced by the dataset's class count when
    ``kb`` is None.
    """

    dataset: str = "iris"
    it: float = 0.2
    dt: float = 0.06
    ct: int = 1
    kb: Optional[int] = None
    candidate_budget: Optional[int] = None
    target_crowd_size: Optional[int] = None
    exact_ct: bool = False
    roster: Tuple[str, ...] = tuple(str(d) for d in DEFAULT_ROSTER)
    runs: int = 10
    master_seed: int = 0
    baselines: Tuple[str, ...] = ()
    normalize: Optional[bool] = None
    out: Optional[str] = None
    sweep_param: Optional[str] = None
    sweep_values: Tuple[float, ...] = ()

    def __post_init__(self):
        self.roster = tuple(str(d) for d in parse_roster(self.roster))
        self.baselines = tuple(self.baselines)
        unknown = set(self.baselines) - set(BASELINES)
        if unknown:
            raise ConfigError(f"unknown baselines {sorted(unknown)}; choose from {BASELINES}")
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.sweep_param is not None and self.sweep_param not in SWEEP_PARAMS:
            raise ConfigError(f"sweep must vary one of {SWEEP_PARAMS}")

    def thresholds(self, kb: int) -> ThresholdConfig:
        return ThresholdConfig(
            it=self.it, dt=self.dt, ct=self.ct, kb=self.kb or kb,
            candidate_budget=self.candidate_budget,
            target_crowd_size=self.target_crowd_size, exact_ct=self.exact_ct,
        )


@dataclass
class MethodResult:
    accuracy: List[Optional[float]] = field(default_factory=list)
    nmi: List[Optional[float]] = field(default_factory=list)
    crowd_size: List[Optional[int]] = field(default_factory=list)
    wall_time: List[float] = field(default_factory=list)

    def _ok(self, values):
        return [v for v in values if v is not None]

    @property
    def failed_runs(self) -> int:
        return sum(v is None for v in self.accuracy)

    def mean(self, attr) -> Optional[float]:
        vals = self._ok(getattr(self, attr))
        return float(np.mean(vals)) if vals else None

    def summary(self) -> Dict:
        return {
            "mean_accuracy": self.mean("accuracy"),
            "mean_nmi": self.mean("nmi"),
            "mean_crowd_size": self.mean("crowd_size"),
            "mean_wall_time": self.mean("wall_time"),
            "runs": len(self.accuracy),
            "failed_runs": self.failed_runs,
        }


@dataclass
class ExperimentReport:
    config: Dict
    dataset: Dict
    methods: Dict[str, MethodResult]
    admission_logs: List[List[Dict]] = field(default_factory=list, repr=False)
    metadata: Dict = field(default_factory=dict)

    @property
    def failed_runs(self) -> int:
        return sum(m.failed_runs for m in self.methods.values())

    def mean_accuracy(self, method="wocce"):
        return self.methods[method].mean("accuracy")

    def mean_nmi(self, method="wocce"):
        return self.methods[method].mean("nmi")

    def to_dict(self) -> Dict:
        return {
            "config": self.config,
            "dataset": self.dataset,
            "metadata": self.metadata,
            "methods": {
                name: {**res.summary(), "raw": asdict(res)} for name, res in self.methods.items()
            },
        }

    def summary_rows(self) -> List[Dict]:
        return [{"method": name, **res.summary()} for name, res in self.methods.items()]


def child_seed(master_seed: int, index: int) -> int:
    """Seed of run ``index``; a fixed function of ``(master_seed, index)``."""
    state = np.random.SeedSequence([int(master_seed), int(index)]).generate_state(2, np.uint32)
    return int(state[0]) << 32 | int(state[1])


def _score(method: MethodResult, pred, truth, t0, crowd_size=None):
    method.wall_time.append(time.perf_counter() - t0)
    method.accuracy.append(accuracy(pred, truth))
    method.nmi.append(nmi(pred, truth))
    method.crowd_size.append(crowd_size)


def _baseline_partition(name, ds, k, seed, cache):
    if name == "kmeans":
        return run_base(parse_descriptor("kmeans"), ds, k, seed)
    if name == "fcm":
        return run_base(parse_descriptor("fcm"), ds, k, seed)
    if name == "subtractive":
        return run_base(parse_descriptor("subtractive"), ds, k)
    if name == "single_linkage":
        return run_base(parse_descriptor("hier:single:euclidean"), ds, k, cache=cache)
    raise ConfigError(f"unknown baseline {name!r}")


def run_experiment(cfg: ExperimentConfig, dataset: Optional[Dataset] = None, cache=None) -> ExperimentReport:
    """Run WOCCE (and the requested baselines) ``cfg.runs`` times.

    Run ``i`` uses :func:`child_seed` ``(cfg.master_seed, i)`` for both the
    crowd and the stochastic baselines.  A run whose crowd ends up empty
    is recorded as failed (``None`` entries) and left out of the means.
    """
    ds = dataset if dataset is not None else load_dataset(cfg.dataset, cfg.normalize)
    if ds.labels is None:
        raise ConfigError("experiments need ground-truth labels")
    thresholds = cfg.thresholds(ds.k_true)
    roster = parse_roster(cfg.roster)
    cache = {} if cache is None else cache

    methods = {"wocce": MethodResult()}
    for b in cfg.baselines:
        methods[b] = MethodResult()
    logs = []

    for i in range(cfg.runs):
        seed = child_seed(cfg.master_seed, i)
        res = methods["wocce"]
        t0 = time.perf_counter()
        try:
            crowd = build_crowd(ds, roster, thresholds, seed=seed, cache=cache)
        except NoWiseCrowdError as exc:
            log.warning("run %d: %s", i, exc)
            res.accuracy.append(None)
            res.nmi.append(None)
            res.crowd_size.append(None)
            res.wall_time.append(time.perf_counter() - t0)
            logs.append([r.to_dict() for r in exc.admission_log])
        else:
            pred = wocce_consensus(crowd, ds.n, thresholds.kb)
            _score(res, pred, ds.labels, t0, len(crowd))
            logs.append([r.to_dict() for r in crowd.admission_log])

        for b in cfg.baselines:
            t0 = time.perf_counter()
            if b == "eac":
                eac_cfg = replace(thresholds, it=0.0, dt=0.0, ct=1, target_crowd_size=None)
                crowd = build_crowd(ds, roster, eac_cfg, seed=seed, cache=cache)
                pred = wocce_consensus(crowd, ds.n, thresholds.kb)
                _score(methods[b], pred, ds.labels, t0, len(crowd))
            else:
                pred = _baseline_partition(b, ds, ds.k_true, seed, cache)
                _score(methods[b], pred, ds.labels, t0)

    cfg_dict = asdict(cfg)
    cfg_dict["thresholds"] = asdict(thresholds)
    return ExperimentReport(
        config=cfg_dict,
        dataset={"name": ds.name, "n": ds.n, "d": ds.d, "k_true": ds.k_true,
                 "normalized": ds.normalized},
        methods=methods,
        admission_logs=logs,
        metadata={"nmi": NMI_VARIANT, "accuracy": "optimal one-to-one relabelling (Hungarian)"},
    )


def roster_scores(ds: Dataset, roster=None, runs: int = 10, master_seed: int = 0,
                  cache=None) -> Dict[str, MethodResult]:
    """Score every roster algorithm on its own at ``k_true``.

    Stochastic algorithms use the same per-run seeds as
    :func:`run_experiment`; deterministic ones are run once per run too, so
    every entry holds ``runs`` values.
    """
    if ds.labels is None:
        raise ConfigError("scoring needs ground-truth labels")
    roster = parse_roster(roster if roster is not None else DEFAULT_ROSTER)
    cache = {} if cache is None else cache
    out = {}
    for desc in roster:
        res = MethodResult()
        for i in range(runs):
            seed = child_seed(master_seed, i) if desc.stochastic else None
            t0 = time.perf_counter()
            pred = run_base(desc, ds, ds.k_true, seed, cache=cache)
            _score(res, pred, ds.labels, t0)
        out[str(desc)] = res
    return out


def sweep_grid(text: str) -> Tuple[float, ...]:
    """Parse ``a:b:step`` (inclusive) or a comma-separated list."""
    text = text.strip()
    if ":" in text:
        try:
            a, b, step = (float(t) for t in text.split(":"))
        except ValueError:
            raise ConfigError(f"bad grid {text!r}; expected a:b:step") from None
        if step <= 0 or b < a:
            raise ConfigError(f"bad grid {text!r}")
        count = int(np.floor((b - a) / step + 1e-9)) + 1
        return tuple(round(a + i * step, 12) for i in range(count))
    values = tuple(float(t) for t in text.split(",") if t.strip())
    if not values:
        raise ConfigError("empty sweep grid")
    return values


def run_sweep(cfg: ExperimentConfig, dataset: Optional[Dataset] = None) -> List[Tuple[float, ExperimentReport]]:
    """One experiment per grid value of ``cfg.sweep_param``.

    The thresholds that are not swept are disabled: 0 for ``it``/``dt``
    and 1 for ``ct``.
    """
    if cfg.sweep_param is None or not cfg.sweep_values:
        raise ConfigError("a sweep needs a parameter and a nonempty grid")
    ds = dataset if dataset is not None else load_dataset(cfg.dataset, cfg.normalize)
    cache = {}
    out = []
    for value in cfg.sweep_values:
        point = replace(cfg, it=0.0, dt=0.0, ct=1, sweep_param=None, sweep_values=())
        if cfg.sweep_param == "ct":
            if value != int(value):
                raise ConfigError(f"ct must be an integer, got {value}")
            point = replace(point, ct=int(value))
        else:
            point = replace(point, **{cfg.sweep_param: float(value)})
        log.info("sweep %s=%s", cfg.sweep_param, value)
        out.append((value, run_experiment(point, ds, cache=cache)))
    return out


# --------------------------------------------------------------------------
# files
# --------------------------------------------------------------------------

SUMMARY_FIELDS = ["method", "mean_accuracy", "mean_nmi", "mean_crowd_size",
                  "mean_wall_time", "runs", "failed_runs"]


def _write_csv(path: Path, fields, rows):
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fields)
        w.writeheader()
        for r in rows:
            w.writerow(r)


def write_outputs(out: Path, report: Optional[ExperimentReport] = None,
                  sweep: Optional[Sequence[Tuple[float, ExperimentReport]]] = None,
                  sweep_param: Optional[str] = None) -> Dict[str, Path]:
    """Write ``report.json`` (at ``out``), ``summary.csv``, ``admission.jsonl``
    and, for sweeps, ``sweep.csv`` next to it."""
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    folder = out.parent
    written = {}
    if sweep is not None:
        payload = {
            "sweep": sweep_param,
            "points": [{"value": v, **r.to_dict()} for v, r in sweep],
        }
        rows = [{sweep_param: v, **row} for v, r in sweep for row in r.summary_rows()]
        _write_csv(folder / "sweep.csv", [sweep_param] + SUMMARY_FIELDS, rows)
        written["sweep"] = folder / "sweep.csv"
        logs = [(v, i, rec) for v, r in sweep for i, run in enumerate(r.admission_logs) for rec in run]
    else:
        payload = report.to_dict()
        _write_csv(folder / "summary.csv", SUMMARY_FIELDS, report.summary_rows())
        written["summary"] = folder / "summary.csv"
        logs = [(None, i, rec) for i, run in enumerate(report.admission_logs) for rec in run]
    out.write_text(json.dumps(payload, indent=2, default=_json_default))
    written["report"] = out
    with (folder / "admission.jsonl").open("w") as fh:
        for value, run, rec in logs:
            row = {"run": run, **rec}
            if value is not None:
                row[sweep_param] = value
            fh.write(json.dumps(row, default=_json_default) + "\n")
    written["admission"] = folder / "admission.jsonl"
    return written


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, Family):
        return obj.value
    raise TypeError(f"cannot serialise {type(obj).__name__}")
