"""Command line entry point: ``wocce run`` and ``wocce sweep``.

Settings may come from a ``key = value`` config file (``--config``);
command-line flags take precedence.  Exit status is 0 on success, 2 when
any run failed to form a crowd and 1 on errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import WOCCEError
from .harness import ExperimentConfig, run_experiment, run_sweep, sweep_grid, write_outputs

# config-file key -> (ExperimentConfig field, converter)
_KEYS = {
    "dataset": ("dataset", str),
    "kb": ("kb", int),
    "it": ("it", float),
    "dt": ("dt", float),
    "ct": ("ct", int),
    "runs": ("runs", int),
    "seed": ("master_seed", int),
    "budget": ("candidate_budget", int),
    "target": ("target_crowd_size", int),
    "roster": ("roster", lambda s: tuple(t.strip() for t in s.split(",") if t.strip())),
    "baselines": ("baselines", lambda s: tuple(t.strip() for t in s.split(",") if t.strip())),
    "out": ("out", str),
    "normalize": ("normalize", lambda s: s.strip().lower() in ("1", "true", "yes", "on")),
    "exact_ct": ("exact_ct", lambda s: s.strip().lower() in ("1", "true", "yes", "on")),
    "vary": ("sweep_param", str),
    "grid": ("sweep_values", sweep_grid),
}


def read_config(path) -> dict:
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise WOCCEError(f"{path}:{lineno}: expected key = value")
        key, raw = (t.strip() for t in line.split("=", 1))
        key = key.lower().replace("-", "_")
        if key not in _KEYS:
            raise WOCCEError(f"{path}:{lineno}: unknown key {key!r}")
        field, conv = _KEYS[key]
        values[field] = conv(raw)
    return values


def _parser():
    p = argparse.ArgumentParser(prog="wocce", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="key = value settings file")
        sp.add_argument("--dataset", help="CSV path or built-in name (iris, wine, halfring)")
        sp.add_argument("--kb", type=int, help="final cluster count (default: class count)")
        sp.add_argument("--it", type=float, help="independence threshold")
        sp.add_argument("--dt", type=float, help="diversity threshold")
        sp.add_argument("--ct", type=int, help="decentralization coefficient")
        sp.add_argument("--runs", type=int)
        sp.add_argument("--seed", type=int, help="master seed")
        sp.add_argument("--budget", type=int, help="candidates per run")
        sp.add_argument("--target", type=int, help="stop once the crowd has this many members")
        sp.add_argument("--roster", help="comma-separated descriptors, e.g. kmeans,hier:ward:cosine")
        sp.add_argument("--baselines", help="comma-separated subset of kmeans,fcm,subtractive,single_linkage,eac")
        sp.add_argument("--normalize", choices=["yes", "no"], help="z-score features")
        sp.add_argument("--exact-ct", action="store_true", default=None,
                        help="use exactly ct*kb clusters instead of sampling")
        sp.add_argument("--out", help="report.json path; other files go next to it")
        sp.add_argument("-v", "--verbose", action="store_true")

    common(sub.add_parser("run", help="run one experiment"))
    sw = sub.add_parser("sweep", help="vary one threshold, disabling the others")
    common(sw)
    sw.add_argument("--vary", choices=["it", "dt", "ct"])
    sw.add_argument("--grid", help="a:b:step or comma-separated values")
    return p


def build_config(args) -> ExperimentConfig:
    values = read_config(args.config) if args.config else {}
    for key, (field, conv) in _KEYS.items():
        flag = getattr(args, key, None)
        if flag is None:
            continue
        if key == "normalize":
            flag = flag == "yes"
        elif key in ("roster", "baselines", "grid"):
            flag = conv(flag)
        values[field] = flag
    return ExperimentConfig(**values)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = build_config(args)
        out = Path(cfg.out or ("sweep.json" if args.command == "sweep" else "report.json"))
        if args.command == "run":
            report = run_experiment(cfg)
            write_outputs(out, report=report)
            for row in report.summary_rows():
                print(_fmt(row))
            failed = report.failed_runs
        else:
            if cfg.sweep_param is None or not cfg.sweep_values:
                raise WOCCEError("sweep needs --vary and --grid")
            points = run_sweep(cfg)
            write_outputs(out, sweep=points, sweep_param=cfg.sweep_param)
            for value, report in points:
                for row in report.summary_rows():
                    print(f"{cfg.sweep_param}={value:g} " + _fmt(row))
            failed = sum(r.failed_runs for _, r in points)
    except (WOCCEError, OSError) as exc:
        print(f"wocce: error: {exc}", file=sys.stderr)
        return 1
    return 2 if failed else 0


def _fmt(row):
    acc = row["mean_accuracy"]
    nmi_ = row["mean_nmi"]
    size = row["mean_crowd_size"]
    parts = [f"{row['method']:<15s}",
             f"acc={acc:6.2f}" if acc is not None else "acc=   n/a",
             f"nmi={nmi_:.3f}" if nmi_ is not None else "nmi=  n/a"]
    if size is not None:
        parts.append(f"crowd={size:.1f}")
    parts.append(f"time={row['mean_wall_time']:.2f}s")
    if row["failed_runs"]:
        parts.append(f"failed={row['failed_runs']}")
    return "  ".join(parts)


if __name__ == "__main__":
    sys.exit(main())
