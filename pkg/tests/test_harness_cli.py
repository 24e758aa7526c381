import csv
import json

import numpy as np
import pytest

from wocce.cli import main, read_config
from wocce.errors import ConfigError, WOCCEError
from wocce.harness import (
    ExperimentConfig,
    child_seed,
    roster_scores,
    run_experiment,
    run_sweep,
    sweep_grid,
)
from wocce.data_io import load_dataset

SMALL = dict(dataset="iris", runs=2, candidate_budget=16)


@pytest.fixture(scope="module")
def iris():
    return load_dataset("iris")


@pytest.fixture(scope="module")
def cache():
    return {}


def test_child_seeds_are_stable_and_distinct():
    assert child_seed(0, 1) == child_seed(0, 1)
    assert len({child_seed(s, i) for s in range(3) for i in range(10)}) == 30


def test_report_means_recompute_from_raw(iris, cache):
    cfg = ExperimentConfig(**SMALL, baselines=("kmeans", "single_linkage", "eac"))
    report = run_experiment(cfg, iris, cache=cache)
    d = report.to_dict()
    for name, entry in d["methods"].items():
        raw = entry["raw"]
        assert entry["mean_accuracy"] == pytest.approx(np.mean(raw["accuracy"]))
        assert entry["mean_nmi"] == pytest.approx(np.mean(raw["nmi"]))
        assert len(raw["accuracy"]) == 2
    assert d["methods"]["single_linkage"]["mean_accuracy"] == pytest.approx(68.0, abs=0.01)
    assert "geometric" in d["metadata"]["nmi"]


def test_experiment_is_deterministic(iris, cache):
    cfg = ExperimentConfig(**SMALL, ct=2)
    a = run_experiment(cfg, iris, cache=cache)
    b = run_experiment(cfg, iris)
    assert a.methods["wocce"].accuracy == b.methods["wocce"].accuracy
    assert a.admission_logs == b.admission_logs


def test_failed_runs_are_counted_not_averaged(iris, cache):
    report = run_experiment(ExperimentConfig(**SMALL, it=1.0), iris, cache=cache)
    assert report.failed_runs == 2
    assert report.mean_accuracy() is None
    assert len(report.admission_logs[0]) == 16


def test_sweep_grid_parsing():
    assert sweep_grid("0:0.2:0.1") == (0.0, 0.1, 0.2)
    assert sweep_grid("1,3,5") == (1.0, 3.0, 5.0)
    for bad in ("0:1:0", "1:0:0.1", "a:b:c", ""):
        with pytest.raises(ConfigError):
            sweep_grid(bad)


def test_single_point_sweep_equals_run(iris, cache):
    cfg = ExperimentConfig(**SMALL, it=0.0, dt=0.0, ct=1, sweep_param="ct", sweep_values=(3.0,))
    (value, report), = run_sweep(cfg, iris)
    direct = run_experiment(ExperimentConfig(**SMALL, it=0.0, dt=0.0, ct=3), iris, cache=cache)
    assert value == 3.0
    assert report.methods["wocce"].accuracy == direct.methods["wocce"].accuracy
    assert report.config["ct"] == 3 and report.config["it"] == 0.0


def test_sweep_disables_other_thresholds(iris):
    cfg = ExperimentConfig(**SMALL, it=0.5, dt=0.3, ct=4, sweep_param="dt", sweep_values=(0.1,))
    (_, report), = run_sweep(cfg, iris)
    assert (report.config["it"], report.config["dt"], report.config["ct"]) == (0.0, 0.1, 1)


def test_roster_scores_cover_every_algorithm(iris, cache):
    scores = roster_scores(iris, ["kmeans", "hier:single:euclidean"], runs=2, cache=cache)
    assert list(scores) == ["kmeans", "hier:single:euclidean"]
    assert scores["hier:single:euclidean"].accuracy == [pytest.approx(68.0)] * 2


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(baselines=("cspa",))
    with pytest.raises(ConfigError):
        ExperimentConfig(runs=0)
    with pytest.raises(ConfigError):
        ExperimentConfig(roster=("kmeans", "dbscan"))


def test_read_config(tmp_path):
    f = tmp_path / "exp.cfg"
    f.write_text("# iris defaults\ndataset = iris\nit = 0.3  # inline\nct=2\n"
                 "roster = kmeans, hier:ward:cosine\nnormalize = yes\ngrid = 1:3:1\n")
    values = read_config(f)
    assert values == {"dataset": "iris", "it": 0.3, "ct": 2,
                      "roster": ("kmeans", "hier:ward:cosine"), "normalize": True,
                      "sweep_values": (1.0, 2.0, 3.0)}
    f.write_text("colour = blue\n")
    with pytest.raises(WOCCEError, match=":1:"):
        read_config(f)


def test_cli_run_writes_outputs(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("dataset = iris\nruns = 1\nbudget = 16\nit = 0.9\n")
    out = tmp_path / "res" / "report.json"
    code = main(["run", "--config", str(cfg), "--it", "0.2", "--baselines", "kmeans",
                 "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["config"]["it"] == 0.2  # flag beats file
    assert report["config"]["candidate_budget"] == 16
    rows = list(csv.DictReader((out.parent / "summary.csv").open()))
    assert [r["method"] for r in rows] == ["wocce", "kmeans"]
    lines = (out.parent / "admission.jsonl").read_text().splitlines()
    assert len(lines) == 16 and json.loads(lines[0])["run"] == 0
    assert "wocce" in capsys.readouterr().out


def test_cli_sweep_writes_csv(tmp_path):
    out = tmp_path / "sweep.json"
    code = main(["sweep", "--dataset", "iris", "--runs", "1", "--budget", "16",
                 "--vary", "it", "--grid", "0,0.5", "--out", str(out)])
    assert code == 0
    rows = list(csv.DictReader((tmp_path / "sweep.csv").open()))
    assert [float(r["it"]) for r in rows] == [0.0, 0.5]
    assert json.loads(out.read_text())["sweep"] == "it"


def test_cli_exit_codes(tmp_path, capsys):
    out = str(tmp_path / "r.json")
    assert main(["run", "--dataset", "iris", "--runs", "1", "--budget", "4",
                 "--it", "1.0", "--out", out]) == 2
    assert main(["run", "--dataset", str(tmp_path / "missing.csv"), "--out", out]) == 1
    assert main(["run", "--roster", "kmeans,nope", "--out", out]) == 1
    assert main(["sweep", "--dataset", "iris", "--out", out]) == 1
    assert "error" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["fly"])
