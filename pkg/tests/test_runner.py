"""Experiment configs, the check registry, report files, and the CLI."""

import json

import numpy as np
import pytest

from bidiscframes.cli import main
from bidiscframes.runner import (
    CHECK_NAMES,
    ExperimentConfig,
    run,
    run_file,
    run_suite,
)

ALL_CHECKS = list(CHECK_NAMES)


def write_config(path, **data):
    path.write_text(json.dumps(data))
    return str(path)


def test_config_parses_spec_shapes():
    cfg = ExperimentConfig.from_json(
        {"order": [4, 4], "inner": "zw", "checks": ["parseval"], "seed": 3}
    )
    assert tuple(cfg.order) == (4, 4)
    assert tuple(cfg.horizon) == (4, 4)
    assert cfg.checks == ("parseval",)
    assert cfg.seed == 3


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError, match="unknown config keys"):
        ExperimentConfig.from_json({"order": [2, 2], "bogus": 1})


def test_config_rejects_unknown_check():
    with pytest.raises(ValueError, match="unknown check name: nope"):
        ExperimentConfig.from_json({"order": [2, 2], "checks": ["nope"]})


def test_config_rejects_multiple_recipes():
    with pytest.raises(ValueError, match="at most one"):
        ExperimentConfig.from_json(
            {"order": [2, 2], "inner": "zw", "generators": ["z"]}
        )


def test_config_rejects_unknown_inner():
    with pytest.raises(ValueError, match="unknown inner"):
        ExperimentConfig.from_json({"order": [2, 2], "inner": "q"})


def test_config_warns_on_oversized_horizon():
    with pytest.warns(UserWarning, match="exceeds order"):
        ExperimentConfig.from_json(
            {"order": [3, 3], "horizon": [5, 5], "inner": "zw"}
        )


def test_config_generator_parsing():
    cfg = ExperimentConfig.from_json(
        {"order": [3, 3], "generators": ["z", "w2", [1, 1]]}
    )
    degs = [tuple(g.maxdeg) for g in cfg.generators]
    assert degs == [(1, 0), (0, 2), (1, 1)]


def test_config_fixture_defaults_order():
    cfg = ExperimentConfig.from_json({"fixture": "inner-zw"})
    assert tuple(cfg.order) == (6, 6)


def test_parseval_example_passes():
    out = run(
        ExperimentConfig.from_json(
            {"order": [4, 4], "inner": "zw", "checks": ["parseval"]}
        )
    )
    assert out.exit_code == 0
    assert out.results[0].passed
    data = out.results[0].data
    assert data["lower"] == pytest.approx(1.0, abs=1e-10)
    assert data["upper"] == pytest.approx(1.0, abs=1e-10)


def test_mandrekar_failure_recorded_not_fatal():
    out = run(
        ExperimentConfig.from_json(
            {"order": [4, 4], "generators": ["z", "w"], "checks": ["mandrekar"]}
        )
    )
    assert out.exit_code == 0
    assert out.results[0].data["verdict"] is False


def test_empty_checks_empty_summary():
    out = run(ExperimentConfig.from_json({"order": [4, 4], "inner": "zw"}))
    assert out.exit_code == 0
    assert out.results == []
    assert out.summary_lines == ["summary: pass (0 checks)"]


def test_all_checks_pass_on_zw(tmp_path):
    cfg = ExperimentConfig.from_json(
        {
            "order": [5, 5],
            "inner": "zw",
            "seed": 11,
            "checks": ALL_CHECKS,
            "output": str(tmp_path / "zw"),
        }
    )
    out = run(cfg)
    assert out.exit_code == 0
    assert len(out.results) == len(ALL_CHECKS)
    # checks execute in registry (dependency) order regardless of input order
    assert [r.name for r in out.results] == ALL_CHECKS
    summary = json.loads((tmp_path / "zw.summary.json").read_text())
    assert summary["passed"] is True
    assert len(summary["checks"]) == len(ALL_CHECKS)


def test_reports_are_byte_identical_across_runs(tmp_path):
    base = {
        "order": [4, 4],
        "inner": "zw",
        "seed": 5,
        "checks": ["similarity", "decay", "recover"],
    }
    for name in ("a", "b"):
        cfg = ExperimentConfig.from_json(dict(base, output=str(tmp_path / name)))
        assert run(cfg).exit_code == 0
    for check in base["checks"] + ["summary"]:
        fa = (tmp_path / f"a.{check}.json").read_bytes()
        fb = (tmp_path / f"b.{check}.json").read_bytes()
        assert fa == fb


def test_seed_changes_similarity_data(tmp_path):
    reports = []
    for seed in (1, 2):
        cfg = ExperimentConfig.from_json(
            {"order": [4, 4], "inner": "zw", "seed": seed, "checks": ["similarity"]}
        )
        reports.append(run(cfg).results[0].data["condition"])
    assert reports[0] != reports[1]


def test_csv_mirrors_written(tmp_path):
    cfg = ExperimentConfig.from_json(
        {
            "order": [4, 4],
            "inner": "zw",
            "checks": ["frame-bounds", "decay", "codimension"],
            "output": str(tmp_path / "rep"),
            "format": "csv",
        }
    )
    out = run(cfg)
    assert out.exit_code == 0
    trace = (tmp_path / "rep.frame-bounds.csv").read_text().splitlines()
    assert trace[0] == "horizon,lower,upper"
    orbit = (tmp_path / "rep.decay.csv").read_text().splitlines()
    assert orbit[0] == "i,j,norm"
    codim = (tmp_path / "rep.codimension.csv").read_text().splitlines()
    assert codim[0] == "order,codimension"


def test_meta_file_separate_from_reports(tmp_path):
    cfg = ExperimentConfig.from_json(
        {"order": [3, 3], "inner": "z", "checks": ["parseval"],
         "output": str(tmp_path / "m")}
    )
    run(cfg)
    meta = json.loads((tmp_path / "m.meta.json").read_text())
    assert "written_at" in meta
    report = json.loads((tmp_path / "m.parseval.json").read_text())
    assert "written_at" not in report


def test_riesz_check_needs_no_recipe():
    out = run(ExperimentConfig.from_json({"order": [4, 4], "checks": ["riesz"]}))
    assert out.exit_code == 0


def test_submodule_check_without_recipe_is_config_error():
    with pytest.raises(ValueError, match="recipe"):
        run(ExperimentConfig.from_json({"order": [4, 4], "checks": ["jordan"]}))


def test_run_suite_directory(tmp_path):
    write_config(tmp_path / "one.json", order=[3, 3], inner="z", checks=["parseval"])
    write_config(tmp_path / "two.json", order=[3, 3], checks=["riesz"])
    results = run_suite(tmp_path, output=str(tmp_path / "suite"))
    assert [code for _, out in results for code in [out.exit_code]] == [0, 0]
    assert (tmp_path / "suite.one.summary.json").exists()
    assert (tmp_path / "suite.two.summary.json").exists()


def test_run_suite_rejects_empty_dir(tmp_path):
    with pytest.raises(ValueError, match="no .*json"):
        run_suite(tmp_path)


def test_fixture_config_runs_chain(tmp_path):
    path = write_config(
        tmp_path / "fx.json", fixture="generated-zw", checks=["mandrekar"]
    )
    out = run_file(path)
    assert out.exit_code == 0
    assert out.results[0].data["verdict"] is False


# --- command-line interface ---------------------------------------------


def test_cli_parseval_pass(tmp_path, capsys):
    path = write_config(tmp_path / "c.json", order=[4, 4], inner="zw")
    code = main(["frame-check", "--config", path])
    assert code == 0
    out = capsys.readouterr().out
    assert "check frame-bounds: pass" in out
    assert "summary: pass" in out


def test_cli_forces_namesake_check(tmp_path, capsys):
    # config asks for parseval; the jordan subcommand runs jordan instead
    path = write_config(
        tmp_path / "c.json", order=[4, 4], inner="zw", checks=["parseval"]
    )
    code = main(["jordan", "--config", path])
    assert code == 0
    out = capsys.readouterr().out
    assert "check jordan: pass" in out
    assert "parseval" not in out


def test_cli_suite_runs_config_as_written(tmp_path, capsys):
    path = write_config(
        tmp_path / "c.json", order=[4, 4], inner="zw", checks=["parseval", "jordan"]
    )
    code = main(["suite", "--config", path])
    assert code == 0
    out = capsys.readouterr().out
    assert "check jordan: pass" in out
    assert "check parseval: pass" in out


def test_cli_unknown_check_exit_2(tmp_path, capsys):
    path = write_config(tmp_path / "c.json", order=[4, 4], checks=["bogus"])
    code = main(["suite", "--config", path])
    assert code == 2
    assert "unknown check name: bogus" in capsys.readouterr().err


def test_cli_missing_config_exit_2(tmp_path, capsys):
    code = main(["suite", "--config", str(tmp_path / "absent.json")])
    assert code == 2


def test_cli_guard_exit_3(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("BDF_MAX_DIM", "10")
    path = write_config(tmp_path / "c.json", order=[4, 4], inner="zw")
    code = main(["frame-check", "--config", path])
    assert code == 3
    assert "guard" in capsys.readouterr().err


def test_cli_env_override_lifts_guard(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("BDF_MAX_DIM", "10")
    path = write_config(tmp_path / "c.json", order=[3, 3], inner="z")
    assert main(["frame-check", "--config", path]) == 3
    monkeypatch.setenv("BDF_MAX_DIM", "50")
    assert main(["frame-check", "--config", path]) == 0


def test_cli_out_and_seed_flags(tmp_path, capsys):
    path = write_config(tmp_path / "c.json", order=[4, 4], inner="zw", seed=0)
    prefix = tmp_path / "cli"
    code = main(
        ["similarity", "--config", path, "--seed", "9", "--out", str(prefix)]
    )
    assert code == 0
    report = json.loads((tmp_path / "cli.similarity.json").read_text())
    assert report["passed"] is True
    summary = json.loads((tmp_path / "cli.summary.json").read_text())
    assert summary["config"]["seed"] == 9


def test_cli_list_fixtures(capsys):
    assert main(["list-fixtures"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) >= 6
    assert main(["list-fixtures", "beurling"]) == 0
    filtered = capsys.readouterr().out.strip().splitlines()
    assert 0 < len(filtered) < len(lines)
    assert all("Beurling" in line for line in filtered)
    assert main(["list-fixtures", "zzzz-none"]) == 0
    assert capsys.readouterr().out.strip() == ""


def test_cli_suite_directory(tmp_path, capsys):
    write_config(tmp_path / "a.json", order=[3, 3], inner="z", checks=["parseval"])
    write_config(tmp_path / "b.json", order=[3, 3], checks=["riesz"])
    code = main(["suite", "--config", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert out.count(": pass") == 2
