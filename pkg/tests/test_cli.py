"""Command-line surface: verbs, reports on disk, exit codes, env overrides."""
from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from repvar.cli import SCHEMA_VERSION, cli


@pytest.fixture()
def runner():
    return CliRunner()


def _run(runner, tmp_path, args, env=None):
    return runner.invoke(
        cli,
        [*args, "--run-dir", str(tmp_path)],
        env=env,
        auto_envvar_prefix="REPVAR",
        catch_exceptions=False,
    )


def _record(tmp_path, command):
    files = sorted(tmp_path.glob(f"{command}-*.json"))
    assert files, f"no {command} record written"
    return json.loads(files[-1].read_text())


# --- variety ---------------------------------------------------------------------


def test_variety_by_name(runner, tmp_path):
    result = _run(
        runner, tmp_path, ["variety", "--name", "3_1", "--seeds", "192", "--json"]
    )
    assert result.exit_code == 0, result.output
    record = json.loads(result.output)
    assert record["schema_version"] == SCHEMA_VERSION
    assert record["command"] == "variety"
    assert record["passed"] is True
    comps = record["results"]["components"]
    assert len(comps) == 2
    tags = sorted(c["topology_tag"] for c in comps)
    assert tags == ["RP3", "S2"]
    kh = record["results"]["khovanov"]
    assert kh["variety_rank"] == 4 and kh["matches"] is True
    # and the same record landed in the run directory
    on_disk = _record(tmp_path, "variety")
    assert on_disk["results"] == record["results"]


def test_variety_by_braid_text(runner, tmp_path):
    result = _run(
        runner, tmp_path,
        ["variety", "--braid", "2: 1 1 1", "--seeds", "160", "--table"],
    )
    assert result.exit_code == 0, result.output
    assert "component(s)" in result.output
    assert "tag=" in result.output


def test_variety_requires_exactly_one_word(runner, tmp_path):
    assert _run(runner, tmp_path, ["variety"]).exit_code == 2
    both = _run(
        runner, tmp_path, ["variety", "--name", "3_1", "--braid", "2: 1 1 1"]
    )
    assert both.exit_code == 2


def test_variety_env_var_overrides_seeds(runner, tmp_path):
    result = _run(
        runner, tmp_path, ["variety", "--name", "3_1", "--json"],
        env={"REPVAR_VARIETY_SEEDS": "96"},
    )
    assert result.exit_code == 0
    record = json.loads(result.output)
    assert record["config"]["seeds"] == 96


def test_variety_is_deterministic(runner, tmp_path):
    args = ["variety", "--braid", "2: 1 1 1 1 1", "--seeds", "128", "--json"]
    r1 = json.loads(_run(runner, tmp_path, args).output)
    r2 = json.loads(_run(runner, tmp_path, args).output)
    assert r1["results"] == r2["results"]


# --- invariants -------------------------------------------------------------------


def test_invariants_for_a_table_knot(runner, tmp_path):
    result = _run(runner, tmp_path, ["invariants", "--name", "4_1", "--json"])
    assert result.exit_code == 0, result.output
    record = json.loads(result.output)
    res = record["results"]
    assert res["determinant"] == 5
    assert res["alexander"]["coeffs"] == [-1, 3, -1]
    assert res["two_bridge_prediction"]["total_components"] == 3
    assert res["two_bridge_prediction"]["cohomology_rank"] == 6
    assert res["khovanov_rank"] == 6
    assert res["prediction_matches_khovanov"] is True


def test_invariants_rejects_links(runner, tmp_path):
    result = runner.invoke(
        cli, ["invariants", "--braid", "2: 1 1", "--run-dir", str(tmp_path)]
    )
    assert result.exit_code == 2
    assert "2-component link" in result.output


# --- verify -----------------------------------------------------------------------


def test_verify_fast_suites_pass(runner, tmp_path):
    for which in ("hessian", "chern", "monotone"):
        result = _run(runner, tmp_path, ["verify", which, "--json"])
        assert result.exit_code == 0, result.output
        record = json.loads(result.output)
        assert record["passed"] is True
        assert all(c["passed"] for c in record["checks"])


def test_verify_sampling_suites_with_reduced_trials(runner, tmp_path):
    for which in ("symplectic", "lagrangian"):
        result = _run(
            runner, tmp_path, ["verify", which, "--trials", "60", "--json"]
        )
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)["passed"] is True


def test_verify_rejects_unknown_suite(runner, tmp_path):
    assert _run(runner, tmp_path, ["verify", "everything"]).exit_code == 2


# --- hessian / chern verbs -----------------------------------------------------------


def test_hessian_verb(runner, tmp_path):
    result = _run(runner, tmp_path, ["hessian", "--n", "3", "--json"])
    assert result.exit_code == 0, result.output
    record = json.loads(result.output)
    res = record["results"]
    assert res["pfaffian_table"] == [2, 5]
    assert res["hprime"] == [[0, 2, -1, 0], [-2, 0, -2, 1], [1, 2, 0, 2], [0, -1, -2, 0]]
    assert res["hprime_pfaffian"] == 5
    assert res["signature"] == 0
    assert record["passed"] is True


def test_chern_verb(runner, tmp_path):
    result = _run(runner, tmp_path, ["chern", "--json"])
    assert result.exit_code == 0, result.output
    record = json.loads(result.output)
    res = record["results"]
    assert res["winding_first_contour"] == -1
    assert res["winding_second_contour"] == -1
    assert res["pairing"] == -2
    assert record["passed"] is True


def test_records_are_written_per_invocation(runner, tmp_path):
    _run(runner, tmp_path, ["hessian", "--n", "2"])
    _run(runner, tmp_path, ["chern"])
    assert len(list(tmp_path.glob("hessian-*.json"))) == 1
    assert len(list(tmp_path.glob("chern-*.json"))) == 1
    record = _record(tmp_path, "chern")
    assert set(record) >= {
        "schema_version", "command", "config", "timestamp", "results",
        "checks", "passed",
    }
