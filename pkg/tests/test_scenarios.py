from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ncbu.cli import main
from ncbu.scenarios import SCENARIOS, ScenarioError, emit_report, list_scenarios, run_scenario

FILES = Path(__file__).resolve().parent.parent / "scripts" / "scenario_files"


@pytest.fixture(scope="module")
def reports():
    return {name: run_scenario(name) for name in list_scenarios()}


def test_registry_names():
    assert list_scenarios() == [
        "thm_3_1", "thm_3_2", "rotation_family", "lemma_2_1_induction", "prop_2_5_shift",
        "cor_2_6_clopen", "exam_3_6_matrix", "exam_3_7_circle", "exam_3_8_strong", "saturation_demos",
    ]


@pytest.mark.parametrize("name", list(SCENARIOS))
def test_every_scenario_matches_expectations(reports, name):
    r = reports[name]
    assert r.error is None
    assert r.passed, [c.name for c in r.checks if not c.matches]


def test_rewriting_is_confluent_everywhere(reports):
    for r in reports.values():
        assert all(r.rewriting.values()), r.scenario


def test_json_is_deterministic():
    def strip(r):
        d = r.to_json()
        d.pop("wall_clock")
        return json.dumps(d, sort_keys=True)

    assert strip(run_scenario("thm_3_1")) == strip(run_scenario("thm_3_1"))
    assert strip(run_scenario("exam_3_8_strong", {"seed": 3})) == strip(run_scenario("exam_3_8_strong", {"seed": 3}))


def test_overrides_reach_the_body():
    r = run_scenario("prop_2_5_shift", {"k": 4})
    assert r.params["k"] == 4 and r.passed


def test_text_output_shows_expected_failures(reports):
    text = emit_report(reports["thm_3_2"], "text")
    assert "[expected fail]" in text and text.rstrip().splitlines()[-1].startswith("verdict: PASS")


def test_unknown_scenario():
    with pytest.raises(ScenarioError):
        run_scenario("nope")


def test_cli_list(capsys):
    assert main(["list"]) == 0
    assert "thm_3_1" in capsys.readouterr().out


def test_cli_exit_codes(tmp_path, capsys, monkeypatch):
    out = tmp_path / "r.json"
    assert main(["run", "thm_3_1", "--format", "json", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["passed"] is True
    assert main(["run", "nope"]) == 2
    assert main(["run"]) == 2
    assert main(["run", "--file", str(FILES / "sphere_join.json")]) == 0
    assert main(["run", "--file", str(FILES / "failing_identity.json")]) == 1
    assert main(["run", "--file", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_failing_file_prints_witness(capsys):
    main(["run", "--file", str(FILES / "failing_identity.json")])
    assert "(1)[x y] + (-1)[y x]" in capsys.readouterr().out


def test_conductor_bound_from_environment():
    env = dict(os.environ, NCBU_CONDUCTOR_MAX="4")
    proc = subprocess.run([sys.executable, "-m", "ncbu.cli", "run", "thm_3_2"], env=env,
                          capture_output=True, text=True)
    assert proc.returncode == 2
