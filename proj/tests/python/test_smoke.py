"""Smoke tests for the python module against the desk fixtures."""

import json
import os
import pathlib

import pytest

try:
    import hjnet as hj
except ImportError:
    import _hjnet as hj


SCENARIOS = pathlib.Path(os.environ.get("HJNET_SCENARIOS", "scenarios"))


def load(name):
    text = (SCENARIOS / name).read_text()
    return hj.Scenario.from_json(text)


def test_segment_static_layer():
    scenario = load("segment.json")
    assert scenario.critical_value == 0.0
    report = hj.analyze(scenario)["analyze.json"]
    assert report["c"] == 0.0
    assert report["aubry_arcs"] == ["g1"]
    matrix = report["S_c"]["matrix"]
    assert all(abs(v) < 1e-12 for row in matrix for v in row)


def test_bigon_critical_value_and_distances():
    scenario = load("bigon.json")
    assert scenario.critical_value == pytest.approx(1.0, abs=1e-6)
    c = scenario.critical_value
    assert hj.semidistance(scenario, c, "v0", "v1") == pytest.approx(1.0, abs=1e-6)
    assert hj.semidistance(scenario, c, "v1", "v0") == pytest.approx(-1.0, abs=1e-6)


def test_validation_error_maps_to_python():
    bad = json.loads((SCENARIOS / "segment.json").read_text())
    bad["network"]["arcs"][0]["head"] = "v0"
    with pytest.raises(ValueError):
        hj.Scenario.from_json(json.dumps(bad))


def test_evolution_snapshot():
    scenario = load("segment.json")
    out = hj.evolve(scenario)
    final = out["final.json"]
    assert len(final["values"]) == 41
    # values stay between the datum bounds for the free segment
    assert min(final["values"]) >= -1.0 - 1e-9
    assert max(final["values"]) <= 0.0 + 1e-9


def test_supercritical_asymptotics_report():
    scenario = load("segment_supercritical.json")
    report = hj.asymptotics(scenario)["report.json"]
    assert report["regime"] == "supercritical"
    assert report["b"] == pytest.approx(2.0)
    assert report["converged"]
    assert report["T_detect"] <= 10.0


def test_reparam_cycle_cost():
    scenario = load("reparam_bigon_cycle.json")
    report = hj.reparam_cost(scenario)["reparam.json"]
    assert report["cost_sigma"] == pytest.approx(0.0, abs=1e-8)
    assert report["retimed"]["attained"]
