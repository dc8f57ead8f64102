import json
import math
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from cli.config import Scenario, parse_config
from cli.scenarios import SCHEMAS, run_scenario
from nonstatic.errors import OutputUnwritable
from nonstatic.timebase import measure_DF


def _config(tmp_path: Path, scenario: str, **sections):
    overrides = {"scenario": scenario, "output": {"prefix": str(tmp_path / "run")}}
    overrides.update(sections)
    return parse_config("", overrides)


def _dataset(tmp_path: Path, scenario: str) -> pd.DataFrame:
    return pd.read_csv(tmp_path / f"run_{scenario.replace('-', '_')}.csv")


def _manifest(tmp_path: Path) -> dict:
    return json.loads((tmp_path / "run_manifest.json").read_text(encoding="utf-8"))


def test_static_phase_evolution(tmp_path: Path) -> None:
    manifest = run_scenario(_config(tmp_path, "phase-evolution", grid={"t_steps": 101}, fock={"n": 0}))
    frame = _dataset(tmp_path, "phase-evolution")
    assert list(frame.columns) == SCHEMAS[Scenario.PHASE_EVOLUTION] == manifest["datasets"]["phase_evolution"]["columns"]
    assert len(frame) == 101
    np.testing.assert_allclose(frame["gamma_total"], -0.5 * frame["t"], atol=1e-12)
    assert manifest["measure_DF"] == 0
    assert manifest["node_times"] == []


def test_extreme_phase_evolution_manifest(tmp_path: Path) -> None:
    config = _config(tmp_path, "phase-evolution", mode={"c1": 10000, "c2": 10000}, fock={"n": 7}, grid={"t_steps": 400})
    run_scenario(config)
    manifest = _manifest(tmp_path)
    assert abs(manifest["summary"]["per_period_drop"]) == pytest.approx(7.5 * math.pi, abs=1e-6)
    assert manifest["measure_DF"] == measure_DF(10000, 10000)
    assert manifest["config"]["mode"]["c3"] == pytest.approx(math.sqrt(1e8 - 1))
    assert len(manifest["node_times"]) == 10


@pytest.mark.parametrize(
    "scenario, rows",
    [
        ("density-map", 20 * 11)
        , ("geometric-phase", 20)
        , ("field-trace", 20 * 7)
        , ("field-map", 20 * 7)
        , ("interference", 20 * 7)
    ],
)
def test_dataset_shapes(tmp_path: Path, scenario: str, rows: int) -> None:
    grid = {"t_steps": 20, "x_steps": 7, "q_steps": 11}
    manifest = run_scenario(_config(tmp_path, scenario, mode={"c1": 1.5, "c2": 1.5}, grid=grid))
    frame = _dataset(tmp_path, scenario)
    assert list(frame.columns) == SCHEMAS[Scenario(scenario)]
    assert len(frame) == rows
    assert frame["t"].is_monotonic_increasing
    assert manifest["scenario"] == scenario


def test_superposition_dataset(tmp_path: Path) -> None:
    fock = {"n": 5, "m": 8, "beta_n": [1 / math.sqrt(2), 0], "beta_m": [0.5, 0.5]}
    manifest = run_scenario(_config(tmp_path, "superposition", fock=fock, grid={"t_steps": 10, "q_steps": 41}))
    frame = _dataset(tmp_path, "superposition")
    assert list(frame.columns) == ["t", "q", "total_density", "cross_term"]
    assert (frame["total_density"] >= 0).all()
    integrals = manifest["summary"]["integral_checks"]
    np.testing.assert_allclose(integrals["total"], 1.0, atol=1e-8)
    np.testing.assert_allclose(integrals["cross"], 0.0, atol=1e-8)


def test_static_interference_beat_period(tmp_path: Path) -> None:
    grid = {"t_min": 0.0, "t_max": 40 * math.pi, "t_steps": 4001, "x_steps": 5}
    manifest = run_scenario(_config(tmp_path, "interference", grid=grid))
    assert manifest["summary"]["beat_period"] == pytest.approx(4 * math.pi, rel=0.02)
    assert manifest["summary"]["expected_beat_period"] == pytest.approx(4 * math.pi)


def test_field_map_contrast_for_static_and_extreme_waves(tmp_path: Path) -> None:
    grid = {"t_max": 2 * math.pi, "t_steps": 257, "x_min": 0.0, "x_max": math.pi, "x_steps": 101}
    static = run_scenario(_config(tmp_path, "field-map", grid=grid))
    assert static["summary"]["standing_wave_contrast"] > 0.99
    extreme = run_scenario(_config(tmp_path, "field-map", mode={"c1": 10000, "c2": 10000}, grid=grid))
    assert extreme["summary"]["standing_wave_contrast"] < 0.05


def test_output_is_independent_of_thread_count(tmp_path: Path) -> None:
    config = _config(tmp_path, "field-trace", mode={"c1": 1.5, "c2": 1.0}, grid={"t_steps": 300, "x_steps": 9})
    snapshots = []
    for threads in (1, 8):
        run_scenario(config, threads=threads)
        snapshots.append({path.name: path.read_bytes() for path in sorted(tmp_path.glob("run_*"))})
    assert snapshots[0] == snapshots[1]
    assert b"\r\n" not in snapshots[0]["run_field_trace.csv"]


def test_unwritable_prefix(tmp_path: Path) -> None:
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    config = parse_config("", {"output": {"prefix": str(blocker / "run")}})
    with pytest.raises(OutputUnwritable):
        run_scenario(config)


def test_group_velocity_on_closed_wavelength_grid(tmp_path: Path) -> None:
    grid = {"t_max": 2 * math.pi, "t_steps": 201, "x_min": 0.0, "x_max": 2 * math.pi, "x_steps": 101}
    manifest = run_scenario(_config(tmp_path, "field-map", grid=grid))
    assert manifest["summary"]["group_velocity_estimate"] == pytest.approx(1.0, rel=0.01)
