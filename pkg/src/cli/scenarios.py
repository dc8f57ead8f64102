"""Scenario runner: figure-reproduction datasets and run manifests"""
#%%
# Import modules and libraries needed within code.
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
import math

from loguru import logger
import numpy as np
import pandas as pd

from analysis.signal_analysis import beat_period, group_velocity, standing_wave_contrast, time_rms
from cli.config import Scenario, ScenarioConfig, config_echo
from nonstatic.fields import amplitudes, field_phase, field_sample, interference_field
from nonstatic.phases import (
    dynamical_phase
    , geometric_phase
    , geometric_phase_rate
    , period_phase_drop
    , total_phase
)
from nonstatic.timebase import eval_f, measure_DF, node_times
from nonstatic.wavefunctions import integrate_superposition, probability_density, superposition_density
from utils.output import OutputConfig, to_jsonable, write_dataset, write_json


#%%
#
BLOCK_SIZE = 128  # Time samples per work unit; fixed so output never depends on --threads.

# Column sets per dataset.
SCHEMAS = {
    Scenario.PHASE_EVOLUTION: ["t", "gamma_total", "gamma_dynamical", "gamma_geometric", "gamma_geometric_rate"]
    , Scenario.DENSITY_MAP: ["t", "q", "density"]
    , Scenario.GEOMETRIC_PHASE: ["t", "gamma_geometric", "gamma_geometric_rate", "f"]
    , Scenario.FIELD_TRACE: ["t", "x", "phase", "phase_factor", "amplitude", "A", "E", "B"]
    , Scenario.FIELD_MAP: ["t", "x", "A", "E", "B"]
    , Scenario.SUPERPOSITION: ["t", "q", "total_density", "cross_term"]
    , Scenario.INTERFERENCE: ["t", "x", "E_total"]
}

# Plot each scenario's dataset is laid out for.
FIGURES = {
    Scenario.PHASE_EVOLUTION: "total, dynamical and geometric phase against t (n=7, omega=1)"
    , Scenario.DENSITY_MAP: "probability density over (q, t) (c1=c2=10000, n=7)"
    , Scenario.GEOMETRIC_PHASE: "geometric phase and its rate against t"
    , Scenario.FIELD_TRACE: "phase, phase factor, amplitudes and fields at fixed x against t"
    , Scenario.FIELD_MAP: "density plots of A, E and B over (x, t)"
    , Scenario.SUPERPOSITION: "superposition density over (q, t) (n=5, m=8)"
    , Scenario.INTERFERENCE: "two-frequency beating of E over (x, t) (omega_I=1.0, omega_II=1.5)"
}


#%%
# Grids and block evaluation.
def _grid(config: ScenarioConfig, axis: str) -> np.ndarray:
    grid = config.grid
    return np.linspace(getattr(grid, f"{axis}_min"), getattr(grid, f"{axis}_max"), getattr(grid, f"{axis}_steps"))


def evaluate_blocks(build: Callable[[np.ndarray], pd.DataFrame], t: np.ndarray, threads: int = 1) -> pd.DataFrame:
    """
    Purpose:
        Evaluate build over fixed-size blocks of the time grid, in parallel, and concatenate in order.
    Args:
        build: Maps a block of times to a DataFrame of rows.
        t: Full time grid.
        threads: Worker count; affects speed only.
    Returns:
        Concatenated DataFrame in time order.
    """
    blocks = [t[i:i + BLOCK_SIZE] for i in range(0, len(t), BLOCK_SIZE)]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        frames = list(executor.map(build, blocks))
    return pd.concat(frames, ignore_index=True)


def _tx_columns(t_block: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Broadcast views (t[:, None], x[None, :]) and their t-major flattened copies."""
    tt = t_block[:, None]
    xx = x[None, :]
    flat_t, flat_x = np.broadcast_arrays(tt, xx)
    return tt, xx, flat_t.ravel(), flat_x.ravel()


#%%
# Dataset builders.
def _phase_evolution(config: ScenarioConfig, t: np.ndarray, threads: int) -> tuple[pd.DataFrame, dict]:
    params, state = config.mode_params(), config.phase_state()

    def build(block: np.ndarray) -> pd.DataFrame:
        return pd.DataFrame({
            "t": block
            , "gamma_total": total_phase(params, state, block)
            , "gamma_dynamical": dynamical_phase(params, state, block)
            , "gamma_geometric": geometric_phase(params, state, block)
            , "gamma_geometric_rate": geometric_phase_rate(params, state, block)
        })

    summary = {
        "per_period_drop": period_phase_drop(params, state)
        , "expected_per_period_drop": -state.weight * math.pi
    }
    return evaluate_blocks(build, t, threads), summary


def _density_map(config: ScenarioConfig, t: np.ndarray, threads: int) -> tuple[pd.DataFrame, dict]:
    params, consts, n = config.mode_params(), config.quantum_constants(), config.fock.n
    q = _grid(config, "q")

    def build(block: np.ndarray) -> pd.DataFrame:
        tt, qq, flat_t, flat_q = _tx_columns(block, q)
        density = np.asarray(probability_density(n, qq, params, consts, tt))
        return pd.DataFrame({"t": flat_t, "q": flat_q, "density": density.ravel()})

    frame = evaluate_blocks(build, t, threads)
    return frame, {"max_density": float(frame["density"].max())}


def _geometric_phase(config: ScenarioConfig, t: np.ndarray, threads: int) -> tuple[pd.DataFrame, dict]:
    params, state = config.mode_params(), config.phase_state()

    def build(block: np.ndarray) -> pd.DataFrame:
        return pd.DataFrame({
            "t": block
            , "gamma_geometric": geometric_phase(params, state, block)
            , "gamma_geometric_rate": geometric_phase_rate(params, state, block)
            , "f": eval_f(params, block)
        })

    frame = evaluate_blocks(build, t, threads)
    lowest = int(frame["gamma_geometric_rate"].idxmin())
    summary = {
        "min_rate": float(frame["gamma_geometric_rate"].iloc[lowest])
        , "min_rate_time": float(frame["t"].iloc[lowest])
        , "max_rate": float(frame["gamma_geometric_rate"].max())
    }
    return frame, summary


def _field_trace(config: ScenarioConfig, t: np.ndarray, threads: int) -> tuple[pd.DataFrame, dict]:
    params, consts, fp = config.mode_params(), config.quantum_constants(), config.field_params()
    x = _grid(config, "x")

    def build(block: np.ndarray) -> pd.DataFrame:
        tt, xx, flat_t, flat_x = _tx_columns(block, x)
        sample = field_sample(xx, tt, params, consts, fp)
        phase, factor = field_phase(xx, tt, params, consts, fp)
        amplitude = np.broadcast_to(sample.amp_e, np.shape(phase))
        return pd.DataFrame({
            "t": flat_t
            , "x": flat_x
            , "phase": np.asarray(phase).ravel()
            , "phase_factor": np.asarray(factor).ravel()
            , "amplitude": amplitude.ravel()
            , "A": sample.a.ravel()
            , "E": sample.e.ravel()
            , "B": sample.b.ravel()
        })

    frame = evaluate_blocks(build, t, threads)
    _, amp_e, amp_b, _ = amplitudes(params, consts, fp, t)
    summary = {
        "amplitude_min": float(np.min(amp_e))
        , "amplitude_max": float(np.max(amp_e))
        , "argmax_amp_e_time": float(t[int(np.argmax(amp_e))])
        , "argmin_abs_amp_b_time": float(t[int(np.argmin(np.abs(amp_b)))])
    }
    return frame, summary


def _periodic_columns(x: np.ndarray, k: float) -> slice:
    """Columns of x covering whole wavelengths once; the closing sample repeats the first."""
    wavelengths = (x[-1] - x[0]) * k / (2 * math.pi)
    if round(wavelengths) >= 1 and math.isclose(wavelengths, round(wavelengths), rel_tol=1e-9):
        return slice(0, -1)
    return slice(None)


def _field_map(config: ScenarioConfig, t: np.ndarray, threads: int) -> tuple[pd.DataFrame, dict]:
    params, consts, fp = config.mode_params(), config.quantum_constants(), config.field_params()
    x = _grid(config, "x")

    def build(block: np.ndarray) -> pd.DataFrame:
        tt, xx, flat_t, flat_x = _tx_columns(block, x)
        sample = field_sample(xx, tt, params, consts, fp)
        return pd.DataFrame({"t": flat_t, "x": flat_x, "A": sample.a.ravel(), "E": sample.e.ravel(), "B": sample.b.ravel()})

    frame = evaluate_blocks(build, t, threads)
    e_map = frame["E"].to_numpy().reshape(len(t), len(x))
    rms_by_x = time_rms(e_map, axis=0)
    periodic = _periodic_columns(x, fp.k)
    summary = {
        "rms_E_by_x": {"x": x, "rms": rms_by_x}
        , "standing_wave_contrast": standing_wave_contrast(rms_by_x)
        , "group_velocity_estimate": group_velocity(x[periodic], t, e_map[:, periodic])
    }
    return frame, summary


def _superposition(config: ScenarioConfig, t: np.ndarray, threads: int) -> tuple[pd.DataFrame, dict]:
    params, consts = config.mode_params(), config.quantum_constants()
    spec = config.superposition_spec()
    states = (config.phase_state(spec.n), config.phase_state(spec.m))
    q = _grid(config, "q")

    def build(block: np.ndarray) -> pd.DataFrame:
        tt, qq, flat_t, flat_q = _tx_columns(block, q)
        total, cross = superposition_density(spec, qq, params, consts, states, tt)
        return pd.DataFrame({
            "t": flat_t
            , "q": flat_q
            , "total_density": np.asarray(total).ravel()
            , "cross_term": np.asarray(cross).ravel()
        })

    frame = evaluate_blocks(build, t, threads)
    check_times = t[np.linspace(0, len(t) - 1, min(5, len(t))).astype(int)]
    integrals = [integrate_superposition(spec, params, consts, float(time), states) for time in check_times]
    summary = {
        "integral_checks": {
            "t": check_times
            , "total": [total for total, _ in integrals]
            , "cross": [cross for _, cross in integrals]
        }
    }
    return frame, summary


def _interference(config: ScenarioConfig, t: np.ndarray, threads: int) -> tuple[pd.DataFrame, dict]:
    params_i, params_ii = config.mode_params(), config.mode_params_ii()
    consts, fp = config.quantum_constants(), config.field_params()
    x = _grid(config, "x")

    def build(block: np.ndarray) -> pd.DataFrame:
        tt, xx, flat_t, flat_x = _tx_columns(block, x)
        e_total = np.asarray(interference_field(xx, tt, params_i, params_ii, consts, fp))
        return pd.DataFrame({"t": flat_t, "x": flat_x, "E_total": e_total.ravel()})

    frame = evaluate_blocks(build, t, threads)
    e_map = frame["E_total"].to_numpy().reshape(len(t), len(x))
    periods = np.array([beat_period(t, e_map[:, column]) for column in range(len(x))])
    summary = {
        "rms_E_total_by_x": {"x": x, "rms": time_rms(e_map, axis=0)}
        , "beat_period": float(np.nanmedian(periods)) if np.any(np.isfinite(periods)) else None
        , "expected_beat_period": 2 * math.pi / abs(params_i.omega - params_ii.omega) if params_i.omega != params_ii.omega else None
        , "omega_i": params_i.omega
        , "omega_ii": params_ii.omega
    }
    return frame, summary


BUILDERS = {
    Scenario.PHASE_EVOLUTION: _phase_evolution
    , Scenario.DENSITY_MAP: _density_map
    , Scenario.GEOMETRIC_PHASE: _geometric_phase
    , Scenario.FIELD_TRACE: _field_trace
    , Scenario.FIELD_MAP: _field_map
    , Scenario.SUPERPOSITION: _superposition
    , Scenario.INTERFERENCE: _interference
}


#%%
# Runner.
def run_scenario(config: ScenarioConfig, threads: int = 1) -> dict:
    """
    Purpose:
        Evaluate the configured scenario, write its dataset and manifest.
    Args:
        config: Validated scenario configuration (not 'check').
        threads: Worker threads for grid evaluation; output bytes do not depend on it.
    Returns:
        JSON-ready manifest dictionary (also written to <prefix>_manifest.json).
    Raises:
        ValueError: If called with the 'check' scenario.
        OutputUnwritable: If outputs cannot be written.
    """
    if config.scenario not in BUILDERS:
        raise ValueError(f"Scenario '{config.scenario.value}' has no dataset builder.")

    params = config.mode_params()
    t = _grid(config, "t")
    logger.info(f"Running {config.scenario.value}: {len(t)} time samples, c1={params.c1}, c2={params.c2}, c3={params.c3}")

    frame, summary = BUILDERS[config.scenario](config, t, threads)
    frame = frame[SCHEMAS[config.scenario]]

    outputs = OutputConfig(config.output.prefix)
    outputs.ensure_directories()
    dataset_name = config.scenario.value.replace("-", "_")
    dataset_path = write_dataset(frame, outputs.get_dataset_path(dataset_name))

    manifest = {
        "scenario": config.scenario.value
        , "figure": FIGURES[config.scenario]
        , "config": config_echo(config)
        , "measure_DF": measure_DF(params.c1, params.c2)
        , "node_times": node_times(params, config.grid.t_min, config.grid.t_max)
        , "datasets": {dataset_name: {"path": dataset_path.name, "columns": SCHEMAS[config.scenario], "rows": len(frame)}}
        , "summary": summary
    }
    manifest = to_jsonable(manifest)
    write_json(manifest, outputs.get_manifest_path())
    return manifest
