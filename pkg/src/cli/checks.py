"""Invariant and acceptance suite behind the 'check' subcommand"""
#%%
# Import modules and libraries needed within code.
from collections.abc import Callable
from dataclasses import asdict, dataclass
import math
from pathlib import Path
import tempfile
import time

from loguru import logger
import numpy as np

from analysis.signal_analysis import beat_period, spectral_concentration, standing_wave_contrast, time_rms
from cli.config import parse_config
from cli.scenarios import run_scenario
from nonstatic.fields import (
    FieldParams
    , amplitudes
    , coherent_eigenvalue
    , electric_field
    , field_phase
    , interference_field
    , magnetic_field
    , vector_potential
)
from nonstatic.phases import (
    PhaseState
    , dynamical_phase
    , geometric_phase
    , geometric_phase_rate
    , period_phase_drop
    , total_phase
)
from nonstatic.timebase import (
    ModeParams
    , eval_f
    , eval_theta
    , f_extrema
    , measure_DF
    , node_times
    , oracle_theta_grid
)
from nonstatic.wavefunctions import QuantumConstants, SuperpositionSpec, eigenfunction, inner_product, integrate_superposition


#%%
# Parameter sets shared by the suite.
COEFFICIENT_SETS = [(1.0, 1.0), (1.5, 1.0), (1.5, 1.5), (100.0, 100.0), (10000.0, 10000.0)]
SIGNS = ("+", "-")
CONSTS = QuantumConstants()
FIELD = FieldParams()
FOCK_N = 7


def _all_params() -> list[ModeParams]:
    return [ModeParams.from_coefficients(c1, c2, sign) for c1, c2 in COEFFICIENT_SETS for sign in SIGNS]


def _label(params: ModeParams) -> str:
    return f"c1={params.c1:g}, c2={params.c2:g}, c3={params.c3:+.6g}"


@dataclass
class CheckResult:
    """Outcome of one check: the worst measured deviation against its tolerance"""
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""
    seconds: float = 0.0


#%%
# Timebase and phase checks.
def check_measure_df(level: str) -> CheckResult:
    extreme = measure_DF(10000, 10000)
    static = measure_DF(1, 1)
    measured = max(abs(extreme - 7071.07), abs(static))
    return CheckResult("measure_DF", measured <= 0.01, measured, 0.01, f"D_F(10000,10000)={extreme:.2f}, D_F(1,1)={static:g}")


def check_f_bounds(level: str) -> CheckResult:
    """f stays within its analytic extrema and reaches f_min at every node."""
    worst = 0.0
    for params in _all_params():
        f_min, f_max = f_extrema(params)
        t = np.linspace(params.t0, params.t0 + 10 * params.period, 2001)
        f = np.asarray(eval_f(params, t))
        worst = max(worst, float(np.max(np.maximum(f_min - f, f - f_max) / f_max)))
        nodes = node_times(params)
        if len(nodes):
            worst = max(worst, float(np.max(np.abs(np.asarray(eval_f(params, nodes)) - f_min) / f_max)))
    return CheckResult("f_bounds", worst <= 1e-12, worst, 1e-12)


def check_theta_oracle(level: str) -> CheckResult:
    points = 1000 if level == "full" else 100
    worst, worst_label = 0.0, ""
    for params in _all_params():
        t = np.linspace(params.t0, params.t0 + 10 * params.period, points)
        error = float(np.max(np.abs(np.asarray(eval_theta(params, t)) - oracle_theta_grid(params, t))))
        if error > worst:
            worst, worst_label = error, _label(params)
    return CheckResult("theta_oracle", worst <= 1e-8, worst, 1e-8, f"{points} times per set; worst at {worst_label}")


def check_theta_periodicity(level: str) -> CheckResult:
    worst = 0.0
    for params in _all_params():
        base = np.linspace(params.t0, params.t0 + 3 * params.period, 100)
        step = np.asarray(eval_theta(params, base + params.period)) - np.asarray(eval_theta(params, base))
        worst = max(worst, float(np.max(np.abs(step - math.pi))))
    return CheckResult("theta_periodicity", worst <= 1e-9, worst, 1e-9)


def check_phase_decomposition(level: str) -> CheckResult:
    state = PhaseState(FOCK_N)
    worst = 0.0
    for params in _all_params():
        t = np.linspace(params.t0, params.t0 + 10 * params.period, 1000)
        dynamical = np.asarray(dynamical_phase(params, state, t))
        residual = np.asarray(total_phase(params, state, t)) - dynamical - np.asarray(geometric_phase(params, state, t))
        worst = max(worst, float(np.max(np.abs(residual) / np.maximum(1.0, np.abs(dynamical)))))
    return CheckResult("phase_decomposition", worst <= 1e-10, worst, 1e-10, "relative to max(1, |dynamical|)")


def check_period_drop(level: str) -> CheckResult:
    state = PhaseState(FOCK_N)
    expected = -state.weight * math.pi
    worst = 0.0
    for params in _all_params():
        for start in params.t0 + np.array([0.0, 0.3, 1.7]) * params.period:
            worst = max(worst, abs(period_phase_drop(params, state, float(start)) - expected))
    return CheckResult("period_phase_drop", worst <= 1e-6, worst, 1e-6, f"expected {expected:.12g}")


def check_step_sharpness(level: str) -> CheckResult:
    params = ModeParams.from_coefficients(10000, 10000)
    state = PhaseState(FOCK_N)
    window = 0.02 * params.period
    drop = -state.weight * math.pi
    nodes = node_times(params, params.t0 + window, params.t0 + 5 * params.period)
    fractions = [
        (total_phase(params, state, node + window) - total_phase(params, state, node - window)) / drop
        for node in nodes
    ]
    worst = float(min(fractions)) if fractions else 0.0
    return CheckResult("step_sharpness", worst >= 0.9, worst, 0.9, f"{len(fractions)} nodes; minimum fraction of the drop")


def check_geometric_rate(level: str) -> CheckResult:
    state = PhaseState(FOCK_N)
    worst = 0.0
    for params in _all_params():
        h = 1e-5 * params.period
        t = np.linspace(params.t0 + 0.01 * params.period, params.t0 + 3 * params.period, 600)
        nodes = node_times(params, params.t0, params.t0 + 4 * params.period)
        if len(nodes):
            distance = np.min(np.abs(t[:, None] - nodes[None, :]), axis=1)
            t = t[distance > 0.05 * params.period]
        finite = (np.asarray(geometric_phase(params, state, t + h)) - np.asarray(geometric_phase(params, state, t - h))) / (2 * h)
        rate = np.asarray(geometric_phase_rate(params, state, t))
        scale = np.maximum(np.abs(rate), state.weight * params.omega)
        worst = max(worst, float(np.max(np.abs(finite - rate) / scale)))
    return CheckResult("geometric_phase_rate", worst <= 1e-4, worst, 1e-4, "node neighbourhoods of 0.05 period excluded")


def check_geometric_rate_minima(level: str) -> CheckResult:
    """Within half a period of each node, the sampled geometric-phase rate is lowest at the node itself."""
    state = PhaseState(FOCK_N)
    samples = 2001 if level == "full" else 401
    worst = 0.0
    for params in _all_params():
        half = params.period / 2
        offsets = np.linspace(-half, half, samples)
        step = offsets[1] - offsets[0]
        for node in node_times(params, params.t0 + half, params.t0 + 3 * params.period):
            rate = np.asarray(geometric_phase_rate(params, state, node + offsets))
            worst = max(worst, abs(float(offsets[int(np.argmin(rate))])) / step)
    return CheckResult("geometric_rate_minima", worst <= 1, worst, 1, f"grid steps between rate minimum and node; {samples} samples per period")


#%%
# Wave-function checks.
def check_orthonormality(level: str) -> CheckResult:
    n_max = 10 if level == "full" else 4
    worst_norm, worst_overlap = 0.0, 0.0
    for params in (ModeParams(), ModeParams.from_coefficients(1.5, 1.5)):
        for t in np.linspace(params.t0, params.t0 + params.period, 5):
            for n in range(n_max + 1):
                for m in range(n, n_max + 1):
                    overlap = abs(inner_product(n, m, params, CONSTS, float(t)))
                    if n == m:
                        worst_norm = max(worst_norm, abs(overlap - 1))
                    else:
                        worst_overlap = max(worst_overlap, overlap)
    worst = max(worst_norm, worst_overlap)
    return CheckResult("orthonormality", worst <= 1e-8, worst, 1e-8, f"n, m <= {n_max}; norm {worst_norm:.3e}, overlap {worst_overlap:.3e}")


def check_superposition(level: str) -> CheckResult:
    spec = SuperpositionSpec(n=5, m=8, beta_n=1 / math.sqrt(2), beta_m=(1 + 1j) / 2)
    states = (PhaseState(spec.n), PhaseState(spec.m))
    samples = 20 if level == "full" else 5
    worst = 0.0
    for params in (ModeParams(), ModeParams.from_coefficients(1.5, 1.5)):
        for t in np.linspace(params.t0, params.t0 + 2 * params.period, samples):
            total, cross = integrate_superposition(spec, params, CONSTS, float(t), states)
            worst = max(worst, abs(total - 1), abs(cross))
    return CheckResult("superposition_integrals", worst <= 1e-8, worst, 1e-8, f"{samples} times per set")


def check_eigenfunction_parity(level: str) -> CheckResult:
    n_max = 30 if level == "full" else 10
    q = np.linspace(0.0, 8.0, 161)
    worst = 0.0
    for params in (ModeParams(), ModeParams.from_coefficients(1.5, 1.0, "-"), ModeParams.from_coefficients(1.5, 1.5)):
        for t in np.linspace(params.t0, params.t0 + params.period, 4):
            for n in range(n_max + 1):
                right = np.asarray(eigenfunction(n, q, params, CONSTS, float(t)))
                left = np.asarray(eigenfunction(n, -q, params, CONSTS, float(t)))
                worst = max(worst, float(np.max(np.abs(left - (-1) ** n * right)) / np.max(np.abs(right))))
    return CheckResult("eigenfunction_parity", worst <= 1e-12, worst, 1e-12, f"n <= {n_max}")


#%%
# Field checks.
def _five_point(func: Callable[[np.ndarray], np.ndarray], at: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order central difference."""
    return (func(at - 2 * h) - 8 * func(at - h) + 8 * func(at + h) - func(at + 2 * h)) / (12 * h)


def check_field_identities(level: str) -> CheckResult:
    worst_e, worst_b = 0.0, 0.0
    for params in _all_params():
        h_t = 1e-3 / params.omega
        h_x = 1e-3 / FIELD.k
        x = np.linspace(0, 2 * math.pi / FIELD.k, 100)
        t = np.linspace(params.t0 + 0.01 * params.period, params.t0 + 2 * params.period, 100)
        nodes = node_times(params, params.t0, params.t0 + 3 * params.period)
        if len(nodes):
            distance = np.min(np.abs(t[:, None] - nodes[None, :]), axis=1)
            t = t[distance > 1e-3 * params.period]
        tt, xx = t[:, None], x[None, :]
        _, amp_e, amp_b, _ = (np.asarray(v) for v in amplitudes(params, CONSTS, FIELD, tt))

        d_dt = _five_point(lambda s: np.asarray(vector_potential(xx, s, params, CONSTS, FIELD)), tt, h_t)
        e = np.asarray(electric_field(xx, tt, params, CONSTS, FIELD))
        worst_e = max(worst_e, float(np.max(np.abs(e + d_dt) / amp_e)))

        d_dx = _five_point(lambda s: np.asarray(vector_potential(s, tt, params, CONSTS, FIELD)), xx, h_x)
        b = np.asarray(magnetic_field(xx, tt, params, CONSTS, FIELD))
        worst_b = max(worst_b, float(np.max(np.abs(b - d_dx) / np.abs(amp_b))))
    worst = max(worst_e, worst_b)
    return CheckResult("field_identities", worst <= 1e-5, worst, 1e-5, f"E=-dA/dt {worst_e:.3e}, B=dA/dx {worst_b:.3e}")


def _rms_by_x(params: ModeParams, x: np.ndarray, samples: int = 2048) -> np.ndarray:
    t = params.t0 + np.linspace(0, 2 * math.pi / params.omega, samples, endpoint=False)
    e = np.asarray(electric_field(x[None, :], t[:, None], params, CONSTS, FIELD))
    return time_rms(e, axis=0)


def check_standing_wave(level: str) -> CheckResult:
    x = np.linspace(0, math.pi, 101)
    contrast = standing_wave_contrast(_rms_by_x(ModeParams.from_coefficients(10000, 10000), x))
    static_rms = _rms_by_x(ModeParams(), x)
    static_spread = float(np.max(static_rms) / np.min(static_rms) - 1)
    passed = contrast <= 0.05 and static_spread <= 1e-6
    return CheckResult("standing_wave_contrast", passed, contrast, 0.05, f"static max/min - 1 = {static_spread:.3e}")


def check_amplitude_anticorrelation(level: str) -> CheckResult:
    worst = 0.0
    for params in (ModeParams.from_coefficients(1.5, 1.0), ModeParams.from_coefficients(1.5, 1.5), ModeParams.from_coefficients(10000, 10000)):
        t = np.linspace(params.t0, params.t0 + 10 * params.period, 20001)
        dt = t[1] - t[0]
        _, amp_e, amp_b, _ = (np.asarray(v) for v in amplitudes(params, CONSTS, FIELD, t))
        half = params.period / 2
        for node in node_times(params, params.t0 + half, params.t0 + 10 * params.period - half):
            window = np.flatnonzero((t >= node - half) & (t < node + half))
            gap = abs(int(np.argmax(amp_e[window])) - int(np.argmin(np.abs(amp_b[window]))))
            worst = max(worst, float(gap))
    return CheckResult("amplitude_anticorrelation", worst <= 1, worst, 1, "grid steps between argmax E-amplitude and argmin |B-amplitude| per period")


def check_interference(level: str) -> CheckResult:
    t = np.linspace(0, 40 * math.pi, 8001)
    static_i, static_ii = ModeParams(omega=1.0), ModeParams(omega=1.5)
    e_total = np.asarray(interference_field(0.0, t, static_i, static_ii, CONSTS, FIELD))
    period = beat_period(t, e_total)
    error = abs(period - 4 * math.pi) / (4 * math.pi) if np.isfinite(period) else float("inf")

    nonstatic_i = ModeParams.from_coefficients(1.5, 1.0, omega=1.0)
    nonstatic_ii = ModeParams.from_coefficients(1.5, 1.0, omega=1.5)
    x = np.array([0.5, 2.0])
    rms = time_rms(np.asarray(interference_field(x[None, :], t[:, None], nonstatic_i, nonstatic_ii, CONSTS, FIELD)), axis=0)
    passed = error <= 0.02 and rms[0] > rms[1]
    return CheckResult("interference_beating", passed, error, 0.02, f"beat period {period:.6f}; RMS(x=0.5)={rms[0]:.4f}, RMS(x=2.0)={rms[1]:.4f}")


def check_spectral_sinusoidality(level: str) -> CheckResult:
    params = ModeParams.from_coefficients(10000, 10000)
    t = params.t0 + np.linspace(0, 8 * 2 * math.pi / params.omega, 4096, endpoint=False)
    concentration = spectral_concentration(electric_field(0.0, t, params, CONSTS, FIELD))
    return CheckResult("spectral_sinusoidality", concentration >= 0.99, concentration, 0.99, "x0 = 0")


def check_coherent_modulus(level: str) -> CheckResult:
    worst = 0.0
    for params in _all_params():
        t = np.linspace(params.t0, params.t0 + 10 * params.period, 2001)
        modulus = np.abs(np.asarray(coherent_eigenvalue(params, FIELD, t)))
        worst = max(worst, float(np.max(np.abs(modulus - FIELD.alpha0))))
    return CheckResult("coherent_modulus", worst <= 1e-12, worst, 1e-12, f"|alpha(t)| against alpha0 = {FIELD.alpha0:g}")


def check_static_travelling_wave(level: str) -> CheckResult:
    """A static mode gives E(x, t) = E(x + omega dt / k, t + dt)."""
    params = ModeParams()
    x = np.linspace(0, 2 * math.pi / FIELD.k, 64)[None, :]
    t = np.linspace(params.t0, params.t0 + 4 * params.period, 64)[:, None]
    worst = 0.0
    for dt in (0.1, 0.7, 2.5, 10.0):
        shifted = electric_field(x + params.omega * dt / FIELD.k, t + dt, params, CONSTS, FIELD)
        worst = max(worst, float(np.max(np.abs(np.asarray(electric_field(x, t, params, CONSTS, FIELD)) - np.asarray(shifted)))))
    return CheckResult("static_travelling_wave", worst <= 1e-12, worst, 1e-12)


def _rectangular_share(params: ModeParams, x: float, samples: int) -> float:
    """Share of one period the E phase factor spends within 0.05 of its plateau magnitude."""
    t = params.t0 + np.linspace(0, params.period, samples, endpoint=False)
    _, factor = field_phase(x, t, params, CONSTS, FIELD)
    magnitude = np.abs(np.asarray(factor))
    return float(np.mean(np.abs(magnitude - np.median(magnitude)) <= 0.05))


def check_phase_factor_rectangularity(level: str) -> CheckResult:
    params = ModeParams.from_coefficients(10000, 10000)
    samples = 20000 if level == "full" else 4000
    positions = (0.3, 1.0, 2.5)
    shares = [_rectangular_share(params, x, samples) for x in positions]
    worst = min(shares)
    detail = ", ".join(f"x={x:g}: {share:.4f}" for x, share in zip(positions, shares))
    return CheckResult("phase_factor_rectangularity", worst >= 0.96, worst, 0.96, detail)


#%%
# Determinism of the scenario runner.
DETERMINISM_SCENARIOS = ("phase-evolution", "field-map", "interference")


def check_determinism(level: str) -> CheckResult:
    """Run each scenario into the same prefix with 1 and 8 threads and compare every output byte."""
    mismatched = []
    with tempfile.TemporaryDirectory() as scratch:
        prefix = Path(scratch) / "run"
        for scenario in DETERMINISM_SCENARIOS:
            config = parse_config("", {
                "scenario": scenario
                , "mode": {"c1": 1.5, "c2": 1.5}
                , "grid": {"t_steps": 400, "x_steps": 21}
                , "output": {"prefix": str(prefix)}
            })
            snapshots = []
            for threads in (1, 8):
                run_scenario(config, threads=threads)
                snapshots.append({path.name: path.read_bytes() for path in sorted(prefix.parent.glob("run_*"))})
            mismatched.extend(f"{scenario}:{name}" for name in snapshots[0] if snapshots[0][name] != snapshots[1].get(name))
    detail = ", ".join(mismatched) or "all outputs identical"
    return CheckResult("determinism", not mismatched, float(len(mismatched)), 0.0, detail)


CHECKS: list[Callable[[str], CheckResult]] = [
    check_measure_df
    , check_f_bounds
    , check_theta_oracle
    , check_theta_periodicity
    , check_phase_decomposition
    , check_period_drop
    , check_step_sharpness
    , check_geometric_rate
    , check_geometric_rate_minima
    , check_orthonormality
    , check_superposition
    , check_eigenfunction_parity
    , check_field_identities
    , check_standing_wave
    , check_amplitude_anticorrelation
    , check_interference
    , check_spectral_sinusoidality
    , check_coherent_modulus
    , check_static_travelling_wave
    , check_phase_factor_rectangularity
    , check_determinism
]


#%%
# Runner.
def run_checks(level: str = "fast") -> dict:
    """
    Purpose:
        Run every check and collect a report. Failures and computation errors are recorded, never raised.
    Args:
        level: 'fast' for reduced grids, 'full' for the complete sweep.
    Returns:
        Report dictionary with the level, overall status and one entry per check.
    """
    if level not in ("fast", "full"):
        raise ValueError(f"level must be 'fast' or 'full', got '{level}'.")

    results = []
    for check in CHECKS:
        started = time.perf_counter()
        try:
            result = check(level)
        except Exception as e:
            result = CheckResult(check.__name__.removeprefix("check_"), False, float("nan"), float("nan"), f"{type(e).__name__}: {e}")
        result.seconds = time.perf_counter() - started
        result.passed = bool(result.passed)
        result.measured = float(result.measured)
        log = logger.info if result.passed else logger.error
        log(f"{'PASS' if result.passed else 'FAIL'} {result.name}: measured {result.measured:.6g} (tolerance {result.tolerance:g}) {result.detail}")
        results.append(result)

    failed = [result.name for result in results if not result.passed]
    logger.info(f"{len(results) - len(failed)}/{len(results)} checks passed at level '{level}'")
    return {
        "level": level
        , "passed": not failed
        , "failed": failed
        , "checks": [asdict(result) for result in results]
    }
