"""Fock-state eigenfunctions, wave functions and superposition densities in quadrature space"""
#%%
# Import modules and libraries needed within code.
from dataclasses import dataclass
import math

import numpy as np
from numpy.typing import ArrayLike

from analysis.quadrature import gauss_legendre
from nonstatic.errors import ConstantsError, IndexTooLarge, WeightNormalizationViolated
from nonstatic.phases import PhaseState, total_phase
from nonstatic.timebase import ModeParams, as_output, check_time, eval_f, eval_fdot_z


#%%
#
N_MAX = 50
SCALED_RECURRENCE_FROM = 25  # Index from which normalisation is folded into the recurrence.
WEIGHT_TOL = 1e-12


#%%
# Domain types.
@dataclass(frozen=True)
class QuantumConstants:
    """Action constant hbar and medium permittivity constant epsilon"""
    hbar: float = 1.0
    epsilon: float = 1.0

    def __post_init__(self) -> None:
        if not (self.hbar > 0 and self.epsilon > 0):
            raise ConstantsError(f"hbar and epsilon must be > 0, got hbar={self.hbar}, epsilon={self.epsilon}.")


@dataclass(frozen=True)
class WidthParams:
    """Gaussian width zeta(t) and its complex counterpart zeta'(t)"""
    zeta: np.ndarray | float
    zeta_prime: np.ndarray | complex


@dataclass(frozen=True)
class SuperpositionSpec:
    """Two-state superposition beta_n|psi_n> + beta_m|psi_m>"""
    n: int
    m: int
    beta_n: complex
    beta_m: complex

    def __post_init__(self) -> None:
        for name in ("n", "m"):
            check_index(getattr(self, name))
        if self.n == self.m:
            raise ValueError(f"m must differ from n, got n = m = {self.n}.")
        weight = abs(self.beta_n) ** 2 + abs(self.beta_m) ** 2
        if abs(weight - 1) > WEIGHT_TOL:
            raise WeightNormalizationViolated(f"|beta_n|^2 + |beta_m|^2 must be 1, got {weight!r}.")


#%%
# Internal helpers.
def check_index(n: int) -> None:
    """Reject Fock indices the eigenfunctions cannot be evaluated for."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise ValueError(f"Fock index must be a non-negative integer, got {n!r}.")
    if n > N_MAX:
        raise IndexTooLarge(f"Fock index {n} exceeds n_max = {N_MAX}.")


def _normalized_hermite(n: int, x: np.ndarray) -> np.ndarray:
    """(2^n n!)^(-1/2) H_n(x)"""
    if n < SCALED_RECURRENCE_FROM:
        return hermite(n, x) / math.sqrt(2.0 ** n * math.factorial(n))
    previous = np.ones_like(x)
    current = math.sqrt(2.0) * x
    for k in range(1, n):
        previous, current = current, math.sqrt(2.0 / (k + 1)) * x * current - math.sqrt(k / (k + 1)) * previous
    return current


#%%
# Width parameters and Hermite polynomials.
def width_params(params: ModeParams, consts: QuantumConstants, t: ArrayLike) -> WidthParams:
    """
    Purpose:
        zeta = eps*omega/(hbar*f) and zeta' = zeta - i*eps*fdot/(2*hbar*f).
    Raises:
        TimeBeforeReference: If t < t0.
    """
    t_arr = check_time(params, t)
    f = np.asarray(eval_f(params, t_arr))
    fdot, _ = eval_fdot_z(params, t_arr)
    zeta = consts.epsilon * params.omega / (consts.hbar * f)
    zeta_prime = zeta - 1j * consts.epsilon * np.asarray(fdot) / (2 * consts.hbar * f)
    return WidthParams(zeta=as_output(zeta), zeta_prime=as_output(zeta_prime))


def hermite(n: int, x: ArrayLike):
    """
    Purpose:
        Physicists' Hermite polynomial by the recurrence H_{k+1} = 2x H_k - 2k H_{k-1}.
    Raises:
        IndexTooLarge: If n > 50.
    """
    check_index(n)
    x_arr = np.asarray(x, dtype=float)
    previous = np.ones_like(x_arr)
    if n == 0:
        return as_output(previous)
    current = 2.0 * x_arr
    for k in range(1, n):
        previous, current = current, 2.0 * x_arr * current - 2.0 * k * previous
    return as_output(current)


#%%
# Wave functions.
def eigenfunction(n: int, q: ArrayLike, params: ModeParams, consts: QuantumConstants, t: ArrayLike):
    """
    Purpose:
        (zeta/pi)^(1/4) (2^n n!)^(-1/2) H_n(sqrt(zeta) q) exp(-zeta' q^2 / 2).
        q and t broadcast against each other.
    Raises:
        IndexTooLarge: If n > 50.
        TimeBeforeReference: If t < t0.
    """
    check_index(n)
    widths = width_params(params, consts, t)
    zeta = np.asarray(widths.zeta)
    zeta_prime = np.asarray(widths.zeta_prime)
    q_arr = np.asarray(q, dtype=float)
    scaled = np.sqrt(zeta) * q_arr
    envelope = np.exp(-0.5 * zeta_prime * q_arr ** 2)
    return as_output((zeta / math.pi) ** 0.25 * _normalized_hermite(n, scaled) * envelope)


def wavefunction(n: int, q: ArrayLike, params: ModeParams, consts: QuantumConstants, state: PhaseState, t: ArrayLike):
    """
    Purpose:
        Fock wave function eigenfunction * exp(i * gamma_n(t)).
    Raises:
        ValueError: If state.n differs from n.
    """
    if state.n != n:
        raise ValueError(f"PhaseState index {state.n} does not match n={n}.")
    phase = np.asarray(total_phase(params, state, t))
    return as_output(np.asarray(eigenfunction(n, q, params, consts, t)) * np.exp(1j * phase))


def probability_density(n: int, q: ArrayLike, params: ModeParams, consts: QuantumConstants, t: ArrayLike):
    """|psi_n(q, t)|^2; independent of the phase constants."""
    return as_output(np.abs(np.asarray(eigenfunction(n, q, params, consts, t))) ** 2)


def superposition_density(spec: SuperpositionSpec
                          , q: ArrayLike
                          , params: ModeParams
                          , consts: QuantumConstants
                          , states: tuple[PhaseState, PhaseState] | None
                          , t: ArrayLike
                          ):
    """
    Purpose:
        Probability density of beta_n psi_n + beta_m psi_m and its interference term.
    Args:
        spec: Indices and weights.
        q: Quadrature coordinate(s).
        params, consts: Mode parameters and constants.
        states: Phase constants for (n, m); zero offsets when None.
        t: Time(s), broadcast against q.
    Returns:
        Tuple (total, cross) with cross = 2 Re[beta_n* beta_m psi_n* psi_m].
    """
    state_n, state_m = states or (PhaseState(spec.n), PhaseState(spec.m))
    psi_n = spec.beta_n * np.asarray(wavefunction(spec.n, q, params, consts, state_n, t))
    psi_m = spec.beta_m * np.asarray(wavefunction(spec.m, q, params, consts, state_m, t))
    cross = 2.0 * np.real(np.conj(psi_n) * psi_m)
    total = np.abs(psi_n) ** 2 + np.abs(psi_m) ** 2 + cross
    return as_output(total), as_output(cross)


#%%
# Quadrature-space integrals.
def quadrature_half_width(n: int, zeta: float) -> float:
    """L = 6 sqrt((2n+1)/zeta) + 2/sqrt(zeta): classically allowed region plus tails."""
    return 6 * math.sqrt((2 * n + 1) / zeta) + 2 / math.sqrt(zeta)


def quadrature_panels(n: int) -> int:
    """Gauss-Legendre panel count; grows with n so each panel spans a few oscillations of H_n."""
    return 64 + 4 * n


def inner_product(n: int
                  , m: int
                  , params: ModeParams
                  , consts: QuantumConstants
                  , t: float
                  , states: tuple[PhaseState, PhaseState] | None = None
                  ) -> complex:
    """
    Purpose:
        <psi_n|psi_m> at time t by composite Gauss-Legendre quadrature on [-L, L].
        Without states the bare eigenfunctions are used.
    Returns:
        Complex overlap.
    """
    zeta = float(width_params(params, consts, t).zeta)
    half_width = quadrature_half_width(max(n, m), zeta)

    def integrand(q: np.ndarray) -> np.ndarray:
        if states is None:
            left = eigenfunction(n, q, params, consts, t)
            right = eigenfunction(m, q, params, consts, t)
        else:
            left = wavefunction(n, q, params, consts, states[0], t)
            right = wavefunction(m, q, params, consts, states[1], t)
        return np.conj(left) * right

    return complex(gauss_legendre(integrand, -half_width, half_width, panels=quadrature_panels(max(n, m))))


def density_moments(n: int, params: ModeParams, consts: QuantumConstants, t: float) -> tuple[float, float]:
    """
    Purpose:
        Mean and variance of q under |phi_n(q, t)|^2.
    Returns:
        (mean, variance); for n = 0 the variance is hbar f/(2 eps omega).
    """
    zeta = float(width_params(params, consts, t).zeta)
    half_width = quadrature_half_width(n, zeta)
    panels = quadrature_panels(n)
    density = lambda q: probability_density(n, q, params, consts, t)
    mass = gauss_legendre(density, -half_width, half_width, panels=panels)
    mean = gauss_legendre(lambda q: q * density(q), -half_width, half_width, panels=panels) / mass
    second = gauss_legendre(lambda q: (q - mean) ** 2 * density(q), -half_width, half_width, panels=panels) / mass
    return float(mean), float(second)


def integrate_superposition(spec: SuperpositionSpec
                            , params: ModeParams
                            , consts: QuantumConstants
                            , t: float
                            , states: tuple[PhaseState, PhaseState] | None = None
                            ) -> tuple[float, float]:
    """
    Purpose:
        Integrals over q of the superposition density and of its cross term.
    Returns:
        (integral of total, integral of cross); ideally (1, 0).
    """
    zeta = float(width_params(params, consts, t).zeta)
    half_width = quadrature_half_width(max(spec.n, spec.m), zeta)
    panels = quadrature_panels(max(spec.n, spec.m))
    total = gauss_legendre(lambda q: superposition_density(spec, q, params, consts, states, t)[0], -half_width, half_width, panels=panels)
    cross = gauss_legendre(lambda q: superposition_density(spec, q, params, consts, states, t)[1], -half_width, half_width, panels=panels)
    return float(total), float(cross)
