"""Mode parameters and the time functions f(t), T(t), Theta(t) of a nonstatic light wave"""
#%%
# Import modules and libraries needed within code.
from dataclasses import dataclass
import math
from typing import Literal

from loguru import logger
import numpy as np
from numpy.typing import ArrayLike

from analysis.quadrature import adaptive_simpson
from nonstatic.errors import (
    CoefficientConstraintViolated
    , NonPositiveFrequency
    , PhiOutOfRange
    , TimeBeforeReference
)


#%%
# Tolerances for the coefficient constraint c1*c2 - c3**2 = 1.
CONSTRAINT_ATOL = 1e-7
CONSTRAINT_ULPS = 16  # Rounding allowance in units of eps * c1*c2.
STATIC_RADIUS = 1e-12  # Below this oscillation radius f is treated as constant.


#%%
# Domain types.
@dataclass(frozen=True)
class ModeParams:
    """Nonstatic-mode parameter set governing f(t) and every phase"""
    omega: float = 1.0
    c1: float = 1.0
    c2: float = 1.0
    c3: float = 0.0
    t0: float = 0.0
    phi: float = 0.0

    @classmethod
    def from_coefficients(cls
                          , c1: float
                          , c2: float
                          , sign: Literal["+", "-"] = "+"
                          , omega: float = 1.0
                          , t0: float = 0.0
                          , phi: float = 0.0
                          ) -> "ModeParams":
        """
        Purpose:
            Build validated parameters with c3 resolved from c1*c2 - c3**2 = 1.
        Args:
            c1, c2: Nonstaticity coefficients.
            sign: Branch of c3, '+' by default.
            omega, t0, phi: Frequency, reference time and initial angle.
        Returns:
            Validated ModeParams.
        """
        c3 = resolve_c3(c1, c2, sign)
        return validate(cls(omega=omega, c1=c1, c2=c2, c3=c3, t0=t0, phi=phi))

    @property
    def period(self) -> float:
        """Period pi/omega of f(t)"""
        return math.pi / self.omega

    @property
    def is_static(self) -> bool:
        return _oscillation_radius(self) < STATIC_RADIUS


@dataclass(frozen=True)
class TimeSample:
    """Time functions evaluated on a grid"""
    t: np.ndarray
    f: np.ndarray
    fdot: np.ndarray
    z: np.ndarray
    theta: np.ndarray
    big_t: np.ndarray


#%%
# Parameter validation.
def validate(params: ModeParams) -> ModeParams:
    """
    Purpose:
        Check every ModeParams invariant.
    Args:
        params: Candidate mode parameters.
    Returns:
        The same params, unchanged.
    Raises:
        NonPositiveFrequency: If omega <= 0.
        CoefficientConstraintViolated: If c1 <= 0, c2 <= 0, c1*c2 < 1 or c1*c2 - c3**2 != 1.
        PhiOutOfRange: If phi is outside [-pi/2, pi/2).
    """
    if not params.omega > 0:
        raise NonPositiveFrequency(f"omega must be > 0, got {params.omega}.")

    if not (params.c1 > 0 and params.c2 > 0):
        raise CoefficientConstraintViolated(f"c1 and c2 must be > 0, got c1={params.c1}, c2={params.c2}.")

    product = params.c1 * params.c2
    tolerance = max(CONSTRAINT_ATOL, CONSTRAINT_ULPS * np.finfo(float).eps * product)
    if product < 1 - tolerance:
        raise CoefficientConstraintViolated(f"c1*c2 must be >= 1, got {product}.")

    residual = product - params.c3 ** 2 - 1
    if abs(residual) > tolerance:
        raise CoefficientConstraintViolated(
            f"c1*c2 - c3**2 must equal 1, got residual {residual:.3e} (tolerance {tolerance:.1e})."
        )

    if not (-math.pi / 2 <= params.phi < math.pi / 2):
        raise PhiOutOfRange(f"phi must lie in [-pi/2, pi/2), got {params.phi}.")

    return params


def resolve_c3(c1: float, c2: float, sign: Literal["+", "-"] = "+") -> float:
    """
    Purpose:
        Solve c1*c2 - c3**2 = 1 for c3 on the requested branch.
    Returns:
        sign * sqrt(c1*c2 - 1).
    Raises:
        CoefficientConstraintViolated: If c1 or c2 is not positive or c1*c2 < 1.
        ValueError: If sign is not '+' or '-'.
    """
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}.")
    if not (c1 > 0 and c2 > 0):
        raise CoefficientConstraintViolated(f"c1 and c2 must be > 0, got c1={c1}, c2={c2}.")
    product = c1 * c2
    if product < 1:
        raise CoefficientConstraintViolated(f"c1*c2 must be >= 1, got {product}.")
    root = math.sqrt(product - 1)
    return root if sign == "+" else -root


def measure_DF(c1: float, c2: float) -> float:
    """
    Purpose:
        Measure of nonstaticity sqrt((c1+c2)^2 - 4) / (2*sqrt(2)).
    Raises:
        CoefficientConstraintViolated: If (c1 + c2)^2 < 4.
    """
    total = c1 + c2
    if total < 2:
        raise CoefficientConstraintViolated(f"c1 + c2 must be >= 2, got {total}.")
    return math.sqrt(total ** 2 - 4) / (2 * math.sqrt(2))


#%%
# Internal helpers.
def check_time(params: ModeParams, t: ArrayLike) -> np.ndarray:
    """Convert t to a float array and reject times before t0."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < params.t0):
        raise TimeBeforeReference(f"t must be >= t0={params.t0}, got min t={float(np.min(t_arr))}.")
    return t_arr


def as_output(value: np.ndarray):
    """Return a Python scalar for 0-d results."""
    return value.item() if np.ndim(value) == 0 else value


def _angle(params: ModeParams, t: np.ndarray) -> np.ndarray:
    """phi~(t) = omega*(t - t0) + phi"""
    return params.omega * (t - params.t0) + params.phi


def _effective_c2(params: ModeParams) -> float:
    # c2 consistent with (c1, c3) on the constraint surface.
    return (1 + params.c3 ** 2) / params.c1


def _oscillation_radius(params: ModeParams) -> float:
    half_diff = (_effective_c2(params) - params.c1) / 2
    return math.hypot(half_diff, params.c3)


def _quadrature_pair(params: ModeParams, angle: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """X = cos(angle), Y = c1*sin(angle) + c3*cos(angle); f = (X^2 + Y^2)/c1 and Theta = atan2(Y, X)."""
    cos_a = np.cos(angle)
    return cos_a, params.c1 * np.sin(angle) + params.c3 * cos_a


#%%
# Time functions.
def eval_f(params: ModeParams, t: ArrayLike):
    """
    Purpose:
        Evaluate f(t) = c1 sin^2 phi~ + c2 cos^2 phi~ + c3 sin 2phi~.
        The sum-of-squares form ((c1 sin + c3 cos)^2 + cos^2)/c1 is used; it equals the
        defining expression on the constraint surface and keeps full relative precision at the nodes.
    Returns:
        f(t), strictly positive.
    """
    angle = _angle(params, np.asarray(t, dtype=float))
    x, y = _quadrature_pair(params, angle)
    return as_output((x * x + y * y) / params.c1)


def eval_fdot_z(params: ModeParams, t: ArrayLike):
    """
    Purpose:
        Evaluate the derivative of f and z = fdot/(2*omega).
    Returns:
        Tuple (fdot, z).
    """
    angle = _angle(params, np.asarray(t, dtype=float))
    x, y = _quadrature_pair(params, angle)
    dy = params.c1 * np.cos(angle) - params.c3 * np.sin(angle)
    fdot = 2 * params.omega * (y * dy - x * np.sin(angle)) / params.c1
    return as_output(fdot), as_output(fdot / (2 * params.omega))


def step_count(params: ModeParams, t: ArrayLike):
    """
    Purpose:
        Count the singular times t_m = t0 + ((2m+1)pi/2 - phi)/omega with t_m <= t.
    Returns:
        Non-negative integer (or integer array), right-continuous at each t_m.
    Raises:
        TimeBeforeReference: If t < t0.
    """
    t_arr = check_time(params, t)
    count = np.floor(_angle(params, t_arr) / math.pi + 0.5)
    return as_output(np.maximum(count, 0).astype(np.int64))


def eval_theta(params: ModeParams, t: ArrayLike):
    """
    Purpose:
        Closed-form phase integral Theta(t) = atan Z(t) - atan Z(t0) + pi * step_count(t),
        with Z = c3 + c1 tan phi~. The angle is reduced into the principal cycle before the
        arctangent so the value is continuous through the singular times.
    Returns:
        Theta(t) in rad, continuous and non-decreasing, Theta(t0) = 0.
    Raises:
        TimeBeforeReference: If t < t0.
    """
    t_arr = check_time(params, t)
    angle = _angle(params, t_arr)
    steps = np.maximum(np.floor(angle / math.pi + 0.5), 0)
    x, y = _quadrature_pair(params, angle - steps * math.pi)
    x0, y0 = _quadrature_pair(params, np.asarray(params.phi))
    theta = np.arctan2(y, x) - np.arctan2(y0, x0) + steps * math.pi
    return as_output(theta)


def eval_big_t(params: ModeParams, t: ArrayLike):
    """T(t) = Theta(t)/omega"""
    return as_output(np.asarray(eval_theta(params, t)) / params.omega)


def sample(params: ModeParams, t: ArrayLike) -> TimeSample:
    """
    Purpose:
        Evaluate f, fdot, z, Theta and T on a time grid.
    Returns:
        TimeSample with array fields.
    """
    t_arr = np.atleast_1d(check_time(params, t))
    fdot, z = eval_fdot_z(params, t_arr)
    theta = np.asarray(eval_theta(params, t_arr))
    return TimeSample(
        t=t_arr
        , f=np.asarray(eval_f(params, t_arr))
        , fdot=np.asarray(fdot)
        , z=np.asarray(z)
        , theta=theta
        , big_t=theta / params.omega
    )


#%%
# Nodes and extrema of f.
def f_extrema(params: ModeParams) -> tuple[float, float]:
    """
    Purpose:
        Analytic extrema of f.
    Returns:
        (f_min, f_max) with f_min = 1/(M + R), f_max = M + R, M the mean of f and R its oscillation radius.
    """
    mean = (params.c1 + _effective_c2(params)) / 2
    radius = _oscillation_radius(params)
    return 1 / (mean + radius), mean + radius


def node_times(params: ModeParams, t_start: float | None = None, t_end: float | None = None) -> np.ndarray:
    """
    Purpose:
        Times of the minima of f (nodes of the probability density) within [t_start, t_end].
    Args:
        params: Validated mode parameters.
        t_start: Window start, defaults to t0.
        t_end: Window end, defaults to t0 + 10 periods.
    Returns:
        Sorted array of node times; empty for a static mode.
    """
    t_start = params.t0 if t_start is None else t_start
    t_end = params.t0 + 10 * params.period if t_end is None else t_end
    if params.is_static or t_end < t_start:
        return np.empty(0)

    # f = M + R cos(2 phi~ - psi) is minimal at phi~ = (psi + pi)/2 + m*pi.
    psi = math.atan2(params.c3, (_effective_c2(params) - params.c1) / 2)
    base_angle = (psi + math.pi) / 2
    angle_start = params.omega * (t_start - params.t0) + params.phi
    angle_end = params.omega * (t_end - params.t0) + params.phi
    m_first = math.ceil((angle_start - base_angle) / math.pi)
    m_last = math.floor((angle_end - base_angle) / math.pi)
    angles = base_angle + np.arange(m_first, m_last + 1) * math.pi
    nodes = params.t0 + (angles - params.phi) / params.omega
    nodes = nodes[(nodes >= t_start) & (nodes <= t_end)]
    logger.debug(f"{len(nodes)} node times in [{t_start}, {t_end}]")
    return nodes


#%%
# Quadrature oracle for Theta.
def oracle_theta(params: ModeParams, t: float, rel_tol: float = 1e-10, max_depth: int = 60) -> float:
    """
    Purpose:
        Independent check of eval_theta: omega * integral_{t0}^{t} dt'/f(t') by adaptive Simpson quadrature.
    Raises:
        TimeBeforeReference: If t < t0.
        QuadratureNonConvergence: If the subdivision budget is exhausted.
    """
    return float(oracle_theta_grid(params, [t], rel_tol=rel_tol, max_depth=max_depth)[0])


def oracle_theta_grid(params: ModeParams, times: ArrayLike, rel_tol: float = 1e-10, max_depth: int = 60) -> np.ndarray:
    """
    Purpose:
        Cumulative quadrature oracle on a grid. Each gap between successive times is split at
        node times so the sharp peaks of 1/f always sit on a subinterval endpoint.
    Args:
        params: Validated mode parameters.
        times: Grid of times >= t0, any order.
        rel_tol: Relative tolerance per subinterval.
        max_depth: Maximum bisection depth.
    Returns:
        Array of Theta values aligned with times.
    """
    t_arr = np.atleast_1d(check_time(params, times))
    order = np.argsort(t_arr, kind="stable")
    omega, c1, c3, t0, phi = params.omega, params.c1, params.c3, params.t0, params.phi

    def inverse_f(tau: float) -> float:
        angle = omega * (tau - t0) + phi
        x = math.cos(angle)
        y = c1 * math.sin(angle) + c3 * x
        return c1 / (x * x + y * y)

    values = np.empty_like(t_arr)
    running = 0.0
    previous = t0
    for index in order:
        current = float(t_arr[index])
        if current > previous:
            breaks = [previous, *node_times(params, previous, current).tolist(), current]
            for a, b in zip(breaks[:-1], breaks[1:]):
                if b > a:
                    running += adaptive_simpson(inverse_f, a, b, rel_tol=rel_tol, max_depth=max_depth)
            previous = current
        values[index] = omega * running
    return values
