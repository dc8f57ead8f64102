"""Coherent eigenvalue, vector potential and electromagnetic fields of a single nonstatic mode"""
#%%
# Import modules and libraries needed within code.
from dataclasses import dataclass, replace
import math

import numpy as np
from numpy.typing import ArrayLike

from nonstatic.errors import FieldParamsError, UndefinedAngle
from nonstatic.timebase import ModeParams, as_output, check_time, eval_f, eval_fdot_z, eval_theta, validate
from nonstatic.wavefunctions import QuantumConstants


#%%
# Domain types.
@dataclass(frozen=True)
class FieldParams:
    """Coherent-field constants: phase theta, amplitude alpha0, wavenumber k, volume V"""
    theta: float = 0.0
    alpha0: float = 1.0
    k: float = 1.0
    volume: float = 1.0

    def __post_init__(self) -> None:
        if self.alpha0 < 0:
            raise FieldParamsError(f"alpha0 must be >= 0, got {self.alpha0}.")
        if not self.k > 0:
            raise FieldParamsError(f"k must be > 0, got {self.k}.")
        if not self.volume > 0:
            raise FieldParamsError(f"volume must be > 0, got {self.volume}.")


@dataclass(frozen=True)
class FieldSample:
    """Amplitudes, phase shift and field values on an (x, t) grid"""
    big_a: np.ndarray
    amp_e: np.ndarray
    amp_b: np.ndarray
    delta: np.ndarray
    a: np.ndarray
    e: np.ndarray
    b: np.ndarray


#%%
# Angle helper.
def atan_xy(x: ArrayLike, y: ArrayLike):
    """
    Purpose:
        Angle mu in [0, 2pi) with cos(mu) proportional to x and sin(mu) to y.
    Raises:
        UndefinedAngle: If (x, y) = (0, 0).
    """
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    if np.any((x_arr == 0) & (y_arr == 0)):
        raise UndefinedAngle("atan_xy is undefined at (0, 0).")
    angle = np.mod(np.arctan2(y_arr, x_arr), 2 * math.pi)
    # mod can round a tiny negative angle up to exactly 2pi.
    angle = np.where(angle >= 2 * math.pi, 0.0, angle)
    return as_output(angle)


#%%
# Coherent state and amplitudes.
def coherent_eigenvalue(params: ModeParams, fp: FieldParams, t: ArrayLike):
    """
    Purpose:
        alpha(t) = alpha0 exp(-i[omega T(t) + theta]).
    Raises:
        TimeBeforeReference: If t < t0.
    """
    theta = np.asarray(eval_theta(params, t))
    return as_output(fp.alpha0 * np.exp(-1j * (theta + fp.theta)))


def amplitudes(params: ModeParams, consts: QuantumConstants, fp: FieldParams, t: ArrayLike):
    """
    Purpose:
        Time-dependent amplitudes of A, E and B and the phase shift delta of E.
    Returns:
        Tuple (big_a, amp_e, amp_b, delta):
        big_a = sqrt(2 hbar f/(eps V omega)) alpha0, amp_e = omega sqrt(1+z^2) big_a/f,
        amp_b = -big_a k, delta = atan_xy(-z, 1).
    Raises:
        TimeBeforeReference: If t < t0.
    """
    t_arr = check_time(params, t)
    f = np.asarray(eval_f(params, t_arr))
    _, z = eval_fdot_z(params, t_arr)
    z = np.asarray(z)
    big_a = np.sqrt(2 * consts.hbar * f / (consts.epsilon * fp.volume * params.omega)) * fp.alpha0
    amp_e = params.omega * np.sqrt(1 + z ** 2) * big_a / f
    amp_b = -big_a * fp.k
    delta = np.asarray(atan_xy(-z, np.ones_like(z)))
    return as_output(big_a), as_output(amp_e), as_output(amp_b), as_output(delta)


def _carrier(x: ArrayLike, t: ArrayLike, params: ModeParams, fp: FieldParams) -> np.ndarray:
    """k x - Theta(t) - theta"""
    return fp.k * np.asarray(x, dtype=float) - np.asarray(eval_theta(params, t)) - fp.theta


#%%
# Fields.
def vector_potential(x: ArrayLike, t: ArrayLike, params: ModeParams, consts: QuantumConstants, fp: FieldParams):
    """
    Purpose:
        A(x, t) = big_a(t) cos(k x - Theta(t) - theta). x and t broadcast.
    Raises:
        TimeBeforeReference: If t < t0.
    """
    big_a, _, _, _ = amplitudes(params, consts, fp, t)
    return as_output(np.asarray(big_a) * np.cos(_carrier(x, t, params, fp)))


def field_phase(x: ArrayLike, t: ArrayLike, params: ModeParams, consts: QuantumConstants, fp: FieldParams):
    """
    Purpose:
        Phase k x - Theta(t) - theta + delta(t) of the E field and its phase factor.
    Returns:
        Tuple (phase, cos(phase)).
    """
    _, _, _, delta = amplitudes(params, consts, fp, t)
    phase = _carrier(x, t, params, fp) + np.asarray(delta)
    return as_output(phase), as_output(np.cos(phase))


def electric_field(x: ArrayLike, t: ArrayLike, params: ModeParams, consts: QuantumConstants, fp: FieldParams):
    """
    Purpose:
        E(x, t) = amp_e(t) cos(k x - Theta(t) - theta + delta(t)), equal to -dA/dt.
    Raises:
        TimeBeforeReference: If t < t0.
    """
    _, amp_e, _, delta = amplitudes(params, consts, fp, t)
    return as_output(np.asarray(amp_e) * np.cos(_carrier(x, t, params, fp) + np.asarray(delta)))


def magnetic_field(x: ArrayLike, t: ArrayLike, params: ModeParams, consts: QuantumConstants, fp: FieldParams):
    """
    Purpose:
        B(x, t) = amp_b(t) sin(k x - Theta(t) - theta), equal to dA/dx.
    Raises:
        TimeBeforeReference: If t < t0.
    """
    _, _, amp_b, _ = amplitudes(params, consts, fp, t)
    return as_output(np.asarray(amp_b) * np.sin(_carrier(x, t, params, fp)))


def field_sample(x: ArrayLike, t: ArrayLike, params: ModeParams, consts: QuantumConstants, fp: FieldParams) -> FieldSample:
    """
    Purpose:
        Evaluate amplitudes and A, E, B together on broadcast (x, t).
    Returns:
        FieldSample.
    """
    big_a, amp_e, amp_b, delta = (np.asarray(v) for v in amplitudes(params, consts, fp, t))
    carrier = _carrier(x, t, params, fp)
    return FieldSample(
        big_a=big_a
        , amp_e=amp_e
        , amp_b=amp_b
        , delta=delta
        , a=big_a * np.cos(carrier)
        , e=amp_e * np.cos(carrier + delta)
        , b=amp_b * np.sin(carrier)
    )


#%%
# Two-frequency interference.
def with_frequency(params: ModeParams, omega: float) -> ModeParams:
    """Copy of params with a different angular frequency."""
    return validate(replace(params, omega=omega))


def _check_interference_pair(params_i: ModeParams, params_ii: ModeParams) -> None:
    mismatched = [
        name for name in ("c1", "c2", "t0", "phi")
        if getattr(params_i, name) != getattr(params_ii, name)
    ]
    if abs(params_i.c3) != abs(params_ii.c3):
        mismatched.append("c3")
    if mismatched:
        raise ValueError(f"Interfering modes may differ only in omega (and c3 sign); mismatched: {', '.join(mismatched)}.")


def interference_field(x: ArrayLike
                       , t: ArrayLike
                       , params_i: ModeParams
                       , params_ii: ModeParams
                       , consts: QuantumConstants
                       , fp: FieldParams
                       ):
    """
    Purpose:
        Resultant electric field E_I(x, t) + E_II(x, t) of two modes differing in frequency.
    Raises:
        ValueError: If the modes differ in anything but omega and the sign of c3.
        TimeBeforeReference: If t < t0.
    """
    _check_interference_pair(params_i, params_ii)
    e_i = np.asarray(electric_field(x, t, params_i, consts, fp))
    e_ii = np.asarray(electric_field(x, t, params_ii, consts, fp))
    return as_output(e_i + e_ii)


def interference_magnetic_field(x: ArrayLike
                                , t: ArrayLike
                                , params_i: ModeParams
                                , params_ii: ModeParams
                                , consts: QuantumConstants
                                , fp: FieldParams
                                ):
    """B_I(x, t) + B_II(x, t) for the same mode pair as interference_field."""
    _check_interference_pair(params_i, params_ii)
    b_i = np.asarray(magnetic_field(x, t, params_i, consts, fp))
    b_ii = np.asarray(magnetic_field(x, t, params_ii, consts, fp))
    return as_output(b_i + b_ii)
