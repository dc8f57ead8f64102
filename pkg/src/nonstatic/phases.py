"""Total, dynamical and geometric phases of Fock states of a nonstatic light wave"""
#%%
# Import modules and libraries needed within code.
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from nonstatic.timebase import ModeParams, check_time, as_output, eval_f, eval_theta


#%%
# Domain types.
@dataclass(frozen=True)
class PhaseState:
    """Fock index and the phase constants at the reference time t0"""
    n: int = 0
    gamma0: float | None = None
    gamma_d0: float = 0.0
    gamma_g0: float = 0.0

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}.")
        if self.gamma0 is None:
            object.__setattr__(self, "gamma0", self.gamma_d0 + self.gamma_g0)
        elif abs(self.gamma0 - (self.gamma_d0 + self.gamma_g0)) > 1e-12 * max(1.0, abs(self.gamma0)):
            raise ValueError(
                f"gamma0 must equal gamma_d0 + gamma_g0, got {self.gamma0} != {self.gamma_d0} + {self.gamma_g0}."
            )

    @property
    def weight(self) -> float:
        """n + 1/2"""
        return self.n + 0.5


#%%
# Phase formulas.
def total_phase(params: ModeParams, state: PhaseState, t: ArrayLike):
    """
    Purpose:
        gamma_n(t) = -(n + 1/2) * omega * T(t) + gamma_n(t0).
    Raises:
        TimeBeforeReference: If t < t0.
    """
    theta = np.asarray(eval_theta(params, t))
    return as_output(-state.weight * theta + state.gamma0)


def dynamical_phase(params: ModeParams, state: PhaseState, t: ArrayLike):
    """
    Purpose:
        gamma_D,n(t) = -(1/2)(n + 1/2)(c1 + c2) * omega * (t - t0) + gamma_D,n(t0). Linear in t.
    Raises:
        TimeBeforeReference: If t < t0.
    """
    elapsed = check_time(params, t) - params.t0
    slope = -0.5 * state.weight * (params.c1 + params.c2) * params.omega
    return as_output(slope * elapsed + state.gamma_d0)


def geometric_phase(params: ModeParams, state: PhaseState, t: ArrayLike):
    """
    Purpose:
        gamma_G,n(t) = (1/2)(n + 1/2){(c1 + c2) * omega * (t - t0) - 2 * omega * T(t)} + gamma_G,n(t0).
    Raises:
        TimeBeforeReference: If t < t0.
    """
    elapsed = check_time(params, t) - params.t0
    theta = np.asarray(eval_theta(params, t))
    linear = (params.c1 + params.c2) * params.omega * elapsed
    return as_output(0.5 * state.weight * (linear - 2 * theta) + state.gamma_g0)


def geometric_phase_rate(params: ModeParams, state: PhaseState, t: ArrayLike):
    """
    Purpose:
        Analytic derivative (1/2)(n + 1/2) * omega * [(c1 + c2) - 2/f(t)] of the geometric phase.
    Raises:
        TimeBeforeReference: If t < t0.
    """
    t_arr = check_time(params, t)
    f = np.asarray(eval_f(params, t_arr))
    return as_output(0.5 * state.weight * params.omega * ((params.c1 + params.c2) - 2 / f))


def period_phase_drop(params: ModeParams, state: PhaseState, t: float | None = None) -> float:
    """
    Purpose:
        Change of the total phase over one period pi/omega starting at t (default t0).
    Returns:
        gamma_n(t + pi/omega) - gamma_n(t), which is -(n + 1/2)*pi.
    """
    start = params.t0 if t is None else t
    return float(total_phase(params, state, start + params.period) - total_phase(params, state, start))
