"""Numerical integration: adaptive Simpson oracle and composite Gauss-Legendre rule"""
#%%
# Import modules and libraries needed within code.
from collections.abc import Callable
from functools import lru_cache

from loguru import logger
import numpy as np

from nonstatic.errors import QuadratureNonConvergence


#%%
#
MIN_DEPTH = 4  # Forced bisections before a subinterval may be accepted.


def adaptive_simpson(func: Callable[[float], float]
                     , a: float
                     , b: float
                     , rel_tol: float = 1e-10
                     , max_depth: int = 60
                     ) -> float:
    """
    Purpose:
        Adaptive Simpson integration with interval bisection and Richardson correction.
        The absolute target is rel_tol times the coarse estimate over [a, b]; it is halved
        at every bisection.
    Args:
        func: Scalar integrand.
        a: Lower bound.
        b: Upper bound.
        rel_tol: Relative tolerance.
        max_depth: Maximum bisection depth.
    Returns:
        Integral estimate.
    Raises:
        QuadratureNonConvergence: If a subinterval at max_depth still misses its tolerance.
    """
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_simpson(func, b, a, rel_tol, max_depth)

    def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
        return width / 6.0 * (fa + 4.0 * fm + fb)

    def _refine(lo: float, hi: float, f_lo: float, f_mid: float, f_hi: float, whole: float, tol: float, depth: int) -> float:
        mid = (lo + hi) / 2.0
        left_mid = (lo + mid) / 2.0
        right_mid = (mid + hi) / 2.0
        f_left_mid = func(left_mid)
        f_right_mid = func(right_mid)
        left = _simpson(f_lo, f_left_mid, f_mid, mid - lo)
        right = _simpson(f_mid, f_right_mid, f_hi, hi - mid)
        error = (left + right - whole) / 15.0

        if depth >= MIN_DEPTH and abs(error) <= tol:
            return left + right + error
        if depth >= max_depth:
            logger.debug(f"Simpson budget exhausted on [{lo}, {hi}], error {error:.3e} > {tol:.3e}")
            raise QuadratureNonConvergence(
                f"Tolerance {tol:.3e} not reached on [{lo}, {hi}] within depth {max_depth}."
            )
        return (_refine(lo, mid, f_lo, f_left_mid, f_mid, left, tol / 2.0, depth + 1)
                + _refine(mid, hi, f_mid, f_right_mid, f_hi, right, tol / 2.0, depth + 1))

    fa = func(a)
    fb = func(b)
    fm = func((a + b) / 2.0)
    whole = _simpson(fa, fm, fb, b - a)
    tol = rel_tol * max(abs(whole), np.finfo(float).tiny)
    return _refine(a, b, fa, fm, fb, whole, tol, 0)


#%%
#
@lru_cache(maxsize=16)
def _legendre_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def gauss_legendre(func: Callable[[np.ndarray], np.ndarray]
                   , a: float
                   , b: float
                   , panels: int = 64
                   , order: int = 24
                   ) -> complex | float:
    """
    Purpose:
        Composite Gauss-Legendre rule over [a, b] for a vectorised integrand.
    Args:
        func: Integrand accepting an array of abscissae; may return complex values.
        a, b: Integration bounds.
        panels: Number of equal panels.
        order: Nodes per panel.
    Returns:
        Integral estimate (complex when the integrand is complex).
    """
    nodes, weights = _legendre_nodes(order)
    edges = np.linspace(a, b, panels + 1)
    half_widths = np.diff(edges)[:, None] / 2.0
    centres = (edges[:-1] + edges[1:])[:, None] / 2.0
    abscissae = centres + half_widths * nodes[None, :]
    values = np.asarray(func(abscissae.ravel())).reshape(abscissae.shape)
    total = np.sum(values * weights[None, :] * half_widths)
    return total.item()
