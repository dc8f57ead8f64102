import math

import numpy as np
import pytest

from nonstatic.errors import (
    CoefficientConstraintViolated
    , NonPositiveFrequency
    , PhiOutOfRange
    , QuadratureNonConvergence
    , TimeBeforeReference
)
from nonstatic.timebase import (
    ModeParams
    , eval_big_t
    , eval_f
    , eval_fdot_z
    , eval_theta
    , f_extrema
    , measure_DF
    , node_times
    , oracle_theta
    , oracle_theta_grid
    , resolve_c3
    , sample
    , step_count
    , validate
)

C3_MILD = 1.118034


def _mild() -> ModeParams:
    return ModeParams.from_coefficients(1.5, 1.5)


def test_validate_accepts_static_and_rounded_c3() -> None:
    assert validate(ModeParams()) == ModeParams()
    assert validate(ModeParams(c1=1.5, c2=1.5, c3=C3_MILD)).c3 == C3_MILD


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"c3": 0.5}, CoefficientConstraintViolated)
        , ({"c1": 1.0, "c2": 0.5}, CoefficientConstraintViolated)
        , ({"c1": -1.0, "c2": -1.0}, CoefficientConstraintViolated)
        , ({"omega": 0.0}, NonPositiveFrequency)
        , ({"phi": math.pi / 2}, PhiOutOfRange)
    ],
)
def test_validate_rejects(kwargs: dict, error: type) -> None:
    with pytest.raises(error):
        validate(ModeParams(**kwargs))


@pytest.mark.parametrize("c3", [1e4, math.sqrt(1e8 - 5), math.sqrt(1e8 - 1) + 1e-3])
def test_validate_tolerance_follows_rounding_at_large_coefficients(c3: float) -> None:
    assert validate(ModeParams(c1=1e4, c2=1e4, c3=math.sqrt(1e8 - 1))).c3 == math.sqrt(1e8 - 1)
    with pytest.raises(CoefficientConstraintViolated):
        validate(ModeParams(c1=1e4, c2=1e4, c3=c3))


def test_resolve_c3_branches() -> None:
    assert resolve_c3(1, 1) == 0
    assert resolve_c3(1.5, 1.5) == pytest.approx(C3_MILD, abs=1e-6)
    assert resolve_c3(1.5, 1.5, "-") == pytest.approx(-C3_MILD, abs=1e-6)
    assert resolve_c3(10000, 10000) == pytest.approx(9999.99995, abs=1e-5)
    with pytest.raises(CoefficientConstraintViolated):
        resolve_c3(1.0, 0.5)


def test_measure_df_caption_values() -> None:
    assert measure_DF(1, 1) == 0
    assert measure_DF(10000, 10000) == pytest.approx(7071.07, abs=0.01)
    assert measure_DF(1.5, 1.5) == pytest.approx(0.790569, abs=1e-6)


def test_eval_f_values() -> None:
    assert eval_f(ModeParams(), 3.7) == pytest.approx(1.0, abs=1e-15)
    assert eval_f(_mild(), math.pi / 4) == pytest.approx(2.618034, abs=1e-6)


def test_eval_f_minimum_matches_analytic_bound() -> None:
    params = _mild()
    f = np.asarray(eval_f(params, np.linspace(0, math.pi, 200001)))
    f_min, f_max = f_extrema(params)
    assert f_min == pytest.approx(0.381966, abs=1e-6)
    assert f_max == pytest.approx(2.618034, abs=1e-6)
    assert np.min(f) >= f_min - 1e-12
    assert np.min(f) == pytest.approx(f_min, abs=1e-9)


def test_eval_f_stays_positive_at_extreme_nodes() -> None:
    params = ModeParams.from_coefficients(10000, 10000)
    nodes = node_times(params)
    f_min, _ = f_extrema(params)
    assert len(nodes) == 10
    np.testing.assert_allclose(eval_f(params, nodes), f_min, rtol=1e-6)


def test_fdot_and_z() -> None:
    assert eval_fdot_z(ModeParams(), 1.3) == pytest.approx((0.0, 0.0), abs=1e-15)
    fdot, z = eval_fdot_z(_mild(), 0.0)
    assert fdot == pytest.approx(2.236068, abs=1e-6)
    assert z == pytest.approx(C3_MILD, abs=1e-6)


@pytest.mark.parametrize("c1, c2, sign", [(1.5, 1.0, "+"), (1.5, 1.5, "-"), (100, 100, "+")])
def test_fdot_matches_finite_difference(c1: float, c2: float, sign: str) -> None:
    params = ModeParams.from_coefficients(c1, c2, sign)
    t = np.linspace(0.01, 3.0, 50)
    h = 1e-6
    finite = (np.asarray(eval_f(params, t + h)) - np.asarray(eval_f(params, t - h))) / (2 * h)
    fdot, _ = eval_fdot_z(params, t)
    scale = np.maximum(np.abs(fdot), 1.0)
    assert np.max(np.abs(finite - fdot) / scale) < 1e-6


def test_step_count() -> None:
    params = ModeParams()
    assert step_count(params, 0.0) == 0
    assert step_count(params, math.pi / 2 - 1e-12) == 0
    assert step_count(params, math.pi / 2) == 1
    assert step_count(params, 10 * math.pi) == 10
    with pytest.raises(TimeBeforeReference):
        step_count(params, -1.0)


def test_theta_static_is_linear() -> None:
    params = ModeParams(omega=2.0)
    t = np.linspace(0, 5, 11)
    np.testing.assert_allclose(eval_theta(params, t), 2.0 * t, atol=1e-12)
    np.testing.assert_allclose(eval_big_t(params, t), t, atol=1e-12)


@pytest.mark.parametrize("c1, c2, sign", [(1, 1, "+"), (1.5, 1.0, "-"), (1.5, 1.5, "+"), (10000, 10000, "+")])
def test_theta_period_step(c1: float, c2: float, sign: str) -> None:
    params = ModeParams.from_coefficients(c1, c2, sign, phi=-0.4)
    base = np.linspace(0, 2 * params.period, 40)
    step = np.asarray(eval_theta(params, base + params.period)) - np.asarray(eval_theta(params, base))
    np.testing.assert_allclose(step, math.pi, atol=1e-9)


def test_theta_continuous_through_singular_times() -> None:
    params = _mild()
    singular = math.pi / 2
    left = eval_theta(params, singular - 1e-9)
    right = eval_theta(params, singular + 1e-9)
    assert abs(right - left) < 1e-6
    theta = np.asarray(eval_theta(params, np.linspace(0, 4 * math.pi, 4001)))
    assert np.all(np.diff(theta) > 0)


def test_theta_matches_oracle() -> None:
    assert eval_theta(_mild(), 1.0) == pytest.approx(oracle_theta(_mild(), 1.0), abs=1e-8)
    assert oracle_theta(ModeParams(), 2.0) == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("sign", ["+", "-"])
def test_oracle_one_period_at_extreme_nonstaticity(sign: str) -> None:
    params = ModeParams.from_coefficients(10000, 10000, sign)
    assert oracle_theta(params, params.period) == pytest.approx(math.pi, abs=1e-8)


@pytest.mark.parametrize("c1, c2, sign", [(1.5, 1.0, "+"), (100, 100, "-"), (10000, 10000, "+")])
def test_oracle_grid_agrees_with_closed_form(c1: float, c2: float, sign: str) -> None:
    params = ModeParams.from_coefficients(c1, c2, sign)
    t = np.linspace(0, 10 * params.period, 120)
    np.testing.assert_allclose(oracle_theta_grid(params, t), eval_theta(params, t), atol=1e-8)


def test_oracle_reports_exhausted_budget() -> None:
    params = ModeParams.from_coefficients(10000, 10000)
    with pytest.raises(QuadratureNonConvergence):
        oracle_theta(params, 0.3 * params.period, rel_tol=1e-15, max_depth=5)


def test_node_times_locate_minima() -> None:
    params = _mild()
    nodes = node_times(params, 0, 3 * math.pi)
    assert len(nodes) == 3
    np.testing.assert_allclose(np.diff(nodes), math.pi)
    f_min, _ = f_extrema(params)
    np.testing.assert_allclose(eval_f(params, nodes), f_min, atol=1e-12)
    assert len(node_times(ModeParams())) == 0


def test_sample_bundles_time_functions() -> None:
    params = _mild()
    bundle = sample(params, [0.0, 1.0])
    assert bundle.f.shape == (2,)
    assert bundle.theta[0] == 0.0
    np.testing.assert_allclose(bundle.z, bundle.fdot / 2)
    np.testing.assert_allclose(bundle.big_t, bundle.theta)
