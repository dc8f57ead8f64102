import math

import numpy as np
import pytest

from nonstatic.errors import FieldParamsError, TimeBeforeReference, UndefinedAngle
from nonstatic.fields import (
    FieldParams
    , amplitudes
    , atan_xy
    , coherent_eigenvalue
    , electric_field
    , field_phase
    , field_sample
    , interference_field
    , interference_magnetic_field
    , magnetic_field
    , vector_potential
    , with_frequency
)
from nonstatic.timebase import ModeParams, eval_f, node_times
from nonstatic.wavefunctions import QuantumConstants

CONSTS = QuantumConstants()
UNIT = FieldParams()
MILD = ModeParams.from_coefficients(1.5, 1.5)
EXTREME = ModeParams.from_coefficients(10000, 10000)


def test_field_params_validation() -> None:
    with pytest.raises(FieldParamsError):
        FieldParams(alpha0=-1.0)
    with pytest.raises(FieldParamsError):
        FieldParams(k=0.0)
    with pytest.raises(FieldParamsError):
        FieldParams(volume=-2.0)


def test_atan_xy_quadrants() -> None:
    assert atan_xy(1, 0) == 0.0
    assert atan_xy(0, 1) == pytest.approx(math.pi / 2)
    assert atan_xy(-1, -1) == pytest.approx(5 * math.pi / 4)
    angles = np.asarray(atan_xy(np.array([1.0, -1e-300]), np.array([-1e-300, -1.0])))
    assert np.all((angles >= 0) & (angles < 2 * math.pi))
    with pytest.raises(UndefinedAngle):
        atan_xy(0, 0)


def test_coherent_eigenvalue() -> None:
    fp = FieldParams(theta=0.3, alpha0=2.0)
    assert coherent_eigenvalue(MILD, fp, 0.0) == pytest.approx(2.0 * np.exp(-0.3j))
    t = np.linspace(0, 10, 21)
    np.testing.assert_allclose(np.abs(coherent_eigenvalue(EXTREME, fp, t)), 2.0)
    phase = np.angle(np.asarray(coherent_eigenvalue(ModeParams(), UNIT, t)))
    np.testing.assert_allclose(np.exp(1j * phase), np.exp(-1j * t), atol=1e-12)


def test_static_unit_values() -> None:
    assert vector_potential(0.0, 0.0, ModeParams(), CONSTS, UNIT) == pytest.approx(math.sqrt(2))
    assert electric_field(0.0, 0.0, ModeParams(), CONSTS, UNIT) == pytest.approx(0.0, abs=1e-15)
    assert magnetic_field(0.0, 0.0, ModeParams(), CONSTS, UNIT) == pytest.approx(0.0, abs=1e-15)
    _, _, _, delta = amplitudes(ModeParams(), CONSTS, UNIT, 0.0)
    assert delta == pytest.approx(math.pi / 2)


def test_vector_potential_spatial_period_and_amplitude_scaling() -> None:
    x = np.linspace(0, 2 * math.pi, 17)
    np.testing.assert_allclose(
        vector_potential(x, 1.3, ModeParams(), CONSTS, UNIT)
        , vector_potential(x + 2 * math.pi, 1.3, ModeParams(), CONSTS, UNIT)
        , atol=1e-12
    )
    t = np.linspace(0, 6, 31)
    big_a, _, _, _ = amplitudes(MILD, CONSTS, UNIT, t)
    ratio = np.asarray(big_a) ** 2 / np.asarray(eval_f(MILD, t))
    np.testing.assert_allclose(ratio, ratio[0], rtol=1e-12)


def _five_point(func, at, h):
    return (func(at - 2 * h) - 8 * func(at - h) + 8 * func(at + h) - func(at + 2 * h)) / (12 * h)


@pytest.mark.parametrize("params", [ModeParams(), MILD, ModeParams.from_coefficients(1.5, 1.0, "-"), EXTREME])
def test_fields_are_derivatives_of_vector_potential(params: ModeParams) -> None:
    x = np.linspace(0, 2 * math.pi, 40)[None, :]
    t = np.linspace(0.05, 2 * params.period, 40)[:, None]
    h = 1e-3
    sample = field_sample(x, t, params, CONSTS, UNIT)

    d_dt = _five_point(lambda s: np.asarray(vector_potential(x, s, params, CONSTS, UNIT)), t, h)
    assert np.max(np.abs(sample.e + d_dt) / sample.amp_e) < 1e-5

    d_dx = _five_point(lambda s: np.asarray(vector_potential(s, t, params, CONSTS, UNIT)), x, h)
    assert np.max(np.abs(sample.b - d_dx) / np.abs(sample.amp_b)) < 1e-5


def test_field_sample_matches_individual_fields() -> None:
    x = np.linspace(0, 3, 5)[None, :]
    t = np.linspace(0, 3, 4)[:, None]
    sample = field_sample(x, t, MILD, CONSTS, UNIT)
    np.testing.assert_allclose(sample.a, vector_potential(x, t, MILD, CONSTS, UNIT))
    np.testing.assert_allclose(sample.e, electric_field(x, t, MILD, CONSTS, UNIT))
    np.testing.assert_allclose(sample.b, magnetic_field(x, t, MILD, CONSTS, UNIT))
    phase, factor = field_phase(x, t, MILD, CONSTS, UNIT)
    np.testing.assert_allclose(sample.amp_e * factor, sample.e, atol=1e-12)
    np.testing.assert_allclose(np.cos(phase), factor)


def test_electric_amplitude_peaks_where_magnetic_amplitude_is_smallest() -> None:
    t = np.linspace(0, 10 * MILD.period, 20001)
    _, amp_e, amp_b, _ = amplitudes(MILD, CONSTS, UNIT, t)
    step = t[1] - t[0]
    for node in node_times(MILD, MILD.period / 2, 9.5 * MILD.period):
        window = (t >= node - MILD.period / 2) & (t < node + MILD.period / 2)
        t_max_e = t[window][np.argmax(np.asarray(amp_e)[window])]
        t_min_b = t[window][np.argmin(np.abs(np.asarray(amp_b)[window]))]
        assert abs(t_max_e - t_min_b) <= step + 1e-12
        assert abs(t_min_b - node) <= step


def test_extreme_field_is_quenched_near_quarter_wavelength() -> None:
    x = np.linspace(0, math.pi, 101)
    t = np.linspace(0, 2 * math.pi, 2048, endpoint=False)
    e = np.asarray(electric_field(x[None, :], t[:, None], EXTREME, CONSTS, UNIT))
    rms = np.sqrt(np.mean(e ** 2, axis=0))
    assert np.min(rms) <= 0.05 * np.max(rms)
    assert x[np.argmin(rms)] == pytest.approx(math.pi / 2, abs=0.05)


def test_fields_reject_times_before_reference() -> None:
    with pytest.raises(TimeBeforeReference):
        electric_field(0.0, -0.1, MILD, CONSTS, UNIT)


def test_interference_requires_matching_modes() -> None:
    second = with_frequency(MILD, 1.5)
    assert second.omega == 1.5 and second.c3 == MILD.c3
    with pytest.raises(ValueError):
        interference_field(0.0, 1.0, MILD, ModeParams(omega=1.5), CONSTS, UNIT)


def test_interference_is_superposition_of_modes() -> None:
    second = with_frequency(MILD, 1.5)
    x = np.array([0.0, 0.5, 2.0])[None, :]
    t = np.linspace(0, 12, 25)[:, None]
    np.testing.assert_allclose(
        interference_field(x, t, MILD, second, CONSTS, UNIT)
        , np.asarray(electric_field(x, t, MILD, CONSTS, UNIT)) + np.asarray(electric_field(x, t, second, CONSTS, UNIT))
    )
    np.testing.assert_allclose(
        interference_magnetic_field(x, t, MILD, second, CONSTS, UNIT)
        , np.asarray(magnetic_field(x, t, MILD, CONSTS, UNIT)) + np.asarray(magnetic_field(x, t, second, CONSTS, UNIT))
    )


def test_nonstatic_interference_depends_on_position() -> None:
    first = ModeParams.from_coefficients(1.5, 1.0)
    second = with_frequency(first, 1.5)
    t = np.linspace(0, 40 * math.pi, 8001)[:, None]
    e = np.asarray(interference_field(np.array([0.5, 2.0])[None, :], t, first, second, CONSTS, UNIT))
    rms = np.sqrt(np.mean(e ** 2, axis=0))
    assert rms[0] > rms[1]


def test_static_field_is_a_travelling_wave() -> None:
    x = np.linspace(0, 2 * math.pi, 33)[None, :]
    t = np.linspace(0, 4 * math.pi, 33)[:, None]
    reference = np.asarray(electric_field(x, t, ModeParams(), CONSTS, UNIT))
    for dt in (0.3, 5.0):
        shifted = np.asarray(electric_field(x + dt, t + dt, ModeParams(), CONSTS, UNIT))
        np.testing.assert_allclose(shifted, reference, rtol=0, atol=1e-12)


@pytest.mark.parametrize("x", [0.3, 1.0, 2.5])
def test_extreme_phase_factor_is_rectangular(x: float) -> None:
    t = np.linspace(0, EXTREME.period, 4000, endpoint=False)
    _, factor = field_phase(x, t, EXTREME, CONSTS, UNIT)
    magnitude = np.abs(np.asarray(factor))
    plateau = np.median(magnitude)
    assert plateau > 0.2
    assert np.mean(np.abs(magnitude - plateau) <= 0.05) >= 0.96
