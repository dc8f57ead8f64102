"""Post-processing of field time series: RMS, beating, spectra and ridge velocity"""
#%%
# Import modules and libraries needed within code.
from loguru import logger
import numpy as np
from numpy.typing import ArrayLike
from scipy.signal import find_peaks, hilbert


#%%
#
def time_rms(values: ArrayLike, axis: int = 0) -> np.ndarray:
    """Root mean square along the time axis."""
    values = np.asarray(values, dtype=float)
    return np.sqrt(np.mean(values ** 2, axis=axis))


def standing_wave_contrast(rms_by_x: ArrayLike) -> float:
    """
    Purpose:
        Ratio min/max of the time-RMS across positions. Near 1 for a travelling wave, near 0 when
        some position is quenched.
    """
    rms_by_x = np.asarray(rms_by_x, dtype=float)
    peak = float(np.max(rms_by_x))
    if peak == 0:
        return 1.0
    return float(np.min(rms_by_x)) / peak


def envelope(signal: ArrayLike) -> np.ndarray:
    """Amplitude envelope |analytic signal|."""
    return np.abs(hilbert(np.asarray(signal, dtype=float)))


def beat_period(t: ArrayLike, signal: ArrayLike, edge_fraction: float = 0.05) -> float:
    """
    Purpose:
        Beat period from the spacing of envelope peaks.
    Args:
        t: Uniform time grid.
        signal: Field samples on t.
        edge_fraction: Fraction of the record discarded at each end (Hilbert edge effects).
    Returns:
        Mean spacing of the envelope maxima, NaN when fewer than two maxima are found.
    """
    t = np.asarray(t, dtype=float)
    env = envelope(signal)
    dt = t[1] - t[0]
    # Ignore carrier-scale ripples: peaks must be separated by a noticeable share of the record.
    peaks, _ = find_peaks(env, prominence=0.1 * (np.max(env) - np.min(env)), distance=max(1, len(t) // 200))
    lo = t[0] + edge_fraction * (t[-1] - t[0])
    hi = t[-1] - edge_fraction * (t[-1] - t[0])
    peak_times = t[peaks]
    peak_times = peak_times[(peak_times >= lo) & (peak_times <= hi)]
    if len(peak_times) < 2:
        logger.debug(f"Only {len(peak_times)} envelope peaks found; beat period undefined")
        return float("nan")
    logger.debug(f"{len(peak_times)} envelope peaks, grid step {dt:.3e}")
    return float(np.mean(np.diff(peak_times)))


def spectral_concentration(signal: ArrayLike) -> float:
    """
    Purpose:
        Share of spectral power (DC excluded) in the strongest rFFT bin.
    Returns:
        Fraction in [0, 1]; 1 for a pure sinusoid sampled over whole periods.
    """
    power = np.abs(np.fft.rfft(np.asarray(signal, dtype=float))) ** 2
    power = power[1:]
    total = float(np.sum(power))
    if total == 0:
        return 0.0
    return float(np.max(power)) / total


def group_velocity(x: ArrayLike, t: ArrayLike, field_map: ArrayLike) -> float:
    """
    Purpose:
        Estimate the ridge velocity of a (t, x) field map from the circular cross-correlation of
        successive time slices. Assumes the x grid spans whole wavelengths.
    Args:
        x: Uniform position grid.
        t: Uniform time grid.
        field_map: Array of shape (len(t), len(x)).
    Returns:
        Mean shift per unit time, positive for propagation along +x.
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    field_map = np.asarray(field_map, dtype=float)
    dx = x[1] - x[0]
    dt = t[1] - t[0]
    spectra = np.fft.rfft(field_map, axis=1)
    correlations = np.fft.irfft(np.conj(spectra[:-1]) * spectra[1:], n=field_map.shape[1], axis=1)

    width = field_map.shape[1]
    shifts = []
    for row in correlations:
        lag = int(np.argmax(row))
        # Parabolic refinement around the correlation peak.
        left, centre, right = row[(lag - 1) % width], row[lag], row[(lag + 1) % width]
        denominator = left - 2 * centre + right
        offset = 0.5 * (left - right) / denominator if denominator != 0 else 0.0
        signed_lag = lag if lag <= width // 2 else lag - width
        shifts.append((signed_lag + offset) * dx)
    return float(np.mean(shifts) / dt)
