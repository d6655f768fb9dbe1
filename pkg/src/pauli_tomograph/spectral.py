"""Spectral operators on periodic grids.

Everything here treats a sampled field as its trigonometric interpolant:
derivatives and antiderivatives are Fourier multipliers, translations are
phase ramps, and the fractional Fourier transform is evaluated with the
chirp (Bluestein) algorithm so input and output live on the same grid.

The fractional transform convention is fixed by its action on oscillator
eigenstates: fractional_fourier(psi_n, theta) = exp(+i n theta) psi_n, and
quadrature_amplitude(psi, theta) computes <X,theta|psi>, the amplitude in
the rotated-quadrature eigenbasis X cos(theta) + P sin(theta).
"""

import numpy as np
from scipy.fft import next_fast_len

from .errors import ContractError, IllPosedOperatorError
from .grids import ComplexField

ZERO_MODE_REL_TOL = 1e-8


# ---------------------------------------------------------------------------
# chirp (Bluestein) primitive
# ---------------------------------------------------------------------------

def chirp_sum(c, a, b, n_out=None):
    """Batched chirp sum X[j] = sum_n c[n] exp(i a n) exp(i b n j).

    c has shape (..., N); j runs over 0..n_out-1 (default N). Evaluated with
    the Bluestein factorization nj = (n^2 + j^2 - (j-n)^2)/2, which turns the
    quadratic cross phase into a linear convolution.
    """
    c = np.asarray(c, dtype=np.complex128)
    n = c.shape[-1]
    if n_out is None:
        n_out = n
    ns = np.arange(n, dtype=np.float64)
    js = np.arange(n_out, dtype=np.float64)
    u = c * np.exp(1j * (a * ns + 0.5 * b * ns * ns))
    ms = np.arange(-(n - 1), n_out, dtype=np.float64)
    v = np.exp(-0.5j * b * ms * ms)
    length = next_fast_len(n + n_out - 1 + (n - 1))
    conv = np.fft.ifft(
        np.fft.fft(u, n=length, axis=-1) * np.fft.fft(v, n=length), axis=-1
    )[..., n - 1 : n - 1 + n_out]
    return np.exp(0.5j * b * js * js) * conv


# ---------------------------------------------------------------------------
# axis helpers
# ---------------------------------------------------------------------------

def _to_last(values, axis):
    return np.moveaxis(np.asarray(values), axis, -1)


def _from_last(values, axis):
    return np.moveaxis(values, -1, axis)


def _multiplier_along(values, axis, mult):
    v = _to_last(values, axis)
    out = np.fft.ifft(np.fft.fft(v, axis=-1) * mult, axis=-1)
    return _from_last(out, axis)


# ---------------------------------------------------------------------------
# derivatives, antiderivative, translation, resampling
# ---------------------------------------------------------------------------

def derivative_values(values, spacing, axis=0):
    """Spectral d/dx along one axis; the Nyquist mode is dropped (odd order)."""
    n = np.asarray(values).shape[axis]
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=spacing)
    mult = 1j * k
    if n % 2 == 0:
        mult[n // 2] = 0.0
    return _multiplier_along(values, axis, mult)


def antiderivative_values(values, spacing, axis=0):
    """Inverse of d/dx for zero-mean fields: multiplier 1/(ik), k=0 bin zeroed.

    Raises IllPosedOperatorError when the zero-frequency coefficient is not
    negligible relative to the field norm: the inverse is defined only on
    zero-mean operands, and a mean signals a bug upstream.
    """
    v = _to_last(values, axis)
    n = v.shape[-1]
    spec = np.fft.fft(v, axis=-1)
    zero_mode = np.max(np.abs(spec[..., 0])) / n
    scale = np.sqrt(np.max(np.sum(np.abs(v) ** 2, axis=-1)) / n)
    if zero_mode > ZERO_MODE_REL_TOL * max(scale, 1e-300):
        raise IllPosedOperatorError(
            f"antiderivative of non-zero-mean field: |mean| = {zero_mode:.3e} "
            f"vs rms {scale:.3e}",
            zero_mode_magnitude=float(zero_mode),
        )
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=spacing)
    mult = np.zeros(n, dtype=np.complex128)
    mult[1:] = 1.0 / (1j * k[1:])
    if n % 2 == 0:
        mult[n // 2] = 0.0
    out = np.fft.ifft(spec * mult, axis=-1)
    return _from_last(out, axis)


def translate_values(values, spacing, shift, axis=0):
    """Periodic translation f(x) -> f(x - shift) by spectral phase ramp.

    `shift` may be a scalar or an array broadcastable against the axes other
    than `axis` (per-row shifts).
    """
    v = _to_last(values, axis)
    n = v.shape[-1]
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=spacing)
    shift = np.asarray(shift, dtype=np.float64)[..., None]
    out = np.fft.ifft(np.fft.fft(v, axis=-1) * np.exp(-1j * k * shift), axis=-1)
    return _from_last(out, axis)


def scale_resample_values(values, x0, spacing, scale, axis=0):
    """Sample the trig interpolant at the scaled points scale * x_j.

    Exact for band-limited periodic data; points outside the base period wrap.
    """
    v = _to_last(values, axis)
    n = v.shape[-1]
    coeff = np.fft.fftshift(np.fft.fft(v, axis=-1), axes=-1) / n
    dk = 2.0 * np.pi / (n * spacing)
    # interpolant P(y) = sum_m c_m exp(i dk m (y - x0)); y_j - x0 = (scale-1) x0 + scale h j
    a = dk * (scale - 1.0) * x0
    b = dk * scale * spacing
    base = chirp_sum(coeff, a, b)
    js = np.arange(n, dtype=np.float64)
    phase = np.exp(-1j * dk * (n / 2.0) * ((scale - 1.0) * x0 + scale * spacing * js))
    return _from_last(base * phase, axis)


def refine_values(values, axis=0, factor=2):
    """Band-limited upsampling by an integer factor (zero-padded spectrum)."""
    v = _to_last(values, axis)
    n = v.shape[-1]
    if n % 2:
        raise ContractError("band-limited refinement needs an even point count")
    spec = np.fft.fft(v, axis=-1)
    m = n * factor
    out = np.zeros(v.shape[:-1] + (m,), dtype=np.complex128)
    half = n // 2
    out[..., :half] = spec[..., :half]
    out[..., m - half + 1 :] = spec[..., half + 1 :]
    # split the Nyquist bin symmetrically so real fields stay real
    out[..., half] = 0.5 * spec[..., half]
    out[..., m - half] = 0.5 * spec[..., half]
    return _from_last(np.fft.ifft(out, axis=-1) * factor, axis)


def eval_trig_series(values, x0, spacing, points, axis=0):
    """Evaluate the trig interpolant at arbitrary points (direct sum).

    Cost O(npoints * N) per line; intended for small point sets.
    """
    v = _to_last(values, axis)
    n = v.shape[-1]
    coeff = np.fft.fft(v, axis=-1) / n
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=spacing)
    pts = np.asarray(points, dtype=np.float64)
    basis = np.exp(1j * np.outer(k, pts - x0))
    out = coeff @ basis
    return _from_last(out, axis)


# ---------------------------------------------------------------------------
# fractional Fourier transform
# ---------------------------------------------------------------------------

def _parity_flip(values, axis):
    """psi(x) -> psi(-x) on a right-open periodic grid (index reversal + roll)."""
    v = _to_last(values, axis)
    out = np.roll(v[..., ::-1], 1, axis=-1)
    return _from_last(out, axis)


def _chirp_core(values, alpha, x0, spacing, axis):
    """Namias kernel F_alpha for pi/4 <= |alpha| <= 3pi/4 (one Bluestein pass).

    (F_alpha psi)(x) = sqrt((1 - i cot a)/(2 pi))
                       int exp(i (x^2+y^2)/2 cot a - i x y / sin a) psi(y) dy
    discretized as a Riemann sum on the shared input/output grid.
    """
    s = np.sin(alpha)
    cot = np.cos(alpha) / s
    v = _to_last(values, axis)
    n = v.shape[-1]
    x = x0 + spacing * np.arange(n)
    g = v * np.exp(0.5j * cot * x * x)
    inner = chirp_sum(g, -x0 * spacing / s, -spacing * spacing / s)
    pref = np.sqrt((1.0 - 1j * cot) / (2.0 * np.pi))
    phase = np.exp(
        0.5j * cot * x * x
        - 1j * x0 * x0 / s
        - 1j * (x0 * spacing / s) * np.arange(n)
    )
    out = spacing * pref * phase * inner
    return _from_last(out, axis)


_QUARTER = np.pi / 2.0
_ANGLE_EPS = 1e-14


def frft_namias_values(values, alpha, x0, spacing, axis=0):
    """F_alpha with F_alpha psi_n = exp(-i n alpha) psi_n, same grid in and out.

    Any angle is reduced to at most two stable chirp passes (|sin| >= 1/sqrt(2))
    plus an exact parity flip; phases compose exactly because each pass carries
    the full Namias normalization.
    """
    a = float(alpha) % (2.0 * np.pi)
    if a < _ANGLE_EPS or 2.0 * np.pi - a < _ANGLE_EPS:
        return np.array(values, dtype=np.complex128, copy=True)
    if abs(a - np.pi) < _ANGLE_EPS:
        return _parity_flip(np.asarray(values, dtype=np.complex128), axis)

    def core(vv, ang):
        return _chirp_core(vv, ang, x0, spacing, axis)

    if np.pi / 4.0 <= a <= 3.0 * np.pi / 4.0:
        return core(values, a)
    if a < 5.0 * np.pi / 4.0:
        # a in (0, pi/4) or (3pi/4, 5pi/4): split off one exact-quarter pass
        return core(core(values, _QUARTER), a - _QUARTER)
    if a <= 7.0 * np.pi / 4.0:
        return core(_parity_flip(np.asarray(values, dtype=np.complex128), axis), a - np.pi)
    flipped = _parity_flip(np.asarray(values, dtype=np.complex128), axis)
    return core(core(flipped, _QUARTER), a - 3.0 * _QUARTER)


def _angles_per_axis(grid, theta):
    thetas = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    if thetas.size == 1 and grid.ndim > 1:
        thetas = np.full(grid.ndim, thetas[0])
    if thetas.size != grid.ndim:
        raise ContractError(f"need one angle per axis, got {thetas.size} for {grid.ndim}D")
    return thetas


def fractional_fourier(psi, theta):
    """Fractional Fourier transform of a field, eigenvalue e^{+i n theta}.

    theta is a scalar (applied to every axis) or a per-axis sequence.
    """
    grid = psi.grid.require_spectral()
    thetas = _angles_per_axis(grid, theta)
    out = np.asarray(psi.values, dtype=np.complex128)
    for ax, th in enumerate(thetas):
        out = frft_namias_values(out, -th, grid.axes[ax].min, grid.axes[ax].spacing, axis=ax)
    return ComplexField(grid, out)


def quadrature_amplitude_values(values, grid, theta):
    """<X,theta|psi> on the grid: F_{+theta} per axis in the Namias convention."""
    grid.require_spectral()
    thetas = _angles_per_axis(grid, theta)
    out = np.asarray(values, dtype=np.complex128)
    for ax, th in enumerate(thetas):
        out = frft_namias_values(out, th, grid.axes[ax].min, grid.axes[ax].spacing, axis=ax)
    return out


def quadrature_amplitude(psi, theta):
    """Amplitude of psi in the rotated quadrature X cos(theta) + P sin(theta)."""
    return ComplexField(psi.grid, quadrature_amplitude_values(psi.values, psi.grid, theta))


# ---------------------------------------------------------------------------
# field-level wrappers
# ---------------------------------------------------------------------------

def spectral_derivative(field, axis=0):
    """d/dx of a ComplexField along the given axis."""
    grid = field.grid.require_spectral()
    out = derivative_values(field.values, grid.axes[axis].spacing, axis=axis)
    return ComplexField(grid, out)


def spectral_antiderivative(field, axis=0):
    """[d/dx]^{-1} of a zero-mean ComplexField along the given axis."""
    grid = field.grid.require_spectral()
    out = antiderivative_values(field.values, grid.axes[axis].spacing, axis=axis)
    return ComplexField(grid, out)
