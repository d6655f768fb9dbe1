"""Spectral primitives: derivatives, translations, fractional Fourier."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_tomograph import (
    Grid,
    IllPosedOperatorError,
    fractional_fourier,
    oscillator_eigenstate,
    quadrature_amplitude,
)
from pauli_tomograph.grids import Axis
from pauli_tomograph.spectral import (
    antiderivative_values,
    chirp_sum,
    derivative_values,
    eval_trig_series,
    frft_namias_values,
    refine_values,
    scale_resample_values,
    translate_values,
)

AX = Axis.span(-8.0, 8.0, 256)
X = AX.coords()


def test_derivative_exact_on_grid_modes():
    k = AX.wavenumbers()[5]
    f = np.sin(k * X)
    df = derivative_values(f, AX.spacing)
    assert np.abs(df - k * np.cos(k * X)).max() < 1e-12


def test_antiderivative_inverts_derivative():
    f = np.exp(-X**2) * X  # zero mean, smooth, periodic to 1e-28
    g = antiderivative_values(derivative_values(f, AX.spacing), AX.spacing)
    assert np.abs((g - g.mean()) - (f - f.mean())).max() < 1e-12


def test_antiderivative_zero_mode_guard():
    with pytest.raises(IllPosedOperatorError) as err:
        antiderivative_values(np.exp(-X**2), AX.spacing)
    assert err.value.zero_mode_magnitude > 1e-8


def test_translate_closed_form():
    f = np.exp(-X**2)
    g = translate_values(f, AX.spacing, 1.25)
    assert np.abs(g.real - np.exp(-(X - 1.25) ** 2)).max() < 1e-12


def test_translate_per_row_shifts():
    f = np.stack([np.exp(-X**2), np.exp(-X**2)])
    g = translate_values(f, AX.spacing, np.array([0.5, -0.5]), axis=1)
    assert np.abs(g[0].real - np.exp(-(X - 0.5) ** 2)).max() < 1e-12
    assert np.abs(g[1].real - np.exp(-(X + 0.5) ** 2)).max() < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(-3.0, 3.0), st.integers(0, 11))
def test_translate_invertible(shift, seed):
    gen = np.random.default_rng(seed)
    spec = np.zeros(256, dtype=np.complex128)
    spec[:20] = gen.normal(size=20) + 1j * gen.normal(size=20)
    spec[-19:] = np.conj(spec[1:20])[::-1]
    f = np.fft.ifft(spec)
    g = translate_values(translate_values(f, AX.spacing, shift), AX.spacing,
                         -shift)
    assert np.abs(g - f).max() < 1e-12


def test_scale_resample_gaussian():
    f = np.exp(-X**2)
    g = scale_resample_values(f, AX.min, AX.spacing, 0.5)
    assert np.abs(g.real - np.exp(-(0.5 * X) ** 2)).max() < 1e-10


def test_refine_keeps_coarse_samples():
    f = np.exp(-X**2) * np.cos(X)
    fine = refine_values(f)
    assert np.abs(fine[::2] - f).max() < 1e-12


def test_eval_trig_series_at_nodes():
    f = np.exp(-X**2) * np.sin(2 * X)
    out = eval_trig_series(f, AX.min, AX.spacing, X[17:40])
    assert np.abs(out.real - f[17:40]).max() < 1e-12


def test_chirp_sum_matches_direct():
    """Bluestein factorization equals the literal O(N^2) double sum."""
    gen = np.random.default_rng(7)
    c = gen.normal(size=(3, 24)) + 1j * gen.normal(size=(3, 24))
    a, b = 0.37, -0.219
    out = chirp_sum(c, a, b, n_out=16)
    ns = np.arange(24)
    direct = np.stack(
        [np.sum(c * np.exp(1j * a * ns + 1j * b * ns * j), axis=-1)
         for j in range(16)],
        axis=-1,
    )
    assert np.abs(out - direct).max() < 1e-10


def test_namias_eigenfunction_phases():
    grid = Grid.default_1d()
    for n in (0, 1, 3):
        psi = oscillator_eigenstate(n, grid)
        for alpha in (0.3, 1.1):
            out = frft_namias_values(psi.values, alpha, AX.min, AX.spacing)
            assert np.abs(out - np.exp(-1j * n * alpha) * psi.values).max() \
                < 1e-9


def test_namias_additivity():
    psi = np.pi ** -0.25 * np.exp(-0.5 * (X - 1.0) ** 2)
    one = frft_namias_values(frft_namias_values(psi, 0.4, AX.min, AX.spacing),
                             0.9, AX.min, AX.spacing)
    two = frft_namias_values(psi, 1.3, AX.min, AX.spacing)
    assert np.abs(one - two).max() < 1e-9


def test_fractional_fourier_public_sign():
    """The public rotation advances psi_n by exp(+i n theta)."""
    grid = Grid.default_1d()
    psi = oscillator_eigenstate(2, grid)
    out = fractional_fourier(psi, 0.7)
    assert np.abs(out.values - np.exp(2j * 0.7) * psi.values).max() < 1e-9


def test_quadrature_amplitude_closed_form():
    grid = Grid.default_1d()
    psi = oscillator_eigenstate(1, grid)
    amp = quadrature_amplitude(psi, 0.6)
    expected = np.exp(-1j * 0.6) * psi.values
    assert np.abs(amp.values - expected).max() < 1e-9
    # theta = 0 is the identity
    amp0 = quadrature_amplitude(psi, 0.0)
    assert np.abs(amp0.values - psi.values).max() < 1e-12


def test_quadrature_amplitude_is_unitary(spinor_factory):
    s = spinor_factory(seed=9)
    amp = quadrature_amplitude(s.up, 1.234)
    assert amp.norm_squared() == pytest.approx(s.up.norm_squared(), abs=1e-10)
