"""Container invariants: axes, grids, fields, spinors, ensembles, kernels."""

import numpy as np
import pytest

from pauli_tomograph import (
    Axis,
    CapabilityError,
    ComplexField,
    ContractError,
    Grid,
    SpinorField,
    StateEnsemble,
    as_ensemble,
    oscillator_eigenstate,
)
from pauli_tomograph.grids import SpinDensityField


def test_axis_span_and_coords():
    ax = Axis.span(-8.0, 8.0, 256)
    assert ax.spacing == 0.0625
    assert ax.max == 8.0
    c = ax.coords()
    assert c[0] == -8.0 and c[-1] == 8.0 - ax.spacing
    assert np.allclose(np.diff(c), ax.spacing)


def test_axis_wavenumbers_match_fft_layout():
    ax = Axis.span(-4.0, 4.0, 64)
    k = ax.wavenumbers()
    assert np.array_equal(k, 2 * np.pi * np.fft.fftfreq(64, d=ax.spacing))
    assert ax.nyquist_wavenumber() == pytest.approx(np.pi / ax.spacing)


def test_axis_validation():
    with pytest.raises(ContractError):
        Axis(-1.0, 0, 0.1)
    with pytest.raises(ContractError):
        Axis(-1.0, 8, -0.1)
    with pytest.raises(ContractError):
        Axis.span(1.0, -1.0, 8)


def test_grid_defaults():
    g1 = Grid.default_1d()
    assert g1.ndim == 1 and g1.shape == (256,)
    assert g1.cell_volume == pytest.approx(16.0 / 256)
    g2 = Grid.default_2d()
    assert g2.shape == (128, 128)
    assert g2.axes[0] == g2.axes[1]
    g2.require_spectral()


def test_require_spectral_rejects_odd_counts():
    g = Grid((Axis.span(0.0, 1.0, 48),))
    with pytest.raises(CapabilityError):
        g.require_spectral()


def test_complex_field_norm_inner(grid1):
    psi0 = oscillator_eigenstate(0, grid1)
    psi1 = oscillator_eigenstate(1, grid1)
    assert psi0.norm_squared() == pytest.approx(1.0, abs=1e-12)
    assert abs(psi0.inner(psi1)) < 1e-12
    doubled = psi0.with_values(2.0 * psi0.values)
    assert doubled.normalized().norm_squared() == pytest.approx(1.0, abs=1e-12)


def test_complex_field_shape_and_finiteness(grid1):
    with pytest.raises(ContractError):
        ComplexField(grid1, np.zeros(7))
    bad = np.zeros(grid1.shape)
    bad[0] = np.nan
    with pytest.raises(ContractError):
        ComplexField(grid1, bad)


def test_spinor_joint_normalization(grid1):
    psi0 = oscillator_eigenstate(0, grid1).values
    psi1 = oscillator_eigenstate(1, grid1).values
    s = SpinorField.normalized(3.0 * psi1, 3.0 * psi0, grid1)
    assert s.norm_squared() == pytest.approx(1.0, abs=1e-12)
    assert s.up.norm_squared() == pytest.approx(0.5, abs=1e-12)
    rho = s.spin_density_matrix()
    assert np.allclose(rho, 0.5 * np.eye(2), atol=1e-12)


def test_spinor_rejects_unnormalized(grid1):
    psi0 = oscillator_eigenstate(0, grid1)
    with pytest.raises(ContractError):
        SpinorField(psi0.with_values(2.0 * psi0.values),
                    psi0.with_values(np.zeros_like(psi0.values)))


def test_spin_up_has_pure_spin_matrix(grid1):
    s = SpinorField.spin_up(oscillator_eigenstate(2, grid1))
    assert np.allclose(s.spin_density_matrix(), np.diag([1.0, 0.0]), atol=1e-12)


def test_ensemble_validation(grid1):
    s = SpinorField.spin_up(oscillator_eigenstate(0, grid1))
    with pytest.raises(ContractError):
        StateEnsemble(np.array([0.6, 0.6]), (s, s))
    with pytest.raises(ContractError):
        StateEnsemble(np.array([-0.5, 1.5]), (s, s))
    ens = StateEnsemble(np.array([0.25, 0.75]), (s, s))
    assert np.allclose(ens.spin_density_matrix(), np.diag([1.0, 0.0]))
    assert as_ensemble(s).weights[0] == 1.0
    assert as_ensemble(ens) is ens
    with pytest.raises(ContractError):
        as_ensemble(np.zeros(3))


def test_density_kernel_round_trip(grid1):
    """Kernel built from an orthogonal rank-2 ensemble decomposes back."""
    psi0 = oscillator_eigenstate(0, grid1)
    psi1 = oscillator_eigenstate(1, grid1)
    zero = psi0.with_values(np.zeros_like(psi0.values))
    a = SpinorField(psi0, zero)
    b = SpinorField(zero, psi1)
    ens = StateEnsemble(np.array([0.7, 0.3]), (a, b))
    ker = SpinDensityField.from_ensemble(ens)
    assert abs(ker.trace() - 1.0) < 1e-10
    assert ker.hermiticity_error() < 1e-14
    back = ker.to_ensemble()
    assert np.allclose(np.sort(back.weights), [0.3, 0.7], atol=1e-8)
    assert np.allclose(back.spin_density_matrix(), ens.spin_density_matrix(),
                       atol=1e-8)


def test_kernel_purity(grid1, spinor_factory):
    pure = SpinDensityField.from_ensemble(as_ensemble(spinor_factory(seed=3)))
    assert pure.purity() == pytest.approx(1.0, abs=1e-10)
    mixed = SpinDensityField.from_ensemble(
        StateEnsemble(np.array([0.5, 0.5]),
                      (spinor_factory(seed=4), spinor_factory(seed=5)))
    )
    assert mixed.purity() < 1.0 - 1e-3


def test_frozen_arrays_are_immutable(grid1):
    psi = oscillator_eigenstate(0, grid1)
    with pytest.raises(ValueError):
        psi.values[0] = 1.0
