"""Optical/symplectic tomograms and density-matrix reconstruction."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_tomograph import (
    ContractError,
    Grid,
    ReconstructionError,
    SpinorField,
    coherent_state,
    default_angles,
    landau_entangled_initial,
    normalization_check,
    optical_tomogram_vector,
    oscillator_eigenstate,
    rho_from_optical_tomogram,
    symplectic_from_optical,
    tomogram_from_wigner,
    wigner_vector,
)
from pauli_tomograph.grids import SpinDensityField
from pauli_tomograph.spinframe import vector_from_pair
from pauli_tomograph.tomography import TomogramField4


def test_ground_state_tomogram_all_angles(grid1):
    s = SpinorField.spin_up(oscillator_eigenstate(0, grid1))
    tom = optical_tomogram_vector(s)
    x = grid1.coords(0)
    marginal = np.exp(-x**2) / np.sqrt(np.pi)
    weights = (0.5, 0.5, 1.0, 0.0)
    for row in range(tom.theta_count):
        for j in range(4):
            assert np.abs(tom.values[row, j] - weights[j] * marginal).max() \
                < 1e-12


def test_theta_zero_row_is_pointwise_spin_algebra(spinor_factory):
    s = spinor_factory(seed=12)
    tom = optical_tomogram_vector(s, thetas=np.array([0.0]))
    expected = vector_from_pair(s.up.values, s.down.values)
    assert np.abs(tom.values[0] - expected).max() < 1e-12


def test_fock_marginal_rotation_invariant(grid1):
    """Eigenstate marginals do not depend on the quadrature angle."""
    s = SpinorField.spin_up(oscillator_eigenstate(3, grid1))
    tom = optical_tomogram_vector(s, thetas=np.array([0.0, 0.4, 1.3]))
    assert np.abs(tom.values[1] - tom.values[0]).max() < 1e-10
    assert np.abs(tom.values[2] - tom.values[0]).max() < 1e-10


def test_normalization_check_flags_bad_rows(grid1):
    s = SpinorField.spin_up(oscillator_eigenstate(1, grid1))
    tom = optical_tomogram_vector(s, thetas=default_angles(8))
    report = normalization_check(tom)
    assert report["ok"]
    assert report["integrals"].shape == (8, 4)
    bad_values = tom.values.copy()
    bad_values[3] *= 1.1
    bad = TomogramField4(tom.grid, tom.thetas, bad_values)
    report = normalization_check(bad)
    assert not report["ok"]
    assert list(report["flagged_angles"]) == [3]


def test_reflection_and_periodicity(spinor_factory):
    s = spinor_factory(seed=5)
    tom = optical_tomogram_vector(s, thetas=default_angles(64))
    for x, theta in ((0.7, 0.9), (-1.3, 2.1)):
        w_here = tom.evaluate(x, theta)
        assert np.abs(tom.evaluate(x, theta + 2 * np.pi) - w_here).max() < 1e-9
        assert np.abs(tom.evaluate(-x, theta + np.pi) - w_here).max() < 1e-9


def test_evaluate_at_sample_nodes(grid1):
    s = SpinorField.spin_up(oscillator_eigenstate(2, grid1))
    thetas = default_angles(16)
    tom = optical_tomogram_vector(s, thetas=thetas)
    x = grid1.coords(0)
    assert np.abs(tom.evaluate(x[40], thetas[3]) - tom.values[3, :, 40]).max() \
        < 1e-10


@settings(max_examples=15, deadline=None)
@given(st.floats(0.2, 4.0))
def test_symplectic_homogeneity(scale):
    grid = Grid.default_1d()
    s = SpinorField.spin_up(oscillator_eigenstate(1, grid))
    tom = optical_tomogram_vector(s, thetas=default_angles(64))
    mu, nu, x = np.cos(0.8), np.sin(0.8), 0.45
    base = symplectic_from_optical(tom, x, mu, nu)
    scaled = symplectic_from_optical(tom, scale * x, scale * mu, scale * nu)
    assert np.abs(scaled.value - base.value / scale).max() < 1e-8


def test_symplectic_canonical_section(grid1):
    s = SpinorField.spin_up(oscillator_eigenstate(1, grid1))
    thetas = default_angles(64)
    tom = optical_tomogram_vector(s, thetas=thetas)
    x = grid1.coords(0)[150]
    sample = symplectic_from_optical(tom, x, np.cos(thetas[5]),
                                     np.sin(thetas[5]))
    assert np.abs(sample.value - tom.values[5, :, 150]).max() < 1e-10


def test_radon_path_matches_direct(grid1):
    """Radon slices of the vector Wigner equal the fractional-Fourier route."""
    s = SpinorField.spin_up(coherent_state(0.6 - 0.3j, grid1))
    w = wigner_vector(s)
    thetas = default_angles(8)
    radon = tomogram_from_wigner(w, thetas=thetas)
    direct = optical_tomogram_vector(s, thetas=thetas)
    # the Radon X axis is the even sublattice of the state grid
    stride = grid1.axes[0].count // radon.grid.axes[0].count
    assert np.abs(radon.values - direct.values[:, :, ::stride]).max() < 1e-8


def _restricted_kernel(state, grid):
    """True density kernel sampled on the reconstruction's coarser grid."""
    stride = state.grid.axes[0].count // grid.axes[0].count
    coarse = SpinorField.normalized(state.up.values[::stride],
                                    state.down.values[::stride], grid)
    return SpinDensityField.from_ensemble(coarse)


def test_density_reconstruction_round_trip(grid1, spinor_factory):
    for state in (SpinorField.spin_up(oscillator_eigenstate(3, grid1)),
                  spinor_factory(seed=77)):
        tom = optical_tomogram_vector(state, thetas=default_angles(64))
        ker = rho_from_optical_tomogram(tom)
        target = _restricted_kernel(state, ker.grid)
        assert ker.frobenius_distance(target) < 1e-6
        assert abs(ker.trace() - 1.0) < 1e-8
        assert ker.purity() == pytest.approx(1.0, abs=1e-6)


def test_reconstruction_angle_guards(grid1):
    s = SpinorField.spin_up(oscillator_eigenstate(0, grid1))
    with pytest.raises(ReconstructionError):
        rho_from_optical_tomogram(
            optical_tomogram_vector(s, thetas=default_angles(32)))
    full_circle = 2 * np.pi * np.arange(64) / 64
    with pytest.raises(ReconstructionError):
        rho_from_optical_tomogram(
            optical_tomogram_vector(s, thetas=full_circle))
    jittered = default_angles(64).copy()
    jittered[10] += 1e-3
    with pytest.raises(ReconstructionError):
        rho_from_optical_tomogram(
            optical_tomogram_vector(s, thetas=jittered))


def test_pair_angle_tomogram_masses():
    state = landau_entangled_initial()
    pairs = np.array([[0.0, 0.0], [np.pi / 4, np.pi / 3], [1.1, 2.0]])
    tom = optical_tomogram_vector(state, thetas=pairs)
    masses = tom.sample_masses()
    assert np.abs(masses[:, 2] - 0.5).max() < 1e-10
    assert np.abs(masses[:, 3] - 0.5).max() < 1e-10
    report = normalization_check(tom)
    assert report["ok"]


def test_tomogram_shape_guards(grid1):
    with pytest.raises(ContractError):
        TomogramField4(grid1, np.array([0.0, 1.0]), np.zeros((3, 4, 256)))
    with pytest.raises(ContractError):
        TomogramField4(grid1, np.array([0.0]), np.zeros((1, 3, 256)))
