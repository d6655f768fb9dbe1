"""Vector Wigner and Husimi fields: closed forms, bridges, reconstruction."""

import numpy as np
import pytest

from pauli_tomograph import (
    ContractError,
    Grid,
    IllPosedDeconvolutionError,
    PhaseField4,
    SpinorField,
    coherent_state,
    deconvolve_husimi_to_wigner,
    husimi_vector,
    oscillator_eigenstate,
    smooth_wigner_to_husimi,
    symplectic_pullback,
    weyl_reconstruct,
    wigner_point_vector,
    wigner_vector,
)

SPIN_UP_WEIGHTS = np.array([0.5, 0.5, 1.0, 0.0])


def _phase_mesh(grid):
    return np.meshgrid(grid.coords(0), grid.coords(1), indexing="ij")


def test_wigner_ground_closed_form(grid1, grid2):
    w = wigner_vector(SpinorField.spin_up(oscillator_eigenstate(0, grid1)))
    q, p = _phase_mesh(w.grid)
    scalar = np.exp(-q**2 - p**2) / np.pi
    for j in range(4):
        assert np.abs(w.values[j] - SPIN_UP_WEIGHTS[j] * scalar).max() < 1e-13
    assert w.normalization_mass() == pytest.approx(1.0, abs=1e-12)
    assert grid2.shape == w.grid.shape


def test_wigner_fock1_closed_form(grid1):
    w = wigner_vector(SpinorField.spin_up(oscillator_eigenstate(1, grid1)))
    q, p = _phase_mesh(w.grid)
    scalar = (2 * (q**2 + p**2) - 1) * np.exp(-q**2 - p**2) / np.pi
    assert np.abs(w.values[2] - scalar).max() < 1e-12
    assert w.values[2].min() < -0.3 / np.pi  # genuinely negative at the origin


def test_wigner_marginals(grid1, spinor_factory):
    s = spinor_factory(seed=21)
    w = wigner_vector(s)
    marg = w.position_marginals()
    dens_up = np.abs(s.up.values) ** 2
    dens_dn = np.abs(s.down.values) ** 2
    half = w.grid.axes[0].count
    # Wigner grid q-axis is the state's 128-point sublattice
    stride = s.grid.axes[0].count // half
    assert np.abs(marg[2] - dens_up[::stride]).max() < 1e-10
    assert np.abs(marg[3] - dens_dn[::stride]).max() < 1e-10


def test_wigner_momentum_marginal(grid1):
    psi = oscillator_eigenstate(1, grid1)
    w = wigner_vector(SpinorField.spin_up(psi))
    p = w.grid.coords(1)
    marg_p = np.sum(w.values[2], axis=0) * w.grid.axes[0].spacing
    expected = 2.0 * p**2 * np.exp(-p**2) / np.sqrt(np.pi)
    assert np.abs(marg_p - expected).max() < 1e-10


def test_point_sampler_matches_dense_grid(spinor_factory):
    """Direct quadrature sampling agrees with the dense chirp pipeline."""
    s = spinor_factory(seed=8)
    w = wigner_vector(s)
    qs = w.grid.coords(0)[30:100:17]
    ps = w.grid.coords(1)[20:110:23]
    pts = np.array([(q, p) for q in qs for p in ps])
    direct = wigner_point_vector(s, pts)
    k = 0
    for iq in range(30, 100, 17):
        for ip in range(20, 110, 23):
            assert np.abs(direct[:, k] - w.values[:, iq, ip]).max() < 1e-10
            k += 1


def test_husimi_ground_and_coherent(grid1):
    h = husimi_vector(SpinorField.spin_up(oscillator_eigenstate(0, grid1)))
    q, p = _phase_mesh(h.grid)
    assert np.abs(h.values[2] - np.exp(-(q**2 + p**2) / 2)).max() < 1e-12
    assert h.normalization_mass() == pytest.approx(1.0, abs=1e-10)

    alpha = 0.8 + 0.5j
    hc = husimi_vector(SpinorField.spin_up(coherent_state(alpha, grid1)))
    q0, p0 = np.sqrt(2) * alpha.real, np.sqrt(2) * alpha.imag
    expected = np.exp(-((q - q0) ** 2 + (p - p0) ** 2) / 2)
    assert np.abs(hc.values[2] - expected).max() < 1e-10


def test_husimi_nonnegative(spinor_factory):
    s = spinor_factory(seed=31)
    h = husimi_vector(s)
    assert h.values[2].min() >= -1e-12
    assert h.values[3].min() >= -1e-12
    # components 1, 2 are probabilities of spin projections: nonnegative too
    assert h.values[0].min() >= -1e-12
    assert h.values[1].min() >= -1e-12


def test_smoothing_bridge(spinor_factory):
    """Gaussian smoothing of W reproduces the directly computed Husimi."""
    s = spinor_factory(seed=40)
    w = wigner_vector(s)
    h_direct = husimi_vector(s)
    h_smooth = smooth_wigner_to_husimi(w)
    assert np.abs(h_smooth.values - h_direct.values).max() < 1e-8
    assert h_smooth.kind == "husimi"


@pytest.mark.parametrize("n", [0, 2, 4])
def test_deconvolution_round_trip(grid1, n):
    """Smoothing after deconvolution restores the Husimi field exactly.

    This direction is the well-posed inverse pair: the spectral window
    cut by the deconvolution carries no Husimi weight above float noise.
    """
    q = husimi_vector(SpinorField.spin_up(oscillator_eigenstate(n, grid1)))
    back = smooth_wigner_to_husimi(deconvolve_husimi_to_wigner(q))
    assert np.abs(back.values - q.values).max() < 1e-6


def test_deconvolution_recovers_wigner(grid1):
    """Direct Wigner recovery is limited by the spectral tail outside the
    amplification window: tight for low levels, ~1e-4 envelope by n = 4."""
    for n, bound in ((0, 1e-6), (1, 1e-6), (4, 5e-4)):
        s = SpinorField.spin_up(oscillator_eigenstate(n, grid1))
        back = deconvolve_husimi_to_wigner(husimi_vector(s))
        w = wigner_vector(s)
        assert np.abs(back.values - w.values).max() < bound


def test_deconvolution_ill_posed_on_noise(grid2, rng):
    noisy = PhaseField4(grid2, np.abs(rng.normal(size=(4,) + grid2.shape)),
                        kind="husimi")
    with pytest.raises(IllPosedDeconvolutionError) as err:
        deconvolve_husimi_to_wigner(noisy, cutoff=12.0)
    assert err.value.diagnostic["cutoff"] == 12.0


def test_bridge_kind_guards(grid1):
    w = wigner_vector(SpinorField.spin_up(oscillator_eigenstate(0, grid1)))
    h = smooth_wigner_to_husimi(w)
    with pytest.raises(ContractError):
        smooth_wigner_to_husimi(h)
    with pytest.raises(ContractError):
        deconvolve_husimi_to_wigner(w)


def test_weyl_reconstruct_pure_state(grid1):
    psi = oscillator_eigenstate(2, grid1)
    w = wigner_vector(SpinorField.spin_up(psi))
    ker = weyl_reconstruct(w)
    n = w.grid.axes[0].count
    stride = grid1.axes[0].count // n
    outer = np.outer(psi.values[::stride], np.conj(psi.values[::stride]))
    assert np.abs(ker.kernel[0, 0] - outer).max() < 1e-6
    assert np.abs(ker.kernel[1, 1]).max() < 1e-10
    assert abs(ker.trace() - 1.0) < 1e-8


def test_symplectic_pullback_moves_coherent_peak(grid1):
    alpha = 0.9 + 0.0j  # center (sqrt(2) * 0.9, 0)
    w = wigner_vector(SpinorField.spin_up(coherent_state(alpha, grid1)))
    theta = np.pi / 2
    rot = np.array([[np.cos(theta), np.sin(theta)],
                    [-np.sin(theta), np.cos(theta)]])
    moved = symplectic_pullback(w, rot)
    dens = moved.values[2]
    iq, ip = np.unravel_index(np.argmax(dens), dens.shape)
    center = (moved.grid.coords(0)[iq], moved.grid.coords(1)[ip])
    expected = np.linalg.inv(rot) @ np.array([np.sqrt(2) * 0.9, 0.0])
    assert abs(center[0] - expected[0]) < 0.15
    assert abs(center[1] - expected[1]) < 0.15


def test_symplectic_pullback_ground_rotation_invariance(grid1):
    w = wigner_vector(SpinorField.spin_up(oscillator_eigenstate(0, grid1)))
    rot = np.array([[np.cos(0.8), np.sin(0.8)], [-np.sin(0.8), np.cos(0.8)]])
    moved = symplectic_pullback(w, rot)
    assert np.abs(moved.values - w.values).max() < 1e-10


def test_phase_field_guards(grid1, grid2):
    with pytest.raises(ContractError):
        PhaseField4(Grid.default_1d(), np.zeros((4, 256)), kind="wigner")
    with pytest.raises(ContractError):
        PhaseField4(grid2, np.zeros((4,) + grid2.shape), kind="glauber")
    with pytest.raises(ContractError):
        PhaseField4(grid2, np.zeros((3,) + grid2.shape), kind="wigner")
