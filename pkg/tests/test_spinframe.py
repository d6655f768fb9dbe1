"""Dequantizer/quantizer duality and the pointwise spin-weight algebra."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_tomograph import (
    ContractError,
    SpinProbabilityVector,
    cross_from_vector,
    frame_selfcheck,
    spin_dequantize,
    spin_quantize,
    vector_from_cross,
    vector_from_pair,
)
from pauli_tomograph.spinframe import D_TENSOR, U_MATRICES

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)


def test_dequantizer_matrices():
    assert np.array_equal(U_MATRICES[0], (np.eye(2) + SX) / 2)
    assert np.array_equal(U_MATRICES[1], (np.eye(2) + SY) / 2)
    assert np.array_equal(U_MATRICES[2], np.diag([1.0, 0.0]))
    assert np.array_equal(U_MATRICES[3], np.diag([0.0, 1.0]))


def test_quantizer_tensor_identity():
    """sum_l D[j,k,l] (U_l)_{nm} = delta_{jm} delta_{kn} holds exactly."""
    tensor = np.einsum("jkl,lnm->jkmn", D_TENSOR, U_MATRICES)
    ident = np.einsum("jm,kn->jkmn", np.eye(2), np.eye(2))
    assert np.array_equal(tensor, ident)


def test_spin_up_probabilities():
    p = spin_dequantize(np.diag([1.0, 0.0]))
    assert p.p == (0.5, 0.5, 1.0, 0.0)
    assert p.trace == 1.0
    assert p.purity_bound_violation() == 0.0


def test_duality_on_random_hermitian(rng):
    for _ in range(100):
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        rho = (g + g.conj().T) / 2
        back = spin_quantize(spin_dequantize(rho))
        assert np.abs(back - rho).max() < 1e-14


def test_frame_selfcheck_report():
    report = frame_selfcheck(n_random=200, seed=11)
    assert report["max_deviation"] < 1e-14
    assert report["tensor_identity_deviation"] == 0.0


def test_dequantize_guards():
    with pytest.raises(ContractError):
        spin_dequantize(np.eye(3))
    with pytest.raises(ContractError):
        spin_dequantize(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ContractError):
        spin_quantize([1.0, 2.0, 3.0])
    with pytest.raises(ContractError):
        SpinProbabilityVector((0.1, 0.2, np.inf, 0.3))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-2.0, 2.0), min_size=8, max_size=8))
def test_pointwise_algebra_round_trip(raw):
    up = complex(raw[0], raw[1])
    down = complex(raw[2], raw[3])
    w = vector_from_pair(np.array([up]), np.array([down]))
    uu, dd, ud = cross_from_vector(w)
    assert abs(uu[0] - abs(up) ** 2) < 1e-12
    assert abs(dd[0] - abs(down) ** 2) < 1e-12
    assert abs(ud[0] - up * np.conj(down)) < 1e-12


def test_vector_from_cross_matches_dequantizer(rng):
    """The pointwise weight formula is the dequantizer applied entrywise."""
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = (g + g.conj().T) / 2
    w = vector_from_cross(rho[0, 0].real, rho[1, 1].real, rho[0, 1])
    assert np.allclose(w.ravel(), spin_dequantize(rho).as_array(), atol=1e-14)


def test_quantize_pointwise_fields(rng):
    w = rng.normal(size=(4, 5, 6))
    out = spin_quantize(w)
    assert out.shape == (2, 2, 5, 6)
    one = spin_quantize(w[:, 2, 3])
    assert np.allclose(out[:, :, 2, 3], one)


def test_purity_bound_flags_impossible_vectors():
    # p1 = 1 with p3 = p4 = 1/2 requires |2 - 1| <= 2 sqrt(1/4) = 1: tight
    tight = SpinProbabilityVector((1.0, 0.5, 0.5, 0.5))
    assert tight.purity_bound_violation() == pytest.approx(0.0, abs=1e-15)
    broken = SpinProbabilityVector((1.2, 0.5, 0.5, 0.5))
    assert broken.purity_bound_violation() > 0.3
