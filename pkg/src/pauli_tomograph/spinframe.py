"""The constant spin-1/2 measurement frame.

Four projector-valued weights U_1..U_4 (spin +1/2 along the three axes, plus
spin -1/2 along the third) dequantize a 2x2 density matrix into a probability
4-vector; the dual matrix of 4-vectors D reassembles the matrix exactly.
Every constant is an exact half or integer, so the duality holds to machine
epsilon in any evaluation order.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractError

# dequantizer vector: U1 = (I+sx)/2, U2 = (I+sy)/2, U3 = diag(1,0), U4 = diag(0,1)
U_MATRICES = np.array(
    [
        [[0.5, 0.5], [0.5, 0.5]],
        [[0.5, -0.5j], [0.5j, 0.5]],
        [[1.0, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [0.0, 1.0]],
    ],
    dtype=np.complex128,
)

# quantizer: rho_{jk} = sum_l D[j,k,l] p_l
D_TENSOR = np.array(
    [
        [
            [0.0, 0.0, 1.0, 0.0],
            [1.0, -1.0j, -0.5 + 0.5j, -0.5 + 0.5j],
        ],
        [
            [1.0, 1.0j, -0.5 - 0.5j, -0.5 - 0.5j],
            [0.0, 0.0, 0.0, 1.0],
        ],
    ],
    dtype=np.complex128,
)

U_MATRICES.flags.writeable = False
D_TENSOR.flags.writeable = False

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class SpinFrame:
    """Constant dequantizer/quantizer pair; a singleton in practice."""

    U: np.ndarray = U_MATRICES
    D: np.ndarray = D_TENSOR


FRAME = SpinFrame()


@dataclass(frozen=True)
class SpinProbabilityVector:
    """Probabilities (p1, p2, p3, p4) of spin +1/2 along axes 1..3 and -1/2 along 3."""

    p: tuple

    def __post_init__(self):
        p = tuple(float(v) for v in self.p)
        if len(p) != 4 or not all(np.isfinite(p)):
            raise ContractError("spin probability vector needs four finite entries")
        object.__setattr__(self, "p", p)

    @property
    def trace(self):
        return self.p[2] + self.p[3]

    def as_array(self):
        return np.array(self.p)

    def purity_bound_violation(self):
        """Max violation of the pure-state bounds |2p_i - p3 - p4| <= 2 sqrt(p3 p4)."""
        p1, p2, p3, p4 = self.p
        rad = 2.0 * np.sqrt(max(p3, 0.0) * max(p4, 0.0))
        return max(abs(2 * p1 - p3 - p4) - rad, abs(2 * p2 - p3 - p4) - rad, 0.0)


def spin_dequantize(rho):
    """Probability 4-vector p_j = Tr(rho U_j) of a Hermitian 2x2 matrix."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (2, 2):
        raise ContractError("spin density matrix must be 2x2")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
        raise ContractError("spin density matrix is not Hermitian within 1e-12")
    p = [np.trace(rho @ U_MATRICES[l]).real for l in range(4)]
    return SpinProbabilityVector(tuple(p))


def spin_quantize(p):
    """Hermitian 2x2 matrix rho_{jk} = sum_l D[j,k,l] p_l (linear, no clipping).

    Positivity is deliberately not enforced; evolution intermediates must pass
    through unchanged. Use min_eigenvalue diagnostics where positivity matters.
    """
    if isinstance(p, SpinProbabilityVector):
        vec = p.as_array()
    else:
        vec = np.asarray(p, dtype=np.float64)
        if vec.ndim < 1 or vec.shape[0] != 4 or not np.all(np.isfinite(vec)):
            raise ContractError(
                "spin_quantize needs four finite entries (leading axis of 4)"
            )
    if vec.ndim == 1:
        return D_TENSOR @ vec
    # pointwise over trailing field axes
    return np.einsum("jkl,l...->jk...", D_TENSOR, vec)


def vector_from_cross(upup, downdown, updown):
    """Four probability components from density-matrix entry fields.

    upup, downdown are the real diagonal fields rho_uu, rho_dd; updown is the
    complex off-diagonal rho_ud. This is the dequantizer applied pointwise:
        w1 = (rho_uu + rho_dd)/2 + Re rho_ud
        w2 = (rho_uu + rho_dd)/2 - Im rho_ud
        w3 = rho_uu,  w4 = rho_dd.
    Returns an array with a leading component axis of size 4.
    """
    upup = np.asarray(upup)
    downdown = np.asarray(downdown)
    updown = np.asarray(updown)
    half = 0.5 * (upup + downdown)
    return np.stack(
        [half + updown.real, half - updown.imag, upup.real + 0 * half, downdown.real + 0 * half]
    )


def vector_from_pair(up, down):
    """Probability components of a pure pointwise spin state (up, down)."""
    up = np.asarray(up)
    down = np.asarray(down)
    return vector_from_cross(np.abs(up) ** 2, np.abs(down) ** 2, up * np.conj(down))


def cross_from_vector(w):
    """Inverse of vector_from_cross: (rho_uu, rho_dd, rho_ud) fields from w1..w4."""
    w = np.asarray(w)
    upup = w[2]
    downdown = w[3]
    half = 0.5 * (upup + downdown)
    updown = (w[0] - half) - 1j * (w[1] - half)
    return upup, downdown, updown


def frame_selfcheck(n_random=1000, seed=2024):
    """Verify both duality directions; returns a report dict with max deviations.

    Checks quantize(dequantize(rho)) = rho on the Hermitian basis {I, sx, sy, sz}
    and on a random Hermitian sweep, plus the tensor identity
    sum_l D[j,k,l] (U_l)_{nm} = delta_{jm} delta_{kn}.
    """
    basis = {
        "I": np.eye(2, dtype=np.complex128),
        "sx": np.array([[0, 1], [1, 0]], dtype=np.complex128),
        "sy": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
        "sz": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    }
    per_basis = {}
    for name, mat in basis.items():
        back = spin_quantize(spin_dequantize(mat))
        per_basis[name] = float(np.max(np.abs(back - mat)))

    tensor = np.einsum("jkl,lnm->jkmn", D_TENSOR, U_MATRICES)
    ident = np.einsum("jm,kn->jkmn", np.eye(2), np.eye(2))
    tensor_dev = float(np.max(np.abs(tensor - ident)))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_random):
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        rho = (g + g.conj().T) / 2.0
        back = spin_quantize(spin_dequantize(rho))
        worst = max(worst, float(np.max(np.abs(back - rho))))

    return {
        "basis_deviation": per_basis,
        "tensor_identity_deviation": tensor_dev,
        "random_sweep_deviation": worst,
        "max_deviation": max(max(per_basis.values()), tensor_dev, worst),
    }
