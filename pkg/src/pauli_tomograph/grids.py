"""Uniform periodic grids and the field/state containers built on them.

Conventions used everywhere in the package:
  * axes are uniform, right endpoint excluded (FFT convention), so
    spacing = (max - min) / count;
  * axes that feed spectral transforms must have power-of-two counts;
  * natural units hbar = m = omega = 1.

All containers are immutable after construction (arrays are frozen), so every
operation in the package is a pure function and safe to call from any thread.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError, ContractError

NORM_TOL = 1e-10


def _frozen(values, dtype):
    arr = np.ascontiguousarray(values, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Axis:
    """One uniform axis: `count` points `min, min+spacing, ...` (max excluded)."""

    min: float
    count: int
    spacing: float

    def __post_init__(self):
        if self.count <= 0:
            raise ContractError("axis count must be a positive integer")
        if not np.isfinite(self.min) or not np.isfinite(self.spacing) or self.spacing <= 0:
            raise ContractError("axis min/spacing must be finite, spacing > 0")

    @classmethod
    def span(cls, lo, hi, count):
        if hi <= lo:
            raise ContractError("axis needs max > min")
        return cls(float(lo), int(count), (float(hi) - float(lo)) / int(count))

    @property
    def max(self):
        return self.min + self.count * self.spacing

    @property
    def is_power_of_two(self):
        return self.count & (self.count - 1) == 0

    def contains(self, x):
        """Pointwise membership in the covered span [min, max)."""
        x = np.asarray(x, dtype=np.float64)
        return (x >= self.min) & (x < self.max)

    def coords(self):
        return self.min + self.spacing * np.arange(self.count)

    def wavenumbers(self):
        """Angular wavenumbers 2*pi*fftfreq matching numpy FFT layout."""
        return 2.0 * np.pi * np.fft.fftfreq(self.count, d=self.spacing)

    def nyquist_wavenumber(self):
        return np.pi / self.spacing


@dataclass(frozen=True)
class Grid:
    """Cartesian product of axes, row-major value layout."""

    axes: tuple

    def __post_init__(self):
        if not self.axes:
            raise ContractError("grid needs at least one axis")
        object.__setattr__(self, "axes", tuple(self.axes))

    @classmethod
    def regular(cls, lo, hi, count, ndim=1):
        return cls(tuple(Axis.span(lo, hi, count) for _ in range(ndim)))

    @classmethod
    def default_1d(cls):
        return cls.regular(-8.0, 8.0, 256)

    @classmethod
    def default_2d(cls):
        return cls.regular(-8.0, 8.0, 128, ndim=2)

    @property
    def ndim(self):
        return len(self.axes)

    @property
    def shape(self):
        return tuple(ax.count for ax in self.axes)

    @property
    def cell_volume(self):
        return float(np.prod([ax.spacing for ax in self.axes]))

    def coords(self, i):
        return self.axes[i].coords()

    def wavenumbers(self, i):
        return self.axes[i].wavenumbers()

    def meshgrid(self):
        return np.meshgrid(*(ax.coords() for ax in self.axes), indexing="ij")

    def require_spectral(self):
        for i, ax in enumerate(self.axes):
            if not ax.is_power_of_two:
                raise CapabilityError(
                    f"axis {i} has {ax.count} points; spectral transforms need a power of two"
                )
        return self


def _check_field_values(grid, values, dtype):
    arr = np.ascontiguousarray(values, dtype=dtype)
    if arr.shape != grid.shape:
        raise ContractError(f"values shape {arr.shape} does not match grid shape {grid.shape}")
    if not np.all(np.isfinite(arr.view(np.float64) if dtype == np.complex128 else arr)):
        raise ContractError("field contains non-finite entries")
    return _frozen(arr, dtype)


@dataclass(frozen=True)
class ComplexField:
    """Complex-valued function sampled on a grid (wavefunctions and kernels)."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _check_field_values(self.grid, self.values, np.complex128))

    def with_values(self, values):
        return ComplexField(self.grid, values)

    def norm_squared(self):
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.cell_volume)

    def inner(self, other):
        """Quadrature of conj(self) * other (shared grid required)."""
        if other.grid != self.grid:
            raise ContractError("inner product needs fields on the same grid")
        return complex(np.vdot(self.values, other.values) * self.grid.cell_volume)

    def normalized(self):
        n2 = self.norm_squared()
        if n2 <= 0.0:
            raise ContractError("cannot normalize a zero field")
        return self.with_values(self.values / np.sqrt(n2))


@dataclass(frozen=True)
class SpinorField:
    """Two-component spinor wavefunction: up and down fields on one grid."""

    up: ComplexField
    down: ComplexField

    def __post_init__(self):
        if self.up.grid != self.down.grid:
            raise ContractError("spinor components must share a grid")
        if abs(self.norm_squared() - 1.0) > NORM_TOL:
            raise ContractError(
                f"spinor squared norm {self.norm_squared():.3e} differs from 1 beyond {NORM_TOL}"
            )

    @classmethod
    def normalized(cls, up_values, down_values, grid):
        """Build a spinor from raw component samples, normalizing jointly."""
        up = np.asarray(up_values, dtype=np.complex128)
        down = np.asarray(down_values, dtype=np.complex128)
        n2 = (np.sum(np.abs(up) ** 2) + np.sum(np.abs(down) ** 2)) * grid.cell_volume
        if n2 <= 0.0:
            raise ContractError("cannot normalize a zero spinor")
        s = 1.0 / np.sqrt(n2)
        return cls(ComplexField(grid, up * s), ComplexField(grid, down * s))

    @classmethod
    def spin_up(cls, psi):
        zero = np.zeros_like(psi.values)
        return cls(psi.normalized(), ComplexField(psi.grid, zero))

    @property
    def grid(self):
        return self.up.grid

    def norm_squared(self):
        return self.up.norm_squared() + self.down.norm_squared()

    def spin_density_matrix(self):
        """Reduced 2x2 spin matrix obtained by tracing out space."""
        dv = self.grid.cell_volume
        rho = np.empty((2, 2), dtype=np.complex128)
        comps = (self.up.values, self.down.values)
        for a in range(2):
            for b in range(2):
                rho[a, b] = np.sum(comps[a] * np.conj(comps[b])) * dv
        return rho


@dataclass(frozen=True)
class StateEnsemble:
    """Low-rank mixed state: weights w_k >= 0 summing to 1 over spinor members."""

    weights: np.ndarray
    members: tuple

    MAX_RANK = 16

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or len(self.members) != w.size:
            raise ContractError("one weight per ensemble member required")
        if w.size == 0 or w.size > self.MAX_RANK:
            raise ContractError(f"ensemble rank must be in 1..{self.MAX_RANK}")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ContractError("weights must be nonnegative and sum to 1")
        g = self.members[0].grid
        for m in self.members:
            if m.grid != g:
                raise ContractError("ensemble members must share a grid")
        object.__setattr__(self, "weights", _frozen(w, np.float64))
        object.__setattr__(self, "members", tuple(self.members))

    @classmethod
    def pure(cls, spinor):
        return cls(np.array([1.0]), (spinor,))

    @property
    def grid(self):
        return self.members[0].grid

    def spin_density_matrix(self):
        return sum(
            w * m.spin_density_matrix() for w, m in zip(self.weights, self.members)
        )


def as_ensemble(state):
    """Accept a SpinorField or StateEnsemble and return a StateEnsemble."""
    if isinstance(state, StateEnsemble):
        return state
    if isinstance(state, SpinorField):
        return StateEnsemble.pure(state)
    raise ContractError(f"expected SpinorField or StateEnsemble, got {type(state).__name__}")


@dataclass(frozen=True)
class SpinDensityField:
    """Dense density kernel rho[j, k, x, x'] on a 1D spatial grid.

    Spin indices j, k run over (up, down); the spatial kernel of each block is
    an (N, N) array over the grid coordinates.
    """

    grid: Grid
    kernel: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.grid.ndim != 1:
            raise ContractError("dense density kernels are supported on 1D grids only")
        n = self.grid.shape[0]
        arr = np.ascontiguousarray(self.kernel, dtype=np.complex128)
        if arr.shape != (2, 2, n, n):
            raise ContractError(f"kernel shape {arr.shape} must be (2, 2, {n}, {n})")
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ContractError("kernel contains non-finite entries")
        object.__setattr__(self, "kernel", _frozen(arr, np.complex128))

    @classmethod
    def from_ensemble(cls, state):
        ens = as_ensemble(state)
        if ens.grid.ndim != 1:
            raise ContractError("from_ensemble builds dense kernels for 1D grids only")
        n = ens.grid.shape[0]
        ker = np.zeros((2, 2, n, n), dtype=np.complex128)
        for w, m in zip(ens.weights, ens.members):
            comps = (m.up.values, m.down.values)
            for a in range(2):
                for b in range(2):
                    ker[a, b] += w * np.outer(comps[a], np.conj(comps[b]))
        return cls(ens.grid, ker)

    @property
    def h(self):
        return self.grid.axes[0].spacing

    def trace(self):
        diag = np.diagonal(self.kernel[0, 0]) + np.diagonal(self.kernel[1, 1])
        return complex(np.sum(diag) * self.h)

    def hermiticity_error(self):
        swapped = np.conj(np.transpose(self.kernel, (1, 0, 3, 2)))
        return float(np.max(np.abs(self.kernel - swapped)))

    def spin_block(self):
        """2x2 matrix of spatial traces (reduced spin density matrix)."""
        rho = np.empty((2, 2), dtype=np.complex128)
        for a in range(2):
            for b in range(2):
                rho[a, b] = np.sum(np.diagonal(self.kernel[a, b])) * self.h
        return rho

    def purity(self):
        """Tr rho^2 = sum_{ab} int rho_{ab}(x, x') rho_{ba}(x', x) dx dx'."""
        acc = 0.0 + 0.0j
        for a in range(2):
            for b in range(2):
                acc += np.sum(self.kernel[a, b] * self.kernel[b, a].T) * self.h**2
        return float(np.real(acc))

    def frobenius_distance(self, other):
        """Continuum Frobenius (L2 kernel) distance, quadrature weighted."""
        if other.grid != self.grid:
            raise ContractError("kernels must share a grid")
        diff = self.kernel - other.kernel
        return float(np.sqrt(np.sum(np.abs(diff) ** 2) * self.h**2))

    def spatial_eigenvalues(self, spin_index, k=8):
        """Leading eigenvalues of one spatial block, quadrature weighted."""
        block = self.kernel[spin_index, spin_index] * self.h
        vals = np.linalg.eigvalsh((block + block.conj().T) / 2.0)
        return np.sort(vals)[::-1][:k]

    def min_eigenvalue(self):
        """Smallest eigenvalue of the full (2N x 2N) discretized operator."""
        n = self.grid.shape[0]
        big = np.block(
            [
                [self.kernel[0, 0], self.kernel[0, 1]],
                [self.kernel[1, 0], self.kernel[1, 1]],
            ]
        ) * self.h
        big = (big + big.conj().T) / 2.0
        return float(np.linalg.eigvalsh(big)[0])

    def to_ensemble(self, weight_floor=1e-10):
        """Spectral decomposition into a weighted ensemble of spinor states.

        Eigenpairs of the (2N x 2N) discretized operator with weight above
        `weight_floor` become members; the kept weights are renormalized to
        unit sum, redistributing the discarded spectral tail.
        """
        n = self.grid.shape[0]
        big = np.block(
            [
                [self.kernel[0, 0], self.kernel[0, 1]],
                [self.kernel[1, 0], self.kernel[1, 1]],
            ]
        ) * self.h
        big = (big + big.conj().T) / 2.0
        vals, vecs = np.linalg.eigh(big)
        order = np.argsort(vals)[::-1]
        weights = []
        members = []
        scale = 1.0 / np.sqrt(self.h)
        for idx in order[: StateEnsemble.MAX_RANK]:
            if vals[idx] < weight_floor:
                break
            vec = vecs[:, idx] * scale
            members.append(
                SpinorField(
                    ComplexField(self.grid, vec[:n]),
                    ComplexField(self.grid, vec[n:]),
                )
            )
            weights.append(float(vals[idx]))
        if not members:
            raise ContractError("kernel has no spectral weight above the floor")
        weights = np.asarray(weights)
        return StateEnsemble(weights / weights.sum(), tuple(members))

    def project_fock(self, basis_fields):
        """Matrix elements <m|rho_{ab}|n> for a list of basis ComplexFields.

        Returns an array of shape (2, 2, nb, nb) with nb = len(basis_fields).
        """
        b = np.stack([f.values for f in basis_fields])
        out = np.empty((2, 2, b.shape[0], b.shape[0]), dtype=np.complex128)
        for i in range(2):
            for j in range(2):
                out[i, j] = np.conj(b) @ self.kernel[i, j] @ b.T * self.h**2
        return out
