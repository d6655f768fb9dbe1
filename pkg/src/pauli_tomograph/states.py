"""Harmonic-oscillator eigenstates and coherent states on 1D grids.

Units hbar = m = omega = 1 throughout, so psi_0(x) = pi^(-1/4) exp(-x^2/2)
and alpha = (q + i p) / sqrt(2).
"""

import numpy as np

from .errors import CapabilityError, ContractError, NumericDomainError
from .grids import ComplexField

MAX_FOCK = 60  # Hermite recurrence stays accurate up to here on double floats
# Levels through n = 10 on the default [-8, 8) grid must construct (their edge
# amplitude is ~2e-7), so the envelope guard sits at 1e-6.
BOUNDARY_AMPLITUDE = 1e-6


def _require_1d(grid):
    if grid.ndim != 1:
        raise ContractError("state builders need a 1D grid")
    return grid.coords(0)


def _check_support(values, what):
    edge = max(abs(values[0]), abs(values[-1]))
    if edge > BOUNDARY_AMPLITUDE:
        raise NumericDomainError(
            f"{what} has boundary amplitude {edge:.3e} > {BOUNDARY_AMPLITUDE}; widen the grid"
        )


def hermite_functions(n_max, x):
    """Rows 0..n_max of the orthonormal Hermite functions at points x.

    Uses the normalized recurrence
        psi_n = sqrt(2/n) x psi_{n-1} - sqrt((n-1)/n) psi_{n-2},
    which avoids the factorial overflow of the raw Hermite polynomials.
    """
    if n_max > MAX_FOCK:
        raise CapabilityError(f"oscillator level {n_max} above supported bound {MAX_FOCK}")
    x = np.asarray(x, dtype=np.float64)
    out = np.empty((n_max + 1,) + x.shape, dtype=np.float64)
    out[0] = np.pi ** (-0.25) * np.exp(-0.5 * x**2)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for n in range(2, n_max + 1):
        out[n] = np.sqrt(2.0 / n) * x * out[n - 1] - np.sqrt((n - 1.0) / n) * out[n - 2]
    return out


def oscillator_eigenstate(n, grid):
    """Normalized n-th oscillator eigenfunction sampled on a 1D grid."""
    if n < 0 or n != int(n):
        raise ContractError("oscillator level must be a nonnegative integer")
    if n > MAX_FOCK:
        raise CapabilityError(f"oscillator level {n} above supported bound {MAX_FOCK}")
    x = _require_1d(grid)
    values = hermite_functions(int(n), x)[int(n)]
    _check_support(values, f"oscillator eigenstate n={n}")
    return ComplexField(grid, values.astype(np.complex128))


def coherent_state(alpha, grid):
    """Coherent state |alpha>, alpha = (q0 + i p0)/sqrt(2), on a 1D grid.

    Phase fixed by <x|alpha> = pi^(-1/4) exp(-(x-q0)^2/2 + i p0 x - i p0 q0 / 2),
    i.e. the displaced vacuum with zero overall phase at the packet center.
    """
    alpha = complex(alpha)
    x = _require_1d(grid)
    q0 = np.sqrt(2.0) * alpha.real
    p0 = np.sqrt(2.0) * alpha.imag
    values = np.pi ** (-0.25) * np.exp(-0.5 * (x - q0) ** 2 + 1j * p0 * x - 0.5j * p0 * q0)
    _check_support(values, f"coherent state alpha={alpha}")
    return ComplexField(grid, values)
