"""Evolution machinery: spin rotation, linear phase-space flows, and the
representation-level propagators built from them.

For a homogeneous magnetic field the spin coupling matrix S is constant
and commutes with the spatial transport, so every propagator splits
exactly into a classical flow pullback (or its metaplectic realization
on wavefunctions) composed with the closed-form spin matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import (
    CapabilityError,
    ContractError,
    NumericDomainError,
)
from .grids import (
    ComplexField,
    Grid,
    SpinorField,
    StateEnsemble,
    _frozen,
    as_ensemble,
)
from .quasidist import EDGE_DENSITY_TOL, PhaseField4, plane_pullback_values
from .spectral import (
    antiderivative_values,
    derivative_values,
    frft_namias_values,
    translate_values,
)
from .spinframe import SpinProbabilityVector
from .tomography import TomogramField4, SymplecticSample

FLOW_KINDS = ("free", "oscillator", "landau")

# Spin-rotation stencil: d/dt of the probability 4-vector for a field
# along the z axis, in units of omega0.
_SPIN_STENCIL = np.array(
    [
        [0.0, 1.0, -0.5, -0.5],
        [-1.0, 0.0, 0.5, 0.5],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ]
)


def _finite_scalar(value, name):
    value = float(value)
    if not np.isfinite(value):
        raise ContractError(f"{name} must be finite")
    return value


@dataclass(frozen=True)
class SpinGenerator:
    """Generator S of the spin-probability evolution dP/dt = S P.

    omega0 is the rotation rate about the field axis.  The top-left 2x2
    block is always antisymmetric with zero diagonal; rows 3 and 4 vanish
    exactly when the field points along the z axis (axial case).
    """

    matrix: np.ndarray
    omega0: float

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.shape != (4, 4) or not np.all(np.isfinite(m)):
            raise ContractError("spin generator must be a finite 4x4 matrix")
        if abs(m[0, 0]) > 1e-14 or abs(m[1, 1]) > 1e-14:
            raise ContractError("spin generator diagonal head must vanish")
        if abs(m[0, 1] + m[1, 0]) > 1e-12:
            raise ContractError("spin generator head block must be antisymmetric")
        object.__setattr__(self, "matrix", _frozen(m, np.float64))
        object.__setattr__(self, "omega0", _finite_scalar(self.omega0, "omega0"))

    def is_axial(self) -> bool:
        """True when rows 3 and 4 vanish (field along the z axis)."""
        return bool(np.all(self.matrix[2:] == 0.0))


@dataclass(frozen=True)
class SpinPropagator:
    """Closed-form spin rotation Pi(t) acting on probability 4-vectors."""

    matrix: np.ndarray
    t: float

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.shape != (4, 4) or not np.all(np.isfinite(m)):
            raise ContractError("spin propagator must be a finite 4x4 matrix")
        object.__setattr__(self, "matrix", _frozen(m, np.float64))
        object.__setattr__(self, "t", _finite_scalar(self.t, "t"))


@dataclass(frozen=True)
class LinearFlow:
    """Symplectic matrix A(t) acting on stacked (q, p) phase-space points."""

    matrix: np.ndarray
    kind: str
    t: float

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] % 2:
            raise ContractError("flow matrix must be square of even size")
        n = a.shape[0] // 2
        j = np.block(
            [[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]]
        )
        if np.max(np.abs(a.T @ j @ a - j)) > 1e-12:
            raise ContractError("flow matrix is not symplectic within 1e-12")
        if abs(np.linalg.det(a) - 1.0) > 1e-12:
            raise ContractError("flow matrix must have unit determinant")
        object.__setattr__(self, "matrix", _frozen(a, np.float64))
        object.__setattr__(self, "t", _finite_scalar(self.t, "t"))

    @property
    def dims(self) -> int:
        return self.matrix.shape[0] // 2


@dataclass(frozen=True)
class PropagatorBundle:
    """Spin propagator and classical flow taken at the same time."""

    spin: SpinPropagator
    flow: LinearFlow

    def __post_init__(self):
        if abs(self.spin.t - self.flow.t) > 1e-12:
            raise ContractError(
                f"bundle parts disagree in time: spin t={self.spin.t}, "
                f"flow t={self.flow.t}"
            )

    @property
    def t(self) -> float:
        return self.flow.t


def spin_generator_homogeneous(omega0: float) -> SpinGenerator:
    """Spin generator for a homogeneous field along the z axis."""
    omega0 = _finite_scalar(omega0, "omega0")
    return SpinGenerator(omega0 * _SPIN_STENCIL, omega0)


def spin_generator_from_field(field: np.ndarray, kappa: float) -> SpinGenerator:
    """Spin generator for a constant real magnetic field H.

    Calibrated so that H = (0, 0, H3) reproduces the axial generator with
    omega0 = 2 kappa H3; for general directions omega0 = 2 kappa |H| and
    rows 3, 4 are nonzero (the z-projection probabilities are no longer
    conserved).
    """
    h = np.asarray(field, dtype=np.float64)
    if h.shape != (3,) or not np.all(np.isfinite(h)):
        raise ContractError("magnetic field must be a finite real 3-vector")
    kappa = _finite_scalar(kappa, "kappa")
    h1, h2, h3 = h
    k = kappa
    s = np.array(
        [
            [0.0, 2 * k * h3, -k * (h2 + h3), k * (h2 - h3)],
            [-2 * k * h3, 0.0, k * (h1 + h3), k * (-h1 + h3)],
            [2 * k * h2, -2 * k * h1, k * (h1 - h2), k * (h1 - h2)],
            [-2 * k * h2, 2 * k * h1, k * (-h1 + h2), k * (-h1 + h2)],
        ]
    )
    return SpinGenerator(s, 2.0 * kappa * float(np.linalg.norm(h)))


def spin_propagator(omega0: float, t: float) -> SpinPropagator:
    """Closed-form propagator of the axial spin-probability equation.

    Rows 3 and 4 are constant (the z-projection probabilities are motion
    integrals); the head rotates by the angle omega0 t with affine terms
    keeping the probability normalization.
    """
    omega0 = _finite_scalar(omega0, "omega0")
    t = _finite_scalar(t, "t")
    c = np.cos(omega0 * t)
    s = np.sin(omega0 * t)
    matrix = np.array(
        [
            [c, s, 0.5 * (1 - c - s), 0.5 * (1 - c - s)],
            [-s, c, 0.5 * (1 - c + s), 0.5 * (1 - c + s)],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )
    return SpinPropagator(matrix, t)


def landau_flow_generator(omega: float) -> np.ndarray:
    """Hamiltonian vector field of the Landau-gauge motion on
    (q1, q2, p1, p2): q1' = p1 + omega q2, q2' = p2, p1' = 0,
    p2' = -q2 - omega p1."""
    omega = _finite_scalar(omega, "omega")
    return np.array(
        [
            [0.0, omega, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, -omega, 0.0],
        ]
    )


def classical_flow(kind: str, t: float, omega: float = -1.0,
                   dims: int = 1) -> LinearFlow:
    """Symplectic flow matrix for one of the supported linear motions.

    free: (q, p) -> (q + p t, p) per axis; oscillator: phase-space
    rotation by t; landau: exact matrix exponential of the Landau-gauge
    vector field (2D, charge sign carried by omega).
    """
    t = _finite_scalar(t, "t")
    if kind == "free":
        eye = np.eye(dims)
        a = np.block([[eye, t * eye], [np.zeros((dims, dims)), eye]])
    elif kind == "oscillator":
        if dims != 1:
            raise CapabilityError("oscillator flow is 1D")
        c, s = np.cos(t), np.sin(t)
        a = np.array([[c, s], [-s, c]])
    elif kind == "landau":
        if dims not in (1, 2):
            raise ContractError("landau flow acts on the two in-plane axes")
        a = expm(landau_flow_generator(omega) * t)
    else:
        raise ContractError(f"unknown flow kind {kind!r}")
    return LinearFlow(a, kind, t)


def propagator_bundle(kind: str, t: float, omega0: float = 0.0,
                      omega: float = -1.0, dims: int = 1) -> PropagatorBundle:
    """Spin and flow propagators of one motion, taken at the same time."""
    return PropagatorBundle(
        spin_propagator(omega0, t), classical_flow(kind, t, omega=omega, dims=dims)
    )


def spin_marginal_evolution(p0: SpinProbabilityVector, omega0: float,
                            t: float) -> SpinProbabilityVector:
    """Evolve a bare spin-probability vector: P(t) = Pi(t) P0."""
    pi = spin_propagator(omega0, t)
    return SpinProbabilityVector(tuple(pi.matrix @ p0.as_array()))


# ---------------------------------------------------------------------------
# distribution-level evolution
# ---------------------------------------------------------------------------

def evolve_wigner(field: PhaseField4, bundle: PropagatorBundle) -> PhaseField4:
    """Evolve a vector Wigner field: W(z, t) = Pi(t) W0(A(t)^{-1} z).

    The pullback along the inverse flow transports each component; the
    spin propagator then mixes the four components pointwise (constant
    spin coupling commutes with the transport, zero splitting error).
    """
    if field.kind != "wigner":
        raise ContractError("evolve_wigner expects a Wigner-kind field")
    if bundle.flow.dims != 1:
        raise CapabilityError(
            "dense Wigner evolution handles one spatial dimension; "
            "higher-dimensional flows act on states via the metaplectic "
            "propagators"
        )
    if bundle.flow.kind == "free":
        # Pure shear: row-by-row spectral translation q -> q - t p leaves
        # the zero mode untouched, so the mass is conserved exactly.
        shift = bundle.flow.t * field.grid.axes[1].coords()
        moved = translate_values(field.values, field.grid.axes[0].spacing,
                                 shift, axis=1)
    else:
        inverse = np.linalg.inv(bundle.flow.matrix)
        moved = plane_pullback_values(field.values, field.grid, inverse)
    values = np.einsum("jk,k...->j...", bundle.spin.matrix, np.real(moved))
    out = PhaseField4(field.grid, values, kind="wigner")
    if out.edge_density() > EDGE_DENSITY_TOL:
        raise NumericDomainError(
            f"evolved Wigner support reaches the grid boundary "
            f"(edge density {out.edge_density():.2e})"
        )
    return out


def _transported_angles(tomogram: TomogramField4, flow: LinearFlow):
    """Per-sample quadrature parameters after the Heisenberg map.

    The quadrature X = mu q + nu p evolves along (mu, nu) -> A^T (mu, nu),
    so the evolved tomogram at angle theta reads the initial one at the
    polar form of the transported pair.
    """
    at = flow.matrix.T
    c, s = np.cos(tomogram.thetas), np.sin(tomogram.thetas)
    mu = at[0, 0] * c + at[0, 1] * s
    nu = at[1, 0] * c + at[1, 1] * s
    r = np.hypot(mu, nu)
    phi = np.mod(np.arctan2(nu, mu), 2.0 * np.pi)
    return r, phi


def _profile_at_angle(tomogram: TomogramField4, xs: np.ndarray,
                      theta: float) -> np.ndarray:
    """Interpolated tomogram rows (4, len(xs)) at one arbitrary angle.

    Angle interpolation (trigonometric over the circular extension)
    happens first on the stored samples; the combined row is then
    evaluated once along X.
    """
    from .spectral import eval_trig_series

    axis = tomogram.grid.axes[0]
    hit = np.nonzero(
        np.abs(np.mod(tomogram.thetas - theta, 2.0 * np.pi)) < 1e-12
    )[0]
    if hit.size:
        row = tomogram.values[hit[0]]
    else:
        extended = tomogram._circular_extension()
        if extended is None:
            raise ContractError(
                "tomogram evolution needs uniform angle coverage of [0, pi) "
                "or [0, 2 pi) for angular interpolation"
            )
        m = extended.shape[0]
        coeff = np.fft.fft(extended, axis=0) / m
        orders = np.round(np.fft.fftfreq(m) * m).astype(int)
        phases = np.exp(1j * orders * theta)
        row = np.real(np.tensordot(phases, coeff, axes=(0, 0)))
    out = np.real(eval_trig_series(row, axis.min, axis.spacing, xs, axis=1))
    # beyond the stored span the density is negligible, not periodic
    return np.where(axis.contains(xs)[None, :], out, 0.0)


def evolve_tomogram(rep: str, tomogram: TomogramField4,
                    bundle: PropagatorBundle):
    """Evolve a tomogram by the flow-induced parameter map plus spin mixing.

    rep = "optical": returns the evolved TomogramField4 on the same
    (X, theta) samples, using w_t(X, theta) = Pi(t) (1/r) w_0(X/r, phi)
    with (r, phi) the polar form of A(t)^T (cos theta, sin theta).

    rep = "symplectic": returns a SymplecticEvolution whose sample(x, mu,
    nu) applies the same map at arbitrary quadrature parameters, e.g. the
    free flow sends M0(X, mu, nu) to M0(X, mu, nu + mu t).
    """
    if rep not in ("optical", "symplectic"):
        raise ContractError(f"unknown tomogram representation {rep!r}")
    if tomogram.grid.ndim != 1 or bundle.flow.dims != 1:
        raise CapabilityError(
            "tomogram evolution closes over the parameter domain only for "
            "one-dimensional flows; 2D pair tomograms do not form a closed "
            "family under axis-mixing flows"
        )
    if rep == "symplectic":
        return SymplecticEvolution(tomogram, bundle)

    xs = tomogram.grid.axes[0].coords()
    r_all, phi_all = _transported_angles(tomogram, bundle.flow)
    rows = []
    for r, phi in zip(r_all, phi_all):
        profile = _profile_at_angle(tomogram, xs / r, float(phi)) / r
        rows.append(profile)
    values = np.einsum("jk,nkx->njx", bundle.spin.matrix, np.stack(rows))
    out = TomogramField4(tomogram.grid, tomogram.thetas, values)
    if out.edge_density() > EDGE_DENSITY_TOL:
        raise NumericDomainError(
            "evolved tomogram support reaches the X boundary"
        )
    return out


@dataclass(frozen=True)
class SymplecticEvolution:
    """Deferred symplectic-tomogram evolution: samples M_t pointwise."""

    initial: TomogramField4
    bundle: PropagatorBundle

    def sample(self, x: float, mu: float, nu: float) -> SymplecticSample:
        from .tomography import symplectic_from_optical

        at = self.bundle.flow.matrix.T
        mu_t = at[0, 0] * mu + at[0, 1] * nu
        nu_t = at[1, 0] * mu + at[1, 1] * nu
        base = symplectic_from_optical(self.initial, x, mu_t, nu_t)
        value = self.bundle.spin.matrix @ base.value
        return SymplecticSample((x,), (mu,), (nu,), value)


# ---------------------------------------------------------------------------
# wavefunction-level propagators (metaplectic realizations)
# ---------------------------------------------------------------------------

def _oscillator_values(values: np.ndarray, grid: Grid, t: float,
                       axis: int) -> np.ndarray:
    """exp(-i t (p^2 + q^2) / 2) along one axis: phase times rotation."""
    ax = grid.axes[axis]
    out = frft_namias_values(values, t, ax.min, ax.spacing, axis=axis)
    return out * np.exp(-0.5j * t)


def _free_values(values: np.ndarray, grid: Grid, t: float) -> np.ndarray:
    """exp(-i t p^2 / 2) on every axis via Fourier multipliers."""
    out = np.asarray(values, dtype=np.complex128)
    for axis, ax in enumerate(grid.axes):
        k = ax.wavenumbers()
        shape = [1] * out.ndim
        shape[axis] = k.size
        spec = np.fft.fft(out, axis=axis)
        out = np.fft.ifft(spec * np.exp(-0.5j * t * k**2).reshape(shape),
                          axis=axis)
    return out


def _landau_values(values: np.ndarray, grid: Grid, t: float,
                   omega: float) -> np.ndarray:
    """Metaplectic Landau-gauge propagator on a 2D (q1, q2) wavefunction.

    In the mixed (k1, q2) representation the Hamiltonian is the shifted
    oscillator (p2^2 + (q2 + omega k1)^2) / 2 plus the free remainder
    (1 - omega^2) k1^2 / 2, all diagonal in k1: conjugate the oscillator
    propagator with translations by omega k1 row by row.
    """
    if grid.ndim != 2:
        raise ContractError("Landau propagation needs a 2D wavefunction")
    ax1, ax2 = grid.axes
    spec = np.fft.fft(np.asarray(values, dtype=np.complex128), axis=0)
    k1 = ax1.wavenumbers()
    shift = omega * k1
    spec = translate_values(spec, spacing=ax2.spacing, shift=shift, axis=1)
    spec = _oscillator_values(spec, grid, t, axis=1)
    spec = translate_values(spec, spacing=ax2.spacing, shift=-shift, axis=1)
    spec *= np.exp(-0.5j * t * (1.0 - omega**2) * k1**2)[:, None]
    return np.fft.ifft(spec, axis=0)


def evolve_state(state, kind: str, t: float, omega0: float = 0.0,
                 omega: float = -1.0):
    """Evolve a spinor state or ensemble under a supported flow plus spin.

    The spatial part uses the exact metaplectic propagator of the flow;
    the spin part multiplies the up/down components by exp(+-i omega0
    t / 2), which induces the closed-form spin propagator on every
    derived distribution.
    """
    t = _finite_scalar(t, "t")
    ensemble = as_ensemble(state)
    grid = ensemble.grid

    def spatial(values):
        if kind == "free":
            return _free_values(values, grid, t)
        if kind == "oscillator":
            if grid.ndim != 1:
                raise CapabilityError("oscillator propagation is 1D")
            return _oscillator_values(values, grid, t, axis=0)
        if kind == "landau":
            return _landau_values(values, grid, t, omega)
        raise ContractError(f"unknown flow kind {kind!r}")

    phase_up = np.exp(0.5j * omega0 * t)
    members = []
    for member in ensemble.members:
        up = ComplexField(grid, spatial(member.up.values) * phase_up)
        down = ComplexField(grid, spatial(member.down.values) / phase_up)
        members.append(SpinorField(up, down))
    if isinstance(state, SpinorField):
        return members[0]
    return StateEnsemble(ensemble.weights, tuple(members))


# ---------------------------------------------------------------------------
# tomographic position/momentum operators
# ---------------------------------------------------------------------------

def tomographic_operator(kind: str, tomogram: TomogramField4) -> np.ndarray:
    """Apply the tomographic position or momentum operator to a tomogram.

    position: X cos(theta) w + sin(theta) [dX^{-1} dTheta w]
              + (i/2) sin(theta) dX w
    momentum: X sin(theta) w - cos(theta) [dX^{-1} dTheta w]
              - (i/2) cos(theta) dX w

    The X antiderivative is anchored at the left grid edge, where the
    quadrature current vanishes; integrating the output over X then
    yields the observable expectation at every angle.  Returns a complex
    array shaped like the stored samples.
    """
    if kind not in ("position", "momentum"):
        raise ContractError(f"unknown tomographic operator kind {kind!r}")
    if tomogram.grid.ndim != 1:
        raise CapabilityError("tomographic operators are 1D-only")
    if tomogram.theta_count < 64:
        raise ContractError(
            "spectral theta differentiation needs at least 64 uniform angles"
        )
    extended = tomogram._circular_extension()
    if extended is None:
        raise ContractError(
            "tomographic operators need uniform angles covering [0, pi) or "
            "[0, 2 pi)"
        )
    m = extended.shape[0]
    axis = tomogram.grid.axes[0]
    xs = axis.coords()
    thetas = (2.0 * np.pi / m) * np.arange(m)

    spec = np.fft.fft(extended, axis=0)
    orders = np.round(np.fft.fftfreq(m) * m).astype(int)
    dtheta = np.fft.ifft(spec * (1j * orders)[:, None, None], axis=0)
    current = antiderivative_values(dtheta, axis.spacing, axis=2)
    current = current - current[..., :1]
    dx = derivative_values(extended, axis.spacing, axis=2)

    cos_t = np.cos(thetas)[:, None, None]
    sin_t = np.sin(thetas)[:, None, None]
    if kind == "position":
        out = (xs[None, None, :] * cos_t * extended + sin_t * current
               + 0.5j * sin_t * dx)
    else:
        out = (xs[None, None, :] * sin_t * extended - cos_t * current
               - 0.5j * cos_t * dx)
    return out[: tomogram.theta_count]


# ---------------------------------------------------------------------------
# evolution-equation residuals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LandauWignerSlice:
    """Vector Wigner samples on a dense (q1, q2, p2) grid at fixed p1."""

    grid: Grid
    p1: float
    values: np.ndarray

    def __post_init__(self):
        if self.grid.ndim != 3:
            raise ContractError("slice grid must cover (q1, q2, p2)")
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (4,) + self.grid.shape or not np.all(np.isfinite(v)):
            raise ContractError("slice values must be finite with shape (4,)+grid")
        object.__setattr__(self, "values", _frozen(v, np.float64))
        object.__setattr__(self, "p1", _finite_scalar(self.p1, "p1"))


def _time_stencil(samples, spacing):
    """4th-order central first derivative at the middle of 5 samples."""
    f_m2, f_m1, _, f_p1, f_p2 = samples
    return (f_m2 - 8.0 * f_m1 + 8.0 * f_p1 - f_p2) / (12.0 * spacing)


def _check_trajectory(times, fields):
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.size < 5:
        raise ContractError("residual checks need at least 5 uniform time samples")
    steps = np.diff(times)
    if np.max(np.abs(steps - steps[0])) > 1e-12 * max(abs(steps[0]), 1e-30):
        raise ContractError("residual checks need uniform time sampling")
    if len(fields) != times.size:
        raise ContractError("one field sample per time required")
    return times, float(steps[0])


def _evolsimp_rhs(tomogram: TomogramField4, omega0: float) -> np.ndarray:
    """Right side dTheta w + S w of the oscillator tomogram equation,
    evaluated on full-circle uniform samples."""
    step = tomogram._uniform_spacing()
    if step is None or abs(step * tomogram.theta_count - 2.0 * np.pi) > 1e-9:
        raise ContractError(
            "evolsimp residual needs uniform angles covering [0, 2 pi)"
        )
    m = tomogram.theta_count
    spec = np.fft.fft(tomogram.values, axis=0)
    orders = np.round(np.fft.fftfreq(m) * m).astype(int)
    dtheta = np.real(np.fft.ifft(spec * (1j * orders)[:, None, None], axis=0))
    s_mat = spin_generator_homogeneous(omega0).matrix
    return dtheta + np.einsum("jk,nkx->njx", s_mat, tomogram.values)


def _landau_wigner_rhs(slice_: LandauWignerSlice, omega: float,
                       omega0: float) -> np.ndarray:
    """Right side of the Landau Wigner transport equation on one slice:
    -(p1 + w q2) dq1 W - p2 dq2 W + (q2 + w p1) dp2 W + S W."""
    g = slice_.grid
    v = slice_.values
    q2 = g.axes[1].coords()[None, None, :, None]
    p2 = g.axes[2].coords()[None, None, None, :]
    p1 = slice_.p1
    dq1 = np.real(derivative_values(v, g.axes[0].spacing, axis=1))
    dq2 = np.real(derivative_values(v, g.axes[1].spacing, axis=2))
    dp2 = np.real(derivative_values(v, g.axes[2].spacing, axis=3))
    s_mat = spin_generator_homogeneous(omega0).matrix
    coupling = np.einsum("jk,k...->j...", s_mat, v)
    return (-(p1 + omega * q2) * dq1 - p2 * dq2
            + (q2 + omega * p1) * dp2 + coupling)


def evolution_residual(equation: str, times, fields, omega: float = -1.0,
                       omega0: float = 0.0) -> dict:
    """Max-norm residual of an evolution equation on a sampled trajectory.

    The time derivative uses the 4th-order central stencil on the given
    uniform samples; spatial and angular derivatives are spectral.
    Residuals are reported at the interior times (two samples clipped at
    each end).

    Parameters
    ----------
    equation : str
        "evolsimp" (oscillator tomogram transport) or "landau_wigner"
        (Landau-gauge Wigner transport).  The optical-tomogram form of
        the Landau equation needs a dense 4D angular grid and is out of
        capability.
    times : array_like
        At least 5 uniformly spaced times.
    fields : sequence
        TomogramField4 per time for evolsimp; LandauWignerSlice per time
        for landau_wigner.
    """
    if equation == "landau_optical":
        raise CapabilityError(
            "the optical-tomogram Landau equation needs theta-resolved 4D "
            "fields; use the landau_wigner form"
        )
    if equation not in ("evolsimp", "landau_wigner"):
        raise ContractError(f"unknown evolution equation {equation!r}")
    times, dt = _check_trajectory(times, fields)

    if equation == "evolsimp":
        arrays = [f.values for f in fields]
        rhs = [_evolsimp_rhs(f, omega0) for f in fields]
    else:
        arrays = [f.values for f in fields]
        rhs = [_landau_wigner_rhs(f, omega, omega0) for f in fields]

    interior = range(2, times.size - 2)
    residuals = []
    for i in interior:
        dwdt = _time_stencil(arrays[i - 2: i + 3], dt)
        residuals.append(float(np.max(np.abs(dwdt - rhs[i]))))
    return {
        "equation": equation,
        "times": times[2:-2],
        "residual_inf": np.asarray(residuals),
        "max": max(residuals),
    }
