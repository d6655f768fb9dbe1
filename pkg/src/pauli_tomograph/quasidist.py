"""Vector Wigner and Husimi quasidistributions on a phase-space grid.

All four-component fields follow the same layout: ``values[j]`` is the
j-th component sampled on a dense (q, p) grid, row-major in q.  Wigner
fields integrate against dq dp, Husimi fields against dq dp / (2 pi);
both normalise through the occupation pair ``F3 + F4``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ContractError,
    IllPosedDeconvolutionError,
    NumericDomainError,
)
from .grids import (
    Axis,
    ComplexField,
    Grid,
    SpinDensityField,
    StateEnsemble,
    _frozen,
    as_ensemble,
)
from .spectral import chirp_sum, refine_values, scale_resample_values, translate_values
from .spinframe import spin_quantize, vector_from_cross, vector_from_pair

# Wigner values on the outer frame of the grid above this level indicate
# a state whose phase-space support leaks through the box (aliasing).
EDGE_DENSITY_TOL = 1e-6

# Gaussian amplification ceiling for deconvolution: exp(k^2 / 4) <= 1e8
# holds for |k| <= K8.  Beyond that radius the Husimi spectrum must have
# decayed below SPECTRUM_FLOOR (relative) or the problem is ill posed.
AMPLIFICATION_LIMIT = 1e8
SPECTRUM_FLOOR = 1e-12
K8 = 2.0 * np.sqrt(np.log(AMPLIFICATION_LIMIT))

_WIGNER_MEASURES = {"wigner": 1.0, "husimi": 1.0 / (2.0 * np.pi)}


@dataclass(frozen=True)
class PhaseField4:
    """Four-component quasidistribution on a dense 2D phase-space grid.

    Parameters
    ----------
    grid : Grid
        Two-dimensional (q, p) grid.
    values : ndarray
        Real array of shape ``(4,) + grid.shape``.
    kind : str
        Either ``"wigner"`` or ``"husimi"``; fixes the integration
        measure (dq dp versus dq dp / 2 pi).
    """

    grid: Grid
    values: np.ndarray
    kind: str

    def __post_init__(self):
        if len(self.grid.axes) != 2:
            raise ContractError("PhaseField4 requires a 2D (q, p) grid")
        if self.kind not in _WIGNER_MEASURES:
            raise ContractError(f"unknown phase-field kind {self.kind!r}")
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (4,) + self.grid.shape:
            raise ContractError(
                f"values shape {values.shape} does not match (4,) + {self.grid.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise NumericDomainError("phase-field values must be finite")
        object.__setattr__(self, "values", _frozen(values, np.float64))

    @property
    def measure(self) -> float:
        """Phase-space measure weight: cell volume times the kind factor."""
        return self.grid.cell_volume * _WIGNER_MEASURES[self.kind]

    def component(self, j: int) -> np.ndarray:
        """Return component j (0-based) of the field."""
        return self.values[j]

    def normalization_mass(self) -> float:
        """Integral of F3 + F4 over the field's own measure (should be 1)."""
        return float(np.sum(self.values[2] + self.values[3]) * self.measure)

    def component_masses(self) -> np.ndarray:
        """Integrals of all four components over the field's measure."""
        return np.sum(self.values, axis=(1, 2)) * self.measure

    def position_marginals(self) -> np.ndarray:
        """Integrate out p: shape (4, Nq) array of marginal densities."""
        h_p = self.grid.axes[1].spacing * _WIGNER_MEASURES[self.kind]
        return np.sum(self.values, axis=2) * h_p

    def edge_density(self) -> float:
        """Largest |value| on the outermost frame of the grid."""
        v = np.abs(self.values)
        return float(
            max(
                v[:, 0, :].max(),
                v[:, -1, :].max(),
                v[:, :, 0].max(),
                v[:, :, -1].max(),
            )
        )


def _aligned_fine_stride(state_grid: Grid, q_axis) -> int:
    """Stride of the Wigner q-axis inside the doubly refined state grid.

    The Wigner builder evaluates the wavefunction at q +- u/2 where both
    q and u/2 live on the state's half-spacing lattice; that requires the
    output q-axis to be commensurate with it.
    """
    axis = state_grid.axes[0]
    fine_h = axis.spacing / 2.0
    ratio = q_axis.spacing / fine_h
    stride = int(round(ratio))
    if abs(ratio - stride) > 1e-9 or stride < 1:
        raise ContractError(
            "Wigner q-axis spacing must be an integer multiple of half the "
            "state grid spacing"
        )
    offset = (q_axis.min - axis.min) / fine_h
    if abs(offset - round(offset)) > 1e-9:
        raise ContractError("Wigner q-axis must align with the state grid origin")
    return stride


def _pair_wigner(up_fine: np.ndarray, lo_fine: np.ndarray, state_grid: Grid,
                 grid: Grid) -> np.ndarray:
    """Cross-Wigner transform of two refined 1D wavefunctions.

    Computes W(q, p) = (1 / 2 pi) * integral of
    psi_a(q + u/2) conj(psi_b(q - u/2)) exp(-i p u) du on the output grid.
    """
    q_axis, p_axis = grid.axes
    axis = state_grid.axes[0]
    n_fine = up_fine.shape[0]
    stride = _aligned_fine_stride(state_grid, q_axis)
    base = int(round((q_axis.min - axis.min) / (axis.spacing / 2.0)))

    # Pad so psi(q +- u/2) never indexes outside the array; outside the
    # box the state is zero by the boundary-support guard.
    half = n_fine // 2
    pad_up = np.concatenate([np.zeros(half, complex), up_fine, np.zeros(half, complex)])
    pad_lo = np.concatenate([np.zeros(half, complex), lo_fine, np.zeros(half, complex)])

    j_idx = base + stride * np.arange(q_axis.count) + half
    # u_m = m * h for m in [-half, half); u/2 steps the fine lattice.
    m_idx = np.arange(-half, half)
    plus = pad_up[j_idx[:, None] + m_idx[None, :]]
    minus = np.conj(pad_lo[j_idx[:, None] - m_idx[None, :]])
    f = plus * minus

    # Row-wise chirp transform: sum_m f_m exp(-i p_k m h) with the
    # leading phase for the m offset folded back in afterwards.
    h_u = axis.spacing
    p0, h_p = p_axis.min, p_axis.spacing
    rows = chirp_sum(f, a=-h_u * p0, b=-h_u * h_p, n_out=p_axis.count)
    p_vals = p_axis.coords()
    rows *= np.exp(1j * p_vals * (half * h_u))[None, :]
    return rows * (h_u / (2.0 * np.pi))


def _ensemble_cross_fields(ensemble: StateEnsemble, grid: Grid, builder):
    """Accumulate (upup, downdown, updown) fields across ensemble members."""
    shape = grid.shape
    upup = np.zeros(shape)
    downdown = np.zeros(shape)
    updown = np.zeros(shape, dtype=complex)
    for weight, member in zip(ensemble.weights, ensemble.members):
        w_uu = builder(member.up.values, member.up.values, member.up.grid)
        w_dd = builder(member.down.values, member.down.values, member.up.grid)
        w_ud = builder(member.up.values, member.down.values, member.up.grid)
        upup += weight * w_uu.real
        downdown += weight * w_dd.real
        updown += weight * w_ud
    return upup, downdown, updown


def wigner_vector(state, grid: Grid | None = None) -> PhaseField4:
    """Vector Wigner function of a spinor state or ensemble.

    Parameters
    ----------
    state : SpinorField or StateEnsemble
        One-dimensional spatial wavefunctions.
    grid : Grid, optional
        Dense (q, p) output grid; defaults to [-8, 8)^2 with 128 points
        per axis.  The q-axis must align with the state grid.

    Returns
    -------
    PhaseField4
        Wigner field; raises NumericDomainError when the state's
        phase-space support leaks through the grid boundary.
    """
    ensemble = as_ensemble(state)
    if len(ensemble.members[0].up.grid.axes) != 1:
        raise ContractError(
            "dense Wigner grids are 1D-spatial only; use wigner_point_vector "
            "for two-dimensional states"
        )
    if grid is None:
        grid = Grid.default_2d()

    def builder(up_vals, lo_vals, state_grid):
        up_fine = refine_values(up_vals, factor=2)
        lo_fine = up_fine if lo_vals is up_vals else refine_values(lo_vals, factor=2)
        return _pair_wigner(up_fine, lo_fine, state_grid, grid)

    upup, downdown, updown = _ensemble_cross_fields(ensemble, grid, builder)
    values = vector_from_cross(upup, downdown, updown)
    field = PhaseField4(grid, values, kind="wigner")
    if field.edge_density() > EDGE_DENSITY_TOL:
        raise NumericDomainError(
            f"Wigner support reaches the grid boundary "
            f"(edge density {field.edge_density():.2e} > {EDGE_DENSITY_TOL})"
        )
    return field


def _coherent_overlap_rows(psi: np.ndarray, state_grid: Grid, grid: Grid) -> np.ndarray:
    """Coherent-state overlaps <alpha|psi> on the (q, p) grid.

    Row j holds p-samples at q_j; alpha = (q + i p) / sqrt(2) and
    <x|alpha> = pi^(-1/4) exp(-(x - q)^2 / 2 + i p x - i p q / 2).
    """
    axis = state_grid.axes[0]
    x = axis.coords()
    q_axis, p_axis = grid.axes
    q = q_axis.coords()
    window = np.exp(-0.5 * (x[None, :] - q[:, None]) ** 2) * np.pi ** -0.25
    g = window * psi[None, :]
    # sum_x g(x) exp(-i p x) h = exp(-i p x0) * chirp rows over the index.
    p0, h_p = p_axis.min, p_axis.spacing
    rows = chirp_sum(g, a=-axis.spacing * p0, b=-axis.spacing * h_p,
                     n_out=p_axis.count)
    p_vals = p_axis.coords()
    rows *= np.exp(-1j * p_vals[None, :] * axis.min) * axis.spacing
    # conj(<x|alpha>) carries exp(+i p q / 2 - i p x); fold the q/2 phase.
    rows *= np.exp(1j * 0.5 * p_vals[None, :] * q[:, None])
    return rows


def husimi_vector(state, grid: Grid | None = None) -> PhaseField4:
    """Vector Husimi function: coherent-state matrix elements of rho U_j.

    Componentwise nonnegative for j = 3, 4 and bounded by the trace pair;
    the field integrates to one against dq dp / (2 pi).
    """
    ensemble = as_ensemble(state)
    if len(ensemble.members[0].up.grid.axes) != 1:
        raise ContractError("dense Husimi grids are 1D-spatial only")
    if grid is None:
        grid = Grid.default_2d()

    shape = grid.shape
    upup = np.zeros(shape)
    downdown = np.zeros(shape)
    updown = np.zeros(shape, dtype=complex)
    for weight, member in zip(ensemble.weights, ensemble.members):
        e_up = _coherent_overlap_rows(member.up.values, member.up.grid, grid)
        e_down = _coherent_overlap_rows(member.down.values, member.up.grid, grid)
        upup += weight * np.abs(e_up) ** 2
        downdown += weight * np.abs(e_down) ** 2
        updown += weight * e_up * np.conj(e_down)
    values = vector_from_cross(upup, downdown, updown)
    return PhaseField4(grid, values, kind="husimi")


def _quarter_turn_values(values: np.ndarray) -> np.ndarray:
    """Pullback by the quarter rotation Q = [[0, -1], [1, 0]] on the last
    two axes: out(x, y) = V(-y, x) on a square, origin-symmetric grid."""
    tmp = np.roll(np.flip(values, axis=-2), 1, axis=-2)
    return np.swapaxes(tmp, -2, -1)


def _require_square_symmetric(grid: Grid):
    ax, ay = grid.axes[-2], grid.axes[-1]
    if ax.count != ay.count or abs(ax.spacing - ay.spacing) > 1e-12 * ax.spacing:
        raise ContractError("plane pullback needs equal axes on both directions")
    if abs(ax.min + 0.5 * ax.count * ax.spacing) > 1e-9:
        raise ContractError("plane pullback needs an origin-centred box")
    if abs(ax.min - ay.min) > 1e-9:
        raise ContractError("plane pullback needs identical axis ranges")


_QUARTER = np.array([[0.0, -1.0], [1.0, 0.0]])
_QUARTER_INV = np.array([[0.0, 1.0], [-1.0, 0.0]])


def plane_pullback_values(values: np.ndarray, grid: Grid,
                          matrix: np.ndarray, pad: bool = True) -> np.ndarray:
    """Unit-determinant linear substitution out(z) = V(A z) on the last two
    axes of ``values``.

    Decomposes A (after an optional quarter-turn reduction that keeps the
    shear and scale factors moderate) into shear - scale - shear, each
    exact on the trig interpolant.  The intermediate stages sample the
    periodic extension, so by default the field is zero-padded into a box
    twice as large and cropped afterwards; wrap images then carry only
    boundary-level content.  Fields must decay at the frame.
    """
    a_mat = np.asarray(matrix, dtype=np.float64)
    if a_mat.shape != (2, 2):
        raise ContractError("pullback matrix must be 2x2")
    det = a_mat[0, 0] * a_mat[1, 1] - a_mat[0, 1] * a_mat[1, 0]
    if abs(det - 1.0) > 1e-10:
        raise ContractError(f"pullback matrix must have unit determinant, got {det}")
    _require_square_symmetric(grid)
    if pad:
        pads = [(0, 0)] * (np.ndim(values) - 2)
        half = tuple(ax.count // 2 for ax in grid.axes[-2:])
        pads += [(half[0], half[0]), (half[1], half[1])]
        wide_vals = np.pad(np.asarray(values), pads)
        wide_axes = tuple(
            Axis(ax.min - (ax.count // 2) * ax.spacing, 2 * ax.count, ax.spacing)
            for ax in grid.axes[-2:]
        )
        out = plane_pullback_values(wide_vals, Grid(wide_axes), a_mat, pad=False)
        crop = tuple(
            slice(half[i], half[i] + grid.axes[-2 + i].count) for i in range(2)
        )
        return out[..., crop[0], crop[1]]
    ax, ay = grid.axes[-2], grid.axes[-1]

    best = None
    for k in range(4):
        cand = a_mat @ np.linalg.matrix_power(_QUARTER_INV, k)
        a = cand[0, 0]
        if abs(a) < 1e-12:
            continue
        stretch = max(abs(a), 1.0 / abs(a))
        cost = stretch * (1.0 + abs(cand[0, 1] / a) + abs(cand[1, 0] / a))
        if best is None or cost < best[0]:
            best = (cost, k, cand)
    if best is None:
        raise ContractError("degenerate pullback matrix")
    _, turns, reduced = best

    a, b = reduced[0, 0], reduced[0, 1]
    c = reduced[1, 0]
    out = np.asarray(values)
    # (V o L)(x, y) = V(x, (c/a) x + y): per-row translation along y.
    if abs(c) > 0:
        out = translate_values(out, spacing=ay.spacing,
                               shift=-(c / a) * ax.coords(), axis=-1)
    # (o D): scale x by a and y by 1/a.
    if abs(a - 1.0) > 0:
        out = scale_resample_values(out, x0=ax.min, spacing=ax.spacing,
                                    scale=a, axis=-2)
        out = scale_resample_values(out, x0=ay.min, spacing=ay.spacing,
                                    scale=1.0 / a, axis=-1)
    # (o U)(x, y) = Z(x + (b/a) y, y): per-column translation along x.
    if abs(b) > 0:
        shift = -(b / a) * ay.coords()
        out = translate_values(out, spacing=ax.spacing, shift=shift, axis=-2)
    for _ in range(turns):
        out = _quarter_turn_values(out)
    return out


def symplectic_pullback(field: PhaseField4, matrix: np.ndarray) -> PhaseField4:
    """Phase-space substitution W'(z) = W(A z) for unit-determinant A."""
    values = plane_pullback_values(field.values, field.grid, matrix)
    if np.iscomplexobj(values):
        values = values.real
    return PhaseField4(field.grid, values, kind=field.kind)


def _radial_wavenumbers(grid: Grid):
    kq = grid.axes[0].wavenumbers()
    kp = grid.axes[1].wavenumbers()
    return kq[:, None] ** 2 + kp[None, :] ** 2


def smooth_wigner_to_husimi(field: PhaseField4) -> PhaseField4:
    """Gaussian smoothing that carries a Wigner field to its Husimi field.

    Multiplies the 2D spectrum by 2 pi exp(-|k|^2 / 4) (the 2 pi converts
    between the dq dp and dq dp / 2 pi measures).  Requires the input
    spectrum to be band limited: relative content in the outer Nyquist
    shell below 1e-8.
    """
    if field.kind != "wigner":
        raise ContractError("smoothing expects a Wigner-kind field")
    grid = field.grid
    k2 = _radial_wavenumbers(grid)
    spectra = np.fft.fft2(field.values, axes=(1, 2))
    peak = np.abs(spectra).max()
    k_ny = min(ax.nyquist_wavenumber() for ax in grid.axes)
    outer = k2 >= (0.85 * k_ny) ** 2
    if peak > 0 and np.abs(spectra[:, outer]).max() > 1e-8 * peak:
        raise NumericDomainError(
            "Wigner spectrum is not band limited on this grid; smoothing "
            "would alias"
        )
    multiplier = 2.0 * np.pi * np.exp(-0.25 * k2)
    values = np.fft.ifft2(spectra * multiplier[None, :, :], axes=(1, 2)).real
    return PhaseField4(grid, values, kind="husimi")


def deconvolve_husimi_to_wigner(field: PhaseField4,
                                cutoff: float | None = None) -> PhaseField4:
    """Invert the Gaussian smoothing on a band-limited Husimi field.

    Applies exp(+|k|^2 / 4) / (2 pi) inside |k| <= cutoff and zeroes the
    spectrum outside.  The default cutoff is the largest radius whose
    amplification stays below 1e8.  Requesting a larger cutoff is only
    accepted when the Husimi spectrum has decayed below 1e-12 (relative)
    everywhere past that radius; otherwise amplified noise would swamp
    the result and IllPosedDeconvolutionError is raised.
    """
    if field.kind != "husimi":
        raise ContractError("deconvolution expects a Husimi-kind field")
    grid = field.grid
    k2 = _radial_wavenumbers(grid)
    if cutoff is None:
        cutoff = K8
    if cutoff <= 0:
        raise ContractError("cutoff must be positive")

    spectra = np.fft.fft2(field.values, axes=(1, 2))
    peak = np.abs(spectra).max()
    if cutoff > K8 and peak > 0:
        risky = (k2 > K8 ** 2) & (k2 <= cutoff ** 2)
        if np.any(risky):
            level = np.abs(spectra[:, risky]).max() / peak
            if level > SPECTRUM_FLOOR:
                raise IllPosedDeconvolutionError(
                    "Husimi spectrum still carries relative weight "
                    f"{level:.2e} where the Gaussian amplification exceeds "
                    f"{AMPLIFICATION_LIMIT:.0e}; deconvolution is ill posed",
                    diagnostic={"cutoff": float(cutoff), "level": float(level)},
                )
    inside = k2 <= cutoff ** 2
    multiplier = np.where(inside, np.exp(np.minimum(0.25 * k2, 700.0)), 0.0)
    multiplier /= 2.0 * np.pi
    values = np.fft.ifft2(spectra * multiplier[None, :, :], axes=(1, 2)).real
    return PhaseField4(grid, values, kind="wigner")


def weyl_reconstruct(field: PhaseField4) -> SpinDensityField:
    """Rebuild the spin density kernel from a vector Wigner field.

    The spin quantizer turns the four components into a pointwise 2x2
    matrix field M(q, p); each entry then undergoes the inverse Weyl map
    rho(x, x') = integral of M((x + x') / 2, p) exp(i p (x - x')) dp,
    evaluated on the field's own q-axis through a midpoint-refined
    lattice (all midpoints (x_i + x_j) / 2 live on the half-spacing
    grid).
    """
    if field.kind != "wigner":
        raise ContractError("Weyl reconstruction expects a Wigner-kind field")
    mass = field.normalization_mass()
    if abs(mass - 1.0) > 1e-6:
        raise ContractError(
            f"Wigner field is not normalized (mass {mass:.8f}); "
            "reconstruction requires a unit-trace field"
        )
    grid = field.grid
    q_axis, p_axis = grid.axes
    n = q_axis.count
    h_p = p_axis.spacing
    p_vals = p_axis.coords()

    matrix_field = spin_quantize(field.values)  # (2, 2, Nq, Np) complex

    # Midpoint refinement along q: row m of the refined field samples
    # q = q0 + m h / 2, so m = i + j addresses (x_i + x_j) / 2.
    fine = refine_values(matrix_field, factor=2, axis=2)  # (2, 2, 2Nq, Np)

    # E[m, d] = sum_p fine[m, p] exp(i p v_d) h_p with v_d = (d - (n-1)) h.
    offsets = (np.arange(2 * n - 1) - (n - 1)) * q_axis.spacing
    phases = np.exp(1j * p_vals[:, None] * offsets[None, :]) * h_p
    e_table = fine @ phases  # (2, 2, 2Nq, 2n-1)

    i_idx = np.arange(n)
    m_mat = i_idx[:, None] + i_idx[None, :]
    d_mat = i_idx[:, None] - i_idx[None, :] + (n - 1)
    kernel = e_table[:, :, m_mat, d_mat]

    out_grid = Grid((q_axis,))
    return SpinDensityField(out_grid, kernel)


def _padded_state(field: ComplexField) -> ComplexField:
    """Embed a state in a box four times as large (same spacing, zero pad).

    Point sampling stretches the state by two (half arguments) and then
    translates it by up to twice the evaluation center, so the working
    box needs a margin of three half-spans on either side before the
    cyclic spectral shifts stay clear of the integration window.
    """
    grid = field.grid
    axes = []
    values = field.values
    for axis_index, axis in enumerate(grid.axes):
        pad = (3 * axis.count) // 2
        axes.append(Axis(axis.min - pad * axis.spacing, 4 * axis.count,
                         axis.spacing))
        shape = list(values.shape)
        shape[axis_index] = pad
        zeros = np.zeros(shape, dtype=values.dtype)
        values = np.concatenate([zeros, values, zeros], axis=axis_index)
    return ComplexField(Grid(tuple(axes)), values)


def _half_argument(values: np.ndarray, grid: Grid, center: np.ndarray,
                   sign: float) -> np.ndarray:
    """Values of psi(center + sign * u / 2) on the state's own u-grid.

    Spectral: scale the argument by sign / 2, then translate so the
    (arbitrary, off-grid) center lands at u = 0.  Works in any dimension.
    """
    for axis_index, axis in enumerate(grid.axes):
        values = scale_resample_values(
            values, x0=axis.min, spacing=axis.spacing, scale=0.5 * sign,
            axis=axis_index,
        )
        # g(u) = psi(sign u / 2); want g(u + 2 sign c) = g(u - (-2 sign c)).
        values = translate_values(
            values, spacing=axis.spacing,
            shift=-2.0 * sign * float(center[axis_index]), axis=axis_index,
        )
    return values


def _point_pair_wigner(psi_a: ComplexField, psi_b: ComplexField,
                       point: np.ndarray) -> complex:
    """Cross-Wigner value of a state pair at one phase-space point.

    ``point`` stacks the position block then the momentum block, so a
    d-dimensional state takes a length-2d point.
    """
    grid = psi_a.grid
    dim = len(grid.axes)
    center = point[:dim]
    momenta = point[dim:]
    plus = _half_argument(psi_a.values, grid, center, sign=+1.0)
    minus = _half_argument(psi_b.values, grid, center, sign=-1.0)
    integrand = plus * np.conj(minus)
    phase = np.zeros(grid.shape)
    for axis_index, axis in enumerate(grid.axes):
        u = axis.coords()
        shape = [1] * dim
        shape[axis_index] = axis.count
        phase = phase + momenta[axis_index] * u.reshape(shape)
    weight = grid.cell_volume / (2.0 * np.pi) ** dim
    return complex(np.sum(integrand * np.exp(-1j * phase)) * weight)


def wigner_point_vector(state, points: np.ndarray) -> np.ndarray:
    """Vector Wigner function sampled at arbitrary phase-space points.

    Direct quadrature route, independent of the dense-grid chirp
    pipeline; supports one- and two-dimensional spatial states.

    Parameters
    ----------
    state : SpinorField or StateEnsemble
    points : ndarray
        Shape (m, 2d): each row stacks d positions then d momenta.

    Returns
    -------
    ndarray
        Shape (4, m) array of Wigner components.
    """
    ensemble = as_ensemble(state)
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    dim = len(ensemble.members[0].up.grid.axes)
    if pts.shape[1] != 2 * dim:
        raise ContractError(
            f"points must have 2 * {dim} columns for a {dim}D state"
        )
    m = pts.shape[0]
    upup = np.zeros(m)
    downdown = np.zeros(m)
    updown = np.zeros(m, dtype=complex)
    for weight, member in zip(ensemble.weights, ensemble.members):
        up = _padded_state(member.up)
        down = _padded_state(member.down)
        for row in range(m):
            point = pts[row]
            w_uu = _point_pair_wigner(up, up, point)
            w_dd = _point_pair_wigner(down, down, point)
            w_ud = _point_pair_wigner(up, down, point)
            upup[row] += weight * w_uu.real
            downdown[row] += weight * w_dd.real
            updown[row] += weight * w_ud
    return vector_from_cross(upup, downdown, updown)
