"""Vector optical and symplectic tomograms.

An optical tomogram collects, for every probe angle theta, the four
spin-weighted distributions of the rotated quadrature
X = q cos(theta) + p sin(theta).  One-dimensional states use a 1D X axis
and scalar angles; two-dimensional states use an angle pair per sample
and a 2D X field.  The symplectic tomogram follows from the optical one
by the homogeneity scaling M(X, mu, nu) = w(X / r, theta) / r with
r = hypot(mu, nu), theta = atan2(nu, mu).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    CapabilityError,
    ContractError,
    NumericDomainError,
    ReconstructionError,
)
from .grids import Grid, SpinDensityField, _frozen, as_ensemble
from .quasidist import (
    EDGE_DENSITY_TOL,
    PhaseField4,
    plane_pullback_values,
    weyl_reconstruct,
)
from .spectral import eval_trig_series, quadrature_amplitude_values
from .spinframe import vector_from_cross

THREAD_ENV = "PAULI_TOMOGRAPH_THREADS"
NORMALIZATION_TOL = 1e-8
ANGLE_MATCH_TOL = 1e-9
MIN_RECONSTRUCTION_ANGLES = 64

# Radial reach of the Fourier-slice assembly; characteristic functions of
# the low Fock span have decayed to ~1e-12 well inside this radius.
DEFAULT_K_CUTOFF = 14.0
RADIAL_PAD_FACTOR = 8
RADIAL_STENCIL = 8


def _worker_count() -> int:
    raw = os.environ.get(THREAD_ENV, "1")
    try:
        count = int(raw)
    except ValueError as exc:
        raise ContractError(f"{THREAD_ENV} must be an integer, got {raw!r}") from exc
    return max(1, count)


def _map_samples(fn, items):
    """Map fn over samples, optionally thread-parallel, order preserving."""
    workers = _worker_count()
    if workers == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class TomogramField4:
    """Four-component tomogram sampled over probe angles.

    Parameters
    ----------
    grid : Grid
        Spatial X grid (one axis per state dimension).
    thetas : ndarray
        Shape (n,) of angles for 1D grids, (n, ndim) of angle tuples for
        higher dimensions; stored reduced to [0, 2 pi).
    values : ndarray
        Real array of shape (n, 4) + grid.shape.
    """

    grid: Grid
    thetas: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        thetas = np.asarray(self.thetas, dtype=np.float64)
        ndim = self.grid.ndim
        if ndim == 1:
            if thetas.ndim != 1 or thetas.size == 0:
                raise ContractError("1D tomograms need a flat, nonempty angle array")
        else:
            if thetas.ndim != 2 or thetas.shape[1] != ndim or thetas.shape[0] == 0:
                raise ContractError(
                    f"{ndim}D tomograms need angle rows of length {ndim}"
                )
        thetas = np.mod(thetas, 2.0 * np.pi)
        values = np.asarray(self.values, dtype=np.float64)
        expected = (thetas.shape[0], 4) + self.grid.shape
        if values.shape != expected:
            raise ContractError(
                f"tomogram values shape {values.shape}, expected {expected}"
            )
        if not np.all(np.isfinite(values)):
            raise ContractError("tomogram values must be finite")
        object.__setattr__(self, "thetas", _frozen(thetas, np.float64))
        object.__setattr__(self, "values", _frozen(values, np.float64))

    @property
    def theta_count(self) -> int:
        return self.thetas.shape[0]

    def sample_masses(self) -> np.ndarray:
        """Integrals of w1..w4 over X for every angle sample: shape (n, 4)."""
        axis_sum = self.values.reshape(self.values.shape[:2] + (-1,)).sum(axis=2)
        return axis_sum * self.grid.cell_volume

    def edge_density(self) -> float:
        """Largest |w| attained on the X-grid boundary over all samples."""
        worst = 0.0
        for axis_index in range(self.grid.ndim):
            sl_lo = [slice(None)] * self.values.ndim
            sl_lo[2 + axis_index] = 0
            sl_hi = list(sl_lo)
            sl_hi[2 + axis_index] = -1
            worst = max(
                worst,
                float(np.abs(self.values[tuple(sl_lo)]).max()),
                float(np.abs(self.values[tuple(sl_hi)]).max()),
            )
        return worst

    def _uniform_spacing(self) -> float | None:
        """Angle spacing if the 1D samples are uniform from zero, else None."""
        if self.grid.ndim != 1 or self.theta_count < 2:
            return None
        th = self.thetas
        step = th[1] - th[0]
        if step <= 0 or abs(th[0]) > ANGLE_MATCH_TOL:
            return None
        if np.max(np.abs(th - step * np.arange(th.size))) > 1e-9:
            return None
        return float(step)

    def _circular_extension(self):
        """Return (angles over [0, 2 pi), values) using w(-X, th+pi) = w(X, th).

        Requires uniform angles covering [0, pi) or [0, 2 pi).
        """
        step = self._uniform_spacing()
        if step is None:
            return None
        n = self.theta_count
        span = step * n
        if abs(span - 2.0 * np.pi) < 1e-6:
            return self.values
        if abs(span - np.pi) < 1e-6:
            mirrored = np.roll(self.values[:, :, ::-1], 1, axis=2)
            return np.concatenate([self.values, mirrored], axis=0)
        return None

    def evaluate(self, x: float, theta: float) -> np.ndarray:
        """Tomogram 4-vector at arbitrary (X, theta) by trig interpolation.

        Exact for band-limited fields when the angle samples uniformly
        cover [0, pi) or [0, 2 pi); otherwise theta must match a stored
        sample.  Outside the stored X span the density of an admissible
        state is negligible, so the value is 0, not the periodic image.
        """
        if self.grid.ndim != 1:
            raise CapabilityError("pointwise evaluation is 1D-only")
        axis = self.grid.axes[0]
        if not axis.contains(x):
            return np.zeros(4)
        theta = float(np.mod(theta, 2.0 * np.pi))
        hit = np.nonzero(np.abs(self.thetas - theta) < ANGLE_MATCH_TOL)[0]
        if hit.size:
            row = self.values[hit[0]]
            return np.real(
                eval_trig_series(row, axis.min, axis.spacing, [x], axis=1)[:, 0]
            )
        extended = self._circular_extension()
        if extended is None:
            raise ContractError(
                "theta interpolation needs uniform angle coverage of [0, pi) "
                "or [0, 2 pi); requested angle is not a stored sample"
            )
        m = extended.shape[0]
        rows = eval_trig_series(
            extended, axis.min, axis.spacing, [x], axis=2
        )[:, :, 0]
        coeff = np.fft.fft(rows, axis=0) / m
        orders = np.round(np.fft.fftfreq(m) * m).astype(int)
        value = coeff.T @ np.exp(1j * orders * theta)
        return np.real(value)


@dataclass(frozen=True)
class SymplecticSample:
    """One symplectic tomogram evaluation M(X, mu, nu)."""

    x: tuple
    mu: tuple
    nu: tuple
    value: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "mu", tuple(float(v) for v in self.mu))
        object.__setattr__(self, "nu", tuple(float(v) for v in self.nu))
        value = np.asarray(self.value, dtype=np.float64)
        if value.shape != (4,) or not np.all(np.isfinite(value)):
            raise ContractError("symplectic sample value must be a finite 4-vector")
        object.__setattr__(self, "value", _frozen(value, np.float64))


def default_angles(count: int = 64) -> np.ndarray:
    """Uniform probe angles over [0, pi); the other half follows from the
    reflection symmetry w(-X, theta + pi) = w(X, theta)."""
    if count < 1:
        raise ContractError("angle count must be positive")
    return np.arange(count) * (np.pi / count)


def optical_tomogram_vector(state, grid: Grid | None = None,
                            thetas=None) -> TomogramField4:
    """Vector optical tomogram of a spinor state or ensemble.

    For each angle the rotated-quadrature amplitudes of the two spin
    components are combined into the four spin-weighted distributions.

    Parameters
    ----------
    state : SpinorField or StateEnsemble
    grid : Grid, optional
        X grid; must coincide with the state's spatial grid (the rotated
        quadrature is computed on the state's own axes).
    thetas : array_like, optional
        Angles (1D states) or angle pairs (2D states); defaults to 64
        uniform angles over [0, pi), or the diagonal pairs thereof.

    Returns
    -------
    TomogramField4
    """
    ensemble = as_ensemble(state)
    state_grid = ensemble.members[0].up.grid
    ndim = state_grid.ndim
    if grid is None:
        grid = state_grid
    if tuple(grid.axes) != tuple(state_grid.axes):
        raise CapabilityError(
            "tomogram X grid must coincide with the state grid; resample the "
            "state first"
        )
    if thetas is None:
        base = default_angles()
        thetas = base if ndim == 1 else np.stack([base] * ndim, axis=1)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    if ndim > 1 and thetas.ndim == 1:
        thetas = np.stack([thetas] * ndim, axis=1)

    def one_angle(theta):
        shape = grid.shape
        upup = np.zeros(shape)
        downdown = np.zeros(shape)
        updown = np.zeros(shape, dtype=complex)
        for weight, member in zip(ensemble.weights, ensemble.members):
            amp_up = quadrature_amplitude_values(member.up.values, grid, theta)
            amp_down = quadrature_amplitude_values(member.down.values, grid, theta)
            upup += weight * np.abs(amp_up) ** 2
            downdown += weight * np.abs(amp_down) ** 2
            updown += weight * amp_up * np.conj(amp_down)
        return vector_from_cross(upup, downdown, updown)

    values = np.stack(_map_samples(one_angle, list(thetas)))
    field = TomogramField4(grid, thetas, values)
    if field.edge_density() > EDGE_DENSITY_TOL:
        raise NumericDomainError(
            f"rotated-quadrature density reaches the X boundary "
            f"(edge density {field.edge_density():.2e})"
        )
    return field


def tomogram_from_wigner(field: PhaseField4, thetas=None) -> TomogramField4:
    """Radon transform of a vector Wigner field along rotated lines.

    w_j(X, theta) = integral of W_j(X cos(theta) - p sin(theta),
    X sin(theta) + p cos(theta)) dp, realised as a spectral rotation
    followed by summation over the momentum axis.
    """
    if field.kind != "wigner":
        raise ContractError("Radon projection expects a Wigner-kind field")
    if thetas is None:
        thetas = default_angles()
    thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    if thetas.ndim != 1:
        raise CapabilityError("Radon projection of dense fields is 1D-only")
    grid = field.grid
    h_p = grid.axes[1].spacing

    def one_angle(theta):
        c, s = np.cos(theta), np.sin(theta)
        rot = np.array([[c, -s], [s, c]])
        rotated = plane_pullback_values(field.values, grid, rot)
        return np.real(rotated).sum(axis=2) * h_p

    values = np.stack(_map_samples(one_angle, list(thetas)))
    x_grid = Grid((grid.axes[0],))
    out = TomogramField4(x_grid, thetas, values)
    if out.edge_density() > EDGE_DENSITY_TOL:
        raise NumericDomainError(
            "projected density reaches the X boundary; the Wigner support "
            "is too large for this box"
        )
    return out


def normalization_check(tomogram: TomogramField4) -> dict:
    """Per-angle component integrals and the unit-trace deviation flags.

    Returns a dict with the (n, 4) integral table, the worst deviation of
    the w3 + w4 sum from one, and the indices of flagged angles.
    """
    if not np.all(np.isfinite(tomogram.values)):
        raise ContractError("tomogram field contains non-finite values")
    masses = tomogram.sample_masses()
    trace = masses[:, 2] + masses[:, 3]
    deviation = np.abs(trace - 1.0)
    flagged = np.nonzero(deviation > NORMALIZATION_TOL)[0]
    return {
        "integrals": masses,
        "max_trace_deviation": float(deviation.max()),
        "flagged_angles": flagged,
        "ok": flagged.size == 0,
    }


def symplectic_from_optical(tomogram: TomogramField4, x, mu, nu) -> SymplecticSample:
    """Symplectic tomogram sample from the optical tomogram by homogeneity.

    Per axis, with r = hypot(mu, nu) and theta = atan2(nu, mu):
    M(X, mu, nu) = w(X / r, theta) / r.
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    mu_arr = np.atleast_1d(np.asarray(mu, dtype=np.float64))
    nu_arr = np.atleast_1d(np.asarray(nu, dtype=np.float64))
    ndim = tomogram.grid.ndim
    if not (x_arr.size == mu_arr.size == nu_arr.size == ndim):
        raise ContractError(f"need {ndim} components for X, mu and nu")
    r = np.hypot(mu_arr, nu_arr)
    if np.any(r < 1e-300):
        raise NumericDomainError("(mu, nu) = (0, 0) leaves the quadrature undefined")
    theta = np.mod(np.arctan2(nu_arr, mu_arr), 2.0 * np.pi)
    scale = float(np.prod(r))

    if ndim == 1:
        value = tomogram.evaluate(float(x_arr[0] / r[0]), float(theta[0])) / scale
        return SymplecticSample(x_arr, mu_arr, nu_arr, value)

    match = np.nonzero(
        np.all(np.abs(tomogram.thetas - theta[None, :]) < ANGLE_MATCH_TOL, axis=1)
    )[0]
    if not match.size:
        raise ContractError(
            "2D symplectic evaluation needs the angle pair "
            f"{tuple(theta)} among the stored samples"
        )
    points = x_arr / r
    if not all(axis.contains(p) for axis, p in zip(tomogram.grid.axes, points)):
        return SymplecticSample(x_arr, mu_arr, nu_arr, np.zeros(4))
    row = tomogram.values[match[0]]
    for axis_index, axis in enumerate(tomogram.grid.axes):
        row = eval_trig_series(
            row, axis.min, axis.spacing, [points[axis_index]],
            axis=1 + axis_index,
        )
    value = np.real(row.reshape(4)) / scale
    return SymplecticSample(x_arr, mu_arr, nu_arr, value)


def _radial_lagrange(ext_coeffs: np.ndarray, k_fine: np.ndarray,
                     kappa: float) -> np.ndarray:
    """8-point Lagrange interpolation along the last (radial) axis."""
    dk = k_fine[1] - k_fine[0]
    pos = (kappa - k_fine[0]) / dk
    start = int(np.floor(pos)) - (RADIAL_STENCIL // 2 - 1)
    start = min(max(start, 0), k_fine.size - RADIAL_STENCIL)
    idx = np.arange(start, start + RADIAL_STENCIL)
    t = pos - idx
    weights = np.ones(RADIAL_STENCIL)
    for i in range(RADIAL_STENCIL):
        for j in range(RADIAL_STENCIL):
            if i != j:
                weights[i] *= t[j] / (idx[j] - idx[i]) * -1.0
    return ext_coeffs[..., idx] @ weights


def rho_from_optical_tomogram(tomogram: TomogramField4,
                              wigner_grid: Grid | None = None,
                              k_cutoff: float = DEFAULT_K_CUTOFF) -> SpinDensityField:
    """Spin density kernel reconstructed from an optical tomogram.

    Fourier-slice route: the X characteristic function of each angle
    populates the Wigner characteristic function along the polar ray at
    that angle; angular trig interpolation and radial Lagrange
    interpolation fill the Cartesian wavenumber disk, and the inverse
    Weyl map turns the resulting Wigner field into the density kernel.

    Parameters
    ----------
    tomogram : TomogramField4
        1D, with at least 64 uniform angles covering [0, pi).
    wigner_grid : Grid, optional
        Intermediate dense grid, default [-8, 8)^2 at 128 points.
    k_cutoff : float
        Radial reach of the slice assembly.
    """
    if tomogram.grid.ndim != 1:
        raise CapabilityError("density reconstruction is 1D-only")
    step = tomogram._uniform_spacing()
    n_angles = tomogram.theta_count
    if step is None or abs(step * n_angles - np.pi) > 1e-6:
        raise ReconstructionError(
            "reconstruction needs uniform angles covering [0, pi)",
            )
    if n_angles < MIN_RECONSTRUCTION_ANGLES:
        raise ReconstructionError(
            f"angular coverage too sparse: {n_angles} angles < "
            f"{MIN_RECONSTRUCTION_ANGLES}; the angular interpolation would "
            "be underdetermined"
        )
    report = normalization_check(tomogram)
    if not report["ok"]:
        raise ContractError(
            "tomogram is not normalized per angle "
            f"(max deviation {report['max_trace_deviation']:.2e})"
        )
    if wigner_grid is None:
        wigner_grid = Grid.default_2d()
    wigner_grid.require_spectral()

    axis = tomogram.grid.axes[0]
    n_x = axis.count
    n_fine = RADIAL_PAD_FACTOR * n_x
    # Characteristic function of every angle on the padded radial grid.
    spec = np.fft.fft(tomogram.values, n=n_fine, axis=2)
    k_fine = 2.0 * np.pi * np.fft.fftfreq(n_fine, d=axis.spacing)
    order = np.argsort(k_fine)
    k_fine = k_fine[order]
    slices = spec[:, :, order] * (axis.spacing * np.exp(-1j * k_fine * axis.min))

    # Extend over [0, 2 pi) through w(-X, th + pi) = w(X, th), which in the
    # radial variable reads whatchar(k, th + pi) = whatchar(-k, th).
    reversed_k = np.roll(slices[:, :, ::-1], 1, axis=2)
    extended = np.concatenate([slices, reversed_k], axis=0)
    m_ext = extended.shape[0]
    coeffs = np.fft.fft(extended, axis=0) / m_ext
    orders = np.round(np.fft.fftfreq(m_ext) * m_ext).astype(int)

    kq = wigner_grid.axes[0].wavenumbers()
    kp = wigner_grid.axes[1].wavenumbers()
    nyquist = min(ax.nyquist_wavenumber() for ax in wigner_grid.axes)
    if k_cutoff >= nyquist:
        raise ContractError(
            f"k_cutoff {k_cutoff} exceeds the Wigner grid Nyquist radius "
            f"{nyquist:.2f}"
        )
    spectrum = np.zeros((4,) + wigner_grid.shape, dtype=complex)
    for i, kv in enumerate(kq):
        for j, pv in enumerate(kp):
            kappa = np.hypot(kv, pv)
            if kappa > k_cutoff:
                continue
            phi = np.arctan2(pv, kv)
            radial = _radial_lagrange(coeffs, k_fine, kappa)  # (m_ext, 4)
            spectrum[:, i, j] = np.exp(1j * orders * phi) @ radial

    h_q = wigner_grid.axes[0].spacing
    h_p = wigner_grid.axes[1].spacing
    phase = np.exp(
        1j * (kq[:, None] * wigner_grid.axes[0].min
              + kp[None, :] * wigner_grid.axes[1].min)
    )
    w_values = np.fft.ifft2(spectrum * phase[None, :, :], axes=(1, 2))
    residue = float(np.abs(w_values.imag).max())
    if residue > 1e-6:
        raise ReconstructionError(
            f"slice assembly produced a non-real Wigner field "
            f"(imaginary residue {residue:.2e})"
        )
    wigner = PhaseField4(wigner_grid, w_values.real / (h_q * h_p), kind="wigner")
    return weyl_reconstruct(wigner)
