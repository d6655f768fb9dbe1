"""End-to-end verification scenarios with closed-form reference solutions.

Two entangled two-mode problems admit analytic vector tomograms at all
times: a 1D oscillator carrying a spin in a homogeneous field, and a
2D charged-particle problem whose spatial spectrum is Landau-level
degenerate.  Each scenario evolves the initial state numerically,
compares against the closed forms at requested times, and fits the beat
frequency of the coherence oscillation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    LandauWignerSlice,
    classical_flow,
    evolve_state,
    evolve_tomogram,
    evolve_wigner,
    propagator_bundle,
)
from .errors import CapabilityError, ContractError
from .grids import ComplexField, Grid, SpinorField
from .quasidist import wigner_vector
from .spectral import quadrature_amplitude_values
from .states import oscillator_eigenstate
from .tomography import (
    TomogramField4,
    optical_tomogram_vector,
    tomogram_from_wigner,
)

# Landau-level scenario parameters: negative unit charge sign for both
# the spatial flow and the spin rotation.
LANDAU_OMEGA = -1.0
LANDAU_OMEGA0 = -1.0
# Oscillator scenario: spin precession at twice the mode frequency makes
# the coherence beat at 3 (spatial gap 1 plus spin gap 2).
OSCILLATOR_OMEGA0 = -2.0

OSCILLATOR_TIMES = (0.0, 0.3, 1.0, 2.0 * np.pi / 3.0)
LANDAU_TIMES = (0.0, 0.5, 1.0, np.pi)

# Fixed quadrature-angle pairs for the 2D comparison slices.
LANDAU_ANGLE_PAIRS = (
    (0.0, 0.0),
    (np.pi / 4, np.pi / 3),
    (np.pi / 2, np.pi / 2),
    (np.pi / 3, 0.0),
    (0.0, 3 * np.pi / 4),
    (2 * np.pi / 3, np.pi / 6),
    (5 * np.pi / 6, np.pi / 2),
    (np.pi / 8, 7 * np.pi / 8),
)

_SCENARIO_DEFAULTS = {
    "oscillator": {"error": 1e-6, "frequency": 1e-3, "target": 3.0},
    "landau": {"error": 1e-4, "frequency": 1e-2, "target": 2.0},
}


# ---------------------------------------------------------------------------
# Landau-level states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LandauState:
    """Lowest Landau-level eigenstate psi_{n m} on a 2D grid."""

    n: int
    m: int
    grid: Grid
    field: ComplexField


def landau_state(n: int, m: int, grid: Grid | None = None) -> LandauState:
    """Closed-form Landau eigenstates for the supported quantum numbers.

    psi_00 is the Gaussian ground mode; psi_10 adds one quantum along
    the cyclotron ladder.  Both carry the gauge phase exp(i q1 q2 / 2).
    """
    if (n, m) not in ((0, 0), (1, 0)):
        raise CapabilityError(
            f"landau_state supports (n, m) in {{(0, 0), (1, 0)}}, got {(n, m)}"
        )
    if grid is None:
        grid = Grid.default_2d()
    if grid.ndim != 2:
        raise ContractError("Landau states live on a 2D grid")
    q1, q2 = grid.meshgrid()
    envelope = np.exp(-0.25 * q1**2 - 0.25 * q2**2 + 0.5j * q1 * q2)
    if n == 0:
        values = envelope / np.sqrt(2.0 * np.pi)
    else:
        values = (1j * q1 - q2) / (2.0 * np.sqrt(np.pi)) * envelope
    return LandauState(n, m, grid, ComplexField(grid, values))


def landau_entangled_initial(grid: Grid | None = None) -> SpinorField:
    """Spin-orbit entangled Landau pair: up carries psi_10, down psi_00."""
    if grid is None:
        grid = Grid.default_2d()
    up = landau_state(1, 0, grid).field
    down = landau_state(0, 0, grid).field
    return SpinorField.normalized(up.values, down.values, grid)


def oscillator_entangled_initial(grid: Grid | None = None) -> SpinorField:
    """1D analogue: up carries the first Fock state, down the ground one."""
    if grid is None:
        grid = Grid.default_1d()
    up = oscillator_eigenstate(1, grid)
    down = oscillator_eigenstate(0, grid)
    return SpinorField.normalized(up.values, down.values, grid)


# ---------------------------------------------------------------------------
# closed-form tomograms
# ---------------------------------------------------------------------------

def _entangled_vector(sigma, beat):
    """Vector components of the (up, down)/sqrt(2) coherence pattern."""
    shape = np.broadcast_shapes(np.shape(sigma), np.shape(beat))
    values = np.empty((4,) + shape)
    values[0] = 0.25 * (sigma + 2.0 * np.real(beat))
    values[1] = 0.25 * (sigma + 2.0 * np.imag(beat))
    return values


def oscillator_entangled_tomogram(t: float, thetas=None,
                                  grid: Grid | None = None) -> TomogramField4:
    """Analytic vector optical tomogram of the oscillator scenario.

    The coherence term beats as exp(i 3 t): one quantum of spatial gap
    plus the spin precession at |omega0| = 2.
    """
    if grid is None:
        grid = Grid.default_1d()
    if thetas is None:
        thetas = 2.0 * np.pi * np.arange(64) / 64.0
    thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    xs = grid.axes[0].coords()
    gauss = np.exp(-(xs**2)) / np.sqrt(np.pi)
    w00 = gauss
    w11 = 2.0 * xs**2 * gauss
    w01 = (np.sqrt(2.0) * xs[None, :] * gauss[None, :]
           * np.exp(1j * thetas)[:, None])
    sigma = (w00 + w11)[None, :]
    values = _entangled_vector(sigma, w01 * np.exp(3j * t))
    values[2] = 0.5 * w11
    values[3] = 0.5 * w00
    return TomogramField4(grid, thetas, np.swapaxes(values, 0, 1))


def landau_analytic_tomogram(t: float, theta_pairs=None,
                             grid: Grid | None = None) -> TomogramField4:
    """Analytic vector optical tomogram of the Landau scenario.

    The quadrature amplitudes of both modes are stationary in shape (the
    level gap is compensated by the spin phase only through the beat
    factor exp(i 2 t)); components 3 and 4 are exact motion integrals.
    """
    if grid is None:
        grid = Grid.default_2d()
    if theta_pairs is None:
        theta_pairs = LANDAU_ANGLE_PAIRS
    pairs = np.atleast_2d(np.asarray(theta_pairs, dtype=np.float64))
    psi00 = landau_state(0, 0, grid).field.values
    psi10 = landau_state(1, 0, grid).field.values
    values = np.empty((pairs.shape[0], 4) + grid.shape)
    for row, pair in enumerate(pairs):
        a00 = quadrature_amplitude_values(psi00, grid, pair)
        a10 = quadrature_amplitude_values(psi10, grid, pair)
        w0000 = np.abs(a00) ** 2
        w1010 = np.abs(a10) ** 2
        w0010 = a00 * np.conj(a10)
        block = _entangled_vector(w0000 + w1010, w0010 * np.exp(2j * t))
        block[2] = 0.5 * w1010
        block[3] = 0.5 * w0000
        values[row] = block
    return TomogramField4(grid, pairs, values)


# ---------------------------------------------------------------------------
# closed-form Landau Wigner trajectory (for transport-equation residuals)
# ---------------------------------------------------------------------------

def _landau_mode_wigner(q1, q2, p1, p2):
    """Closed-form Wigner data of the two Landau modes.

    Returns (W_0000, W_1010, W_0010) where the last is the cross-Wigner
    of (psi_00, psi_10); all share the Gaussian exp(-Phi).
    """
    phi = (q1**2 + q2**2 + 2.0 * p1**2 + 2.0 * p2**2
           - 2.0 * p1 * q2 - 2.0 * q1 * p2)
    gauss = np.exp(-phi) / np.pi**2
    alpha = (p1 - q2 - 1j * p2) / np.sqrt(2.0)
    return gauss, (4.0 * np.abs(alpha) ** 2 - 1.0) * gauss, 2.0 * alpha * gauss


def landau_wigner_slice(t: float, grid3: Grid, p1: float,
                        omega: float = LANDAU_OMEGA,
                        omega0: float = LANDAU_OMEGA0) -> LandauWignerSlice:
    """Analytic vector Wigner of the Landau scenario on a (q1, q2, p2)
    slice at fixed p1: transport along the inverse flow plus the beat
    phase of the cross term."""
    if grid3.ndim != 3:
        raise ContractError("slice grid must cover (q1, q2, p2)")
    a_inv = np.linalg.inv(classical_flow("landau", t, omega=omega, dims=2).matrix)
    g1, g2, g4 = grid3.meshgrid()
    z = np.stack([g1, g2, np.full_like(g1, p1), g4])
    z0 = np.einsum("ij,j...->i...", a_inv, z)
    w0000, w1010, w0010 = _landau_mode_wigner(*z0)
    # the pulled-back cross term is a flow eigenfunction and already
    # carries the level-gap phase; only the spin phase is added here
    cross = 0.5 * np.conj(w0010) * np.exp(1j * omega0 * t)
    values = np.empty((4,) + grid3.shape)
    values[0] = 0.25 * (w0000 + w1010) + np.real(cross)
    values[1] = 0.25 * (w0000 + w1010) - np.imag(cross)
    values[2] = 0.5 * w1010
    values[3] = 0.5 * w0000
    return LandauWignerSlice(grid3, p1, values)


# ---------------------------------------------------------------------------
# scenario driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScenarioReport:
    """Comparison record of one scenario run."""

    scenario_id: str
    times: tuple
    errors: dict
    fitted_frequency: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "id": self.scenario_id,
            "times": list(self.times),
            "errors": self.errors,
            "fitted_frequency": self.fitted_frequency,
            "pass": self.passed,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def fit_beat_frequency(times, z_values) -> float:
    """Least-squares slope of the unwrapped coherence phase."""
    times = np.asarray(times, dtype=np.float64)
    phases = np.unwrap(np.angle(np.asarray(z_values)))
    if times.size < 2:
        raise ContractError("frequency fit needs at least two times")
    return float(np.polyfit(times, phases, 1)[0])


def _coherence_probe(values, index):
    """z = (w1 - s/2) + i (w2 - s/2) at one sample point, s = w3 + w4."""
    half_trace = 0.5 * (values[2][index] + values[3][index])
    return complex(values[0][index] - half_trace,
                   values[1][index] - half_trace)


def _component_errors(numeric, analytic):
    """Per-component max-abs deviation between two stacked tomograms."""
    diff = np.abs(numeric - analytic)
    axes = tuple(i for i in range(diff.ndim) if i != 1)
    return diff.max(axis=axes)


def _time_key(t: float) -> str:
    return format(float(t), ".12g")


def _run_oscillator(times, grid):
    initial = oscillator_entangled_initial(grid)
    thetas = 2.0 * np.pi * np.arange(64) / 64.0
    # the dense-Wigner route costs one plane pullback per angle, so it
    # spot-checks a spread-out subset while the tomogram route covers all
    radon_thetas = thetas[::8]
    tom0 = optical_tomogram_vector(initial, thetas=thetas)
    w0 = wigner_vector(initial)
    wigner_x = Grid((w0.grid.axes[0],))

    errors = {f"w{j + 1}": {} for j in range(4)}
    for t in times:
        bundle = propagator_bundle("oscillator", float(t),
                                   omega0=OSCILLATOR_OMEGA0)
        tom_t = evolve_tomogram("optical", tom0, bundle)
        exact = oscillator_entangled_tomogram(float(t), thetas, grid)
        errs = _component_errors(tom_t.values, exact.values)

        w_t = evolve_wigner(w0, bundle)
        radon = tomogram_from_wigner(w_t, thetas=radon_thetas)
        exact_w = oscillator_entangled_tomogram(float(t), radon_thetas, wigner_x)
        errs = np.maximum(errs, _component_errors(radon.values, exact_w.values))
        for j in range(4):
            errors[f"w{j + 1}"][_time_key(t)] = float(errs[j])

    # dense internal sweep for the beat slope, probed at (theta=0, X~1)
    probe_x = int(np.argmin(np.abs(grid.axes[0].coords() - 1.0)))
    fit_times = np.linspace(0.0, max(float(max(times)), 1.0), 7)
    zs = []
    for t in fit_times:
        bundle = propagator_bundle("oscillator", float(t),
                                   omega0=OSCILLATOR_OMEGA0)
        tom_t = evolve_tomogram("optical", tom0, bundle)
        zs.append(_coherence_probe(tom_t.values[0], (probe_x,)))
    return errors, fit_beat_frequency(fit_times, zs)


def _run_landau(times, grid):
    initial = landau_entangled_initial(grid)
    pairs = np.asarray(LANDAU_ANGLE_PAIRS)

    errors = {f"w{j + 1}": {} for j in range(4)}
    for t in times:
        evolved = evolve_state(initial, "landau", float(t),
                               omega0=LANDAU_OMEGA0, omega=LANDAU_OMEGA)
        numeric = optical_tomogram_vector(evolved, thetas=pairs)
        exact = landau_analytic_tomogram(float(t), pairs, grid)
        errs = _component_errors(numeric.values, exact.values)
        for j in range(4):
            errors[f"w{j + 1}"][_time_key(t)] = float(errs[j])

    mid = grid.shape[0] // 2 + grid.shape[0] // 8
    probe = (0, mid, mid)  # pair (0, 0), off-center spatial point
    fit_times = np.linspace(0.0, max(float(max(times)), 1.0), 13)
    zs = []
    for t in fit_times:
        evolved = evolve_state(initial, "landau", float(t),
                               omega0=LANDAU_OMEGA0, omega=LANDAU_OMEGA)
        numeric = optical_tomogram_vector(evolved, thetas=pairs[:1])
        zs.append(_coherence_probe(numeric.values[0], probe[1:]))
    return errors, fit_beat_frequency(fit_times, zs)


def run_scenario(scenario_id: str, times=None, tolerances=None,
                 grid: Grid | None = None) -> ScenarioReport:
    """Run one verification scenario and report errors and beat frequency.

    Parameters
    ----------
    scenario_id : str
        "oscillator" or "landau".
    times : sequence of float, optional
        Comparison times; scenario defaults otherwise.
    tolerances : dict, optional
        Overrides for {"error", "frequency"}; the pass flag uses them.
    grid : Grid, optional
        Spatial grid for the states (1D for oscillator, 2D for landau).
    """
    if scenario_id not in _SCENARIO_DEFAULTS:
        raise ContractError(f"unknown scenario {scenario_id!r}")
    defaults = _SCENARIO_DEFAULTS[scenario_id]
    tol = dict(defaults)
    if tolerances:
        tol.update(tolerances)

    if scenario_id == "oscillator":
        times = OSCILLATOR_TIMES if times is None else tuple(times)
        errors, freq = _run_oscillator(times, grid or Grid.default_1d())
    else:
        times = LANDAU_TIMES if times is None else tuple(times)
        errors, freq = _run_landau(times, grid or Grid.default_2d())

    worst = max(max(per.values()) for per in errors.values())
    passed = (worst <= tol["error"]
              and abs(freq - tol["target"]) <= tol["frequency"])
    return ScenarioReport(scenario_id, tuple(float(t) for t in times),
                          errors, freq, bool(passed))
