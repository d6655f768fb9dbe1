"""Probability representation of spin-1/2 quantum mechanics.

The package models a spinning particle through four-component probability
vectors: optical and symplectic tomograms measured along quadrature axes,
and Wigner or Husimi quasidistribution vectors on phase space.  Closed-form
propagators evolve states, tomograms, and phase-space fields for free
motion, the harmonic oscillator, and the Landau problem of a charge in a
magnetic field, and verification scenarios compare every route against
analytic solutions.
"""

from .errors import (
    CapabilityError,
    ContractError,
    IllPosedDeconvolutionError,
    IllPosedOperatorError,
    NumericDomainError,
    PauliTomographError,
    ReconstructionError,
)
from .grids import (
    Axis,
    ComplexField,
    Grid,
    SpinDensityField,
    SpinorField,
    StateEnsemble,
    as_ensemble,
)
from .states import coherent_state, hermite_functions, oscillator_eigenstate
from .spectral import (
    fractional_fourier,
    quadrature_amplitude,
    spectral_antiderivative,
    spectral_derivative,
)
from .spinframe import (
    SpinFrame,
    SpinProbabilityVector,
    cross_from_vector,
    frame_selfcheck,
    spin_dequantize,
    spin_quantize,
    vector_from_cross,
    vector_from_pair,
)
from .quasidist import (
    PhaseField4,
    deconvolve_husimi_to_wigner,
    husimi_vector,
    smooth_wigner_to_husimi,
    symplectic_pullback,
    weyl_reconstruct,
    wigner_point_vector,
    wigner_vector,
)
from .tomography import (
    SymplecticSample,
    TomogramField4,
    default_angles,
    normalization_check,
    optical_tomogram_vector,
    rho_from_optical_tomogram,
    symplectic_from_optical,
    tomogram_from_wigner,
)
from .dynamics import (
    LandauWignerSlice,
    LinearFlow,
    PropagatorBundle,
    SpinGenerator,
    SpinPropagator,
    SymplecticEvolution,
    classical_flow,
    evolution_residual,
    evolve_state,
    evolve_tomogram,
    evolve_wigner,
    landau_flow_generator,
    propagator_bundle,
    spin_generator_from_field,
    spin_generator_homogeneous,
    spin_marginal_evolution,
    spin_propagator,
    tomographic_operator,
)
from .scenarios import (
    ScenarioReport,
    fit_beat_frequency,
    landau_analytic_tomogram,
    landau_entangled_initial,
    landau_state,
    landau_wigner_slice,
    oscillator_entangled_initial,
    oscillator_entangled_tomogram,
    run_scenario,
)
from .io_tjson import export_csv, from_payload, read_tjson, to_payload, write_tjson

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "CapabilityError",
    "ComplexField",
    "ContractError",
    "Grid",
    "IllPosedDeconvolutionError",
    "IllPosedOperatorError",
    "LandauWignerSlice",
    "LinearFlow",
    "NumericDomainError",
    "PauliTomographError",
    "PhaseField4",
    "PropagatorBundle",
    "ReconstructionError",
    "ScenarioReport",
    "SpinDensityField",
    "SpinFrame",
    "SpinGenerator",
    "SpinProbabilityVector",
    "SpinPropagator",
    "SpinorField",
    "StateEnsemble",
    "SymplecticEvolution",
    "SymplecticSample",
    "TomogramField4",
    "as_ensemble",
    "classical_flow",
    "coherent_state",
    "cross_from_vector",
    "deconvolve_husimi_to_wigner",
    "default_angles",
    "evolution_residual",
    "evolve_state",
    "evolve_tomogram",
    "evolve_wigner",
    "export_csv",
    "fit_beat_frequency",
    "fractional_fourier",
    "frame_selfcheck",
    "from_payload",
    "hermite_functions",
    "husimi_vector",
    "landau_analytic_tomogram",
    "landau_entangled_initial",
    "landau_flow_generator",
    "landau_state",
    "landau_wigner_slice",
    "normalization_check",
    "optical_tomogram_vector",
    "oscillator_eigenstate",
    "oscillator_entangled_initial",
    "oscillator_entangled_tomogram",
    "propagator_bundle",
    "quadrature_amplitude",
    "read_tjson",
    "rho_from_optical_tomogram",
    "run_scenario",
    "smooth_wigner_to_husimi",
    "symplectic_pullback",
    "spectral_antiderivative",
    "spectral_derivative",
    "spin_dequantize",
    "spin_generator_from_field",
    "spin_generator_homogeneous",
    "spin_marginal_evolution",
    "spin_propagator",
    "spin_quantize",
    "symplectic_from_optical",
    "to_payload",
    "tomogram_from_wigner",
    "tomographic_operator",
    "vector_from_cross",
    "vector_from_pair",
    "weyl_reconstruct",
    "wigner_point_vector",
    "wigner_vector",
    "write_tjson",
]
