"""Entanglement timescales and entropy growth for bipartite quantum systems.

Given H = sum_n A_n (x) B_n and a product initial state, one covariance
double sum fixes the timescale on which every Renyi entropy of the reduced
state starts to grow; this package computes that timescale, evolves the
state exactly to confirm the predicted curvature, and ships the two
reference models used to exercise the machinery end to end.
"""

from __future__ import annotations

from .errors import (
    DimensionError,
    EnttimeError,
    ModelError,
    NumericalError,
    StateError,
    TruncationError,
)
from .entropy import (
    VON_NEUMANN_ALPHA,
    EntropySeries,
    alpha_purity,
    entropy_series,
    renyi_entropy,
    renyi_from_probabilities,
    schmidt_probabilities,
    von_neumann_curvature_probe,
    von_neumann_entropy,
    von_neumann_from_probabilities,
)
from .hamiltonian import ProductHamiltonian, ProductState, assemble, product_state_vector
from .linalg import (
    BipartitePureState,
    HermitianSpectrum,
    eig_hermitian,
    evolve_state,
    kron,
    partial_trace,
)
from .models import (
    BoseHubbardBoundarySpec,
    CoherentField,
    FockField,
    JcmSpec,
    build_bose_hubbard_boundary,
    build_jcm,
    jcm_analytic_state,
    jcm_log_divergence_coefficient,
    jcm_timescale_closed_form,
)
from .timescale import (
    CurvaturePrediction,
    TimescaleReport,
    entanglement_timescale,
    expectation,
    first_derivative_check,
    predicted_curvature,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "EnttimeError",
    "DimensionError",
    "StateError",
    "ModelError",
    "TruncationError",
    "NumericalError",
    "BipartitePureState",
    "HermitianSpectrum",
    "kron",
    "partial_trace",
    "eig_hermitian",
    "evolve_state",
    "ProductHamiltonian",
    "ProductState",
    "assemble",
    "product_state_vector",
    "TimescaleReport",
    "CurvaturePrediction",
    "expectation",
    "entanglement_timescale",
    "predicted_curvature",
    "first_derivative_check",
    "VON_NEUMANN_ALPHA",
    "EntropySeries",
    "schmidt_probabilities",
    "renyi_from_probabilities",
    "von_neumann_from_probabilities",
    "alpha_purity",
    "renyi_entropy",
    "von_neumann_entropy",
    "entropy_series",
    "von_neumann_curvature_probe",
    "JcmSpec",
    "FockField",
    "CoherentField",
    "BoseHubbardBoundarySpec",
    "build_jcm",
    "jcm_analytic_state",
    "jcm_timescale_closed_form",
    "jcm_log_divergence_coefficient",
    "build_bose_hubbard_boundary",
]
