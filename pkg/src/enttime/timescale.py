"""The model-independent entanglement timescale and the curvature it predicts.

For H = sum_n A_n (x) B_n acting on a product state, the squared inverse
timescale is the double sum over term pairs of the product of connected
correlators,

    t_ent_inv_sq = sum_{n,m} (<A_n A_m> - <A_n><A_m>) (<B_n B_m> - <B_n><B_m>),

with every expectation taken in the respective initial factor state. Each
Renyi entropy of order alpha >= 2 then starts out as

    S_alpha(t) = (alpha / (alpha - 1)) * t_ent_inv_sq * t**2 + O(t**3),

so the initial curvature is (2 alpha / (alpha - 1)) * t_ent_inv_sq, one
number for the whole family. The first derivative at t = 0 vanishes for any
product start; :func:`first_derivative_check` measures it numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NumericalError
from .hamiltonian import ProductHamiltonian, ProductState, assemble, product_state_vector
from .linalg import as_complex_matrix, eig_hermitian, evolve_state
from .tolerances import DEGEN_TOL_REL, IMAG_TOL

__all__ = [
    "TimescaleReport",
    "CurvaturePrediction",
    "expectation",
    "entanglement_timescale",
    "predicted_curvature",
    "first_derivative_check",
]


@dataclass(frozen=True, eq=False)
class TimescaleReport:
    """Result of the covariance double sum.

    ``cov_a[n, m]`` holds <A_n A_m> - <A_n><A_m> in the A factor state and
    ``cov_b`` the same for the B factors. The matrices are reported exactly
    as computed; they are Hermitian under the permutation that swaps
    adjoint-paired terms (not entrywise), which is what forces the total sum
    real. ``scale`` is the Frobenius-norm product used to classify
    degeneracy, ``imag_residual`` the discarded imaginary part, and
    ``t_ent`` is ``t_ent_inv_sq ** -0.5`` or infinity when degenerate.
    """

    t_ent_inv_sq: float
    t_ent: float
    degenerate: bool
    cov_a: np.ndarray
    cov_b: np.ndarray
    imag_residual: float
    scale: float

    def __post_init__(self) -> None:
        self.cov_a.setflags(write=False)
        self.cov_b.setflags(write=False)


@dataclass(frozen=True)
class CurvaturePrediction:
    """Predicted d^2 S_alpha / dt^2 at t = 0 and its order-dependent factor."""

    alpha: int
    coefficient: float
    curvature: float


def expectation(op, psi) -> complex:
    """<psi| op |psi> for a normalized single-subsystem vector."""
    op = as_complex_matrix(op, name="operator")
    vec = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if op.shape != (vec.shape[0], vec.shape[0]):
        raise DimensionError(
            f"operator shape {op.shape!r} does not match vector length {vec.shape[0]}"
        )
    return complex(np.vdot(vec, op @ vec))


def _covariance_matrix(factors: list[np.ndarray], psi: np.ndarray) -> np.ndarray:
    """Connected-correlator matrix G[n, m] = <F_n F_m> - <F_n><F_m>."""
    applied = np.stack([f @ psi for f in factors])
    applied_adj = np.stack([dag @ psi for dag in (f.conj().T for f in factors)])
    second = np.einsum("nd,md->nm", applied_adj.conj(), applied)
    means = np.array([np.vdot(psi, row) for row in applied])
    return second - np.outer(means, means)


def entanglement_timescale(h: ProductHamiltonian, state: ProductState) -> TimescaleReport:
    """Evaluate the covariance double sum for a product Hamiltonian and state.

    Parameters
    ----------
    h : ProductHamiltonian
        Term list whose assembled total is Hermitian.
    state : ProductState
        Initial product state; expectations use its two factors separately.

    Returns
    -------
    TimescaleReport

    Raises
    ------
    DimensionError
        When the state dimensions do not match the Hamiltonian.
    NumericalError
        When the double sum keeps an imaginary part beyond ``IMAG_TOL``
        relative to the covariance scale (the symptom of a non-Hermitian
        total slipping through), or lands more negative than roundoff
        allows.
    """
    if (state.dim_a, state.dim_b) != (h.dim_a, h.dim_b):
        raise DimensionError(
            f"state dimensions ({state.dim_a}, {state.dim_b}) do not match "
            f"Hamiltonian dimensions ({h.dim_a}, {h.dim_b})"
        )
    cov_a = _covariance_matrix([a for a, _ in h.terms], state.psi_a)
    cov_b = _covariance_matrix([b for _, b in h.terms], state.psi_b)
    total = complex(np.sum(cov_a * cov_b))
    scale = float(np.linalg.norm(cov_a) * np.linalg.norm(cov_b))

    imag_residual = abs(total.imag)
    if imag_residual > IMAG_TOL * max(1.0, scale):
        raise NumericalError(
            f"covariance double sum has imaginary residual {imag_residual:.3e} "
            f"(scale {scale:.3e}); the assembled Hamiltonian is likely not Hermitian"
        )
    t2 = total.real
    if t2 < -DEGEN_TOL_REL * max(1.0, scale):
        raise NumericalError(
            f"covariance double sum is negative ({t2:.3e}) beyond roundoff "
            f"for scale {scale:.3e}"
        )
    t2 = max(t2, 0.0)
    degenerate = t2 <= DEGEN_TOL_REL * scale
    t_ent = math.inf if degenerate else t2 ** -0.5
    return TimescaleReport(
        t_ent_inv_sq=t2,
        t_ent=t_ent,
        degenerate=degenerate,
        cov_a=cov_a,
        cov_b=cov_b,
        imag_residual=imag_residual,
        scale=scale,
    )


def predicted_curvature(report: TimescaleReport, alpha: int) -> CurvaturePrediction:
    """Initial entropy curvature (2 alpha / (alpha - 1)) * t_ent_inv_sq.

    ``alpha`` must be an integer >= 2. The alpha -> 1 (von Neumann) limit
    has no finite curvature; use
    :func:`enttime.entropy.von_neumann_curvature_probe` for its
    logarithmic growth instead.
    """
    if isinstance(alpha, bool) or not isinstance(alpha, (int, np.integer)):
        raise ValueError(f"alpha must be an integer >= 2, got {alpha!r}")
    if alpha < 2:
        raise ValueError(
            f"alpha must be >= 2, got {alpha}; the alpha -> 1 limit diverges "
            "logarithmically, see von_neumann_curvature_probe"
        )
    coefficient = 2.0 * alpha / (alpha - 1.0)
    return CurvaturePrediction(
        alpha=int(alpha),
        coefficient=coefficient,
        curvature=coefficient * report.t_ent_inv_sq,
    )


def first_derivative_check(
    h: ProductHamiltonian,
    state: ProductState,
    alpha: int,
    dt: float,
) -> float:
    """Centered-difference estimate of dS_alpha/dt at t = 0.

    For a product initial state this is zero up to discretization and
    roundoff; a clearly nonzero return means the input is not the product
    state it claims to be. ``dt`` must be positive and small against the
    entanglement timescale; the estimate is
    (S_alpha(dt) - S_alpha(-dt)) / (2 dt).
    """
    # Local import: entropy builds on this module.
    from .entropy import renyi_from_probabilities, schmidt_probabilities

    if isinstance(alpha, bool) or not isinstance(alpha, (int, np.integer)) or alpha < 2:
        raise ValueError(f"alpha must be an integer >= 2, got {alpha!r}")
    dt = float(dt)
    if not math.isfinite(dt) or dt <= 0.0:
        raise ValueError(f"dt must be a positive finite number, got {dt!r}")
    dense = assemble(h)
    spectrum = eig_hermitian(dense)
    psi0 = product_state_vector(state)
    plus = schmidt_probabilities(evolve_state(dense, psi0, dt, spectrum=spectrum))
    minus = schmidt_probabilities(evolve_state(dense, psi0, -dt, spectrum=spectrum))
    s_plus = renyi_from_probabilities(plus, int(alpha))
    s_minus = renyi_from_probabilities(minus, int(alpha))
    return (s_plus - s_minus) / (2.0 * dt)
