"""Product-form Hamiltonians H = sum_n A_n (x) B_n and product states.

The decomposition into local factor pairs is the input format of the whole
package: the timescale formula consumes the factors directly, while dynamics
consume the assembled dense matrix. Individual factors need not be Hermitian
(ladder operators pair up with their adjoints across terms); only the
assembled total must be.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ModelError, StateError
from .linalg import BipartitePureState, as_complex_matrix, dagger, hermitize, kron
from .tolerances import HERM_TOL, NORM_TOL

__all__ = [
    "ProductHamiltonian",
    "ProductState",
    "assemble",
    "product_state_vector",
]


@dataclass(frozen=True, eq=False)
class ProductHamiltonian:
    """Hamiltonian given as a sum of Kronecker-product terms.

    ``terms`` is a sequence of (A_n, B_n) pairs with A_n acting on the
    dim_a-dimensional subsystem and B_n on the dim_b-dimensional one.
    Construction validates shapes and finiteness; Hermiticity of the total
    is checked where the dense matrix is built (:func:`assemble`), because
    the factors themselves are generally not Hermitian.
    """

    dim_a: int
    dim_b: int
    terms: tuple[tuple[np.ndarray, np.ndarray], ...]

    def __post_init__(self) -> None:
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionError(
                f"subsystem dimensions must be positive, got {self.dim_a}, {self.dim_b}"
            )
        if len(self.terms) == 0:
            raise ModelError("a product Hamiltonian needs at least one term")
        frozen = []
        for k, pair in enumerate(self.terms):
            if len(pair) != 2:
                raise ModelError(f"term {k} is not an (A, B) pair")
            a = as_complex_matrix(pair[0], name=f"term {k} factor A")
            b = as_complex_matrix(pair[1], name=f"term {k} factor B")
            if a.shape != (self.dim_a, self.dim_a):
                raise DimensionError(
                    f"term {k} factor A has shape {a.shape!r}, expected "
                    f"({self.dim_a}, {self.dim_a})"
                )
            if b.shape != (self.dim_b, self.dim_b):
                raise DimensionError(
                    f"term {k} factor B has shape {b.shape!r}, expected "
                    f"({self.dim_b}, {self.dim_b})"
                )
            a = a.copy()
            b = b.copy()
            a.setflags(write=False)
            b.setflags(write=False)
            frozen.append((a, b))
        object.__setattr__(self, "terms", tuple(frozen))

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b


@dataclass(frozen=True, eq=False)
class ProductState:
    """Normalized product initial state psi_a (x) psi_b."""

    psi_a: np.ndarray
    psi_b: np.ndarray

    def __post_init__(self) -> None:
        for label in ("psi_a", "psi_b"):
            vec = np.array(getattr(self, label), dtype=np.complex128, copy=True).reshape(-1)
            if vec.shape[0] < 1:
                raise DimensionError(f"{label} must have at least one amplitude")
            if not np.all(np.isfinite(vec)):
                raise StateError(f"{label} contains non-finite entries")
            norm = float(np.linalg.norm(vec))
            if abs(norm - 1.0) > NORM_TOL:
                raise StateError(
                    f"{label} norm {norm!r} deviates from 1 by more than {NORM_TOL}"
                )
            vec.setflags(write=False)
            object.__setattr__(self, label, vec)

    @property
    def dim_a(self) -> int:
        return self.psi_a.shape[0]

    @property
    def dim_b(self) -> int:
        return self.psi_b.shape[0]


def assemble(h: ProductHamiltonian) -> np.ndarray:
    """Dense matrix sum_n kron(A_n, B_n), verified Hermitian.

    Raises :class:`ModelError` naming the worst off-diagonal residual when
    the terms do not add up to a Hermitian operator within ``HERM_TOL``
    relative to max(1, max|H|).
    """
    total = np.zeros((h.dim, h.dim), dtype=np.complex128)
    for a, b in h.terms:
        total += kron(a, b)
    defect_matrix = np.abs(total - dagger(total))
    defect = float(np.max(defect_matrix))
    tol = HERM_TOL * max(1.0, float(np.max(np.abs(total))))
    if defect > tol:
        i, j = np.unravel_index(int(np.argmax(defect_matrix)), defect_matrix.shape)
        raise ModelError(
            f"assembled Hamiltonian is not Hermitian: worst off-diagonal residual "
            f"{defect:.3e} at entry ({i}, {j}) exceeds {tol:.3e}"
        )
    return hermitize(total)


def product_state_vector(state: ProductState) -> BipartitePureState:
    """Flatten a product state into the composite-space amplitude vector."""
    amps = np.kron(state.psi_a, state.psi_b)
    return BipartitePureState(state.dim_a, state.dim_b, amps)
