"""Dense complex linear algebra kernel shared by all higher modules.

Index convention: a pure state of a bipartite system stores the amplitude of
basis ket |i>|j> at flat position i * dim_b + j, i.e. subsystem A owns the
slow (row-block) index. Kronecker products, partial traces and state
reshapes all assume this ordering, and the test oracles check it.

All heavy lifting is delegated to numpy (LAPACK); this module adds the
validation and the error contract.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NumericalError, StateError
from .tolerances import MAX_DIM, NORM_TOL, RECON_TOL

__all__ = [
    "as_complex_matrix",
    "dagger",
    "hermitian_defect",
    "hermitize",
    "kron",
    "partial_trace",
    "HermitianSpectrum",
    "eig_hermitian",
    "BipartitePureState",
    "evolve_state",
]


def as_complex_matrix(m, *, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex128 array.

    Parameters
    ----------
    m : array_like
        Anything numpy can turn into a matrix.
    name : str
        Label used in error messages.

    Returns
    -------
    numpy.ndarray
        2-D complex128 view or copy of the input.
    """
    out = np.asarray(m, dtype=np.complex128)
    if out.ndim != 2 or out.shape[0] < 1 or out.shape[1] < 1:
        raise DimensionError(
            f"{name} must be a 2-D array with positive dimensions, got shape {out.shape!r}"
        )
    if not np.all(np.isfinite(out)):
        raise StateError(f"{name} contains non-finite entries")
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def hermitian_defect(m: np.ndarray) -> float:
    """Largest absolute entry of M - M^dag."""
    return float(np.max(np.abs(m - dagger(m))))


def hermitize(m: np.ndarray) -> np.ndarray:
    """Symmetrized (M + M^dag) / 2; exact no-op for Hermitian input."""
    return 0.5 * (m + dagger(m))


def kron(a, b) -> np.ndarray:
    """Kronecker product with the A-slow index convention.

    Raises :class:`DimensionError` when the product dimension would exceed
    ``MAX_DIM`` in either direction.
    """
    a = as_complex_matrix(a, name="left factor")
    b = as_complex_matrix(b, name="right factor")
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > MAX_DIM or cols > MAX_DIM:
        raise DimensionError(
            f"kron product dimension {rows}x{cols} exceeds the configured maximum {MAX_DIM}"
        )
    return np.kron(a, b)


def partial_trace(rho, dim_a: int, dim_b: int, keep: str = "A") -> np.ndarray:
    """Trace out one subsystem of a (dim_a*dim_b)-dimensional operator.

    Parameters
    ----------
    rho : array_like
        Square operator on the composite space, A-slow index ordering.
    dim_a, dim_b : int
        Subsystem dimensions.
    keep : {"A", "B"}
        Which subsystem survives.

    Returns
    -------
    numpy.ndarray
        The reduced operator, symmetrized to kill roundoff asymmetry.
        The trace of the input is preserved exactly.
    """
    rho = as_complex_matrix(rho, name="rho")
    if dim_a < 1 or dim_b < 1:
        raise DimensionError(f"subsystem dimensions must be positive, got {dim_a}, {dim_b}")
    d = dim_a * dim_b
    if rho.shape != (d, d):
        raise DimensionError(
            f"rho has shape {rho.shape!r}, expected ({d}, {d}) for dims ({dim_a}, {dim_b})"
        )
    if keep not in ("A", "B"):
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    blocks = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        reduced = np.einsum("ijkj->ik", blocks)
    else:
        reduced = np.einsum("ijil->jl", blocks)
    return hermitize(reduced)


@dataclass(frozen=True, eq=False)
class HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending, ``eigenvectors`` holds the
    orthonormal eigenvectors as columns, so
    ``(eigenvectors * eigenvalues) @ eigenvectors.conj().T`` reconstructs the
    matrix. Instances come out of :func:`eig_hermitian`, which enforces the
    reconstruction residual; the fields are kept read-only.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self) -> None:
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        """The matrix V diag(w) V^dag this spectrum represents."""
        return (self.eigenvectors * self.eigenvalues) @ dagger(self.eigenvectors)


def eig_hermitian(m) -> HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix with a reconstruction check.

    The input is symmetrized as (M + M^dag)/2 before the solve; callers are
    expected to pass matrices that are already Hermitian to working
    precision. Raises :class:`NumericalError` when LAPACK fails to converge
    or the reconstruction residual exceeds ``RECON_TOL`` relative to
    max(1, max|M|).
    """
    m = as_complex_matrix(m, name="matrix")
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {m.shape!r}")
    sym = hermitize(m)
    try:
        w, v = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Hermitian eigensolver failed to converge: {exc}") from exc
    residual = float(np.max(np.abs((v * w) @ dagger(v) - sym)))
    tol = RECON_TOL * max(1.0, float(np.max(np.abs(sym))))
    if residual > tol:
        raise NumericalError(
            f"eigendecomposition reconstruction residual {residual:.3e} exceeds {tol:.3e}"
        )
    return HermitianSpectrum(eigenvalues=w, eigenvectors=v)


@dataclass(frozen=True, eq=False)
class BipartitePureState:
    """Pure state of an A x B system as a flat amplitude vector.

    The amplitude of |i>|j> sits at index i * dim_b + j. Construction
    validates the norm against ``NORM_TOL`` and freezes the array, so
    instances are safe to share between threads.
    """

    dim_a: int
    dim_b: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionError(
                f"subsystem dimensions must be positive, got {self.dim_a}, {self.dim_b}"
            )
        amps = np.array(self.amplitudes, dtype=np.complex128, copy=True).reshape(-1)
        if amps.shape[0] != self.dim_a * self.dim_b:
            raise DimensionError(
                f"amplitude vector has length {amps.shape[0]}, expected "
                f"{self.dim_a * self.dim_b} = {self.dim_a} * {self.dim_b}"
            )
        if not np.all(np.isfinite(amps)):
            raise StateError("state amplitudes contain non-finite entries")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise StateError(f"state norm {norm!r} deviates from 1 by more than {NORM_TOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def amplitude_matrix(self) -> np.ndarray:
        """Amplitudes as a (dim_a, dim_b) matrix; its SVD is the Schmidt form."""
        return self.amplitudes.reshape(self.dim_a, self.dim_b)

    def density_matrix(self) -> np.ndarray:
        """Projector |psi><psi| on the composite space."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


def evolve_state(
    h,
    psi0: BipartitePureState,
    t: float,
    *,
    spectrum: HermitianSpectrum | None = None,
) -> BipartitePureState:
    """Propagate ``psi0`` to exp(-i H t) psi0 by exact diagonalization.

    Parameters
    ----------
    h : array_like
        Hermitian Hamiltonian on the composite space (hbar = 1; entries are
        angular rates, t carries the inverse unit).
    psi0 : BipartitePureState
        Initial state.
    t : float
        Evolution time; negative values run the dynamics backwards.
    spectrum : HermitianSpectrum, optional
        Precomputed decomposition of ``h``. Pass it when evolving to many
        times so the solve happens once.

    Returns
    -------
    BipartitePureState
        The evolved state; the constructor re-checks the norm, so unitarity
        loss beyond ``NORM_TOL`` surfaces as a :class:`StateError`.
    """
    h = as_complex_matrix(h, name="hamiltonian")
    if h.shape != (psi0.dim, psi0.dim):
        raise DimensionError(
            f"hamiltonian shape {h.shape!r} does not match state dimension {psi0.dim}"
        )
    if spectrum is None:
        spectrum = eig_hermitian(h)
    elif spectrum.dim != psi0.dim:
        raise DimensionError(
            f"spectrum dimension {spectrum.dim} does not match state dimension {psi0.dim}"
        )
    modes = dagger(spectrum.eigenvectors) @ psi0.amplitudes
    phases = np.exp(-1j * spectrum.eigenvalues * float(t))
    amps = spectrum.eigenvectors @ (phases * modes)
    return BipartitePureState(psi0.dim_a, psi0.dim_b, amps)
