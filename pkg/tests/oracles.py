"""Independent reference implementations the tests check the package against.

Everything in here is deliberately naive: explicit index loops, repeated
matrix multiplication, scipy's expm. Slow, but obviously correct at the
sizes the tests use, and sharing no code path with the package.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg


def kron_loops(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=np.complex128)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def partial_trace_loops(rho: np.ndarray, dim_a: int, dim_b: int, keep: str) -> np.ndarray:
    if keep == "A":
        out = np.zeros((dim_a, dim_a), dtype=np.complex128)
        for i in range(dim_a):
            for ip in range(dim_a):
                for j in range(dim_b):
                    out[i, ip] += rho[i * dim_b + j, ip * dim_b + j]
        return out
    out = np.zeros((dim_b, dim_b), dtype=np.complex128)
    for j in range(dim_b):
        for jp in range(dim_b):
            for i in range(dim_a):
                out[j, jp] += rho[i * dim_b + j, i * dim_b + jp]
    return out


def expectation_loops(op: np.ndarray, psi: np.ndarray) -> complex:
    total = 0.0 + 0.0j
    for i in range(len(psi)):
        for j in range(len(psi)):
            total += np.conj(psi[i]) * op[i, j] * psi[j]
    return complex(total)


def covariance_sum_loops(terms, psi_a: np.ndarray, psi_b: np.ndarray) -> complex:
    """The timescale double sum, straight from its definition."""
    total = 0.0 + 0.0j
    for a_n, b_n in terms:
        for a_m, b_m in terms:
            cov_a = expectation_loops(a_n @ a_m, psi_a) - expectation_loops(
                a_n, psi_a
            ) * expectation_loops(a_m, psi_a)
            cov_b = expectation_loops(b_n @ b_m, psi_b) - expectation_loops(
                b_n, psi_b
            ) * expectation_loops(b_m, psi_b)
            total += cov_a * cov_b
    return complex(total)


def purity_matrix_power(rho: np.ndarray, alpha: int) -> float:
    return float(np.trace(np.linalg.matrix_power(rho, alpha)).real)


def renyi_matrix_power(rho: np.ndarray, alpha: int) -> float:
    return float(np.log(purity_matrix_power(rho, alpha)) / (1 - alpha))


def von_neumann_eigh(rho: np.ndarray) -> float:
    p = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    p = p[p > 0.0]
    return float(-np.sum(p * np.log(p)))


def expm_propagate(h: np.ndarray, psi: np.ndarray, t: float) -> np.ndarray:
    """Propagator through scipy's Pade expm, independent of eigh."""
    return scipy.linalg.expm(-1j * h * t) @ psi


def stencil_second_derivative(f, t0: float, h: float) -> float:
    """5-point central second derivative of a callable."""
    values = [f(t0 + k * h) for k in (-2, -1, 0, 1, 2)]
    return (
        -values[0] + 16 * values[1] - 30 * values[2] + 16 * values[3] - values[4]
    ) / (12 * h * h)


def random_unit_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def random_matrix(rng: np.random.Generator, rows: int, cols: int | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = random_matrix(rng, dim)
    return 0.5 * (g + g.conj().T)


def random_density_matrix(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = random_matrix(rng, dim)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_term_list(rng: np.random.Generator, dim_a: int, dim_b: int, n_groups: int):
    """Random (A, B) pairs whose assembled sum is Hermitian.

    Each group is either a pair of Hermitian factors or a non-Hermitian pair
    together with its adjoint pair, mirroring how ladder operators enter
    physical models.
    """
    terms = []
    for _ in range(n_groups):
        if rng.random() < 0.5:
            terms.append((random_hermitian(rng, dim_a), random_hermitian(rng, dim_b)))
        else:
            ga = random_matrix(rng, dim_a)
            gb = random_matrix(rng, dim_b)
            terms.append((ga, gb))
            terms.append((ga.conj().T, gb.conj().T))
    return terms
