"""Reference models: Jaynes-Cummings and a two-site Bose-Hubbard boundary.

Conventions (hbar = 1, all rates angular):

* Atom basis ordering is |excited> = index 0, |ground> = index 1, so
  sigma_z = diag(+1, -1) satisfies sigma_z |e> = +|e>.
* The field/site mode uses the number basis 0..n_max with the annihilation
  matrix a[n-1, n] = sqrt(n); truncation silently drops the coupling out of
  the top level, so specs enforce that negligible population ever reaches
  it.

The resonant rotating-wave Jaynes-Cummings Hamiltonian built here is

    H = (omega/2) sigma_z (x) 1 + 1 (x) omega a^dag a
        + lam (sigma_- (x) a^dag + sigma_+ (x) a),

and its dynamics from a product start (atom superposition times a fixed
photon distribution C_n) stays pairwise: each |e, n> rotates against
|g, n+1> at Rabi rate lam * sqrt(n+1). That closed form powers the analytic
cross-checks below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ModelError, StateError, TruncationError
from .hamiltonian import ProductHamiltonian, ProductState
from .linalg import BipartitePureState
from .timescale import entanglement_timescale
from .tolerances import NORM_TOL, TAIL_TOL

__all__ = [
    "ATOM_EXCITED",
    "ATOM_GROUND",
    "annihilation",
    "creation",
    "number_operator",
    "identity",
    "sigma_z",
    "sigma_plus",
    "sigma_minus",
    "FockField",
    "CoherentField",
    "JcmSpec",
    "field_amplitudes",
    "coherent_tail_mass",
    "suggest_coherent_cutoff",
    "build_jcm",
    "jcm_analytic_state",
    "jcm_timescale_closed_form",
    "jcm_log_divergence_coefficient",
    "BoseHubbardBoundarySpec",
    "build_bose_hubbard_boundary",
]

ATOM_EXCITED = 0
ATOM_GROUND = 1


def annihilation(dim: int) -> np.ndarray:
    """Truncated mode annihilation operator, a[n-1, n] = sqrt(n)."""
    if dim < 1:
        raise ModelError(f"mode dimension must be positive, got {dim}")
    a = np.zeros((dim, dim), dtype=np.complex128)
    ns = np.arange(1, dim)
    a[ns - 1, ns] = np.sqrt(ns)
    return a


def creation(dim: int) -> np.ndarray:
    """Adjoint of :func:`annihilation` on the same truncated space."""
    return annihilation(dim).conj().T


def number_operator(dim: int) -> np.ndarray:
    """diag(0, 1, ..., dim - 1)."""
    if dim < 1:
        raise ModelError(f"mode dimension must be positive, got {dim}")
    return np.diag(np.arange(dim, dtype=np.float64)).astype(np.complex128)


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def sigma_z() -> np.ndarray:
    return np.diag([1.0, -1.0]).astype(np.complex128)


def sigma_plus() -> np.ndarray:
    """|e><g| in the (excited, ground) ordering."""
    out = np.zeros((2, 2), dtype=np.complex128)
    out[ATOM_EXCITED, ATOM_GROUND] = 1.0
    return out


def sigma_minus() -> np.ndarray:
    """|g><e| in the (excited, ground) ordering."""
    out = np.zeros((2, 2), dtype=np.complex128)
    out[ATOM_GROUND, ATOM_EXCITED] = 1.0
    return out


@dataclass(frozen=True)
class FockField:
    """Field prepared in the number state |n>."""

    n: int


@dataclass(frozen=True)
class CoherentField:
    """Field prepared in the coherent state with complex amplitude nu."""

    nu: complex


def suggest_coherent_cutoff(nu: complex) -> int:
    """A mode cutoff holding a coherent state's tail below TAIL_TOL.

    Poisson mass above mean + O(sqrt(mean)) decays superexponentially; the
    margin below is generous for any |nu| this dense solver can afford.
    """
    mean = abs(nu) ** 2
    return int(math.ceil(mean + 10.0 * math.sqrt(mean) + 20.0))


def coherent_tail_mass(nu: complex, n_max: int) -> float:
    """Probability a coherent state holds above occupation n_max.

    Summed upward from n_max + 1 in log space, so small tails come out
    without cancellation against 1.
    """
    if n_max < 0:
        raise ModelError(f"n_max must be nonnegative, got {n_max}")
    mean = abs(nu) ** 2
    if mean == 0.0:
        return 0.0
    log_mean = math.log(mean)
    mass = 0.0
    for n in range(n_max + 1, n_max + 1 + max(200, 4 * int(mean) + 40)):
        log_term = -mean + n * log_mean - math.lgamma(n + 1)
        if log_term < -745.0:  # exp underflows to 0 here
            break
        mass += math.exp(log_term)
    return mass


@dataclass(frozen=True)
class JcmSpec:
    """Resonant Jaynes-Cummings model with a product initial state.

    ``lam`` is the coupling rate and ``omega`` the shared transition/mode
    frequency (angular, hbar = 1). The atom starts in c_e |e> + c_g |g>,
    the field in the given occupation distribution truncated at n_max
    photons. Fock occupations must sit strictly below n_max so the level
    coupled to them remains represented; coherent amplitudes must leave at
    most TAIL_TOL probability above the cutoff.
    """

    lam: float
    n_max: int
    field: FockField | CoherentField
    c_e: complex = 1.0
    c_g: complex = 0.0
    omega: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.lam) or not math.isfinite(self.omega):
            raise ModelError("lam and omega must be finite")
        if self.n_max < 1:
            raise ModelError(f"n_max must be at least 1, got {self.n_max}")
        norm = math.hypot(abs(self.c_e), abs(self.c_g))
        if abs(norm - 1.0) > NORM_TOL:
            raise StateError(f"atom amplitudes have norm {norm!r}, expected 1")
        if isinstance(self.field, FockField):
            n = self.field.n
            if n < 0:
                raise ModelError(f"Fock occupation must be nonnegative, got {n}")
            if n > self.n_max - 1:
                raise TruncationError(
                    f"Fock occupation {n} needs n_max >= {n + 1} so the coupled "
                    f"level |{n + 1}> is represented, got n_max = {self.n_max}"
                )
        elif isinstance(self.field, CoherentField):
            tail = coherent_tail_mass(self.field.nu, self.n_max)
            if tail > TAIL_TOL:
                raise TruncationError(
                    f"coherent state with |nu| = {abs(self.field.nu):.4g} leaves "
                    f"probability {tail:.3e} above n_max = {self.n_max}; "
                    f"use n_max >= {suggest_coherent_cutoff(self.field.nu)}"
                )
        else:
            raise ModelError(f"unsupported field type {self.field!r}")

    @property
    def dim_field(self) -> int:
        return self.n_max + 1


def field_amplitudes(spec: JcmSpec) -> np.ndarray:
    """Photon-number amplitudes C_n of the initial field, length n_max + 1.

    Coherent amplitudes are renormalized after truncation; the discarded
    mass is below TAIL_TOL by construction, so this shifts nothing beyond
    machine precision while keeping the vector exactly normalized.
    """
    dim = spec.dim_field
    if isinstance(spec.field, FockField):
        amps = np.zeros(dim, dtype=np.complex128)
        amps[spec.field.n] = 1.0
        return amps
    nu = complex(spec.field.nu)
    ns = np.arange(dim)
    if nu == 0:
        amps = np.zeros(dim, dtype=np.complex128)
        amps[0] = 1.0
        return amps
    log_mag = -0.5 * abs(nu) ** 2 + ns * math.log(abs(nu))
    log_mag -= 0.5 * np.array([math.lgamma(n + 1) for n in ns])
    amps = np.exp(log_mag) * np.exp(1j * ns * np.angle(nu))
    amps /= np.linalg.norm(amps)
    return amps


def build_jcm(spec: JcmSpec) -> tuple[ProductHamiltonian, ProductState]:
    """Product-form Hamiltonian and initial state for the model.

    Term order: atomic splitting, mode energy, sigma_- (x) a^dag,
    sigma_+ (x) a. On resonance the free terms commute with the coupling,
    and excitation number sigma_z/2 + a^dag a is conserved exactly even on
    the truncated space (truncation only removes couplings).
    """
    dim = spec.dim_field
    terms = (
        (0.5 * spec.omega * sigma_z(), identity(dim)),
        (identity(2), spec.omega * number_operator(dim)),
        (spec.lam * sigma_minus(), creation(dim)),
        (spec.lam * sigma_plus(), annihilation(dim)),
    )
    psi_a = np.zeros(2, dtype=np.complex128)
    psi_a[ATOM_EXCITED] = spec.c_e
    psi_a[ATOM_GROUND] = spec.c_g
    h = ProductHamiltonian(dim_a=2, dim_b=dim, terms=terms)
    state = ProductState(psi_a=psi_a, psi_b=field_amplitudes(spec))
    return h, state


def jcm_analytic_state(spec: JcmSpec, t: float) -> BipartitePureState:
    """Closed-form state at time t, bypassing diagonalization.

    Each doublet {|e, n>, |g, n+1>} rotates at Rabi rate lam * sqrt(n+1);
    on top of that the free part contributes the local phases
    exp(-i omega (n + 1/2) t) on the e branch and exp(-i omega (n - 1/2) t)
    on the g branch. Those phases are local unitaries, so entropies and
    timescales cannot see them, but they make this expression agree with
    full-Hamiltonian propagation for any omega, not just omega = 0.
    """
    t = float(t)
    dim = spec.dim_field
    c = field_amplitudes(spec)
    c_up = np.append(c[1:], 0.0)  # C_{n+1}, zero past the cutoff
    c_down = np.append(0.0, c[:-1])  # C_{n-1}, zero below the vacuum
    ns = np.arange(dim)
    rabi_e = spec.lam * np.sqrt(ns + 1.0) * t
    rabi_g = spec.lam * np.sqrt(ns.astype(np.float64)) * t
    amp_e = spec.c_e * c * np.cos(rabi_e) - 1j * spec.c_g * c_up * np.sin(rabi_e)
    amp_g = -1j * spec.c_e * c_down * np.sin(rabi_g) + spec.c_g * c * np.cos(rabi_g)
    amp_e = amp_e * np.exp(-1j * spec.omega * (ns + 0.5) * t)
    amp_g = amp_g * np.exp(-1j * spec.omega * (ns - 0.5) * t)
    amps = np.zeros(2 * dim, dtype=np.complex128)
    amps[ATOM_EXCITED * dim : ATOM_EXCITED * dim + dim] = amp_e
    amps[ATOM_GROUND * dim : ATOM_GROUND * dim + dim] = amp_g
    return BipartitePureState(dim_a=2, dim_b=dim, amplitudes=amps)


def jcm_timescale_closed_form(spec: JcmSpec) -> float:
    """Squared inverse timescale from the photon distribution alone.

    For an atom starting exactly excited,

        t_ent_inv_sq = lam^2 * (sum_n (n+1) |C_n|^2 - |sum_n sqrt(n+1) C*_{n+1} C_n|^2),

    and exactly ground the same with |C_n|^2 -> |C_{n+1}|^2 in the first
    sum. Fock input reduces these to lam^2 (N+1) and lam^2 N; a coherent
    state gives lam^2 (excited) and 0 (ground, degenerate). Atom
    superpositions fall back to the general covariance sum.
    """
    if abs(spec.c_g) != 0.0 and abs(spec.c_e) != 0.0:
        h, state = build_jcm(spec)
        return entanglement_timescale(h, state).t_ent_inv_sq
    c = field_amplitudes(spec)
    ns = np.arange(spec.dim_field)
    weights = np.abs(c) ** 2
    cross = complex(np.sum(np.sqrt(ns[:-1] + 1.0) * np.conj(c[1:]) * c[:-1]))
    if abs(spec.c_g) == 0.0:
        quadratic = float(np.sum((ns + 1.0) * weights))
    else:
        quadratic = float(np.sum(ns * weights))
    value = spec.lam**2 * (quadratic - abs(cross) ** 2)
    return max(value, 0.0)


def jcm_log_divergence_coefficient(spec: JcmSpec) -> tuple[float, float]:
    """Coefficients (a, b) of the short-time von Neumann curvature a + b ln t.

    Defined for an atom starting exactly excited with a non-degenerate
    timescale; the logarithmic coefficient is b = -4 * t_ent_inv_sq.
    """
    if abs(spec.c_g) != 0.0:
        raise ModelError(
            "log-divergence coefficients are defined for an exactly excited atom"
        )
    t2 = jcm_timescale_closed_form(spec)
    if t2 <= 0.0:
        raise ModelError(
            "degenerate timescale: the von Neumann curvature has no logarithmic term"
        )
    constant = 2.0 * (-2.0 + math.log(2.0) - math.log(t2)) * t2
    return constant, -4.0 * t2


@dataclass(frozen=True)
class BoseHubbardBoundarySpec:
    """Two neighboring sites at a lattice bipartition cut, one boson each.

    ``j_rate`` is the hopping rate J and ``u_rate`` the on-site interaction
    U (both angular). Only the cut-crossing hopping correlates the sides, so
    U never enters the timescale; it is kept to demonstrate exactly that.
    ``n_per_site_max`` truncates each site's occupation.
    """

    j_rate: float
    u_rate: float = 0.0
    n_per_site_max: int = 2

    def __post_init__(self) -> None:
        if not math.isfinite(self.j_rate) or not math.isfinite(self.u_rate):
            raise ModelError("j_rate and u_rate must be finite")
        if self.n_per_site_max < 1:
            raise TruncationError(
                f"n_per_site_max must be at least 1 to hold one boson, "
                f"got {self.n_per_site_max}"
            )

    @property
    def dim_site(self) -> int:
        return self.n_per_site_max + 1


def build_bose_hubbard_boundary(
    spec: BoseHubbardBoundarySpec,
) -> tuple[ProductHamiltonian, ProductState]:
    """Hopping across the cut plus optional on-site interactions.

    H = -J (a_L^dag a_R + a_L a_R^dag)
        + (U/2) n_L (n_L - 1) (x) 1 + 1 (x) (U/2) n_R (n_R - 1),

    starting from |1> on each site. The closed-form squared inverse
    timescale of this start is 4 J^2 independent of U.
    """
    dim = spec.dim_site
    a = annihilation(dim)
    ad = creation(dim)
    terms: list[tuple[np.ndarray, np.ndarray]] = [
        (-spec.j_rate * ad, a),
        (-spec.j_rate * a, ad),
    ]
    if spec.u_rate != 0.0:
        n = number_operator(dim)
        anharmonic = 0.5 * spec.u_rate * (n @ n - n)
        terms.append((anharmonic, identity(dim)))
        terms.append((identity(dim), anharmonic))
    psi = np.zeros(dim, dtype=np.complex128)
    psi[1] = 1.0
    h = ProductHamiltonian(dim_a=dim, dim_b=dim, terms=tuple(terms))
    state = ProductState(psi_a=psi, psi_b=psi.copy())
    return h, state
