# cde.py - momentum-space chiral Dirac operators and their solutions
"""Chiral Dirac operators in momentum space.

The two branches are

    MixedSigns:  -gamma0 E + gamma^k p_k + m exp(i alpha gamma5)   (kills chi_{+-}, chi_{-+})
    EqualSigns:  +gamma0 E + gamma^k p_k - m exp(i alpha gamma5)   (kills chi_{++}, chi_{--})

with gamma^k p_k contracted on the Euclidean components (p1, p2, p3).
"""
import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from clifford import ChiralParams, GammaSet, chiral_exp, gamma_chiral, mass_term, pauli, sigma_dot, slash
from config import RANK_TOL
from projectors import Direction3, Spin, chi_tensor
from tensor_core import as_matrix, as_vector, det, identity, kron, max_abs, nullspace

logger = logging.getLogger(__name__)

SOLUTION_TOL = 1e-10
SHELL_TOL = 1e-9


class CdeBranch(str, Enum):
    MIXED = "mixed"
    EQUAL = "equal"

    @classmethod
    def for_spins(cls, s1: Spin, s2: Spin) -> "CdeBranch":
        return cls.MIXED if int(s1) != int(s2) else cls.EQUAL


@dataclass(frozen=True)
class FourMomentum:
    E: float
    p1: float = 0.0
    p2: float = 0.0
    p3: float = 0.0

    def __post_init__(self):
        for name in ("E", "p1", "p2", "p3"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"Four-momentum component {name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def of(cls, energy: float, p: Sequence[float]) -> "FourMomentum":
        if len(p) != 3:
            raise ValueError(f"Three-momentum needs three components, got {len(p)}")
        return cls(energy, *p)

    @classmethod
    def on_shell(cls, p: Sequence[float], mass: float) -> "FourMomentum":
        p = [float(c) for c in p]
        return cls.of(math.sqrt(sum(c * c for c in p) + mass * mass), p)

    @property
    def p_vec(self) -> np.ndarray:
        return np.array([self.p1, self.p2, self.p3])

    @property
    def p_abs(self) -> float:
        return float(np.linalg.norm(self.p_vec))

    @property
    def contravariant(self) -> np.ndarray:
        return np.array([self.E, self.p1, self.p2, self.p3])

    def invariant_mass2(self) -> float:
        return self.E * self.E - self.p_abs ** 2

    def spatially_reflected(self) -> "FourMomentum":
        return FourMomentum(self.E, -self.p1, -self.p2, -self.p3)

    def negated(self) -> "FourMomentum":
        return FourMomentum(-self.E, -self.p1, -self.p2, -self.p3)

    def time_reflected(self) -> "FourMomentum":
        return FourMomentum(-self.E, self.p1, self.p2, self.p3)

    def shell_gap(self, mass: float) -> float:
        """E^2 - |p|^2 - m^2."""
        return self.invariant_mass2() - mass * mass


@dataclass(frozen=True, eq=False)
class Bispinor:
    upper: np.ndarray  # chi_L
    lower: np.ndarray  # chi_R

    @classmethod
    def from_vector(cls, v: Sequence[complex]) -> "Bispinor":
        v = as_vector(v)
        if v.shape != (4,):
            raise ValueError(f"A bispinor has four components, got {v.shape[0]}")
        return cls(as_vector(v[:2]), as_vector(v[2:]))

    @property
    def vector(self) -> np.ndarray:
        return as_vector(np.concatenate([self.upper, self.lower]))


# --- physical identification of q ---

def q_from_physical(params: ChiralParams, energy: float, printed_sign: bool = True) -> Tuple[Direction3, complex]:
    """q = (i m sin(alpha), -i m cos(alpha), E) and its bilinear norm E^2 - m^2.

    With printed_sign=False the first component is -i m sin(alpha). Only that
    choice makes the projector eigenstates solve the branch operators as
    written for alpha != 0; the printed one solves them with alpha -> -alpha.
    """
    if energy <= 0:
        raise ValueError(f"Energy must be positive, got {energy}")
    m, a = params.mass, params.alpha
    s = 1 if printed_sign else -1
    q = Direction3(s * 1j * m * cmath.sin(a), -1j * m * cmath.cos(a), energy)
    return q, q.bilinear_norm2


# --- operators ---

def spatial_gamma_dot(p: Sequence[float], gammas: Optional[GammaSet] = None) -> np.ndarray:
    """gamma^k p_k with the Euclidean components as given."""
    gs = gammas or gamma_chiral()
    return as_matrix(sum(complex(p[k]) * gs.gammas[k + 1] for k in range(3)))


def cde_momentum_operator(
    branch: CdeBranch,
    p: FourMomentum,
    params: ChiralParams,
    gammas: Optional[GammaSet] = None,
) -> np.ndarray:
    gs = gammas or gamma_chiral()
    kinetic = spatial_gamma_dot(p.p_vec, gs)
    mass = mass_term(params, gs)
    if CdeBranch(branch) is CdeBranch.MIXED:
        return as_matrix(-p.E * gs.gamma0 + kinetic + mass)
    return as_matrix(p.E * gs.gamma0 + kinetic - mass)


def dirac_symbol(k: FourMomentum, params: ChiralParams, gammas: Optional[GammaSet] = None) -> np.ndarray:
    """gamma^mu k_mu - m exp(i alpha gamma5): the CDE acting on exp(-i k.x)."""
    gs = gammas or gamma_chiral()
    return as_matrix(slash(k.contravariant, gs) - mass_term(params, gs))


def plane_wave_momentum(branch: CdeBranch, p: FourMomentum) -> FourMomentum:
    """Wave four-vector w with psi = u exp(-i(w0 t - w.x)) solving the CDE for u in the branch kernel."""
    if CdeBranch(branch) is CdeBranch.MIXED:
        return p
    return p.spatially_reflected()


def branch_from_wave(branch: CdeBranch, w: FourMomentum) -> FourMomentum:
    # plane_wave_momentum is an involution
    return plane_wave_momentum(branch, w)


# --- tensor operators rewritten with gammas ---

@dataclass(frozen=True)
class RewriteReport:
    residuals: dict

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())


def verify_gamma_rewrite(qdir: Direction3, pdir: Direction3, q_scale: complex = 1.0, p_scale: float = 1.0) -> RewriteReport:
    """Compare sigma.q x I, I x sigma.p and their sum/difference with the
    gamma-matrix forms, for q = q_scale*qdir and p = p_scale*pdir."""
    if not qdir.is_normalized():
        raise ValueError("qdir must have unit bilinear norm")
    if not (pdir.is_real and pdir.is_normalized()):
        raise ValueError("pdir must be a real unit vector")
    gs = gamma_chiral()
    g0, g5 = gs.gamma0, gs.gamma5
    eye4 = identity(4)
    q_abs, p_abs = complex(q_scale), float(p_scale)
    q1, q2, q3 = (q_abs * c for c in qdir.components)
    p_vec = [p_abs * c.real for c in pdir.components]
    g_dot_p = spatial_gamma_dot(p_vec, gs)
    g0g5 = g0 @ g5

    sq = kron(sigma_dot(qdir.components), pauli(0))
    sp = kron(pauli(0), sigma_dot(pdir.components))
    rq = g0g5 @ (g5 * q1 - 1j * eye4 * q2 + g0 * q3) / q_abs
    rp = -(g0g5 @ g_dot_p) / p_abs
    scale = 1.0 / (p_abs * q_abs)
    r_plus = scale * g0g5 @ (g0 * p_abs * q3 - q_abs * g_dot_p + g5 * p_abs * q1 - 1j * eye4 * p_abs * q2)
    r_minus = scale * g0g5 @ (g0 * p_abs * q3 + q_abs * g_dot_p + g5 * p_abs * q1 - 1j * eye4 * p_abs * q2)
    return RewriteReport(
        residuals={
            "sigma.q x I": max_abs(sq - rq),
            "I x sigma.p": max_abs(sp - rp),
            "oplus": max_abs(sq + sp - r_plus),
            "ominus": max_abs(sq - sp - r_minus),
        }
    )


# --- kernels ---

def shell_scale(p: FourMomentum) -> float:
    return max(1.0, p.E * p.E)


def kernel_cutoff(
    branch: CdeBranch,
    p: FourMomentum,
    params: ChiralParams,
    gammas: Optional[GammaSet] = None,
    shell_tol: float = SHELL_TOL,
) -> float:
    """Relative singular-value cutoff that finds a kernel exactly when
    |E^2 - |p|^2 - m^2| <= shell_tol * max(1, E^2).

    D = +-(wslash - M(alpha)) and (wslash + M(-alpha)) (wslash - M(alpha)) = gap I,
    so sigma_min(D) * |wslash + M(-alpha)| = |gap|.
    """
    if shell_tol <= 0:
        raise ValueError("shell_tol must be positive")
    gs = gammas or gamma_chiral()
    op = cde_momentum_operator(branch, p, params, gs)
    w = plane_wave_momentum(branch, p)
    partner = slash(w.contravariant, gs) + mass_term(params.with_alpha(-params.alpha), gs)
    denominator = float(np.linalg.norm(op, 2) * np.linalg.norm(partner, 2))
    if denominator == 0.0:
        return RANK_TOL
    return shell_tol * shell_scale(p) / denominator


def plane_wave_solutions(
    branch: CdeBranch,
    p: FourMomentum,
    params: ChiralParams,
    gammas: Optional[GammaSet] = None,
    shell_tol: float = SHELL_TOL,
) -> List[Bispinor]:
    """Orthonormal kernel of the branch operator; empty off shell.

    The rank cutoff comes from kernel_cutoff, so a kernel is found exactly
    when the shell gap is within shell_tol * max(1, E^2).
    """
    op = cde_momentum_operator(branch, p, params, gammas)
    kernel = nullspace(op, kernel_cutoff(branch, p, params, gammas, shell_tol))
    if kernel and not params.is_real_angle:
        logger.info("Complex chiral angle %s: kernel dimension %d reported, not guaranteed", params.alpha, len(kernel))
    return [Bispinor.from_vector(v) for v in kernel]


@dataclass(frozen=True)
class ChiResidual:
    s1: Spin
    s2: Spin
    branch: CdeBranch
    residual: float
    other_branch_residual: float
    printed_sign_residual: float
    tolerance: float = SOLUTION_TOL

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def physical_axes(p: FourMomentum, params: ChiralParams, printed_sign: bool = False) -> Tuple[Direction3, Direction3]:
    """(q-hat, p-hat) for the projector construction of the solutions."""
    if p.p_abs == 0.0:
        raise ValueError("|p| = 0: the helicity axis p-hat is undefined")
    if p.E * p.E - params.mass ** 2 <= 0.0:
        raise ValueError("E^2 <= m^2: q cannot be normalized")
    q, _ = q_from_physical(params, p.E, printed_sign=printed_sign)
    return q.normalized(), Direction3.of(p.p_vec / p.p_abs)


def chi_state(p: FourMomentum, params: ChiralParams, s1: Spin, s2: Spin, printed_sign: bool = False) -> np.ndarray:
    qhat, phat = physical_axes(p, params, printed_sign)
    return chi_tensor([(s1, qhat), (s2, phat)])


def chi_solution_check(p: FourMomentum, params: ChiralParams, s1: Spin, s2: Spin) -> ChiResidual:
    """chi_{s1,s2}(q-hat, p-hat) against the branch operator its signs select.

    q-hat carries s1 in the first tensor slot and p-hat carries s2 in the second.
    """
    s1, s2 = Spin(s1), Spin(s2)
    branch = CdeBranch.for_spins(s1, s2)
    other = CdeBranch.EQUAL if branch is CdeBranch.MIXED else CdeBranch.MIXED
    chi = chi_state(p, params, s1, s2)
    printed = chi_state(p, params, s1, s2, printed_sign=True)
    return ChiResidual(
        s1=s1,
        s2=s2,
        branch=branch,
        residual=max_abs(cde_momentum_operator(branch, p, params) @ chi),
        other_branch_residual=max_abs(cde_momentum_operator(other, p, params) @ chi),
        printed_sign_residual=max_abs(cde_momentum_operator(branch, p, params) @ printed),
    )


def chi_basis(p: FourMomentum, params: ChiralParams) -> np.ndarray:
    """Columns chi_{++}, chi_{+-}, chi_{-+}, chi_{--}."""
    states = [chi_state(p, params, s1, s2) for s1 in Spin for s2 in Spin]
    return as_matrix(np.column_stack(states))


# --- dispersion ---

@dataclass(frozen=True)
class DispersionReport:
    shell_gap: float
    on_shell: bool
    kernel_dims: Tuple[int, int]
    det_residual: float
    square_residual: float

    @property
    def consistent(self) -> bool:
        """Nontrivial kernel exactly on the mass shell."""
        return all((d > 0) == self.on_shell for d in self.kernel_dims)

    @property
    def passed(self) -> bool:
        return self.on_shell and self.consistent and self.det_residual <= SHELL_TOL


def expected_determinant(p: FourMomentum, mass: float) -> float:
    return p.shell_gap(mass) ** 2


def dispersion_check(
    p: FourMomentum,
    params: ChiralParams,
    gammas: Optional[GammaSet] = None,
    shell_tol: float = SHELL_TOL,
) -> DispersionReport:
    """Kernel nontrivial iff E^2 = |p|^2 + m^2, with det(D) = (E^2 - |p|^2 - m^2)^2.

    Squaring: (wslash + M(-alpha)) (wslash - M(alpha)) = (w^2 - m^2) I.
    """
    gs = gammas or gamma_chiral()
    gap = p.shell_gap(params.mass)
    scale = shell_scale(p)
    dims = tuple(len(plane_wave_solutions(b, p, params, gs, shell_tol)) for b in CdeBranch)
    expected = expected_determinant(p, params.mass)
    det_res = max(abs(det(cde_momentum_operator(b, p, params, gs)) - expected) for b in CdeBranch) / (scale * scale)

    square = 0.0
    for b in CdeBranch:
        w = plane_wave_momentum(b, p)
        ws = slash(w.contravariant, gs)
        lhs = (ws + mass_term(params.with_alpha(-params.alpha), gs)) @ (ws - mass_term(params, gs))
        square = max(square, max_abs(lhs - gap * identity(4)) / scale)
    return DispersionReport(
        shell_gap=gap,
        on_shell=abs(gap) <= shell_tol * scale,
        kernel_dims=dims,
        det_residual=det_res,
        square_residual=square,
    )


def dispersion_table(params: ChiralParams, pmax: float, steps: int) -> List[Tuple[float, float]]:
    """(|p|, E) along the mass shell; only points whose kernel is nontrivial are kept."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if pmax < 0:
        raise ValueError("pmax must be non-negative")
    rows = []
    for i in range(steps + 1):
        p_abs = pmax * i / steps
        p = FourMomentum.on_shell((0.0, 0.0, p_abs), params.mass)
        if p.E <= 0:
            continue
        if plane_wave_solutions(CdeBranch.MIXED, p, params):
            rows.append((p_abs, p.E))
    return rows


@dataclass(frozen=True)
class RepresentationReport:
    kernel_mismatches: int
    det_deviation: float
    square_deviation: float


def representation_check(p: FourMomentum, params: ChiralParams, gammas: GammaSet) -> RepresentationReport:
    """Kernel dimensions, determinants and the squared operator in another gamma representation.

    A unitary change of representation preserves singular values, so every
    dispersion result must match the chiral one.
    """
    ref = dispersion_check(p, params)
    other = dispersion_check(p, params, gammas)
    scale = shell_scale(p) ** 2
    det_dev = max(
        abs(det(cde_momentum_operator(b, p, params)) - det(cde_momentum_operator(b, p, params, gammas))) / scale
        for b in CdeBranch
    )
    return RepresentationReport(
        kernel_mismatches=int(ref.kernel_dims != other.kernel_dims) + int(ref.on_shell != other.on_shell),
        det_deviation=det_dev,
        square_deviation=abs(ref.square_residual - other.square_residual),
    )


# --- chiral rotation to the Dirac operator ---

@dataclass(frozen=True)
class RotationEquivalence:
    residual: float
    kernel_dims: Tuple[int, int]


def chiral_rotation_equivalence(
    p: FourMomentum,
    params: ChiralParams,
    branch: CdeBranch = CdeBranch.MIXED,
) -> RotationEquivalence:
    """U D(alpha) U = D(0) with U = exp(-i alpha gamma5 / 2) on both sides."""
    if not params.is_real_angle:
        raise ValueError("chiral_rotation_equivalence requires a real chiral angle")
    u = chiral_exp(params.alpha / 2, -1)
    d_alpha = cde_momentum_operator(branch, p, params)
    d_zero = cde_momentum_operator(branch, p, params.with_alpha(0.0))
    return RotationEquivalence(
        residual=max_abs(u @ d_alpha @ u - d_zero),
        kernel_dims=(len(nullspace(d_alpha)), len(nullspace(d_zero))),
    )


# --- general first-order form ---

@dataclass(frozen=True, eq=False)
class FirstOrderForm:
    xs: Tuple[np.ndarray, ...]
    y: np.ndarray


def eq1_conformance(params: ChiralParams, gammas: Optional[GammaSet] = None) -> FirstOrderForm:
    """X^mu = i gamma^mu, Y = -m exp(i alpha gamma5), so X^mu d_mu psi = -Y psi is the CDE."""
    gs = gammas or gamma_chiral()
    return FirstOrderForm(xs=tuple(as_matrix(1j * g) for g in gs.gammas), y=as_matrix(-mass_term(params, gs)))


def eq1_operator(eq1: FirstOrderForm, k: FourMomentum, metric: Sequence[int] = (1, -1, -1, -1)) -> np.ndarray:
    """X^mu d_mu + Y on exp(-i k.x), i.e. sum X^mu (-i k_mu) + Y."""
    kc = k.contravariant
    return as_matrix(sum(eq1.xs[mu] * (-1j * metric[mu] * kc[mu]) for mu in range(4)) + eq1.y)


def eq1_residual(params: ChiralParams, k: FourMomentum) -> float:
    return max_abs(eq1_operator(eq1_conformance(params), k) - dirac_symbol(k, params))


# --- helicity ---

def helicity_operator(p: FourMomentum) -> np.ndarray:
    """I_2 x sigma.p-hat."""
    if p.p_abs == 0.0:
        raise ValueError("Helicity is undefined at |p| = 0")
    return kron(pauli(0), sigma_dot(p.p_vec / p.p_abs))


@dataclass(frozen=True)
class HelicityReport:
    commutator: float
    eigen_residual: float


def helicity_check(p: FourMomentum, params: ChiralParams) -> HelicityReport:
    """Helicity commutes with both branch operators and chi_{s1,s2} has helicity s2."""
    h = helicity_operator(p)
    comm = max(
        max_abs(h @ cde_momentum_operator(b, p, params) - cde_momentum_operator(b, p, params) @ h)
        for b in CdeBranch
    )
    eig = max(
        max_abs(h @ chi_state(p, params, s1, s2) - int(s2) * chi_state(p, params, s1, s2))
        for s1 in Spin
        for s2 in Spin
    )
    return HelicityReport(commutator=comm, eigen_residual=eig)
