# symmetries.py - Lorentz covariance and the discrete C, P, T operations
import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from cde import (
    CdeBranch,
    FourMomentum,
    branch_from_wave,
    cde_momentum_operator,
    plane_wave_momentum,
    plane_wave_solutions,
)
from clifford import MINKOWSKI, ChiralParams, GammaSet, gamma_chiral
from lagrangian import FieldSample, Variant, lagrangian_density
from projectors import DegenerateAxisError, Direction3
from tensor_core import as_matrix, commutator, dagger, identity, max_abs, nullspace

logger = logging.getLogger(__name__)

MAX_PARAMETER = 10.0
COVARIANCE_TOL = 1e-9
DISCRETE_TOL = 1e-12
ETA = np.diag(np.array(MINKOWSKI, dtype=float))


# --- continuous Lorentz transformations ---

class LorentzKind(str, Enum):
    ROTATION = "rotation"
    BOOST = "boost"


def lorentz_generators(gammas: Optional[GammaSet] = None) -> Dict[Tuple[int, int], np.ndarray]:
    """sigma^{mu nu} = (i/2) [gamma^mu, gamma^nu] for mu < nu."""
    gs = gammas or gamma_chiral()
    return {
        (mu, nu): as_matrix(0.5j * commutator(gs.gammas[mu], gs.gammas[nu]))
        for mu, nu in itertools.combinations(range(4), 2)
    }


def spin_matrices(gammas: Optional[GammaSet] = None) -> List[np.ndarray]:
    """Sigma^k = (1/2) eps_ijk sigma^{ij}, i.e. sigma^{23}, sigma^{31}, sigma^{12}."""
    gen = lorentz_generators(gammas)
    return [gen[(2, 3)], -gen[(1, 3)], gen[(1, 2)]]


def boost_generators(gammas: Optional[GammaSet] = None) -> List[np.ndarray]:
    gen = lorentz_generators(gammas)
    return [gen[(0, k)] for k in (1, 2, 3)]


def gamma5_commutes_with_generators(gammas: Optional[GammaSet] = None) -> float:
    gs = gammas or gamma_chiral()
    return max(max_abs(commutator(gs.gamma5, s)) for s in lorentz_generators(gs).values())


def _cross_matrix(n: np.ndarray) -> np.ndarray:
    """[n]_x with [n]_x v = n x v."""
    return np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])


@dataclass(frozen=True, eq=False)
class LorentzSpinorMap:
    S: np.ndarray
    Lambda: np.ndarray
    kind: LorentzKind
    parameter: float
    axis: Tuple[float, float, float]

    @property
    def S_inv(self) -> np.ndarray:
        return as_matrix(np.linalg.inv(self.S))

    @property
    def Lambda_inv(self) -> np.ndarray:
        return np.linalg.inv(self.Lambda)

    def intertwining_residual(self, gammas: Optional[GammaSet] = None) -> float:
        """max over mu of |S^-1 gamma^mu S - Lambda^mu_nu gamma^nu|."""
        gs = gammas or gamma_chiral()
        s_inv = self.S_inv
        worst = 0.0
        for mu in range(4):
            rhs = sum(self.Lambda[mu, nu] * gs.gammas[nu] for nu in range(4))
            worst = max(worst, max_abs(s_inv @ gs.gammas[mu] @ self.S - rhs))
        return worst

    def metric_residual(self) -> float:
        """|Lambda^T eta Lambda - eta|."""
        return max_abs(self.Lambda.T @ ETA @ self.Lambda - ETA)

    def apply(self, p: FourMomentum) -> FourMomentum:
        return FourMomentum(*(self.Lambda @ p.contravariant))


def lorentz_spinor_map(
    kind: LorentzKind,
    parameter: float,
    axis: Direction3,
    gammas: Optional[GammaSet] = None,
) -> LorentzSpinorMap:
    """Spinor and vector representations of a rotation by theta or a boost of rapidity zeta.

    Rotation: S = exp(i theta n.Sigma / 2), whose chiral 2-blocks are
    cos(theta/2) + i sin(theta/2) sigma.n; the matching Lambda rotates
    vectors by -theta about n.
    Boost: S = exp(-(i zeta / 2) n_k sigma^{0k}), Lambda^0_k = sinh(zeta) n_k.
    """
    kind = LorentzKind(kind)
    parameter = float(parameter)
    if not math.isfinite(parameter) or abs(parameter) > MAX_PARAMETER:
        raise ValueError(f"|parameter| must be at most {MAX_PARAMETER}, got {parameter}")
    if not axis.is_real or not axis.is_normalized():
        raise DegenerateAxisError("Lorentz maps need a real unit axis")
    n = np.array([c.real for c in axis.components])

    lam_gen = np.zeros((4, 4))
    if kind is LorentzKind.ROTATION:
        spin_gen = 0.5j * parameter * sum(n[k] * s for k, s in enumerate(spin_matrices(gammas)))
        lam_gen[1:, 1:] = -parameter * _cross_matrix(n)
    else:
        spin_gen = -0.5j * parameter * sum(n[k] * s for k, s in enumerate(boost_generators(gammas)))
        lam_gen[0, 1:] = parameter * n
        lam_gen[1:, 0] = parameter * n

    return LorentzSpinorMap(
        S=as_matrix(scipy.linalg.expm(spin_gen)),
        Lambda=np.real(scipy.linalg.expm(lam_gen)),
        kind=kind,
        parameter=parameter,
        axis=tuple(n),
    )


def random_lorentz_map(rng: np.random.Generator, max_parameter: float = 2.0) -> LorentzSpinorMap:
    v = rng.normal(size=3)
    axis = Direction3.of(v / np.linalg.norm(v))
    kind = LorentzKind.BOOST if rng.uniform() < 0.5 else LorentzKind.ROTATION
    return lorentz_spinor_map(kind, rng.uniform(-max_parameter, max_parameter), axis)


@dataclass(frozen=True)
class CovarianceReport:
    residual: float
    solutions: int
    transformed: FourMomentum
    tolerance: float = COVARIANCE_TOL

    @property
    def passed(self) -> bool:
        return self.solutions > 0 and self.residual <= self.tolerance


def covariance_check(
    lmap: LorentzSpinorMap,
    p: FourMomentum,
    params: ChiralParams,
    branch: CdeBranch = CdeBranch.MIXED,
) -> CovarianceReport:
    """Each kernel vector u of D(p) is carried to S u, a kernel vector of D(p')
    where p' is the momentum whose plane wave is Lambda applied to that of p.
    Mass and chiral angle are left alone.
    """
    branch = CdeBranch(branch)
    solutions = plane_wave_solutions(branch, p, params)
    moved = branch_from_wave(branch, lmap.apply(plane_wave_momentum(branch, p)))
    op = cde_momentum_operator(branch, moved, params)
    residual = max((max_abs(op @ (lmap.S @ u.vector)) for u in solutions), default=0.0)
    if not solutions:
        logger.warning("No plane-wave solutions at %s; covariance check is vacuous", p)
    return CovarianceReport(residual=residual, solutions=len(solutions), transformed=moved)


def transform_sample(lmap: LorentzSpinorMap, sample: FieldSample) -> FieldSample:
    """psi' = S psi, d'_mu psi' = (Lambda^-1)^nu_mu S d_nu psi."""
    lam_inv = lmap.Lambda_inv
    s_dpsi = sample.dpsi @ lmap.S.T
    return FieldSample(psi=lmap.S @ sample.psi, dpsi=lam_inv.T @ s_dpsi)


def lagrangian_covariance_check(
    lmap: LorentzSpinorMap,
    sample: FieldSample,
    params: ChiralParams,
    variant: Variant = Variant.CHIRAL_DIRAC,
) -> float:
    before = lagrangian_density(sample, params, variant)
    after = lagrangian_density(transform_sample(lmap, sample), params, variant)
    return abs(after - before)


def adjoint_intertwines(lmap: LorentzSpinorMap, gammas: Optional[GammaSet] = None) -> float:
    """|S^dagger gamma0 - gamma0 S^-1|; zero makes psibar psi a scalar."""
    gs = gammas or gamma_chiral()
    return max_abs(dagger(lmap.S) @ gs.gamma0 - gs.gamma0 @ lmap.S_inv)


# --- discrete operations ---

_NEGATES = {"C": False, "P": True, "T": True}
_CONJUGATES = {"C": True, "P": False, "T": True}

_ALPHA_MAPS: Dict[str, Callable[[complex], complex]] = {
    "C": lambda a: a.conjugate(),
    "P": lambda a: -a,
    "T": lambda a: -a.conjugate(),
}


def _parse_kind(kind: str) -> str:
    kind = str(kind).upper()
    if not kind or any(c not in "CPT" for c in kind):
        raise ValueError(f"kind must be a word over C, P, T, got {kind!r}")
    return kind


def alpha_transform(kind: str) -> Callable[[complex], complex]:
    """alpha -> alpha' for C, P, T or a composition; the rightmost letter acts first."""
    kind = _parse_kind(kind)

    def transform(alpha: complex) -> complex:
        a = complex(alpha)
        for letter in reversed(kind):
            a = _ALPHA_MAPS[letter](a)
        return a

    return transform


@dataclass(frozen=True)
class AlphaClass:
    kind: str
    constraint: str
    negates: bool
    conjugates: bool

    def test(self, alpha: complex, tol: float = DISCRETE_TOL) -> bool:
        a = complex(alpha)
        if self.negates and self.conjugates:
            return abs(a.real) <= tol
        if self.conjugates:
            return abs(a.imag) <= tol
        if self.negates:
            return abs(a) <= tol
        return math.isfinite(a.real) and math.isfinite(a.imag)


_CONSTRAINTS = {
    (False, False): "alpha unconstrained (complex)",
    (False, True): "alpha real",
    (True, False): "alpha = 0",
    (True, True): "alpha imaginary",
}


def classify_alpha(kind: str) -> AlphaClass:
    """Invariance under kind forces alpha = alpha'(kind); solve that as a predicate."""
    kind = _parse_kind(kind)
    negates = sum(_NEGATES[c] for c in kind) % 2 == 1
    conjugates = sum(_CONJUGATES[c] for c in kind) % 2 == 1
    return AlphaClass(kind, _CONSTRAINTS[(negates, conjugates)], negates, conjugates)


def alpha_grid(n: int = 41, bound: float = 2.0) -> List[complex]:
    axis = np.linspace(-bound, bound, n)
    return [complex(re, im) for re in axis for im in axis]


def classifier_mismatches(kind: str, alphas: Sequence[complex], tol: float = DISCRETE_TOL) -> int:
    """Disagreements between classify_alpha and brute-force fixed points of alpha_transform."""
    predicate = classify_alpha(kind)
    transform = alpha_transform(kind)
    return sum(predicate.test(a, tol) != (abs(transform(a) - a) <= tol) for a in alphas)


@dataclass(frozen=True, eq=False)
class DiscreteSymmetry:
    """A spinor matrix U with the coordinate reflections and conjugation it comes with.

    Acting on D(alpha), the operator is evaluated at the reflected momentum,
    complex conjugated if the operation is antilinear, then sandwiched as U X U^-1.
    Conjugation sends exp(-i k.x) to exp(+i k.x), so antilinear operations land
    on the negated momentum.
    """

    kind: str
    label: str
    spinor_matrix: np.ndarray
    conjugates: bool
    flips_x: bool
    flips_t: bool

    def is_unitary(self, tol: float = DISCRETE_TOL) -> bool:
        u = self.spinor_matrix
        return max_abs(dagger(u) @ u - identity(4)) <= tol

    def source_momentum(self, p: FourMomentum) -> FourMomentum:
        k = p.spatially_reflected() if self.flips_x else p
        return k.time_reflected() if self.flips_t else k

    def target_momentum(self, p: FourMomentum) -> FourMomentum:
        return p.negated() if self.conjugates else p

    def transformed(self, x: np.ndarray) -> np.ndarray:
        u = self.spinor_matrix
        x = np.conj(x) if self.conjugates else x
        return as_matrix(u @ x @ np.linalg.inv(u))


# The gamma5 multiples are the only alternatives that can change U X U^-1:
# a phase in U cancels against U^-1.
_CANDIDATE_PRODUCTS = {
    "C": (("i g2", (2,), 1j), ("i g2 g5", (2, 5), 1j)),
    "P": (("g0", (0,), 1), ("g0 g5", (0, 5), 1)),
    "T": (("i g1 g3", (1, 3), 1j), ("i g1 g3 g5", (1, 3, 5), 1j)),
}


def discrete_candidates(kind: str, gammas: Optional[GammaSet] = None) -> List[DiscreteSymmetry]:
    """Candidate realizations of C, P or T in search order."""
    kind = _parse_kind(kind)
    if len(kind) != 1:
        raise ValueError("Candidates exist for a single operation C, P or T")
    gs = gammas or gamma_chiral()
    mats = dict(enumerate(gs.gammas))
    mats[5] = gs.gamma5
    out = []
    for label, factors, phase in _CANDIDATE_PRODUCTS[kind]:
        u = phase * identity(4)
        for f in factors:
            u = u @ mats[f]
        out.append(
            DiscreteSymmetry(
                kind=kind,
                label=label,
                spinor_matrix=as_matrix(u),
                conjugates=_CONJUGATES[kind],
                flips_x=kind == "P",
                flips_t=kind == "T",
            )
        )
    return out


C_CANDIDATES = [label for label, _, _ in _CANDIDATE_PRODUCTS["C"]]
P_CANDIDATES = [label for label, _, _ in _CANDIDATE_PRODUCTS["P"]]
T_CANDIDATES = [label for label, _, _ in _CANDIDATE_PRODUCTS["T"]]


def discrete_symmetry(kind: str, label: Optional[str] = None, gammas: Optional[GammaSet] = None) -> DiscreteSymmetry:
    """The named candidate (default: the first listed) for C, P or T."""
    options = {sym.label: sym for sym in discrete_candidates(kind, gammas)}
    label = label or next(iter(options))
    if label not in options:
        raise ValueError(f"Unknown {kind} candidate {label!r}; choose from {sorted(options)}")
    return options[label]


@dataclass(frozen=True)
class DiscreteReport:
    kind: str
    label: Optional[str]
    residual: float
    alpha_out: complex
    candidate_residuals: Dict[str, float] = field(default_factory=dict)
    kernel_dims: Tuple[int, int] = (0, 0)
    tolerance: float = DISCRETE_TOL

    @property
    def passed(self) -> bool:
        return self.label is not None and self.residual <= self.tolerance


def verify_discrete_transform(
    kind: str,
    p: FourMomentum,
    params: ChiralParams,
    gammas: Optional[GammaSet] = None,
) -> DiscreteReport:
    """U X U^-1 against D(alpha'; p') for each candidate U until one passes.

    C: X = D(alpha; p)*, p' = -p.  P: X = D(alpha; E, -p), p' = p.
    T: X = D(alpha; -E, p)*, p' = (-E, -p).
    """
    candidates = discrete_candidates(kind, gammas)
    kind = candidates[0].kind
    gs = gammas or gamma_chiral()
    alpha_out = alpha_transform(kind)(params.alpha)

    tried = {}
    for sym in candidates:
        source = cde_momentum_operator(CdeBranch.MIXED, sym.source_momentum(p), params, gs)
        target = cde_momentum_operator(CdeBranch.MIXED, sym.target_momentum(p), params.with_alpha(alpha_out), gs)
        image = sym.transformed(source)
        tried[sym.label] = max_abs(image - target)
        if tried[sym.label] <= DISCRETE_TOL:
            dims = (len(nullspace(image)), len(nullspace(cde_momentum_operator(CdeBranch.MIXED, p, params, gs))))
            return DiscreteReport(kind, sym.label, tried[sym.label], alpha_out, tried, dims)
        logger.info("%s candidate %s rejected: residual %.3e", kind, sym.label, tried[sym.label])
    logger.warning("No %s candidate realizes the transformation", kind)
    return DiscreteReport(kind, None, min(tried.values()), alpha_out, tried)
