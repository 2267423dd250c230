# clifford.py - Pauli and gamma matrices, chiral exponential
import cmath
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from tensor_core import (
    anticommutator,
    as_matrix,
    as_scalar,
    dagger,
    identity,
    kron,
    max_abs,
)

logger = logging.getLogger(__name__)

MINKOWSKI = (1, -1, -1, -1)
OFF_DIAGONAL_TOL = 1e-13

_PAULI = (
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
)


def pauli(k: int) -> np.ndarray:
    """sigma^k for k in 1..3; k = 0 gives I_2."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be 0..3, got {k}")
    return as_matrix(_PAULI[k])


def sigma_dot(v: Sequence[complex]) -> np.ndarray:
    """sigma . v with bilinear contraction (no conjugation of v)."""
    if len(v) != 3:
        raise ValueError(f"sigma_dot expects a 3-vector, got {len(v)} components")
    return as_matrix(sum(complex(c) * pauli(k + 1) for k, c in enumerate(v)))


@dataclass(frozen=True)
class ChiralParams:
    """Mass m >= 0 (inverse length) and chiral angle alpha (radians, complex allowed)."""

    mass: float
    alpha: complex = 0.0

    def __post_init__(self):
        mass = float(self.mass)
        if not math.isfinite(mass) or mass < 0:
            raise ValueError(f"mass must be finite and non-negative, got {self.mass}")
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "alpha", as_scalar(self.alpha))

    @property
    def is_real_angle(self) -> bool:
        return self.alpha.imag == 0.0

    def with_alpha(self, alpha: complex) -> "ChiralParams":
        return ChiralParams(self.mass, alpha)


@dataclass(frozen=True, eq=False)
class GammaSet:
    gammas: Tuple[np.ndarray, ...]
    gamma5: np.ndarray
    representation: str = "chiral"
    metric: Tuple[int, int, int, int] = MINKOWSKI

    def __post_init__(self):
        if len(self.gammas) != 4:
            raise ValueError("A gamma set needs exactly four matrices")
        mats = tuple(as_matrix(g) for g in self.gammas)
        for g in mats + (as_matrix(self.gamma5),):
            if g.shape != (4, 4):
                raise ValueError(f"Gamma matrices must be 4x4, got {g.shape}")
        object.__setattr__(self, "gammas", mats)
        object.__setattr__(self, "gamma5", as_matrix(self.gamma5))

    @property
    def gamma0(self) -> np.ndarray:
        return self.gammas[0]

    @property
    def gamma1(self) -> np.ndarray:
        return self.gammas[1]

    @property
    def gamma2(self) -> np.ndarray:
        return self.gammas[2]

    @property
    def gamma3(self) -> np.ndarray:
        return self.gammas[3]

    def conjugated(self, u: np.ndarray, label: str = "conjugated") -> "GammaSet":
        """Change of representation gamma -> U gamma U^dagger."""
        u = as_matrix(u)
        ud = dagger(u)
        return GammaSet(
            gammas=tuple(u @ g @ ud for g in self.gammas),
            gamma5=u @ self.gamma5 @ ud,
            representation=label,
            metric=self.metric,
        )

    def with_gamma(self, mu: int, matrix: np.ndarray, label: str = "modified") -> "GammaSet":
        gammas = list(self.gammas)
        gammas[mu] = matrix
        return GammaSet(tuple(gammas), self.gamma5, label, self.metric)


@lru_cache(maxsize=1)
def gamma_chiral() -> GammaSet:
    """gamma^0 = sigma^1 x I_2, gamma^k = i sigma^2 x sigma^k, gamma^5 = i g0 g1 g2 g3."""
    g0 = kron(pauli(1), pauli(0))
    gk = [kron(1j * pauli(2), pauli(k)) for k in (1, 2, 3)]
    g5 = 1j * g0 @ gk[0] @ gk[1] @ gk[2]
    return GammaSet(gammas=(g0, *gk), gamma5=g5, representation="chiral", metric=MINKOWSKI)


def slash(k: Sequence[float], gammas: Optional[GammaSet] = None) -> np.ndarray:
    """gamma^mu k_mu for a contravariant four-vector k."""
    gs = gammas or gamma_chiral()
    if len(k) != 4:
        raise ValueError("slash expects a four-vector")
    return as_matrix(sum(gs.metric[mu] * complex(k[mu]) * gs.gammas[mu] for mu in range(4)))


def chiral_exp(alpha: complex, sign: int = 1, gammas: Optional[GammaSet] = None) -> np.ndarray:
    """exp(sign * i alpha gamma5) = cos(alpha) I + sign i sin(alpha) gamma5.

    Exact for complex alpha because gamma5 squares to the identity.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    gs = gammas or gamma_chiral()
    a = as_scalar(alpha)
    return as_matrix(cmath.cos(a) * identity(4) + sign * 1j * cmath.sin(a) * gs.gamma5)


def mass_term(params: ChiralParams, gammas: Optional[GammaSet] = None) -> np.ndarray:
    """m exp(i alpha gamma5), the mass matrix of the chiral Dirac operator."""
    return as_matrix(params.mass * chiral_exp(params.alpha, 1, gammas))


@dataclass(frozen=True, eq=False)
class SignatureReport:
    signs: Optional[Tuple[int, int, int, int]]
    violation: Optional[Tuple[int, int]] = None
    residual: float = 0.0
    residuals: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.signs is not None


def clifford_signature(gs: GammaSet, tol: float = OFF_DIAGONAL_TOL) -> SignatureReport:
    """Metric signs read off {gamma^mu, gamma^nu}, or the first violating pair."""
    eye = identity(4)
    signs = []
    worst = 0.0
    residuals = {}
    for mu in range(4):
        for nu in range(mu, 4):
            anti = anticommutator(gs.gammas[mu], gs.gammas[nu])
            if mu != nu:
                res = max_abs(anti)
            else:
                sign = 1 if anti[0, 0].real >= 0 else -1
                res = max_abs(anti - 2 * sign * eye)
                signs.append(sign)
            residuals[(mu, nu)] = res
            worst = max(worst, res)
            if res > tol:
                logger.warning("Clifford relation violated for pair (%d, %d): %.3e", mu, nu, res)
                return SignatureReport(signs=None, violation=(mu, nu), residual=res, residuals=residuals)
    return SignatureReport(signs=tuple(signs), residual=worst, residuals=residuals)


def gamma5_residuals(gs: GammaSet) -> dict:
    """Residuals of gamma5 = i g0 g1 g2 g3, {gamma5, gamma^mu} = 0 and gamma5^2 = I."""
    g = gs.gammas
    product = 1j * g[0] @ g[1] @ g[2] @ g[3]
    return {
        "definition": max_abs(gs.gamma5 - product),
        "anticommutes": max(max_abs(anticommutator(gs.gamma5, gm)) for gm in g),
        "square": max_abs(gs.gamma5 @ gs.gamma5 - identity(4)),
    }


def chiral_block_residuals(gs: GammaSet) -> dict:
    """Residuals of i gamma5 gamma0 = sigma^2 x I_2 and -gamma5 = sigma^3 x I_2."""
    return {
        "i_g5_g0": max_abs(1j * gs.gamma5 @ gs.gamma0 - kron(pauli(2), pauli(0))),
        "minus_g5": max_abs(-gs.gamma5 - kron(pauli(3), pauli(0))),
    }
