# projectors.py - orthogonal idempotents on spinor space
"""Projection operators P(a) = (I +/- sigma.a)/2, their tensor products on
2^N-dimensional spaces, eigenvectors and the spinor rotation operator.

Axes may be complex; normalization is the bilinear one, a.a = 1, with no
complex conjugation.
"""
import cmath
import itertools
import logging
import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

from clifford import sigma_dot
from config import RANK_TOL
from tensor_core import (
    as_matrix,
    as_scalar,
    as_vector,
    identity,
    kron_all,
    kron_vectors,
    max_abs,
    nullspace,
)

logger = logging.getLogger(__name__)

NORM_TOL = 1e-12


class DegenerateAxisError(ValueError):
    """Axis cannot define a projector (not normalized, or sigma.a not diagonalizable)."""


class Spin(IntEnum):
    PLUS = 1
    MINUS = -1

    @classmethod
    def parse(cls, text: str) -> "Spin":
        if text in ("+", "+1", "1", "plus"):
            return cls.PLUS
        if text in ("-", "-1", "minus"):
            return cls.MINUS
        raise ValueError(f"Spin label must be + or -, got {text!r}")

    @property
    def symbol(self) -> str:
        return "+" if self is Spin.PLUS else "-"


@dataclass(frozen=True)
class Direction3:
    q1: complex
    q2: complex
    q3: complex

    def __post_init__(self):
        for name in ("q1", "q2", "q3"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))

    @classmethod
    def of(cls, v: Sequence[complex]) -> "Direction3":
        if len(v) != 3:
            raise ValueError(f"A direction has three components, got {len(v)}")
        return cls(*v)

    @property
    def components(self) -> Tuple[complex, complex, complex]:
        return (self.q1, self.q2, self.q3)

    @property
    def vector(self) -> np.ndarray:
        return as_vector(self.components)

    @property
    def bilinear_norm2(self) -> complex:
        return self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3

    @property
    def is_real(self) -> bool:
        return all(c.imag == 0.0 for c in self.components)

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.bilinear_norm2 - 1) <= tol

    def normalized(self) -> "Direction3":
        """Divide by the principal square root of the bilinear norm."""
        n2 = self.bilinear_norm2
        if abs(n2) == 0.0:
            raise DegenerateAxisError("Direction has zero bilinear norm and cannot be normalized")
        root = cmath.sqrt(n2)
        return Direction3(self.q1 / root, self.q2 / root, self.q3 / root)


X_AXIS = Direction3(1, 0, 0)
Y_AXIS = Direction3(0, 1, 0)
Z_AXIS = Direction3(0, 0, 1)


def _require_normalized(axis: Direction3) -> None:
    if not axis.is_normalized():
        raise DegenerateAxisError(
            f"Axis must satisfy a.a = 1, got a.a = {axis.bilinear_norm2:.6g}"
        )


def random_real_axis(rng: np.random.Generator) -> Direction3:
    v = rng.normal(size=3)
    return Direction3.of(v / np.linalg.norm(v))


def random_complex_axis(rng: np.random.Generator, max_rapidity: float = 1.0) -> Direction3:
    """cosh(t) n1 + i sinh(t) n2 with n1 perpendicular to n2, so a.a = 1 exactly."""
    n1 = rng.normal(size=3)
    n1 /= np.linalg.norm(n1)
    n2 = rng.normal(size=3)
    n2 -= n2.dot(n1) * n1
    n2 /= np.linalg.norm(n2)
    t = rng.uniform(-max_rapidity, max_rapidity)
    return Direction3.of(math.cosh(t) * n1 + 1j * math.sinh(t) * n2)


# --- constraints on the Pauli expansion ---

@dataclass(frozen=True)
class ConstraintReport:
    satisfied: bool
    degenerate: bool
    failures: Tuple[str, ...]
    residuals: Dict[str, float]

    @property
    def idempotency_residual(self) -> float:
        return self.residuals["P1^2 - P1"]


def solve_idempotent_constraints(a0, avec, b0, bvec, tol: float = NORM_TOL) -> ConstraintReport:
    """Check P1 = a0 I + sigma.a, P2 = b0 I + sigma.b against the closed-form
    constraints (a0 = b0 = 1/2, a.a = b.b = 1/4, a = -b) and against the raw
    orthogonal-idempotent conditions.

    A pair that satisfies the raw conditions but not the closed form (e.g.
    {I, 0}) is reported as degenerate.
    """
    a0, b0 = as_scalar(a0), as_scalar(b0)
    a, b = as_vector(avec), as_vector(bvec)
    if a.shape != (3,) or b.shape != (3,):
        raise ValueError("Pauli coefficient vectors must have three components")

    closed = {
        "a0 = 1/2": abs(a0 - 0.5),
        "b0 = 1/2": abs(b0 - 0.5),
        "a.a = 1/4": abs(a @ a - 0.25),
        "b.b = 1/4": abs(b @ b - 0.25),
        "a = -b": max_abs(a + b),
    }
    p1 = a0 * identity(2) + sigma_dot(a)
    p2 = b0 * identity(2) + sigma_dot(b)
    raw = {
        "P1^2 - P1": max_abs(p1 @ p1 - p1),
        "P2^2 - P2": max_abs(p2 @ p2 - p2),
        "P1 P2": max_abs(p1 @ p2),
        "P2 P1": max_abs(p2 @ p1),
        "P1 + P2 - I": max_abs(p1 + p2 - identity(2)),
    }
    failures = tuple(name for name, res in closed.items() if res > tol)
    raw_ok = all(res <= tol for res in raw.values())
    return ConstraintReport(
        satisfied=not failures,
        degenerate=bool(failures) and raw_ok,
        failures=failures,
        residuals={**closed, **raw},
    )


# --- projectors and their tensor products ---

def projector2(axis: Direction3, s: Spin) -> np.ndarray:
    """P_s(a) = (I_2 + s sigma.a) / 2."""
    _require_normalized(axis)
    return as_matrix(0.5 * (identity(2) + int(s) * sigma_dot(axis.components)))


@dataclass(frozen=True, eq=False)
class ProjectorPair:
    plus: np.ndarray
    minus: np.ndarray
    axis: Direction3

    @classmethod
    def about(cls, axis: Direction3) -> "ProjectorPair":
        return cls(projector2(axis, Spin.PLUS), projector2(axis, Spin.MINUS), axis)

    def residuals(self) -> Dict[str, float]:
        p, m = self.plus, self.minus
        return {
            "idempotent+": max_abs(p @ p - p),
            "idempotent-": max_abs(m @ m - m),
            "orthogonal": max(max_abs(p @ m), max_abs(m @ p)),
            "complete": max_abs(p + m - identity(2)),
        }

    def spectral_residuals(self) -> Dict[str, float]:
        """P(s) = chi(s) chi(s)^dagger with unit trace; real axes only."""
        if not self.axis.is_real:
            raise ValueError("Projectors about a complex axis are not Hermitian rank-1 outer products")
        out = {}
        for s, proj in ((Spin.PLUS, self.plus), (Spin.MINUS, self.minus)):
            out[f"outer{s.symbol}"] = max_abs(proj - outer(eigvec2(self.axis, s)))
            out[f"trace{s.symbol}"] = abs(complex(np.trace(proj)) - 1)
        return out


def projector_tensor(specs: Sequence[Tuple[Spin, Direction3]]) -> np.ndarray:
    if not specs:
        raise ValueError("projector_tensor needs at least one factor")
    return kron_all([projector2(axis, s) for s, axis in specs])


def projector_family(axes: Sequence[Direction3]) -> Dict[Tuple[Spin, ...], np.ndarray]:
    """All 2^N sign choices over fixed axes."""
    return {
        signs: projector_tensor(list(zip(signs, axes)))
        for signs in itertools.product((Spin.PLUS, Spin.MINUS), repeat=len(axes))
    }


def family_residuals(family: Dict[Tuple[Spin, ...], np.ndarray]) -> Dict[str, float]:
    """Idempotency, mutual orthogonality and completeness of a projector family."""
    mats = list(family.values())
    n = mats[0].shape[0]
    orth = 0.0
    for i, j in itertools.permutations(range(len(mats)), 2):
        orth = max(orth, max_abs(mats[i] @ mats[j]))
    return {
        "idempotent": max(max_abs(p @ p - p) for p in mats),
        "orthogonal": orth,
        "complete": max_abs(sum(mats) - identity(n)),
    }


# --- eigenvectors ---

def _fix_phase(v: np.ndarray) -> np.ndarray:
    scale = np.max(np.abs(v))
    for c in v:
        if abs(c) > 1e-12 * scale:
            return v * (abs(c) / c)
    return v


def eigvec2(axis: Direction3, s: Spin) -> np.ndarray:
    """Unit (Hermitian norm) chi with (sigma.a) chi = s chi; first nonzero entry real positive."""
    _require_normalized(axis)
    kernel = nullspace(sigma_dot(axis.components) - int(s) * identity(2), RANK_TOL)
    if len(kernel) != 1:
        raise DegenerateAxisError(
            f"sigma.a - ({int(s)}) I has a {len(kernel)}-dimensional kernel; axis is degenerate"
        )
    v = kernel[0] / np.linalg.norm(kernel[0])
    return as_vector(_fix_phase(v))


def chi_tensor(specs: Sequence[Tuple[Spin, Direction3]]) -> np.ndarray:
    if not specs:
        raise ValueError("chi_tensor needs at least one factor")
    return kron_vectors([eigvec2(axis, s) for s, axis in specs])


# --- rotations ---

def _require_real_unit(axis: Direction3) -> None:
    if not axis.is_real:
        raise DegenerateAxisError("Rotations are about real axes")
    _require_normalized(axis)


def rotation2(theta: float, axis: Direction3) -> np.ndarray:
    """cos(theta/2) I + i (sigma.a) sin(theta/2)."""
    _require_real_unit(axis)
    half = 0.5 * float(theta)
    return as_matrix(math.cos(half) * identity(2) + 1j * math.sin(half) * sigma_dot(axis.components))


def rotation2_spectral(theta: float, axis: Direction3) -> np.ndarray:
    """The same rotation written as exp(i theta/2) P+ + exp(-i theta/2) P-."""
    _require_real_unit(axis)
    half = 0.5 * float(theta)
    return as_matrix(
        cmath.exp(1j * half) * projector2(axis, Spin.PLUS)
        + cmath.exp(-1j * half) * projector2(axis, Spin.MINUS)
    )


def rotation_phase_residual(theta: float, axis: Direction3) -> float:
    """|R(theta, a) chi_+(a) - exp(i theta/2) chi_+(a)|: eigenstates only pick up a phase."""
    chi = eigvec2(axis, Spin.PLUS)
    return max_abs(rotation2(theta, axis) @ chi - cmath.exp(0.5j * theta) * chi)


def parse_axis(values: Iterable[float]) -> Direction3:
    """re1,im1,re2,im2,re3,im3 -> Direction3."""
    vals = [float(v) for v in values]
    if len(vals) != 6:
        raise ValueError(f"An axis needs six numbers re1,im1,re2,im2,re3,im3, got {len(vals)}")
    return Direction3(complex(vals[0], vals[1]), complex(vals[2], vals[3]), complex(vals[4], vals[5]))


def is_hermitian(a: np.ndarray, tol: float = NORM_TOL) -> bool:
    return max_abs(a - np.conj(a).T) <= tol


def outer(v: np.ndarray) -> np.ndarray:
    return as_matrix(np.outer(v, np.conj(v)))

