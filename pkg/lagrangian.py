# lagrangian.py - symmetric Dirac / chiral Dirac Lagrangian densities
"""Lagrangian densities in the fully symmetric form

    L = 1/2 psibar (i gamma^mu d_mu - M) psi - 1/2 [(i d_mu psibar) gamma^mu + psibar M] psi

with M = m (Dirac) or M = m exp(i alpha gamma5) (chiral Dirac), their
discretized action on a 4D grid and the Euler-Lagrange residual obtained by
perturbing psibar and differencing the action.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from cde import FourMomentum
from clifford import ChiralParams, GammaSet, chiral_exp, gamma_chiral
from tensor_core import as_matrix, as_vector, identity

logger = logging.getLogger(__name__)

MIN_ACTION_EXTENT = 3
MIN_RESIDUAL_EXTENT = 5


class Variant(str, Enum):
    DIRAC = "dirac"
    CHIRAL_DIRAC = "chiral-dirac"


def mass_matrix(
    params: ChiralParams,
    variant: Variant = Variant.CHIRAL_DIRAC,
    printed_sign: bool = False,
    gammas: Optional[GammaSet] = None,
) -> np.ndarray:
    """m I for Dirac; m exp(+i alpha gamma5) for chiral Dirac.

    printed_sign=True gives m exp(-i alpha gamma5), whose Euler-Lagrange
    equation is the CDE with alpha negated.
    """
    if Variant(variant) is Variant.DIRAC:
        return as_matrix(params.mass * identity(4))
    return as_matrix(params.mass * chiral_exp(params.alpha, -1 if printed_sign else 1, gammas))


@dataclass(frozen=True, eq=False)
class FieldSample:
    psi: np.ndarray
    dpsi: np.ndarray  # rows are d_mu psi, mu = 0..3

    def __post_init__(self):
        psi = as_vector(self.psi)
        dpsi = as_matrix(self.dpsi)
        if psi.shape != (4,) or dpsi.shape != (4, 4):
            raise ValueError("A field sample needs psi in C^4 and four derivatives in C^4")
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "dpsi", dpsi)


def dirac_adjoint(psi: np.ndarray, gammas: Optional[GammaSet] = None) -> np.ndarray:
    """psibar = psi^dagger gamma0, along the last axis."""
    gs = gammas or gamma_chiral()
    return np.conj(psi) @ gs.gamma0


def _density(psi, psibar, dpsi, dpsibar, mass, gammas: GammaSet) -> np.ndarray:
    """Vectorized density; psi, psibar: (n, 4); dpsi, dpsibar: (4, n, 4)."""
    g = np.stack(gammas.gammas)
    kinetic = np.einsum("mab,mnb->na", g, dpsi)
    m_psi = psi @ mass.T
    left = np.einsum("mna,mab,nb->n", dpsibar, g, psi)
    first = 0.5 * np.einsum("na,na->n", psibar, 1j * kinetic - m_psi)
    second = -0.5 * (1j * left + np.einsum("na,na->n", psibar, m_psi))
    return first + second


def lagrangian_density(
    sample: FieldSample,
    params: ChiralParams,
    variant: Variant = Variant.CHIRAL_DIRAC,
    printed_sign: bool = False,
    gammas: Optional[GammaSet] = None,
) -> complex:
    gs = gammas or gamma_chiral()
    mass = mass_matrix(params, variant, printed_sign, gs)
    psi = sample.psi[None, :]
    dpsi = sample.dpsi[:, None, :]
    value = _density(psi, dirac_adjoint(psi, gs), dpsi, dirac_adjoint(dpsi, gs), mass, gs)
    return complex(value[0])


def plane_wave_sample(u: Sequence[complex], w: FourMomentum, x: Sequence[float]) -> FieldSample:
    """psi = u exp(-i w.x) and its exact derivatives d_mu psi = -i w_mu psi."""
    w_up = w.contravariant
    w_down = w_up * np.array([1, -1, -1, -1])
    phase = np.exp(-1j * float(np.dot(w_down, np.asarray(x, dtype=float))))
    psi = as_vector(u) * phase
    return FieldSample(psi=psi, dpsi=np.array([-1j * w_down[mu] * psi for mu in range(4)]))


# --- discretization ---

@dataclass(frozen=True, eq=False)
class FieldGrid:
    extent: Tuple[int, int, int, int]
    spacing: float
    values: np.ndarray  # shape extent + (4,)
    origin: Tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        extent = tuple(int(n) for n in self.extent)
        if len(extent) != 4 or any(n < 1 for n in extent):
            raise ValueError(f"extent must be four positive integers, got {self.extent}")
        h = float(self.spacing)
        if not (math.isfinite(h) and h > 0):
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        values = np.array(self.values, dtype=np.complex128)
        if values.shape != extent + (4,):
            raise ValueError(f"values must have shape {extent + (4,)}, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("Field values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "extent", extent)
        object.__setattr__(self, "spacing", h)
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(
        cls,
        field: Callable[[np.ndarray], np.ndarray],
        extent: Sequence[int],
        spacing: float,
        origin: Sequence[float] = (0.0, 0.0, 0.0, 0.0),
    ) -> "FieldGrid":
        """Evaluate field(x) on the grid; x has shape extent + (4,) (t first)."""
        axes = [origin[mu] + spacing * np.arange(extent[mu]) for mu in range(4)]
        x = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        return cls(tuple(extent), spacing, field(x), tuple(origin))

    @classmethod
    def plane_wave(cls, u, w: FourMomentum, extent, spacing, origin=(0.0, 0.0, 0.0, 0.0)) -> "FieldGrid":
        w_down = w.contravariant * np.array([1, -1, -1, -1])
        u = as_vector(u)
        return cls.sample(lambda x: np.exp(-1j * (x @ w_down))[..., None] * u, extent, spacing, origin)


_INTERIOR = (slice(1, -1),) * 4


def _central_differences(f: np.ndarray, h: float) -> np.ndarray:
    """(4, *interior, 4): d_mu f at interior points by central differences."""
    out = []
    for mu in range(4):
        plus = list(_INTERIOR)
        minus = list(_INTERIOR)
        plus[mu] = slice(2, None)
        minus[mu] = slice(None, -2)
        out.append((f[tuple(plus)] - f[tuple(minus)]) / (2 * h))
    return np.stack(out)


def _interior_density(psi, psibar, h, mass, gs) -> np.ndarray:
    """Density at interior points of a block, flattened in C order."""
    dpsi = _central_differences(psi, h)
    dpsibar = _central_differences(psibar, h)
    n = int(np.prod(dpsi.shape[1:-1]))
    return _density(
        psi[_INTERIOR].reshape(n, 4),
        psibar[_INTERIOR].reshape(n, 4),
        dpsi.reshape(4, n, 4),
        dpsibar.reshape(4, n, 4),
        mass,
        gs,
    )


def _require_extent(grid: FieldGrid, minimum: int) -> None:
    if min(grid.extent) < minimum:
        raise ValueError(f"Grid too small: every axis needs at least {minimum} points, got {grid.extent}")


def action(
    grid: FieldGrid,
    params: ChiralParams,
    variant: Variant = Variant.CHIRAL_DIRAC,
    printed_sign: bool = False,
    gammas: Optional[GammaSet] = None,
) -> complex:
    """h^4 times the sum of the density over interior points (no boundary terms)."""
    _require_extent(grid, MIN_ACTION_EXTENT)
    gs = gammas or gamma_chiral()
    mass = mass_matrix(params, variant, printed_sign, gs)
    psi = grid.values
    dens = _interior_density(psi, dirac_adjoint(psi, gs), grid.spacing, mass, gs)
    return complex(grid.spacing ** 4 * np.sum(dens))


def discrete_cde(grid: FieldGrid, params: ChiralParams, gammas: Optional[GammaSet] = None) -> np.ndarray:
    """(i gamma^mu d_mu - m exp(i alpha gamma5)) psi with central differences, at interior points."""
    gs = gammas or gamma_chiral()
    _require_extent(grid, MIN_ACTION_EXTENT)
    dpsi = _central_differences(grid.values, grid.spacing)
    g = np.stack(gs.gammas)
    kinetic = np.einsum("mab,m...b->...a", g, dpsi)
    return 1j * kinetic - grid.values[_INTERIOR] @ mass_matrix(params, Variant.CHIRAL_DIRAC, False, gs).T


@dataclass(frozen=True, eq=False)
class EulerLagrangeResult:
    residual: np.ndarray  # dS/dpsibar at points two layers in, shape (..., 4)
    direct: np.ndarray  # discrete CDE applied at the same points

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residual)))

    @property
    def max_deviation(self) -> float:
        return float(np.max(np.abs(self.residual - self.direct)))


def euler_lagrange_residual(
    grid: FieldGrid,
    params: ChiralParams,
    epsilon: float = 1e-6,
    printed_sign: bool = False,
    gammas: Optional[GammaSet] = None,
) -> EulerLagrangeResult:
    """Functional derivative of the discrete action with respect to psibar.

    psibar is perturbed by +/- epsilon one component at a time and the action
    differenced. Only densities within one step of the perturbed point change,
    so each difference is taken over the 3^4 block around it. Points are
    reported where that block lies inside the quadrature region.
    """
    _require_extent(grid, MIN_RESIDUAL_EXTENT)
    gs = gammas or gamma_chiral()
    mass = mass_matrix(params, Variant.CHIRAL_DIRAC, printed_sign, gs)
    psi = grid.values
    psibar = dirac_adjoint(psi, gs)
    h = grid.spacing
    deep = tuple(n - 4 for n in grid.extent)
    residual = np.zeros(deep + (4,), dtype=np.complex128)

    for idx in itertools.product(*(range(n) for n in deep)):
        centre = tuple(i + 2 for i in idx)
        window = tuple(slice(c - 2, c + 3) for c in centre)
        psi_w = psi[window]
        for a in range(4):
            up = psibar[window].copy()
            down = psibar[window].copy()
            up[2, 2, 2, 2, a] += epsilon
            down[2, 2, 2, 2, a] -= epsilon
            delta = _interior_density(psi_w, up, h, mass, gs) - _interior_density(psi_w, down, h, mass, gs)
            residual[idx + (a,)] = np.sum(delta) / (2 * epsilon)

    # the mirrored mass term yields the CDE at -alpha
    effective = params.with_alpha(-params.alpha) if printed_sign else params
    direct = discrete_cde(grid, effective, gs)[(slice(1, -1),) * 4]
    residual.setflags(write=False)
    return EulerLagrangeResult(residual=residual, direct=direct)


@dataclass(frozen=True)
class ConvergenceResult:
    coarse: float
    fine: float

    @property
    def ratio(self) -> float:
        return self.coarse / self.fine

    @property
    def order(self) -> float:
        return math.log2(self.ratio)


def euler_lagrange_convergence(
    u: Sequence[complex],
    w: FourMomentum,
    params: ChiralParams,
    spacing: float,
    extent: Sequence[int] = (7, 7, 7, 7),
    epsilon: float = 1e-6,
) -> ConvergenceResult:
    """Max Euler-Lagrange residual of a plane-wave solution at h and h/2."""
    coarse = FieldGrid.plane_wave(u, w, tuple(extent), spacing)
    fine = FieldGrid.plane_wave(u, w, tuple(extent), spacing / 2)
    r_coarse = euler_lagrange_residual(coarse, params, epsilon).max_residual
    r_fine = euler_lagrange_residual(fine, params, epsilon).max_residual
    logger.info("Euler-Lagrange residual %.3e at h=%g, %.3e at h=%g", r_coarse, spacing, r_fine, spacing / 2)
    return ConvergenceResult(coarse=r_coarse, fine=r_fine)


def gaussian_packet(u: Sequence[complex], w: FourMomentum, width: float = 1.0, centre=(0.0, 0.0, 0.0, 0.0)):
    """A plane wave under a Gaussian envelope; not a solution of the CDE."""
    w_down = w.contravariant * np.array([1, -1, -1, -1])
    u = as_vector(u)
    c = np.asarray(centre, dtype=float)

    def field(x: np.ndarray) -> np.ndarray:
        envelope = np.exp(-np.sum((x - c) ** 2, axis=-1) / (2 * width * width))
        return (envelope * np.exp(-1j * (x @ w_down)))[..., None] * u

    return field
