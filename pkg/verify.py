# verify.py - the full identity suite behind `cde verify-all`
import logging
import math
import time
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import scipy.linalg

from cde import (
    CdeBranch,
    FourMomentum,
    chi_solution_check,
    chiral_rotation_equivalence,
    cde_momentum_operator,
    dispersion_check,
    eq1_residual,
    helicity_check,
    plane_wave_momentum,
    plane_wave_solutions,
    representation_check,
    verify_gamma_rewrite,
)
from clifford import ChiralParams, GammaSet, chiral_block_residuals, chiral_exp, clifford_signature, gamma5_residuals, gamma_chiral
from config import DEFAULT_SEED, DEFAULT_TRIALS, scaled_tolerance
from lagrangian import (
    FieldGrid,
    FieldSample,
    Variant,
    euler_lagrange_convergence,
    euler_lagrange_residual,
    gaussian_packet,
    lagrangian_density,
    mass_matrix,
    plane_wave_sample,
)
from models import CheckResult, RunReport
from projectors import (
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    ProjectorPair,
    Spin,
    family_residuals,
    projector_family,
    random_complex_axis,
    random_real_axis,
    rotation2,
    rotation2_spectral,
    rotation_phase_residual,
    solve_idempotent_constraints,
)
from symmetries import (
    LorentzKind,
    adjoint_intertwines,
    alpha_grid,
    alpha_transform,
    classifier_mismatches,
    covariance_check,
    gamma5_commutes_with_generators,
    lagrangian_covariance_check,
    lorentz_spinor_map,
    random_lorentz_map,
    verify_discrete_transform,
)
from tensor_core import anticommutator, identity, max_abs, random_unitary

logger = logging.getLogger(__name__)

CLASSIFIED_KINDS = ("C", "P", "T", "CP", "CT", "PT", "CPT")


class _Checks:
    def __init__(self, tol_scale: Optional[float]):
        self.tol_scale = tol_scale
        self.results: List[CheckResult] = []

    def add(self, key: str, residual: float) -> None:
        suite, name = key.split(".", 1)
        result = CheckResult.of(suite, name, residual, scaled_tolerance(key, self.tol_scale))
        if result.passed:
            logger.info("%-32s residual %.3e <= %.1e", key, result.residual, result.tolerance)
        else:
            logger.warning("%-32s FAILED residual %.3e > %.1e", key, result.residual, result.tolerance)
        self.results.append(result)


# --- random inputs ---

def _random_params(rng: np.random.Generator, complex_angle: bool = False) -> ChiralParams:
    alpha = rng.uniform(-math.pi, math.pi)
    if complex_angle:
        alpha = complex(alpha, rng.uniform(-0.5, 0.5))
    return ChiralParams(rng.uniform(0.1, 2.0), alpha)


def _random_momentum(rng: np.random.Generator, mass: float) -> FourMomentum:
    """On shell, with |p| in [0.2, 3] so that p-hat and q-hat stay well conditioned."""
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    return FourMomentum.on_shell(direction * rng.uniform(0.2, 3.0), mass)


# --- suites ---

def clifford_suite(checks: _Checks, rng: np.random.Generator, trials: int, gammas: GammaSet) -> None:
    eye = identity(4)
    anti = max(
        max_abs(anticommutator(gammas.gammas[mu], gammas.gammas[nu]) - 2 * (gammas.metric[mu] if mu == nu else 0) * eye)
        for mu in range(4)
        for nu in range(4)
    )
    signature = clifford_signature(gammas)
    if not signature.ok:
        logger.warning("Clifford algebra broken at pair %s", signature.violation)
    checks.add("clifford.anticommutator", anti)

    g5 = gamma5_residuals(gammas)
    if gammas.representation == "chiral":
        g5.update(chiral_block_residuals(gammas))
    checks.add("clifford.gamma5", max(g5.values()))

    worst = 0.0
    for _ in range(trials):
        a, b = (complex(rng.uniform(-math.pi, math.pi), rng.uniform(-1, 1)) for _ in range(2))
        worst = max(
            worst,
            max_abs(chiral_exp(a, gammas=gammas) @ chiral_exp(b, gammas=gammas) - chiral_exp(a + b, gammas=gammas)),
            max_abs(chiral_exp(a, gammas=gammas) - scipy.linalg.expm(1j * a * gammas.gamma5)),
        )
    checks.add("clifford.chiral_exp", worst)


def projector_suite(checks: _Checks, rng: np.random.Generator, trials: int) -> None:
    sweep = 10 * trials

    worst = 0.0
    for draw in (random_real_axis, random_complex_axis):
        for _ in range(trials):
            a = draw(rng).vector
            report = solve_idempotent_constraints(0.5, a / 2, 0.5, -a / 2)
            worst = max(worst, max(report.residuals.values()))
    checks.add("projectors.constraints", worst)

    for key, draw in (("projectors.real_axes", random_real_axis), ("projectors.complex_axes", random_complex_axis)):
        worst = 0.0
        for _ in range(sweep):
            pair = ProjectorPair.about(draw(rng))
            values = list(pair.residuals().values())
            if pair.axis.is_real:
                values += pair.spectral_residuals().values()
            worst = max(worst, *values)
        checks.add(key, worst)

    worst = 0.0
    for n in (1, 2, 3):
        for _ in range(max(trials // 10, 1)):
            axes = [random_complex_axis(rng) if rng.uniform() < 0.5 else random_real_axis(rng) for _ in range(n)]
            worst = max(worst, max(family_residuals(projector_family(axes)).values()))
    checks.add("projectors.tensor_family", worst)

    worst = 0.0
    for _ in range(sweep):
        theta = rng.uniform(-4 * math.pi, 4 * math.pi)
        axis = random_real_axis(rng)
        worst = max(
            worst,
            max_abs(rotation2(theta, axis) - rotation2_spectral(theta, axis)),
            rotation_phase_residual(theta, axis),
        )
    checks.add("projectors.rotation", worst)

    axes = [X_AXIS, Y_AXIS, Z_AXIS] + [random_real_axis(rng) for _ in range(trials)]
    checks.add("projectors.rotation_2pi", max(max_abs(rotation2(2 * math.pi, a) + identity(2)) for a in axes))


def cde_suite(checks: _Checks, rng: np.random.Generator, trials: int) -> None:
    worst = 0.0
    for _ in range(trials):
        report = verify_gamma_rewrite(
            random_complex_axis(rng), random_real_axis(rng), rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)
        )
        worst = max(worst, report.max_residual)
    checks.add("cde.gamma_rewrite", worst)

    mismatches = 0
    det_worst = 0.0
    dispersion_worst = 0.0
    for _ in range(2 * trials):
        params = _random_params(rng)
        p = _random_momentum(rng, params.mass)
        on = dispersion_check(p, params)
        mismatches += on.kernel_dims != (2, 2)
        solved = max(
            (
                max_abs(cde_momentum_operator(b, p, params) @ u.vector)
                for b in CdeBranch
                for u in plane_wave_solutions(b, p, params)
            ),
            default=0.0,
        )
        dispersion_worst = max(dispersion_worst, abs(on.shell_gap) / max(1.0, p.E ** 2), on.square_residual, solved)

        shift = rng.uniform(0.05, 0.5) * (1 if rng.uniform() < 0.5 else -1)
        off_p = FourMomentum.of(p.E * (1 + shift), p.p_vec)
        off = dispersion_check(off_p, params)
        mismatches += off.kernel_dims != (0, 0)
        det_worst = max(det_worst, on.det_residual, off.det_residual)
        dispersion_worst = max(dispersion_worst, off.square_residual)
    checks.add("cde.kernel_dimension", mismatches)
    checks.add("cde.determinant", det_worst)
    checks.add("cde.dispersion", dispersion_worst)

    rotated = gamma_chiral().conjugated(random_unitary(4, rng), "random unitary")
    mismatches = 0
    worst = 0.0
    for _ in range(trials):
        params = _random_params(rng)
        p = _random_momentum(rng, params.mass)
        off_p = FourMomentum.of(p.E * rng.uniform(1.05, 1.5), p.p_vec)
        for point in (p, off_p):
            report = representation_check(point, params, rotated)
            mismatches += report.kernel_mismatches
            worst = max(worst, report.det_deviation, report.square_deviation)
    checks.add("cde.representation_kernels", mismatches)
    checks.add("cde.representation", worst)

    worst = 0.0
    for _ in range(max(trials // 2, 1)):
        params = _random_params(rng)
        p = _random_momentum(rng, params.mass)
        worst = max(worst, *(chi_solution_check(p, params, s1, s2).residual for s1 in Spin for s2 in Spin))
    checks.add("cde.chi_solution", worst)

    worst = 0.0
    for _ in range(max(trials // 2, 1)):
        params = _random_params(rng)
        worst = max(worst, chiral_rotation_equivalence(_random_momentum(rng, params.mass), params).residual)
    checks.add("cde.chiral_rotation", worst)

    worst = 0.0
    relation = 0.0
    for _ in range(trials):
        params = _random_params(rng, complex_angle=True)
        k = FourMomentum(*rng.normal(size=4))
        worst = max(worst, eq1_residual(params, k))
        relation = max(
            relation,
            max_abs(
                cde_momentum_operator(CdeBranch.MIXED, k, params)
                + cde_momentum_operator(CdeBranch.EQUAL, k.spatially_reflected(), params)
            ),
        )
    checks.add("cde.eq1_conformance", worst)
    checks.add("cde.branch_relation", relation)

    worst = 0.0
    for _ in range(max(trials // 2, 1)):
        params = _random_params(rng)
        report = helicity_check(_random_momentum(rng, params.mass), params)
        worst = max(worst, report.commutator, report.eigen_residual)
    checks.add("cde.helicity", worst)


def _random_sample(rng: np.random.Generator) -> FieldSample:
    return FieldSample(
        psi=rng.normal(size=4) + 1j * rng.normal(size=4),
        dpsi=rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)),
    )


def _field_scale(sample: FieldSample) -> float:
    norm = float(np.linalg.norm(sample.psi))
    return max(1.0, norm * (norm + float(np.linalg.norm(sample.dpsi))))


def lagrangian_suite(checks: _Checks, rng: np.random.Generator, trials: int) -> None:
    params = _random_params(rng)
    at_zero = params.with_alpha(0.0)
    checks.add(
        "lagrangian.dirac_consistency",
        max_abs(mass_matrix(at_zero, Variant.CHIRAL_DIRAC) - mass_matrix(at_zero, Variant.DIRAC)),
    )

    worst = 0.0
    for _ in range(trials):
        sample = _random_sample(rng)
        value = lagrangian_density(sample, _random_params(rng))
        worst = max(worst, abs(value.imag) / _field_scale(sample))
    checks.add("lagrangian.hermiticity", worst)

    worst = 0.0
    for _ in range(trials):
        params = _random_params(rng)
        p = _random_momentum(rng, params.mass)
        x = rng.uniform(-5, 5, size=4)
        for branch in CdeBranch:
            w = plane_wave_momentum(branch, p)
            for u in plane_wave_solutions(branch, p, params):
                value = lagrangian_density(plane_wave_sample(u.vector, w, x), params)
                worst = max(worst, abs(value) / max(1.0, p.E))
    checks.add("lagrangian.stationary", worst)

    params = ChiralParams(1.0, 0.7)
    p = FourMomentum.on_shell((0.6, -0.5, 0.4), params.mass)
    u = plane_wave_solutions(CdeBranch.MIXED, p, params)[0].vector
    study = euler_lagrange_convergence(u, plane_wave_momentum(CdeBranch.MIXED, p), params, spacing=0.1)
    checks.add("lagrangian.convergence_order", abs(study.order - 2.0))

    h = 0.01
    packet = gaussian_packet(u, p, width=0.05, centre=(3 * h,) * 4)
    grid = FieldGrid.sample(packet, (7, 7, 7, 7), h)
    checks.add("lagrangian.euler_lagrange", euler_lagrange_residual(grid, params).max_deviation)

    worst = 0.0
    for _ in range(trials):
        sample = _random_sample(rng)
        residual = lagrangian_covariance_check(random_lorentz_map(rng), sample, _random_params(rng))
        worst = max(worst, residual / _field_scale(sample))
    checks.add("lagrangian.covariance", worst)


def symmetry_suite(checks: _Checks, rng: np.random.Generator, trials: int) -> None:
    checks.add("symmetries.generators", gamma5_commutes_with_generators())

    worst = 0.0
    for _ in range(trials):
        lmap = random_lorentz_map(rng)
        worst = max(worst, lmap.intertwining_residual(), lmap.metric_residual(), adjoint_intertwines(lmap))
    full_turn = lorentz_spinor_map(LorentzKind.ROTATION, 2 * math.pi, random_real_axis(rng))
    worst = max(worst, max_abs(full_turn.S + identity(4)), max_abs(full_turn.Lambda - np.eye(4)))
    checks.add("symmetries.lorentz_maps", worst)

    worst = 0.0
    for i in range(2 * trials):
        params = _random_params(rng)
        p = _random_momentum(rng, params.mass)
        branch = CdeBranch.MIXED if i % 2 == 0 else CdeBranch.EQUAL
        report = covariance_check(random_lorentz_map(rng), p, params, branch)
        worst = max(worst, report.residual if report.solutions else math.inf)
    checks.add("symmetries.covariance", worst)

    c, p_, t = alpha_transform("C"), alpha_transform("P"), alpha_transform("T")
    cpt = alpha_transform("CPT")
    table = [
        c(0.3) == 0.3,
        p_(0.3) == -0.3,
        t(0.4j) == 0.4j,
        t(0.1 + 0.2j) == -0.1 + 0.2j,
        cpt(0.1 + 0.2j) == 0.1 + 0.2j,
    ]
    grid = alpha_grid()
    involutions = [f(f(a)) == a for f in (c, p_, t) for a in grid]
    checks.add("symmetries.alpha_table", sum(not ok for ok in table + involutions))

    checks.add("symmetries.classifier", sum(classifier_mismatches(kind, grid) for kind in CLASSIFIED_KINDS))

    worst = 0.0
    for i in range(max(trials // 10, 1)):
        params = _random_params(rng, complex_angle=i % 2 == 1)
        p = _random_momentum(rng, params.mass)
        worst = max(worst, *(verify_discrete_transform(kind, p, params).residual for kind in "CPT"))
    checks.add("symmetries.discrete", worst)


SUITES: Dict[str, Callable] = {
    "clifford": clifford_suite,
    "projectors": projector_suite,
    "cde": cde_suite,
    "lagrangian": lagrangian_suite,
    "symmetries": symmetry_suite,
}


def verify_all(
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
    gammas: Optional[GammaSet] = None,
    tol_scale: Optional[float] = None,
    suites: Optional[Sequence[str]] = None,
) -> RunReport:
    """Run every identity suite with inputs drawn from one seeded generator.

    ``gammas`` replaces the chiral set in the Clifford suite only (used to
    inject faults). Suites always run in the order of SUITES.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    selected = list(SUITES) if suites is None else list(suites)
    unknown = set(selected) - set(SUITES)
    if unknown:
        raise ValueError(f"Unknown suites {sorted(unknown)}; choose from {list(SUITES)}")

    rng = np.random.default_rng(seed)
    checks = _Checks(tol_scale)
    start = time.perf_counter()
    for name, suite in SUITES.items():
        if name not in selected:
            continue
        logger.info("Running %s suite", name)
        if name == "clifford":
            suite(checks, rng, trials, gammas or gamma_chiral())
        else:
            suite(checks, rng, trials)
    elapsed = time.perf_counter() - start

    report = RunReport(seed=seed, trials=trials, checks=checks.results, elapsed=elapsed)
    logger.info("verify-all: %d checks, %d failed, %.2f s", len(report.checks), len(report.failures), elapsed)
    return report
