import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from cde import CdeBranch, FourMomentum, cde_momentum_operator
from clifford import ChiralParams, gamma_chiral
from lagrangian import FieldSample
from projectors import X_AXIS, Z_AXIS, DegenerateAxisError, Direction3, random_real_axis, rotation2
from symmetries import (
    C_CANDIDATES,
    P_CANDIDATES,
    T_CANDIDATES,
    LorentzKind,
    adjoint_intertwines,
    alpha_grid,
    alpha_transform,
    classifier_mismatches,
    classify_alpha,
    covariance_check,
    discrete_candidates,
    discrete_symmetry,
    gamma5_commutes_with_generators,
    lagrangian_covariance_check,
    lorentz_generators,
    lorentz_spinor_map,
    random_lorentz_map,
    verify_discrete_transform,
)
from tensor_core import identity, max_abs

finite_alphas = st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False)


def test_full_rotation_is_minus_identity():
    lmap = lorentz_spinor_map(LorentzKind.ROTATION, 2 * math.pi, Z_AXIS)
    assert max_abs(lmap.S + identity(4)) <= 1e-12
    assert max_abs(lmap.Lambda - np.eye(4)) <= 1e-12


def test_zero_boost_is_identity():
    lmap = lorentz_spinor_map(LorentzKind.BOOST, 0.0, X_AXIS)
    assert max_abs(lmap.S - identity(4)) <= 1e-15
    assert max_abs(lmap.Lambda - np.eye(4)) <= 1e-15


def test_unit_rapidity_boost_along_z():
    lmap = lorentz_spinor_map(LorentzKind.BOOST, 1.0, Z_AXIS)
    gs = gamma_chiral()
    assert lmap.Lambda[0, 0] == pytest.approx(math.cosh(1.0))
    assert lmap.Lambda[0, 3] == pytest.approx(math.sinh(1.0))
    boosted = lmap.S_inv @ gs.gamma0 @ lmap.S
    assert max_abs(boosted - (math.cosh(1.0) * gs.gamma0 + math.sinh(1.0) * gs.gamma3)) <= 1e-12


def test_boost_matches_closed_form():
    zeta = 0.8
    lmap = lorentz_spinor_map(LorentzKind.BOOST, zeta, Z_AXIS)
    sz = np.diag([1, -1])
    generator = np.kron(np.diag([1, -1]), sz)
    closed = math.cosh(zeta / 2) * np.eye(4) - math.sinh(zeta / 2) * generator
    assert max_abs(lmap.S - closed) <= 1e-12
    assert max_abs(lmap.S - scipy.linalg.expm(-zeta / 2 * generator)) <= 1e-12


def test_rotation_blocks_are_two_spinor_rotations():
    axis = random_real_axis(np.random.default_rng(5))
    lmap = lorentz_spinor_map(LorentzKind.ROTATION, 1.1, axis)
    r = rotation2(1.1, axis)
    assert max_abs(lmap.S[:2, :2] - r) <= 1e-12
    assert max_abs(lmap.S[2:, 2:] - r) <= 1e-12
    assert max_abs(lmap.S[:2, 2:]) <= 1e-12


@pytest.mark.parametrize("seed", range(20))
def test_random_maps_intertwine_gammas(seed):
    lmap = random_lorentz_map(np.random.default_rng(seed))
    assert lmap.intertwining_residual() <= 1e-10
    assert lmap.metric_residual() <= 1e-12
    assert abs(np.linalg.det(lmap.Lambda) - 1) <= 1e-12
    assert adjoint_intertwines(lmap) <= 1e-12


def test_parameter_guard_and_axis_checks():
    with pytest.raises(ValueError):
        lorentz_spinor_map(LorentzKind.BOOST, 10.5, Z_AXIS)
    with pytest.raises(DegenerateAxisError):
        lorentz_spinor_map(LorentzKind.ROTATION, 0.5, Direction3(math.cosh(0.2), 1j * math.sinh(0.2), 0))
    with pytest.raises(DegenerateAxisError):
        lorentz_spinor_map(LorentzKind.BOOST, 0.5, Direction3(1, 1, 0))


def test_generators():
    gen = lorentz_generators()
    assert len(gen) == 6
    assert gamma5_commutes_with_generators() <= 1e-14


def test_identity_map_leaves_solutions_alone():
    lmap = lorentz_spinor_map(LorentzKind.BOOST, 0.0, Z_AXIS)
    report = covariance_check(lmap, FourMomentum(1.0), ChiralParams(1.0, 0.3))
    assert report.solutions == 2
    assert report.residual <= 1e-14


@pytest.mark.parametrize("alpha", [0.0, 0.9])
@pytest.mark.parametrize("branch", list(CdeBranch))
def test_boosted_rest_frame_solutions(alpha, branch):
    lmap = lorentz_spinor_map(LorentzKind.BOOST, 0.5, Z_AXIS)
    report = covariance_check(lmap, FourMomentum(1.0), ChiralParams(1.0, alpha), branch)
    assert report.passed
    assert report.transformed.E == pytest.approx(math.cosh(0.5))


@pytest.mark.parametrize("seed", range(50))
def test_covariance_over_random_maps(seed):
    rng = np.random.default_rng(seed)
    params = ChiralParams(rng.uniform(0.1, 2), rng.uniform(-math.pi, math.pi))
    p = FourMomentum.on_shell(rng.normal(size=3), params.mass)
    branch = CdeBranch.MIXED if seed % 2 else CdeBranch.EQUAL
    assert covariance_check(random_lorentz_map(rng), p, params, branch).passed


@pytest.mark.parametrize("seed", range(10))
def test_lagrangian_is_a_scalar(seed):
    rng = np.random.default_rng(seed)
    sample = FieldSample(
        psi=rng.normal(size=4) + 1j * rng.normal(size=4),
        dpsi=rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)),
    )
    assert lagrangian_covariance_check(random_lorentz_map(rng), sample, ChiralParams(1.0, 0.4)) <= 1e-9


@pytest.mark.parametrize(
    "kind,alpha,expected",
    [
        ("C", 0.3, 0.3),
        ("P", 0.3, -0.3),
        ("T", 0.4j, 0.4j),
        ("C", 0.1 + 0.2j, 0.1 - 0.2j),
        ("T", 0.1 + 0.2j, -0.1 + 0.2j),
        ("CP", 0.1 + 0.2j, -0.1 + 0.2j),
        ("CPT", 0.1 + 0.2j, 0.1 + 0.2j),
    ],
)
def test_alpha_table(kind, alpha, expected):
    assert alpha_transform(kind)(alpha) == expected


@settings(max_examples=100, deadline=None)
@given(finite_alphas)
def test_single_operations_are_involutions(alpha):
    for kind in "CPT":
        f = alpha_transform(kind)
        assert f(f(alpha)) == alpha


@pytest.mark.parametrize("kind", ["", "X", "CQ"])
def test_alpha_transform_rejects_unknown_kinds(kind):
    with pytest.raises(ValueError):
        alpha_transform(kind)


def test_classifier_conditions():
    assert classify_alpha("C").test(0.3)
    assert not classify_alpha("C").test(0.3 + 0.1j)
    assert classify_alpha("CP").test(0.5j)
    assert not classify_alpha("CP").test(0.5)
    assert classify_alpha("CPT").test(1.7 - 0.9j)
    assert classify_alpha("CPT").constraint == "alpha unconstrained (complex)"


@pytest.mark.parametrize("kind", ["C", "P", "T", "CP", "CT", "PT", "CPT", "TPC"])
def test_classifier_matches_brute_force(kind):
    grid = alpha_grid()
    assert len(grid) == 41 * 41
    assert classifier_mismatches(kind, grid) == 0


@pytest.mark.parametrize("kind,label", [("C", "i g2"), ("P", "g0"), ("T", "i g1 g3")])
@pytest.mark.parametrize("alpha", [0.0, 0.8, 0.4j, 0.3 - 0.2j])
def test_discrete_transforms_are_realized(kind, label, alpha):
    params = ChiralParams(1.0, alpha)
    p = FourMomentum.on_shell((0.3, -0.2, 0.9), params.mass)
    report = verify_discrete_transform(kind, p, params)
    assert report.passed
    assert report.label == label
    assert report.alpha_out == alpha_transform(kind)(alpha)


def test_charge_conjugation_keeps_the_kernel_dimension():
    params = ChiralParams(1.0, 0.6)
    report = verify_discrete_transform("C", FourMomentum.on_shell((0.5, 0, 0), 1.0), params)
    assert report.kernel_dims == (2, 2)


def test_search_stops_at_the_first_passing_candidate():
    params = ChiralParams(1.0, 0.6)
    report = verify_discrete_transform("C", FourMomentum.on_shell((0.5, 0.1, 0), 1.0), params)
    assert C_CANDIDATES[0] == report.label
    assert set(report.candidate_residuals) == {"i g2"}


def test_discrete_symmetry_matrices():
    for kind in "CPT":
        sym = discrete_symmetry(kind)
        assert sym.is_unitary()
    assert discrete_symmetry("C").conjugates and discrete_symmetry("T").conjugates
    assert not discrete_symmetry("P").conjugates
    assert discrete_symmetry("P").flips_x and not discrete_symmetry("P").flips_t
    with pytest.raises(ValueError):
        discrete_symmetry("C", "g5")
    with pytest.raises(ValueError):
        discrete_symmetry("CP")


def test_candidate_lists():
    assert C_CANDIDATES == ["i g2", "i g2 g5"]
    assert P_CANDIDATES == ["g0", "g0 g5"]
    assert T_CANDIDATES == ["i g1 g3", "i g1 g3 g5"]
    assert [sym.label for sym in discrete_candidates("T")] == T_CANDIDATES
    with pytest.raises(ValueError):
        discrete_candidates("PT")


@pytest.mark.parametrize("kind", "CPT")
def test_candidates_differ_by_more_than_a_phase(kind):
    first, second = discrete_candidates(kind)
    ratio = first.spinor_matrix @ np.linalg.inv(second.spinor_matrix)
    assert max_abs(ratio - ratio[0, 0] * identity(4)) > 0.5


def test_momentum_rules_follow_the_flags():
    p = FourMomentum(1.5, 0.5, 0.1, -0.2)
    c, par, t = (discrete_symmetry(kind) for kind in "CPT")
    assert not c.flips_x and not c.flips_t
    assert c.source_momentum(p) == p and c.target_momentum(p) == p.negated()
    assert par.source_momentum(p) == p.spatially_reflected() and par.target_momentum(p) == p
    assert t.flips_t and not t.flips_x
    assert t.source_momentum(p) == p.time_reflected() and t.target_momentum(p) == p.negated()


@pytest.mark.parametrize("kind,label", [("C", "i g2 g5"), ("P", "g0 g5"), ("T", "i g1 g3 g5")])
def test_gamma5_candidates_fail(kind, label):
    sym = discrete_symmetry(kind, label)
    params = ChiralParams(1.0, 0.6)
    p = FourMomentum.on_shell((0.5, 0.1, 0.2), 1.0)
    image = sym.transformed(cde_momentum_operator(CdeBranch.MIXED, sym.source_momentum(p), params))
    alpha_out = alpha_transform(kind)(params.alpha)
    target = cde_momentum_operator(CdeBranch.MIXED, sym.target_momentum(p), params.with_alpha(alpha_out))
    assert max_abs(image - target) > 1e-3


def test_discrete_search_uses_the_candidate_matrices():
    params = ChiralParams(1.0, 0.3 + 0.1j)
    p = FourMomentum.on_shell((0.2, -0.4, 0.7), params.mass)
    for kind in "CPT":
        report = verify_discrete_transform(kind, p, params)
        sym = discrete_symmetry(kind, report.label)
        image = sym.transformed(cde_momentum_operator(CdeBranch.MIXED, sym.source_momentum(p), params))
        target = cde_momentum_operator(
            CdeBranch.MIXED, sym.target_momentum(p), params.with_alpha(report.alpha_out)
        )
        assert max_abs(image - target) == pytest.approx(report.residual)
