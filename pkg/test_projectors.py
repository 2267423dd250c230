import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from clifford import sigma_dot
from projectors import (
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    DegenerateAxisError,
    Direction3,
    ProjectorPair,
    Spin,
    chi_tensor,
    eigvec2,
    family_residuals,
    is_hermitian,
    outer,
    parse_axis,
    projector2,
    projector_family,
    projector_tensor,
    random_complex_axis,
    random_real_axis,
    rotation2,
    rotation2_spectral,
    rotation_phase_residual,
    solve_idempotent_constraints,
)
from tensor_core import identity, max_abs

seeds = st.integers(min_value=0, max_value=2**32 - 1)

COMPLEX_AXIS = Direction3(math.cosh(0.7), 1j * math.sinh(0.7), 0.0)


@pytest.mark.parametrize("axis", [X_AXIS, Y_AXIS, Z_AXIS, COMPLEX_AXIS])
def test_projector_pair_is_a_resolution_of_identity(axis):
    assert max(ProjectorPair.about(axis).residuals().values()) <= 1e-12


def test_constraints_closed_form_pair():
    report = solve_idempotent_constraints(0.5, [0, 0, 0.5], 0.5, [0, 0, -0.5])
    assert report.satisfied and not report.degenerate
    assert max(report.residuals.values()) <= 1e-15


def test_identity_zero_pair_is_degenerate():
    report = solve_idempotent_constraints(1.0, [0, 0, 0], 0.0, [0, 0, 0])
    assert not report.satisfied
    assert report.degenerate
    assert "a0 = 1/2" in report.failures


def test_idempotency_residual_measures_the_norm_defect():
    report = solve_idempotent_constraints(0.5, [0.3, 0, 0], 0.5, [-0.3, 0, 0])
    assert not report.satisfied and not report.degenerate
    assert report.idempotency_residual == pytest.approx(0.25 - 0.09, abs=1e-15)


def test_constraints_reject_short_vectors():
    with pytest.raises(ValueError):
        solve_idempotent_constraints(0.5, [0.5, 0], 0.5, [-0.5, 0])


def test_isotropic_axis_is_rejected():
    isotropic = Direction3(1.0, 1j, 0.0)
    assert isotropic.bilinear_norm2 == 0
    with pytest.raises(DegenerateAxisError):
        projector2(isotropic, Spin.PLUS)
    with pytest.raises(DegenerateAxisError):
        isotropic.normalized()


def test_unnormalized_axis_is_rejected():
    with pytest.raises(DegenerateAxisError):
        projector2(Direction3(1.0, 1.0, 0.0), Spin.MINUS)


def test_normalized_divides_by_principal_root():
    axis = Direction3(3.0, 4.0, 0.0).normalized()
    assert axis.is_normalized()
    assert axis.q1 == pytest.approx(0.6)


def test_eigenvectors_on_coordinate_axes():
    assert max_abs(eigvec2(Z_AXIS, Spin.PLUS) - np.array([1, 0])) <= 1e-15
    assert max_abs(eigvec2(X_AXIS, Spin.MINUS) - np.array([1, -1]) / math.sqrt(2)) <= 1e-15


@pytest.mark.parametrize("s", [Spin.PLUS, Spin.MINUS])
def test_complex_axis_eigenvector(s):
    chi = eigvec2(COMPLEX_AXIS, s)
    assert abs(np.linalg.norm(chi) - 1) <= 1e-14
    assert max_abs(sigma_dot(COMPLEX_AXIS.components) @ chi - int(s) * chi) <= 1e-12
    # first nonzero entry is real and positive
    assert abs(chi[0].imag) <= 1e-15 and chi[0].real > 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_tensor_families(n):
    rng = np.random.default_rng(n)
    axes = [random_complex_axis(rng) for _ in range(n)]
    family = projector_family(axes)
    assert len(family) == 2**n
    assert next(iter(family.values())).shape == (2**n, 2**n)
    assert max(family_residuals(family).values()) <= 1e-12


def test_chi_tensor_is_fixed_by_its_projector():
    specs = [(Spin.PLUS, COMPLEX_AXIS), (Spin.MINUS, X_AXIS)]
    chi = chi_tensor(specs)
    assert max_abs(projector_tensor(specs) @ chi - chi) <= 1e-12


def test_empty_tensor_products_are_rejected():
    with pytest.raises(ValueError):
        projector_tensor([])
    with pytest.raises(ValueError):
        chi_tensor([])


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_random_axes_give_projectors(seed):
    rng = np.random.default_rng(seed)
    for axis in (random_real_axis(rng), random_complex_axis(rng)):
        assert axis.is_normalized()
        p = projector2(axis, Spin.PLUS)
        assert max_abs(p @ p - p) <= 1e-12


def test_full_turn_is_minus_identity():
    assert max_abs(rotation2(2 * math.pi, Z_AXIS) + identity(2)) <= 1e-15


@settings(max_examples=100, deadline=None)
@given(seeds, st.floats(min_value=-4 * math.pi, max_value=4 * math.pi))
def test_rotation_forms_agree(seed, theta):
    axis = random_real_axis(np.random.default_rng(seed))
    r = rotation2(theta, axis)
    assert max_abs(r - rotation2_spectral(theta, axis)) <= 1e-13
    assert max_abs(r - scipy.linalg.expm(0.5j * theta * sigma_dot(axis.components))) <= 1e-12
    assert rotation_phase_residual(theta, axis) <= 1e-12


def test_rotation_needs_real_axis():
    with pytest.raises(DegenerateAxisError):
        rotation2(1.0, COMPLEX_AXIS)


def test_parse_axis():
    assert parse_axis([0, 0, 0, 0, 1, 0]) == Z_AXIS
    with pytest.raises(ValueError):
        parse_axis([1, 0, 0])


@pytest.mark.parametrize("text,expected", [("+", Spin.PLUS), ("-", Spin.MINUS), ("-1", Spin.MINUS)])
def test_spin_parse(text, expected):
    assert Spin.parse(text) is expected


def test_spin_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Spin.parse("up")


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_real_axis_projectors_are_eigenvector_outer_products(seed):
    pair = ProjectorPair.about(random_real_axis(np.random.default_rng(seed)))
    assert max(pair.spectral_residuals().values()) <= 1e-13
    for proj in (pair.plus, pair.minus):
        assert np.linalg.matrix_rank(proj, tol=1e-10) == 1
        assert is_hermitian(proj)


def test_complex_axis_projectors_are_not_hermitian():
    pair = ProjectorPair.about(COMPLEX_AXIS)
    assert not is_hermitian(pair.plus)
    with pytest.raises(ValueError):
        pair.spectral_residuals()


def test_outer_of_z_eigenvector():
    assert max_abs(outer(eigvec2(Z_AXIS, Spin.MINUS)) - projector2(Z_AXIS, Spin.MINUS)) <= 1e-15
