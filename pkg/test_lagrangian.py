import numpy as np
import pytest

from cde import CdeBranch, FourMomentum, plane_wave_momentum, plane_wave_solutions
from clifford import ChiralParams, chiral_exp, gamma_chiral
from lagrangian import (
    FieldGrid,
    FieldSample,
    Variant,
    action,
    dirac_adjoint,
    discrete_cde,
    euler_lagrange_convergence,
    euler_lagrange_residual,
    gaussian_packet,
    lagrangian_density,
    mass_matrix,
    plane_wave_sample,
)
from tensor_core import identity, max_abs

PARAMS = ChiralParams(1.0, 0.7)
MOMENTUM = FourMomentum.on_shell((0.6, -0.5, 0.4), PARAMS.mass)


def random_sample(seed):
    rng = np.random.default_rng(seed)
    return FieldSample(
        psi=rng.normal(size=4) + 1j * rng.normal(size=4),
        dpsi=rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)),
    )


def expanded_density(sample, params):
    """Term-by-term evaluation with explicit index loops."""
    gs = gamma_chiral()
    psi, dpsi = sample.psi, sample.dpsi
    g0 = gs.gamma0
    mass = params.mass * chiral_exp(params.alpha)
    psibar = [sum(np.conj(psi[b]) * g0[b, a] for b in range(4)) for a in range(4)]
    dpsibar = [[sum(np.conj(dpsi[mu][b]) * g0[b, a] for b in range(4)) for a in range(4)] for mu in range(4)]
    total = 0j
    for a in range(4):
        for b in range(4):
            kinetic = sum(gs.gammas[mu][a, b] * dpsi[mu][b] for mu in range(4))
            total += 0.5 * psibar[a] * (1j * kinetic - mass[a, b] * psi[b])
            left = sum(dpsibar[mu][a] * gs.gammas[mu][a, b] for mu in range(4))
            total -= 0.5 * (1j * left * psi[b] + psibar[a] * mass[a, b] * psi[b])
    return total


def test_zero_field_has_zero_density():
    sample = FieldSample(psi=np.zeros(4), dpsi=np.zeros((4, 4)))
    assert lagrangian_density(sample, PARAMS) == 0


@pytest.mark.parametrize("seed", range(5))
def test_density_matches_term_by_term_expansion(seed):
    sample = random_sample(seed)
    assert abs(lagrangian_density(sample, PARAMS) - expanded_density(sample, PARAMS)) <= 1e-12


@pytest.mark.parametrize("seed", range(5))
def test_density_is_real_for_real_angle(seed):
    sample = random_sample(seed)
    scale = np.linalg.norm(sample.psi) * (np.linalg.norm(sample.psi) + np.linalg.norm(sample.dpsi))
    assert abs(lagrangian_density(sample, PARAMS).imag) <= 1e-12 * scale


def test_density_is_complex_for_complex_angle():
    sample = random_sample(0)
    assert abs(lagrangian_density(sample, PARAMS.with_alpha(0.3 + 0.5j)).imag) > 1e-6


@pytest.mark.parametrize("branch", list(CdeBranch))
def test_density_vanishes_on_plane_wave_solutions(branch):
    w = plane_wave_momentum(branch, MOMENTUM)
    for u in plane_wave_solutions(branch, MOMENTUM, PARAMS):
        for x in [(0, 0, 0, 0), (1.5, -0.2, 3.0, 0.7)]:
            assert abs(lagrangian_density(plane_wave_sample(u.vector, w, x), PARAMS)) <= 1e-12


def test_chiral_mass_at_zero_angle_is_the_dirac_mass():
    params = ChiralParams(1.3, 0.0)
    assert np.array_equal(mass_matrix(params, Variant.CHIRAL_DIRAC), mass_matrix(params, Variant.DIRAC))


def test_printed_sign_mass_matrix():
    assert max_abs(mass_matrix(PARAMS, printed_sign=True) - chiral_exp(PARAMS.alpha, -1)) <= 1e-15


def test_dirac_adjoint():
    psi = np.array([1, 2j, 0, 1])
    assert max_abs(dirac_adjoint(psi) - np.conj(psi) @ gamma_chiral().gamma0) == 0


def test_field_sample_shapes():
    with pytest.raises(ValueError):
        FieldSample(psi=np.zeros(3), dpsi=np.zeros((4, 4)))


def test_field_grid_validation():
    with pytest.raises(ValueError):
        FieldGrid((3, 3, 3, 3), 0.1, np.zeros((3, 3, 3, 4)))
    with pytest.raises(ValueError):
        FieldGrid((3, 3, 3, 3), 0.0, np.zeros((3, 3, 3, 3, 4)))


def test_action_of_zero_field():
    grid = FieldGrid((3, 3, 3, 3), 0.1, np.zeros((3, 3, 3, 3, 4)))
    assert action(grid, PARAMS) == 0


def test_action_needs_three_points_per_axis():
    grid = FieldGrid((2, 3, 3, 3), 0.1, np.zeros((2, 3, 3, 3, 4)))
    with pytest.raises(ValueError):
        action(grid, PARAMS)


def test_action_scales_with_the_volume_element():
    u = np.array([1.0, 0.5j, -0.2, 0.3])
    values = np.broadcast_to(u, (4, 4, 4, 4, 4))
    fine = action(FieldGrid((4, 4, 4, 4), 0.1, values), PARAMS)
    coarse = action(FieldGrid((4, 4, 4, 4), 0.2, values), PARAMS)
    assert coarse / fine == pytest.approx(16.0, rel=1e-12)


def test_action_of_plane_wave_is_second_order_small():
    u = plane_wave_solutions(CdeBranch.MIXED, MOMENTUM, PARAMS)[0].vector
    per_point = []
    for h in (0.1, 0.05):
        grid = FieldGrid.plane_wave(u, MOMENTUM, (5, 5, 5, 5), h)
        per_point.append(abs(action(grid, PARAMS)) / (h**4 * 3**4))
    assert per_point[0] <= 1e-2
    assert per_point[0] / per_point[1] == pytest.approx(4.0, rel=0.15)


def test_euler_lagrange_needs_five_points_per_axis():
    grid = FieldGrid((4, 5, 5, 5), 0.1, np.zeros((4, 5, 5, 5, 4)))
    with pytest.raises(ValueError):
        euler_lagrange_residual(grid, PARAMS)


def test_euler_lagrange_converges_at_second_order():
    u = plane_wave_solutions(CdeBranch.MIXED, MOMENTUM, PARAMS)[0].vector
    study = euler_lagrange_convergence(u, MOMENTUM, PARAMS, spacing=0.1)
    assert study.ratio == pytest.approx(4.0, rel=0.15)
    assert abs(study.order - 2.0) <= 0.3


def test_euler_lagrange_matches_direct_operator_on_a_packet():
    u = plane_wave_solutions(CdeBranch.MIXED, MOMENTUM, PARAMS)[0].vector
    h = 0.01
    grid = FieldGrid.sample(gaussian_packet(u, MOMENTUM, width=0.05, centre=(3 * h,) * 4), (7, 7, 7, 7), h)
    result = euler_lagrange_residual(grid, PARAMS)
    assert result.residual.shape == (3, 3, 3, 3, 4)
    assert result.max_residual > 1e-3
    assert result.max_deviation <= 1e-6


def test_euler_lagrange_is_the_discrete_cde():
    grid = FieldGrid.sample(gaussian_packet([1, 0, 0.5j, 0], MOMENTUM, width=0.3), (5, 5, 5, 5), 0.1)
    result = euler_lagrange_residual(grid, PARAMS)
    direct = discrete_cde(grid, PARAMS)[1:-1, 1:-1, 1:-1, 1:-1]
    assert max_abs(result.residual - direct) <= 1e-6


def test_printed_sign_lagrangian_gives_the_mirrored_angle():
    grid = FieldGrid.sample(gaussian_packet([1, 0, 0.5j, 0], MOMENTUM, width=0.3), (5, 5, 5, 5), 0.1)
    result = euler_lagrange_residual(grid, PARAMS, printed_sign=True)
    mirrored = discrete_cde(grid, PARAMS.with_alpha(-PARAMS.alpha))[1:-1, 1:-1, 1:-1, 1:-1]
    assert max_abs(result.residual - mirrored) <= 1e-6
    assert result.max_deviation <= 1e-6


def test_massless_residual_ignores_alpha():
    grid = FieldGrid.sample(gaussian_packet([1, 0.2, 0, 0], MOMENTUM, width=0.3), (5, 5, 5, 5), 0.1)
    a = euler_lagrange_residual(grid, ChiralParams(0.0, 0.3)).residual
    b = euler_lagrange_residual(grid, ChiralParams(0.0, 1.1)).residual
    assert max_abs(a - b) <= 1e-8


def test_plane_wave_sample_derivatives():
    sample = plane_wave_sample(identity(4)[0], FourMomentum(2.0, 1.0, 0.0, 0.0), (0.0, 0.0, 0.0, 0.0))
    # d_mu psi = -i w_mu psi with w_mu = (2, -1, 0, 0)
    assert max_abs(sample.dpsi[0] - (-2j) * sample.psi) == 0
    assert max_abs(sample.dpsi[1] - 1j * sample.psi) == 0
