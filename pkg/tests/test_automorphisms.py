"""Tests for symmetries, midpoints, chains, affine records, and the entire curve."""

import math

import numpy as np
import pytest

from lftdom import (
    ConvergenceError,
    Domain,
    HypothesisError,
    PathLeavesDomainError,
    ShapeError,
    SingularMatrixError,
    SpaceClosureError,
    StepBoundError,
    Verdict,
    affine_equivalence,
    affine_transport,
    affine_transport_identity_residual,
    ball_margin,
    compose_symmetries_affine,
    diagonal_space,
    find_midpoint,
    fixed_point_derivative,
    form_margin,
    full_space,
    invertibles_domain,
    lft_apply,
    liouville_curve,
    operator_norm,
    potapov_ginzburg_map,
    signature_from_projection,
    swap_involution,
    symmetry_coefficient_matrix,
    symmetry_direct,
    symmetry_map,
    transitive_chain,
    whole_space_domain,
)
from lftdom.sampling import (
    random_domain_member,
    random_matrix,
    random_pg_member,
    random_target_in_reach,
)


def scalar_domain(c, d, z0):
    return Domain(
        full_space(1, 1),
        np.array([[c]], dtype=complex),
        np.array([[d]], dtype=complex),
        np.array([[z0]], dtype=complex),
    )


def scalar_invertibles():
    return scalar_domain(1.0, 0.0, 1.0)


# ---------------------------------------------------------------------------
# Symmetries


def test_symmetry_blocks_scalar_oracle():
    m = symmetry_coefficient_matrix(scalar_invertibles(), np.array([[2.0]]))
    assert np.allclose(m, np.array([[0.0, 2.0], [0.5, 0.0]]))


def test_symmetry_reduces_to_reflection_on_whole_space():
    rng = np.random.default_rng(41)
    dom = whole_space_domain(full_space(2, 2))
    for _ in range(10):
        y = random_matrix(rng, 2, 2)
        z = random_matrix(rng, 2, 2)
        u = symmetry_map(dom, y)
        assert operator_norm(u(z) - (2 * y - z)) <= 1e-12


def test_symmetry_reduces_to_sandwich_on_invertibles():
    rng = np.random.default_rng(42)
    dom = invertibles_domain(full_space(2, 2))
    for _ in range(10):
        y = random_matrix(rng, 2, 2) + 2 * np.eye(2)
        z = random_matrix(rng, 2, 2) + 2 * np.eye(2)
        u = symmetry_map(dom, y)
        assert operator_norm(u(z) - y @ np.linalg.inv(z) @ y) <= 1e-9


def test_symmetry_is_involutive_and_fixes_its_point():
    rng = np.random.default_rng(43)
    dom = invertibles_domain(full_space(2, 2))
    eye = np.eye(4)
    for _ in range(20):
        y = random_domain_member(rng, dom, margin=0.05)
        z = random_domain_member(rng, dom, margin=0.05)
        u = symmetry_map(dom, y)
        assert operator_norm(u(u(z)) - z) <= 1e-8 * (1 + operator_norm(z))
        assert operator_norm(u(y) - y) <= 1e-10
        m = symmetry_coefficient_matrix(dom, y)
        assert operator_norm(m @ m - eye) <= 1e-10


def test_symmetry_direct_matches_block_route():
    rng = np.random.default_rng(44)
    dom = invertibles_domain(full_space(3, 3))
    for _ in range(10):
        y = random_domain_member(rng, dom, margin=0.05)
        z = random_domain_member(rng, dom, margin=0.05)
        u = symmetry_map(dom, y)
        assert operator_norm(u(z) - symmetry_direct(dom, y, z)) <= 1e-9 * (
            1 + operator_norm(z)
        )


def test_symmetry_rejects_points_outside_the_domain():
    dom = invertibles_domain(full_space(2, 2))
    with pytest.raises(SingularMatrixError):
        symmetry_map(dom, np.diag([1.0, 0.0]))
    dom = invertibles_domain(diagonal_space(2))
    with pytest.raises(SpaceClosureError):
        symmetry_map(dom, np.eye(2) + np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_fixed_point_derivative_is_minus_identity():
    rng = np.random.default_rng(45)
    dom = invertibles_domain(full_space(2, 2))
    for _ in range(10):
        y = random_domain_member(rng, dom, margin=0.1)
        v = 0.1 * random_matrix(rng, 2, 2)
        der = fixed_point_derivative(dom, y, v)
        assert operator_norm(der + v) <= 1e-6


def test_fixed_point_derivative_validates_input():
    dom = invertibles_domain(diagonal_space(2))
    y = np.diag([1.0, 2.0]).astype(complex)
    with pytest.raises(ValueError):
        fixed_point_derivative(dom, y, np.eye(2), step=1e-12)
    with pytest.raises(SpaceClosureError):
        fixed_point_derivative(dom, y, np.array([[0.0, 1.0], [0.0, 0.0]]))


# ---------------------------------------------------------------------------
# Midpoints


def test_midpoint_scalar_oracle():
    y = find_midpoint(scalar_invertibles(), np.array([[1.0]]), np.array([[1.5]]))
    assert abs(y[0, 0] - math.sqrt(1.5)) <= 1e-12


def test_midpoint_symmetry_reaches_the_target():
    rng = np.random.default_rng(46)
    dom = invertibles_domain(full_space(2, 2))
    for _ in range(15):
        z = random_domain_member(rng, dom, margin=0.05)
        shifted = Domain(dom.space, dom.c, dom.d, z)
        w = random_target_in_reach(rng, shifted, max_pull=0.8)
        y = find_midpoint(dom, z, w)
        assert dom.is_member(y)
        assert operator_norm(symmetry_direct(dom, y, z) - w) <= 1e-8 * (
            1 + operator_norm(w)
        )


def test_midpoint_enforces_the_step_bound():
    with pytest.raises(StepBoundError, match="step bound"):
        find_midpoint(scalar_invertibles(), np.array([[1.0]]), np.array([[4.0]]))


# ---------------------------------------------------------------------------
# Transitive chains


def test_chain_on_whole_space_is_a_translation():
    rng = np.random.default_rng(47)
    dom = whole_space_domain(full_space(2, 2))
    w = random_matrix(rng, 2, 2)
    chain = transitive_chain(dom, w)
    assert chain.factor_count % 2 == 0
    assert chain.residual <= 1e-12
    for _ in range(5):
        z = random_matrix(rng, 2, 2)
        assert operator_norm(chain.apply(z) - (z + w)) <= 1e-10
        assert operator_norm(chain.affine(z) - (z + w)) <= 1e-10


def test_chain_along_supplied_arc_path():
    dom = scalar_invertibles()
    path = [np.array([[np.exp(1j * np.pi * t)]]) for t in np.linspace(0.0, 1.0, 5)]
    chain = transitive_chain(dom, np.array([[-1.0]]), path=path)
    assert chain.factor_count == 4
    assert chain.residual <= 1e-8
    assert all(s <= 0.9 + 1e-12 for s in chain.step_norms)
    probe = np.array([[0.5 - 0.25j]])
    assert operator_norm(chain.apply(probe) - chain.affine(probe)) <= 1e-9
    assert operator_norm(chain.apply(probe) - lft_apply(chain.as_lft(), probe)) <= 1e-8


def test_chain_straight_route_fails_through_the_singular_set():
    dom = scalar_invertibles()
    with pytest.raises(PathLeavesDomainError) as err:
        transitive_chain(dom, np.array([[-1.0]]))
    assert err.value.index >= 1


def test_chain_matches_pointwise_composition_on_matrices():
    rng = np.random.default_rng(48)
    dom = invertibles_domain(full_space(2, 2))
    for _ in range(5):
        target = random_target_in_reach(rng, dom, max_pull=0.8)
        chain = transitive_chain(dom, target)
        assert chain.factor_count % 2 == 0
        assert chain.residual <= 1e-8 * (1 + operator_norm(target))
        assert all(s <= 0.9 + 1e-12 for s in chain.step_norms)
        assert operator_norm(chain.apply(dom.z0) - target) <= 1e-8 * (
            1 + operator_norm(target)
        )
        for _ in range(5):
            z = random_domain_member(rng, dom, margin=0.1)
            assert operator_norm(chain.affine(z) - chain.apply(z)) <= 1e-9 * (
                1 + operator_norm(z)
            )


def test_chain_validates_margin_and_path():
    dom = scalar_invertibles()
    target = np.array([[2.0]])
    with pytest.raises(ValueError):
        transitive_chain(dom, target, margin=1.5)
    with pytest.raises(ValueError):
        transitive_chain(dom, target, path=[target])
    with pytest.raises(ValueError):
        transitive_chain(dom, target, path=[np.array([[3.0]]), target])
    with pytest.raises(PathLeavesDomainError):
        transitive_chain(dom, target, path=[dom.z0, np.array([[0.0]]), target])


# ---------------------------------------------------------------------------
# Affine records


def test_composed_symmetries_scalar_oracle():
    dom = scalar_invertibles()
    aff = compose_symmetries_affine(dom, np.array([[2.0]]), np.array([[1.0]]))
    assert abs(aff(np.array([[3.0]]))[0, 0] - 12.0) <= 1e-12


def test_composed_symmetries_match_pointwise_and_kill_the_c_block():
    rng = np.random.default_rng(49)
    dom = invertibles_domain(full_space(2, 2))
    for _ in range(10):
        y = random_domain_member(rng, dom, margin=0.05)
        w = random_domain_member(rng, dom, margin=0.05)
        aff = compose_symmetries_affine(dom, w, y)
        pair = symmetry_map(dom, w).compose(symmetry_map(dom, y))
        assert operator_norm(pair.c) <= 1e-9 * (1 + operator_norm(pair.d))
        z = random_domain_member(rng, dom, margin=0.05)
        assert operator_norm(
            aff(z) - symmetry_direct(dom, w, symmetry_direct(dom, y, z))
        ) <= 1e-9 * (1 + operator_norm(z))


def test_affine_record_has_vanishing_second_differences():
    rng = np.random.default_rng(50)
    dom = invertibles_domain(full_space(2, 2))
    y = random_domain_member(rng, dom, margin=0.05)
    w = random_domain_member(rng, dom, margin=0.05)
    aff = compose_symmetries_affine(dom, w, y)
    for _ in range(10):
        a = random_matrix(rng, 2, 2)
        b = random_matrix(rng, 2, 2)
        c = random_matrix(rng, 2, 2)
        d = a + b - c
        second = aff(a) + aff(b) - aff(c) - aff(d)
        assert operator_norm(second) <= 1e-10 * (1 + operator_norm(aff(a)))


def test_affine_transport_scalar_oracle():
    dom = scalar_invertibles()
    phi = affine_transport(dom, np.array([[1.5]]))
    assert abs(phi(np.array([[1.0]]))[0, 0] - 1.5) <= 1e-12
    assert abs(phi(np.array([[2.0]]))[0, 0] - 3.0) <= 1e-12


def test_affine_transport_certifying_identity():
    rng = np.random.default_rng(51)
    dom = invertibles_domain(full_space(2, 2))
    for _ in range(10):
        w0 = random_target_in_reach(rng, dom, max_pull=0.8)
        phi = affine_transport(dom, w0)
        assert operator_norm(phi(dom.z0) - w0) <= 1e-10 * (1 + operator_norm(w0))
        z = random_domain_member(rng, dom, margin=0.05)
        assert affine_transport_identity_residual(dom, phi, z) <= 1e-9 * (
            1 + operator_norm(z)
        )
        assert dom.membership(phi(z)) is Verdict.MEMBER


def test_affine_transport_enforces_the_pull_bound():
    with pytest.raises(StepBoundError):
        affine_transport(scalar_invertibles(), np.array([[4.0]]))


def test_swap_involution_properties():
    rng = np.random.default_rng(52)
    dom = invertibles_domain(full_space(2, 2))
    for _ in range(10):
        w0 = random_target_in_reach(rng, dom, max_pull=0.8)
        v = swap_involution(dom, w0)
        assert operator_norm(v(dom.z0) - w0) <= 1e-10 * (1 + operator_norm(w0))
        assert operator_norm(v(w0) - dom.z0) <= 1e-9 * (1 + operator_norm(w0))
        z = random_domain_member(rng, dom, margin=0.1)
        assert operator_norm(v(v(z)) - z) <= 1e-9 * (1 + operator_norm(z))
        assert operator_norm(lft_apply(v.as_lft(), z) - v(z)) <= 1e-8 * (
            1 + operator_norm(z)
        )


def test_swap_involution_at_base_point_is_the_symmetry():
    rng = np.random.default_rng(53)
    dom = invertibles_domain(full_space(2, 2))
    v = swap_involution(dom, dom.z0)
    for _ in range(10):
        z = random_domain_member(rng, dom, margin=0.05)
        assert operator_norm(v(z) - symmetry_direct(dom, dom.z0, z)) <= 1e-9 * (
            1 + operator_norm(z)
        )


def test_affine_equivalence_scalar_oracle():
    dom1 = scalar_domain(2.0, 0.5, 0.25)
    dom2 = scalar_domain(6.0, 0.25, 0.125)
    eq = affine_equivalence(dom1, dom2, np.array([[3.0]]), dom1.z0, dom2.z0)
    assert abs(eq(dom1.z0)[0, 0] - 0.125) <= 1e-14
    z = np.array([[0.4]])
    expected = 0.125 + (0.4 - 0.25) / 3.0
    assert abs(eq(z)[0, 0] - expected) <= 1e-12
    assert eq.certificate_residual(z) <= 1e-12


def test_affine_equivalence_certificate_on_matrices():
    rng = np.random.default_rng(54)
    space = full_space(2, 2)
    eye = np.eye(2)
    for _ in range(10):
        c1 = random_matrix(rng, 2, 2)
        z1 = random_matrix(rng, 2, 2)
        dom1 = Domain(space, c1, eye - c1 @ z1, z1)
        r = random_matrix(rng, 2, 2) + 2 * eye
        z2 = random_matrix(rng, 2, 2)
        c2 = c1 @ r
        dom2 = Domain(space, c2, eye - c2 @ z2, z2)
        eq = affine_equivalence(dom1, dom2, r, z1, z2)
        assert operator_norm(eq(z1) - z2) <= 1e-10 * (1 + operator_norm(z2))
        z = random_domain_member(rng, dom1, margin=0.05)
        assert eq.certificate_residual(z) <= 1e-9 * (1 + operator_norm(z))
        assert dom2.membership(eq(z)) is Verdict.MEMBER


def test_affine_equivalence_validates_inputs():
    dom1 = scalar_domain(2.0, 0.5, 0.25)
    dom2 = scalar_domain(6.0, 0.25, 0.125)
    with pytest.raises(SingularMatrixError):
        affine_equivalence(dom1, dom2, np.array([[0.0]]), dom1.z0, dom2.z0)
    with pytest.raises(HypothesisError):
        affine_equivalence(dom1, dom2, np.array([[2.0]]), dom1.z0, dom2.z0)
    full_dom = invertibles_domain(full_space(2, 2))
    diag_dom = invertibles_domain(diagonal_space(2))
    with pytest.raises(HypothesisError):
        affine_equivalence(full_dom, diag_dom, np.eye(2), full_dom.z0, diag_dom.z0)


# ---------------------------------------------------------------------------
# Potapov-Ginzburg transform


def test_potapov_ginzburg_blocks_for_the_half_projection():
    e = np.diag([1.0, 0.0]).astype(complex)
    u = potapov_ginzburg_map(e)
    assert np.allclose(u.a, e - np.eye(2))
    assert np.allclose(u.b, e)
    assert np.allclose(u.c, e)
    assert np.allclose(u.d, np.eye(2) - e)
    m = u.coefficient_matrix()
    assert operator_norm(m @ m - np.eye(4)) <= 1e-14


def test_potapov_ginzburg_extreme_projections():
    rng = np.random.default_rng(55)
    z = 0.5 * random_matrix(rng, 2, 2)
    u_zero = potapov_ginzburg_map(np.zeros((2, 2)))
    assert operator_norm(u_zero(z) + z) <= 1e-12
    u_one = potapov_ginzburg_map(np.eye(2))
    zi = z + 2 * np.eye(2)
    assert operator_norm(u_one(zi) - np.linalg.inv(zi)) <= 1e-10


def test_potapov_ginzburg_rejects_non_projections():
    with pytest.raises(ValueError):
        potapov_ginzburg_map(np.array([[1.0, 0.0], [0.0, 0.5]]))


def test_potapov_ginzburg_exchanges_form_set_and_ball():
    rng = np.random.default_rng(56)
    for e in (np.zeros((2, 2)), np.diag([1.0, 0.0]), np.eye(2)):
        e = e.astype(complex)
        u = potapov_ginzburg_map(e)
        j = signature_from_projection(e)
        for _ in range(20):
            z = random_pg_member(rng, e)
            assert form_margin(z, j) > 0
            image = u(z)
            assert ball_margin(image) > 0
            assert operator_norm(u(image) - z) <= 1e-9 * (1 + operator_norm(z))


# ---------------------------------------------------------------------------
# The entire curve through two points


def test_liouville_scalar_curve_is_a_power():
    dom = scalar_invertibles()
    f = liouville_curve(dom, np.array([[1.5]]))
    assert abs(f(0)[0, 0] - 1.0) <= 1e-12
    assert abs(f(1)[0, 0] - 1.5) <= 1e-10
    assert abs(f(2)[0, 0] - 2.25) <= 1e-10
    assert abs(f(-1)[0, 0] - 2.0 / 3.0) <= 1e-10
    lam = 0.75 + 0.5j
    assert abs(f(lam)[0, 0] - 1.5 ** complex(lam)) <= 1e-10


def test_liouville_endpoint_and_identity_on_matrices():
    rng = np.random.default_rng(57)
    dom = invertibles_domain(full_space(2, 2))
    for _ in range(5):
        z = random_target_in_reach(rng, dom, max_pull=0.8)
        f = liouville_curve(dom, z)
        assert operator_norm(f(0) - dom.z0) <= 1e-8
        assert operator_norm(f(1) - z) <= 1e-8
        for lam in (2.0, -1.5, 0.5 + 1j, -0.25 - 0.75j):
            assert dom.membership(f(lam)) is Verdict.MEMBER
            assert f.identity_residual(lam) <= 1e-8
            prod = f.series_factor(lam) @ f.series_factor(-lam)
            assert operator_norm(prod - np.eye(2)) <= 1e-9


def test_liouville_requires_a_contractive_displacement():
    dom = scalar_invertibles()
    with pytest.raises(StepBoundError):
        liouville_curve(dom, np.array([[2.5]]))
    f = liouville_curve(dom, np.array([[1.99995]]))
    with pytest.raises(ConvergenceError):
        # |w| = 0.99995 needs far more terms than the series cap allows
        f(0.5)
