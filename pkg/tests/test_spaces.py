"""Tests for operator subspaces and their closure predicates."""

import numpy as np
import pytest

from lftdom import (
    OperatorSpace,
    ShapeError,
    SpaceClosureError,
    closed_under_quadratic,
    diagonal_space,
    full_space,
    is_power_algebra,
    symmetric_space,
    upper_triangular_space,
)

E11 = np.array([[1, 0], [0, 0]], dtype=complex)
E12 = np.array([[0, 1], [0, 0]], dtype=complex)
E21 = np.array([[0, 0], [1, 0]], dtype=complex)
E22 = np.array([[0, 0], [0, 1]], dtype=complex)


def off_diagonal_space():
    return OperatorSpace(2, 2, [E12, E21], label="off-diagonal")


def test_construction_rejects_dependent_basis():
    with pytest.raises(ValueError):
        OperatorSpace(2, 2, [E11, 2 * E11])
    with pytest.raises(ShapeError):
        OperatorSpace(2, 2, [np.ones((2, 3), dtype=complex)])


def test_contains_basis_elements_and_spans():
    rng = np.random.default_rng(21)
    for space in (full_space(2, 3), diagonal_space(3), symmetric_space(2), off_diagonal_space()):
        for b in space.basis:
            assert space.contains(b)
        coeffs = rng.uniform(-1, 1, space.dim) + 1j * rng.uniform(-1, 1, space.dim)
        assert space.contains(space.lincomb(coeffs))


def test_contains_examples():
    assert full_space(2, 2).contains(np.array([[1, 7j], [3, 4]], dtype=complex))
    assert not diagonal_space(2).contains(E12)
    assert symmetric_space(2).contains(np.array([[1, 2], [2, 3]], dtype=complex))
    assert not symmetric_space(2).contains(E12)


def test_contains_rejects_wrong_shape():
    with pytest.raises(ShapeError):
        full_space(2, 2).contains(np.ones((3, 3), dtype=complex))


def test_projection_and_coordinates_round_trip():
    rng = np.random.default_rng(22)
    space = upper_triangular_space(3)
    for _ in range(10):
        coeffs = rng.uniform(-1, 1, space.dim) + 1j * rng.uniform(-1, 1, space.dim)
        z = space.lincomb(coeffs)
        assert space.residual(z) <= 1e-12
        assert np.allclose(space.coordinates(z), coeffs)
        assert np.allclose(space.project(z), z)
    z = rng.uniform(-1, 1, (3, 3)) + 1j * rng.uniform(-1, 1, (3, 3))
    p = space.project(z)
    assert space.contains(p)
    # projection is idempotent and never increases the residual
    assert np.allclose(space.project(p), p)


def test_closed_under_quadratic_examples():
    eye = np.eye(2, dtype=complex)
    assert closed_under_quadratic(full_space(2, 2), eye)
    assert closed_under_quadratic(OperatorSpace(2, 2, [E11]), eye)
    assert not closed_under_quadratic(off_diagonal_space(), eye)
    # an off-diagonal middle factor keeps the products off-diagonal
    assert closed_under_quadratic(off_diagonal_space(), E12 + 2 * E21)


def test_closed_under_quadratic_agrees_with_sampling():
    rng = np.random.default_rng(23)
    cases = [
        (full_space(2, 2), np.eye(2, dtype=complex)),
        (diagonal_space(3), np.diag([1.0, 2.0, -1.0]).astype(complex)),
        (off_diagonal_space(), E12 + 2 * E21),
    ]
    for space, x0 in cases:
        assert closed_under_quadratic(space, x0)
        for _ in range(50):
            coeffs = rng.uniform(-1, 1, space.dim) + 1j * rng.uniform(-1, 1, space.dim)
            z = space.lincomb(coeffs)
            assert space.contains(z @ x0 @ z)


def test_is_power_algebra_examples():
    for n in (1, 2, 3, 4):
        assert is_power_algebra(full_space(n, n))
    assert is_power_algebra(upper_triangular_space(2))
    assert is_power_algebra(diagonal_space(3))
    trace_zero = OperatorSpace(2, 2, [E12, E21, E11 - E22], label="trace-zero")
    assert not is_power_algebra(trace_zero)
    assert not is_power_algebra(off_diagonal_space())
    with pytest.raises(SpaceClosureError):
        is_power_algebra(full_space(2, 3))
