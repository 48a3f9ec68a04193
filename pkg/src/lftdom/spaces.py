"""Complex subspaces of the m x n matrices, given by a basis.

An OperatorSpace holds matrices of shape (dim_k, dim_h): linear maps from an
H of dimension dim_h into a K of dimension dim_k. Closedness is automatic in
finite dimensions, so the class only tracks the span and offers the closure
predicates the domain construction needs.
"""

import numpy as np

from .exceptions import ShapeError, SpaceClosureError
from .linalg import DEFAULT_TOL, as_cmatrix


class OperatorSpace:
    """Span of a linearly independent list of dim_k x dim_h matrices."""

    def __init__(self, dim_k, dim_h, basis, label=""):
        if dim_k < 1 or dim_h < 1:
            raise ValueError("dimensions must be positive")
        if not basis:
            raise ValueError("basis must be non-empty")
        self.dim_k = int(dim_k)
        self.dim_h = int(dim_h)
        self.basis = [as_cmatrix(b, rows=dim_k, cols=dim_h) for b in basis]
        self.label = label
        # columns of the coordinate matrix are the vectorised basis elements
        coord = np.column_stack([b.ravel() for b in self.basis])
        if np.linalg.matrix_rank(coord) != len(self.basis):
            raise ValueError("basis elements are linearly dependent")
        self._coord = coord
        self._onb, _ = np.linalg.qr(coord)

    @property
    def shape(self):
        return (self.dim_k, self.dim_h)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def is_full(self):
        return self.dim == self.dim_k * self.dim_h

    @property
    def is_square(self):
        return self.dim_k == self.dim_h

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"OperatorSpace({self.dim_k}x{self.dim_h}, dim={self.dim}{tag})"

    def _check_shape(self, z):
        z = np.asarray(z, dtype=complex)
        if z.shape != self.shape:
            raise ShapeError(f"expected shape {self.shape}, got {z.shape}")
        return z

    def residual(self, z):
        """Frobenius norm of z minus its orthogonal projection onto the span."""
        z = self._check_shape(z)
        v = z.ravel()
        r = v - self._onb @ (self._onb.conj().T @ v)
        return float(np.linalg.norm(r))

    def contains(self, z, tol=DEFAULT_TOL):
        """True iff the projection residual is at most eq_tol * (1 + ||z||_F)."""
        z = self._check_shape(z)
        return self.residual(z) <= tol.eq_tol * (1.0 + np.linalg.norm(z))

    def project(self, z):
        """Orthogonal projection of z onto the span."""
        z = self._check_shape(z)
        v = self._onb @ (self._onb.conj().T @ z.ravel())
        return v.reshape(self.shape)

    def coordinates(self, z):
        """Coefficients of z in the stored basis (least squares; exact on members)."""
        z = self._check_shape(z)
        coeffs, *_ = np.linalg.lstsq(self._coord, z.ravel(), rcond=None)
        return coeffs

    def lincomb(self, coeffs):
        """Member built from basis coefficients."""
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape != (self.dim,):
            raise ShapeError(f"expected {self.dim} coefficients, got {coeffs.shape}")
        return np.tensordot(coeffs, np.stack(self.basis), axes=1)


def closed_under_quadratic(space, x0, tol=DEFAULT_TOL):
    """Whether Z @ x0 @ Z stays in the space for every member Z.

    By polarisation the quadratic condition is equivalent to membership of
    Bi @ x0 @ Bj + Bj @ x0 @ Bi for every basis pair, which is what is checked.
    """
    x0 = as_cmatrix(x0, rows=space.dim_h, cols=space.dim_k)
    bs = space.basis
    for i in range(len(bs)):
        for j in range(i, len(bs)):
            p = bs[i] @ x0 @ bs[j] + bs[j] @ x0 @ bs[i]
            if not space.contains(p, tol):
                return False
    return True


def is_power_algebra(space, tol=DEFAULT_TOL):
    """True iff the space is square, contains I, and contains all member squares.

    Squares reduce to the symmetrised basis products Bi Bj + Bj Bi.
    """
    if not space.is_square:
        raise SpaceClosureError("power-algebra check requires a square space")
    if not space.contains(np.eye(space.dim_h, dtype=complex), tol):
        return False
    bs = space.basis
    for i in range(len(bs)):
        for j in range(i, len(bs)):
            p = bs[i] @ bs[j] + bs[j] @ bs[i]
            if not space.contains(p, tol):
                return False
    return True


def full_space(dim_k, dim_h):
    """All dim_k x dim_h complex matrices (standard basis)."""
    basis = []
    for r in range(dim_k):
        for c in range(dim_h):
            e = np.zeros((dim_k, dim_h), dtype=complex)
            e[r, c] = 1.0
            basis.append(e)
    return OperatorSpace(dim_k, dim_h, basis, label="full")


def diagonal_space(n):
    """Diagonal n x n matrices."""
    basis = []
    for r in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[r, r] = 1.0
        basis.append(e)
    return OperatorSpace(n, n, basis, label="diagonal")


def symmetric_space(n):
    """Complex symmetric n x n matrices (Z equal to its transpose)."""
    basis = []
    for r in range(n):
        for c in range(r, n):
            e = np.zeros((n, n), dtype=complex)
            e[r, c] = 1.0
            e[c, r] = 1.0
            basis.append(e)
    return OperatorSpace(n, n, basis, label="symmetric")


def upper_triangular_space(n):
    """Upper triangular n x n matrices."""
    basis = []
    for r in range(n):
        for c in range(r, n):
            e = np.zeros((n, n), dtype=complex)
            e[r, c] = 1.0
            basis.append(e)
    return OperatorSpace(n, n, basis, label="upper-triangular")
