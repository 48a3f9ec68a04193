"""Linear fractional transformations and their domains in matrix spaces.

A map Z -> (A Z + B)(C Z + D)^-1 acts on dim_k x dim_h matrices Z. Given a
subspace, coefficients (C, D) and a base point Z0 with C Z0 + D invertible,
the associated domain is the set of members Z of the subspace where C Z + D
stays invertible, provided the space absorbs the quadratic products
Z X0 Z with X0 = (C Z0 + D)^-1 C. In finite dimensions that set is connected
(the complement is the zero set of a determinant), so no component tracking
is needed and membership is just the two checks.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ShapeError, SingularMatrixError, SpaceClosureError
from .linalg import DEFAULT_TOL, as_cmatrix, dagger, operator_norm, try_invert
from .spaces import OperatorSpace, closed_under_quadratic, full_space, is_power_algebra


@dataclass(frozen=True)
class LFTMap:
    """Block coefficients of Z -> (a z + b)(c z + d)^-1 on dim_k x dim_h arguments."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        a, b, c, d = (np.asarray(m, dtype=complex) for m in (self.a, self.b, self.c, self.d))
        k = a.shape[0]
        h = d.shape[0]
        if a.shape != (k, k) or b.shape != (k, h) or c.shape != (h, k) or d.shape != (h, h):
            raise ShapeError(
                f"inconsistent block shapes a={a.shape} b={b.shape} c={c.shape} d={d.shape}"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @property
    def dim_k(self):
        return self.a.shape[0]

    @property
    def dim_h(self):
        return self.d.shape[0]

    def coefficient_matrix(self):
        """The assembled (dim_k + dim_h)-square block matrix [[a, b], [c, d]]."""
        return np.block([[self.a, self.b], [self.c, self.d]])

    @classmethod
    def from_coefficient_matrix(cls, m, dim_k, dim_h):
        m = as_cmatrix(m, rows=dim_k + dim_h, cols=dim_k + dim_h)
        return cls(m[:dim_k, :dim_k], m[:dim_k, dim_k:], m[dim_k:, :dim_k], m[dim_k:, dim_k:])

    @classmethod
    def identity(cls, dim_k, dim_h):
        return cls(
            np.eye(dim_k, dtype=complex),
            np.zeros((dim_k, dim_h), dtype=complex),
            np.zeros((dim_h, dim_k), dtype=complex),
            np.eye(dim_h, dtype=complex),
        )

    def compose(self, inner):
        """The map self(inner(Z)); coefficient matrices multiply."""
        m = self.coefficient_matrix() @ inner.coefficient_matrix()
        return LFTMap.from_coefficient_matrix(m, self.dim_k, self.dim_h)

    def __call__(self, z, tol=DEFAULT_TOL):
        return lft_apply(self, z, tol)


def lft_apply(t, z, tol=DEFAULT_TOL):
    """Evaluate (a z + b)(c z + d)^-1; raises SingularMatrixError on a singular denominator."""
    z = as_cmatrix(z, rows=t.dim_k, cols=t.dim_h)
    den = t.c @ z + t.d
    den_inv = try_invert(den, tol)
    if den_inv is None:
        raise SingularMatrixError("linear fractional map denominator c z + d is singular")
    return (t.a @ z + t.b) @ den_inv


class Verdict(enum.Enum):
    MEMBER = "member"
    NOT_IN_SPACE = "not-in-space"
    SINGULAR = "singular"


class Domain:
    """Domain of a linear fractional transformation on an operator space.

    Holds the space, the coefficients (c, d), the base point z0 and the cached
    kernel x0 = (c z0 + d)^-1 c. Construction validates that z0 belongs to the
    space, that c z0 + d is invertible, and that the space is closed under the
    quadratic products Z x0 Z.
    """

    def __init__(self, space, c, d, z0, tol=DEFAULT_TOL, label=""):
        self.space = space
        self.c = as_cmatrix(c, rows=space.dim_h, cols=space.dim_k)
        self.d = as_cmatrix(d, rows=space.dim_h, cols=space.dim_h)
        self.z0 = as_cmatrix(z0, rows=space.dim_k, cols=space.dim_h)
        self.label = label or space.label
        if not space.contains(self.z0, tol):
            raise SpaceClosureError("base point does not belong to the operator space")
        den_inv = try_invert(self.c @ self.z0 + self.d, tol)
        if den_inv is None:
            raise SingularMatrixError("c z0 + d is singular at the base point")
        self.x0 = den_inv @ self.c
        if not closed_under_quadratic(space, self.x0, tol):
            raise SpaceClosureError(
                "operator space is not closed under the quadratic products Z x0 Z"
            )

    @property
    def dim_k(self):
        return self.space.dim_k

    @property
    def dim_h(self):
        return self.space.dim_h

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"Domain({self.dim_k}x{self.dim_h}{tag})"

    def membership(self, z, tol=DEFAULT_TOL):
        """Classify z as MEMBER, NOT_IN_SPACE, or SINGULAR.

        In finite dimensions the invertibility set inside the space is
        connected, so membership needs no component test.
        """
        z = as_cmatrix(z, rows=self.dim_k, cols=self.dim_h)
        if not self.space.contains(z, tol):
            return Verdict.NOT_IN_SPACE
        if try_invert(self.c @ z + self.d, tol) is None:
            return Verdict.SINGULAR
        return Verdict.MEMBER

    def is_member(self, z, tol=DEFAULT_TOL):
        return self.membership(z, tol) is Verdict.MEMBER

    def denominator(self, z):
        return self.c @ z + self.d

    def kernel_at(self, y, tol=DEFAULT_TOL):
        """X = (c y + d)^-1 c, the local kernel entering every automorphism formula."""
        den_inv = try_invert(self.c @ y + self.d, tol)
        if den_inv is None:
            raise SingularMatrixError("c y + d is singular; point is outside the domain")
        return den_inv @ self.c


@dataclass(frozen=True)
class ConnectivityReport:
    """Which of the four sufficient connectivity conditions hold.

    compact_coefficients   products C Z are compact (always, in finite dimensions)
    polynomial_identity    every X0 Z satisfies a polynomial equation (Cayley-Hamilton)
    full_space_closed_range  space is full and ran C is closed
    range_inclusion        space is full and ran D lies inside ran C
    """

    compact_coefficients: bool
    polynomial_identity: bool
    full_space_closed_range: bool
    range_inclusion: bool

    @property
    def connected(self):
        return (
            self.compact_coefficients
            or self.polynomial_identity
            or self.full_space_closed_range
            or self.range_inclusion
        )


def connectivity_class(dom):
    """Report the connectivity conditions for the domain's ambient set."""
    full = dom.space.is_full
    ran_d_in_ran_c = False
    if full:
        rank_c = np.linalg.matrix_rank(dom.c)
        rank_cd = np.linalg.matrix_rank(np.hstack([dom.c, dom.d]))
        ran_d_in_ran_c = rank_cd == rank_c
    return ConnectivityReport(
        compact_coefficients=True,
        polynomial_identity=True,
        full_space_closed_range=full,
        range_inclusion=full and ran_d_in_ran_c,
    )


def det_membership(dom, z, tol=DEFAULT_TOL):
    """Determinant witness f(z) = det(I + d^-1 c z); zero exactly on the singular set.

    Requires an invertible d block (the coefficients are normalised by d^-1
    on the left, which preserves the zero set of det(c z + d)).
    """
    d_inv = try_invert(dom.d, tol)
    if d_inv is None:
        raise SingularMatrixError("determinant witness requires an invertible d block")
    z = as_cmatrix(z, rows=dom.dim_k, cols=dom.dim_h)
    return complex(np.linalg.det(np.eye(dom.dim_h, dtype=complex) + d_inv @ dom.c @ z))


# ---------------------------------------------------------------------------
# Stock domain constructors


def whole_space_domain(space, tol=DEFAULT_TOL):
    """The whole space as a domain: c = 0, d = I, so every member qualifies."""
    c = np.zeros((space.dim_h, space.dim_k), dtype=complex)
    d = np.eye(space.dim_h, dtype=complex)
    z0 = np.zeros((space.dim_k, space.dim_h), dtype=complex)
    return Domain(space, c, d, z0, tol, label="whole-space")


def invertibles_domain(space, tol=DEFAULT_TOL):
    """Invertible elements of a power algebra: c = I, d = 0, base point I."""
    if not is_power_algebra(space, tol):
        raise SpaceClosureError("invertibles domain requires a power algebra")
    eye = np.eye(space.dim_h, dtype=complex)
    return Domain(space, eye, np.zeros_like(eye), eye, tol, label="invertibles")


def projection_domain(space, e, tol=DEFAULT_TOL):
    """Domain from a projection e in the space: c = e, d = I - e, base point e.

    Generalises the whole-space (e = 0) and invertibles (e = I) domains.
    """
    e = as_cmatrix(e, rows=space.dim_k, cols=space.dim_h)
    if not space.is_square:
        raise ShapeError("projection domain requires a square space")
    if operator_norm(e @ e - e) > tol.eq_tol * (1.0 + operator_norm(e)) ** 2:
        raise ValueError("e is not idempotent")
    if not space.contains(e, tol):
        raise SpaceClosureError("projection e does not belong to the space")
    eye = np.eye(space.dim_h, dtype=complex)
    return Domain(space, e, eye - e, e, tol, label="projection")


def hyperplane_complement_domain(c_vec, d, tol=DEFAULT_TOL):
    """Complement of the hyperplane (z, c) = -d in column-vector space.

    Vectors are embedded as n x 1 matrices; the coefficients are the row c*
    and the scalar d.
    """
    c_vec = as_cmatrix(np.reshape(np.asarray(c_vec, dtype=complex), (-1, 1)))
    n = c_vec.shape[0]
    if operator_norm(c_vec) == 0.0:
        raise ValueError("hyperplane normal must be nonzero")
    space = full_space(n, 1)
    c = dagger(c_vec)
    d_blk = np.array([[d]], dtype=complex)
    for z0 in (np.zeros((n, 1), dtype=complex), c_vec, -c_vec, 2 * c_vec):
        if abs((c @ z0)[0, 0] + d) > tol.inv_tol:
            return Domain(space, c, d_blk, z0, tol, label="hyperplane-complement")
    raise SingularMatrixError("could not find a base point off the hyperplane")


def rank_one_pairing_domain(space, x, y, d, tol=DEFAULT_TOL):
    """Domain where the pairing (Z x, y) avoids -d; coefficients c = x y*, d = d I.

    x (length dim_h) and y (length dim_k) must be unit vectors and d nonzero.
    The base point (1 - d) y x* must itself belong to the space.
    """
    x = as_cmatrix(np.reshape(np.asarray(x, dtype=complex), (-1, 1)), rows=space.dim_h)
    y = as_cmatrix(np.reshape(np.asarray(y, dtype=complex), (-1, 1)), rows=space.dim_k)
    if abs(np.linalg.norm(x) - 1.0) > 1e-8 or abs(np.linalg.norm(y) - 1.0) > 1e-8:
        raise ValueError("x and y must be unit vectors")
    if abs(d) <= tol.inv_tol:
        raise ValueError("d must be nonzero")
    c = x @ dagger(y)
    d_blk = d * np.eye(space.dim_h, dtype=complex)
    z0 = (1.0 - d) * (y @ dagger(x))
    if not space.contains(z0, tol):
        raise SpaceClosureError("base point (1 - d) y x* does not belong to the space")
    return Domain(space, c, d_blk, z0, tol, label="rank-one-pairing")


# ---------------------------------------------------------------------------
# Quadric model: vectors z with sum(z_i^2) != 0, realised in a spin algebra


_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _clifford_generators(n):
    """n pairwise anticommuting Hermitian matrices with square I, size 2^ceil(n/2)."""
    m = (n + 1) // 2
    gens = []
    for i in range(1, n + 1):
        k = (i + 1) // 2
        head = _SIGMA_X if i % 2 == 1 else _SIGMA_Y
        factors = [_SIGMA_Z] * (k - 1) + [head] + [np.eye(2, dtype=complex)] * (m - k)
        g = factors[0]
        for f in factors[1:]:
            g = np.kron(g, f)
        gens.append(g)
    return gens


@dataclass(frozen=True)
class QuadricModel:
    """The vectors z in C^n with (z, conj(z)) = sum z_i^2 nonzero, as an LFT domain.

    The linear embedding z -> sum z_i G_i into anticommuting generators G_i
    turns the quadric form into a determinant condition: the image matrix is
    invertible exactly when sum z_i^2 != 0. The resulting span is closed under
    the required quadratic products, so the generic domain machinery applies.
    """

    n: int
    generators: tuple
    domain: Domain = field(compare=False)

    @property
    def matrix_dim(self):
        return self.generators[0].shape[0]

    def embed(self, zvec):
        zvec = np.reshape(np.asarray(zvec, dtype=complex), (-1,))
        if zvec.shape != (self.n,):
            raise ShapeError(f"expected a vector of length {self.n}")
        return np.tensordot(zvec, np.stack(self.generators), axes=1)

    def unembed(self, z):
        z = as_cmatrix(z, rows=self.matrix_dim, cols=self.matrix_dim)
        return np.array([np.trace(g @ z) / self.matrix_dim for g in self.generators])

    def quadric_form(self, zvec):
        """(z, conj(z)) = sum z_i^2."""
        zvec = np.asarray(zvec, dtype=complex).reshape(-1)
        return complex(np.sum(zvec * zvec))

    def closed_form_symmetry(self, yvec, zvec):
        """The vector-level symmetry (2 (z.y) y - (y.y) z) / (z.z) for cross-checks."""
        yvec = np.asarray(yvec, dtype=complex).reshape(-1)
        zvec = np.asarray(zvec, dtype=complex).reshape(-1)
        zz = np.sum(zvec * zvec)
        if zz == 0:
            raise SingularMatrixError("z lies on the quadric; symmetry undefined")
        return (2.0 * np.sum(zvec * yvec) * yvec - np.sum(yvec * yvec) * zvec) / zz


def quadric_domain(n, tol=DEFAULT_TOL):
    """Build the QuadricModel for vectors of length n >= 2."""
    if n < 2:
        raise ValueError("quadric model needs n >= 2")
    gens = _clifford_generators(n)
    size = gens[0].shape[0]
    space = OperatorSpace(size, size, gens, label="quadric-span")
    eye = np.eye(size, dtype=complex)
    dom = Domain(space, eye, np.zeros_like(eye), gens[0], tol, label="quadric")
    return QuadricModel(n=n, generators=tuple(gens), domain=dom)
