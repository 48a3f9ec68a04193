"""Circular matrix domains and their linear automorphisms.

Four families live here: the Siegel-type domain I + Z1*Z1 < Z2*Z2 of stacked
matrices with its validated maps Z -> L Z U and the Cayley-type involution;
the exterior domain I < Z*Z inside a power algebra, with the inverse identity
of linear isometries; the Mobius automorphisms of the unit operator ball; and
the two transitive linear groups, one for the product-type stacked domain
Z1*Z1 < Z2*Z2 and one for the hyperbolic vector domain (Jz, z) < 0.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .exceptions import (
    HypothesisError,
    InternalCheckError,
    ShapeError,
    SingularMatrixError,
    SpaceClosureError,
    SpectrumError,
)
from .domains import LFTMap
from .linalg import DEFAULT_TOL, as_cmatrix, operator_norm, principal_sqrt, try_invert


# ---------------------------------------------------------------------------
# Siegel-type stacked domain


@dataclass(frozen=True)
class SiegelSpec:
    """Shape data for domains of stacked matrices [Z1; Z2].

    Members are (dim_k + dim_h) x dim_h with Z1 the top dim_k rows and Z2 the
    square bottom block; the signature matrix is J = diag(I_k, -I_h).
    """

    dim_k: int
    dim_h: int

    def __post_init__(self):
        if self.dim_k < 1 or self.dim_h < 1:
            raise ValueError("both block dimensions must be at least 1")

    @property
    def shape(self):
        return (self.dim_k + self.dim_h, self.dim_h)

    @property
    def j(self):
        return np.diag(
            np.concatenate([np.ones(self.dim_k), -np.ones(self.dim_h)])
        ).astype(complex)

    def split(self, z):
        z = as_cmatrix(z, rows=self.dim_k + self.dim_h, cols=self.dim_h)
        return z[: self.dim_k, :], z[self.dim_k :, :]

    def stack(self, z1, z2):
        z1 = as_cmatrix(z1, rows=self.dim_k, cols=self.dim_h)
        z2 = as_cmatrix(z2, rows=self.dim_h, cols=self.dim_h)
        return np.vstack([z1, z2])


def _min_eig_hermitian(m):
    return float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min())


def siegel_member(spec, z, tol=DEFAULT_TOL):
    """True iff Z2*Z2 - Z1*Z1 - I is positive definite (strict interior)."""
    z1, z2 = spec.split(z)
    gram = z2.conj().T @ z2 - z1.conj().T @ z1 - np.eye(spec.dim_h, dtype=complex)
    return _min_eig_hermitian(gram) > tol.eq_tol


def siegel_gram(spec, z):
    """I + Z*JZ; negative definite exactly on the Siegel domain."""
    z = as_cmatrix(z, rows=spec.dim_k + spec.dim_h, cols=spec.dim_h)
    return np.eye(spec.dim_h, dtype=complex) + z.conj().T @ spec.j @ z


@dataclass(frozen=True)
class SiegelLinearAuto:
    """A validated automorphism h(Z) = L Z U of the Siegel-type domain.

    L is J-unitary on the stacked space and U is unitary; the inverse is
    h^-1(Z) = L^-1 Z U*.
    """

    spec: SiegelSpec
    l: np.ndarray
    u: np.ndarray
    l_inv: np.ndarray = field(repr=False)

    def __call__(self, z):
        z = as_cmatrix(z, rows=self.spec.dim_k + self.spec.dim_h, cols=self.spec.dim_h)
        return self.l @ z @ self.u

    def inverse(self, z):
        z = as_cmatrix(z, rows=self.spec.dim_k + self.spec.dim_h, cols=self.spec.dim_h)
        return self.l_inv @ z @ self.u.conj().T


def siegel_linear_auto(spec, l, u, tol=DEFAULT_TOL):
    """Validate (L, U) and wrap them as a domain automorphism.

    Requires L*JL = J, U unitary, and L invertible.
    """
    n = spec.dim_k + spec.dim_h
    l = as_cmatrix(l, rows=n, cols=n)
    u = as_cmatrix(u, rows=spec.dim_h, cols=spec.dim_h)
    j = spec.j
    if operator_norm(l.conj().T @ j @ l - j) > tol.eq_tol * (1.0 + operator_norm(l)) ** 2:
        raise HypothesisError("L is not J-unitary: L*JL differs from J")
    if operator_norm(u.conj().T @ u - np.eye(spec.dim_h)) > tol.eq_tol:
        raise HypothesisError("U is not unitary")
    l_inv = try_invert(l, tol)
    if l_inv is None:
        raise SingularMatrixError("L must be invertible")
    return SiegelLinearAuto(spec=spec, l=l, u=u, l_inv=l_inv)


def siegel_invariant_residual(spec, auto, r):
    """Defect of the conserved quantity at the axis point [0; rI].

    For any validated map h, I + h(Z)*J h(Z) is unitarily equivalent to
    I + Z*JZ, which equals (1 - r^2) I at [0; rI]. The returned residual
    measures ||(I + h(Z_r)* J h(Z_r)) - (1 - r^2) I||; its smallness pins
    the radius r, which is why no automorphism moves one axis point to
    another with a different radius.
    """
    z_r = spec.stack(
        np.zeros((spec.dim_k, spec.dim_h), dtype=complex),
        r * np.eye(spec.dim_h, dtype=complex),
    )
    value = siegel_gram(spec, auto(z_r))
    expected = (1.0 - r * r) * np.eye(spec.dim_h, dtype=complex)
    return float(operator_norm(value - expected))


def cayley_map(spec, z, tol=DEFAULT_TOL):
    """The involution [Z1; Z2] -> [Z1 Z2^-1; Z2^-1] (its own inverse)."""
    z1, z2 = spec.split(z)
    z2_inv = try_invert(z2, tol)
    if z2_inv is None:
        raise SingularMatrixError("the bottom block Z2 must be invertible")
    return np.vstack([z1 @ z2_inv, z2_inv])


# ---------------------------------------------------------------------------
# Exterior domain I < Z*Z in a power algebra


def exterior_member(space, z, tol=DEFAULT_TOL):
    """True iff z lies in the space and its smallest singular value exceeds 1.

    Equivalent formulations: I < Z*Z, or Z invertible with ||Z^-1|| < 1.
    """
    if not space.is_square:
        raise ShapeError("exterior domain needs a square space")
    z = as_cmatrix(z, rows=space.dim_k, cols=space.dim_h)
    if not space.contains(z, tol):
        raise SpaceClosureError("z does not belong to the operator space")
    smin = float(np.linalg.svd(z, compute_uv=False).min())
    return smin > 1.0 + tol.eq_tol


class SpaceLinearMap:
    """A linear map of an operator space into itself, given on the basis."""

    def __init__(self, space, images, tol=DEFAULT_TOL):
        if len(images) != space.dim:
            raise ShapeError("need exactly one image per basis element")
        self.space = space
        self.images = [as_cmatrix(m, rows=space.dim_k, cols=space.dim_h) for m in images]
        for i, m in enumerate(self.images):
            if not space.contains(m, tol):
                raise SpaceClosureError(f"image of basis element {i} leaves the space")
        cols = [space.coordinates(m) for m in self.images]
        self.matrix = np.stack(cols, axis=1)
        if np.linalg.matrix_rank(self.matrix) < space.dim:
            raise SingularMatrixError("the linear map is not invertible on the space")

    def __call__(self, z):
        coords = self.space.coordinates(z)
        return self.space.lincomb(self.matrix @ coords)


@dataclass(frozen=True)
class IsometryReport:
    """Sampled evidence for the inverse identity of a linear isometry.

    isometry_defect: largest | ||L(z)|| - ||z|| | over the norm samples.
    unitary_defect: ||U*U - I|| for U = L(I).
    max_identity_residual: largest ||L(z^-1) - U L(z)^-1 U|| over invertible
    samples. trials counts the identity samples.
    """

    trials: int
    isometry_defect: float
    unitary_defect: float
    max_identity_residual: float
    u: np.ndarray


def _random_space_member(space, rng):
    coords = rng.uniform(-1.0, 1.0, space.dim) + 1j * rng.uniform(-1.0, 1.0, space.dim)
    return space.lincomb(coords)


def isometry_inverse_identity_check(space, images, rng, trials=100, tol=DEFAULT_TOL):
    """Check L(z^-1) = U L(z)^-1 U with U = L(I) on random invertible members.

    The isometry property is pre-checked on samples (a necessary condition
    only); a detected norm change rejects the map. U must be invertible.
    """
    if not space.is_square:
        raise ShapeError("the inverse identity needs a square space")
    lmap = images if isinstance(images, SpaceLinearMap) else SpaceLinearMap(space, images, tol)
    eye = np.eye(space.dim_h, dtype=complex)
    if not space.contains(eye, tol):
        raise SpaceClosureError("the space does not contain the identity")

    iso_defect = 0.0
    for _ in range(trials):
        z = _random_space_member(space, rng)
        defect = abs(operator_norm(lmap(z)) - operator_norm(z))
        iso_defect = max(iso_defect, defect)
        if defect > tol.eq_tol * (1.0 + operator_norm(z)):
            raise HypothesisError(
                f"the map changes a sampled norm by {defect:.3g}; not an isometry"
            )

    u = lmap(eye)
    if try_invert(u, tol) is None:
        raise SingularMatrixError("L(I) is singular")
    unitary_defect = float(operator_norm(u.conj().T @ u - eye))

    worst = 0.0
    done = 0
    attempts = 0
    while done < trials and attempts < 50 * trials:
        attempts += 1
        z = _random_space_member(space, rng)
        z_inv = try_invert(z, tol)
        if z_inv is None or operator_norm(z_inv) > 1e6:
            continue
        lhs = lmap(z_inv)
        rhs = u @ np.linalg.inv(lmap(z)) @ u
        worst = max(worst, float(operator_norm(lhs - rhs)))
        done += 1
    if done < trials:
        raise InternalCheckError("could not sample enough invertible members")
    return IsometryReport(
        trials=done,
        isometry_defect=float(iso_defect),
        unitary_defect=unitary_defect,
        max_identity_residual=worst,
        u=u,
    )


@dataclass(frozen=True)
class ExteriorAutoReport:
    """Sampled evidence that an isometry preserves the exterior domain."""

    trials: int
    preserved: int
    min_image_margin: float


def exterior_linear_auto_check(space, images, rng, trials=100, tol=DEFAULT_TOL):
    """Confirm on samples that members with I < Z*Z map to members again."""
    lmap = images if isinstance(images, SpaceLinearMap) else SpaceLinearMap(space, images, tol)
    preserved = 0
    margin = np.inf
    done = 0
    attempts = 0
    while done < trials and attempts < 50 * trials:
        attempts += 1
        z = _random_space_member(space, rng)
        smin = float(np.linalg.svd(z, compute_uv=False).min())
        if smin < 1e-8:
            continue
        target = rng.uniform(1.05, 2.0)
        z = (target / smin) * z
        if not exterior_member(space, z, tol):
            continue
        done += 1
        image = lmap(z)
        image_smin = float(np.linalg.svd(image, compute_uv=False).min())
        margin = min(margin, image_smin - 1.0)
        if exterior_member(space, image, tol):
            preserved += 1
    if done < trials:
        raise InternalCheckError("could not sample enough exterior members")
    return ExteriorAutoReport(trials=done, preserved=preserved, min_image_margin=float(margin))


# ---------------------------------------------------------------------------
# Mobius automorphisms of the unit ball


def mobius_map(b, tol=DEFAULT_TOL):
    """The ball automorphism taking 0 to b, as an LFT.

    Blocks: a = (I - b b*)^(-1/2), upper right b (I - b* b)^(-1/2),
    lower left (I - b* b)^(-1/2) b*, lower right (I - b* b)^(-1/2); the
    coefficient matrix is J-unitary for J = diag(I, -I). Requires ||b|| < 1.
    """
    b = as_cmatrix(b)
    if operator_norm(b) >= 1.0:
        raise HypothesisError(f"mobius parameter needs ||b|| < 1; got {operator_norm(b):.6g}")
    k, h = b.shape
    left = np.linalg.inv(principal_sqrt(np.eye(k, dtype=complex) - b @ b.conj().T, tol))
    right = np.linalg.inv(principal_sqrt(np.eye(h, dtype=complex) - b.conj().T @ b, tol))
    return LFTMap(left, b @ right, right @ b.conj().T, right)


def mobius_direct(b, z, tol=DEFAULT_TOL):
    """Evaluate (I - b b*)^(-1/2) (z + b)(I + b* z)^-1 (I - b* b)^(1/2).

    Kept as an evaluation route independent of the coefficient blocks.
    """
    b = as_cmatrix(b)
    z = as_cmatrix(z, rows=b.shape[0], cols=b.shape[1])
    k, h = b.shape
    den_inv = try_invert(np.eye(h, dtype=complex) + b.conj().T @ z, tol)
    if den_inv is None:
        raise SingularMatrixError("I + b* z is singular")
    left = np.linalg.inv(principal_sqrt(np.eye(k, dtype=complex) - b @ b.conj().T, tol))
    right = principal_sqrt(np.eye(h, dtype=complex) - b.conj().T @ b, tol)
    return left @ (z + b) @ den_inv @ right


def ball_signature(dim_k, dim_h):
    """J = diag(I_k, -I_h) on the coefficient space of ball automorphisms."""
    return np.diag(np.concatenate([np.ones(dim_k), -np.ones(dim_h)])).astype(complex)


# ---------------------------------------------------------------------------
# Product-type stacked domain and its transitive linear maps


def product_member(spec, z, tol=DEFAULT_TOL):
    """True iff Z2 is invertible and Z2*Z2 - Z1*Z1 is positive definite."""
    z1, z2 = spec.split(z)
    if try_invert(z2, tol) is None:
        return False
    gram = z2.conj().T @ z2 - z1.conj().T @ z1
    return _min_eig_hermitian(gram) > tol.eq_tol


def product_split(spec, z, tol=DEFAULT_TOL):
    """The pair (Z1 Z2^-1, Z2^-1): ball point and invertible operator."""
    z1, z2 = spec.split(z)
    z2_inv = try_invert(z2, tol)
    if z2_inv is None:
        raise SingularMatrixError("the bottom block Z2 must be invertible")
    return z1 @ z2_inv, z2_inv


@dataclass(frozen=True)
class ProductTransport:
    """The linear automorphism L(Z) = M Z R with L([0; I]) = W.

    M is the coefficient matrix of the ball automorphism at b = W1 W2^-1 and
    R = (I - b* b)^(1/2) W2; M is J-unitary, so L preserves the domain, and
    the inverse transport uses -b with R inverted.
    """

    spec: SiegelSpec
    w: np.ndarray
    b: np.ndarray
    m: np.ndarray
    r: np.ndarray
    m_inv: np.ndarray = field(repr=False)
    r_inv: np.ndarray = field(repr=False)

    def __call__(self, z):
        z = as_cmatrix(z, rows=self.spec.dim_k + self.spec.dim_h, cols=self.spec.dim_h)
        return self.m @ z @ self.r

    def inverse(self, z):
        z = as_cmatrix(z, rows=self.spec.dim_k + self.spec.dim_h, cols=self.spec.dim_h)
        return self.m_inv @ z @ self.r_inv


def product_transitive(spec, w, tol=DEFAULT_TOL):
    """Build the linear map carrying the axis point [0; I] to the member w."""
    if not product_member(spec, w, tol):
        raise HypothesisError("w is not a member of the product-type domain")
    w1, w2 = spec.split(w)
    b = w1 @ np.linalg.inv(w2)
    m = mobius_map(b, tol).coefficient_matrix()
    m_inv = mobius_map(-b, tol).coefficient_matrix()
    r = principal_sqrt(np.eye(spec.dim_h, dtype=complex) - b.conj().T @ b, tol) @ w2
    r_inv = np.linalg.inv(r)
    return ProductTransport(spec=spec, w=w, b=b, m=m, r=r, m_inv=m_inv, r_inv=r_inv)


# ---------------------------------------------------------------------------
# Hyperbolic vector domain (Jz, z) < 0


class HyperbolicSpec:
    """A Hermitian form J with +1 and -1 in its spectrum, plus frame data.

    The frame consists of unit eigenvectors e (eigenvalue +1) and
    f (eigenvalue -1) and an orthonormal basis of their orthocomplement K;
    the compression of J to K is the Hermitian block b. Eigenvectors may be
    supplied explicitly; otherwise the first matching eigenvectors of the
    eigendecomposition are used and recorded.
    """

    def __init__(self, j, eigvec_plus=None, eigvec_minus=None, tol=DEFAULT_TOL):
        j = as_cmatrix(j)
        n = j.shape[0]
        if j.shape != (n, n) or n < 2:
            raise ShapeError("J must be square of size at least 2")
        if operator_norm(j - j.conj().T) > tol.eq_tol * (1.0 + operator_norm(j)):
            raise SpectrumError("J must be Hermitian")
        self.j = 0.5 * (j + j.conj().T)
        self.dim = n

        eigvals, eigvecs = np.linalg.eigh(self.j)
        self.e = self._resolve_eigvec(eigvec_plus, eigvals, eigvecs, 1.0)
        self.f = self._resolve_eigvec(eigvec_minus, eigvals, eigvecs, -1.0)
        scale = 1.0 + operator_norm(self.j)
        if np.linalg.norm(self.j @ self.e - self.e) > 1e-8 * scale:
            raise SpectrumError("e must be a unit eigenvector of J for eigenvalue +1")
        if np.linalg.norm(self.j @ self.f + self.f) > 1e-8 * scale:
            raise SpectrumError("f must be a unit eigenvector of J for eigenvalue -1")
        if abs(np.vdot(self.e, self.f)) > 1e-8:
            raise SpectrumError("eigenvectors for +1 and -1 must be orthogonal")

        pair = np.stack([self.e.conj(), self.f.conj()])
        self.k_basis = scipy.linalg.null_space(pair)
        if self.k_basis.shape[1] != n - 2:
            raise InternalCheckError("orthocomplement basis has the wrong dimension")
        self.b = self.k_basis.conj().T @ self.j @ self.k_basis
        self.frame = np.column_stack([self.e, self.k_basis, self.f])
        coords_j = self.frame.conj().T @ self.j @ self.frame
        model = np.zeros((n, n), dtype=complex)
        model[0, 0] = 1.0
        model[1 : n - 1, 1 : n - 1] = self.b
        model[n - 1, n - 1] = -1.0
        if operator_norm(coords_j - model) > 1e-8 * (1.0 + operator_norm(self.j)):
            raise InternalCheckError("J does not block-diagonalize in the chosen frame")

    @staticmethod
    def _resolve_eigvec(given, eigvals, eigvecs, target):
        if given is not None:
            v = np.asarray(given, dtype=complex).reshape(-1)
            norm = np.linalg.norm(v)
            if norm == 0:
                raise ValueError("eigenvector must be nonzero")
            return v / norm
        hits = np.nonzero(np.abs(eigvals - target) <= 1e-8)[0]
        if hits.size == 0:
            raise SpectrumError(f"J has no eigenvalue {target:+.0f} within 1e-8")
        return eigvecs[:, hits[0]]

    def validate_frame(self, tol=DEFAULT_TOL):
        """Residuals of J e = e and J f = -f (useful when vectors were supplied)."""
        return (
            float(np.linalg.norm(self.j @ self.e - self.e)),
            float(np.linalg.norm(self.j @ self.f + self.f)),
        )

    def form(self, z):
        """(Jz, z); real for Hermitian J, negative inside the domain."""
        z = np.asarray(z, dtype=complex).reshape(-1)
        return complex(np.vdot(z, self.j @ z))

    def coordinates(self, z):
        """(alpha, w, beta) coordinates of z in the (e, K, f) frame."""
        z = np.asarray(z, dtype=complex).reshape(-1)
        coords = self.frame.conj().T @ z
        return coords[0], coords[1 : self.dim - 1], coords[self.dim - 1]


def hyperbolic_member(spec, z, tol=DEFAULT_TOL):
    return spec.form(z).real < -tol.eq_tol


def _l_w_matrix(spec, w):
    """The J-unitary shear fixing the form, parameterized by w in K coords."""
    n = spec.dim
    nk = n - 2
    w = np.asarray(w, dtype=complex).reshape(nk)
    bw = spec.b @ w if nk else w
    q = complex(np.vdot(w, bw)) if nk else 0.0
    l = np.zeros((n, n), dtype=complex)
    l[0, 0] = 1.0 - q / 2.0
    l[n - 1, n - 1] = 1.0 + q / 2.0
    l[0, n - 1] = -q / 2.0
    l[n - 1, 0] = q / 2.0
    if nk:
        l[0, 1 : n - 1] = -(bw.conj())
        l[n - 1, 1 : n - 1] = bw.conj()
        l[1 : n - 1, 0] = w
        l[1 : n - 1, n - 1] = w
        l[1 : n - 1, 1 : n - 1] = np.eye(nk, dtype=complex)
    return l


@dataclass(frozen=True)
class HyperbolicTransport:
    """A linear map with L f = z1 and certificate L*JL = c J, c > 0.

    `degenerate` marks inputs with no e or f component, which are reached by
    shearing into the generic branch first and undoing the shear afterwards.
    """

    spec: object
    z1: np.ndarray
    matrix: np.ndarray
    c: float
    degenerate: bool

    def __call__(self, z):
        z = np.asarray(z, dtype=complex).reshape(-1)
        return self.matrix @ z

    def endpoint_residual(self):
        return float(np.linalg.norm(self.matrix @ self.spec.f - self.z1))

    def certificate_residual(self):
        lhs = self.matrix.conj().T @ self.spec.j @ self.matrix
        return float(operator_norm(lhs - self.c * self.spec.j))


def _hyperbolic_branch_a(spec, coords):
    alpha, w1, beta = coords
    n = spec.dim
    big_a = abs(alpha) + abs(beta)
    bw1 = spec.b @ w1 if n > 2 else w1
    q1 = complex(np.vdot(w1, bw1)).real if n > 2 else 0.0
    a = abs(alpha) + q1 / (2.0 * big_a)
    b = abs(beta) - q1 / (2.0 * big_a)
    if not b * b - a * a > 0:
        raise InternalCheckError("conformal factor b^2 - a^2 must be positive inside the domain")
    l_w = _l_w_matrix(spec, w1 / big_a)
    l_1 = np.zeros((n, n), dtype=complex)
    l_1[0, 0] = b
    l_1[0, n - 1] = a
    l_1[n - 1, 0] = a
    l_1[n - 1, n - 1] = b
    if n > 2:
        l_1[1 : n - 1, 1 : n - 1] = np.sqrt(b * b - a * a) * np.eye(n - 2, dtype=complex)
    phases = np.ones(n, dtype=complex)
    phases[0] = alpha / abs(alpha) if abs(alpha) > 0 else 1.0
    phases[n - 1] = beta / abs(beta) if abs(beta) > 0 else 1.0
    l_2 = np.diag(phases)
    return l_2 @ l_w @ l_1, b * b - a * a


def hyperbolic_transitive(spec, z1, tol=DEFAULT_TOL):
    """Build a linear automorphism of {(Jz, z) < 0} taking f to z1.

    The generic branch composes a diagonal phase map, a shear, and a
    conformal stretch; when z1 has no component along e or f, a preliminary
    shear moves it into the generic branch (one recursion, then undone).
    """
    z1 = np.asarray(z1, dtype=complex).reshape(-1)
    if z1.shape != (spec.dim,):
        raise ShapeError(f"expected a vector of length {spec.dim}")
    if not hyperbolic_member(spec, z1, tol):
        raise HypothesisError("z1 is not inside the domain: (J z1, z1) must be negative")
    alpha, w1, beta = spec.coordinates(z1)
    degenerate = abs(alpha) + abs(beta) <= 1e-8 * (1.0 + np.linalg.norm(z1))
    if degenerate:
        shear = _l_w_matrix(spec, w1)
        shear_inv = _l_w_matrix(spec, -w1)
        pushed = shear @ (spec.frame.conj().T @ z1)
        inner, c = _hyperbolic_branch_a(spec, (pushed[0], pushed[1 : spec.dim - 1], pushed[-1]))
        coords_matrix = shear_inv @ inner
    else:
        coords_matrix, c = _hyperbolic_branch_a(spec, (alpha, w1, beta))
    matrix = spec.frame @ coords_matrix @ spec.frame.conj().T
    transport = HyperbolicTransport(
        spec=spec, z1=z1, matrix=matrix, c=float(c), degenerate=bool(degenerate)
    )
    if transport.endpoint_residual() > 1e-6 * (1.0 + np.linalg.norm(z1)):
        raise InternalCheckError("transport failed to reach z1")
    return transport
