"""Automorphisms of LFT domains.

Covers the symmetry at a point, the midpoint construction that realizes any
small displacement as a symmetry, chains of symmetries joining two domain
points, the affine maps arising from pairs of symmetries, the point-swapping
involutions, the Potapov-Ginzburg projection transform, the entire curve
through two domain points, and affine equivalences between domains sharing a
common c coefficient up to a right factor.
"""

from dataclasses import dataclass

import numpy as np

from .domains import Domain, LFTMap, Verdict, lft_apply
from .exceptions import (
    HypothesisError,
    InternalCheckError,
    PathLeavesDomainError,
    ShapeError,
    SingularMatrixError,
    SpaceClosureError,
    StepBoundError,
)
from .linalg import DEFAULT_TOL, as_cmatrix, operator_norm, principal_sqrt, try_invert
from .spaces import is_power_algebra

CHAIN_STEP_CAP = 2**14


def _require_member(dom, z, tol, what):
    z = as_cmatrix(z, rows=dom.dim_k, cols=dom.dim_h)
    verdict = dom.membership(z, tol)
    if verdict is Verdict.NOT_IN_SPACE:
        raise SpaceClosureError(f"{what} does not belong to the operator space")
    if verdict is Verdict.SINGULAR:
        raise SingularMatrixError(f"c z + d is singular at {what}")
    return z


@dataclass(frozen=True)
class AffineMap:
    """The map z -> offset + left (z - base) right, stored in factored form.

    Keeping the two linear factors and the translation explicit makes
    affinity and invertibility structural facts rather than properties to
    be inferred numerically.
    """

    base: np.ndarray
    offset: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        base = as_cmatrix(self.base)
        k, h = base.shape
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "offset", as_cmatrix(self.offset, rows=k, cols=h))
        object.__setattr__(self, "left", as_cmatrix(self.left, rows=k, cols=k))
        object.__setattr__(self, "right", as_cmatrix(self.right, rows=h, cols=h))

    @classmethod
    def identity(cls, dim_k, dim_h):
        zero = np.zeros((dim_k, dim_h), dtype=complex)
        return cls(zero, zero, np.eye(dim_k, dtype=complex), np.eye(dim_h, dtype=complex))

    def __call__(self, z):
        z = as_cmatrix(z, rows=self.base.shape[0], cols=self.base.shape[1])
        return self.offset + self.left @ (z - self.base) @ self.right

    def compose(self, inner):
        """The map self(inner(z)) as a single affine record."""
        offset = self.offset + self.left @ (inner.offset - self.base) @ self.right
        return AffineMap(
            base=inner.base,
            offset=offset,
            left=self.left @ inner.left,
            right=inner.right @ self.right,
        )


# ---------------------------------------------------------------------------
# Symmetries


def symmetry_map(dom, y, tol=DEFAULT_TOL):
    """The involutive automorphism fixing y, as an LFT.

    Blocks are [[-(I - y x), 2 y - y x y], [x, I - x y]] with x the kernel
    (c y + d)^-1 c; the assembled coefficient matrix squares to the identity.
    """
    y = _require_member(dom, y, tol, "the symmetry point y")
    x = dom.kernel_at(y, tol)
    eye_k = np.eye(dom.dim_k, dtype=complex)
    eye_h = np.eye(dom.dim_h, dtype=complex)
    yx = y @ x
    return LFTMap(-(eye_k - yx), 2.0 * y - yx @ y, x, eye_h - x @ y)


def symmetry_coefficient_matrix(dom, y, tol=DEFAULT_TOL):
    return symmetry_map(dom, y, tol).coefficient_matrix()


def symmetry_direct(dom, y, z, tol=DEFAULT_TOL):
    """Evaluate the symmetry at y on z from its defining expression.

    Computes y - (z - y)(c z + d)^-1 (c y + d) without assembling the
    coefficient matrix; kept as an independent evaluation route.
    """
    y = as_cmatrix(y, rows=dom.dim_k, cols=dom.dim_h)
    z = as_cmatrix(z, rows=dom.dim_k, cols=dom.dim_h)
    den_inv = try_invert(dom.denominator(z), tol)
    if den_inv is None:
        raise SingularMatrixError("c z + d is singular at z")
    return y - (z - y) @ den_inv @ dom.denominator(y)


def fixed_point_derivative(dom, y, direction, step=1e-4, tol=DEFAULT_TOL):
    """Central difference of the symmetry at y, at its fixed point.

    Returns (U(y + t v) - U(y - t v)) / (2 t) with t = step; the exact
    derivative is -v for every direction v in the space.
    """
    if step < 1e-8:
        raise ValueError("finite-difference step below 1e-8 is dominated by roundoff")
    direction = as_cmatrix(direction, rows=dom.dim_k, cols=dom.dim_h)
    if not dom.space.contains(direction, tol):
        raise SpaceClosureError("direction does not belong to the operator space")
    u = symmetry_map(dom, y, tol)
    return (lft_apply(u, y + step * direction, tol) - lft_apply(u, y - step * direction, tol)) / (
        2.0 * step
    )


def find_midpoint(dom, z, w, tol=DEFAULT_TOL):
    """The point y whose symmetry sends z to w.

    Valid when r = w - z satisfies ||x r|| < 1 for x the kernel at z; then
    y = z + r (I + q)^-1 with q the principal square root of I + x r. The
    midpoint is guaranteed to land in the domain; a numerical violation is
    an internal error, not bad input.
    """
    z = _require_member(dom, z, tol, "the start point z")
    w = _require_member(dom, w, tol, "the end point w")
    x = dom.kernel_at(z, tol)
    r = w - z
    xr = x @ r
    bound = operator_norm(xr)
    if bound >= 1.0:
        raise StepBoundError(
            f"step bound ||x (w - z)|| < 1 fails: got {bound:.6g}; subdivide the displacement"
        )
    q = principal_sqrt(np.eye(dom.dim_h, dtype=complex) + xr, tol)
    den_inv = try_invert(np.eye(dom.dim_h, dtype=complex) + q, tol)
    if den_inv is None:
        raise InternalCheckError("I + q is singular although ||x r|| < 1")
    y = z + r @ den_inv
    if not dom.is_member(y, tol):
        raise InternalCheckError("midpoint fell outside the domain; ill conditioned input")
    reached = symmetry_direct(dom, y, z, tol)
    if operator_norm(reached - w) > 1e-6 * (1.0 + operator_norm(w)):
        raise InternalCheckError("midpoint symmetry failed to reproduce the target point")
    return y


# ---------------------------------------------------------------------------
# Transitive chains


@dataclass(frozen=True)
class AutomorphismChain:
    """A sequence of symmetries whose composition carries source to target.

    factors[i] maps waypoints[i] to waypoints[i+1]; midpoints[i] is the
    fixed point of factors[i]. The factor count is even, so consecutive
    pairs fold into affine maps; `affine` is the full folded composition.
    step_norms[i] is ||x_i (waypoints[i+1] - waypoints[i])||, each below the
    subdivision margin. residual is the defect of the composite at source.
    """

    source: np.ndarray
    target: np.ndarray
    waypoints: tuple
    midpoints: tuple
    factors: tuple
    affine: AffineMap
    step_norms: tuple
    residual: float

    @property
    def factor_count(self):
        return len(self.factors)

    def apply(self, z, tol=DEFAULT_TOL):
        """Apply the factors in order (numerically preferable to one big LFT)."""
        out = as_cmatrix(z)
        for f in self.factors:
            out = lft_apply(f, out, tol)
        return out

    def as_lft(self):
        """Compose all coefficient matrices into a single LFTMap."""
        total = LFTMap.identity(*self.waypoints[0].shape)
        for f in self.factors:
            total = f.compose(total)
        return total


def _segment_points(a, b, n):
    return [a + (j / n) * (b - a) for j in range(1, n + 1)]


def _refine_polyline(dom, points, margin, max_steps, tol, user_path):
    """Subdivide each polyline segment until every step obeys the bound.

    Returns the refined waypoint list (including both endpoints) and the
    per-step norms ||x (next - prev)||.
    """
    waypoints = [points[0]]
    for seg in range(len(points) - 1):
        a, b = points[seg], points[seg + 1]
        n = 1
        while True:
            candidates = _segment_points(a, b, n)
            ok = True
            norms = []
            prev = a
            for idx, p in enumerate(candidates):
                verdict = dom.membership(p, tol)
                if verdict is not Verdict.MEMBER:
                    where = len(waypoints) + idx
                    hint = (
                        "supply an explicit path avoiding the singular set"
                        if not user_path
                        else "refine the supplied path away from the singular set"
                    )
                    raise PathLeavesDomainError(
                        f"waypoint {where} of the subdivided path is not a domain member "
                        f"({verdict.value}); {hint}",
                        index=where,
                    )
                x = dom.kernel_at(prev, tol)
                step = operator_norm(x @ (p - prev))
                norms.append(step)
                if step > margin:
                    ok = False
                    break
                prev = p
            if ok:
                waypoints.extend(candidates)
                break
            n *= 2
            if n > max_steps:
                raise StepBoundError(
                    "cannot satisfy the step bound ||(c z + d)^-1 c (z' - z)|| < 1 "
                    f"within {max_steps} subdivisions; the path runs too close to the "
                    "singular set"
                )
    return waypoints


def transitive_chain(dom, target, path=None, margin=0.9, max_steps=CHAIN_STEP_CAP, tol=DEFAULT_TOL):
    """Build a chain of symmetries mapping the domain base point to target.

    The default route is the straight segment; a path (sequence of domain
    members from base point to target) overrides it. Each segment is
    subdivided by doubling until every step satisfies
    ||(c z + d)^-1 c (z' - z)|| <= margin, one symmetry factor per step via
    the midpoint construction. An odd factor count is fixed by prepending
    the symmetry at the base point, which the composite result absorbs.
    """
    if not 0.0 < margin < 1.0:
        raise ValueError("margin must lie strictly between 0 and 1")
    source = dom.z0
    target = _require_member(dom, target, tol, "the chain target")
    if path is None:
        points = [source, target]
        user_path = False
    else:
        points = [as_cmatrix(p, rows=dom.dim_k, cols=dom.dim_h) for p in path]
        if len(points) < 2:
            raise ValueError("a path needs at least its two endpoints")
        if operator_norm(points[0] - source) > tol.eq_tol * (1.0 + operator_norm(source)):
            raise ValueError("path must start at the domain base point")
        if operator_norm(points[-1] - target) > tol.eq_tol * (1.0 + operator_norm(target)):
            raise ValueError("path must end at the target")
        for i, p in enumerate(points):
            if not dom.is_member(p, tol):
                raise PathLeavesDomainError(
                    f"supplied path point {i} is not a domain member", index=i
                )
        user_path = True

    waypoints = _refine_polyline(dom, points, margin, max_steps, tol, user_path)
    if len(waypoints) % 2 == 0:
        # odd number of steps; duplicate the source so the factor count is even
        waypoints = [source] + waypoints

    midpoints = []
    factors = []
    step_norms = []
    for i in range(len(waypoints) - 1):
        y = find_midpoint(dom, waypoints[i], waypoints[i + 1], tol)
        midpoints.append(y)
        factors.append(symmetry_map(dom, y, tol))
        x = dom.kernel_at(waypoints[i], tol)
        step_norms.append(operator_norm(x @ (waypoints[i + 1] - waypoints[i])))

    affine = AffineMap.identity(dom.dim_k, dom.dim_h)
    for i in range(0, len(factors), 2):
        pair = compose_symmetries_affine(dom, midpoints[i + 1], midpoints[i], tol)
        affine = pair.compose(affine)
    # rebase so the record is anchored at the source
    affine = AffineMap(
        base=source, offset=affine(source), left=affine.left, right=affine.right
    )

    reached = source
    for f in factors:
        reached = lft_apply(f, reached, tol)
    residual = float(operator_norm(reached - target))

    return AutomorphismChain(
        source=source,
        target=target,
        waypoints=tuple(waypoints),
        midpoints=tuple(midpoints),
        factors=tuple(factors),
        affine=affine,
        step_norms=tuple(step_norms),
        residual=residual,
    )


# ---------------------------------------------------------------------------
# Affine maps from symmetry pairs and the base-point transport


def compose_symmetries_affine(dom, w, y, tol=DEFAULT_TOL):
    """The composition (symmetry at w) after (symmetry at y), folded to affine form.

    Equals U_w(U_y(z)) pointwise; the c block of the product coefficient
    matrix vanishes, leaving offset U_w(y) with linear factors
    I + (w - y) x and I + x (w - y), x the kernel at y.
    """
    w = _require_member(dom, w, tol, "the outer symmetry point w")
    y = _require_member(dom, y, tol, "the inner symmetry point y")
    x = dom.kernel_at(y, tol)
    d = w - y
    offset = symmetry_direct(dom, w, y, tol)
    return AffineMap(
        base=y,
        offset=offset,
        left=np.eye(dom.dim_k, dtype=complex) + d @ x,
        right=np.eye(dom.dim_h, dtype=complex) + x @ d,
    )


def affine_transport(dom, w0, tol=DEFAULT_TOL):
    """The affine automorphism carrying the base point to w0.

    phi(z) = w0 + (I + (w0 - z0) x0)^(1/2) (z - z0) (I + x0 (w0 - z0))^(1/2),
    defined when ||x0 (w0 - z0)|| < 1.
    """
    w0 = _require_member(dom, w0, tol, "the transport target w0")
    a = w0 - dom.z0
    bound = operator_norm(dom.x0 @ a)
    if bound >= 1.0:
        raise StepBoundError(
            f"transport requires ||x0 (w0 - z0)|| < 1; got {bound:.6g}"
        )
    left = principal_sqrt(np.eye(dom.dim_k, dtype=complex) + a @ dom.x0, tol)
    right = principal_sqrt(np.eye(dom.dim_h, dtype=complex) + dom.x0 @ a, tol)
    return AffineMap(base=dom.z0, offset=w0, left=left, right=right)


def affine_transport_identity_residual(dom, phi, z, tol=DEFAULT_TOL):
    """Residual of I + x0 (phi(z) - z0) = r^(1/2) (I + x0 (z - z0)) r^(1/2).

    Here r^(1/2) is the right factor of the transport record; a small value
    certifies that phi preserves the domain.
    """
    z = as_cmatrix(z, rows=dom.dim_k, cols=dom.dim_h)
    eye = np.eye(dom.dim_h, dtype=complex)
    lhs = eye + dom.x0 @ (phi(z) - dom.z0)
    rhs = phi.right @ (eye + dom.x0 @ (z - dom.z0)) @ phi.right
    return float(operator_norm(lhs - rhs))


# ---------------------------------------------------------------------------
# Point-swapping involutions


@dataclass(frozen=True)
class SwapInvolution:
    """The involutive automorphism exchanging the base point z0 with w0.

    v(z) = z0 - gl (z - z0 - a) (I + x0 (z - z0))^-1 gr with a = w0 - z0,
    gl = (I + a x0)^(-1/2) and gr = (I + x0 a)^(1/2). Satisfies v(v(z)) = z,
    and for w0 = z0 it reduces to the symmetry at z0.
    """

    z0: np.ndarray
    w0: np.ndarray
    x0: np.ndarray
    gl: np.ndarray
    gr: np.ndarray

    def __call__(self, z, tol=DEFAULT_TOL):
        z = as_cmatrix(z, rows=self.z0.shape[0], cols=self.z0.shape[1])
        eye = np.eye(self.z0.shape[1], dtype=complex)
        den_inv = try_invert(eye + self.x0 @ (z - self.z0), tol)
        if den_inv is None:
            raise SingularMatrixError("z is outside the domain of the involution")
        a = self.w0 - self.z0
        return self.z0 - self.gl @ (z - self.z0 - a) @ den_inv @ self.gr

    def as_lft(self):
        """The same map as explicit LFT blocks (independent evaluation route)."""
        k, h = self.z0.shape
        gr_inv = np.linalg.inv(self.gr)
        c = gr_inv @ self.x0
        d = gr_inv @ (np.eye(h, dtype=complex) - self.x0 @ self.z0)
        a_disp = self.w0 - self.z0
        a_blk = self.z0 @ gr_inv @ self.x0 - self.gl
        b_blk = self.z0 @ d + self.gl @ (self.z0 + a_disp)
        return LFTMap(a_blk, b_blk, c, d)


def swap_involution(dom, w0, tol=DEFAULT_TOL):
    """Build the involution exchanging the base point with w0.

    Requires ||x0 (w0 - z0)|| < 1 so both square roots exist on the
    principal branch.
    """
    w0 = _require_member(dom, w0, tol, "the swap target w0")
    a = w0 - dom.z0
    bound = operator_norm(dom.x0 @ a)
    if bound >= 1.0:
        raise StepBoundError(
            f"involution requires ||x0 (w0 - z0)|| < 1; got {bound:.6g}"
        )
    sl = principal_sqrt(np.eye(dom.dim_k, dtype=complex) + a @ dom.x0, tol)
    gl = try_invert(sl, tol)
    if gl is None:
        raise SingularMatrixError("I + (w0 - z0) x0 has no invertible square root")
    gr = principal_sqrt(np.eye(dom.dim_h, dtype=complex) + dom.x0 @ a, tol)
    return SwapInvolution(z0=dom.z0, w0=w0, x0=dom.x0, gl=gl, gr=gr)


# ---------------------------------------------------------------------------
# Potapov-Ginzburg transform


def signature_from_projection(e):
    """J = I - 2e; an involution (J^2 = I) whenever e is idempotent."""
    e = as_cmatrix(e)
    if e.shape[0] != e.shape[1]:
        raise ShapeError("projection must be square")
    return np.eye(e.shape[0], dtype=complex) - 2.0 * e


def form_margin(z, j):
    """Smallest eigenvalue of j - z* j z; positive inside the j-contractive set."""
    z = as_cmatrix(z)
    j = as_cmatrix(j, rows=z.shape[0], cols=z.shape[0])
    gram = j - z.conj().T @ j @ z
    return float(np.linalg.eigvalsh(0.5 * (gram + gram.conj().T)).min())


def ball_margin(z):
    """1 - ||z||; positive inside the open unit ball."""
    return float(1.0 - operator_norm(as_cmatrix(z)))


def potapov_ginzburg_map(e, tol=DEFAULT_TOL):
    """The involutive LFT z -> ((e - I) z + e)(e z + I - e)^-1 of a projection e.

    Exchanges the j-contractive set {z : z* j z < j}, j = I - 2e, with the
    open unit norm ball, on the set where the denominator stays invertible.
    """
    e = as_cmatrix(e)
    if e.shape[0] != e.shape[1]:
        raise ShapeError("projection must be square")
    scale = (1.0 + operator_norm(e)) ** 2
    if operator_norm(e @ e - e) > tol.eq_tol * scale:
        raise ValueError("e is not idempotent")
    eye = np.eye(e.shape[0], dtype=complex)
    return LFTMap(e - eye, e, e, eye - e)


# ---------------------------------------------------------------------------
# The entire curve through two domain points


@dataclass(frozen=True)
class LiouvilleCurve:
    """An entire curve f with f(0) = z0, f(1) = z, staying inside the domain.

    f(lam) = z0 + (z - z0) sum_{n>=1} binom(lam, n) w^(n-1) with
    w = x0 (z - z0); the normalized denominator along the curve equals the
    binomial series (I + w)^lam, which is invertible for every lam.
    """

    z0: np.ndarray
    z: np.ndarray
    w: np.ndarray
    den0: np.ndarray
    c: np.ndarray
    d: np.ndarray
    tol: object

    def __call__(self, lam):
        from .linalg import binomial_series_shifted

        s = binomial_series_shifted(lam, self.w, self.tol)
        return self.z0 + (self.z - self.z0) @ s

    def series_factor(self, lam):
        """b(lam) = (I + w)^lam as the full binomial series."""
        from .linalg import binomial_series

        return binomial_series(lam, self.w, self.tol)

    def identity_residual(self, lam):
        """Residual of (c z0 + d)^-1 (c f(lam) + d) = b(lam)."""
        f = self(lam)
        lhs = np.linalg.solve(self.den0, self.c @ f + self.d)
        return float(operator_norm(lhs - self.series_factor(lam)))


def liouville_curve(dom, z, tol=DEFAULT_TOL):
    """Construct the entire curve joining the base point to z.

    Requires ||x0 (z - z0)|| < 1 for the series to converge.
    """
    z = _require_member(dom, z, tol, "the curve endpoint z")
    w = dom.x0 @ (z - dom.z0)
    bound = operator_norm(w)
    if bound >= 1.0:
        raise StepBoundError(f"curve requires ||x0 (z - z0)|| < 1; got {bound:.6g}")
    return LiouvilleCurve(
        z0=dom.z0, z=z, w=w, den0=dom.denominator(dom.z0), c=dom.c, d=dom.d, tol=tol
    )


# ---------------------------------------------------------------------------
# Affine equivalence of two domains with c2 = c1 r


@dataclass(frozen=True)
class AffineEquivalence:
    """An affine bijection phi between two domains with c2 = c1 r.

    phi(z) = z2 + r^-1 (z - z1)(c1 z1 + d1)^-1 (c2 z2 + d2); the denominator
    identity c2 phi(z) + d2 = (c1 z + d1)(c1 z1 + d1)^-1 (c2 z2 + d2)
    certifies that phi carries the first domain onto the second.
    """

    phi: AffineMap
    r: np.ndarray
    dom1: Domain
    dom2: Domain

    def __call__(self, z):
        return self.phi(z)

    def certificate_residual(self, z):
        z = as_cmatrix(z, rows=self.dom1.dim_k, cols=self.dom1.dim_h)
        lhs = self.dom2.denominator(self.phi(z))
        mid = np.linalg.solve(
            self.dom1.denominator(self.phi.base), self.dom2.denominator(self.phi.offset)
        )
        rhs = self.dom1.denominator(z) @ mid
        return float(operator_norm(lhs - rhs))


def affine_equivalence(dom1, dom2, r, z1, z2, tol=DEFAULT_TOL):
    """Affine map between two domains whose c blocks differ by a right factor.

    Both domains must live on the same space, which must be full or a power
    algebra containing all four coefficient blocks; r must be invertible
    with c2 = c1 r; z1 and z2 are members of their respective domains and
    phi(z1) = z2.
    """
    if dom1.space.shape != dom2.space.shape:
        raise ShapeError("domains live on different matrix shapes")
    same = all(dom2.space.contains(b, tol) for b in dom1.space.basis) and all(
        dom1.space.contains(b, tol) for b in dom2.space.basis
    )
    if not same:
        raise HypothesisError("domains must share one operator space")
    space = dom1.space
    if not space.is_full:
        if not (space.is_square and is_power_algebra(space, tol)):
            raise HypothesisError(
                "equivalence needs a full space or a power algebra with the coefficients in it"
            )
        for blk, name in (
            (dom1.c, "c1"),
            (dom1.d, "d1"),
            (dom2.c, "c2"),
            (dom2.d, "d2"),
        ):
            if not space.contains(blk, tol):
                raise HypothesisError(f"coefficient {name} is outside the power algebra")
    r = as_cmatrix(r, rows=dom1.dim_k, cols=dom1.dim_k)
    r_inv = try_invert(r, tol)
    if r_inv is None:
        raise SingularMatrixError("r must be invertible")
    defect = operator_norm(dom2.c - dom1.c @ r)
    if defect > tol.eq_tol * (1.0 + operator_norm(dom2.c)):
        raise HypothesisError(f"c2 = c1 r fails with defect {defect:.3g}")
    z1 = _require_member(dom1, z1, tol, "z1")
    z2 = _require_member(dom2, z2, tol, "z2")
    right = np.linalg.solve(dom1.denominator(z1), dom2.denominator(z2))
    phi = AffineMap(base=z1, offset=z2, left=r_inv, right=right)
    return AffineEquivalence(phi=phi, r=r, dom1=dom1, dom2=dom2)
