"""Seeded verification suites over every module's invariants.

Each suite draws from its own generator seeded by (seed, suite index), runs a
fixed number of randomized checks, and reports the worst residual it saw
together with the identity it checked. The command line front end renders the
rows; callers that want programmatic access use run_verify directly.
"""

import time
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import LftdomError, PathLeavesDomainError, StepBoundError
from .linalg import DEFAULT_TOL, Tolerance, operator_norm, try_invert, binomial_series
from .spaces import full_space
from .domains import (
    Domain,
    Verdict,
    connectivity_class,
    det_membership,
    hyperplane_complement_domain,
    invertibles_domain,
    lft_apply,
    projection_domain,
    quadric_domain,
    rank_one_pairing_domain,
    whole_space_domain,
)
from .automorphisms import (
    affine_equivalence,
    affine_transport,
    affine_transport_identity_residual,
    ball_margin,
    compose_symmetries_affine,
    find_midpoint,
    fixed_point_derivative,
    form_margin,
    liouville_curve,
    potapov_ginzburg_map,
    signature_from_projection,
    swap_involution,
    symmetry_direct,
    symmetry_map,
    transitive_chain,
)
from .circular import (
    HyperbolicSpec,
    SiegelSpec,
    cayley_map,
    exterior_linear_auto_check,
    hyperbolic_member,
    hyperbolic_transitive,
    isometry_inverse_identity_check,
    mobius_direct,
    mobius_map,
    product_member,
    product_split,
    product_transitive,
    siegel_invariant_residual,
    siegel_linear_auto,
    siegel_member,
)
from . import sampling as samp


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by every suite: seed, work volume, shapes, tolerances."""

    seed: int = 0
    trials: int = 50
    dim_k: int = 2
    dim_h: int = 2
    tol: Tolerance = DEFAULT_TOL

    def __post_init__(self):
        if not (isinstance(self.seed, (int, np.integer)) and self.seed >= 0):
            raise ValueError("seed must be a nonnegative integer")
        if not (isinstance(self.trials, (int, np.integer)) and 1 <= self.trials <= 10**6):
            raise ValueError("trials must be a positive integer at most 10^6")
        for name, value in (("dim_k", self.dim_k), ("dim_h", self.dim_h)):
            if not (isinstance(value, (int, np.integer)) and 1 <= value <= 8):
                raise ValueError(f"{name} must be a positive integer at most 8")


@dataclass
class SuiteResult:
    """One report row: the identity checked, how often, and how badly it failed."""

    name: str
    anchor: str
    trials: int
    max_residual: float
    passed: bool
    elapsed: float

    def row(self):
        return {
            "name": self.name,
            "anchor": self.anchor,
            "trials": self.trials,
            "max_residual": float(self.max_residual),
            "passed": bool(self.passed),
            "elapsed": float(self.elapsed),
        }


class _Tracker:
    """Collects named residuals against their own tolerances."""

    def __init__(self):
        self.worst = 0.0
        self.ok = True
        self.count = 0

    def add(self, residual, limit):
        residual = float(residual)
        self.worst = max(self.worst, residual)
        if residual > limit:
            self.ok = False
        self.count += 1

    def require(self, condition):
        if not condition:
            self.ok = False
        self.count += 1


def example_domains(config):
    """The six reference domains, shaped by the configured dimensions."""
    k, h = config.dim_k, config.dim_h
    n = max(2, h)
    items = [whole_space_domain(full_space(k, h))]
    items.append(invertibles_domain(full_space(n, n)))
    e = np.zeros((n, n), dtype=complex)
    e[0, 0] = 1.0
    e[0, 1] = 0.5
    items.append(projection_domain(full_space(n, n), e))
    m = max(2, k)
    pattern = np.array([1.0, 1.0j, -1.0, -1.0j, 1.0, 1.0j, -1.0, -1.0j][:m], dtype=complex)
    c_vec = (pattern / np.linalg.norm(pattern)).reshape(m, 1)
    items.append(hyperplane_complement_domain(c_vec, 0.7))
    x = np.zeros((n, 1), dtype=complex)
    x[0, 0] = 1.0
    y = np.zeros((n, 1), dtype=complex)
    y[0, 0] = 1.0 / np.sqrt(2.0)
    y[1, 0] = 1.0j / np.sqrt(2.0)
    items.append(rank_one_pairing_domain(full_space(n, n), x, y, 0.6))
    items.append(quadric_domain(min(k + h, 4)).domain)
    return items


def _member_pair(rng, dom, tol, margin=0.05):
    y = samp.random_domain_member(rng, dom, tol, margin=margin)
    z = samp.random_domain_member(rng, dom, tol, margin=margin)
    return y, z


def suite_symmetry(config, rng):
    """Involution, fixed point, coefficient involution, and derivative checks."""
    tol = config.tol
    domains = example_domains(config)
    track = _Tracker()
    trials = 4 * config.trials
    start = time.perf_counter()
    for i in range(trials):
        dom = domains[i % len(domains)]
        y, z = _member_pair(rng, dom, tol)
        u = symmetry_map(dom, y, tol)
        double = lft_apply(u, lft_apply(u, z, tol), tol)
        track.add(operator_norm(double - z), 1e-8 * (1.0 + operator_norm(z)))
        track.add(operator_norm(lft_apply(u, y, tol) - y), 1e-10)
        m = u.coefficient_matrix()
        track.add(operator_norm(m @ m - np.eye(m.shape[0])), 1e-10)
        direction = samp.random_space_member(rng, dom.space, scale=0.1)
        deriv = fixed_point_derivative(dom, y, direction, tol=tol)
        track.add(operator_norm(deriv + direction), 1e-6)
    return SuiteResult(
        name="symmetry-involution",
        anchor="U_Y(U_Y(Z)) = Z; U_Y(Y) = Y; M^2 = I; dU_Y|_Y = -I",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_symmetry_routes(config, rng):
    """The coefficient-block route against the direct resolvent formula."""
    tol = config.tol
    domains = example_domains(config)
    track = _Tracker()
    trials = 2 * config.trials
    start = time.perf_counter()
    for i in range(trials):
        dom = domains[i % len(domains)]
        y, z = _member_pair(rng, dom, tol)
        via_blocks = lft_apply(symmetry_map(dom, y, tol), z, tol)
        direct = symmetry_direct(dom, y, z, tol)
        track.add(operator_norm(via_blocks - direct), 1e-9 * (1.0 + operator_norm(z)))
    return SuiteResult(
        name="symmetry-dual-route",
        anchor="U_Y(Z) = Y - (Z-Y)(CZ+D)^{-1}(CY+D)",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_midpoint(config, rng):
    """A midpoint symmetry swaps its two endpoints."""
    tol = config.tol
    domains = example_domains(config)
    track = _Tracker()
    trials = 2 * config.trials
    start = time.perf_counter()
    for i in range(trials):
        dom = domains[i % len(domains)]
        z, w = _member_pair(rng, dom, tol)
        pull = operator_norm(dom.kernel_at(z, tol) @ (w - z))
        if pull >= 0.95:
            w = z + (w - z) * (0.8 / pull)
            if dom.membership(w, tol) is not Verdict.MEMBER:
                continue
        y = find_midpoint(dom, z, w, tol)
        track.add(
            operator_norm(symmetry_direct(dom, y, z, tol) - w),
            1e-8 * (1.0 + operator_norm(w)),
        )
    return SuiteResult(
        name="midpoint-swap",
        anchor="U_Y(Z) = W for Y = Z + (W-Z)(I+Q)^{-1}, Q^2 = I + X(W-Z)",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_chain(config, rng):
    """Transitive chains: composite reaches the target through domain points."""
    tol = config.tol
    domains = example_domains(config)
    track = _Tracker()
    start = time.perf_counter()
    built = 0
    for dom in domains:
        for _ in range(config.trials):
            chain = None
            for _ in range(30):
                target = samp.random_domain_member(rng, dom, tol, margin=0.05)
                try:
                    chain = transitive_chain(dom, target, tol=tol)
                    break
                except (PathLeavesDomainError, StepBoundError):
                    continue
            if chain is None:
                track.require(False)
                continue
            built += 1
            track.add(chain.residual, 1e-8)
            track.require(chain.factor_count % 2 == 0)
            track.require(all(s <= 0.9 + 1e-12 for s in chain.step_norms))
            for _ in range(20):
                probe = samp.random_domain_member(rng, dom, tol, margin=0.05)
                try:
                    pointwise = chain.apply(probe, tol)
                except LftdomError:
                    continue
                track.add(operator_norm(chain.affine(probe) - pointwise), 1e-9)
    return SuiteResult(
        name="chain-transitivity",
        anchor="composite of symmetry pairs maps Z0 to W0; factor count even",
        trials=built,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_affine_pairs(config, rng):
    """A pair of symmetries folds into one affine map."""
    tol = config.tol
    domains = example_domains(config)
    track = _Tracker()
    trials = 2 * config.trials
    start = time.perf_counter()
    for i in range(trials):
        dom = domains[i % len(domains)]
        y, w = _member_pair(rng, dom, tol)
        z, _ = _member_pair(rng, dom, tol)
        aff = compose_symmetries_affine(dom, w, y, tol)
        try:
            pointwise = symmetry_direct(dom, w, symmetry_direct(dom, y, z, tol), tol)
        except LftdomError:
            continue
        track.add(operator_norm(aff(z) - pointwise), 1e-9 * (1.0 + operator_norm(pointwise)))
    return SuiteResult(
        name="affine-pair-fold",
        anchor="U_W(U_Y(Z)) = U_W(Y) + [I+(W-Y)X_Y](Z-Y)[I+X_Y(W-Y)]",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_transport(config, rng):
    """Square-root transport maps the base point and satisfies its identity."""
    tol = config.tol
    domains = example_domains(config)
    track = _Tracker()
    trials = 2 * config.trials
    start = time.perf_counter()
    for i in range(trials):
        dom = domains[i % len(domains)]
        w0 = samp.random_target_in_reach(rng, dom, max_pull=0.8, tol=tol)
        phi = affine_transport(dom, w0, tol)
        track.add(operator_norm(phi(dom.z0) - w0), 1e-10 * (1.0 + operator_norm(w0)))
        z, _ = _member_pair(rng, dom, tol)
        track.add(affine_transport_identity_residual(dom, phi, z, tol), 1e-9)
        track.require(dom.membership(phi(z), tol) is Verdict.MEMBER)
    return SuiteResult(
        name="affine-transport",
        anchor="I + X0(phi(Z)-Z0) = R^{1/2}(I + X0(Z-Z0))R^{1/2}",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_swap(config, rng):
    """The exchanging involution: self-inverse, swaps base and target."""
    tol = config.tol
    domains = example_domains(config)
    track = _Tracker()
    trials = 2 * config.trials
    start = time.perf_counter()
    for i in range(trials):
        dom = domains[i % len(domains)]
        w0 = samp.random_target_in_reach(rng, dom, max_pull=0.8, tol=tol)
        v = swap_involution(dom, w0, tol)
        track.add(operator_norm(v(dom.z0, tol) - w0), 1e-9 * (1.0 + operator_norm(w0)))
        z, _ = _member_pair(rng, dom, tol)
        try:
            track.add(operator_norm(v(v(z, tol), tol) - z), 1e-9 * (1.0 + operator_norm(z)))
        except LftdomError:
            pass
        v0 = swap_involution(dom, dom.z0, tol)
        track.add(
            operator_norm(v0(z, tol) - symmetry_direct(dom, dom.z0, z, tol)),
            1e-9 * (1.0 + operator_norm(z)),
        )
        track.add(operator_norm(lft_apply(v.as_lft(), z, tol) - v(z, tol)), 1e-8)
    return SuiteResult(
        name="swap-involution",
        anchor="V(V(Z)) = Z; V(Z0) = W0; V at W0 = Z0 equals U_{Z0}",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_equivalence(config, rng):
    """Affine equivalence of domains with proportional denominators."""
    tol = config.tol
    n = max(2, config.dim_h)
    space = full_space(n, n)
    track = _Tracker()
    trials = 2 * config.trials
    start = time.perf_counter()
    eye = np.eye(n, dtype=complex)
    for _ in range(trials):
        c1 = samp.random_matrix(rng, n, n)
        z1 = samp.random_matrix(rng, n, n)
        d1 = eye - c1 @ z1
        dom1 = Domain(space, c1, d1, z1, tol)
        r = samp.random_invertible_member(rng, space, tol)
        z2 = samp.random_matrix(rng, n, n)
        c2 = c1 @ r
        d2 = eye - c2 @ z2
        dom2 = Domain(space, c2, d2, z2, tol)
        eq = affine_equivalence(dom1, dom2, r, z1, z2, tol)
        track.add(operator_norm(eq(z1) - z2), 1e-10 * (1.0 + operator_norm(z2)))
        z = samp.random_domain_member(rng, dom1, tol, margin=0.05)
        track.add(eq.certificate_residual(z), 1e-9 * (1.0 + operator_norm(z)))
        track.require(dom2.membership(eq(z), tol) is Verdict.MEMBER)
    return SuiteResult(
        name="affine-equivalence",
        anchor="C2 phi(Z)+D2 = (C1 Z+D1)(C1 Z1+D1)^{-1}(C2 Z2+D2)",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_potapov_ginzburg(config, rng):
    """Projection-built involutions carry the signed contractions to the ball."""
    tol = config.tol
    track = _Tracker()
    per_e = 2 * config.trials
    start = time.perf_counter()
    cases = [
        np.zeros((2, 2), dtype=complex),
        np.diag([1.0, 0.0]).astype(complex),
        np.eye(2, dtype=complex),
    ]
    for e in cases:
        u = potapov_ginzburg_map(e, tol)
        m = u.coefficient_matrix()
        track.add(operator_norm(m @ m - np.eye(4)), 1e-12)
        j = signature_from_projection(e)
        for _ in range(per_e):
            z = samp.random_pg_member(rng, e, tol)
            image = lft_apply(u, z, tol)
            track.require(ball_margin(image) > 0.0)
            track.require(form_margin(z, j) > 0.0)
            track.add(
                operator_norm(lft_apply(u, image, tol) - z),
                1e-9 * (1.0 + operator_norm(z)),
            )
    return SuiteResult(
        name="potapov-ginzburg",
        anchor="M_E^2 = I; U_E maps {Z*JZ < J} into the unit ball",
        trials=3 * per_e,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def _lambda_grid():
    radii = 0.2 * np.arange(1, 11)
    angles = 2.0 * np.pi * np.arange(10) / 10.0
    return [r * np.exp(1j * t) for r in radii for t in angles]


def suite_liouville(config, rng):
    """The entire curve through Z: endpoints, invertibility, series identity."""
    tol = config.tol
    domains = example_domains(config)
    track = _Tracker()
    targets = max(1, config.trials // 10)
    grid = _lambda_grid()
    start = time.perf_counter()
    count = 0
    for i, dom in enumerate(domains):
        for _ in range(targets):
            z = samp.random_target_in_reach(rng, dom, max_pull=0.8, tol=tol)
            curve = liouville_curve(dom, z, tol)
            count += 1
            track.add(operator_norm(curve(0.0) - dom.z0), 1e-8)
            track.add(operator_norm(curve(1.0) - z), 1e-8)
            for lam in grid:
                value = curve(lam)
                track.require(dom.membership(value, tol) is Verdict.MEMBER)
                track.add(curve.identity_residual(lam), 1e-8)
                prod = curve.series_factor(lam) @ curve.series_factor(-lam)
                track.add(operator_norm(prod - np.eye(prod.shape[0])), 1e-9)
    return SuiteResult(
        name="liouville-curve",
        anchor="f(0) = Z0; f(1) = Z; (CZ0+D)^{-1}(Cf+D) = b_lambda(W); b b^- = I",
        trials=count * len(grid),
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_determinant(config, rng):
    """Determinant witness against the singular-value verdict, banded."""
    tol = config.tol
    n = max(2, config.dim_h)
    space = full_space(n, n)
    track = _Tracker()
    per_domain = 10 * config.trials
    band = 10.0 * tol.inv_tol
    start = time.perf_counter()
    outside_disagreements = 0
    checked = 0
    for _ in range(3):
        c = samp.random_invertible_member(rng, space, tol)
        dom = Domain(space, c, np.eye(n, dtype=complex), np.zeros((n, n), dtype=complex), tol)
        c_inv = np.linalg.inv(c)
        for sample in range(per_domain):
            if sample % 5 == 4:
                raw = samp.random_matrix(rng, n, n)
                uu, ss, vv = np.linalg.svd(raw)
                ss[-1] = 0.0
                sing = (uu * ss) @ vv
                t = 10.0 ** rng.uniform(-12.0, -7.0)
                den = sing + t * np.outer(uu[:, -1], vv[-1, :])
                z = c_inv @ (den - np.eye(n))
            else:
                z = samp.random_matrix(rng, n, n) * rng.uniform(0.1, 2.0)
            f = det_membership(dom, z, tol)
            smin = float(np.linalg.svd(dom.denominator(z), compute_uv=False).min())
            if smin <= band or abs(f) <= band:
                continue
            checked += 1
            det_says = abs(f) > tol.inv_tol
            svd_says = smin > tol.inv_tol
            if det_says != svd_says:
                outside_disagreements += 1
    track.require(outside_disagreements == 0)
    return SuiteResult(
        name="determinant-membership",
        anchor="|det(I + D^{-1}CZ)| > tol iff CZ+D invertible, outside the band",
        trials=checked,
        max_residual=float(outside_disagreements),
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_connectivity(config, rng):
    """Connectivity certificates on knowable cases."""
    del rng
    tol = config.tol
    n = max(2, config.dim_h)
    space = full_space(n, n)
    eye = np.eye(n, dtype=complex)
    track = _Tracker()
    start = time.perf_counter()

    rep = connectivity_class(Domain(space, eye, eye, np.zeros((n, n)), tol))
    track.require(
        rep.compact_coefficients
        and rep.polynomial_identity
        and rep.full_space_closed_range
        and rep.range_inclusion
    )
    rep = connectivity_class(whole_space_domain(space))
    track.require(
        rep.compact_coefficients
        and rep.polynomial_identity
        and rep.full_space_closed_range
        and not rep.range_inclusion
    )
    rep = connectivity_class(quadric_domain(min(config.dim_k + config.dim_h, 4)).domain)
    track.require(
        rep.compact_coefficients and rep.polynomial_identity and not rep.full_space_closed_range
    )
    track.require(rep.connected)
    return SuiteResult(
        name="connectivity-class",
        anchor="compactness and polynomial identity always hold in finite dimensions",
        trials=track.count,
        max_residual=0.0 if track.ok else 1.0,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def _random_j_unitary(rng, j, scale=0.4):
    n = j.shape[0]
    a = samp.random_matrix(rng, n, n)
    k = a - j @ a.conj().T @ j
    k = k * (scale / (1.0 + operator_norm(k)))
    return scipy.linalg.expm(k)


def suite_siegel(config, rng):
    """Validated linear maps preserve the stacked domain; Cayley involutes."""
    tol = config.tol
    spec = SiegelSpec(config.dim_k, config.dim_h)
    track = _Tracker()
    trials = 2 * config.trials
    start = time.perf_counter()
    for _ in range(trials):
        l = _random_j_unitary(rng, spec.j)
        u = samp.random_unitary(rng, spec.dim_h)
        auto = siegel_linear_auto(spec, l, u, tol)
        z = samp.random_siegel_member(rng, spec, tol)
        track.require(siegel_member(spec, auto(z), tol))
        track.add(
            operator_norm(auto.inverse(auto(z)) - z), 1e-9 * (1.0 + operator_norm(z))
        )
        track.add(siegel_invariant_residual(spec, auto, 1.5), 1e-8)
        tz = cayley_map(spec, z, tol)
        track.add(operator_norm(cayley_map(spec, tz, tol) - z), 1e-10 * (1.0 + operator_norm(z)))
        track.require(operator_norm(tz) < 1.0)
    return SuiteResult(
        name="siegel-stacked",
        anchor="h(Z) = LZU preserves I + Z1*Z1 < Z2*Z2; T(T(Z)) = Z",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_exterior(config, rng):
    """Isometry inverse identity and exterior preservation."""
    tol = config.tol
    n = max(2, config.dim_h)
    space = full_space(n, n)
    track = _Tracker()
    start = time.perf_counter()
    p = samp.random_unitary(rng, n)
    q = samp.random_unitary(rng, n)
    sandwich = [p @ b @ q for b in space.basis]
    transpose = [b.T.copy() for b in space.basis]
    trials = 0
    for images in (sandwich, transpose):
        rep = isometry_inverse_identity_check(space, images, rng, trials=config.trials, tol=tol)
        trials += rep.trials
        track.add(rep.max_identity_residual, 1e-10)
        track.add(rep.unitary_defect, 1e-9)
        auto = exterior_linear_auto_check(space, images, rng, trials=config.trials, tol=tol)
        track.require(auto.preserved == auto.trials)
        track.require(auto.min_image_margin > 0.0)
    return SuiteResult(
        name="exterior-isometry",
        anchor="L(Z^{-1}) = L(I) L(Z)^{-1} L(I) for linear isometries",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_mobius(config, rng):
    """Ball automorphisms: preservation, special values, inversion, J-form."""
    tol = config.tol
    k, h = config.dim_k, config.dim_h
    j1 = np.diag(np.concatenate([np.ones(k), -np.ones(h)])).astype(complex)
    track = _Tracker()
    trials = 2 * config.trials
    start = time.perf_counter()
    for _ in range(trials):
        b = samp.random_ball_point(rng, k, h, max_norm=0.85)
        t_b = mobius_map(b, tol)
        z = samp.random_ball_point(rng, k, h, max_norm=0.95)
        image = lft_apply(t_b, z, tol)
        track.require(operator_norm(image) < 1.0)
        track.add(operator_norm(lft_apply(t_b, -b, tol)), 1e-12)
        track.add(operator_norm(lft_apply(t_b, np.zeros((k, h)), tol) - b), 1e-10)
        back = lft_apply(mobius_map(-b, tol), image, tol)
        track.add(operator_norm(back - z), 1e-8)
        m = t_b.coefficient_matrix()
        track.add(operator_norm(m.conj().T @ j1 @ m - j1), 1e-10)
        track.add(operator_norm(mobius_direct(b, z, tol) - image), 1e-10)
    return SuiteResult(
        name="mobius-ball",
        anchor="T_B maps the ball to itself; T_B(-B) = 0; T_{-B} inverts T_B; M*JM = J",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_product(config, rng):
    """Transitive linear maps of the product-type stacked domain."""
    tol = config.tol
    spec = SiegelSpec(config.dim_k, config.dim_h)
    axis = spec.stack(
        np.zeros((spec.dim_k, spec.dim_h), dtype=complex),
        np.eye(spec.dim_h, dtype=complex),
    )
    track = _Tracker()
    trials = 2 * config.trials
    start = time.perf_counter()
    for _ in range(trials):
        w = samp.random_product_member(rng, spec, tol)
        transport = product_transitive(spec, w, tol)
        track.add(operator_norm(transport(axis) - w), 1e-10 * (1.0 + operator_norm(w)))
        track.add(operator_norm(transport.m.conj().T @ spec.j @ transport.m - spec.j), 1e-10)
        z = samp.random_product_member(rng, spec, tol)
        image = transport(z)
        track.require(product_member(spec, image, tol))
        track.add(operator_norm(transport.inverse(image) - z), 1e-9 * (1.0 + operator_norm(z)))
        ball_part, inv_part = product_split(spec, image, tol)
        track.require(operator_norm(ball_part) < 1.0)
        track.require(try_invert(inv_part, tol) is not None)
    return SuiteResult(
        name="product-transport",
        anchor="L(Z) = M Z R maps [0; I] to W and preserves Z1*Z1 < Z2*Z2",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_hyperbolic(config, rng):
    """Transitive maps of the vector domain (Jz, z) < 0, both branches."""
    tol = config.tol
    n = max(3, min(config.dim_k + config.dim_h, 6))
    track = _Tracker()
    trials = 4 * config.trials
    start = time.perf_counter()
    degenerate_seen = 0
    for i in range(trials):
        want_degenerate = i % 10 == 0
        interior = rng.uniform(-2.0, 2.0, n - 2)
        if want_degenerate:
            interior[0] = -abs(interior[0]) - 0.2
        v = samp.random_unitary(rng, n)
        j = (v * np.concatenate([[1.0], interior, [-1.0]])) @ v.conj().T
        spec = HyperbolicSpec(j, tol=tol)
        z1 = samp.random_hyperbolic_member(rng, spec, degenerate=want_degenerate)
        transport = hyperbolic_transitive(spec, z1, tol)
        if transport.degenerate:
            degenerate_seen += 1
        scale = 1.0 + np.linalg.norm(z1)
        track.add(transport.endpoint_residual(), 1e-9 * scale)
        track.add(
            transport.certificate_residual(),
            1e-9 * (1.0 + operator_norm(transport.matrix)) ** 2,
        )
        track.require(transport.c > 0.0)
        z = samp.random_hyperbolic_member(rng, spec)
        track.require(hyperbolic_member(spec, transport(z), tol))
    track.require(degenerate_seen >= trials // 10)
    return SuiteResult(
        name="hyperbolic-transport",
        anchor="L f = z1 with L*JL = c J, c > 0; degenerate branch via a shear",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


def suite_quadric(config, rng):
    """Closed-form quadric symmetry against the matrix-algebra route."""
    tol = config.tol
    model = quadric_domain(min(config.dim_k + config.dim_h, 4), tol)
    track = _Tracker()
    trials = 2 * config.trials
    start = time.perf_counter()
    n = model.n
    for _ in range(trials):
        z = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        y = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        if abs(model.quadric_form(z)) < 1e-3 or abs(model.quadric_form(y)) < 1e-3:
            continue
        big_z = model.embed(z)
        track.add(float(np.linalg.norm(model.unembed(big_z) - z)), 1e-12)
        square = big_z @ big_z - model.quadric_form(z) * np.eye(model.matrix_dim)
        track.add(operator_norm(square), 1e-12 * (1.0 + np.linalg.norm(z)) ** 2)
        closed = model.closed_form_symmetry(y, z)
        via_matrix = model.unembed(
            symmetry_direct(model.domain, model.embed(y), big_z, tol)
        )
        track.add(float(np.linalg.norm(closed - via_matrix)), 1e-9 * (1.0 + np.linalg.norm(z)))
    return SuiteResult(
        name="quadric-closed-form",
        anchor="U_y(z) = (2(z,y)y - (y,y)z)/(z,z) matches the matrix route",
        trials=trials,
        max_residual=track.worst,
        passed=track.ok,
        elapsed=time.perf_counter() - start,
    )


SUITES = (
    suite_symmetry,
    suite_symmetry_routes,
    suite_midpoint,
    suite_chain,
    suite_affine_pairs,
    suite_transport,
    suite_swap,
    suite_equivalence,
    suite_potapov_ginzburg,
    suite_liouville,
    suite_determinant,
    suite_connectivity,
    suite_siegel,
    suite_exterior,
    suite_mobius,
    suite_product,
    suite_hyperbolic,
    suite_quadric,
)


def run_verify(config):
    """Run every suite with its own (seed, index) generator; return the report."""
    rows = []
    all_passed = True
    for index, suite in enumerate(SUITES):
        rng = np.random.default_rng([config.seed, index])
        try:
            result = suite(config, rng)
        except LftdomError as exc:
            result = SuiteResult(
                name=suite.__name__.replace("suite_", "").replace("_", "-"),
                anchor=f"suite aborted: {exc}",
                trials=0,
                max_residual=float("inf"),
                passed=False,
                elapsed=0.0,
            )
        rows.append(result.row())
        all_passed = all_passed and result.passed
    return {
        "config": {
            "seed": int(config.seed),
            "trials": int(config.trials),
            "dim_k": int(config.dim_k),
            "dim_h": int(config.dim_h),
            "eq_tol": float(config.tol.eq_tol),
            "inv_tol": float(config.tol.inv_tol),
        },
        "suites": rows,
        "passed": all_passed,
    }
