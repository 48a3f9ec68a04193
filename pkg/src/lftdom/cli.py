"""Command line front end: verification suites, demos, and chain building.

Exit codes: 0 when everything passed, 1 when a suite or chain failed
numerically, 2 for usage or input-file errors.
"""

import argparse
import sys

import numpy as np

from . import jsonio
from . import sampling as samp
from .exceptions import LftdomError, PathLeavesDomainError
from .linalg import DEFAULT_TOL, Tolerance, operator_norm
from .spaces import full_space
from .domains import Verdict, lft_apply, quadric_domain
from .automorphisms import symmetry_direct, symmetry_map, transitive_chain
from .circular import (
    HyperbolicSpec,
    SiegelSpec,
    cayley_map,
    hyperbolic_transitive,
    isometry_inverse_identity_check,
    product_transitive,
    siegel_member,
)
from .verify import RunConfig, run_verify, example_domains
from . import __version__


def _add_common_flags(parser, top):
    def default(value):
        return value if top else argparse.SUPPRESS

    parser.add_argument(
        "--seed", type=int, default=default(0), help="seed for all randomized suites"
    )
    parser.add_argument("--trials", type=int, default=default(50), help="work volume per suite")
    parser.add_argument("--dim-h", type=int, default=default(2), help="column dimension (at most 8)")
    parser.add_argument("--dim-k", type=int, default=default(2), help="row dimension (at most 8)")
    parser.add_argument(
        "--tol",
        type=float,
        default=default(None),
        help="equality tolerance; the invertibility tolerance is a tenth of it",
    )
    parser.add_argument("--out", default=default(None), help="write the JSON report to this file")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lftdom",
        description="Linear fractional domains: verification, demos, transitive chains.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common_flags(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run every verification suite")
    _add_common_flags(verify, top=False)
    demo = sub.add_parser("demo", help="walk through one example construction")
    demo.add_argument(
        "example",
        choices=["0", "1", "2", "4", "5", "6", "siegel", "exterior", "product", "hyperbolic"],
    )
    _add_common_flags(demo, top=False)
    transit = sub.add_parser("transit", help="build a transitive chain from files")
    transit.add_argument("domain_file")
    transit.add_argument("target_file")
    transit.add_argument("path_file", nargs="?", default=None)
    _add_common_flags(transit, top=False)
    return parser


def _config_from_args(args):
    if args.tol is not None:
        if not (0.0 < args.tol < 1.0):
            raise ValueError("--tol must lie strictly between 0 and 1")
        tol = Tolerance(eq_tol=args.tol, inv_tol=args.tol / 10.0)
    else:
        tol = DEFAULT_TOL
    return RunConfig(
        seed=args.seed,
        trials=args.trials,
        dim_k=args.dim_k,
        dim_h=args.dim_h,
        tol=tol,
    )


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(config, out_path):
    report = run_verify(config)
    for row in report["suites"]:
        status = "PASS" if row["passed"] else "FAIL"
        print(
            f"{status}  {row['name']:<24} trials={row['trials']:<6} "
            f"max_residual={row['max_residual']:.3e}  [{row['anchor']}]"
        )
    print("overall:", "PASS" if report["passed"] else "FAIL")
    if out_path:
        _emit(jsonio.dumps(report), out_path)
    return 0 if report["passed"] else 1


def _demo_lines(example, config):
    rng = np.random.default_rng([config.seed, 10_000])
    tol = config.tol
    lines = []
    if example in {"0", "1", "2", "4", "5", "6"}:
        index = {"0": 0, "1": 1, "2": 2, "4": 3, "5": 4, "6": 5}[example]
        dom = example_domains(config)[index]
        y = samp.random_domain_member(rng, dom, tol, margin=0.05)
        z = samp.random_domain_member(rng, dom, tol, margin=0.05)
        u = symmetry_map(dom, y, tol)
        uz = lft_apply(u, z, tol)
        m = u.coefficient_matrix()
        lines.append(f"domain: {dom.label or 'custom'}; member shape {dom.space.shape}")
        lines.append("symmetry at Y applied to Z gives residual formulas:")
        lines.append(f"  ||U_Y(U_Y(Z)) - Z|| = {operator_norm(lft_apply(u, uz, tol) - z):.3e}")
        lines.append(f"  ||U_Y(Y) - Y||      = {operator_norm(lft_apply(u, y, tol) - y):.3e}")
        lines.append(f"  ||M^2 - I||         = {operator_norm(m @ m - np.eye(m.shape[0])):.3e}")
        if example == "0":
            lines.append(
                f"  ||U_Y(Z) - (2Y - Z)|| = {operator_norm(uz - (2 * y - z)):.3e}"
                "  (translation-reflection form)"
            )
        if example == "1":
            closed = y @ np.linalg.inv(z) @ y
            lines.append(f"  ||U_Y(Z) - Y Z^-1 Y|| = {operator_norm(uz - closed):.3e}")
        if example == "6":
            model = quadric_domain(min(config.dim_k + config.dim_h, 4), tol)
            zv = rng.uniform(-1, 1, model.n) + 1j * rng.uniform(-1, 1, model.n)
            yv = rng.uniform(-1, 1, model.n) + 1j * rng.uniform(-1, 1, model.n)
            closed = model.closed_form_symmetry(yv, zv)
            via = model.unembed(
                symmetry_direct(model.domain, model.embed(yv), model.embed(zv), tol)
            )
            lines.append(
                f"  vector form matches matrix route: {np.linalg.norm(closed - via):.3e}"
            )
    elif example == "siegel":
        spec = SiegelSpec(config.dim_k, config.dim_h)
        z = samp.random_siegel_member(rng, spec, tol)
        t = cayley_map(spec, z, tol)
        lines.append(f"stacked member of shape {spec.shape}; member: {siegel_member(spec, z, tol)}")
        lines.append(f"||T(Z)|| = {operator_norm(t):.6f} (inside the unit ball)")
        lines.append(f"||T(T(Z)) - Z|| = {operator_norm(cayley_map(spec, t, tol) - z):.3e}")
    elif example == "exterior":
        n = max(2, config.dim_h)
        space = full_space(n, n)
        images = [b.T.copy() for b in space.basis]
        rep = isometry_inverse_identity_check(space, images, rng, trials=20, tol=tol)
        lines.append(f"transpose map on {n} x {n}: U = L(I), unitary defect {rep.unitary_defect:.3e}")
        lines.append(f"max ||L(Z^-1) - U L(Z)^-1 U|| = {rep.max_identity_residual:.3e}")
    elif example == "product":
        spec = SiegelSpec(config.dim_k, config.dim_h)
        w = samp.random_product_member(rng, spec, tol)
        transport = product_transitive(spec, w, tol)
        axis = spec.stack(
            np.zeros((spec.dim_k, spec.dim_h)), np.eye(spec.dim_h)
        )
        lines.append(f"L(Z) = M Z R with ||L([0; I]) - W|| = {operator_norm(transport(axis) - w):.3e}")
        lines.append(
            "||M*JM - J|| = "
            f"{operator_norm(transport.m.conj().T @ spec.j @ transport.m - spec.j):.3e}"
        )
    elif example == "hyperbolic":
        n = max(3, min(config.dim_k + config.dim_h, 6))
        interior = rng.uniform(-2.0, 2.0, n - 2)
        v = samp.random_unitary(rng, n)
        j = (v * np.concatenate([[1.0], interior, [-1.0]])) @ v.conj().T
        spec = HyperbolicSpec(j, tol=tol)
        z1 = samp.random_hyperbolic_member(rng, spec)
        transport = hyperbolic_transitive(spec, z1, tol)
        lines.append(f"form value at target: {spec.form(z1).real:.6f} (negative inside)")
        lines.append("L composed from phase, shear, and stretch factors")
        lines.append(f"||L f - z1|| = {transport.endpoint_residual():.3e}")
        lines.append(
            f"||L*JL - cJ|| = {transport.certificate_residual():.3e} with c = {transport.c:.6f}"
        )
        lines.append(f"degenerate branch used: {transport.degenerate}")
    return lines


def cmd_demo(example, config, out_path):
    lines = _demo_lines(example, config)
    text = "\n".join(lines)
    print(text)
    if out_path:
        _emit(text, out_path)
    return 0


def cmd_transit(args, config):
    with open(args.domain_file, "r", encoding="utf-8") as fh:
        dom = jsonio.domain_from_obj(jsonio.loads(fh.read()), config.tol)
    with open(args.target_file, "r", encoding="utf-8") as fh:
        target = jsonio.matrix_from_obj(jsonio.loads(fh.read()))
    path = None
    if args.path_file:
        with open(args.path_file, "r", encoding="utf-8") as fh:
            path = jsonio.path_from_obj(jsonio.loads(fh.read()))
    if dom.membership(target, config.tol) is not Verdict.MEMBER:
        print("error: the target is not a member of the domain", file=sys.stderr)
        return 2
    try:
        chain = transitive_chain(dom, target, path=path, tol=config.tol)
    except PathLeavesDomainError as exc:
        print(f"error at waypoint {exc.index}: {exc}", file=sys.stderr)
        return 1
    except LftdomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"chain with {chain.factor_count} symmetry factors, "
        f"max step {max(chain.step_norms):.6f}, residual {chain.residual:.3e}"
    )
    _emit(jsonio.dumps(jsonio.chain_to_obj(chain)), args.out)
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    if args.command == "verify":
        return cmd_verify(config, args.out)
    if args.command == "demo":
        return cmd_demo(args.example, config, args.out)
    if args.command == "transit":
        try:
            return cmd_transit(args, config)
        except (OSError, ValueError, LftdomError) as exc:
            print(f"input error: {exc}", file=sys.stderr)
            return 2
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
