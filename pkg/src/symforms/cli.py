"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
errors (bad arguments, unknown names, weight mismatches).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import correspondences as corr
from .brackets import rc_pair, rc_scalar_vector, rc_tensor
from .cache import FileCache
from .config import JobConfig
from .demo import demo_delta
from .errors import (
    AssertionFailure,
    SymformsError,
    UnknownName,
    WeightHypothesisViolated,
    WeightMismatch,
    WeightTooSmall,
)
from .jacobi import JacSeries, Psi_map, verify_jacobi_transform
from .jacobi_like import (
    V_by_lifting,
    ck_lift_scalar,
    ck_lift_vhat,
    jl_coefficient,
    verify_jl_transform,
)
from .modular import QuasiElement, basis_Mk, quasi_basis
from .registry import NAMES, resolve
from .serialize import to_json
from .series import QSeries
from .symtensor import (
    VVForm,
    contragredient,
    dual_rep,
    sym_rep,
    verify_scalar_transform,
    verify_vv_transform,
)

log = logging.getLogger("symforms")

USAGE_ERRORS = (UnknownName, WeightMismatch, WeightTooSmall, WeightHypothesisViolated)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _num(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def describe(obj) -> str:
    if isinstance(obj, QuasiElement):
        return repr(obj)
    if isinstance(obj, QSeries):
        if obj.den == 1 and obj.is_rational():
            return json.dumps([_num(c) for c in obj.to_list()])
        return repr(obj)
    if isinstance(obj, JacSeries):
        lines = [f"weight {obj.weight}, index {obj.index}, q-order {obj.order}"]
        for e, row in obj.rows().items():
            body = " + ".join(f"({c})z^{r}" for r, c in row.items())
            lines.append(f"q^{e}: {body}")
        return "\n".join(lines)
    if isinstance(obj, VVForm):
        lines = [f"weight {obj.weight}, rank {obj.rank}"]
        lines += [f"[{i}] {c!r}" for i, c in enumerate(obj.components)]
        return "\n".join(lines)
    if isinstance(obj, corr.FormPolynomial):
        lines = [f"{obj.kind} polynomial of weight {obj.weight}"]
        lines += [f"X^{r}: {describe(c)}" for r, c in enumerate(obj.coeffs)]
        return "\n".join(lines)
    if isinstance(obj, (list, tuple)):
        return "\n".join(f"[{i}] {describe(x)}" for i, x in enumerate(obj))
    return str(obj)


def emit(obj, args):
    if args.json:
        print(json.dumps(to_json(obj)))
    else:
        print(describe(obj))


def config_from(args) -> JobConfig:
    cfg = JobConfig()
    cfg.q_order = args.order
    cfg.x_order = args.x_order
    if args.tol is not None:
        cfg.tol = args.tol
    if args.cache_dir:
        cfg.cache_dir = args.cache_dir
    return cfg


def _expect(obj, cls, what: str):
    if not isinstance(obj, cls):
        raise UsageError(f"{what} must be a {cls.__name__}, got {type(obj).__name__}")
    return obj


def _scalar_series(obj, order):
    if isinstance(obj, QuasiElement):
        return obj.to_qexp(order), obj.weight
    raise UsageError("expected a scalar expression in E2, E4, E6, delta")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_expand(args) -> int:
    cfg = config_from(args)

    def build():
        obj = resolve(args.name, cfg.q_order)
        if isinstance(obj, QuasiElement):
            obj = obj.to_qexp(cfg.q_order)
        return obj

    obj = FileCache(cfg.cache_dir).get_or_build(args.name, cfg.q_order, build) if cfg.cache_dir else build()
    emit(obj, args)
    return 0


def cmd_bracket(args) -> int:
    order = args.order
    a = resolve(args.a, order)
    b = resolve(args.b, order)
    if args.kind == "tensor":
        out = rc_tensor(_expect(a, VVForm, "first operand"), _expect(b, VVForm, "second operand"),
                        args.w, args.lam1, args.lam2)
    elif args.kind == "sv":
        f, _ = _scalar_series(a, order)
        out = rc_scalar_vector(f, _expect(b, VVForm, "second operand"), args.w, args.lam1, args.lam2)
    else:
        out = rc_pair(_expect(a, VVForm, "first operand"), _expect(b, VVForm, "second operand"),
                      args.w, args.lam1, args.lam2)
    emit(out, args)
    return 0


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"map {args.kind} needs --{' --'.join(missing)}")


def cmd_map(args) -> int:
    order = args.order
    obj = resolve(args.operand, order)
    kind = args.kind
    if kind == "v":
        _need(args, "k", "n", "ell")
        out = corr.V_map(_expect(obj, QuasiElement, "operand"), args.k, args.n, args.ell, order)
    elif kind == "w":
        _need(args, "k", "n")
        out = corr.W_map(_expect(obj, VVForm, "operand"), args.k, args.n, literal=args.literal)
    elif kind == "u":
        _need(args, "k", "n")
        out = corr.U_map(_expect(obj, corr.FormPolynomial, "operand"), args.k, args.n, order,
                         allow_small_weight=args.allow_small_weight)
    elif kind == "uinv":
        _need(args, "k", "n")
        out = corr.U_inverse(_expect(obj, VVForm, "operand"), args.k, args.n,
                             allow_small_weight=args.allow_small_weight)
    elif kind == "lambda":
        _need(args, "m", "lam")
        out = corr.Lambda_map(_expect(obj, corr.FormPolynomial, "operand"), args.m, args.lam)
    elif kind == "xi":
        _need(args, "m", "lam")
        out = corr.Xi_map(_expect(obj, corr.FormPolynomial, "operand"), args.m, args.lam)
    elif kind == "q":
        _need(args, "m")
        out = corr.Q_map(_expect(obj, QuasiElement, "operand"), args.m)
    elif kind == "qinv":
        out = corr.Q_inverse(_expect(obj, corr.FormPolynomial, "operand"))
    elif kind == "decompose":
        _need(args, "k", "n")
        out = corr.decompose(_expect(obj, VVForm, "operand"), args.k, args.n)
    else:  # psi
        _need(args, "k", "n")
        out = Psi_map(_expect(obj, VVForm, "operand"), args.n, args.k, order)
    emit(out, args)
    return 0


def cmd_lift(args) -> int:
    cfg = config_from(args)
    if args.kind == "vhat":
        if args.n is None:
            raise UsageError("lift vhat needs --n")
        out = ck_lift_vhat(args.n, cfg.x_order_for(args.n), cfg.q_order)
    else:
        if args.target is None:
            raise UsageError("lift scalar needs a scalar expression")
        g = _expect(resolve(args.target, cfg.q_order), QuasiElement, "target")
        out = ck_lift_scalar(g, cfg.x_order_for(0), cfg.q_order)
    emit(list(out.coeffs), args)
    return 0


def _lift_target(target: str, cfg: JobConfig):
    obj = resolve(target, cfg.q_order)
    if isinstance(obj, VVForm):
        if obj.n is None or not obj.components[-1].is_z_free():
            raise UsageError("only vhat(n) has a vector lift")
        return ck_lift_vhat(obj.n, cfg.x_order_for(obj.n), cfg.q_order)
    return ck_lift_scalar(_expect(obj, QuasiElement, "target"), cfg.x_order_for(0), cfg.q_order)


def cmd_jl(args) -> int:
    cfg = config_from(args)
    if args.action == "coeff":
        if args.j is None:
            raise UsageError("jl coeff needs --j")
        emit(jl_coefficient(_lift_target(args.target, cfg), args.j), args)
        return 0
    # cross: bracket route against lifting route
    for name in ("k", "n", "ell"):
        if getattr(args, name) is None:
            raise UsageError(f"jl cross needs --{name}")
    g = _expect(resolve(args.target, cfg.q_order), QuasiElement, "target")
    a = corr.V_map(g, args.k, args.n, args.ell, cfg.q_order)
    b = V_by_lifting(g, args.k, args.n, args.ell, cfg.q_order)
    ok = a.agrees(b)
    print(f"bracket route vs lifting route: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def _report_rows(rows, tol) -> int:
    ok = True
    for label, res in rows:
        passed = res <= tol
        ok &= passed
        print(f"{label:<28} {res:.3e}  {'PASS' if passed else 'FAIL'}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_verify(args) -> int:
    cfg = config_from(args)
    cfg.check_numeric()
    if args.tol is None and args.kind == "jacobi":
        cfg.tol = 1e-6
    obj = resolve(args.target, cfg.q_order)
    rows = []
    for g in cfg.gammas():
        for z in cfg.sample_points:
            label = f"gamma=({g}) z={z}"
            if args.kind == "scalar":
                f = _expect(obj, QuasiElement, "target")
                if not f.is_modular():
                    raise UsageError("target is quasimodular; use 'verify quasi'")
                rep = verify_scalar_transform(f.to_qexp(cfg.q_order), f.weight, g, z, cfg.tol)
                res = rep.max_residual
            elif args.kind == "vv":
                F = _expect(obj, VVForm, "target")
                n = F.rank - 1
                reps = {"sym": lambda h: sym_rep(h, n), "dual": lambda h: dual_rep(h, n),
                        "contra": lambda h: contragredient(sym_rep(h, n))}
                res = verify_vv_transform(F, g, z, cfg.tol, rep=reps[args.rep]).max_residual
            elif args.kind == "quasi":
                P = obj if isinstance(obj, corr.FormPolynomial) else corr.Q_map(
                    _expect(obj, QuasiElement, "target"), obj.depth)
                res = corr.verify_quasi_polynomial(P, g, z, order=cfg.q_order, tol=cfg.tol).residual
            elif args.kind == "jacobi":
                phi = _expect(obj, JacSeries, "target")
                res = verify_jacobi_transform(phi, g, z, 0.2, cfg.tol).max_residual
            else:
                s = _lift_target(args.target, cfg)
                powers = range(s.n + 1) if s.is_vector else None
                res = verify_jl_transform(s, g, z, cfg.tol, powers=powers).max_residual
            rows.append((label, res))
    return _report_rows(rows, cfg.tol)


def _roundtrip_vu(k, n, order):
    checks = 0
    bad = 0
    for ell in range(n + 1):
        for g in basis_Mk(k - n + 2 * ell).elements():
            F = corr.V_map(g, k, n, ell, order)
            gs = corr.decompose(F, k, n)
            P = corr.U_inverse(F, k, n)
            checks += 1
            ok = gs[ell] == g and all(x.is_zero() for i, x in enumerate(gs) if i != ell)
            ok &= corr.U_map(P, k, n, order).agrees(F)
            bad += not ok
    return checks, bad


def _roundtrip_lambdaxi(lam, m):
    checks = bad = 0
    for P in corr.modular_polynomial_basis(m, lam - 2 * m):
        checks += 1
        bad += corr.Xi_map(corr.Lambda_map(P, m, lam), m, lam) != P.padded(m)
    for P in corr.quasi_polynomial_basis(m, lam):
        checks += 1
        bad += corr.Lambda_map(corr.Xi_map(P, m, lam), m, lam) != P.padded(m)
    return checks, bad


def _roundtrip_q(lam, m):
    checks = bad = 0
    for f in quasi_basis(lam, m):
        P = corr.Q_map(f, m)
        checks += 1
        bad += corr.Q_inverse(P) != f or corr.Q_map(corr.Q_inverse(P), m) != P
    return checks, bad


def cmd_roundtrip(args) -> int:
    if args.kind == "vu":
        if args.k is None or args.n is None:
            raise UsageError("roundtrip vu needs --k and --n")
        checks, bad = _roundtrip_vu(args.k, args.n, args.order)
    else:
        if args.lam is None or args.m is None:
            raise UsageError(f"roundtrip {args.kind} needs --lam and --m")
        fn = _roundtrip_lambdaxi if args.kind == "lambdaxi" else _roundtrip_q
        checks, bad = fn(args.lam, args.m)
    # exact identities: the residual is 0 or the comparison failed outright
    print(f"{args.kind}: {checks} basis elements, {bad} mismatches, max residual {0 if not bad else 'inf'}")
    print("PASS" if not bad else "FAIL")
    return 0 if not bad else 1


def cmd_demo(args) -> int:
    perturb = None
    if args.perturb:
        slot, exp, delta = args.perturb.split(",")
        perturb = (int(slot), Fraction(exp), Fraction(delta))
    try:
        rep = demo_delta(args.order, perturb=perturb)
    except AssertionFailure as exc:
        print(f"FAIL: {exc}")
        return 1
    print(rep.text())
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=30, help="q-expansion truncation order")
    common.add_argument("--x-order", type=int, default=None, help="X truncation for liftings (default n+5)")
    common.add_argument("--tol", type=float, default=None, help="tolerance for numeric checks")
    common.add_argument("--json", action="store_true", help="print results as JSON")
    common.add_argument("--cache-dir", default=None, help="expansion cache directory (or $SYMFORMS_CACHE)")

    p = argparse.ArgumentParser(prog="symforms", description="Exact computations with modular, quasimodular, "
                                "vector-valued and Jacobi forms of level one.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand", parents=[common], help="print a q-expansion",
                       description="Known names: " + ", ".join(NAMES) + "; or any scalar expression.")
    s.add_argument("name")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("bracket", parents=[common], help="Rankin-Cohen brackets")
    s.add_argument("kind", choices=["tensor", "sv", "pair"])
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--lam1", type=int, required=True)
    s.add_argument("--lam2", type=int, required=True)
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("map", parents=[common], help="apply one of the correspondences")
    s.add_argument("kind", choices=["v", "w", "u", "uinv", "lambda", "xi", "q", "qinv", "decompose", "psi"])
    s.add_argument("operand")
    for flag in ("k", "n", "ell", "m", "lam"):
        s.add_argument(f"--{flag}", type=int)
    s.add_argument("--literal", action="store_true", help="W map: pair with (1, -z, ..., (-z)^n)")
    s.add_argument("--allow-small-weight", action="store_true", help="U maps: permit k <= n (warns)")
    s.set_defaults(func=cmd_map)

    s = sub.add_parser("lift", parents=[common], help="Cohen-Kuznetsov liftings")
    s.add_argument("kind", choices=["scalar", "vhat"])
    s.add_argument("target", nargs="?")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("jl", parents=[common], help="Jacobi-like series coefficients and cross checks")
    s.add_argument("action", choices=["coeff", "cross"])
    s.add_argument("target")
    for flag in ("j", "k", "n", "ell"):
        s.add_argument(f"--{flag}", type=int)
    s.set_defaults(func=cmd_jl)

    s = sub.add_parser("verify", parents=[common], help="numeric transformation-law checks")
    s.add_argument("kind", choices=["scalar", "vv", "quasi", "jacobi", "jl"])
    s.add_argument("target")
    s.add_argument("--rep", choices=["sym", "dual", "contra"], default="sym",
                   help="representation for 'vv' (uhat(n) needs dual, uhatdual(n) needs contra)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("roundtrip", parents=[common], help="exact round trips on full bases")
    s.add_argument("kind", choices=["vu", "lambdaxi", "q"])
    for flag in ("k", "n", "m", "lam"):
        s.add_argument(f"--{flag}", type=int)
    s.set_defaults(func=cmd_roundtrip)

    s = sub.add_parser("demo", parents=[common], help="reproduce the discriminant example end to end")
    s.add_argument("--perturb", help="slot,exponent,delta: corrupt one expected coefficient (negative control)")
    s.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, *USAGE_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SymformsError as exc:
        print(f"FAIL: {type(exc).__name__}: {exc}")
        return 1


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
