"""Command-line front end.

Every command prints one canonical JSON document (sorted keys, compact
separators) carrying ``"schema": "branchkit/1"``. Exact scalars are
serialized as strings. Exit status: 0 on success, 1 when a verification
fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from fractions import Fraction

from . import checks, linalg

SCHEMA = "branchkit/1"


def dumps(obj) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, sort_keys=True, separators=(",", ":"))


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".branchkit-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class UsageError(Exception):
    pass


# --- commands -----------------------------------------------------------------

def cmd_verify(args) -> tuple:
    names = checks.SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for name in names:
        t0 = time.perf_counter()
        rep = checks.run_suite(name, args.max_weight, args.seed, args.tol)
        d = rep.as_dict()
        if args.timing:
            d["wall_time"] = round(time.perf_counter() - t0, 3)
        reports.append((rep.ok, d))
    ok = all(r[0] for r in reports)
    out = {"ok": ok, "reports": [r[1] for r in reports]}
    if args.json:
        try:
            write_atomic(args.json, dumps(out))
        except OSError as exc:
            raise UsageError(f"cannot write {args.json}: {exc}") from exc
    return out, 0 if ok else 1


def cmd_branch(args) -> tuple:
    from .glrep import WeightGL3, dim_L3, xi2_set

    w = WeightGL3(args.w1p, args.w1m, args.w2)
    xi = xi2_set(w)
    audit = sum(n.dim() for n in xi)
    d = dim_L3(w)
    return {
        "weight": [w.w1p, w.w1m, w.w2],
        "xi2": [[n.n1, n.n2] for n in xi],
        "dimension_audit": audit,
        "dim_L3": d,
        "ok": audit == d,
    }, 0


def _pi_params(args):
    from .lfactors import PiParams

    return PiParams(args.l2, args.l3, args.delta)


def cmd_critical(args) -> tuple:
    from .lfactors import critical_by_hodge, critical_points, critical_points_by_poles

    pp = _pi_params(args)
    closed = critical_points(pp)
    poles = critical_points_by_poles(pp)
    hodge = [m for m in range(-(pp.l2 + pp.l3) - 2, pp.l2 + pp.l3 + 3) if critical_by_hodge(pp, m)]
    out = {"l2": pp.l2, "l3": pp.l3, "m": closed, "by_poles": poles, "by_hodge": hodge,
           "agree": closed == poles == hodge}
    if args.m is not None:
        out["at"] = _point_data(pp, args.m)
    return out, 0


def _point_data(pp, m) -> dict:
    from .escoh import cup_constants
    from .lfactors import aux_constants, critical_by_hodge, critical_points, hodge_types, main_constant
    from .scalar import render

    data = {"m": m, "hodge_types": [list(t) for t in hodge_types(pp, m)], "critical": critical_by_hodge(pp, m)}
    if m in critical_points(pp):
        mc = main_constant(pp, m)
        aux = aux_constants(pp, m)
        cup = cup_constants(pp.l3 + 1, pp.delta, pp.l2, m)
        data["main"] = {"parity": mc.parity, "scalar": render(mc.scalar)}
        data["aux"] = _aux_dict(aux)
        data["cup"] = {"C": cup.C, "prefactor": render(cup.prefactor), "sign_flip": cup.sign_flip}
    return data


def _aux_dict(aux) -> dict:
    from .scalar import render

    return {
        "modified_exponent": aux.modified_exponent,
        "nabla_tilde_coefficient": render(aux.nabla_tilde_coefficient),
        "e_inf_constant": aux.e_inf_constant,
        "omega_pi2": aux.omega_pi2,
        "omega_pi3": aux.omega_pi3,
    }


def cmd_gamma(args) -> tuple:
    from .lfactors import epsilon_exponent, gamma_factor

    pp = _pi_params(args)
    pair = pp.pair()
    g = gamma_factor(pair)
    return {
        "pi2": str(pp.pi2()),
        "pi3": str(pp.pi3()),
        "pair": str(pair),
        "gamma": str(g),
        "gamma_at_s_minus_3/2": str(g.shifted(Fraction(-3, 2))),
        "epsilon_exponent": epsilon_exponent(pair),
    }, 0


def cmd_constant(args) -> tuple:
    from .lfactors import aux_constants, main_constant
    from .scalar import render

    pp = _pi_params(args)
    mc = main_constant(pp, args.m)
    out = {"parity": mc.parity, "scalar": render(mc.scalar)}
    if args.aux:
        aux = aux_constants(pp, args.m)
        out["aux"] = _aux_dict(aux)
    return out, 0


def cmd_pmatrix(args) -> tuple:
    from .escoh import build_script_P
    from .poly import render_poly

    sp = build_script_P(args.lambda3, args.delta)
    rows = [[render_poly(p) for p in row] for row in sp.polys()]
    return {"lambda3": sp.lambda3, "delta": sp.delta, "weight": [sp.w] * 3, "rows": rows}, 0


def _fractions(text: str, count: int) -> list:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != count:
        raise UsageError(f"expected {count} numbers, got {len(parts)}")
    try:
        return [Fraction(p) for p in parts]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_mmatrix(args) -> tuple:
    from .orthrep import OrthWeight3, cayley_so3, matrix_M

    a, b, c = _fractions(args.cayley, 3)
    u = cayley_so3(a, b, c)
    m = matrix_M(OrthWeight3(args.lam, args.delta), u)
    return {"lam": args.lam, "delta": args.delta, "u": linalg.render(u), "matrix": linalg.render(m)}, 0


def cmd_iwasawa(args) -> tuple:
    import numpy as np

    from .geom import iwasawa_gl3, iwasawa_residual

    g = np.array([float(x) for x in _fractions(args.matrix, 9)]).reshape(3, 3)
    coords = iwasawa_gl3(g)
    rel, orth = iwasawa_residual(g, coords)
    return {
        "coords": dict(zip(("y1", "y2", "x1", "x2", "x3"), coords.as_tuple())),
        "scale": coords.scale,
        "residual": rel,
        "orthogonality_defect": orth,
    }, 0


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="branchkit", description="Exact checks and calculators for GL(3) x GL(2) branching.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification battery")
    v.add_argument("--suite", required=True, choices=checks.SUITES + ("all",))
    v.add_argument("--max-weight", type=int, default=None, help="size cap (defaults per suite)")
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--json", metavar="PATH", help="also write the report to PATH")
    v.add_argument("--tol", type=float, default=1e-10, help="geom residual tolerance")
    v.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical reports)")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("branch", help="GL(2) constituents of L3(w)")
    b.add_argument("--w1p", type=int, required=True)
    b.add_argument("--w1m", type=int, required=True)
    b.add_argument("--w2", type=int, default=0)
    b.set_defaults(func=cmd_branch)

    for name, func, helptext in (("critical", cmd_critical, "critical points"),
                                 ("gamma", cmd_gamma, "Weil parameters and Gamma factor"),
                                 ("constant", cmd_constant, "scalar of the main formula")):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("--l2", type=int, required=True)
        c.add_argument("--l3", type=int, required=True)
        c.add_argument("--delta", type=int, default=0, choices=(0, 1))
        if name == "critical":
            c.add_argument("--m", type=int, default=None, help="also report Hodge types and constants at m")
        if name == "constant":
            c.add_argument("--m", type=int, required=True)
            c.add_argument("--aux", action="store_true", help="include the auxiliary constants")
        c.set_defaults(func=func)

    pm = sub.add_parser("pmatrix", help="the (2*lambda3+1) x 7 coefficient matrix")
    pm.add_argument("--lambda3", type=int, required=True)
    pm.add_argument("--delta", type=int, default=0, choices=(0, 1))
    pm.set_defaults(func=cmd_pmatrix)

    mm = sub.add_parser("mmatrix", help="M_lambda(u) at the Cayley point u(a, b, c)")
    mm.add_argument("--lambda", "--lam", dest="lam", type=int, required=True)
    mm.add_argument("--delta", type=int, default=0, choices=(0, 1))
    mm.add_argument("--cayley", required=True, metavar="A,B,C")
    mm.set_defaults(func=cmd_mmatrix)

    iw = sub.add_parser("iwasawa", help="Iwasawa coordinates of a real 3x3 matrix")
    iw.add_argument("--matrix", required=True, metavar="G11,...,G33", help="nine entries, row major")
    iw.set_defaults(func=cmd_iwasawa)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except (UsageError, ValueError, KeyError, ArithmeticError) as exc:
        print(f"branchkit: error: {exc}", file=sys.stderr)
        return 2
    print(dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
