"""Command-line entry point: one subcommand per module, JSON on stdout.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors. Rationals are written as strings and floats with 17 significant
digits so that identical invocations give byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import List, Sequence

import numpy as np

from . import intertwining as itw
from .cocycle_lab import cocycle_lab_report
from .oracles import QuadratureError, quad_fourier
from .root_data import dim_pi_prime, dims, make_pair
from .scalar_algebra import rat, rat_str
from .special_functions import (appendix_suite, fourier_pair, poly_P2, poly_Pm2, poly_Q)
from .symplectic_geometry import (MatrixOverD, derivative_order_bound, homogeneity_gap,
                                  homogeneity_gap_listed, max_orbit_index, orbit_table,
                                  stable_range_equality, stable_range_predicate)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Malformed arguments detected after argparse."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _clean(obj):
    """Make an object JSON-ready: rationals to strings, floats to 17 digits."""
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, (bool, np.bool_)) or obj is None or isinstance(obj, str):
        return bool(obj) if isinstance(obj, np.bool_) else obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.17g}")
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(obj.real), _clean(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _clean(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _mu(text: str) -> List[Fraction]:
    try:
        return [rat(Fraction(t.strip())) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --mu {text!r}: {exc}") from exc


def _matrix(text: str) -> np.ndarray:
    """Parse a JSON matrix; entries are numbers, [re, im] pairs or complex strings."""
    try:
        rows = json.loads(text)
        out = [[complex(*x) if isinstance(x, list) else complex(x) for x in r] for r in rows]
        arr = np.array(out, dtype=complex)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad --w matrix: {exc}") from exc
    if arr.ndim != 2:
        raise UsageError("--w must be a 2-d matrix")
    return arr


def _pair(args):
    try:
        return make_pair(args.algebra, args.g, args.d, args.dprime, args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# --------------------------------------------------------------------------
# subcommands; each returns (document, ok)
# --------------------------------------------------------------------------


def cmd_pair_info(args):
    pair = _pair(args)
    doc = pair.to_json()
    doc["dims"] = dims(pair)
    doc["max_orbit_index"] = max_orbit_index(pair)
    doc["homogeneity_gap"] = homogeneity_gap(pair)
    doc["homogeneity_gap_listed"] = homogeneity_gap_listed(pair)
    doc["stable_range_equality"] = stable_range_equality(pair)
    doc["stable_range_predicate"] = stable_range_predicate(pair)
    if pair.l <= pair.l_prime:
        doc["derivative_order_bound"] = derivative_order_bound(pair)
    return doc, True


def cmd_poly(args):
    e = (args.a, args.b)
    if args.branch == "2":
        doc = {"P2": poly_P2(e).to_json()}
    elif args.branch == "-2":
        doc = {"Pm2": poly_Pm2(e).to_json()}
    elif args.branch == "q":
        doc = {"Q": poly_Q(e).to_json()}
    else:
        doc = fourier_pair(e).to_json()
    return {"a": args.a, "b": args.b, "branch": args.branch, **doc}, True


def cmd_fourier_check(args):
    rows, ok, worst = [], True, 0.0
    xis = [Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2)]
    for a in range(args.amin, args.amax + 1):
        for b in range(args.amin, args.amax + 1):
            if a + b < 1:
                continue
            for xi in xis:
                exact = fourier_pair((a, b)).value(float(xi))
                try:
                    num = quad_fourier(a, b, xi)
                    res = abs(num - exact) / max(abs(exact), 1.0)
                except QuadratureError as exc:
                    print(f"quadrature failed at {(a, b, xi)}: {exc}", file=sys.stderr)
                    res = float("inf")
                worst = max(worst, res)
                ok = ok and res <= args.tol
                rows.append({"a": a, "b": b, "xi": xi, "residual": res})
    return {"tol": args.tol, "cases": len(rows), "worst": worst, "rows": rows, "ok": ok}, ok


def cmd_orbit_dims(args):
    if args.algebra == "C" and args.p is None and args.q is None:
        # the orbit chain needs an indefinite form; default to the split signature
        args.p = args.dprime // 2
    pair = _pair(args)
    rows = [{"k": o.k, "dim": o.dim, "degree": o.degree} for o in orbit_table(pair)]
    return {"pair": pair.name, "rows": rows}, True


def cmd_correspond(args):
    mu = _mu(args.mu)
    try:
        mup = itw.correspond(mu, args.l, args.lprime)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return {"l": args.l, "l_prime": args.lprime, "mu": mu, "mu_prime": list(mup)}, True


def cmd_dim(args):
    mu = _mu(args.mu)
    if not itw.admissible(mu, args.l, args.lprime):
        raise UsageError("mu is not admissible")
    a = dim_pi_prime(mu, args.l, args.lprime)
    b = itw.correspond_dimension(mu, args.l, args.lprime)
    ok = a == b
    return {"mu": mu, "dim_pi_prime": a, "weyl_dimension": b, "ok": ok}, ok


def cmd_mult_one(args):
    rep = itw.multiplicity_one_check(args.l, args.lprime, args.max_mu)
    return rep.to_json(), rep.ok


def cmd_identities(args):
    t0 = time.perf_counter()
    rep = appendix_suite(args.bound)
    doc = rep.to_json()
    doc["wall_time"] = round(time.perf_counter() - t0, 3) if args.timing else None
    return doc, rep.ok


def cmd_cocycle_check(args):
    doc = cocycle_lab_report(args.dim, args.samples, args.seed)
    return doc, doc["ok"]


def cmd_toy(args):
    sign = {"plus": 1, "minus": -1, "+": 1, "-": -1}[args.sign]
    toy = itw.o1_sp_toy(args.n, sign)
    return {"delta": toy.delta_coeff, "lebesgue": toy.lebesgue_coeff}, True


def cmd_eval(args):
    mu = _mu(args.mu)
    w = _matrix(args.w)
    if w.shape != (args.lprime, args.l):
        raise UsageError(f"--w must be {args.lprime} x {args.l}")
    try:
        prof = itw.uu_distribution(mu, args.l, args.lprime)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return itw.eval_uu(prof, MatrixOverD("C", w)), True


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="artifact", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def pair_flags(sp):
        sp.add_argument("--algebra", required=True, choices=["R", "C", "H"])
        sp.add_argument("--g", default=None, help="O, U or Sp (inferred from --algebra)")
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--dprime", type=int, required=True)
        sp.add_argument("--p", type=int, default=None)
        sp.add_argument("--q", type=int, default=None)

    def ll_flags(sp):
        sp.add_argument("--l", type=int, required=True)
        sp.add_argument("--lprime", type=int, required=True)

    sp = sub.add_parser("pair-info")
    pair_flags(sp)
    sp.set_defaults(func=cmd_pair_info)

    sp = sub.add_parser("poly")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--branch", default="pair", choices=["2", "-2", "q", "pair"])
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("fourier-check")
    sp.add_argument("--amin", type=int, default=-4)
    sp.add_argument("--amax", type=int, default=4)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.set_defaults(func=cmd_fourier_check)

    sp = sub.add_parser("orbit-dims")
    pair_flags(sp)
    sp.set_defaults(func=cmd_orbit_dims)

    sp = sub.add_parser("correspond")
    ll_flags(sp)
    sp.add_argument("--mu", required=True, help="comma-separated rationals")
    sp.set_defaults(func=cmd_correspond)

    sp = sub.add_parser("dim")
    ll_flags(sp)
    sp.add_argument("--mu", required=True)
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("mult-one")
    ll_flags(sp)
    sp.add_argument("--max-mu", type=int, default=6)
    sp.set_defaults(func=cmd_mult_one)

    sp = sub.add_parser("identities")
    sp.add_argument("--bound", type=int, default=8)
    sp.add_argument("--timing", action="store_true", help="include wall time (not reproducible)")
    sp.set_defaults(func=cmd_identities)

    sp = sub.add_parser("cocycle-check")
    sp.add_argument("--dim", type=int, default=3)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_cocycle_check)

    sp = sub.add_parser("toy-o1sp")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sign", default="plus", choices=["plus", "minus", "+", "-"])
    sp.set_defaults(func=cmd_toy)

    sp = sub.add_parser("eval-distribution")
    ll_flags(sp)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--w", required=True, help="JSON matrix, l' rows and l columns")
    sp.set_defaults(func=cmd_eval)
    return p


_DEFAULT_G = {"R": "O", "C": "U", "H": "Sp"}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    """Parse ``argv``, run the subcommand and print one JSON document."""
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if getattr(args, "algebra", None) and args.g is None:
            args.g = _DEFAULT_G[args.algebra]
        doc, ok = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    print(json.dumps(_clean(doc), sort_keys=True), file=out)
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
