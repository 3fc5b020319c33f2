"""Command-line front end. Every subcommand writes one JSON document.

Exit status: 0 on success, 1 on a domain error (with a JSON error object on
stdout), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import __version__
from .certify import (CertifyError, DEFAULT_COEFF_BOUND, DEFAULT_J_ALPHA, DEFAULT_J_BETA,
                      obstruct_combination, obstruct_single, verify_reduction_lemma)
from .cover import CoverError, cover_homology
from .knots import (Companion, InfiniteHomologyError, KnotError, KnotExpr, SatelliteKnot,
                    SeifertMatrix, alexander, difference_with_reverse, expr_from_json)
from .metabolizer import (DEFAULT_BUDGET, MetabolizerError, enumerate_metabolizers,
                          equivariant_metabolizers_direct)
from .obstruction import (CGSignatureQuery, DLedger, SignatureError, exists_negative_b,
                          is_d_norm, levine_tristram, shipped_ledger_path, signature_profile,
                          signature_sum)
from .primegen import SearchExhausted, DEFAULT_SCAN_BOUND, family_from_jsonl, generate_family

LEDGER_ENV = "KNOTCERT_LEDGER"

DOMAIN_ERRORS = (KnotError, CoverError, InfiniteHomologyError, CertifyError, MetabolizerError,
                 SignatureError, SearchExhausted, ArithmeticError, ValueError, KeyError,
                 OSError, json.JSONDecodeError)


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        kw.setdefault("allow_abbrev", False)
        super().__init__(*a, **kw)


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _matrix(data) -> SeifertMatrix:
    """A Seifert matrix from a bare matrix, {"seifert": M}, or a knot record."""
    if isinstance(data, list) and all(isinstance(r, list) and all(isinstance(x, int) for x in r)
                                      for r in data):
        return SeifertMatrix.of(data)
    if isinstance(data, dict) and "seifert" in data:
        return SeifertMatrix.of(data["seifert"])
    return _expr(data).matrix


def _expr(data) -> KnotExpr:
    if isinstance(data, list) and all(isinstance(r, list) for r in data):
        return KnotExpr.of(SeifertMatrix.of(data))
    if isinstance(data, dict) and "seifert" in data:
        return KnotExpr.of(SeifertMatrix.of(data["seifert"]))
    return expr_from_json(data)


def _companion(path: Optional[str], index: int, default: Companion) -> Companion:
    if path is None:
        return default
    data = _load_json(path)
    m = _matrix(data)
    label = data.get("label", default.label) if isinstance(data, dict) else default.label
    neutral = bool(data.get("d_neutral", False)) if isinstance(data, dict) else False
    return Companion(index, m, label, neutral)


def _ledger(args) -> Optional[DLedger]:
    if getattr(args, "no_ledger", False):
        return None
    path = args.ledger or os.environ.get(LEDGER_ENV) or shipped_ledger_path()
    return DLedger.load(path)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# subcommands

def cmd_alexander(args):
    d = alexander(_matrix(_load_json(args.file)))
    return {"alexander": str(d), "coefficients": list(d.coeffs), "trivial": d.is_trivial()}


def cmd_cover(args):
    expr = _expr(_load_json(args.file))
    if args.difference:
        expr = expr + (-expr.reverse())
    h = cover_homology(expr.matrix, args.q)
    primes = args.eigen_prime or ([p for p in h.primes() if p != 2] if args.eigenspaces else [])
    return h.to_json(primes)


def cmd_metabolizers(args):
    expr = _expr(_load_json(args.file))
    if args.difference:
        expr = expr + (-expr.reverse())
    h = cover_homology(expr.matrix, args.q)
    out = {"q": args.q, "invariant_factors": list(h.invariant_factors), "order": h.order}
    ms = enumerate_metabolizers(h, args.budget, args.workers)
    eq = equivariant_metabolizers_direct(h, args.budget)
    out["count"] = len(ms)
    out["equivariant"] = {str(p): len(v) for p, v in sorted(eq.items())}
    if args.list:
        out["metabolizers"] = [m.to_json() for m in ms]
        out["equivariant_metabolizers"] = {str(p): [m.to_json() for m in v]
                                           for p, v in sorted(eq.items())}
    return out


def cmd_signature(args):
    v = _matrix(_load_json(args.file))
    if args.profile:
        samples = None
        if args.denominator:
            samples = [Fraction(k, args.denominator) for k in range(1, args.denominator // 2 + 1)]
        return {"profile": [{"r": r, "sigma": s} for r, s in signature_profile(v, samples)]}
    if args.r is not None:
        return {"r": _frac(args.r), "sigma": levine_tristram(v, args.r)}
    if args.p is None or args.c is None:
        raise ValueError("--sum and --negative-b need --p and --c")
    if args.negative_b:
        return {"p": args.p, "c": args.c, "b": exists_negative_b(v, args.p, args.c)}
    if args.b is None:
        raise ValueError("--sum needs --b")
    eps = 1 if args.epsilon is None else args.epsilon
    return {"p": args.p, "c": args.c, "b": args.b, "epsilon": eps,
            "signature_sum": signature_sum(CGSignatureQuery(v, args.p, args.c, args.b, eps))}


def cmd_dnorm(args):
    return is_d_norm(args.n, args.d).to_json()


def cmd_family(args):
    fam = generate_family(args.count, args.scan_bound, args.workers)
    fam.validate()
    if args.jsonl:
        return fam.to_jsonl()
    return [e.to_json() for e in fam.elements]


def _coeffs(s: str):
    out = {}
    for part in s.split(","):
        part = part.strip()
        if not part:
            continue
        n, _, a = part.partition("=")
        out[int(n)] = int(a)
    return out


def cmd_obstruct(args):
    ledger = _ledger(args)
    if args.family:
        with open(args.family, encoding="utf-8") as fh:
            fam = family_from_jsonl(fh.read())
        comps = (_companion(args.j_alpha, 1, DEFAULT_J_ALPHA),
                 _companion(args.j_beta, 0, DEFAULT_J_BETA))
        cert = obstruct_combination(fam, _coeffs(args.coeffs or ""), comps, ledger, args.q,
                                    args.coeff_bound, args.budget, args.workers)
        return cert.to_json()
    if args.file is None:
        raise ValueError("obstruct needs a knot file or --family")
    expr = _expr(_load_json(args.file))
    if args.difference:
        expr = expr + (-expr.reverse())
    return obstruct_single(expr, args.q, ledger, args.budget, args.workers).to_json()


def cmd_verify_reduction(args):
    expr = _expr(_load_json(args.file))
    return verify_reduction_lemma(expr, args.q, _ledger(args), args.budget)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="knotcert", description="Exact slicing-obstruction toolkit.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--out", help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def knot_cmd(name, fn, helptext):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file", help="knot JSON (knot record, term list, or Seifert matrix); - for stdin")
        p.set_defaults(fn=fn)
        return p

    def q_flag(p):
        p.add_argument("--q", type=int, default=3, help="cover degree (odd prime power)")

    def budget_flags(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--workers", type=int, default=1)

    def ledger_flags(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--ledger", help=f"d-invariant ledger JSON (default ${LEDGER_ENV} or the shipped one)")
        g.add_argument("--no-ledger", action="store_true")

    knot_cmd("alexander", cmd_alexander, "Alexander polynomial")

    p = knot_cmd("cover", cmd_cover, "branched-cover homology and linking form")
    q_flag(p)
    p.add_argument("--difference", action="store_true", help="use K # -rho(K)")
    p.add_argument("--eigenspaces", action="store_true")
    p.add_argument("--eigen-prime", type=int, action="append")

    p = knot_cmd("metabolizers", cmd_metabolizers, "metabolizer enumeration")
    q_flag(p)
    budget_flags(p)
    p.add_argument("--difference", action="store_true")
    p.add_argument("--list", action="store_true", help="include generators")

    p = knot_cmd("signature", cmd_signature, "Levine-Tristram signatures")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--r", type=_rational)
    g.add_argument("--profile", action="store_true")
    g.add_argument("--sum", action="store_true")
    g.add_argument("--negative-b", action="store_true")
    p.add_argument("--denominator", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--epsilon", type=int, choices=(0, 1))

    p = sub.add_parser("dnorm", help="d-norm test")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(fn=cmd_dnorm)

    p = sub.add_parser("family", help="prime-pair family search")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--scan-bound", type=int, default=DEFAULT_SCAN_BOUND)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--jsonl", action="store_true", help="emit JSON lines")
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("obstruct", help="obstruction certificate")
    p.add_argument("file", nargs="?")
    q_flag(p)
    budget_flags(p)
    ledger_flags(p)
    p.add_argument("--difference", action="store_true", help="certify K # -rho(K)")
    p.add_argument("--family", help="family JSONL file")
    p.add_argument("--coeffs", help="n=a_n list, e.g. 1=1,6=-1")
    p.add_argument("--coeff-bound", type=int, default=DEFAULT_COEFF_BOUND)
    p.add_argument("--j-alpha")
    p.add_argument("--j-beta")
    p.set_defaults(fn=cmd_obstruct)

    p = knot_cmd("verify-reduction", cmd_verify_reduction, "trivial-Alexander reduction check")
    q_flag(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    ledger_flags(p)
    return ap


def _emit(obj, out: Optional[str]):
    text = obj if isinstance(obj, str) else json.dumps(obj, sort_keys=True, indent=1,
                                                      ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        result = args.fn(args)
    except DOMAIN_ERRORS as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}}, None)
        return 1
    _emit(result, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
