"""Command-line surface over every verification and computation.

Each subcommand produces a CommandResult with a status in {ok, fail,
error}, a JSON-serializable payload and the elapsed wall time in
milliseconds.  A "fail" means the requested identities were checked and
some were violated; the payload then carries the list of violated
identities.  An "error" means the command could not run (bad input,
malformed file) and the payload carries a diagnostic.  Exit codes follow
the status: 0 for ok, 1 for fail, 2 for error.  Text and JSON output
modes report the same verdict; only the rendering differs.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .affine import (AffineError, EvalPoint, affine_context,
                     decompose_into_strings, drinfeld_polynomial,
                     irreducibility_test, spectral_checks, string_of,
                     trig_r_matrix)
from .classical import (casimir_invariance, cobracket_checks, cybe_defect,
                        standard_r, yang_cybe_check)
from .double import (build_borel_minus, build_borel_plus, build_small_uqsl2,
                     drinfeld_double, quasitriangular_check,
                     small_quantum_group)
from .hopf import (FiniteHopfData, HopfError, build_function_algebra,
                   build_group_algebra, build_nichols, build_taft,
                   group_table_cyclic, group_table_s3, pentagon_cocycle_check,
                   verify_hopf_axioms)
from .scalars import (CyclotomicField, FieldError, FractionField,
                      RationalField, Scalar)
from .uqsl2 import (RepresentationError, braiding_checks, decompose_type_I,
                    irrep, tensor_rep, universal_r_action)
from .yangian import (ShiftParam, YangianError, dominant_monomials,
                      eval_module_T, frt_check, qchar_from_module,
                      qchar_multiply)


@dataclass
class CommandResult:
    """Outcome of one invocation: verdict, payload and wall time (ms)."""

    status: str
    payload: object
    timing: float

    def to_json(self) -> dict:
        return {"status": self.status, "payload": self.payload,
                "timing": self.timing}


class CliError(ValueError):
    pass


# -- the named-algebra registry -------------------------------------------

def _taft(n: int) -> FiniteHopfData:
    if n == 2:
        qq = RationalField()
        return build_taft(2, Scalar(qq, qq.from_int(-1)))
    return build_taft(n, CyclotomicField(n).zeta())


ZOO = {
    "group-z2": lambda: build_group_algebra(group_table_cyclic(2)),
    "group-z3": lambda: build_group_algebra(group_table_cyclic(3)),
    "group-s3": lambda: build_group_algebra(group_table_s3()),
    "fun-z2": lambda: build_function_algebra(group_table_cyclic(2)),
    "fun-z3": lambda: build_function_algebra(group_table_cyclic(3)),
    "fun-s3": lambda: build_function_algebra(group_table_s3()),
    "taft-2": lambda: _taft(2),
    "taft-3": lambda: _taft(3),
    "taft-5": lambda: _taft(5),
    "nichols-1": lambda: build_nichols(1),
    "nichols-2": lambda: build_nichols(2),
    "nichols-3": lambda: build_nichols(3),
    "borel-plus-3": lambda: build_borel_plus(3),
    "borel-plus-5": lambda: build_borel_plus(5),
    "borel-minus-3": lambda: build_borel_minus(3),
    "borel-minus-5": lambda: build_borel_minus(5),
    "small-uqsl2-3": lambda: build_small_uqsl2(3),
    "small-uqsl2-5": lambda: build_small_uqsl2(5),
}


def _load_hopf(target: str) -> FiniteHopfData:
    """A zoo name, or a path to a JSON file in the FiniteHopfData schema."""
    if target in ZOO:
        return ZOO[target]()
    if target.endswith(".json") or os.path.exists(target):
        with open(target, encoding="utf-8") as fh:
            return FiniteHopfData.from_json(json.load(fh))
    raise CliError(f"unknown algebra {target!r}; known names: "
                   + ", ".join(sorted(ZOO)))


# -- argument parsing helpers ----------------------------------------------

_SHIFT_RE = re.compile(r"^([A-Za-z]\w*)?([+-].+)?$")


def _parse_shift(text: str) -> ShiftParam:
    """A spectral parameter: a symbol, a rational, or symbol+-rational
    (e.g. "a", "a+1/2", "-3/2")."""
    text = text.strip()
    try:
        return ShiftParam("", Fraction(text))
    except ValueError:
        pass
    m = _SHIFT_RE.match(text)
    if not m or not m.group(1):
        raise CliError(f"cannot parse parameter {text!r}")
    offset = Fraction(0)
    if m.group(2):
        try:
            offset = Fraction(m.group(2))
        except ValueError:
            raise CliError(f"cannot parse parameter {text!r}") from None
    return ShiftParam(m.group(1), offset)


def _parse_multiset(spec: str) -> list:
    """Points on the q^2 lattice, as "base:p1,p2,..." groups separated by
    semicolons; position p means base * q^(2p)."""
    points = []
    for group in spec.split(";"):
        group = group.strip()
        if not group:
            continue
        base, _, rest = group.partition(":")
        if not rest:
            raise CliError(f"multiset group {group!r} needs base:positions")
        for tok in rest.split(","):
            points.append(EvalPoint(base.strip(), 2 * int(tok)))
    if not points:
        raise CliError("empty multiset")
    return points


def _parse_factors(spec: str) -> list:
    """Evaluation factors "m@base:k" (highest weight m at base * q^k),
    comma-separated; the base may be omitted for the unit."""
    factors = []
    for tok in spec.split(","):
        tok = tok.strip()
        m_part, _, point = tok.partition("@")
        if not point:
            raise CliError(f"factor {tok!r} needs the form m@base:qexp")
        base, _, exp = point.partition(":")
        if not exp:
            base, exp = "1", base
        factors.append((int(m_part), EvalPoint(base.strip() or "1",
                                               int(exp))))
    if not factors:
        raise CliError("empty factor list")
    return factors


def _parse_product(spec: str) -> list:
    """Character factors "m@param" (e.g. "1@a,1@a+1")."""
    out = []
    for tok in spec.split(","):
        m_part, _, param = tok.strip().partition("@")
        if not param:
            raise CliError(f"factor {tok!r} needs the form m@param")
        out.append((int(m_part), _parse_shift(param)))
    if not out:
        raise CliError("empty factor list")
    return out


def _verdict(report: dict) -> tuple:
    """(status, violations) from a report of per-identity booleans,
    optionally with "passed" and "failed_axioms" summary entries."""
    bad = [k for k, v in report.items()
           if k != "passed" and isinstance(v, bool) and not v]
    bad.extend(report.get("failed_axioms", []))
    passed = report.get("passed", not bad)
    return ("ok" if passed and not bad else "fail"), bad


# -- subcommand handlers -----------------------------------------------------

def _cmd_hopf_verify(args) -> tuple:
    H = _load_hopf(args.target)
    report = verify_hopf_axioms(H)
    status, bad = _verdict(report)
    return status, {"name": H.name, "dim": H.dim, "checks": report,
                    "violations": bad}


def _cmd_hopf_double(args) -> tuple:
    H = _load_hopf(args.target)
    D, R = drinfeld_double(H)
    report = quasitriangular_check(D, R)
    status, bad = _verdict(report)
    return status, {"name": H.name, "dim": D.dim, "checks": report,
                    "violations": bad}


def _cmd_hopf_small_qgroup(args) -> tuple:
    Q, R = small_quantum_group(args.ell)
    report = quasitriangular_check(Q, R)
    status, bad = _verdict(report)
    return status, {"dim": Q.dim,
                    "qybe": "pass" if report["qybe"] else "fail",
                    "checks": report, "violations": bad}


def _cmd_cocycle_check(args) -> tuple:
    with open(args.group, encoding="utf-8") as fh:
        table = json.load(fh)
    with open(args.alpha, encoding="utf-8") as fh:
        raw = json.load(fh)
    try:
        alpha = {tuple(key): value for key, value in raw}
    except (TypeError, ValueError):
        raise CliError("alpha file must be a JSON list of [[i,j,k], value] "
                       "pairs") from None
    good = pentagon_cocycle_check(table, alpha)
    if good:
        return "ok", {"cocycle": True, "violations": []}
    return "fail", {"cocycle": False, "violations": ["pentagon"]}


def _cmd_uqsl2_decompose(args) -> tuple:
    ms = [int(tok) for tok in args.factors.split(",")]
    if not ms:
        raise CliError("empty factor list")
    X = irrep(ms[0])
    for m in ms[1:]:
        X = tensor_rep(X, irrep(m))
    return "ok", {"factors": ms, "summands": decompose_type_I(X)}


def _cmd_uqsl2_rmatrix(args) -> tuple:
    X, Y = irrep(args.x), irrep(args.y)
    r = universal_r_action(X, Y)
    ctx = X.ctx
    return "ok", {"dim": X.dim * Y.dim,
                  "matrix": [[ctx.to_str(v) for v in row] for row in r]}


def _cmd_uqsl2_braid_check(args) -> tuple:
    X = irrep(args.m)
    report = braiding_checks(X, X, X)
    status, bad = _verdict(report)
    return status, {"m": args.m, "checks": report, "violations": bad}


def _cmd_classical(args) -> tuple:
    qq = RationalField()
    if args.which == "cybe":
        r = standard_r(qq)
        report = {"cybe_defect_zero": cybe_defect(r).is_zero(),
                  "casimir_invariance": casimir_invariance(
                      r.add(r.flip21()))}
    elif args.which == "cobracket":
        report = dict(cobracket_checks(standard_r(qq)))
    else:
        report = {"yang_cybe": yang_cybe_check()}
    status, bad = _verdict(report)
    return status, {"checks": report, "violations": bad}


def _cmd_affine_strings(args) -> tuple:
    points = _parse_multiset(args.multiset)
    strings = decompose_into_strings(points)
    payload = [{"base": s.start.base, "position": s.start.qexp // 2,
                "length": s.length} for s in strings]
    return "ok", {"strings": payload,
                  "lengths": [s.length for s in strings]}


def _cmd_affine_irreducible(args) -> tuple:
    factors = _parse_factors(args.factors)
    strings = [str(string_of(m, z)) for m, z in factors]
    return "ok", {"irreducible": irreducibility_test(factors),
                  "strings": strings}


def _cmd_affine_rmatrix(args) -> tuple:
    if args.check:
        report = spectral_checks()
        status, bad = _verdict(report)
        return status, {"checks": report, "violations": bad}
    ctx = affine_context("z")
    r = trig_r_matrix(ctx, ctx.gen_raw("z"))
    return "ok", {"ratio": "z",
                  "matrix": [[ctx.to_str(v) for v in row] for row in r]}


def _cmd_affine_drinfeld_poly(args) -> tuple:
    factors = _parse_factors(args.factors)
    bases = sorted({z.base for _, z in factors if z.base != "1"})
    var = "t" if "z" in bases else "z"
    ctx = affine_context(*bases, var)
    poly = drinfeld_polynomial(factors, ctx, ctx.gen_raw(var))
    return "ok", {"variable": var, "polynomial": ctx.to_str(poly)}


def _cmd_yangian_frt(args) -> tuple:
    if args.dim < 1:
        raise CliError("dimension must be positive")
    ctx = FractionField("u", "v")
    good = frt_check(eval_module_T(ctx, args.dim - 1))
    if good:
        return "ok", {"dim": args.dim, "frt": "pass", "violations": []}
    return "fail", {"dim": args.dim, "frt": "fail",
                    "violations": ["frt-exchange"]}


def _cmd_yangian_qchar(args) -> tuple:
    a = _parse_shift(args.a)
    chi = qchar_from_module(args.m, a)
    return "ok", {"m": args.m, "a": str(a) or "0", "display": str(chi),
                  "character": chi.to_json()}


def _cmd_yangian_dominant(args) -> tuple:
    factors = _parse_product(args.product)
    chi = None
    for m, a in factors:
        piece = qchar_from_module(m, a)
        chi = piece if chi is None else qchar_multiply(chi, piece)
    mons = dominant_monomials(chi)
    return "ok", {"count": len(mons), "monomials": [str(y) for y in mons],
                  "display": str(chi)}


# -- driver ------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subparser's default from clobbering a value the
    # outer parser already set when the flag precedes the subcommand
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"),
                     default=argparse.SUPPRESS)

    top = argparse.ArgumentParser(prog="qgroups", parents=[fmt])
    sub = top.add_subparsers(dest="command", required=True)

    hopf = sub.add_parser("hopf", parents=[fmt]).add_subparsers(
        dest="action", required=True)
    p = hopf.add_parser("verify", parents=[fmt])
    p.add_argument("target")
    p.set_defaults(handler=_cmd_hopf_verify)
    p = hopf.add_parser("double", parents=[fmt])
    p.add_argument("target")
    p.set_defaults(handler=_cmd_hopf_double)
    p = hopf.add_parser("small-qgroup", parents=[fmt])
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(handler=_cmd_hopf_small_qgroup)

    coc = sub.add_parser("cocycle", parents=[fmt]).add_subparsers(
        dest="action", required=True)
    p = coc.add_parser("check", parents=[fmt])
    p.add_argument("--group", required=True)
    p.add_argument("--alpha", required=True)
    p.set_defaults(handler=_cmd_cocycle_check)

    uq = sub.add_parser("uqsl2", parents=[fmt]).add_subparsers(
        dest="action", required=True)
    p = uq.add_parser("decompose", parents=[fmt])
    p.add_argument("--factors", required=True)
    p.set_defaults(handler=_cmd_uqsl2_decompose)
    p = uq.add_parser("rmatrix", parents=[fmt])
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.set_defaults(handler=_cmd_uqsl2_rmatrix)
    p = uq.add_parser("braid-check", parents=[fmt])
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(handler=_cmd_uqsl2_braid_check)

    cl = sub.add_parser("classical", parents=[fmt])
    cl.add_argument("which", choices=("cybe", "cobracket", "yang"))
    cl.set_defaults(handler=_cmd_classical)

    af = sub.add_parser("affine", parents=[fmt]).add_subparsers(
        dest="action", required=True)
    p = af.add_parser("strings", parents=[fmt])
    p.add_argument("--multiset", required=True)
    p.set_defaults(handler=_cmd_affine_strings)
    p = af.add_parser("irreducible", parents=[fmt])
    p.add_argument("--factors", required=True)
    p.set_defaults(handler=_cmd_affine_irreducible)
    p = af.add_parser("rmatrix", parents=[fmt])
    p.add_argument("--check", action="store_true")
    p.set_defaults(handler=_cmd_affine_rmatrix)
    p = af.add_parser("drinfeld-poly", parents=[fmt])
    p.add_argument("--factors", required=True)
    p.set_defaults(handler=_cmd_affine_drinfeld_poly)

    ya = sub.add_parser("yangian", parents=[fmt]).add_subparsers(
        dest="action", required=True)
    p = ya.add_parser("frt", parents=[fmt])
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(handler=_cmd_yangian_frt)
    p = ya.add_parser("qchar", parents=[fmt])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", required=True)
    p.set_defaults(handler=_cmd_yangian_qchar)
    p = ya.add_parser("dominant", parents=[fmt])
    p.add_argument("--product", required=True)
    p.set_defaults(handler=_cmd_yangian_dominant)
    return top


def _render_text(result: CommandResult) -> str:
    lines = [f"status: {result.status}"]

    def walk(value, indent, label=None):
        pad = "  " * indent
        head = f"{pad}{label}: " if label is not None else pad
        if isinstance(value, dict):
            lines.append(head.rstrip(": ") + ":" if label else head)
            for k, v in value.items():
                walk(v, indent + 1, k)
        elif isinstance(value, list):
            if all(not isinstance(v, (dict, list)) for v in value):
                lines.append(head + "[" + ", ".join(map(str, value)) + "]")
            else:
                lines.append(head.rstrip(": ") + ":")
                for v in value:
                    walk(v, indent + 1, "-")
        else:
            lines.append(head + str(value))

    walk(result.payload, 0, "payload")
    lines.append(f"timing: {result.timing:.1f} ms")
    return "\n".join(lines)


def _execute(args) -> CommandResult:
    start = time.perf_counter()
    try:
        status, payload = args.handler(args)
    except (CliError, HopfError, AffineError, YangianError,
            RepresentationError, FieldError, ValueError, KeyError,
            OSError, json.JSONDecodeError) as exc:
        status, payload = "error", {"diagnostic": str(exc)}
    timing = (time.perf_counter() - start) * 1000.0
    return CommandResult(status, payload, timing)


def run(argv) -> CommandResult:
    """Parse and execute one invocation; never raises on domain errors."""
    return _execute(_build_parser().parse_args(argv))


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    result = _execute(args)
    if getattr(args, "format", "text") == "json":
        print(json.dumps(result.to_json()))
    else:
        print(_render_text(result))
    return {"ok": 0, "fail": 1}.get(result.status, 2)


if __name__ == "__main__":
    sys.exit(main())
