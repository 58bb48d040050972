"""Command-line front end: ``etaq <command> ...``.

Exit codes: 0 success / property holds, 2 identity failure, 3 property
fails or counterexample found, 4 inconclusive (bounds or inapplicable),
64 usage error, 65 malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .analytics import enumerate_holomorphic, is_holomorphic, order_map, valence_check
from .core import (
    BoundExceeded,
    EtaQuotient,
    LevelError,
    ParseError,
    divisors,
    factorize,
    format_eta_quotient,
    parse_eta_quotient,
    weight_numerator,
)
from .family import build_F, build_f, verify_family, zn_membership
from .matrices import build_A, build_B, inverse_A, inverse_A_prime_power, smith_data, verify_proposition1
from .qseries import quotient_series
from .search import default_bound
from .simplicity import (
    CERTIFIED,
    DECOMPOSED,
    IRREDUCIBILITY_NOTE,
    PRIMITIVITY_NOTE,
    Factorization,
    conjecture_scan,
    coset_certificate,
    find_factorizations,
    is_primitive,
)

EXIT_OK = 0
EXIT_IDENTITY = 2
EXIT_FAILS = 3
EXIT_INCONCLUSIVE = 4
EXIT_USAGE = 64
EXIT_DATA = 65


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    payload: object
    stream: str = "stdout"

    def render(self) -> str:
        if isinstance(self.payload, str):
            return self.payload
        return json.dumps(_jsonable(self.payload), sort_keys=True)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")

    def exit(self, status=0, message=None):
        raise UsageError(message or "")


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, EtaQuotient):
        return format_eta_quotient(obj)
    if isinstance(obj, Factorization):
        return {"g": format_eta_quotient(obj.g), "h": format_eta_quotient(obj.h)}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _strings(M) -> list[list[str]]:
    return [[str(x) for x in row] for row in M]


def _fmt_orders(values) -> str:
    return ",".join(str(v) for v in values)


def _quotient(args, level_attr="level") -> EtaQuotient:
    X = parse_eta_quotient(args.expr)
    N = getattr(args, level_attr, None)
    if N is not None:
        X = X.at_level(N)
    return X


def _result(args, payload: dict, text: str, code: int = EXIT_OK) -> CommandResult:
    return CommandResult(code, payload if args.json else text)


def cmd_orders(args):
    X = _quotient(args)
    Y = order_map(X)
    lines = [f"ord at 1/{t} = {y}/24" for t, y in zip(divisors(Y.level), Y.values)]
    lines.append(f"orders/24 = {_fmt_orders(Y.values)}")
    payload = {"level": Y.level, "divisors": divisors(Y.level), "orders_24": Y.values,
               "orders": [f"{y}/24" for y in Y.values]}
    return _result(args, payload, "\n".join(lines))


def cmd_holo(args):
    X = _quotient(args)
    Y = order_map(X)
    holo = min(Y.values) >= 0
    text = f"{'holomorphic' if holo else 'not holomorphic'}, orders/24 = {_fmt_orders(Y.values)}"
    payload = {"level": Y.level, "holomorphic": holo, "orders_24": Y.values}
    return _result(args, payload, text, EXIT_OK if holo else EXIT_FAILS)


def cmd_valence(args):
    X = _quotient(args)
    r = valence_check(X)
    text = f"left = {r.left}, right = {r.right} ({'balanced' if r.balanced else 'UNBALANCED'})"
    payload = {"level": X.level, "left": r.left, "right": r.right, "balanced": r.balanced}
    return _result(args, payload, text, EXIT_OK if r.balanced else EXIT_IDENTITY)


def cmd_qexp(args):
    X = parse_eta_quotient(args.expr)
    s = quotient_series(X, args.terms)
    payload = {"leading_exponent": str(Fraction(s.leading_exponent_24, 24)), "coefficients": s.coefficients}
    return _result(args, payload, str(s))


def cmd_enum(args):
    found = enumerate_holomorphic(args.level, args.weight_num, bound=args.limit, workers=args.threads)
    payload = {"level": args.level, "weight_num": args.weight_num, "quotients": found}
    return _result(args, payload, "\n".join(format_eta_quotient(X) for X in found))


def cmd_matrix(args):
    N = args.level
    fac = factorize(N) if N > 1 else ()
    if args.kind == "A":
        payload = _strings(build_A(N).rows)
    elif args.kind == "Ainv":
        rows = inverse_A_prime_power(*fac[0]).rows if len(fac) == 1 else inverse_A(N).rows
        payload = _strings(rows)
    elif args.kind == "B":
        payload = _strings(build_B(N).rows)
    else:
        if len(fac) == 1:
            s = smith_data(*fac[0])
            mats = {"D": s.D, "U": s.U, "V": s.V, "Uprime": s.Uprime, "Vprime": s.Vprime}
        else:
            diag, U, V = linalg.smith_form(build_B(N).rows)
            mats = {"D": linalg.diagonal(diag), "U": U, "V": V,
                    "Uprime": linalg.to_int(linalg.inverse(U)), "Vprime": linalg.to_int(linalg.inverse(V))}
        payload = {k: _strings(v) for k, v in mats.items()}
    return CommandResult(EXIT_OK, json.dumps(payload))


def cmd_verify(args):
    ok = verify_proposition1(args.p, args.n)
    text = f"p={args.p} n={args.n}: UU'=I, VV'=I, D=UBV {'hold' if ok else 'FAIL'}"
    return _result(args, {"p": args.p, "n": args.n, "holds": ok}, text, EXIT_OK if ok else EXIT_IDENTITY)


def cmd_family(args):
    f = build_f(args.p, args.n)
    if not args.verify:
        return _result(args, {"p": args.p, "n": args.n, "exponents": f.exponents}, format_eta_quotient(f.exponents))
    r = verify_family(args.p, args.n)
    lines = [
        format_eta_quotient(r.exponents),
        f"level = {r.level}",
        f"holomorphic = {r.holomorphic}, orders/24 = {_fmt_orders(r.orders)}",
        f"palindromic = {r.palindromic}",
        f"ord_inf = {r.ord_inf_24}/24, ord_0 = {r.ord0_24}/24",
        f"weight = {r.weight_numerator}/2",
    ]
    lines += [f"FAIL: {msg}" for msg in r.failures]
    payload = {"exponents": r.exponents, "level": r.level, "holomorphic": r.holomorphic,
               "orders_24": r.orders, "palindromic": r.palindromic, "ord_inf_24": r.ord_inf_24,
               "ord0_24": r.ord0_24, "weight_num": r.weight_numerator, "failures": r.failures}
    return _result(args, payload, "\n".join(lines), EXIT_OK if r.ok else EXIT_FAILS)


def cmd_bigF(args):
    F = build_F(args.level)
    return _result(args, {"level": args.level, "F": F}, format_eta_quotient(F))


def cmd_zn(args):
    X = _quotient(args)
    z = zn_membership(X)
    text = f"C = {', '.join(str(c) for c in z.coefficients)}; {'member' if z.member else 'not a member'}"
    payload = {"level": X.level, "coefficients": z.coefficients, "member": z.member}
    return _result(args, payload, text, EXIT_OK if z.member else EXIT_FAILS)


def cmd_factor(args):
    X = _quotient(args)
    found = find_factorizations(X, limit=args.limit, bound=args.bound, workers=args.threads)
    lines = [f"{format_eta_quotient(f.g)}  *  {format_eta_quotient(f.h)}" for f in found]
    if not found:
        lines = [f"no factorization on Gamma0({X.level})"]
    return _result(args, {"level": X.level, "factorizations": found}, "\n".join(lines))


def cmd_simple(args):
    X = _quotient(args)
    primitive = is_primitive(X)
    factors = find_factorizations(X, limit=1, bound=args.bound)
    simple = primitive and not factors
    lines = [f"primitive = {primitive} ({PRIMITIVITY_NOTE})", f"quasi-irreducible = {not factors}"]
    if factors:
        lines.append(f"witness: {format_eta_quotient(factors[0].g)}  *  {format_eta_quotient(factors[0].h)}")
    lines.append(f"simple = {simple}")
    if simple and len(factorize(X.level)) == 1:
        lines.append(f"note: {IRREDUCIBILITY_NOTE}")
    payload = {"level": X.level, "primitive": primitive, "quasi_irreducible": not factors,
               "simple": simple, "witness": factors[0] if factors else None}
    return _result(args, payload, "\n".join(lines), EXIT_OK if simple else EXIT_FAILS)


def cmd_certify(args):
    c = coset_certificate(args.p, args.n, bound=args.bound)
    lines = [f"status: {c.status}"]
    if c.reason:
        lines.append(f"reason: {c.reason}")
    if isinstance(c.witness, Factorization):
        lines.append(f"witness: {format_eta_quotient(c.witness.g)}  *  {format_eta_quotient(c.witness.h)}")
    elif c.witness is not None:
        lines.append(f"witness class (l1, l2) = {c.witness}")
    if c.status == CERTIFIED:
        lines.append(f"note: {IRREDUCIBILITY_NOTE}")
    code = {CERTIFIED: EXIT_OK, DECOMPOSED: EXIT_FAILS}.get(c.status, EXIT_INCONCLUSIVE)
    payload = {"p": args.p, "n": args.n, "status": c.status, "reason": c.reason, "witness": c.witness}
    return _result(args, payload, "\n".join(lines), code)


def cmd_scan(args):
    r = conjecture_scan(args.p, args.n, args.max_weight_num, bound=args.bound)
    lines = [format_eta_quotient(X) + f"   (weight {weight_numerator(X)}/2)" for X in r.simple]
    lines.append(f"simple quotients found: {len(r.simple)}")
    if r.family_weight is not None:
        lines.append(f"family weight numerator: {r.family_weight}")
    lines.append(f"heavier simple quotients: {len(r.heavier_simple)}")
    lines.append(f"complete: {r.complete}" + (f" ({r.note})" if r.note else ""))
    if r.heavier_simple:
        code = EXIT_FAILS
    elif not r.complete:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK
    payload = {"p": r.p, "n": r.n, "max_weight_num": r.max_weight_num, "simple": r.simple,
               "family_weight": r.family_weight, "heavier_simple": r.heavier_simple,
               "complete": r.complete, "undecided": r.undecided, "note": r.note}
    return _result(args, payload, "\n".join(lines), code)


def selftest_checks(seed: int = 0):
    """Yield ``(name, ok)`` for the bundled consistency suite."""
    for p in (2, 3, 5, 7):
        for n in range(1, 9):
            yield f"matrix identities p={p} n={n}", verify_proposition1(p, n)
    rng = random.Random(seed)
    for N in (1, 2, 6, 12, 16, 30, 36, 60, 81, 210):
        divs = divisors(N)
        ok = True
        for _ in range(25):
            X = EtaQuotient.from_dict({d: rng.randint(-6, 6) for d in divs}, N)
            ok &= valence_check(X).balanced
        yield f"valence N={N}", ok
    for p, n in ((2, 4), (2, 6), (3, 4), (3, 6), (5, 4), (3, 5), (5, 5)):
        yield f"family p={p} n={n}", verify_family(p, n).ok


def cmd_selftest(args):
    results = list(selftest_checks())
    failed = [name for name, ok in results if not ok]
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    payload = {"passed": len(results) - len(failed), "total": len(results), "failed": failed}
    return _result(args, payload, "\n".join(lines), EXIT_IDENTITY if failed else EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="worker processes for searches")

    parser = _Parser(prog="etaq", description="Exact computations with eta quotients on Gamma0(N).")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_text, expr=False, level=None):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if level == "required":
            p.add_argument("--level", type=int, required=True)
        elif level == "optional":
            p.add_argument("--level", type=int, default=None)
        if expr:
            p.add_argument("expr", help='eta quotient, e.g. "1^-1 2^1 4^2 8^1 16^-1"')
        p.set_defaults(func=func)
        return p

    add("orders", cmd_orders, "orders at the cusps 1/t", expr=True, level="optional")
    add("holo", cmd_holo, "holomorphy test", expr=True, level="optional")
    add("valence", cmd_valence, "valence formula check", expr=True, level="optional")
    add("qexp", cmd_qexp, "q-expansion", expr=True).add_argument("--terms", type=int, default=10)
    p = add("enum", cmd_enum, "enumerate holomorphic eta quotients", level="required")
    p.add_argument("--weight-num", type=int, required=True)
    p.add_argument("--limit", type=int, default=None, help="search-space bound")
    p = add("matrix", cmd_matrix, "order matrix data as JSON", level="required")
    p.add_argument("kind", choices=["A", "Ainv", "B", "smith"])
    p = add("verify", cmd_verify, "verify matrix identities")
    p.add_argument("what", choices=["prop1"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = add("family", cmd_family, "the family f_{p,n}")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    add("bigF", cmd_bigF, "the eta quotient F_N", level="required")
    add("zn", cmd_zn, "Z_N membership", expr=True, level="optional")
    p = add("factor", cmd_factor, "factorizations on Gamma0(N)", expr=True, level="optional")
    p.add_argument("--limit", type=int, default=None, help="maximum number of factorizations")
    p.add_argument("--bound", type=int, default=None, help="search-box bound")
    p = add("simple", cmd_simple, "simplicity test", expr=True, level="optional")
    p.add_argument("--bound", type=int, default=None)
    p = add("certify", cmd_certify, "coset-congruence irreducibility certificate")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, default=None)
    p = add("scan", cmd_scan, "simple quotients of level p^n up to a weight")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-weight-num", type=int, required=True)
    p.add_argument("--bound", type=int, default=None)
    add("selftest", cmd_selftest, "bundled consistency suite")
    return parser


def run(argv) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise UsageError(parser.format_usage() + "etaq: error: a command is required")
    except UsageError as exc:
        return CommandResult(EXIT_USAGE, str(exc).strip() or parser.format_usage(), "stderr")
    if args.json and args.command == "matrix":
        args.json = False
    try:
        return args.func(args)
    except ParseError as exc:
        return CommandResult(EXIT_DATA, str(exc), "stderr")
    except LevelError as exc:
        return CommandResult(EXIT_DATA, f"level error: {exc}", "stderr")
    except BoundExceeded as exc:
        return CommandResult(EXIT_INCONCLUSIVE, f"{exc} (raise it with --limit/--bound or ETAQ_MAX_BOX)", "stderr")
    except ValueError as exc:
        return CommandResult(EXIT_DATA, f"error: {exc}", "stderr")


def main(argv=None) -> None:
    result = run(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if result.stream == "stdout" else sys.stderr
    text = result.render()
    if text:
        print(text, file=out)
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
