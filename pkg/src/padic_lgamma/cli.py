"""Command-line front end.

Input grammar (whitespace is ignored)::

    value   := expr [ "+" "O(" base "^" int ")" ]  |  "O(" base "^" int ")"
    expr    := ["+"|"-"] term { ("+"|"-") term }
    term    := factor { ("*"|"/") factor }
    factor  := atom [ "^" ["-"] int ]
    atom    := int | "p" | "g" | "(" expr ")"
    base    := int | "p"

``p`` stands for the prime and ``g`` for the generator of the unramified
extension.  Examples: ``3``, ``-7/4``, ``p^-2*5``, ``1/5 + 2*g``,
``3^2 * (1 + 2*g) + O(3^7)`` (the canonical output form parses back to the
same value).  Division is only by nonzero rationals; negative exponents are
only allowed on rationals.  ``O(p^A)`` truncates to absolute precision A.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    DomainError,
    PadicContext,
    PadicError,
    PadicNumber,
    ctx_new,
    from_poly,
    is_prime,
    rational_form,
    render,
    render_digits,
    teichmuller,
)
from .distribution import IDENTITIES, NEEDS_N, build_sequence, check_identity
from .logarithm import log_p
from .loggamma import (
    lambda_table,
    ld,
    lm,
    lm_series,
    lp,
    lp_prime,
    morita_gamma_nat,
    phi_p,
    rp_closed,
    rp_integral,
)
from .plan import Job, suite_plan
from .volkenborn import DEFAULT_DEPTH, ConvergencePolicy

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

GRAMMAR_HELP = """\
input grammar (whitespace-insensitive):
  a, a/b            rationals, e.g. 3, -7/4
  p^k*x             power-of-p prefix, e.g. p^-2*5 or 3^2*(1 + g)
  polynomials in g  with rational coefficients, e.g. "1/5 + 2*g", "g^2 - 1"
  ... + O(p^A)      optional absolute-precision bound
  p denotes the prime; g the generator of the degree-f extension.
"""


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\d+|[-+*/^()]|[pgO]")


def _tokenize(text: str) -> list[str]:
    s = "".join(text.split())
    if not s:
        raise ParseError("empty input")
    pos = 0
    out = []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ParseError(f"unexpected character {s[pos]!r} at {pos}")
        out.append(m.group())
        pos = m.end()
    return out


Poly = list  # list[Fraction], index = power of g


def _padd(a: Poly, b: Poly, sign: int = 1) -> Poly:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + sign * (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a: Poly, b: Poly) -> Poly:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _constant(a: Poly) -> Fraction | None:
    return a[0] if all(c == 0 for c in a[1:]) else None


class _Parser:
    def __init__(self, text: str, p: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.p = p

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'a token'}, found {tok or 'end of input'}")
        self.i += 1
        return tok

    def integer(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected an integer, found {tok!r}")
        return int(tok)

    def signed_integer(self) -> int:
        sign = 1
        if self.peek() in ("-", "+"):
            sign = -1 if self.take() == "-" else 1
        return sign * self.integer()

    def value(self) -> tuple[Poly, int | None]:
        """Exact polynomial and optional absolute precision bound."""
        if self.peek() == "O":
            bound = self.big_o()
            self.end()
            return [Fraction(0)], bound
        poly = self.expr(allow_o=True)
        bound = None
        if self.peek() == "O":
            bound = self.big_o()
        self.end()
        return poly, bound

    def end(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r} after expression")

    def big_o(self) -> int:
        self.take("O")
        self.take("(")
        base = self.take()
        if base != "p" and not (base.isdigit() and int(base) == self.p):
            raise ParseError(f"O(...) must use the prime {self.p}")
        self.take("^")
        a = self.signed_integer()
        self.take(")")
        return a

    def expr(self, allow_o: bool = False) -> Poly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = [sign * c for c in self.term()]
        while self.peek() in ("+", "-"):
            op = self.take()
            if allow_o and self.peek() == "O":
                if op != "+":
                    raise ParseError("precision bound must be added: + O(p^A)")
                break
            acc = _padd(acc, self.term(), 1 if op == "+" else -1)
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                acc = _pmul(acc, rhs)
            else:
                c = _constant(rhs)
                if c is None:
                    raise ParseError("division is only by nonzero rationals")
                if c == 0:
                    raise ParseError("division by zero")
                acc = [a / c for a in acc]
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek() != "^":
            return base
        self.take("^")
        e = self.signed_integer()
        if e < 0:
            c = _constant(base)
            if c is None or c == 0:
                raise ParseError("negative powers need a nonzero rational base")
            return [c**e]
        out: Poly = [Fraction(1)]
        for _ in range(e):
            out = _pmul(out, base)
        return out

    def atom(self) -> Poly:
        tok = self.take()
        if tok.isdigit():
            return [Fraction(int(tok))]
        if tok == "p":
            return [Fraction(self.p)]
        if tok == "g":
            return [Fraction(0), Fraction(1)]
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if tok == "-":
            return [-c for c in self.factor()]
        raise ParseError(f"unexpected {tok!r}")


def parse_poly(text: str, p: int) -> tuple[list[Fraction], int | None]:
    """Exact rational coefficients in g and the optional O(p^A) bound."""
    return _Parser(text, p).value()


def parse_value(text: str, ctx: PadicContext, prec: int | None = None) -> PadicNumber:
    """Parse a value in the input grammar into ``ctx``."""
    poly, bound = parse_poly(text, ctx.p)
    if bound is not None and all(c == 0 for c in poly):
        return ctx.zero(bound)
    try:
        x = from_poly(ctx, poly, prec)
    except ZeroDivisionError as exc:
        raise ParseError(str(exc)) from exc
    return x.truncate_abs(bound) if bound is not None else x


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class CliConfig:
    p: int
    f: int
    rel_prec: int
    N: int
    depth_max: int | None
    guard: int | None
    fmt: str
    seed: int

    def policy(self, target: int | None = None) -> ConvergencePolicy:
        over = {}
        if self.depth_max is not None:
            over["n_max"] = self.depth_max
            over["n_min"] = min(3, self.depth_max)
        if self.guard is not None:
            over["guard"] = self.guard
        return ConvergencePolicy.default(self.p, target_prec=self.N if target is None else target, **over)

    def context(self, f: int | None = None, policy: ConvergencePolicy | None = None) -> PadicContext:
        # values must carry more digits than the integration working precision
        pol = policy or self.policy()
        prec = max(self.rel_prec, pol.working_prec + 8)
        return ctx_new(self.p, self.f if f is None else f, prec)


def _config(args: argparse.Namespace) -> CliConfig:
    if not is_prime(args.p):
        raise ParseError(f"--p must be prime, got {args.p}")
    if args.f < 1:
        raise ParseError("--f must be >= 1")
    if args.prec < 1 or args.N < 1:
        raise ParseError("--prec and --N must be positive")
    if args.depth_max is not None and args.depth_max < 1:
        raise ParseError("--depth-max must be positive")
    if args.guard is not None and args.guard < 0:
        raise ParseError("--guard must be non-negative")
    return CliConfig(args.p, args.f, args.prec, args.N, args.depth_max, args.guard, args.format, args.seed)


# ---------------------------------------------------------------------------
# output


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2)


def _value_json(x: PadicNumber) -> dict:
    return {
        "value": render(x),
        "rational": rational_form(x),
        "digits": render_digits(x),
        "valuation": x.v if x.unit is not None else None,
        "abs_prec": x.abs_prec,
    }


def _emit_value(cfg: CliConfig, label: str, x: PadicNumber, extra: dict) -> None:
    if cfg.fmt == "json":
        print(_dump({"fn": label, **extra, **_value_json(x)}))
        return
    print(f"{label} = {render(x)}")
    form = rational_form(x)
    if form is not None:
        print(f"  rational form: {form}")
    print(f"  digits: {render_digits(x)}")
    for k, v in extra.items():
        if k != "inputs":
            print(f"  {k}: {v}")


# ---------------------------------------------------------------------------
# subcommands

EVAL_FNS = ("lp", "lp_prime", "ld", "lm", "lm_series", "rp", "rp_int", "phi", "logp", "gamma_nat", "teich")
_INTEGRALS = {"lp": lp, "lp_prime": lp_prime, "ld": ld, "lm": lm, "rp_int": rp_integral}


def cmd_eval(cfg: CliConfig, args: argparse.Namespace) -> int:
    fn = args.fn
    if fn == "gamma_nat":
        if args.n is None:
            raise ParseError("gamma_nat needs --n")
        val = morita_gamma_nat(cfg.p, args.n)
        if cfg.fmt == "json":
            print(_dump({"fn": fn, "inputs": {"p": cfg.p, "n": args.n}, "value": str(val)}))
        else:
            print(f"gamma_nat({args.n}) = {val}")
        return EXIT_OK
    if args.x is None:
        raise ParseError(f"{fn} needs --x")
    target = args.N if args.N_given else (cfg.rel_prec if args.prec_given else cfg.N)
    policy = cfg.policy(target)
    ctx = cfg.context(policy=policy)
    x = parse_value(args.x, ctx)
    inputs = {"p": cfg.p, "f": cfg.f, "x": args.x}
    label = f"{fn}({args.x})"
    if fn in _INTEGRALS:
        res = _INTEGRALS[fn](x, policy)
        val = res.certified()
        _emit_value(cfg, label, val, {"inputs": inputs, "achieved_prec": res.achieved_prec, "trace": list(res.trace)})
        return EXIT_OK
    if fn == "lm_series":
        K = args.K or 2 * target
        table = lambda_table(ctx, K, policy)
        val = lm_series(x, table, target=target)
        _emit_value(cfg, label, val, {"inputs": inputs, "achieved_prec": val.abs_prec, "K": K})
        return EXIT_OK
    simple = {"rp": rp_closed, "phi": phi_p, "logp": log_p, "teich": teichmuller}
    val = simple[fn](x)
    _emit_value(cfg, label, val, {"inputs": inputs, "achieved_prec": val.abs_prec})
    return EXIT_OK


def _run_job(cfg: CliConfig, job: Job):
    """One suite job; top-level so it can run in a worker process."""
    policy = cfg.policy()
    f = max(cfg.f, job.point.degree_needed) if job.point else cfg.f
    ctx = cfg.context(f=f, policy=policy)
    x = job.point.value(ctx) if job.point else ctx(1)
    return check_identity(job.identity, x, job.n, policy, cfg.N)


def _report_out(cfg: CliConfig, reports) -> None:
    if cfg.fmt == "json":
        print(_dump([r.to_json() for r in reports]))
    else:
        for r in reports:
            print(r.line())
            for note in r.notes:
                print(f"    {note}")


def cmd_check(cfg: CliConfig, args: argparse.Namespace) -> int:
    ident = args.identity
    if ident in NEEDS_N and args.n is None:
        raise ParseError(f"{ident} needs --n")
    policy = cfg.policy()
    ctx = cfg.context(policy=policy)
    x = parse_value(args.x, ctx) if args.x is not None else None
    if x is None:
        if ident != "gamma_consistency":
            raise ParseError(f"{ident} needs --x")
        x = ctx(1)
    report = check_identity(ident, x, args.n, policy, cfg.N)
    if cfg.fmt == "json":
        print(_dump(report.to_json()))
    else:
        _report_out(cfg, [report])
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_suite(cfg: CliConfig, args: argparse.Namespace) -> int:
    jobs = suite_plan(cfg.p, cfg.seed)
    if args.only:
        jobs = [j for j in jobs if j.identity in args.only]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_job, [cfg] * len(jobs), jobs))
    else:
        reports = [_run_job(cfg, j) for j in jobs]
    _report_out(cfg, reports)
    failed = [r for r in reports if not r.passed]
    if failed and cfg.fmt != "json":
        print(f"first failure: {failed[0].line()}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_sequence(cfg: CliConfig, args: argparse.Namespace) -> int:
    ctx = cfg.context()
    x = parse_value(args.x, ctx)
    seq = build_sequence(x, args.n)
    if cfg.fmt == "json":
        print(
            _dump(
                {
                    "x": args.x,
                    "n": args.n,
                    "m": seq.m,
                    "r": seq.r,
                    "omega": seq.omega,
                    "stop_reason": seq.stop_reason,
                    "x_list": [rational_form(y) or render(y) for y in seq.x_list],
                    "ell_list": list(seq.ell_list),
                }
            )
        )
    else:
        print(seq.render())
    return EXIT_OK


def cmd_lambda(cfg: CliConfig, args: argparse.Namespace) -> int:
    policy = cfg.policy()
    ctx = cfg.context(policy=policy)
    table = lambda_table(ctx, args.K, policy)
    rows = []
    for i, e in enumerate(table.entries, 1):
        rows.append({"index": i, **_value_json(e.certified()), "achieved_prec": e.achieved_prec})
    if cfg.fmt == "json":
        print(_dump({"p": cfg.p, "K": args.K, "lambda": rows}))
    else:
        for row in rows:
            print(f"lambda_{row['index']} = {row['value']}   [achieved {row['achieved_prec']}]")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


class _Tracked(argparse.Action):
    """Stores the value and remembers that the flag was given explicitly."""

    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        setattr(namespace, f"{self.dest}_given", True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="the prime (default 2)")
    common.add_argument("--f", type=int, default=1, help="degree of the unramified extension (default 1)")
    common.add_argument(
        "--prec", type=int, default=20, action=_Tracked, help="relative precision of inputs (default 20)"
    )
    common.add_argument(
        "--N", type=int, default=5, action=_Tracked, help="target precision of results and checks (default 5)"
    )
    common.add_argument(
        "--depth-max",
        type=int,
        default=None,
        help="maximal Riemann-sum depth n (default per prime: "
        + ", ".join(f"p={k}: {v}" for k, v in DEFAULT_DEPTH.items())
        + ")",
    )
    common.add_argument("--guard", type=int, default=None, help="guard digits of the integrator (default 4)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed of the sampling plan (default 0)")

    parser = argparse.ArgumentParser(
        prog="padic-lgamma",
        description="p-adic log-gamma functions by Volkenborn integration, with identity checks.",
        epilog=GRAMMAR_HELP
        + "\nexit codes: 0 pass, 1 check failure, 2 usage/parse error, 3 domain rejection",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.RawDescriptionHelpFormatter

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate a function", epilog=GRAMMAR_HELP, formatter_class=fmt)
    p_eval.add_argument("--fn", choices=EVAL_FNS, required=True)
    p_eval.add_argument("--x", help="argument (see input grammar)")
    p_eval.add_argument("--n", type=int, help="natural-number argument of gamma_nat")
    p_eval.add_argument("--K", type=int, help="lambda table size for lm_series (default 2N)")

    p_check = sub.add_parser("check", parents=[common], help="check one identity", epilog=GRAMMAR_HELP, formatter_class=fmt)
    p_check.add_argument("--identity", choices=tuple(IDENTITIES), required=True)
    p_check.add_argument("--x", help="argument (see input grammar)")
    p_check.add_argument("--n", type=int, help="integer parameter of distribution-type identities")

    p_suite = sub.add_parser("suite", parents=[common], help="run the fixed-seed identity suite")
    p_suite.add_argument("--only", nargs="+", choices=tuple(IDENTITIES), help="restrict to these identities")
    p_suite.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")

    p_seq = sub.add_parser("sequence", parents=[common], help="show the shift sequence", epilog=GRAMMAR_HELP, formatter_class=fmt)
    p_seq.add_argument("--x", required=True)
    p_seq.add_argument("--n", type=int, required=True)

    p_lam = sub.add_parser("lambda", parents=[common], help="coefficients of the series at 0")
    p_lam.add_argument("--K", type=int, default=6)
    return parser


COMMANDS = {"eval": cmd_eval, "check": cmd_check, "suite": cmd_suite, "sequence": cmd_sequence, "lambda": cmd_lambda}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("prec", "N"):
        if not hasattr(args, f"{name}_given"):
            setattr(args, f"{name}_given", False)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg, args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, PadicError) as exc:
        print(f"domain rejection: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
