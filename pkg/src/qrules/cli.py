"""Command-line front end.

Every subcommand prints one report on stdout (aligned text by default,
``--format json`` for machines) and exits 0 on pass/info, 1 on fail and 2 on
usage or expression errors.  Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import funceq, rules, zero_identity
from .errors import QRulesError
from .poly import Poly, q_integer, q_power
from .seqexpr import evaluate, parse, parse_poly, render, variables

EXIT_CODES = {"pass": 0, "info": 0, "fail": 1}


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    status: str
    payload: dict
    lines: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> str:
        body = {"command": self.command, "status": self.status, "payload": self.payload}
        return json.dumps(body, indent=2, ensure_ascii=True)

    def to_text(self) -> str:
        return "\n".join([*self.lines, f"status: {self.status}"])


def _table(rows: Sequence[tuple[str, object]]) -> list[str]:
    width = max((len(k) for k, _ in rows), default=0)
    return [f"{k.ljust(width)}  {v}" for k, v in rows]


def _rational(text: str, name: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{name}: expected a rational a/b, got {text!r}") from None


def _bindings(text: str | None) -> dict[str, int]:
    out: dict[str, int] = {}
    if not text:
        return out
    for part in text.split(","):
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or name not in ("m", "n", "k"):
            raise UsageError(f"bad binding {part!r}; expected e.g. m=3,n=2")
        try:
            out[name] = int(value)
        except ValueError:
            raise UsageError(f"bad binding value in {part!r}") from None
        if out[name] < 0:
            raise UsageError(f"binding {part!r} must be non-negative")
    return out


def _failure_lines(report: rules.VerificationReport, limit: int = 50) -> list[str]:
    lines = []
    for f in report.failures[:limit]:
        idx = " ".join(f"{k}={v}" for k, v in zip(report.names, f.indices))
        lines.append(f"  {idx}  residual {f.residual}")
    if len(report.failures) > limit:
        lines.append(f"  ... {len(report.failures) - limit} more")
    return lines


def _bounds(args, names: str = "mnk") -> tuple[int, ...]:
    out = []
    for v in names:
        b = getattr(args, f"max_{v}") or args.max
        if b < 1:
            raise UsageError(f"--max-{v} must be positive, got {b}")
        out.append(b)
    return tuple(out)


# -- subcommands ------------------------------------------------------------


def cmd_eval(args) -> Report:
    expr = parse(args.expr)
    binding = _bindings(args.bindings)
    value = evaluate(expr, binding)
    payload = {"expr": render(expr), "bindings": binding, "poly": str(value)}
    return Report("eval", "info", payload, [str(value)])


def cmd_verify_rule(args) -> Report:
    if args.rule and any((args.s, args.t, args.u, args.v)):
        raise UsageError("give either --rule or --s/--t/--u/--v, not both")
    if args.rule in rules.TWO_ARG_RULES:
        bounds = _bounds(args, "mn")
        report = rules.verify_two_arg_rule(args.rule, *bounds)
        described = {"name": args.rule}
    else:
        if args.rule:
            spec = rules.BUILTIN_SPECS[args.rule]
            described = {"name": args.rule, **spec.to_dict()}
        else:
            missing = [n for n in "stuv" if getattr(args, n) is None]
            if missing:
                raise UsageError(f"custom rule needs --s --t --u --v (missing {', '.join('--' + m for m in missing)})")
            spec = rules.RuleSpec.from_strings(args.s, args.t, args.u, args.v)
            described = {"name": "custom", **spec.to_dict()}
        bounds = _bounds(args)
        report = rules.verify_rule(spec, *bounds)
    status = "pass" if report.passed else "fail"
    lines = _table(
        [("rule", described["name"])]
        + [(k, v) for k, v in described.items() if k != "name"]
        + [("range", " ".join(f"{k}<={v}" for k, v in zip(report.names, bounds))),
           ("failures", len(report.failures))]
    )
    return Report("verify-rule", status, {"rule": described, **report.to_dict()}, lines + _failure_lines(report))


def _matches(values: list[Poly], template: Callable[[int], Poly], ms: range) -> bool:
    return all(v == template(m) for v, m in zip(values, ms))


def cmd_derive(args) -> Report:
    a = parse(args.a)
    extra = variables(a) - {"m"}
    if extra:
        raise UsageError(f"--a may only use the index m, found {sorted(extra)}")
    ms = range(1, args.max_m + 1)
    box = range(1, args.max + 1)
    rows, all_zero = [], True
    derivations = [rules.derive_from_constant_s(a, m) for m in ms]
    for d in derivations:
        zero = all(not d.residual(n, k) for n in box for k in box)
        all_zero &= zero
        rows.append({
            "m": d.m, "a_m": str(d.a_m), "t": str(d.t), "u": str(d.u), "v": str(d.v),
            "residual_2_2": str(d.residual(2, 2)), "residual_zero": zero,
        })
    closed = None
    if _matches([d.u for d in derivations], q_power, ms) and _matches(
        [d.v for d in derivations], lambda m: q_power(m + 1) - q_power(m), ms
    ):
        closed = {"t": "q^m", "u": "q^m", "v": "q^m*(q - 1)"}
    payload = {"a": render(a), "m_range": args.max_m, "nk_range": args.max, "closed_form": closed,
               "residual_zero": all_zero, "rows": rows}
    lines = [f"a = {render(a)}"]
    if closed:
        lines.append(f"t = u = {closed['u']}, v = {closed['v']}")
    lines.append(f"residual {'zero' if all_zero else 'nonzero'} on m<={args.max_m}, n,k<={args.max}")
    lines += _table([(f"m={r['m']}", f"a_m={r['a_m']}  u={r['u']}  v={r['v']}  residual(2,2)={r['residual_2_2']}")
                     for r in rows])
    return Report("derive", "pass" if all_zero else "fail", payload, lines)


def cmd_obstruction(args) -> Report:
    s = parse(args.s)
    extra = variables(s) - {"m"}
    if extra:
        raise UsageError(f"--s may only use the index m, found {sorted(extra)}")
    w = rules.degree_obstruction(s, args.m, args.bound)
    s_m = evaluate(s, {"m": args.m})
    payload = {"s": render(s), "m": args.m, "s_m": str(s_m), "bound": args.bound, "witness": None}
    rows: list[tuple[str, object]] = [("s", render(s)), ("m", args.m), ("s_m", s_m), ("bound", args.bound)]
    if w is None:
        return Report("obstruction", "fail", payload, _table(rows) + ["no witness within bound"])
    payload["witness"] = {
        "m": w.m, "n": w.n, "k": w.k, "lhs": str(w.lhs), "rhs": str(w.rhs),
        "deg_lhs": w.lhs.degree(), "deg_rhs": w.rhs.degree(), "residual": str(w.residual),
    }
    rows += [("witness", f"(m, n, k) = ({w.m}, {w.n}, {w.k})"),
             ("rule", f"{w.lhs}  (degree {w.lhs.degree()})"),
             ("[m+n+k]", f"{w.rhs}  (degree {w.rhs.degree()})")]
    return Report("obstruction", "pass", payload, _table(rows))


def cmd_zero_identity(args) -> Report:
    r1k, rn1 = parse(args.r1k), parse(args.rn1)
    s0, t0 = parse_poly(args.s0), parse_poly(args.t0)
    u0, v0 = _rational(args.u0, "--u0"), _rational(args.v0, "--v0")
    spec = zero_identity.ZeroIdentitySpec(r1k, rn1, s0, t0, u0, v0)
    family = zero_identity.build_family(spec)
    if args.corrupt_w:
        # fault injection: flip the sign of w'_m
        bad = family.wprime
        family = zero_identity.DerivedFamily(
            family.rprime, family.sprime, family.tprime, family.uprime, family.vprime,
            lambda m: -bad(m), -family.w,
        )
    bounds = _bounds(args)
    report = zero_identity.verify_identity(family, *bounds)
    payload = {"spec": spec.to_dict(), "r": str(spec.r_initial), "w": str(family.w),
               "corrupt_w": args.corrupt_w, **report.to_dict()}
    lines = _table([*spec.to_dict().items(), ("r(q)", spec.r_initial), ("w(q)", family.w),
                    ("range", " ".join(f"{k}<={v}" for k, v in zip("mnk", bounds))),
                    ("failures", len(report.failures))])
    return Report("zero-identity", "pass" if report.passed else "fail", payload, lines + _failure_lines(report))


def cmd_solve_fe(args) -> Report:
    f1 = parse_poly(args.f1)
    f2 = parse_poly(args.f2) if args.f2 is not None else None
    n = args.n
    if n < 1:
        raise UsageError(f"--n must be positive, got {n}")
    payload: dict = {"eq": args.eq, "f1": str(f1), "n": n}
    if args.eq == "quafe":
        if f2 is None:
            raise UsageError("--eq quafe needs --f2 (f1 and f2 are the free initial data)")
        if n < 3:
            values = [f1, f2][:n]
            seq, ok = funceq.FESequence(values, funceq.USER_SUPPLIED), True
        else:
            rep = funceq.extend_sequence(f1, f2, n)
            seq, ok = rep.sequence, rep.consistent
            payload["violations"] = [v.to_dict() for v in rep.violations]
        payload["f2"] = str(f2)
        verified = None
    else:
        seq = funceq.closed_form_sequence(args.eq, f1, n)
        ok = True
        half = n // 2
        verified = None
        if half >= 1:
            check = funceq.verify_two_var_fe(args.eq, seq, half, n - half)
            verified = check.passed
            ok = check.passed
    payload["verified"] = verified
    payload["values"] = [str(p) for p in seq.values]
    if len(seq) < n:
        payload["f_n"] = None
        lines = [f"f_{len(seq) + 1} is not determined: seed is inconsistent"]
        return Report("solve-fe", "fail", payload, lines)
    fn = seq.f(n)
    payload["f_n"] = str(fn)
    payload["is_q_integer"] = fn == q_integer(n)
    label = f"f_{n} = [{n}] = {fn}" if payload["is_q_integer"] else f"f_{n} = {fn}"
    lines = [label]
    if verified is not None:
        lines.append(f"equation {args.eq} checked on m+n<={n}: {'ok' if verified else 'FAILED'}")
    return Report("solve-fe", "pass" if ok else "fail", payload, lines)


def cmd_extend(args) -> Report:
    f1, f2 = parse_poly(args.f1), parse_poly(args.f2)
    rep = funceq.extend_sequence(f1, f2, args.horizon)
    lines = _table([("seed", f"f1 = {f1}, f2 = {f2}"), ("horizon", args.horizon),
                    ("consistent up to", rep.sequence.consistent_up_to),
                    ("trivial match", rep.trivial_match)])
    lines += [f"  f_{i} = {p}" for i, p in enumerate(rep.sequence.values, 1)]
    for v in rep.violations:
        lines.append(f"  violation N={v.N} {v.reference} vs {v.other}: residual {v.residual}")
    return Report("extend", "pass" if rep.consistent else "fail", rep.to_dict(), lines)


def cmd_certify_trivial(args) -> Report:
    summary = funceq.certify_trivial(args.horizon, args.trials, args.max_degree, args.coeff_bound, args.seed)
    lines = _table([("horizon", args.horizon), ("trials", args.trials), ("max degree", args.max_degree),
                    ("coeff bound", args.coeff_bound), ("seed", args.seed),
                    ("inconsistent", summary.inconsistent),
                    ("consistent non-trivial", summary.consistent)])
    for c in summary.counterexamples:
        lines.append(f"  trial {c['trial']}: f1 = {c['f1']}, f2 = {c['f2']}")
    return Report("certify-trivial", "fail" if summary.counterexamples else "info", summary.to_dict(), lines)


# -- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    box = argparse.ArgumentParser(add_help=False)
    box.add_argument("--max", type=int, default=10, help="bound for every index (default 10)")
    for v in "mnk":
        box.add_argument(f"--max-{v}", type=int, default=None, help=f"override the bound on {v}")

    parser = argparse.ArgumentParser(prog="qrules", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression at index values")
    p.add_argument("expr")
    p.add_argument("bindings", nargs="?", default="", help="e.g. m=3,n=2")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify-rule", parents=[common, box], help="sweep an addition rule over a box")
    p.add_argument("--rule", choices=sorted([*rules.TWO_ARG_RULES, *rules.BUILTIN_SPECS]))
    for name in "stuv":
        p.add_argument(f"--{name}", help=f"{name}_m as an expression in m")
    p.set_defaults(func=cmd_verify_rule)

    p = sub.add_parser("derive", parents=[common], help="coefficients forced by a constant s_m")
    p.add_argument("--a", required=True, help="the constant sequence a_m")
    p.add_argument("--max-m", type=int, default=10)
    p.add_argument("--max", type=int, default=5, help="n, k range for the residual check")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("obstruction", parents=[common], help="witness that deg s_m > 2 breaks a rule")
    p.add_argument("--s", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--bound", type=int, default=4)
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("zero-identity", parents=[common, box], help="build and sweep a zero-identity family")
    p.add_argument("--r1k", default="0", help="r_{1,k} as an expression in k")
    p.add_argument("--rn1", default="0", help="r_{n,1} as an expression in n")
    p.add_argument("--s0", default="0", help="s(q)")
    p.add_argument("--t0", default="0", help="t(q)")
    p.add_argument("--u0", default="1", help="nonzero rational u")
    p.add_argument("--v0", default="1", help="nonzero rational v")
    p.add_argument("--corrupt-w", action="store_true", help="flip the sign of w'_m (fault injection)")
    p.set_defaults(func=cmd_zero_identity)

    p = sub.add_parser("solve-fe", parents=[common], help="closed-form or iterated f_n")
    p.add_argument("--eq", required=True, choices=("linear", "quad1", "quad2", "quafe"))
    p.add_argument("--f1", required=True)
    p.add_argument("--f2")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_solve_fe)

    p = sub.add_parser("extend", parents=[common], help="grow a three-index sequence from (f1, f2)")
    p.add_argument("--f1", required=True)
    p.add_argument("--f2", required=True)
    p.add_argument("--horizon", type=int, default=12)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("certify-trivial", parents=[common], help="random search for non-trivial seeds")
    p.add_argument("--horizon", type=int, default=10)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--coeff-bound", type=int, default=5)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_certify_trivial)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except (UsageError, QRulesError) as exc:
        kind = type(exc).__name__
        print(f"error: {kind}: {exc}", file=sys.stderr)
        return 2
    out = report.to_json() if args.format == "json" else report.to_text()
    sys.stdout.write(out + "\n")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
