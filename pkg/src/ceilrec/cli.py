"""Command line interface.

Subcommands: eval-c, eval-form, gen, check, classify, equiv, normalize,
sweep, synthesize, nonnested, qdemo.  Sequence output defaults to
"n value" lines; --format switches to csv or json.  Exit codes: 0 ok,
1 domain error, 2 usage error, 3 classification mismatch (internal).
"""

from __future__ import annotations

import argparse
import csv as _csv
import json
import re
import sys
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .ceiling import (
    CeilingSumForm,
    difference_profile,
    eval_form,
    form_from_dict,
    form_to_dict,
    format_form,
    non_nested_equivalent,
    parse_form,
    staircase,
    synthesize_form,
)
from .classify import (
    Box,
    TheoremViolation,
    Verdict,
    classify,
    iter_verdicts,
    normalize,
    sweep,
)
from .engine import RecursionSpec, generate, parse_spec, staircase_ics
from .windows import SequenceWindow, parse_window, render_window

__all__ = ["run", "main"]

_RANGE_RE = re.compile(r"^(-?\d+):(-?\d+)$")


def run(
    argv: Sequence[str],
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Execute one CLI invocation against explicit streams; returns the exit code."""
    stdin = stdin if stdin is not None else sys.stdin
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            args = parser.parse_args(list(argv))
        except SystemExit as exc:  # argparse handles --help and usage errors
            code = exc.code
            return code if isinstance(code, int) else (0 if code is None else 2)
        try:
            args.handler(args, stdin, out)
        except TheoremViolation as exc:
            print(f"error: TheoremViolation: {exc}", file=err)
            return 3
        except (ValueError, OSError) as exc:
            print(f"error: {type(exc).__name__}: {exc}", file=err)
            return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


# --- argument plumbing ---------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ceilrec",
        description="Nested recursions with ceiling-sum solutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-c", help="evaluate the canonical staircase ceiling sum")
    p.add_argument("--j", type=int, required=True)
    _add_span(p)
    _add_format(p)
    p.set_defaults(handler=_cmd_eval_c)

    p = sub.add_parser("eval-form", help="evaluate a ceiling-sum form over a range")
    _add_form_input(p)
    _add_span(p)
    _add_format(p)
    p.set_defaults(handler=_cmd_eval_form)

    p = sub.add_parser("gen", help="run a recursion from initial conditions")
    _add_spec(p)
    p.add_argument("--ics", required=True, help="comma-separated values at n=1,2,...")
    p.add_argument("--count", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("check", help="verdict for one spec (same fields as a sweep row)")
    _add_spec(p)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("classify", help="full classification detail for one spec")
    _add_spec(p)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("equiv", help="compare two specs up to the shift relations")
    _add_spec(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--other", help="second spec, <s1,a1:s2,a2>")
    g.add_argument("--other-plain", help="second spec, s1,a1,s2,a2")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--swap", action="store_true", help="also quotient by summand order")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_equiv)

    p = sub.add_parser("normalize", help="canonical form and reduction trace")
    _add_spec(p)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--swap", action="store_true", help="also quotient by summand order")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_normalize)

    p = sub.add_parser("sweep", help="classify every spec in a parameter box")
    p.add_argument("--j", type=int, required=True)
    for name in ("--s1", "--a1", "--s2", "--a2"):
        p.add_argument(name, metavar="LO:HI", help="inclusive range (use --s1=-8:8 for negatives)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("synthesize", help="closed form from a periodic-difference window")
    p.add_argument("--in", dest="infile", help="window file; stdin when omitted")
    p.add_argument("--in-format", choices=("bfile", "csv"), default=None)
    p.add_argument("--min-repeats", type=int, default=3)
    p.add_argument("--period", type=int, default=None, help="known period, skips detection")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_synthesize)

    p = sub.add_parser("nonnested", help="shift recurrence satisfied by a form")
    _add_form_input(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_nonnested)

    p = sub.add_parser("qdemo", help="Hofstadter-style demo with quasi-periodic check")
    p.add_argument("--count", type=int, default=30)
    p.add_argument("--format", choices=("bfile", "json"), default="bfile")
    p.set_defaults(handler=_cmd_qdemo)

    return parser


def _add_span(p: argparse.ArgumentParser) -> None:
    p.add_argument("--from", dest="lo", type=int, required=True, metavar="N")
    p.add_argument("--to", dest="hi", type=int, required=True, metavar="N")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("bfile", "csv", "json"), default="bfile")


def _add_spec(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--spec", help="recursion spec, <s1,a1:s2,a2>")
    g.add_argument("--spec-plain", help="recursion spec, s1,a1,s2,a2")


def _add_form_input(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--form", help="ceiling-sum form in text syntax")
    g.add_argument("--in", dest="infile", help="form file, text syntax or JSON")
    p.add_argument("--in-format", choices=("text", "json"), default=None)


def _spec_arg(args: argparse.Namespace) -> RecursionSpec:
    if args.spec is not None:
        return parse_spec(args.spec)
    return _parse_plain(args.spec_plain)


def _parse_plain(text: str) -> RecursionSpec:
    fields = [f.strip() for f in text.split(",")]
    if len(fields) != 4:
        raise ValueError(f"expected s1,a1,s2,a2 with four fields, got {text!r}")
    try:
        return RecursionSpec(*(int(f) for f in fields))
    except ValueError:
        raise ValueError(f"non-integer field in spec {text!r}") from None


def _form_arg(args: argparse.Namespace, stdin: TextIO) -> CeilingSumForm:
    if args.form is not None:
        return parse_form(args.form)
    text = Path(args.infile).read_text()
    fmt = args.in_format
    if fmt is None:
        fmt = "json" if args.infile.endswith(".json") else "text"
    if fmt == "json":
        return form_from_dict(json.loads(text))
    return parse_form(text)


def _format_from_suffix(path: str) -> Optional[str]:
    """Window format from a filename; None lets content sniffing decide."""
    return "csv" if path.endswith(".csv") else None


def _span_window(args: argparse.Namespace, value_of) -> SequenceWindow:
    if args.lo > args.hi:
        raise ValueError(f"empty range: --from {args.lo} exceeds --to {args.hi}")
    return SequenceWindow(args.lo, tuple(value_of(n) for n in range(args.lo, args.hi + 1)))


def _emit_window(window: SequenceWindow, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        json.dump({"start": window.start, "values": list(window.values)}, out)
        out.write("\n")
    else:
        out.write(render_window(window, fmt))


def _bounds(text: Optional[str], fallback: tuple[int, int]) -> tuple[int, int]:
    if text is None:
        return fallback
    m = _RANGE_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse range {text!r}; expected LO:HI")
    return (int(m.group(1)), int(m.group(2)))


# --- handlers ------------------------------------------------------------


def _cmd_eval_c(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    _emit_window(_span_window(args, lambda n: staircase(args.j, n)), args.format, out)


def _cmd_eval_form(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    form = _form_arg(args, stdin)
    _emit_window(_span_window(args, lambda n: eval_form(form, n)), args.format, out)


def _cmd_gen(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    spec = _spec_arg(args)
    try:
        values = tuple(int(f.strip()) for f in args.ics.split(","))
    except ValueError:
        raise ValueError(f"non-integer value in --ics {args.ics!r}") from None
    window = generate(spec, SequenceWindow(1, values), args.count)
    _emit_window(window, args.format, out)


def _verdict_row(v: Verdict) -> list[str]:
    return [
        str(v.spec),
        *(str(flag).lower() for flag in (
            v.conditions.shifts, v.conditions.lags, v.conditions.balance, v.satisfied)),
        str(v.canonical.spec),
    ]


_ROW_HEADER = ["spec", "cond_i", "cond_ii", "cond_iii", "satisfied", "canonical"]


def _conditions_line(v: Verdict) -> str:
    c = v.conditions
    return (
        f"{str(c.overall).lower()} (shifts={str(c.shifts).lower()} "
        f"lags={str(c.lags).lower()} balance={str(c.balance).lower()})"
    )


def _cmd_check(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    v = classify(args.j, _spec_arg(args))
    if args.format == "csv":
        w = _csv.writer(out, lineterminator="\n")
        w.writerow(_ROW_HEADER)
        w.writerow(_verdict_row(v))
    elif args.format == "json":
        json.dump(
            {
                "spec": str(v.spec),
                "j": v.j,
                "conditions": _conditions_dict(v),
                "satisfied": v.satisfied,
                "canonical": str(v.canonical.spec),
            },
            out,
        )
        out.write("\n")
    else:
        print(f"spec: {v.spec}", file=out)
        print(f"j: {v.j}", file=out)
        print(f"conditions: {_conditions_line(v)}", file=out)
        print(f"satisfied: {str(v.satisfied).lower()}", file=out)
        print(f"canonical: {v.canonical.spec}", file=out)


def _conditions_dict(v: Verdict) -> dict:
    return {
        "overall": v.conditions.overall,
        "shifts": v.conditions.shifts,
        "lags": v.conditions.lags,
        "balance": v.conditions.balance,
    }


def _cmd_classify(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    v = classify(args.j, _spec_arg(args))
    if args.format == "json":
        json.dump(
            {
                "spec": str(v.spec),
                "j": v.j,
                "conditions": _conditions_dict(v),
                "satisfied": v.satisfied,
                "witness": v.report.witness,
                "defects": [list(pair) for pair in v.report.defects],
                "canonical": {
                    "spec": str(v.canonical.spec),
                    "trace": [
                        {"kind": r.kind, "multiplier": r.multiplier}
                        for r in v.canonical.trace
                    ],
                },
            },
            out,
        )
        out.write("\n")
        return
    print(f"spec: {v.spec}", file=out)
    print(f"j: {v.j}", file=out)
    print(f"conditions: {_conditions_line(v)}", file=out)
    print(f"satisfied: {str(v.satisfied).lower()}", file=out)
    print(f"witness: {'none' if v.report.witness is None else v.report.witness}", file=out)
    print("defects: " + " ".join(str(h) for _, h in v.report.defects), file=out)
    print(f"canonical: {v.canonical.spec}", file=out)
    print("trace: " + " ".join(str(r) for r in v.canonical.trace), file=out)


def _cmd_equiv(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    left = _spec_arg(args)
    right = parse_spec(args.other) if args.other is not None else _parse_plain(args.other_plain)
    from .classify import equivalent, swap_normal

    if args.swap:
        lc, rc = swap_normal(args.j, left), swap_normal(args.j, right)
    else:
        lc, rc = normalize(args.j, left).spec, normalize(args.j, right).spec
    same = equivalent(args.j, left, right, allow_swap=args.swap)
    if args.format == "json":
        json.dump(
            {
                "left": str(left),
                "right": str(right),
                "left_canonical": str(lc),
                "right_canonical": str(rc),
                "swap": args.swap,
                "equivalent": same,
            },
            out,
        )
        out.write("\n")
        return
    print(f"left: {left} -> {lc}", file=out)
    print(f"right: {right} -> {rc}", file=out)
    print(f"equivalent: {str(same).lower()}", file=out)


def _cmd_normalize(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    spec = _spec_arg(args)
    direct = normalize(args.j, spec)
    chosen, used_swap = direct, False
    if args.swap:
        other = normalize(args.j, spec.swapped())
        if other.spec.astuple() < direct.spec.astuple():
            chosen, used_swap = other, True
    if args.format == "json":
        payload = {
            "spec": str(spec),
            "canonical": str(chosen.spec),
            "trace": [{"kind": r.kind, "multiplier": r.multiplier} for r in chosen.trace],
        }
        if args.swap:
            payload["swapped"] = used_swap
        json.dump(payload, out)
        out.write("\n")
        return
    print(f"spec: {spec}", file=out)
    print(f"canonical: {chosen.spec}", file=out)
    print("trace: " + " ".join(str(r) for r in chosen.trace), file=out)
    if args.swap:
        print(f"swapped: {str(used_swap).lower()}", file=out)


def _cmd_sweep(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    if args.j < 1:
        raise ValueError(f"sweep requires j >= 1, got {args.j}")
    fallback = Box.default(args.j)
    box = Box(
        s1=_bounds(args.s1, fallback.s1),
        a1=_bounds(args.a1, fallback.a1),
        s2=_bounds(args.s2, fallback.s2),
        a2=_bounds(args.a2, fallback.a2),
    )
    result = sweep(args.j, box)
    if args.format == "csv":
        w = _csv.writer(out, lineterminator="\n")
        w.writerow(_ROW_HEADER)
        for v in iter_verdicts(args.j, box):
            w.writerow(_verdict_row(v))
        return
    json.dump(
        {
            "j": result.j,
            "box": {
                "s1": list(box.s1),
                "a1": list(box.a1),
                "s2": list(box.s2),
                "a2": list(box.a2),
            },
            "total": result.total,
            "satisfying": [str(s) for s in result.satisfying],
            "violations": [],
        },
        out,
    )
    out.write("\n")


def _cmd_synthesize(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    if args.infile:
        text = Path(args.infile).read_text()
        fmt = args.in_format or _format_from_suffix(args.infile)
    else:
        text = stdin.read()
        fmt = args.in_format  # stdin has no extension; sniff content
    window = parse_window(text, fmt)
    profile = difference_profile(window, min_repeats=args.min_repeats, period=args.period)
    form = synthesize_form(window, profile)
    if args.format == "json":
        json.dump(form_to_dict(form), out)
        out.write("\n")
    else:
        print(format_form(form), file=out)


def _cmd_nonnested(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    form = _form_arg(args, stdin)
    q, increment = non_nested_equivalent(form)
    if args.format == "json":
        json.dump({"q": q, "increment": increment}, out)
        out.write("\n")
    else:
        sign = "+" if increment >= 0 else "-"
        print(f"x(n) = x(n-{q}) {sign} {abs(increment)}", file=out)


def _q_expected(n: int) -> int:
    r = n % 3
    if r == 1:
        return 3
    if r == 2:
        return n
    return n - 2


def _cmd_qdemo(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    if args.count < 3:
        raise ValueError(f"qdemo needs --count >= 3, got {args.count}")
    window = generate(
        RecursionSpec(0, 1, 0, 2), SequenceWindow(1, (3, 2, 1)), args.count
    )
    mismatch = next((n for n, v in window.items() if v != _q_expected(n)), None)
    ok = mismatch is None
    pattern = "x(3k)=3k-2, x(3k+1)=3, x(3k+2)=3k+2"
    if args.format == "json":
        json.dump(
            {
                "start": 1,
                "values": list(window.values),
                "pattern": pattern,
                "pattern_ok": ok,
                "first_mismatch": mismatch,
            },
            out,
        )
        out.write("\n")
        return
    out.write(render_window(window, "bfile"))
    if ok:
        print(f"# quasi-periodic pattern {pattern}: OK for n=1..{args.count}", file=out)
    else:
        print(f"# quasi-periodic pattern {pattern}: MISMATCH at n={mismatch}", file=out)
