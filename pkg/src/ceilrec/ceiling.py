"""Exact ceiling arithmetic and ceiling-sum closed forms.

The central object is the "staircase" sequence with parameter j >= 1,

    c_j(n) = sum(ceil((n - i) / (2*j)) for i in range(j)),

which climbs by one on j consecutive indices and then stays flat for the
next j.  It is the canonical slow solution of the nested recursions
handled by this package.  A ``CeilingSumForm`` generalises the same shape:
an integer constant plus integer-weighted terms ceil(slope*n + offset)
with rational slope and offset.  All arithmetic here is exact; floats are
never used.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .windows import SequenceWindow

__all__ = [
    "ceil_div",
    "staircase",
    "staircase_form",
    "CeilingTerm",
    "CeilingSumForm",
    "eval_form",
    "DifferenceProfile",
    "difference_profile",
    "synthesize_form",
    "non_nested_equivalent",
    "forms_agree",
    "format_form",
    "parse_form",
    "form_to_dict",
    "form_from_dict",
]


def ceil_div(n: int, d: int) -> int:
    """Ceiling of n/d for integers, exact for negative n as well.

    >>> ceil_div(5, 2), ceil_div(0, 7), ceil_div(-5, 2)
    (3, 0, -2)
    """
    if d <= 0:
        raise ValueError(f"ceil_div requires a positive divisor, got {d}")
    return -((-n) // d)


def staircase(j: int, n: int) -> int:
    """Value of the canonical ceiling-sum staircase c_j at n.

    Constant time: reduce n modulo the period 2j, where one full period
    adds exactly j, and read the base value off the j-up / j-flat shape.

    >>> [staircase(3, n) for n in (-4, 0, 2, 4)]
    [-1, 0, 2, 3]
    """
    if j < 1:
        raise ValueError(f"staircase requires j >= 1, got {j}")
    q, r = divmod(n, 2 * j)
    return min(r, j) + j * q


@dataclass(frozen=True)
class CeilingTerm:
    """One summand coefficient * ceil(slope*n + offset)."""

    slope: Fraction
    offset: Fraction
    coefficient: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "offset", Fraction(self.offset))

    def eval(self, n: int) -> int:
        return self.coefficient * math.ceil(self.slope * n + self.offset)


@dataclass(frozen=True)
class CeilingSumForm:
    """Integer constant plus a sum of ceiling terms."""

    constant: int = 0
    terms: tuple[CeilingTerm, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))

    def eval(self, n: int) -> int:
        return self.constant + sum(t.eval(n) for t in self.terms)


def eval_form(form: CeilingSumForm, n: int) -> int:
    """Evaluate a ceiling-sum form at integer n with exact rationals."""
    return form.eval(n)


def staircase_form(j: int) -> CeilingSumForm:
    """The staircase c_j written out as an explicit ceiling-sum form."""
    if j < 1:
        raise ValueError(f"staircase_form requires j >= 1, got {j}")
    slope = Fraction(1, 2 * j)
    terms = tuple(
        CeilingTerm(slope=slope, offset=Fraction(-i, 2 * j)) for i in range(j)
    )
    return CeilingSumForm(constant=0, terms=terms)


@dataclass(frozen=True)
class DifferenceProfile:
    """Forward differences of a window plus any detected period.

    ``period`` is None when no period met the evidence requirement.
    ``evidence_length`` counts the index pairs (i, i+period) that were
    actually compared; it is 0 when no period is present.
    """

    diffs: tuple[int, ...]
    period: Optional[int]
    evidence_length: int


def difference_profile(
    window: SequenceWindow,
    min_repeats: int = 3,
    period: Optional[int] = None,
) -> DifferenceProfile:
    """Forward differences of a window and the smallest supported period.

    A period p is accepted by the search only when the whole difference
    sequence is p-periodic and long enough to witness at least
    ``min_repeats`` full repetitions (p <= len(diffs) // min_repeats).
    Passing ``period`` skips the search and the evidence requirement:
    the stated period is still checked against every overlapping pair
    in the window and rejected if contradicted.
    """
    if len(window) < 2:
        raise ValueError("difference_profile needs a window of at least 2 values")
    vals = window.values
    diffs = tuple(vals[i + 1] - vals[i] for i in range(len(vals) - 1))

    if period is not None:
        if period < 1:
            raise ValueError(f"period must be a positive integer, got {period}")
        if period > len(diffs):
            raise ValueError(
                f"stated period {period} exceeds the {len(diffs)} observable differences"
            )
        if not _is_periodic(diffs, period):
            raise ValueError(f"window differences contradict stated period {period}")
        return DifferenceProfile(diffs, period, len(diffs) - period)

    if min_repeats < 1:
        raise ValueError(f"min_repeats must be a positive integer, got {min_repeats}")
    for p in range(1, len(diffs) // min_repeats + 1):
        if _is_periodic(diffs, p):
            return DifferenceProfile(diffs, p, len(diffs) - p)
    return DifferenceProfile(diffs, None, 0)


def _is_periodic(diffs: Sequence[int], p: int) -> bool:
    return all(diffs[i] == diffs[i + p] for i in range(len(diffs) - p))


def synthesize_form(window: SequenceWindow, profile: DifferenceProfile) -> CeilingSumForm:
    """Build the ceiling-sum form reproducing a periodic-difference window.

    With the window re-indexed so its first value sits at position 1, the
    construction is  first + sum(d_i * ceil((m - i)/p) for i in 1..p),
    expressed below in terms of the window's own index n.  The result is
    verified against every value in the window before it is returned.
    """
    if profile.period is None:
        raise ValueError("cannot synthesize a form: no period detected in profile")
    p = profile.period
    if len(profile.diffs) < p:
        raise ValueError("profile does not carry a full period of differences")
    start = window.start
    slope = Fraction(1, p)
    # position m = n - start + 1, term i contributes ceil((m - i)/p)
    terms = tuple(
        CeilingTerm(
            slope=slope,
            offset=Fraction(1 - start - i, p),
            coefficient=profile.diffs[i - 1],
        )
        for i in range(1, p + 1)
    )
    form = CeilingSumForm(constant=window.values[0], terms=terms)
    for n, v in window.items():
        got = form.eval(n)
        if got != v:
            raise RuntimeError(
                f"synthesized form disagrees with window at n={n}: {got} != {v}; "
                "profile does not describe this window"
            )
    return form


def non_nested_equivalent(form: CeilingSumForm) -> tuple[int, int]:
    """Step q and per-step increment of the form's shift recurrence.

    Every ceiling-sum form f satisfies f(n) = f(n - q) + increment where
    q is the lcm of the slope denominators: shifting n by q moves each
    ceiling argument by an exact integer.  A form with no terms gives
    (1, 0).
    """
    if not form.terms:
        return (1, 0)
    q = math.lcm(*(t.slope.denominator for t in form.terms))
    increment = sum(
        t.coefficient * t.slope.numerator * (q // t.slope.denominator)
        for t in form.terms
    )
    return (q, increment)


def forms_agree(f: CeilingSumForm, g: CeilingSumForm) -> bool:
    """Whether two forms take the same value at every integer.

    Both forms repeat their behaviour with steps q_f and q_g.  Agreement
    on one window of length lcm(q_f, q_g) + 1 pins the shared increment
    over that stride, which propagates the equality to all of Z.
    """
    qf, _ = non_nested_equivalent(f)
    qg, _ = non_nested_equivalent(g)
    span = math.lcm(qf, qg)
    return all(f.eval(n) == g.eval(n) for n in range(span + 1))


# --- text and JSON serialization ---------------------------------------
#
# Text shape:  constant followed by terms "k*ceil((n+r)*qn/qd)" joined
# with +/-, where r = offset/slope is printed as an integer or num/den.
# The parser is looser than the printer: the coefficient, the (n+r)
# parentheses, the r part, and the slope may each be abbreviated, so
# inputs like "ceil((n+1)/2)" or "ceil(n/2)" work.

_TERM_RE = re.compile(
    r"""^
    (?:(\d+)\s*\*\s*)?                 # optional coefficient magnitude
    ceil\s*\(\s*
    (?:
        \(\s*n\s*
            (?:([+-])\s*(\d+)(?:\s*/\s*(\d+))?)?   # optional +/- r
        \s*\)
      | n
    )
    \s*
    (?:
        \*\s*(-?\d+)(?:\s*/\s*(\d+))?  # *num[/den]
      | /\s*(\d+)                      # /den
    )?
    \s*\)
    $""",
    re.VERBOSE,
)


def format_form(form: CeilingSumForm) -> str:
    """Render a form in the text syntax accepted by ``parse_form``."""
    out = str(form.constant)
    for t in form.terms:
        if t.slope == 0:
            raise ValueError(
                "text syntax cannot carry a slope-0 term; use the JSON serialization"
            )
        r = t.offset / t.slope
        if r == 0:
            inner = "(n)"
        else:
            mag = f"{abs(r.numerator)}" + ("" if r.denominator == 1 else f"/{r.denominator}")
            inner = f"(n{'+' if r > 0 else '-'}{mag})"
        slope = f"{t.slope.numerator}/{t.slope.denominator}"
        joiner = " - " if t.coefficient < 0 else " + "
        out += f"{joiner}{abs(t.coefficient)}*ceil({inner}*{slope})"
    return out


def parse_form(text: str) -> CeilingSumForm:
    """Parse the ceiling-sum text syntax produced by ``format_form``."""
    chunks = _split_signed(text)
    if not chunks:
        raise ValueError("empty ceiling-sum expression")
    constant = 0
    terms: list[CeilingTerm] = []
    for sign, chunk in chunks:
        if re.fullmatch(r"\d+", chunk):
            constant += sign * int(chunk)
            continue
        m = _TERM_RE.match(chunk)
        if m is None:
            raise ValueError(f"cannot parse ceiling term: {chunk!r}")
        coeff, rsign, rnum, rden, mnum, mden, dden = m.groups()
        coefficient = sign * (int(coeff) if coeff else 1)
        if mnum is not None:
            slope = Fraction(int(mnum), int(mden) if mden else 1)
        elif dden is not None:
            slope = Fraction(1, int(dden))
        else:
            slope = Fraction(1)
        r = Fraction(0)
        if rnum is not None:
            r = Fraction(int(rnum), int(rden) if rden else 1)
            if rsign == "-":
                r = -r
        terms.append(CeilingTerm(slope=slope, offset=slope * r, coefficient=coefficient))
    return CeilingSumForm(constant=constant, terms=tuple(terms))


def _split_signed(text: str) -> list[tuple[int, str]]:
    """Split an expression at depth-0 +/- into (sign, chunk) pairs."""
    chunks: list[tuple[int, str]] = []
    sign, buf, depth = 1, [], 0
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if depth == 0 and ch in "+-":
            piece = "".join(buf).strip()
            if piece:
                chunks.append((sign, piece))
                sign = 1
            sign *= -1 if ch == "-" else 1
            buf = []
        else:
            buf.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    piece = "".join(buf).strip()
    if piece:
        chunks.append((sign, piece))
    elif chunks or sign != 1:
        raise ValueError(f"dangling sign in {text!r}")
    return chunks


def form_to_dict(form: CeilingSumForm) -> dict:
    return {
        "constant": form.constant,
        "terms": [
            {
                "coefficient": t.coefficient,
                "slope": {"num": t.slope.numerator, "den": t.slope.denominator},
                "offset": {"num": t.offset.numerator, "den": t.offset.denominator},
            }
            for t in form.terms
        ],
    }


def form_from_dict(data: dict) -> CeilingSumForm:
    try:
        terms = tuple(
            CeilingTerm(
                slope=Fraction(t["slope"]["num"], t["slope"]["den"]),
                offset=Fraction(t["offset"]["num"], t["offset"]["den"]),
                coefficient=int(t["coefficient"]),
            )
            for t in data["terms"]
        )
        return CeilingSumForm(constant=int(data["constant"]), terms=terms)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed ceiling-sum form object: {exc}") from exc
