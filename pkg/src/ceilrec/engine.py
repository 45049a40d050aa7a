"""Generation and verification of nested two-term recursions.

A ``RecursionSpec`` <s1,a1:s2,a2> denotes the recursion

    x(n) = x(n - s1 - x(n - a1)) + x(n - s2 - x(n - a2)),

read against 1-based initial conditions.  Two distinct questions about
such a recursion are kept apart throughout:

* generation: do given initial conditions propagate forever without any
  reference leaving the already-computed range [1, n-1]?
* formal satisfaction: does the staircase c_j, as a function on all of
  Z, make both sides of the recursion equal?

Formal satisfaction is decided exactly by a finite check.  The defect

    h(n) = c(n - s1 - c(n - a1)) + c(n - s2 - c(n - a2)) - c(n)

repeats with period 4j in n, so it vanishes everywhere iff it vanishes
on n = 0 .. 4j-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .ceiling import staircase
from .windows import SequenceWindow

__all__ = [
    "RecursionSpec",
    "parse_spec",
    "format_spec",
    "DeadSequence",
    "NotSatisfied",
    "NoValidIcs",
    "generate",
    "defect",
    "SatisfactionReport",
    "formally_satisfies",
    "is_slow",
    "staircase_ics",
]

_SPEC_RE = re.compile(
    r"^\s*<\s*(-?\d+)\s*,\s*(-?\d+)\s*:\s*(-?\d+)\s*,\s*(-?\d+)\s*>\s*$"
)


@dataclass(frozen=True)
class RecursionSpec:
    """Parameter tuple <s1,a1:s2,a2> of a nested two-term recursion."""

    s1: int
    a1: int
    s2: int
    a2: int

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.s1, self.a1, self.s2, self.a2)

    def swapped(self) -> "RecursionSpec":
        """The same recursion with its two summands written in the other order."""
        return RecursionSpec(self.s2, self.a2, self.s1, self.a1)

    def __str__(self) -> str:
        return f"<{self.s1},{self.a1}:{self.s2},{self.a2}>"


def parse_spec(text: str) -> RecursionSpec:
    """Parse "<s1,a1:s2,a2>" (whitespace tolerated, negatives allowed)."""
    m = _SPEC_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse recursion spec {text!r}; expected <s1,a1:s2,a2>")
    return RecursionSpec(*(int(g) for g in m.groups()))


def format_spec(spec: RecursionSpec) -> str:
    return str(spec)


class DeadSequence(ValueError):
    """Generation died: a reference left the computed range [1, n-1]."""

    def __init__(self, n: int, bad_index: int):
        self.n = n
        self.bad_index = bad_index
        super().__init__(
            f"sequence dies at n={n}: referenced index {bad_index} outside [1, {n - 1}]"
        )


class NotSatisfied(ValueError):
    """The staircase does not formally satisfy the recursion at this j."""


class NoValidIcs(ValueError):
    """No staircase prefix within the search bound regenerates the staircase."""


def generate(spec: RecursionSpec, ics: SequenceWindow, count: int) -> SequenceWindow:
    """Run the recursion from 1-based initial conditions out to ``count`` values.

    Both the inner references n - a_i and the outer references
    n - s_i - x(n - a_i) must land in [1, n-1]; the first one that does
    not raises DeadSequence carrying n and the offending index.
    """
    if ics.start != 1:
        raise ValueError(f"initial conditions must start at index 1, got {ics.start}")
    if spec.a1 <= 0 or spec.a2 <= 0:
        raise ValueError(f"generation requires a1, a2 > 0, got {spec}")
    if count < len(ics):
        raise ValueError(f"count {count} is smaller than the {len(ics)} initial conditions")
    vals = list(ics.values)
    for n in range(len(vals) + 1, count + 1):
        top = n - 1
        total = 0
        for s, a in ((spec.s1, spec.a1), (spec.s2, spec.a2)):
            inner = n - a
            if not 1 <= inner <= top:
                raise DeadSequence(n, inner)
            outer = n - s - vals[inner - 1]
            if not 1 <= outer <= top:
                raise DeadSequence(n, outer)
            total += vals[outer - 1]
        vals.append(total)
    return SequenceWindow(1, tuple(vals))


def defect(j: int, spec: RecursionSpec, n: int) -> int:
    """How far the staircase c_j is from satisfying the recursion at n.

    Total for all integer parameters: c_j is defined on all of Z, so no
    liveness question arises here.
    """
    c = staircase
    return (
        c(j, n - spec.s1 - c(j, n - spec.a1))
        + c(j, n - spec.s2 - c(j, n - spec.a2))
        - c(j, n)
    )


@dataclass(frozen=True)
class SatisfactionReport:
    """Defect survey over the deciding window n = 0 .. 4j-1."""

    satisfied: bool
    j: int
    witness: Optional[int]
    defects: tuple[tuple[int, int], ...]


def formally_satisfies(j: int, spec: RecursionSpec) -> SatisfactionReport:
    """Decide whether c_j formally satisfies the recursion.

    The defect is (4j)-periodic in n, so the window n = 0 .. 4j-1 is
    exhaustive.  The report always carries all 4j defect values plus the
    first failing n, if any.
    """
    if j < 1:
        raise ValueError(f"formally_satisfies requires j >= 1, got {j}")
    defects = tuple((n, defect(j, spec, n)) for n in range(4 * j))
    witness = next((n for n, h in defects if h != 0), None)
    return SatisfactionReport(witness is None, j, witness, defects)


def is_slow(window: SequenceWindow) -> bool:
    """Whether consecutive values never change by more than +1 or drop."""
    v = window.values
    return all(v[i + 1] - v[i] in (0, 1) for i in range(len(v) - 1))


def staircase_ics(
    j: int, spec: RecursionSpec, requested: Optional[int] = None
) -> SequenceWindow:
    """Initial conditions [c_j(1) .. c_j(m)] that regenerate the staircase.

    With ``requested`` given, that prefix length is returned as-is.
    Otherwise the smallest m is searched for which generation survives
    and reproduces c_j over the horizon V = max(10*m, 40*j).  The search
    bound m <= 20*j + |s1| + |s2| + a1 + a2 is an engineering margin,
    not a proven bound; NoValidIcs means it was exhausted.
    """
    if spec.a1 <= 0 or spec.a2 <= 0:
        raise ValueError(f"staircase_ics requires a1, a2 > 0, got {spec}")
    report = formally_satisfies(j, spec)
    if not report.satisfied:
        raise NotSatisfied(
            f"{spec} is not formally satisfied by the staircase at j={j}; "
            f"first nonzero defect at n={report.witness}"
        )
    if requested is not None:
        if requested < 1:
            raise ValueError(f"requested prefix length must be >= 1, got {requested}")
        return _prefix(j, requested)
    m_max = 20 * j + abs(spec.s1) + abs(spec.s2) + spec.a1 + spec.a2
    for m in range(1, m_max + 1):
        ics = _prefix(j, m)
        horizon = max(10 * m, 40 * j)
        try:
            got = generate(spec, ics, horizon)
        except DeadSequence:
            continue
        if all(v == staircase(j, n) for n, v in got.items()):
            return ics
    raise NoValidIcs(
        f"no staircase prefix of length <= {m_max} regenerates the staircase for {spec} at j={j}"
    )


def _prefix(j: int, m: int) -> SequenceWindow:
    return SequenceWindow(1, tuple(staircase(j, n) for n in range(1, m + 1)))
