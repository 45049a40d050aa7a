"""Classification of nested recursions against the staircase solutions.

Three reversible parameter moves preserve both the defect profile and
the structural conditions below (j fixed, any integer multiplier):

    A(c): (s1, a1, s2, a2) -> (s1 + c*j,   a1 + 2*c*j, s2,          a2)
    B(d): (s1, a1, s2, a2) -> (s1,         a1,         s2 + d*j,    a2 + 2*d*j)
    C(e): (s1, a1, s2, a2) -> (s1 - 2*e*j, a1,         s2 + 2*e*j,  a2)

Normalization reduces a2, then s2, then a1 into S = {0, .., 2j-1} by
least-nonnegative remainders, leaving s1 free.  The classification
theorem verified here: the staircase c_j formally satisfies a recursion
iff (i) both shifts are multiples of j, (ii) both lags are congruent to
j mod 2j, and (iii) 2*(s1 + s2) = a1 + a2.  ``classify`` checks both
routes and treats any disagreement as an internal error.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

from .ceiling import staircase
from .engine import (
    RecursionSpec,
    SatisfactionReport,
    defect,
    formally_satisfies,
)

__all__ = [
    "Relation",
    "apply_relation",
    "CanonicalForm",
    "normalize",
    "swap_normal",
    "ConditionReport",
    "conditions_hold",
    "Verdict",
    "classify",
    "TheoremViolation",
    "Box",
    "SweepResult",
    "sweep",
    "iter_verdicts",
    "equivalent",
]

_KINDS = ("A", "B", "C")


@dataclass(frozen=True)
class Relation:
    """One parameter move: kind A, B or C with an integer multiplier."""

    kind: str
    multiplier: int

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"relation kind must be one of {_KINDS}, got {self.kind!r}")

    def inverse(self) -> "Relation":
        return Relation(self.kind, -self.multiplier)

    def __str__(self) -> str:
        return f"{self.kind}({self.multiplier})"


def apply_relation(j: int, spec: RecursionSpec, rel: Relation) -> RecursionSpec:
    if j < 1:
        raise ValueError(f"apply_relation requires j >= 1, got {j}")
    m = rel.multiplier
    if rel.kind == "A":
        return RecursionSpec(spec.s1 + m * j, spec.a1 + 2 * m * j, spec.s2, spec.a2)
    if rel.kind == "B":
        return RecursionSpec(spec.s1, spec.a1, spec.s2 + m * j, spec.a2 + 2 * m * j)
    return RecursionSpec(spec.s1 - 2 * m * j, spec.a1, spec.s2 + 2 * m * j, spec.a2)


@dataclass(frozen=True)
class CanonicalForm:
    """Normal form plus the relations that produce it from the input."""

    spec: RecursionSpec
    trace: tuple[Relation, ...]


def normalize(j: int, spec: RecursionSpec) -> CanonicalForm:
    """Reduce a2, then s2, then a1 into {0, .., 2j-1}.

    Each step applies the division algorithm with least-nonnegative
    remainder.  Replaying the returned trace on the input reproduces the
    normal form exactly, and normalizing a normal form is the identity
    up to a zero-multiplier trace.
    """
    if j < 1:
        raise ValueError(f"normalize requires j >= 1, got {j}")
    width = 2 * j
    trace: list[Relation] = []
    cur = spec

    rel = Relation("B", -(cur.a2 // width))
    cur = apply_relation(j, cur, rel)
    trace.append(rel)

    rel = Relation("C", -(cur.s2 // width))
    cur = apply_relation(j, cur, rel)
    trace.append(rel)

    rel = Relation("A", -(cur.a1 // width))
    cur = apply_relation(j, cur, rel)
    trace.append(rel)

    return CanonicalForm(cur, tuple(trace))


def swap_normal(j: int, spec: RecursionSpec) -> RecursionSpec:
    """Normal form after also quotienting by summand order.

    The recursion is symmetric in its two summands, but the A/B/C moves
    never reorder them; this helper normalizes both orders and keeps the
    lexicographically smaller result.
    """
    a = normalize(j, spec).spec
    b = normalize(j, spec.swapped()).spec
    return a if a.astuple() <= b.astuple() else b


class ConditionReport(NamedTuple):
    """The three structural conditions, plus their conjunction."""

    overall: bool
    shifts: bool   # (i)  s1 = 0 = s2 (mod j)
    lags: bool     # (ii) a1 = j = a2 (mod 2j)
    balance: bool  # (iii) 2*(s1 + s2) = a1 + a2


def conditions_hold(j: int, spec: RecursionSpec) -> ConditionReport:
    """Evaluate the three structural conditions (mathematical mod)."""
    if j < 1:
        raise ValueError(f"conditions_hold requires j >= 1, got {j}")
    shifts = spec.s1 % j == 0 and spec.s2 % j == 0
    lags = spec.a1 % (2 * j) == j and spec.a2 % (2 * j) == j
    balance = 2 * (spec.s1 + spec.s2) == spec.a1 + spec.a2
    return ConditionReport(shifts and lags and balance, shifts, lags, balance)


class TheoremViolation(Exception):
    """Structural conditions and the defect scan disagreed: a bug, not data."""

    def __init__(self, j: int, spec: RecursionSpec, conditions: ConditionReport,
                 report: SatisfactionReport):
        self.j = j
        self.spec = spec
        self.conditions = conditions
        self.report = report
        super().__init__(
            f"classification mismatch for {spec} at j={j}: "
            f"conditions={conditions.overall}, formally satisfied={report.satisfied}"
        )


@dataclass(frozen=True)
class Verdict:
    """Everything classify establishes about one spec at one j."""

    spec: RecursionSpec
    j: int
    conditions: ConditionReport
    report: SatisfactionReport
    canonical: CanonicalForm

    @property
    def satisfied(self) -> bool:
        return self.report.satisfied


def classify(j: int, spec: RecursionSpec) -> Verdict:
    """Run both classification routes and the normalizer on one spec.

    The condition test and the defect scan must agree; a disagreement
    raises TheoremViolation rather than returning a verdict.
    """
    conditions = conditions_hold(j, spec)
    report = formally_satisfies(j, spec)
    if conditions.overall != report.satisfied:
        raise TheoremViolation(j, spec, conditions, report)
    return Verdict(spec, j, conditions, report, normalize(j, spec))


@dataclass(frozen=True)
class Box:
    """Inclusive parameter ranges, iterated in (s1, a1, s2, a2) order."""

    s1: tuple[int, int]
    a1: tuple[int, int]
    s2: tuple[int, int]
    a2: tuple[int, int]

    @classmethod
    def default(cls, j: int) -> "Box":
        """The reference box: shifts in [-4j, 4j], lags in [0, 6j-1]."""
        return cls((-4 * j, 4 * j), (0, 6 * j - 1), (-4 * j, 4 * j), (0, 6 * j - 1))

    @staticmethod
    def _span(bounds: tuple[int, int]) -> range:
        lo, hi = bounds
        return range(lo, hi + 1)

    @property
    def count(self) -> int:
        n = 1
        for bounds in (self.s1, self.a1, self.s2, self.a2):
            n *= max(0, bounds[1] - bounds[0] + 1)
        return n

    def iter_specs(self) -> Iterator[RecursionSpec]:
        for s1 in self._span(self.s1):
            for a1 in self._span(self.a1):
                for s2 in self._span(self.s2):
                    for a2 in self._span(self.a2):
                        yield RecursionSpec(s1, a1, s2, a2)


@dataclass(frozen=True)
class SweepResult:
    j: int
    box: Box
    total: int
    satisfying: tuple[RecursionSpec, ...]


def sweep(j: int, box: Box) -> SweepResult:
    """Classify every spec in a box, verifying the two routes agree.

    The box factors: both the defect window and the conditions split
    into independent per-summand contributions, so the satisfying set is
    assembled from the two (s, a) faces in O(face) time instead of
    O(box).  A spec where the routes disagree aborts the whole sweep
    with TheoremViolation, exactly as classify would.
    """
    if j < 1:
        raise ValueError(f"sweep requires j >= 1, got {j}")
    window = range(4 * j)
    c_win = [staircase(j, n) for n in window]
    face1 = [(s, a) for s in Box._span(box.s1) for a in Box._span(box.a1)]
    face2 = [(s, a) for s in Box._span(box.s2) for a in Box._span(box.a2)]

    def branch(s: int, a: int) -> tuple[int, ...]:
        return tuple(staircase(j, n - s - staircase(j, n - a)) for n in window)

    # route 1: zero defect profile <=> branch2 vector == staircase - branch1
    by_vector: dict[tuple[int, ...], list[tuple[int, int]]] = defaultdict(list)
    for s, a in face2:
        by_vector[branch(s, a)].append((s, a))
    via_defect: set[tuple[int, int, int, int]] = set()
    for s1, a1 in face1:
        v1 = branch(s1, a1)
        target = tuple(c - x for c, x in zip(c_win, v1))
        for s2, a2 in by_vector.get(target, ()):
            via_defect.add((s1, a1, s2, a2))

    # route 2: the structural conditions, keyed on 2s - a for balance
    def aligned(s: int, a: int) -> bool:
        return s % j == 0 and a % (2 * j) == j

    by_key: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for s, a in face2:
        if aligned(s, a):
            by_key[2 * s - a].append((s, a))
    via_conditions: set[tuple[int, int, int, int]] = set()
    for s1, a1 in face1:
        if aligned(s1, a1):
            for s2, a2 in by_key.get(-(2 * s1 - a1), ()):
                via_conditions.add((s1, a1, s2, a2))

    if via_defect != via_conditions:
        offender = RecursionSpec(*min(via_defect ^ via_conditions))
        raise TheoremViolation(
            j, offender, conditions_hold(j, offender), formally_satisfies(j, offender)
        )
    satisfying = tuple(RecursionSpec(*t) for t in sorted(via_defect))
    return SweepResult(j=j, box=box, total=box.count, satisfying=satisfying)


def iter_verdicts(j: int, box: Box) -> Iterator[Verdict]:
    """Per-spec verdicts in box order; the slow, fully general route."""
    for spec in box.iter_specs():
        yield classify(j, spec)


def equivalent(
    j: int, x: RecursionSpec, y: RecursionSpec, allow_swap: bool = False
) -> bool:
    """Whether two specs share a normal form under the A/B/C moves.

    Summand order is not quotiented by default: <0,1:1,1> and <1,1:0,1>
    describe the same recursion but normalize apart.  ``allow_swap``
    compares the order-insensitive normal forms instead.
    """
    if allow_swap:
        return swap_normal(j, x) == swap_normal(j, y)
    return normalize(j, x).spec == normalize(j, y).spec
