"""Recursion generation, liveness, formal satisfaction, staircase seeds."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ceilrec import (
    DeadSequence,
    NotSatisfied,
    RecursionSpec,
    SequenceWindow,
    defect,
    format_spec,
    formally_satisfies,
    generate,
    is_slow,
    parse_spec,
    staircase,
    staircase_ics,
)


def audit_references(spec: RecursionSpec, window: SequenceWindow, n_ics: int) -> None:
    """Re-walk a generated window checking every reference stayed in [1, n-1]."""
    assert window.start == 1
    for n in range(n_ics + 1, window.end + 1):
        for s, a in ((spec.s1, spec.a1), (spec.s2, spec.a2)):
            inner = n - a
            assert 1 <= inner <= n - 1
            outer = n - s - window.value_at(inner)
            assert 1 <= outer <= n - 1


# --- spec text ------------------------------------------------------------


def test_spec_parse_and_format():
    spec = parse_spec("<0,1:2,3>")
    assert spec == RecursionSpec(0, 1, 2, 3)
    assert format_spec(spec) == "<0,1:2,3>"
    assert parse_spec("  < -4 , 7 : 0 , -2 >  ") == RecursionSpec(-4, 7, 0, -2)
    assert str(RecursionSpec(-4, 7, 0, -2)) == "<-4,7:0,-2>"


def test_spec_parse_rejects_garbage():
    for bad in ("", "<1,2:3>", "(0,1:2,3)", "<a,1:2,3>", "<0,1,2,3>", "0,1:2,3"):
        with pytest.raises(ValueError):
            parse_spec(bad)


def test_spec_swapped():
    assert RecursionSpec(1, 2, 3, 4).swapped() == RecursionSpec(3, 4, 1, 2)


# --- generate ---------------------------------------------------------------


def test_generate_half_ceiling_instance():
    got = generate(RecursionSpec(0, 1, 2, 3), SequenceWindow(1, (1, 1, 2)), 8)
    assert got.values == (1, 1, 2, 2, 3, 3, 4, 4)


def test_generate_hofstadter_instance():
    got = generate(RecursionSpec(0, 1, 0, 2), SequenceWindow(1, (3, 2, 1)), 7)
    assert got.values == (3, 2, 1, 3, 5, 4, 3)


def test_generate_staircase_instance():
    spec = RecursionSpec(0, 2, 4, 6)
    ics = SequenceWindow(1, tuple(staircase(2, n) for n in range(1, 9)))
    got = generate(spec, ics, 40)
    assert all(v == staircase(2, n) for n, v in got.items())
    audit_references(spec, got, 8)


def test_generate_count_equal_to_ics_is_identity():
    ics = SequenceWindow(1, (4, 7, 9))
    assert generate(RecursionSpec(0, 1, 0, 2), ics, 3) == ics


def test_generate_input_validation():
    ics = SequenceWindow(1, (1, 1, 2))
    with pytest.raises(ValueError):
        generate(RecursionSpec(0, 1, 2, 3), ics, 2)  # count below ics
    with pytest.raises(ValueError):
        generate(RecursionSpec(0, 0, 2, 3), ics, 8)  # a1 not positive
    with pytest.raises(ValueError):
        generate(RecursionSpec(0, 1, 2, -3), ics, 8)  # a2 not positive
    with pytest.raises(ValueError):
        generate(RecursionSpec(0, 1, 2, 3), SequenceWindow(2, (1, 1)), 8)  # base


def test_generate_dead_inner_reference():
    with pytest.raises(DeadSequence) as info:
        generate(RecursionSpec(0, 1, 2, 3), SequenceWindow(1, (1,)), 3)
    assert info.value.n == 2
    assert info.value.bad_index == -1


def test_generate_dead_self_reference():
    # outer index n - s - x(n-a) = n exactly: not yet computed, must die
    with pytest.raises(DeadSequence) as info:
        generate(RecursionSpec(-1, 1, -1, 1), SequenceWindow(1, (1,)), 3)
    assert info.value.n == 2
    assert info.value.bad_index == 2


def test_generate_audit_on_random_survivors():
    rng = random.Random(7)
    spec = RecursionSpec(0, 1, 2, 3)
    for _ in range(20):
        count = rng.randint(3, 200)
        got = generate(spec, SequenceWindow(1, (1, 1, 2)), count)
        assert len(got) == count
        audit_references(spec, got, 3)


# --- defect and formal satisfaction ----------------------------------------


def test_defect_pinned_values():
    assert defect(2, RecursionSpec(0, 2, 2, 2), 5) == 0
    assert defect(1, RecursionSpec(0, 1, 1, 1), 0) == 0
    # frozen from a scan: first nonzero defect of <1,2:2,2> at j=2 is n=1
    window = [defect(2, RecursionSpec(1, 2, 2, 2), n) for n in range(8)]
    assert window[0] == 0
    assert window[1] == -1
    assert any(h != 0 for h in window)


def test_defect_is_total():
    # negative lags and huge |n| are fine: the staircase is defined on all of Z
    assert isinstance(defect(3, RecursionSpec(-5, -2, 7, 0), 10**9), int)
    assert isinstance(defect(3, RecursionSpec(0, 3, 6, 9), -(10**9)), int)


def test_defect_window_periodicity_seeded():
    rng = random.Random(11)
    for j in range(1, 6):
        for _ in range(50):
            spec = RecursionSpec(
                rng.randint(-4 * j, 4 * j),
                rng.randint(0, 6 * j - 1),
                rng.randint(-4 * j, 4 * j),
                rng.randint(0, 6 * j - 1),
            )
            for n in range(4 * j):
                base = defect(j, spec, n)
                assert defect(j, spec, n + 4 * j) == base
                assert defect(j, spec, n - 8 * j) == base


def test_formally_satisfies_positive_cases():
    assert formally_satisfies(2, RecursionSpec(0, 2, 4, 6)).satisfied
    assert formally_satisfies(1, RecursionSpec(0, 1, 2, 3)).satisfied
    for j in range(1, 9):
        assert formally_satisfies(j, RecursionSpec(0, j, 2 * j, 3 * j)).satisfied


def test_formally_satisfies_negative_case_with_witness():
    report = formally_satisfies(2, RecursionSpec(1, 2, 4, 6))
    assert not report.satisfied
    assert report.witness == 1  # frozen from the defect scan
    assert dict(report.defects)[report.witness] != 0


def test_satisfaction_report_shape():
    for j, spec in ((1, RecursionSpec(0, 1, 2, 3)), (3, RecursionSpec(1, 1, 1, 1))):
        report = formally_satisfies(j, spec)
        assert [n for n, _ in report.defects] == list(range(4 * j))
        assert (report.witness is None) == report.satisfied
        if not report.satisfied:
            nonzero = [n for n, h in report.defects if h != 0]
            assert report.witness == nonzero[0]
    with pytest.raises(ValueError):
        formally_satisfies(0, RecursionSpec(0, 1, 2, 3))


@given(j=st.integers(1, 5), n=st.integers(-100, 100))
def test_staircase_satisfies_its_own_recursions(j, n):
    assert defect(j, RecursionSpec(0, j, 2 * j, 3 * j), n) == 0
    assert defect(j, RecursionSpec(0, j, j, j), n) == 0


# --- is_slow ----------------------------------------------------------------


def test_is_slow():
    assert is_slow(SequenceWindow(1, (1, 1, 2, 2, 3)))
    assert not is_slow(SequenceWindow(1, (1, 2, 4)))
    assert not is_slow(SequenceWindow(1, (3, 2, 1)))  # drops are not slow
    assert is_slow(SequenceWindow(5, (7,)))


def test_generated_staircases_are_slow():
    for j in (1, 2, 4):
        ics = staircase_ics(j, RecursionSpec(0, j, 2 * j, 3 * j))
        got = generate(RecursionSpec(0, j, 2 * j, 3 * j), ics, 500)
        assert is_slow(got)


# --- staircase_ics ----------------------------------------------------------


def test_ics_pinned_example():
    assert staircase_ics(1, RecursionSpec(0, 1, 2, 3), 3).values == (1, 1, 2)


def test_ics_requested_returns_prefix_verbatim():
    got = staircase_ics(2, RecursionSpec(0, 2, 4, 6), 5)
    assert got.start == 1
    assert got.values == tuple(staircase(2, n) for n in range(1, 6))
    with pytest.raises(ValueError):
        staircase_ics(2, RecursionSpec(0, 2, 4, 6), 0)


def test_ics_search_finds_regenerating_prefix():
    for j in (1, 2, 3, 4):
        spec = RecursionSpec(0, j, 2 * j, 3 * j)
        ics = staircase_ics(j, spec)
        assert ics.values == tuple(staircase(j, n) for n in range(1, len(ics) + 1))
        got = generate(spec, ics, 2000)
        assert all(v == staircase(j, n) for n, v in got.items())


def test_ics_search_is_minimal():
    spec = RecursionSpec(0, 2, 4, 6)
    m = len(staircase_ics(2, spec))
    horizon = max(10 * (m - 1), 80)
    for shorter in range(1, m):
        prefix = SequenceWindow(1, tuple(staircase(2, n) for n in range(1, shorter + 1)))
        try:
            got = generate(spec, prefix, horizon)
        except DeadSequence:
            continue
        assert any(v != staircase(2, n) for n, v in got.items())


def test_ics_not_satisfied():
    with pytest.raises(NotSatisfied):
        staircase_ics(1, RecursionSpec(1, 1, 2, 3))
    with pytest.raises(ValueError):
        staircase_ics(1, RecursionSpec(0, -1, 2, 3))
