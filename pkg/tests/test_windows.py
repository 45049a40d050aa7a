"""SequenceWindow semantics and the two interchange formats."""

import pytest

from ceilrec import (
    SequenceWindow,
    format_bfile,
    format_csv,
    parse_bfile,
    parse_csv,
    parse_window,
    render_window,
)


def test_window_basics():
    w = SequenceWindow(3, (7, 8, 9))
    assert len(w) == 3
    assert w.end == 5
    assert w.value_at(3) == 7
    assert w.value_at(5) == 9
    assert list(w.items()) == [(3, 7), (4, 8), (5, 9)]


def test_window_value_at_bounds():
    w = SequenceWindow(1, (4, 5))
    with pytest.raises(IndexError):
        w.value_at(0)
    with pytest.raises(IndexError):
        w.value_at(3)


def test_window_requires_values():
    with pytest.raises(ValueError):
        SequenceWindow(1, ())


def test_window_normalizes_values_to_tuple():
    w = SequenceWindow(1, [1, 2, 3])
    assert w.values == (1, 2, 3)


def test_bfile_round_trip():
    w = SequenceWindow(-2, (5, -1, 0, 3))
    text = format_bfile(w)
    assert text == "-2 5\n-1 -1\n0 0\n1 3\n"
    assert parse_bfile(text) == w


def test_bfile_comments_and_blanks():
    text = "# a comment\n\n1 10\n2 20\n   \n3 30\n"
    assert parse_bfile(text) == SequenceWindow(1, (10, 20, 30))


def test_bfile_errors():
    with pytest.raises(ValueError):
        parse_bfile("1 2 3\n")
    with pytest.raises(ValueError):
        parse_bfile("1 x\n")
    with pytest.raises(ValueError):
        parse_bfile("1 10\n3 30\n")  # gap
    with pytest.raises(ValueError):
        parse_bfile("2 10\n1 30\n")  # descending
    with pytest.raises(ValueError):
        parse_bfile("# only comments\n")


def test_csv_round_trip():
    w = SequenceWindow(0, (1, 1, 2))
    text = format_csv(w)
    assert text == "n,value\n0,1\n1,1\n2,2\n"
    assert parse_csv(text) == w


def test_csv_without_header():
    assert parse_csv("5,9\n6,10\n") == SequenceWindow(5, (9, 10))


def test_csv_errors():
    with pytest.raises(ValueError):
        parse_csv("1,2,3\n")
    with pytest.raises(ValueError):
        parse_csv("1,2\nx,3\n")  # non-header junk past row one
    with pytest.raises(ValueError):
        parse_csv("n,value\n")  # header only, no data


def test_parse_window_sniffing():
    assert parse_window("1 5\n2 6\n") == SequenceWindow(1, (5, 6))
    assert parse_window("n,value\n1,5\n2,6\n") == SequenceWindow(1, (5, 6))
    assert parse_window("# note\n1,5\n") == SequenceWindow(1, (5,))
    assert parse_window("1,5\n", fmt="csv") == SequenceWindow(1, (5,))
    with pytest.raises(ValueError):
        parse_window("1 5\n", fmt="tsv")


def test_render_window_formats():
    w = SequenceWindow(1, (2, 4))
    assert render_window(w, "bfile") == "1 2\n2 4\n"
    assert render_window(w, "csv") == "n,value\n1,2\n2,4\n"
    with pytest.raises(ValueError):
        render_window(w, "xml")
