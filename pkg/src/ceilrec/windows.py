"""Contiguous integer-indexed windows of sequence values, with file I/O.

Two interchange formats are supported: whitespace-separated "n value"
lines (the b-file convention, comments starting with '#' allowed) and
two-column CSV "n,value" with an optional header row.  Indices must be
contiguous and ascending in both.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

__all__ = [
    "SequenceWindow",
    "parse_bfile",
    "format_bfile",
    "parse_csv",
    "format_csv",
    "parse_window",
    "render_window",
]


@dataclass(frozen=True)
class SequenceWindow:
    """Values at the contiguous indices start, start+1, ..."""

    start: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise ValueError("a SequenceWindow must hold at least one value")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def end(self) -> int:
        """Index of the last value (inclusive)."""
        return self.start + len(self.values) - 1

    def value_at(self, n: int) -> int:
        if not self.start <= n <= self.end:
            raise IndexError(f"index {n} outside window [{self.start}, {self.end}]")
        return self.values[n - self.start]

    def items(self) -> Iterator[tuple[int, int]]:
        return ((self.start + i, v) for i, v in enumerate(self.values))


def parse_bfile(text: str) -> SequenceWindow:
    """Read "n value" lines; blank lines and '#' comments are skipped."""
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected 'n value', got {raw!r}")
        try:
            pairs.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer field in {raw!r}") from None
    return _window_from_pairs(pairs)


def format_bfile(window: SequenceWindow) -> str:
    return "".join(f"{n} {v}\n" for n, v in window.items())


def parse_csv(text: str) -> SequenceWindow:
    """Read "n,value" rows; '#' comments and one header row are tolerated."""
    pairs: list[tuple[int, int]] = []
    header_seen = False
    for rowno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if row[0].lstrip().startswith("#"):
            continue
        if len(row) != 2:
            raise ValueError(f"row {rowno}: expected two columns, got {row!r}")
        try:
            pairs.append((int(row[0]), int(row[1])))
        except ValueError:
            if not header_seen and not pairs:
                header_seen = True  # one leading header row is fine
                continue
            raise ValueError(f"row {rowno}: non-integer field in {row!r}") from None
    return _window_from_pairs(pairs)


def format_csv(window: SequenceWindow) -> str:
    return "n,value\n" + "".join(f"{n},{v}\n" for n, v in window.items())


def _window_from_pairs(pairs: list[tuple[int, int]]) -> SequenceWindow:
    if not pairs:
        raise ValueError("no data rows found")
    start = pairs[0][0]
    for offset, (n, _) in enumerate(pairs):
        if n != start + offset:
            raise ValueError(
                f"indices must be contiguous and ascending; expected {start + offset}, got {n}"
            )
    return SequenceWindow(start, tuple(v for _, v in pairs))


def parse_window(text: str, fmt: Optional[str] = None) -> SequenceWindow:
    """Parse either supported format; sniff commas when fmt is None."""
    if fmt is None:
        fmt = "csv" if _looks_like_csv(text) else "bfile"
    if fmt == "csv":
        return parse_csv(text)
    if fmt == "bfile":
        return parse_bfile(text)
    raise ValueError(f"unknown window format {fmt!r}")


def render_window(window: SequenceWindow, fmt: str = "bfile") -> str:
    if fmt == "csv":
        return format_csv(window)
    if fmt == "bfile":
        return format_bfile(window)
    raise ValueError(f"unknown window format {fmt!r}")


def _looks_like_csv(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        return "," in line
    return False
