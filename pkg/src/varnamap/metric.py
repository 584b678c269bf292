"""Path distances on the phonetic map, inter-word matrices and centrality.

A word is walked from the origin through the coordinates of its phonemes.
Each step adds the absolute row change and the absolute column change to
two separate running totals; the totals are never collapsed into a single
number except for ranking.
"""

from __future__ import annotations

import csv
import io
import unicodedata
from dataclasses import dataclass
from typing import Sequence

from .phonology import ORIGIN, Coordinate, PhoneticMap, format_half
from .translit import PhonemeSequence, render, tokenize


@dataclass(frozen=True)
class DistancePair:
    """Row-axis and column-axis travel, both in half units."""

    dx: int = 0
    dy: int = 0

    @classmethod
    def of(cls, dx, dy) -> "DistancePair":
        c = Coordinate.of(dx, dy)
        return cls(c.row2, c.col2)

    def __add__(self, other: "DistancePair") -> "DistancePair":
        return DistancePair(self.dx + other.dx, self.dy + other.dy)

    def __le__(self, other: "DistancePair") -> bool:
        # componentwise
        return self.dx <= other.dx and self.dy <= other.dy

    @property
    def score(self) -> int:
        """Total Manhattan travel in half units."""
        return self.dx + self.dy

    def units(self) -> tuple[float, float]:
        return self.dx / 2, self.dy / 2

    def __str__(self) -> str:
        return f"{format_half(self.dx)},{format_half(self.dy)}"

    @classmethod
    def parse(cls, text: str) -> "DistancePair":
        dx, dy = text.split(",")
        return cls.of(dx.strip(), dy.strip())


def step(p: Coordinate, q: Coordinate) -> DistancePair:
    return DistancePair(abs(p.row2 - q.row2), abs(p.col2 - q.col2))


@dataclass(frozen=True)
class WordPath:
    seq: PhonemeSequence
    coords: tuple[Coordinate, ...]
    cumulative: tuple[DistancePair, ...]

    @property
    def total(self) -> DistancePair:
        return self.cumulative[-1] if self.cumulative else DistancePair()

    def prefixes(self) -> list[str]:
        return [render(self.seq.phonemes[:i + 1]) for i in range(len(self.seq))]


def _as_sequence(pmap: PhoneticMap, word) -> PhonemeSequence:
    if isinstance(word, PhonemeSequence):
        return word
    if isinstance(word, str):
        return tokenize(pmap, word)
    return PhonemeSequence(tuple(word), render(word))


def word_path(pmap: PhoneticMap, word) -> WordPath:
    seq = _as_sequence(pmap, word)
    coords = tuple(pmap.coordinate_of(p) for p in seq)
    total = DistancePair()
    prev = ORIGIN
    cumulative = []
    for c in coords:
        total = total + step(prev, c)
        cumulative.append(total)
        prev = c
    return WordPath(seq, coords, tuple(cumulative))


def word_distance(pmap: PhoneticMap, word) -> DistancePair:
    return word_path(pmap, word).total


def inter_word_distance(a: DistancePair, b: DistancePair) -> DistancePair:
    return DistancePair(abs(a.dx - b.dx), abs(a.dy - b.dy))


class MalformedMatrix(ValueError):
    pass


@dataclass(frozen=True)
class DistanceMatrix:
    words: tuple[str, ...]
    cells: tuple[tuple[DistancePair, ...], ...]

    def __post_init__(self):
        n = len(self.words)
        if len(self.cells) != n or any(len(row) != n for row in self.cells):
            raise MalformedMatrix("matrix is not square over its word list")

    @property
    def row_sums(self) -> tuple[DistancePair, ...]:
        sums = []
        for row in self.cells:
            acc = DistancePair()
            for cell in row:
                acc = acc + cell
            sums.append(acc)
        return tuple(sums)

    def cell(self, a: str, b: str) -> DistancePair:
        return self.cells[self.words.index(a)][self.words.index(b)]

    def row_sum(self, word: str) -> DistancePair:
        return self.row_sums[self.words.index(word)]

    def to_rows(self) -> list[list[str]]:
        rows = [["", *self.words, "Row Sum"]]
        for word, row, total in zip(self.words, self.cells, self.row_sums):
            rows.append([word, *(str(c) for c in row), str(total)])
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.to_rows())
        return buf.getvalue()

    def to_table(self) -> str:
        return format_table(self.to_rows(), left_columns=1)

    @classmethod
    def from_csv(cls, text: str) -> "DistanceMatrix":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0][-1:] != ["Row Sum"]:
            raise MalformedMatrix("missing header with a trailing 'Row Sum' column")
        words = tuple(rows[0][1:-1])
        body = rows[1:]
        if [r[0] for r in body] != list(words):
            raise MalformedMatrix("row labels do not match the header")
        try:
            cells = tuple(tuple(DistancePair.parse(c) for c in r[1:-1]) for r in body)
            sums = [DistancePair.parse(r[-1]) for r in body]
        except ValueError as exc:
            raise MalformedMatrix(f"bad cell: {exc}") from None
        matrix = cls(words, cells)
        if list(matrix.row_sums) != sums:
            raise MalformedMatrix("row sums disagree with the cells")
        return matrix


def display_width(text: str) -> int:
    return sum(1 for ch in text if not unicodedata.combining(ch))


def format_table(rows: Sequence[Sequence[str]], left_columns: int = 0) -> str:
    """Align columns; the first ``left_columns`` are left-aligned, the rest right."""
    widths = [max(display_width(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        parts = []
        for i, cell in enumerate(r):
            pad = " " * (widths[i] - display_width(cell))
            parts.append(cell + pad if i < left_columns else pad + cell)
        lines.append("  ".join(parts).rstrip())
    return "\n".join(lines) + "\n"


def distance_matrix(pmap: PhoneticMap, words, labels: Sequence[str] | None = None) -> DistanceMatrix:
    seqs = [_as_sequence(pmap, w) for w in words]
    if not seqs:
        raise ValueError("distance_matrix needs at least one word")
    if labels is None:
        labels = [render(s) for s in seqs]
    totals = [word_distance(pmap, s) for s in seqs]
    cells = tuple(tuple(inter_word_distance(a, b) for b in totals) for a in totals)
    return DistanceMatrix(tuple(labels), cells)


@dataclass(frozen=True)
class Centrality:
    rank: int
    word: str
    row_sum: DistancePair
    score: int  # half units


def central_words(matrix: DistanceMatrix) -> list[Centrality]:
    """Rank words by total row-sum travel, lowest first.

    Equal scores share a rank (1, 1, 3, ...) and keep their input order.
    """
    scored = sorted(
        zip(matrix.words, matrix.row_sums),
        key=lambda item: item[1].score,
    )
    out: list[Centrality] = []
    for pos, (word, total) in enumerate(scored, start=1):
        rank = out[-1].rank if out and out[-1].score == total.score else pos
        out.append(Centrality(rank, word, total, total.score))
    return out


@dataclass(frozen=True)
class AlphabetDiff:
    gained: frozenset[str]
    lost: frozenset[str]
    shift_candidates: tuple[tuple[str, str, DistancePair], ...]


def alphabet_diff(pmap: PhoneticMap, reference, cognate) -> AlphabetDiff:
    """Sounds gained and lost going from ``reference`` to ``cognate``.

    Every lost sound is paired with the nearest gained sound on the map
    (ties broken by id) as a candidate sound shift.
    """
    ref = set(_as_sequence(pmap, reference))
    cog = set(_as_sequence(pmap, cognate))
    gained, lost = cog - ref, ref - cog
    shifts = []
    for lost_id in sorted(lost):
        if not gained:
            break
        here = pmap.coordinate_of(lost_id)
        nearest = min(sorted(gained), key=lambda g: step(here, pmap.coordinate_of(g)).score)
        shifts.append((lost_id, nearest, step(here, pmap.coordinate_of(nearest))))
    return AlphabetDiff(frozenset(gained), frozenset(lost), tuple(shifts))
