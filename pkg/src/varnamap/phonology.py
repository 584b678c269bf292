"""Phoneme inventory and coordinates on the two-dimensional phonetic map.

Rows grow from the vowels (bottom) towards the nasals (top); columns grow
from the throat (velar) towards the lips (labial).  Coordinates live on a
half-unit grid and are stored doubled, so every distance computed from
them is an exact integer number of half units.
"""

from __future__ import annotations

import unicodedata
import warnings
from dataclasses import dataclass, replace
from decimal import Decimal, InvalidOperation
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Mapping

CATEGORIES = ("vowel", "semivowel", "sibilant", "aspirate", "consonant")
PLACES = ("guttural", "palatal", "cerebral", "dental", "labial", "none")
MANNERS = ("tenuis", "aspirated", "voiced", "voiced-aspirated", "nasal", "none")

# Consonant manner is fixed by the row band of the map.
MANNER_ROWS = {
    "tenuis": 13,
    "aspirated": 14,
    "voiced": 15,
    "voiced-aspirated": 16,
    "nasal": 17,
}

# Phonemes that may not begin a word.
NON_INITIAL = frozenset({"ṁ", "ḥ"})


class UnknownPhoneme(KeyError):
    def __init__(self, phoneme_id: str):
        super().__init__(phoneme_id)
        self.phoneme_id = phoneme_id

    def __str__(self) -> str:
        return f"unknown phoneme {self.phoneme_id!r}"


class DuplicatePhoneme(ValueError):
    def __init__(self, phoneme_id: str):
        super().__init__(f"phoneme {phoneme_id!r} is already registered")
        self.phoneme_id = phoneme_id


class CoordinateCollision(UserWarning):
    """An extension landed on a cell that is already occupied."""


class MalformedExtensionLine(ValueError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


def _half_units(value) -> int:
    try:
        doubled = Decimal(str(value)) * 2
    except InvalidOperation:
        raise ValueError(f"not a number: {value!r}") from None
    if doubled != doubled.to_integral_value():
        raise ValueError(f"{value!r} is not on the half-unit grid")
    return int(doubled)


def format_half(n: int) -> str:
    """Render a half-unit integer: ``18 -> '9'``, ``19 -> '9.5'``."""
    if n % 2 == 0:
        return str(n // 2)
    return f"{n / 2:.1f}"


@dataclass(frozen=True, order=True)
class Coordinate:
    """A point on the map, both axes stored as twice their value."""

    row2: int
    col2: int

    @classmethod
    def of(cls, row, col) -> "Coordinate":
        return cls(_half_units(row), _half_units(col))

    @property
    def row(self) -> float:
        return self.row2 / 2

    @property
    def col(self) -> float:
        return self.col2 / 2

    def __str__(self) -> str:
        return f"({format_half(self.row2)}, {format_half(self.col2)})"


ORIGIN = Coordinate(0, 0)


@dataclass(frozen=True)
class Phoneme:
    id: str
    coordinate: Coordinate
    category: str
    place: str = "none"
    manner: str = "none"
    devanagari: str = ""

    def __post_init__(self):
        object.__setattr__(self, "id", unicodedata.normalize("NFC", self.id))
        if not self.id:
            raise ValueError("phoneme id must be non-empty")
        if self.category not in CATEGORIES:
            raise ValueError(f"{self.id}: unknown category {self.category!r}")
        if self.place not in PLACES:
            raise ValueError(f"{self.id}: unknown place {self.place!r}")
        if self.manner not in MANNERS:
            raise ValueError(f"{self.id}: unknown manner {self.manner!r}")
        if self.category == "consonant":
            if self.place == "none" or self.manner == "none":
                raise ValueError(f"{self.id}: consonants need a place and a manner")
        elif self.place != "none" or self.manner != "none":
            raise ValueError(f"{self.id}: only consonants carry place/manner")


_VOWELS = [
    ("a", "अ", 7, 1), ("ā", "आ", 7, 2), ("i", "इ", 7, 3), ("ī", "ई", 7, 4),
    ("ṛ", "ऋ", 7, 5), ("ṝ", "ॠ", 7, 6), ("ḷ̥", "ऌ", 7, 7), ("ḹ", "ॡ", 7, 8),
    ("u", "उ", 7, 9), ("ū", "ऊ", 7, 10), ("ai", "ऐ", 6, 2), ("e", "ए", 5, 2),
    ("au", "औ", 4, 5), ("o", "ओ", 3, 5), ("ṁ", "ं", 2, 5), ("ḥ", "ः", 1, 1),
]

_CONSONANTS = [
    ("k", "क", 13, 1, "guttural", "tenuis"),
    ("kh", "ख", 14, 2, "guttural", "aspirated"),
    ("g", "ग", 15, 1, "guttural", "voiced"),
    ("gh", "घ", 16, 2, "guttural", "voiced-aspirated"),
    ("ṅ", "ङ", 17, 1.5, "guttural", "nasal"),
    ("c", "च", 13, 3, "palatal", "tenuis"),
    ("ch", "छ", 14, 4, "palatal", "aspirated"),
    ("j", "ज", 15, 3, "palatal", "voiced"),
    ("jh", "झ", 16, 4, "palatal", "voiced-aspirated"),
    ("ñ", "ञ", 17, 3.5, "palatal", "nasal"),
    ("ṭ", "ट", 13, 5, "cerebral", "tenuis"),
    ("ṭh", "ठ", 14, 6, "cerebral", "aspirated"),
    ("ḍ", "ड", 15, 5, "cerebral", "voiced"),
    ("ḻ", "ळ", 15, 6, "cerebral", "voiced"),
    ("ḍh", "ढ", 16, 6, "cerebral", "voiced-aspirated"),
    ("ṇ", "ण", 17, 5.5, "cerebral", "nasal"),
    ("t", "त", 13, 7, "dental", "tenuis"),
    ("th", "थ", 14, 8, "dental", "aspirated"),
    ("d", "द", 15, 7, "dental", "voiced"),
    ("dh", "ध", 16, 8, "dental", "voiced-aspirated"),
    ("n", "न", 17, 7.5, "dental", "nasal"),
    ("p", "प", 13, 9, "labial", "tenuis"),
    ("ph", "फ", 14, 10, "labial", "aspirated"),
    ("b", "ब", 15, 9, "labial", "voiced"),
    ("bh", "भ", 16, 10, "labial", "voiced-aspirated"),
    ("m", "म", 17, 9.5, "labial", "nasal"),
]

_OTHERS = [
    ("ś", "श", 12, 3.5, "sibilant"),
    ("ṣ", "ष", 12, 5.5, "sibilant"),
    ("s", "स", 12, 7.5, "sibilant"),
    ("h", "ह", 12, 1.5, "aspirate"),
    ("y", "य", 8, 2.5, "semivowel"),
    ("r", "र", 9, 3.5, "semivowel"),
    ("l", "ल", 10, 4.5, "semivowel"),
    ("v", "व", 11, 5.5, "semivowel"),
]


def _canonical_phonemes() -> list[Phoneme]:
    out = [Phoneme(i, Coordinate.of(r, c), "vowel", devanagari=dv) for i, dv, r, c in _VOWELS]
    for i, dv, r, c, place, manner in _CONSONANTS:
        out.append(Phoneme(i, Coordinate.of(r, c), "consonant", place, manner, dv))
    out.extend(Phoneme(i, Coordinate.of(r, c), cat, devanagari=dv) for i, dv, r, c, cat in _OTHERS)
    return out


class PhoneticMap(Mapping[str, Phoneme]):
    """An immutable registry of phonemes keyed by romanized id."""

    def __init__(self, phonemes: Iterable[Phoneme], extensions: Iterable[str] = ()):
        table: dict[str, Phoneme] = {}
        for p in phonemes:
            if p.id in table:
                raise DuplicatePhoneme(p.id)
            table[p.id] = p
        self._phonemes = table
        self._extensions = tuple(extensions)
        missing = [e for e in self._extensions if e not in table]
        if missing:
            raise UnknownPhoneme(missing[0])

    def __getitem__(self, phoneme_id: str) -> Phoneme:
        return self._phonemes[phoneme_id]

    def __iter__(self) -> Iterator[str]:
        return iter(self._phonemes)

    def __len__(self) -> int:
        return len(self._phonemes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhoneticMap):
            return NotImplemented
        return self._phonemes == other._phonemes and set(self._extensions) == set(other._extensions)

    def __hash__(self) -> int:
        return hash(frozenset(self._phonemes.values()))

    def __repr__(self) -> str:
        return f"PhoneticMap({len(self)} phonemes, {len(self._extensions)} extensions)"

    @property
    def extensions(self) -> tuple[str, ...]:
        return self._extensions

    def lookup(self, phoneme_id: str) -> Phoneme:
        try:
            return self._phonemes[phoneme_id]
        except KeyError:
            raise UnknownPhoneme(phoneme_id) from None

    def coordinate_of(self, phoneme_id: str) -> Coordinate:
        return self.lookup(phoneme_id).coordinate

    def at(self, coordinate: Coordinate) -> list[Phoneme]:
        return [p for p in self._phonemes.values() if p.coordinate == coordinate]

    def register_extension(
        self,
        phoneme_id: str,
        coordinate: Coordinate,
        category: str,
        place: str = "none",
        manner: str = "none",
        devanagari: str = "",
        on_collision: str = "warn",
    ) -> "PhoneticMap":
        """Return a new map that also contains ``phoneme_id``.

        ``on_collision`` is one of ``"warn"``, ``"error"`` or ``"ignore"`` and
        decides what happens when the cell is already occupied.
        """
        phoneme_id = unicodedata.normalize("NFC", phoneme_id)
        if phoneme_id in self._phonemes:
            raise DuplicatePhoneme(phoneme_id)
        new = Phoneme(phoneme_id, coordinate, category, place, manner, devanagari)
        occupants = self.at(coordinate)
        if occupants and on_collision != "ignore":
            msg = (f"{phoneme_id!r} shares {coordinate} with "
                   + ", ".join(repr(p.id) for p in occupants))
            if on_collision == "error":
                raise CoordinateCollision(msg)
            warnings.warn(msg, CoordinateCollision, stacklevel=2)
        return PhoneticMap([*self._phonemes.values(), new], (*self._extensions, phoneme_id))

    def with_coordinate(self, phoneme_id: str, coordinate: Coordinate) -> "PhoneticMap":
        """Copy of the map with one phoneme moved; used to replay printed tables."""
        old = self.lookup(phoneme_id)
        moved = [replace(old, coordinate=coordinate) if p.id == phoneme_id else p
                 for p in self._phonemes.values()]
        return PhoneticMap(moved, self._extensions)


@lru_cache(maxsize=None)
def canonical_map() -> PhoneticMap:
    return PhoneticMap(_canonical_phonemes())


def parse_extensions(lines: Iterable[str], base: PhoneticMap | None = None,
                     on_collision: str = "warn") -> PhoneticMap:
    """Apply tab-separated extension lines to ``base`` (canonical by default).

    Each non-blank line reads ``id, row, col, category, place, manner``;
    ``#`` starts a comment line.
    """
    pmap = canonical_map() if base is None else base
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise MalformedExtensionLine(line_no, f"expected 6 tab-separated fields, got {len(fields)}")
        pid, row, col, category, place, manner = (f.strip() for f in fields)
        try:
            coord = Coordinate.of(row, col)
        except ValueError as exc:
            raise MalformedExtensionLine(line_no, str(exc)) from None
        try:
            pmap = pmap.register_extension(pid, coord, category, place, manner,
                                           on_collision=on_collision)
        except DuplicatePhoneme:
            raise MalformedExtensionLine(line_no, f"phoneme {pid!r} already registered") from None
        except CoordinateCollision:
            raise
        except ValueError as exc:
            raise MalformedExtensionLine(line_no, str(exc)) from None
    return pmap


def load_extensions(path, base: PhoneticMap | None = None, on_collision: str = "warn") -> PhoneticMap:
    with open(Path(path), encoding="utf-8") as fh:
        return parse_extensions(fh, base, on_collision)
