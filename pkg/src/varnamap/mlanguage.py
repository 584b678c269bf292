"""Themed word groups (m-languages), their alphabets and the lexicon file."""

from __future__ import annotations

import unicodedata
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from . import automata
from .baselines import levenshtein
from .metric import DistancePair, inter_word_distance, word_distance
from .phonology import PhoneticMap, load_extensions
from .translit import PhonemeSequence, normalize, render, tokenize


@dataclass(frozen=True)
class LanguageCode:
    code: str
    display_name: str
    indic: bool = False


_EUROPEAN = [
    ("En", "English"), ("Ge", "German"), ("Ru", "Russian"), ("Gr", "Greek"),
    ("Ro", "Romanian"), ("La", "Latin"), ("Latv", "Latvian"), ("Fr", "French"),
    ("Li", "Lithuanian"), ("It", "Italian"), ("We", "Welsh"), ("Da", "Danish"),
    ("Du", "Dutch"), ("Sp", "Spanish"), ("Po", "Polish"), ("Por", "Portuguese"),
    ("Bu", "Bulgarian"), ("Co", "Corsican"), ("Cr", "Croatian"), ("Uk", "Ukrainian"),
    ("SG", "Scottish Gaelic"), ("Ir", "Irish"), ("Sl", "Slovak"),
]
_INDIAN = [
    ("Sa", "Sanskrit"), ("Pr", "Prakrit"), ("Hi", "Hindi"), ("Ma", "Marathi"),
    ("Pu", "Punjabi"), ("Ko", "Konkani"), ("Be", "Bengali"), ("Ka", "Kannada"),
    ("Ta", "Tamil"), ("Te", "Telugu"), ("Mal", "Malayalam"), ("Si", "Sinhala"),
]
# Languages that occur in the word bank but have no code in the source table.
_EXTRA = [
    ("Sw", "Swedish", False), ("Cz", "Czech", False), ("Fi", "Finnish", False),
    ("Gu", "Gujarati", True), ("Tu", "Tulu", True), ("Or", "Odia", True),
    ("Ne", "Nepali", True), ("Un", "unspecified", False),
]

LANGUAGE_CODES: dict[str, LanguageCode] = {
    **{c: LanguageCode(c, n) for c, n in _EUROPEAN},
    **{c: LanguageCode(c, n, True) for c, n in _INDIAN},
    **{c: LanguageCode(c, n, i) for c, n, i in _EXTRA},
}
INDIC_CODES = frozenset(c for c, lang in LANGUAGE_CODES.items() if lang.indic)

MEMBERSHIPS = ("member", "non_member")


class LexiconError(ValueError):
    pass


class MalformedLine(LexiconError):
    def __init__(self, line_no: int, reason: str, source: str = ""):
        where = f"{source}:{line_no}" if source else f"line {line_no}"
        super().__init__(f"{where}: {reason}")
        self.line_no = line_no
        self.reason = reason


class UnknownLanguageCode(LexiconError):
    def __init__(self, line_no: int, code: str, source: str = ""):
        where = f"{source}:{line_no}" if source else f"line {line_no}"
        super().__init__(f"{where}: unknown language code {code!r}")
        self.line_no = line_no
        self.code = code


class UnknownTheme(LookupError):
    def __init__(self, theme_id: str):
        super().__init__(f"no word group named {theme_id!r}")
        self.theme_id = theme_id


class GroupTokenizationError(LexiconError):
    def __init__(self, entry: "LexiconEntry", cause: Exception):
        super().__init__(f"line {entry.line_no} ({entry.theme_id}): {cause}")
        self.entry = entry
        self.cause = cause


@dataclass(frozen=True)
class LexiconEntry:
    theme_id: str
    word: str
    language: LanguageCode
    membership: str
    notes: str = ""
    line_no: int = 0

    def note_fields(self) -> dict[str, str]:
        """``key=value`` items of the notes column, split on ``;``."""
        out = {}
        for item in self.notes.split(";"):
            key, sep, value = item.partition("=")
            if sep:
                out[key.strip()] = value.strip()
        return out


def parse_lexicon(lines: Iterable[str], source: str = "") -> list[LexiconEntry]:
    entries = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if not 4 <= len(fields) <= 5:
            raise MalformedLine(line_no, f"expected 4 or 5 tab-separated fields, got {len(fields)}", source)
        theme_id, word, code, membership = (f.strip() for f in fields[:4])
        notes = fields[4].strip() if len(fields) == 5 else ""
        if not theme_id or not word:
            raise MalformedLine(line_no, "theme and word must be non-empty", source)
        if membership not in MEMBERSHIPS:
            raise MalformedLine(line_no, f"membership must be 'member' or 'non_member', got {membership!r}",
                                source)
        if code not in LANGUAGE_CODES:
            raise UnknownLanguageCode(line_no, code, source)
        word = unicodedata.normalize("NFC", word)
        entries.append(LexiconEntry(theme_id, word, LANGUAGE_CODES[code], membership, notes, line_no))
    return entries


def load_lexicon(path) -> list[LexiconEntry]:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh, str(path))


@dataclass(frozen=True)
class Member:
    seq: PhonemeSequence
    languages: tuple[str, ...]

    @property
    def word(self) -> str:
        return render(self.seq)


@dataclass(frozen=True)
class NonMember:
    entry: LexiconEntry
    seq: PhonemeSequence | None  # None when the word does not tokenize

    @property
    def untokenizable(self) -> bool:
        return self.seq is None


@dataclass(frozen=True)
class MLanguage:
    theme_id: str
    theme: str
    members: tuple[Member, ...]
    non_members: tuple[NonMember, ...] = ()
    curated_core: frozenset[str] | None = None
    paper_variant: frozenset[str] | None = None
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def words(self) -> list[str]:
        return [m.word for m in self.members]

    @property
    def extended_alphabet(self) -> frozenset[str]:
        return extended_alphabet(self)

    @property
    def core_alphabet(self) -> frozenset[str]:
        """Curated core if the lexicon gives one, otherwise sounds shared by every member."""
        if self.curated_core is not None:
            return self.curated_core
        return core_alphabet_heuristic(self, 1.0)

    def core_discrepancy(self) -> frozenset[str]:
        """Curated core sounds that no member actually uses."""
        if self.curated_core is None:
            return frozenset()
        return self.curated_core - self.extended_alphabet

    def restricted_to(self, codes: Iterable[str]) -> "MLanguage":
        """Members attested in at least one of ``codes``, keeping only those codes."""
        codes = set(codes)
        kept = []
        for m in self.members:
            langs = tuple(c for c in m.languages if c in codes)
            if langs:
                kept.append(Member(m.seq, langs))
        return MLanguage(self.theme_id, self.theme, tuple(kept), self.non_members,
                         self.curated_core, self.paper_variant, self.notes)

    def without(self, words: Iterable[str]) -> "MLanguage":
        drop = {normalize(w) for w in words}
        kept = tuple(m for m in self.members if m.word not in drop)
        return MLanguage(self.theme_id, self.theme, kept, self.non_members,
                         self.curated_core, self.paper_variant, self.notes)


def _id_set(text: str) -> frozenset[str]:
    return frozenset(normalize(x) for x in text.split(",") if x.strip())


def group_by_theme(entries: Iterable[LexiconEntry], pmap: PhoneticMap) -> list[MLanguage]:
    """One :class:`MLanguage` per theme id, in order of first appearance.

    Member words are tokenized (a failure names the offending line).  Repeated
    member words merge their language codes.  Non-members that do not tokenize
    are kept with ``seq=None``.
    """
    themes: dict[str, list[LexiconEntry]] = {}
    for e in entries:
        themes.setdefault(e.theme_id, []).append(e)

    groups = []
    for theme_id, items in themes.items():
        members: dict[tuple[str, ...], list[str]] = {}
        seqs: dict[tuple[str, ...], PhonemeSequence] = {}
        non_members = []
        theme = theme_id
        core = variant = None
        notes: dict[str, str] = {}
        for e in items:
            fields = e.note_fields()
            if e.membership == "member":
                try:
                    seq = tokenize(pmap, e.word)
                except ValueError as exc:
                    raise GroupTokenizationError(e, exc) from exc
                codes = members.setdefault(seq.phonemes, [])
                seqs.setdefault(seq.phonemes, seq)
                if e.language.code not in codes:
                    codes.append(e.language.code)
                if core is None and "core" in fields:
                    core = _id_set(fields["core"])
            else:
                try:
                    seq = tokenize(pmap, e.word)
                except ValueError:
                    seq = None
                non_members.append(NonMember(e, seq))
            if "theme" in fields and theme == theme_id:
                theme = fields["theme"]
            if variant is None and "paper_variant" in fields:
                variant = _id_set(fields["paper_variant"])
            for k, v in fields.items():
                notes.setdefault(k, v)
        member_list = tuple(Member(seqs[k], tuple(v)) for k, v in members.items())
        groups.append(MLanguage(theme_id, theme, member_list, tuple(non_members), core, variant, notes))
    return groups


def find_theme(groups: Iterable[MLanguage], theme_id: str) -> MLanguage:
    for g in groups:
        if g.theme_id == theme_id:
            return g
    raise UnknownTheme(theme_id)


def extended_alphabet(ml: MLanguage) -> frozenset[str]:
    return frozenset(p for m in ml.members for p in m.seq)


def core_alphabet_heuristic(ml: MLanguage, threshold: float) -> frozenset[str]:
    """Sounds used by at least ``threshold`` of the members (0 < threshold <= 1)."""
    if not 0 < threshold <= 1:
        raise ValueError("threshold must lie in (0, 1]")
    if not ml.members:
        raise ValueError(f"group {ml.theme_id!r} has no members")
    n = len(ml.members)
    counts: dict[str, int] = {}
    for m in ml.members:
        for p in set(m.seq):
            counts[p] = counts.get(p, 0) + 1
    return frozenset(p for p, c in counts.items() if c >= threshold * n - 1e-9)


def build_group_mfa(ml: MLanguage, merge_suffixes: bool = True, determinize: bool = True,
                    minimize: bool = True) -> automata.Mfa:
    """Automaton accepting exactly the group's member words.

    ``minimize`` implies ``determinize``.
    """
    if not ml.members:
        raise automata.EmptyWordList(f"group {ml.theme_id!r} has no members")
    m = automata.build_trie([mem.seq for mem in ml.members],
                            [(mem.word, mem.languages) for mem in ml.members])
    if merge_suffixes:
        m = automata.merge_suffixes(m)
    if determinize or minimize:
        m = automata.determinize(m)
    if minimize:
        m = automata.minimize(m)
    return m


@dataclass(frozen=True)
class MembershipReport:
    word: str
    accepted: bool
    core_compatible: bool
    extended_compatible: bool
    nearest_member: str
    nearest_distance: DistancePair
    levenshtein_member: str
    levenshtein_distance: int

    def lines(self) -> list[str]:
        return [
            f"word: {self.word}",
            f"accepted: {str(self.accepted).lower()}",
            f"core-compatible: {str(self.core_compatible).lower()}",
            f"extended-compatible: {str(self.extended_compatible).lower()}",
            f"nearest member (map): {self.nearest_member} {self.nearest_distance}",
            f"nearest member (levenshtein): {self.levenshtein_member} {self.levenshtein_distance}",
        ]


def membership_report(ml: MLanguage, candidate, pmap: PhoneticMap,
                      mfa: automata.Mfa | None = None) -> MembershipReport:
    """Four independent membership signals for ``candidate``; no verdict is combined.

    * accepted: the group automaton accepts the word;
    * core_compatible: the word uses every core sound;
    * extended_compatible: the word uses only sounds of the extended alphabet;
    * nearest members by map distance and by Levenshtein distance.
    """
    seq = candidate if isinstance(candidate, PhonemeSequence) else tokenize(pmap, candidate)
    mfa = build_group_mfa(ml) if mfa is None else mfa
    sounds = set(seq)
    total = word_distance(pmap, seq)
    by_map = min(ml.members, key=lambda m: inter_word_distance(total, word_distance(pmap, m.seq)).score)
    word = render(seq)
    by_edit = min(ml.members, key=lambda m: levenshtein(word, m.word))
    return MembershipReport(
        word=word,
        accepted=automata.accepts(mfa, seq),
        core_compatible=ml.core_alphabet <= sounds,
        extended_compatible=sounds <= ml.extended_alphabet,
        nearest_member=by_map.word,
        nearest_distance=inter_word_distance(total, word_distance(pmap, by_map.seq)),
        levenshtein_member=by_edit.word,
        levenshtein_distance=levenshtein(word, by_edit.word),
    )


# --- bundled sample word bank --------------------------------------------

def _data_path(name: str) -> Path:
    return Path(str(resources.files("varnamap") / "data" / name))


def bundled_lexicon_path() -> Path:
    return _data_path("lexicon.tsv")


def bundled_extensions_path() -> Path:
    return _data_path("extensions.tsv")


@lru_cache(maxsize=None)
def bundled_map() -> PhoneticMap:
    """Canonical map plus the few non-Indic sounds the sample word bank needs."""
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        return load_extensions(bundled_extensions_path())


def load_bundled() -> tuple[PhoneticMap, list[MLanguage]]:
    pmap = bundled_map()
    return pmap, group_by_theme(load_lexicon(bundled_lexicon_path()), pmap)
