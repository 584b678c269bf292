"""Romanized text <-> phoneme sequences."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterator

from .phonology import NON_INITIAL, PhoneticMap

# ASCII spellings folded onto canonical IAST letters.
FALLBACKS = (
    ("aa", "ā"),
    ("ii", "ī"),
    ("uu", "ū"),
    ("sh", "ś"),
    (".s", "ṣ"),
    (".t", "ṭ"),
    (".d", "ḍ"),
    (".n", "ṇ"),
    ("~n", "ñ"),
)


class UntokenizableInput(ValueError):
    def __init__(self, text: str, position: int, fragment: str):
        super().__init__(f"cannot tokenize {text!r} at position {position}: {fragment!r}")
        self.text = text
        self.position = position
        self.fragment = fragment


class IllegalInitial(ValueError):
    def __init__(self, text: str, phoneme_id: str):
        super().__init__(f"{text!r} starts with {phoneme_id!r}, which cannot begin a word")
        self.text = text
        self.phoneme_id = phoneme_id


@dataclass(frozen=True)
class PhonemeSequence:
    phonemes: tuple[str, ...]
    source_text: str = ""

    def __iter__(self) -> Iterator[str]:
        return iter(self.phonemes)

    def __len__(self) -> int:
        return len(self.phonemes)

    def __getitem__(self, index):
        return self.phonemes[index]

    def __str__(self) -> str:
        return render(self)


def normalize(text: str) -> str:
    text = unicodedata.normalize("NFC", text.strip().lower())
    for ascii_form, canonical in FALLBACKS:
        text = text.replace(ascii_form, canonical)
    return text


def tokenize(pmap: PhoneticMap, text: str) -> PhonemeSequence:
    """Split ``text`` into phoneme ids by greedy longest match.

    Digraphs such as ``bh`` or ``ai`` win over their single letters, so
    ``"dha"`` is ``[dh, a]`` and never ``[d, h, a]``.
    """
    word = normalize(text)
    longest = max((len(k) for k in pmap), default=0)
    out: list[str] = []
    i = 0
    while i < len(word):
        for size in range(min(longest, len(word) - i), 0, -1):
            piece = word[i:i + size]
            if piece in pmap:
                out.append(piece)
                i += size
                break
        else:
            end = i + 1
            while end < len(word) and unicodedata.combining(word[end]):
                end += 1
            raise UntokenizableInput(text, i, word[i:end])
    if out and out[0] in NON_INITIAL:
        raise IllegalInitial(text, out[0])
    return PhonemeSequence(tuple(out), text)


def render(seq) -> str:
    return "".join(seq)
