"""Classical string comparisons used as baselines: Levenshtein and Soundex."""

from __future__ import annotations

SOUNDEX_CLASSES = {
    "1": "BPFV",
    "2": "CSGJKQXZ",
    "3": "DT",
    "4": "L",
    "5": "MN",
    "6": "R",
}
SOUNDEX_CODES = {letter: digit for digit, letters in SOUNDEX_CLASSES.items() for letter in letters}
# Letters that separate runs of the same code; H and W do not.
_VOWELS = frozenset("AEIOUY")


class NonAlphabeticInput(ValueError):
    pass


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance over code points."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        left = i
        for j, cb in enumerate(b):
            # substitution, deletion, insertion
            left = min(previous[j] + (ca != cb), previous[j + 1] + 1, left + 1)
            current.append(left)
        previous = current
    return previous[-1]


def soundex(word: str) -> str:
    """American Soundex: first letter plus three digits.

    >>> soundex("Robert"), soundex("Ashcraft"), soundex("M")
    ('R163', 'A261', 'M000')
    """
    if not word or not (word[0].isascii() and word[0].isalpha()):
        raise NonAlphabeticInput(f"soundex needs a word starting with an ASCII letter, got {word!r}")
    letters = [ch for ch in word.upper() if ch.isascii() and ch.isalpha()]
    first = letters[0]
    digits = []
    last = SOUNDEX_CODES.get(first)
    for ch in letters[1:]:
        code = SOUNDEX_CODES.get(ch)
        if code is None:
            if ch in _VOWELS:
                last = None
            continue
        if code != last:
            digits.append(code)
        last = code
    return (first + "".join(digits) + "000")[:4]
