"""Phonetic-map distances, themed word groups and their finite automata."""

from .metric import DistancePair, central_words, distance_matrix, word_distance, word_path
from .mlanguage import MLanguage, build_group_mfa, load_bundled, membership_report
from .phonology import Coordinate, Phoneme, PhoneticMap, canonical_map
from .translit import PhonemeSequence, normalize, render, tokenize

__all__ = [
    "Coordinate", "DistancePair", "MLanguage", "Phoneme", "PhonemeSequence", "PhoneticMap",
    "build_group_mfa", "canonical_map", "central_words", "distance_matrix", "load_bundled",
    "membership_report", "normalize", "render", "tokenize", "word_distance", "word_path",
]
__version__ = "0.1.0"
