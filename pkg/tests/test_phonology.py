import warnings

import pytest
from hypothesis import given, strategies as st

from varnamap.phonology import (
    Coordinate,
    CoordinateCollision,
    DuplicatePhoneme,
    MalformedExtensionLine,
    Phoneme,
    PhoneticMap,
    UnknownPhoneme,
    canonical_map,
    format_half,
    parse_extensions,
)

# sound -> coordinate, row by row from the three inventory tables
VOWEL_ROWS = {
    "अ": (7, 1), "आ": (7, 2), "इ": (7, 3), "ई": (7, 4), "ऋ": (7, 5), "ॠ": (7, 6),
    "ऌ": (7, 7), "ॡ": (7, 8), "उ": (7, 9), "ऊ": (7, 10), "ऐ": (6, 2), "ए": (5, 2),
    "औ": (4, 5), "ओ": (3, 5), "ं": (2, 5), "ः": (1, 1),
}
CONSONANT_ROWS = {
    "क": (13, 1), "ख": (14, 2), "ग": (15, 1), "घ": (16, 2), "ङ": (17, 1.5),
    "च": (13, 3), "छ": (14, 4), "ज": (15, 3), "झ": (16, 4), "ञ": (17, 3.5),
    "ट": (13, 5), "ठ": (14, 6), "ड": (15, 5), "ळ": (15, 6), "ढ": (16, 6), "ण": (17, 5.5),
    "त": (13, 7), "थ": (14, 8), "द": (15, 7), "ध": (16, 8), "न": (17, 7.5),
    "प": (13, 9), "फ": (14, 10), "ब": (15, 9), "भ": (16, 10), "म": (17, 9.5),
}
OTHER_ROWS = {
    "श": (12, 3.5), "ष": (12, 5.5), "स": (12, 7.5), "ह": (12, 1.5),
    "य": (8, 2.5), "र": (9, 3.5), "ल": (10, 4.5), "व": (11, 5.5),
}
ALL_ROWS = {**VOWEL_ROWS, **CONSONANT_ROWS, **OTHER_ROWS}


@pytest.fixture(scope="module")
def cmap():
    return canonical_map()


def test_inventory_size(cmap):
    assert len(cmap) == len(ALL_ROWS) == 50
    assert cmap.extensions == ()


@pytest.mark.parametrize("sound, xy", ALL_ROWS.items())
def test_every_table_row_present(cmap, sound, xy):
    matches = [p for p in cmap.values() if p.devanagari == sound]
    assert len(matches) == 1
    assert matches[0].coordinate == Coordinate.of(*xy)


def test_no_shared_cells(cmap):
    cells = [p.coordinate for p in cmap.values()]
    assert len(set(cells)) == len(cells)


def test_grid_bounds(cmap):
    for p in cmap.values():
        assert 2 <= p.coordinate.row2 <= 34
        assert 2 <= p.coordinate.col2 <= 20


@pytest.mark.parametrize("pid, xy", [
    ("k", (13, 1)), ("ā", (7, 2)), ("m", (17, 9.5)), ("h", (12, 1.5)), ("v", (11, 5.5)),
    ("ḻ", (15, 6)), ("ḍh", (16, 6)),
])
def test_lookup(cmap, pid, xy):
    assert cmap.coordinate_of(pid) == Coordinate.of(*xy)


def test_lookup_unknown(cmap):
    with pytest.raises(UnknownPhoneme):
        cmap.lookup("q")
    with pytest.raises(KeyError):
        cmap.lookup("K")


def test_consonant_manner_matches_row(cmap):
    from varnamap.phonology import MANNER_ROWS

    for p in cmap.values():
        if p.category == "consonant":
            assert p.coordinate.row == MANNER_ROWS[p.manner]


def test_maps_compare_equal():
    assert canonical_map() == PhoneticMap(list(canonical_map().values()))
    assert hash(canonical_map()) == hash(PhoneticMap(list(canonical_map().values())))


def test_register_extension(cmap):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        bigger = cmap.register_extension("f", Coordinate.of(13, 9.5), "consonant", "labial", "aspirated")
    assert len(bigger) == len(cmap) + 1
    assert bigger.extensions == ("f",)
    assert "f" not in cmap


def test_register_duplicate(cmap):
    with pytest.raises(DuplicatePhoneme):
        cmap.register_extension("k", Coordinate.of(13, 1.5), "consonant", "guttural", "tenuis")
    with pytest.raises(DuplicatePhoneme):
        cmap.register_extension("ḻ", Coordinate.of(15, 6), "consonant", "cerebral", "voiced")


def test_register_collision_policies(cmap):
    args = ("ɭ", Coordinate.of(15, 6), "consonant", "cerebral", "voiced")
    with pytest.warns(CoordinateCollision, match="ḻ"):
        warned = cmap.register_extension(*args)
    assert "ɭ" in warned
    with pytest.raises(CoordinateCollision):
        cmap.register_extension(*args, on_collision="error")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert "ɭ" in cmap.register_extension(*args, on_collision="ignore")


def test_with_coordinate(cmap):
    moved = cmap.with_coordinate("t", Coordinate.of(17, 9.5))
    assert moved.coordinate_of("t") == Coordinate.of(17, 9.5)
    assert cmap.coordinate_of("t") == Coordinate.of(13, 7)


def test_parse_extensions():
    lines = ["# comment", "", "f\t13\t9.5\tconsonant\tlabial\taspirated", "z\t12\t8.5\tsibilant\tnone\tnone"]
    pmap = parse_extensions(lines)
    assert pmap.extensions == ("f", "z")
    assert pmap.coordinate_of("z") == Coordinate.of(12, 8.5)


@pytest.mark.parametrize("line", [
    "f\t13\t9.5\tconsonant\tlabial",
    "f\t13\t9.25\tconsonant\tlabial\taspirated",
    "f\tx\t9\tconsonant\tlabial\taspirated",
    "f\t13\t9.5\tplosive\tlabial\taspirated",
    "k\t13\t1.5\tconsonant\tguttural\ttenuis",
])
def test_parse_extensions_rejects(line):
    with pytest.raises(MalformedExtensionLine) as info:
        parse_extensions(["# header", line])
    assert info.value.line_no == 2


def test_phoneme_validation():
    with pytest.raises(ValueError):
        Phoneme("x", Coordinate.of(1, 1), "consonant")
    with pytest.raises(ValueError):
        Phoneme("x", Coordinate.of(1, 1), "vowel", place="labial")
    with pytest.raises(ValueError):
        Coordinate.of(1, 0.3)


@given(st.integers(min_value=0, max_value=200))
def test_half_unit_round_trip(n):
    c = Coordinate(n, n)
    assert Coordinate.of(format_half(n), format_half(n)) == c


@pytest.mark.parametrize("n, text", [(18, "9"), (19, "9.5"), (0, "0"), (3, "1.5")])
def test_format_half(n, text):
    assert format_half(n) == text
