import pytest

from atgraph.hanging import (
    NailError,
    build_g,
    expected_length,
    format_word,
    free_reduce,
    nail_index,
    parse_word,
    remove_nail,
    check_nail_removal,
    y_flanked_by_z,
)

G2 = "z y^-1 z^-1"
G3 = "z y^-1 z^-1 x1^-1 z y z^-1"
G4 = "z y^-1 z^-1 x1^-1 x2^-1 x1 z y z^-1 x1^-1 z y^-1 z^-1 x1^-1 x2 x1 z y z^-1"


def test_small_words_match_displayed_ones():
    assert format_word(build_g(2)) == G2
    assert format_word(build_g(3)) == G3


def test_g4():
    g4 = build_g(4)
    assert format_word(g4) == G4
    assert len(g4) == expected_length(4) == 19


@pytest.mark.parametrize("k", range(2, 13))
def test_lengths(k):
    assert len(build_g(k)) == 3 + (k - 2) * 2 ** (k - 1)


def test_words_are_reduced():
    for k in range(2, 11):
        g = build_g(k)
        assert free_reduce(g) == g


def test_parse_format_round_trip():
    for k in range(2, 7):
        g = build_g(k)
        assert parse_word(k, format_word(g)) == g


def test_nail_names():
    assert nail_index(4, "z") == 0
    assert nail_index(4, "y") == 3
    assert nail_index(4, "x1") == 1 and nail_index(4, "x_2") == 2
    assert nail_index(2, "x1") == 1  # with two nails x_1 is y
    with pytest.raises(NailError):
        nail_index(4, "x7")
    with pytest.raises(NailError):
        nail_index(4, "w")


def test_remove_examples():
    assert format_word(remove_nail(build_g(3), "y")) == "x1^-1"
    assert format_word(remove_nail(build_g(2), "z")) == "y^-1"
    assert len(remove_nail(build_g(4), "x1")) == 0


@pytest.mark.parametrize("k", range(2, 13))
def test_remove_x1_empties(k):
    assert len(remove_nail(build_g(k), 1)) == 0


def test_nail_removal_up_to_12():
    rows = check_nail_removal(12)
    assert len(rows) == sum(range(2, 13))


def test_nail_removal_bound():
    with pytest.raises(ValueError):
        check_nail_removal(21)


def test_y_is_flanked():
    for k in range(2, 11):
        assert y_flanked_by_z(build_g(k))
