from hypothesis import given, settings
from hypothesis import strategies as st

from dihedral_artin.canonical import (
    IDENTITY,
    CanonicalElement,
    canonical_invert,
    canonical_multiply,
    canonical_word,
    conjugate_by,
    elements_equal,
    to_canonical,
)
from dihedral_artin.oracle import oracle_equal, oracle_key, reduced_words
from dihedral_artin.words import GroupParams, concat_words, invert_word, parse_word

ms = st.integers(min_value=3, max_value=8)
words = st.text(alphabet="xXyY", max_size=16)


def test_odd_examples():
    g = GroupParams(3)
    assert to_canonical("xx", g) == CanonicalElement((), 1)
    assert to_canonical("yyy", g) == CanonicalElement((), 1)
    assert to_canonical("Xy", g) == CanonicalElement((("x", 1), ("y", 1)), -1)
    assert to_canonical("", g) == IDENTITY


def test_even_examples():
    g = GroupParams(4)
    assert to_canonical("xxy", g) == CanonicalElement((("y", 1),), 1)
    assert to_canonical("X", g) == CanonicalElement((("x", 1),), -1)
    assert to_canonical("YYY", g) == CanonicalElement((("y", -3),), 0)


def test_invert_example():
    g = GroupParams(5)
    assert canonical_invert(CanonicalElement((("y", 2),), 0), g) == CanonicalElement((("y", 3),), -1)


def test_delta_is_central():
    for m in range(3, 9):
        g = GroupParams(m)
        d = g.delta_word(1)
        for w in ["x", "y", "xyY", "yxyX"]:
            assert elements_equal(d + w, w + d, g)


def test_relator_is_trivial():
    assert to_canonical(parse_word("x^2 y^-3"), GroupParams(3)) == IDENTITY
    assert to_canonical(parse_word("Y x^2 y X^2"), GroupParams(4)) == IDENTITY
    assert to_canonical(parse_word("Y x^3 y X^3"), GroupParams(6)) == IDENTITY


def test_json_round_trip():
    e = to_canonical("xyXYY", GroupParams(7))
    assert e.to_json() == '{"syllables":[["x",1],["y",1],["x",1],["y",5]],"central":-2}'
    assert CanonicalElement.from_dict(e.as_dict()) == e


def test_canonical_matches_oracle_exhaustively():
    for m in range(3, 9):
        g = GroupParams(m)
        seen: dict = {}
        for n in range(7):
            for w in reduced_words(n):
                key = oracle_key(w, g)
                e = to_canonical(w, g)
                assert seen.setdefault(key, e) == e


@given(ms, words, words)
def test_equality_agrees_with_oracle(m, u, v):
    g = GroupParams(m)
    assert elements_equal(u, v, g) == oracle_equal(u, v, g)


@given(ms, words)
def test_canonical_word_represents_element(m, w):
    g = GroupParams(m)
    e = to_canonical(w, g)
    assert to_canonical(canonical_word(e, g), g) == e


@given(ms, words, words)
def test_multiply_is_concatenation(m, u, v):
    g = GroupParams(m)
    prod = canonical_multiply(to_canonical(u, g), to_canonical(v, g), g)
    assert prod == to_canonical(concat_words(u, v), g)


@given(ms, words)
def test_invert(m, w):
    g = GroupParams(m)
    e = to_canonical(w, g)
    assert canonical_invert(e, g) == to_canonical(invert_word(w), g)
    assert canonical_multiply(e, canonical_invert(e, g), g) == IDENTITY


@settings(max_examples=50)
@given(ms, words, words, words)
def test_multiply_associative(m, a, b, c):
    g = GroupParams(m)
    ea, eb, ec = (to_canonical(w, g) for w in (a, b, c))
    left = canonical_multiply(canonical_multiply(ea, eb, g), ec, g)
    right = canonical_multiply(ea, canonical_multiply(eb, ec, g), g)
    assert left == right


@given(ms, words, words)
def test_conjugate_by(m, a, t):
    g = GroupParams(m)
    expected = to_canonical(invert_word(t) + a + t, g)
    assert conjugate_by(to_canonical(a, g), to_canonical(t, g), g) == expected
