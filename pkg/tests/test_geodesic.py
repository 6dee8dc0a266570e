import pytest
from hypothesis import given
from hypothesis import strategies as st

from dihedral_artin.canonical import IDENTITY, to_canonical
from dihedral_artin.errors import NotGeodesic
from dihedral_artin.geodesic import (
    SPLIT_TAGS,
    ExponentStats,
    centralize,
    classify_geodesic,
    enumerate_geodesics,
    exponent_stats,
    geodesic_length,
    geodesic_word,
    is_geodesic,
    reduce_to_geodesic,
    word_length,
)
from dihedral_artin.oracle import CayleyBall
from dihedral_artin.words import GroupParams, parse_word

ms = st.integers(min_value=3, max_value=8)
words = st.text(alphabet="xXyY", max_size=14)


def test_length_examples():
    assert geodesic_length(IDENTITY, GroupParams(3)) == 0
    assert word_length("yyyyy", GroupParams(5)) == 2
    assert word_length("yxY", GroupParams(3)) == 3


def test_is_geodesic_examples():
    assert not is_geodesic("yyyy", GroupParams(5))
    assert is_geodesic("xyxyxY", GroupParams(3))
    assert is_geodesic("", GroupParams(3))


def test_reduce_examples():
    g = GroupParams(5)
    out = reduce_to_geodesic("yyyy", g)
    assert len(out) == 3
    assert to_canonical(out, g) == to_canonical("xxY", g)
    assert reduce_to_geodesic("xxx", GroupParams(3)) == "xxx"


def test_reduce_trace_records_steps():
    trace: list = []
    out = reduce_to_geodesic("yyyyxX", GroupParams(5), trace)
    assert len(out) == 3 and trace
    assert trace[-1][1] == out


def test_centralize_keeps_element():
    g = GroupParams(3)
    w = "xyxxY"
    assert to_canonical(centralize(w, g), g) == to_canonical(w, g)
    assert len(centralize(w, g)) <= len(w)


def test_classify_examples():
    g3 = GroupParams(3)
    assert classify_geodesic("xyxyxY", g3).gtype.tag == "T30plusU"
    assert classify_geodesic("XyXYxy", g3).gtype.tag == "T30star"
    assert classify_geodesic("xxx", g3).gtype.tag == "T1"
    g4 = GroupParams(4)
    w = parse_word("x y^5 x y^-3 x y^2 D^2", g4)
    assert classify_geodesic(w, g4).gtype.tag == "T1"


def test_classify_rejects_non_geodesic():
    with pytest.raises(NotGeodesic):
        classify_geodesic("yyyy", GroupParams(5))


def test_split_view_counts_specials():
    gw = classify_geodesic("XyXYxy", GroupParams(3))
    assert not gw.gtype.unique
    assert gw.split is not None
    assert gw.split.tau1 + gw.split.tau2 == len(gw.split.specials)


def test_enumerate_examples():
    g = GroupParams(3)
    assert enumerate_geodesics(to_canonical("xyxyxY", g), g) == {"xyxyxY"}
    many = enumerate_geodesics(to_canonical("XyXYxy", g), g)
    assert len(many) > 1
    assert any("x" in w and "X" in w for w in many)
    assert enumerate_geodesics(IDENTITY, g) == {""}


def test_delta_rightmost_subset():
    g = GroupParams(3)
    e = to_canonical("XyXYxy", g)
    assert enumerate_geodesics(e, g, delta_rightmost=True) <= enumerate_geodesics(e, g)


@pytest.mark.parametrize("m", range(3, 9))
def test_geodesics_match_bfs(m):
    g = GroupParams(m)
    ball = CayleyBall(g, 6, keep_words=True)
    for key, d in ball.dist.items():
        w = ball.words[key][0]
        e = to_canonical(w, g)
        assert geodesic_length(e, g) == d
        if d <= 5:
            assert enumerate_geodesics(e, g) == set(ball.words[key])


@pytest.mark.parametrize("m", range(3, 9))
def test_unique_types_have_one_geodesic(m):
    g = GroupParams(m)
    ball = CayleyBall(g, 6, keep_words=True)
    # uniqueness is up to where the central factors sit
    for ws in ball.words.values():
        w = ws[0]
        nfs = enumerate_geodesics(to_canonical(w, g), g, delta_rightmost=True)
        tags = {classify_geodesic(v, g).gtype.unique for v in ws}
        assert len(tags) == 1
        assert (len(nfs) == 1) == tags.pop(), w


@given(ms, words)
def test_reduce_reaches_geodesic(m, w):
    g = GroupParams(m)
    out = reduce_to_geodesic(w, g)
    assert is_geodesic(out, g)
    assert to_canonical(out, g) == to_canonical(w, g)


@given(ms, words)
def test_geodesic_word_is_geodesic(m, w):
    g = GroupParams(m)
    e = to_canonical(w, g)
    gw = geodesic_word(e, g)
    assert to_canonical(gw, g) == e and len(gw) == geodesic_length(e, g)
    assert len(gw) <= len(w)


@given(st.sampled_from([3, 5, 7]), words)
def test_odd_type3_exponent_bounds(m, w):
    g = GroupParams(m)
    w = reduce_to_geodesic(w, g)
    tag = classify_geodesic(w, g).gtype.tag
    if tag.startswith("T3"):
        s = exponent_stats(w)
        k = g.k
        assert s.pos_x + s.neg_x <= 2
        assert s.pos_y + s.neg_y <= 2 * k + 1
        assert s.pos_x + s.neg_y <= k + 1
        assert s.pos_y + s.neg_x <= k + 1


def test_exponent_stats_uses_syllable_maxima():
    s = exponent_stats("xyyXYYYx")
    assert (s.pos_x, s.neg_x, s.pos_y, s.neg_y) == (1, 1, 2, 3)
    assert exponent_stats("") == ExponentStats(0, 0, 0, 0)


def test_split_tags_are_non_unique():
    assert {"T30star", "T2b"} <= SPLIT_TAGS
