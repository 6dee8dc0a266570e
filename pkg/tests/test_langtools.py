import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dihedral_artin.canonical import to_canonical
from dihedral_artin.conjugacy import conjugacy_length
from dihedral_artin.errors import CapExceeded
from dihedral_artin.geodesic import is_geodesic
from dihedral_artin.langtools import (
    Dfa,
    build_conjgeo_dfa,
    complement,
    complete,
    cyclic_closure,
    determinize,
    dfa_accepts,
    dfa_count,
    dfa_counts,
    fellow_travel_distance,
    fftp_bound,
    fftp_check,
    geodesic_dfa,
    intersect,
    isomorphic,
    minimize,
    shorter_fellow_traveller,
    sink_dfa,
    union,
    universal_dfa,
)
from dihedral_artin.oracle import all_words
from dihedral_artin.words import GroupParams, free_reduce

G3 = GroupParams(3)
words = st.text(alphabet="xXyY", max_size=10)


def ends_with_x() -> Dfa:
    return complete({0: {"x": 1, "X": 0, "y": 0, "Y": 0}, 1: {"x": 1, "X": 0, "y": 0, "Y": 0}}, 0, {1})


def test_universal_and_sink_counts():
    assert [dfa_count(universal_dfa(), n) for n in range(5)] == [1, 4, 16, 64, 256]
    assert [dfa_count(sink_dfa(), n) for n in range(1, 5)] == [0, 0, 0, 0]
    assert dfa_counts(universal_dfa(), 3) == [1, 4, 16, 64]


def test_empty_word_follows_start_state():
    assert dfa_accepts(universal_dfa(), "")
    assert not dfa_accepts(sink_dfa(), "")


def test_complete_adds_sink():
    d = complete({0: {"x": 0}}, 0, {0})
    assert d.n_states == 2
    assert dfa_accepts(d, "xxx") and not dfa_accepts(d, "xy")


def test_determinize_with_epsilon():
    # words containing "xy" as a factor
    delta = {(0, c): [0] for c in "xXyY"}
    delta[(0, "x")] = [0, 1]
    delta[(1, "y")] = [2]
    for c in "xXyY":
        delta[(2, c)] = [2]
    d = determinize([0], delta, {2})
    assert dfa_accepts(d, "Yxy") and not dfa_accepts(d, "yx")
    e = determinize(["a"], {("b", "x"): ["b"]}, {"b"}, epsilon={"a": ["b"]})
    assert dfa_accepts(e, "") and dfa_accepts(e, "xx") and not dfa_accepts(e, "y")


def test_boolean_operations():
    d = ends_with_x()
    assert dfa_count(complement(d), 2) == 16 - 4
    assert dfa_count(intersect(d, complement(d)), 3) == 0
    assert dfa_count(union(d, complement(d)), 3) == 64


def test_minimize():
    d = ends_with_x()
    blown = union(d, d)
    m1 = minimize(blown)
    assert m1.n_states == 2
    assert isomorphic(minimize(m1), m1)
    assert isomorphic(m1, minimize(d))


def test_json_round_trip_and_dot():
    d = build_conjgeo_dfa(G3)
    assert Dfa.from_json(d.to_json()) == d
    dot = d.to_dot()
    assert dot.startswith("digraph") and dot.count("doublecircle") == len(d.accepting)


def test_conjgeo_examples():
    d = build_conjgeo_dfa(G3)
    assert dfa_accepts(d, "xyxyxY")
    assert not dfa_accepts(d, "yxY")
    assert dfa_accepts(d, "")
    assert dfa_accepts(d, "xx")
    assert dfa_accepts(d, "xxxY") == (is_geodesic("xxxY", G3) and conjugacy_length("xxxY", G3) == 4)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_conjgeo_matches_oracle(m):
    g = GroupParams(m)
    d = build_conjgeo_dfa(g)
    counts = [0] * 7
    for n in range(7):
        for w in all_words(n):
            ok = is_geodesic(w, g) and len(w) == conjugacy_length(w, g)
            assert dfa_accepts(d, w) == ok, w
            counts[n] += ok
    assert dfa_counts(d, 6) == counts


@pytest.mark.parametrize("m", [3, 4, 5])
def test_geodesic_dfa_matches_oracle(m):
    g = GroupParams(m)
    d = geodesic_dfa(g, 4)
    for n in range(7):
        for w in all_words(n):
            assert dfa_accepts(d, w) == is_geodesic(w, g)


def test_geodesic_dfa_radius_too_small():
    with pytest.raises(CapExceeded):
        geodesic_dfa(GroupParams(6), 3, max_states=2000)


def test_cyclic_closure_of_universal_and_sink():
    assert dfa_counts(cyclic_closure(universal_dfa()), 3) == [1, 4, 16, 64]
    assert dfa_counts(cyclic_closure(sink_dfa()), 3) == [0, 0, 0, 0]


def test_cyclic_closure_small_language():
    # every rotation must avoid the factor "xy"
    base = complement(determinize([0], {**{(0, c): [0] for c in "xXyY"}, (0, "x"): [0, 1], (1, "y"): [2],
                                        **{(2, c): [2] for c in "xXyY"}}, {2}))
    closed = cyclic_closure(base)
    for n in range(6):
        for w in all_words(n):
            rots = [w[i:] + w[:i] for i in range(max(len(w), 1))]
            assert dfa_accepts(closed, w) == all(dfa_accepts(base, r) for r in rots)


def test_fellow_travel_distance_examples():
    assert fellow_travel_distance("xyXY", "xyXY", G3) == 0
    assert fellow_travel_distance("yyyy", "xxY", GroupParams(5)) <= 6
    assert fellow_travel_distance("xy", "xyx", G3) == 1


def test_shorter_fellow_traveller():
    g = GroupParams(5)
    d, witness = shorter_fellow_traveller("yyyy", g, fftp_bound(g))
    assert len(witness) < 4
    assert fellow_travel_distance("yyyy", witness, g) == d
    assert shorter_fellow_traveller("xy", g, 6) is None


def test_fftp_small():
    rep = fftp_check(G3, 5)
    assert rep.all_found
    assert rep.observed_constant <= rep.bound == 11
    assert fftp_bound(GroupParams(4)) == 8
    assert fftp_check(G3, 1).observed_constant == 0
    with pytest.raises(CapExceeded):
        fftp_check(G3, 9)


@settings(max_examples=40)
@given(words)
def test_fftp_witness_is_valid(w):
    g = GroupParams(4)
    w = free_reduce(w)
    if is_geodesic(w, g):
        return
    found = shorter_fellow_traveller(w, g, fftp_bound(g))
    assert found is not None
    d, v = found
    assert len(v) < len(w) and fellow_travel_distance(w, v, g) <= d
    assert to_canonical(v, g) == to_canonical(w, g)
