import json
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kplanar import geometry as geo
from kplanar.drawing import DrawingError, from_convex, from_geometry, from_json
from kplanar.optimize.chords import polygon_chords


def interleaves(c, d, n):
    # brute force: walk the boundary from c[0] to c[1] and count ends of d met strictly inside
    a, b = c
    inside = set()
    v = (a + 1) % n
    while v != b:
        inside.add(v)
        v = (v + 1) % n
    if set(c) & set(d):
        return False
    return (d[0] in inside) != (d[1] in inside)


@st.composite
def convex_chord_sets(draw, max_n=9):
    n = draw(st.integers(4, max_n))
    chords = polygon_chords(n)
    picked = draw(st.lists(st.sampled_from(chords), unique=True, max_size=len(chords)))
    return n, sorted(picked)


@settings(max_examples=60, deadline=None)
@given(convex_chord_sets())
def test_convex_crossings_are_the_interleaving_pairs(case):
    n, chords = case
    d = from_convex(n, chords)
    d.validate()
    ids = {e: i for i, e in enumerate(d.edges)}
    want = {tuple(sorted((ids[c], ids[e]))) for c, e in combinations(chords, 2) if interleaves(c, e, n)}
    assert set(d.crossing_pairs()) == want
    for i, (u, v) in enumerate(d.edges):
        if (v - u) % n in (1, n - 1):
            assert d.crossings[i] == ()


@settings(max_examples=40, deadline=None)
@given(convex_chord_sets(max_n=8))
def test_convex_matches_straight_line_geometry(case):
    n, chords = case
    d = from_convex(n, chords)
    g = from_geometry(geo.convex_points(n), [None] * d.m, edges=d.edges)
    assert [list(c) for c in g.crossings] == [list(c) for c in d.crossings]
    assert g.signs == d.signs


@settings(max_examples=40, deadline=None)
@given(convex_chord_sets())
def test_json_round_trip(case):
    n, chords = case
    d = from_convex(n, chords)
    text = json.dumps(d.to_json(), sort_keys=True)
    back = from_json(json.loads(text))
    assert back == d
    assert json.dumps(back.to_json(), sort_keys=True) == text


def test_convex_shorthand():
    d = from_json({"convex": 5, "chords": [[0, 2], [1, 3]]})
    assert (d.n, d.m, d.crossing_count()) == (5, 7, 1)


def test_crossing_order_follows_geometry():
    d = from_convex(6, [(0, 3), (1, 4), (2, 5), (1, 5)])
    e = d.edges.index((0, 3))
    pts = geo.convex_points(6)
    params = []
    for f in d.crossings[e]:
        u, v = d.edges[f]
        kind, t, _ = geo.segment_intersection(pts[0], pts[3], pts[u], pts[v])
        assert kind == "proper"
        params.append(t)
    assert len(params) == 3
    assert params == sorted(params)


def test_signs_antisymmetric():
    d = from_convex(4, [(0, 2), (1, 3)])
    e, f = d.crossing_pairs()[0]
    assert d.sign(e, f) == -d.sign(f, e)


def test_rejects_parallel_edges_unless_multigraph():
    with pytest.raises(DrawingError):
        from_convex(4, [(0, 2), (0, 2)]).validate()


@pytest.mark.parametrize("data, field", [
    ({"n": 3}, "edges"),
    ({"edges": []}, "n"),
])
def test_missing_field_is_named(data, field):
    with pytest.raises(DrawingError, match=field):
        from_json(data)


def test_stated_crossings_must_match_geometry():
    pts = [["0", "0"], ["2", "0"], ["2", "2"], ["0", "2"]]
    data = {
        "n": 4,
        "vertices": [{"id": i, "point": p} for i, p in enumerate(pts)],
        "edges": [{"id": 0, "ends": [0, 1]}, {"id": 1, "ends": [2, 3]}],
        "crossings": {"0": [1], "1": [0]},
    }
    with pytest.raises(DrawingError):
        from_json(data)


def test_geometry_intersection_is_exact():
    q = [geo.as_point(p) for p in ((0, 0), (3, 3), (0, 3), (3, 0))]
    assert geo.segment_intersection(*q) == ("proper", Fraction(1, 2), Fraction(1, 2))
    q = [geo.as_point(p) for p in ((0, 0), (1, 0), (0, 1), (1, 1))]
    assert geo.segment_intersection(*q) is None
    q = [geo.as_point(p) for p in ((0, 0), (2, 0), (1, 0), (1, 1))]
    assert geo.segment_intersection(*q)[0] == "touch"
