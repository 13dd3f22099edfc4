import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rthy import (
    Encoding,
    EnumerationTooLarge,
    FormatError,
    HypothesisMismatch,
    INFEASIBLE,
    LengthMismatch,
    LpOutcome,
    StochasticMap,
    ZeroReference,
    det_postprocessings,
    lorenz,
    majorizes,
    markotope_contains,
    relative_majorizes,
    verify_certificate,
    zonotope,
    zonotope_includes,
)
from rthy.instances import (
    binary_image_of_x,
    incomparable_x,
    incomparable_y,
    two_point_encoding,
)

from conftest import encodings, stochastic_maps

H = Fraction(1, 2)


def test_encoding_json_roundtrip():
    x = incomparable_x()
    assert Encoding.from_json(x.to_json()) == x
    assert x.to_json()["columns"][0] == ["1/2", "1/2", "0", "0"]


def test_encoding_json_rejects():
    with pytest.raises(FormatError):
        Encoding.from_json({"hypotheses": 2, "columns": [["1"], ["1"]]})
    with pytest.raises(FormatError):
        Encoding.from_json(
            {"hypotheses": 2, "outcomes": 2, "columns": [["1", "0"]]})
    with pytest.raises(FormatError):
        Encoding.from_columns([["1", "0"], ["1"]])


def test_stochastic_map_json_roundtrip():
    t = StochasticMap.from_rows([[H, 1], [H, 0]])
    assert StochasticMap.from_json(t.to_json()) == t
    assert t.to_json() == {"from": 2, "to": 2, "columns": [["1/2", "1/2"], ["1", "0"]]}


@given(encodings(), st.data())
def test_postprocessed_encoding_is_reachable(x, data):
    t = data.draw(stochastic_maps(x.outcomes))
    res = majorizes(x, t(x))
    assert res.convertible
    assert res.witness(x) == t(x)  # the found map need not equal t


@given(encodings())
def test_self_majorization(x):
    res = majorizes(x, x)
    assert res.convertible
    assert res.witness(x) == x


def test_bundled_pair_incomparable_with_certificates():
    x, y = incomparable_x(), incomparable_y()
    for a, b in ((x, y), (y, x)):
        res = majorizes(a, b)
        assert not res.convertible
        replay = LpOutcome(status=INFEASIBLE, farkas=list(res.farkas))
        assert verify_certificate(res.problem, replay)


def test_hypothesis_count_mismatch():
    with pytest.raises(HypothesisMismatch):
        majorizes(incomparable_x(), two_point_encoding(H, H))


def test_zonotope_pinned_vertices():
    eighth = two_point_encoding(Fraction(1, 8), H)
    assert zonotope(eighth).vertices == (
        (0, 0), (Fraction(7, 8), H), (1, 1), (Fraction(1, 8), H))
    quarter = two_point_encoding(Fraction(1, 4), Fraction(3, 4))
    assert zonotope(quarter).vertices == (
        (0, 0), (Fraction(3, 4), Fraction(1, 4)), (1, 1),
        (Fraction(1, 4), Fraction(3, 4)))


def test_zonotope_mutual_non_inclusion():
    eighth = two_point_encoding(Fraction(1, 8), H)
    quarter = two_point_encoding(Fraction(1, 4), Fraction(3, 4))
    assert not zonotope_includes(eighth, quarter)
    assert not zonotope_includes(quarter, eighth)


def test_zonotope_includes_bundled_pair():
    assert zonotope_includes(incomparable_x(), incomparable_y())
    assert not zonotope_includes(incomparable_y(), incomparable_x())


@given(encodings(max_hypotheses=2))
def test_zonotope_centrally_symmetric(x):
    vs = zonotope(x).vertices
    assert vs[0] == (0, 0)
    flipped = {(1 - a, 1 - b) for a, b in vs}
    assert flipped == set(vs)


@given(encodings(max_outcomes=3, max_hypotheses=2))
def test_zonotope_contains_all_subset_sums(x):
    z = zonotope(x)
    rows = [x.matrix.row(i) for i in range(x.outcomes)]
    for picks in itertools.product((0, 1), repeat=len(rows)):
        point = [sum((r[c] for r, p in zip(rows, picks) if p), Fraction(0))
                 for c in range(2)]
        assert tuple(point) in z


@given(encodings(max_outcomes=4, max_hypotheses=2, min_hypotheses=2))
def test_zonotope_inclusion_matches_lp_decision(x):
    # with two hypotheses the polygon test and the conversion LP agree
    y = two_point_encoding(Fraction(1, 3), Fraction(2, 3))
    assert zonotope_includes(x, y) == majorizes(x, y).convertible


def test_markotope_pinned():
    z = binary_image_of_x()
    assert markotope_contains(incomparable_x(), z, 2)
    assert not markotope_contains(incomparable_y(), z, 2)


def test_lorenz_pinned_curve():
    x = [Fraction(3, 4), Fraction(1, 12), Fraction(1, 12), Fraction(1, 12)]
    r = [Fraction(1, 4)] * 4
    assert lorenz(x, r) == [
        (0, 0),
        (Fraction(1, 4), Fraction(3, 4)),
        (Fraction(1, 2), Fraction(5, 6)),
        (Fraction(3, 4), Fraction(11, 12)),
        (1, 1),
    ]


def test_lorenz_against_itself_is_diagonal():
    assert lorenz(["1"], ["1"]) == [(0, 0), (1, 1)]
    pts = lorenz([H, H], [H, H])
    assert pts == [(0, 0), (H, H), (1, 1)]


def test_lorenz_rejects():
    with pytest.raises(LengthMismatch):
        lorenz([1], [H, H])
    with pytest.raises(ZeroReference):
        lorenz([H, H], [1, 0])


@given(st.data())
def test_lorenz_concave_with_unit_endpoints(data):
    n = data.draw(st.integers(1, 5))
    weights = data.draw(st.lists(st.integers(0, 6), min_size=n, max_size=n)
                        .filter(lambda w: sum(w) > 0))
    refs = data.draw(st.lists(st.integers(1, 6), min_size=n, max_size=n))
    x = [Fraction(w, sum(weights)) for w in weights]
    r = [Fraction(w, sum(refs)) for w in refs]
    pts = lorenz(x, r)
    assert pts[0] == (0, 0) and pts[-1] == (1, 1)
    slopes = [(b[1] - a[1]) / (b[0] - a[0]) for a, b in zip(pts, pts[1:])]
    assert all(s0 >= s1 for s0, s1 in zip(slopes, slopes[1:]))


def test_relative_majorization_incomparable_pair():
    x = [Fraction(3, 4), Fraction(1, 12), Fraction(1, 12), Fraction(1, 12)]
    y = [Fraction(7, 8), Fraction(1, 8)]
    rx = [Fraction(1, 4)] * 4
    ry = [Fraction(1, 2)] * 2
    assert not relative_majorizes(x, rx, y, ry).convertible
    assert not relative_majorizes(y, ry, x, rx).convertible


def test_det_postprocessings_enumeration():
    maps = det_postprocessings(3, 2)
    assert len(maps) == 8
    assert len(set(maps)) == 8
    for t in maps:
        for j in range(3):
            col = [t.matrix[i, j] for i in range(2)]
            assert sorted(col) == [0, 1]
    # first map sends everything to outcome 0
    assert all(maps[0].matrix[0, j] == 1 for j in range(3))


def test_enumeration_guard(monkeypatch):
    monkeypatch.setenv("RTHY_ENUM_GUARD", "7")
    with pytest.raises(EnumerationTooLarge):
        det_postprocessings(3, 2)
    monkeypatch.setenv("RTHY_ENUM_GUARD", "8")
    assert len(det_postprocessings(3, 2)) == 8
