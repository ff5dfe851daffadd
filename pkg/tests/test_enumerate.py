import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgmirror import reference
from lgmirror.cover import MedialGraph, RegionWeights, Tessellation
from lgmirror.enumerate import (
    DEFAULT_W_RULE,
    Potential,
    assemble_potential,
    compute_delta,
    compute_potential,
    compute_theta_gamma,
    degree_two_parts,
    enumerate_polygons,
    euler_characteristic,
    expected_corners,
    potential_from_raw_signs,
    raw_sign,
    reflect_symbols,
)
from lgmirror.polyring import MPoly, SeriesRing
from lgmirror.qseries import QSeries

CORPORA = {(3, 3, 3): 40, (2, 3, 7): 30, (3, 4, 5): 22, (3, 3, 4): 18, (2, 4, 5): 24}


@lru_cache(maxsize=None)
def corpus(sig):
    graph = MedialGraph(Tessellation(*sig))
    return graph, tuple(enumerate_polygons(graph, cutoff=CORPORA[sig]))


def polygon_cases():
    return st.sampled_from(sorted(CORPORA)).flatmap(
        lambda sig: st.tuples(st.just(sig), st.integers(0, len(corpus(sig)[1]) - 1))
    )


def test_cutoff_one_inventory():
    _, polys = compute_potential((3, 3, 3), 1)
    assert len(polys) == 2
    up = next(p for p in polys if p.s == 1)
    down = next(p for p in polys if p.s == 0)
    assert (up.pcount, up.r, up.area) == (0, 1, 1)
    assert (down.pcount, down.r, down.area) == (1, 1, 1)
    assert up.reflection_key() == down.key


def test_cutoff_nine_gons():
    _, polys = compute_potential((3, 3, 3), 9)
    gons = [p for p in polys if len(set(p.word)) == 1]
    assert len(gons) == 6
    for word in ("XXX", "YYY", "ZZZ"):
        pair = [p for p in gons if p.word_str == word]
        assert sorted(p.s for p in pair) == [0, 3]
        assert all(p.r == 3 and p.area == 9 for p in pair)


def test_cutoff_25_side_five_triangles():
    _, polys = compute_potential((3, 3, 3), 25)
    big = [p for p in polys if p.area == 25]
    assert big and all(p.monomial == (1, 1, 1) for p in big)
    assert all(side[2] == 5 for p in big for side in p.sides)


def test_potential_cutoff_ten():
    w, _ = compute_potential((3, 3, 3), 10)
    got = {Potential.key(m): dict(s.items()) for m, s in w.monomials.items()}
    assert got == {"x^1 y^1 z^1": {1: -1}, "x^3": {9: -1}, "y^3": {9: 1}, "z^3": {9: -1}}


def test_potential_cutoff_82():
    w, _ = compute_potential((3, 3, 3), 82)
    assert dict(w.series((1, 1, 1)).items()) == {1: -1, 25: -5, 49: 7}
    assert dict(w.series((3, 0, 0)).items()) == {9: -1, 81: 3}


@pytest.mark.parametrize("sig", [(2, 3, 7), (3, 4, 5), (3, 3, 4)])
def test_hyperbolic_minimal_cutoff(sig):
    w, _ = compute_potential(sig, 1)
    assert {m: dict(s.items()) for m, s in w.monomials.items()} == {(1, 1, 1): {1: -1}}


def test_hyperbolic_minimal_cutoff_weighted():
    weights = RegionWeights(central=Fraction(5, 2))
    w, _ = compute_potential((2, 3, 7), Fraction(5, 2), weights)
    assert {m: dict(s.items()) for m, s in w.monomials.items()} == {(1, 1, 1): {Fraction(5, 2): -1}}


def test_spherical_marked_partial():
    w, _ = compute_potential((2, 2, 3), 4)
    assert w.partial and w.to_dict()["partial"] is True


def test_raw_sign_examples():
    _, polys = compute_potential((3, 3, 3), 9)
    by_word = {}
    for p in polys:
        if p.s:
            by_word[p.word_str if len(set(p.word)) == 1 else "XYZ"] = raw_sign(p)
    assert by_word == {"XYZ": -1, "XXX": -1, "YYY": 1, "ZZZ": -1}


def test_theta_gamma():
    w, polys = compute_potential((3, 3, 3), 60, backend="lattice")
    theta, gamma = compute_theta_gamma(polys, 60)
    assert theta[(1, (1, 1, 1))] == -1
    assert all(min(m) >= 1 for (_, m) in theta)
    assert gamma.coeff((0, 0, 0)).leading_term() == (1, -1)
    assert dict(gamma.coeff((0, 0, 0)).items()) == {1: -1, 25: 1, 49: 1}


def test_gamma_golden():
    path = resources.files("lgmirror") / "golden" / "gamma333_c100.json"
    golden = MPoly.from_dict(json.loads(path.read_text()), SeriesRing())
    _, polys = compute_potential((3, 3, 3), 100, backend="lattice")
    _, gamma = compute_theta_gamma(polys, 100)
    assert gamma == golden


def test_delta_structure():
    w, polys = compute_potential((3, 3, 3), 100, backend="lattice")
    theta, gamma = compute_theta_gamma(polys, 100)
    fd = compute_delta(polys, theta, gamma, 100, potential=w)
    assert fd.rule == DEFAULT_W_RULE
    x, y, z = fd.gamma.ring.gens()
    assert fd.delta_table["e"] == {"X": x, "Y": y, "Z": z}
    assert fd.delta_table["X"]["Yb"] == z and fd.delta_table["X"]["Zb"] == -y
    ref = reference.w333(w.lam.precision)
    assert all(a == b for a, b in zip(fd.w, ref))


def test_degree_two_leading_order():
    _, polys = compute_potential((3, 3, 3), 30, backend="lattice")
    parts = degree_two_parts(polys, 30)
    z = parts["X"]["Yb"].ring.gen("z")
    y = parts["X"]["Zb"].ring.gen("y")
    g = QSeries({1: -1, 25: 1}, 31)
    assert parts["X"]["Yb"] == z.scale(g)
    assert parts["X"]["Zb"] == y.scale(-g)


def test_threads_byte_identical():
    a, _ = compute_potential((3, 4, 5), 14)
    b, _ = compute_potential((3, 4, 5), 14, threads=3)
    assert a.to_json() == b.to_json()


def test_potential_json_round_trip():
    w, _ = compute_potential((2, 3, 7), 22)
    assert Potential.from_dict(json.loads(w.to_json())).to_json() == w.to_json()


@settings(max_examples=150, deadline=None)
@given(polygon_cases())
def test_gauss_bonnet(case):
    sig, i = case
    graph, polys = corpus(sig)
    p = polys[i]
    assert expected_corners(sig, p.regions) == len(p.word)
    assert euler_characteristic(graph, p.regions) == 1


@settings(max_examples=150, deadline=None)
@given(polygon_cases())
def test_reflection_partner(case):
    sig, i = case
    _, polys = corpus(sig)
    p = polys[i]
    by_key = {q.key: q for q in polys}
    q = by_key[p.reflection_key()]
    assert reflect_symbols(q.key) == p.key
    assert q.area == p.area and q.monomial == p.monomial
    assert sorted(q.word) == sorted(p.word)
    assert (q.s, q.pcount) == (p.pcount, p.s)


@settings(max_examples=150, deadline=None)
@given(polygon_cases())
def test_sides_have_odd_arc_counts(case):
    sig, i = case
    p = corpus(sig)[1][i]
    assert all(side[2] % 2 == 1 for side in p.sides)


@pytest.mark.parametrize("sig", sorted(CORPORA))
def test_raw_sign_sum_matches_pair_sum(sig):
    _, polys = corpus(sig)
    cutoff = CORPORA[sig]
    a = assemble_potential(list(polys), cutoff, sig)
    b = potential_from_raw_signs(list(polys), cutoff, sig)
    assert a.to_json() == b.to_json()
