from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgmirror.matrixfact import (
    SEIDEL_BASIS,
    SEIDEL_EXTERIOR_MAP,
    MatrixFactorization,
    block_products,
    long_diagonal_check,
    long_diagonal_matrices,
    morphism_differential,
    p1_fixture,
    seidel_wedge_contraction,
    short_diagonal_matrix,
    short_diagonal_relations,
    signed_permutation_equal,
    square_check,
    swap_xz_key,
    trivial_certificate,
    wedge_contraction,
    _long_ring,
)
from lgmirror.polyring import MPoly, PolyRing
from lgmirror.verify import seidel_data

R = PolyRing(("x", "y", "z", "u"))


@lru_cache(maxsize=None)
def seidel(cutoff=100):
    return seidel_data(cutoff)


@st.composite
def polys(draw, max_terms=3, max_deg=2):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.integers(0, max_deg)) for _ in R.variables)
        terms[exp] = Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
    return MPoly(R, terms)


def test_p1_fixture_products():
    mf, w_plus = p1_fixture()
    assert square_check(mf)["pass"]
    hk, kh = block_products(mf)
    for prod in (hk, kh):
        assert prod[0][0] == mf.target and prod[1][1] == mf.target
        assert prod[0][1].is_zero() and prod[1][0].is_zero()


def test_zero_matrix_passes():
    zero = R.zero()
    mf = MatrixFactorization(R, [[zero, zero], [zero, zero]], (0, 1), zero)
    assert square_check(mf)["pass"]


def test_odd_placement_enforced():
    x = R.gen("x")
    with pytest.raises(ValueError):
        MatrixFactorization(R, [[x, R.zero()], [R.zero(), R.zero()]], (0, 1), R.zero())


def test_bad_square_reports_entries():
    x, y = R.gen("x"), R.gen("y")
    mf = MatrixFactorization(R, [[R.zero(), x], [y, R.zero()]], (0, 1), x * x)
    rep = square_check(mf)
    assert not rep["pass"] and len(rep["offending"]) == 2


def test_seidel_square_and_entries():
    w, fd, mf = seidel()
    assert mf.labels == SEIDEL_BASIS
    assert square_check(mf)["pass"]
    x = mf.ring.gen("x")
    assert mf.entry("X", "e") == x
    assert mf.entry("e", "X") == fd.w_x
    for bar, v in (("Xb", "X"), ("Yb", "Y"), ("Zb", "Z")):
        assert mf.entry(v, bar).is_zero()


def test_rank_two_koszul():
    x, y = R.gen("x"), R.gen("y")
    mf = wedge_contraction([x], [y])
    assert mf.entries == [[R.zero(), y], [x, R.zero()]]
    assert mf.target == x * y


def test_seidel_is_wedge_contraction():
    _, fd, mf = seidel()
    k = seidel_wedge_contraction(fd)
    assert square_check(k)["pass"]
    assert signed_permutation_equal(k, mf, SEIDEL_EXTERIOR_MAP)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.lists(polys(), min_size=n, max_size=n),
                                                      st.lists(polys(), min_size=n, max_size=n))))
def test_wedge_contraction_squares(data):
    xs, ws = data
    mf = wedge_contraction(xs, ws)
    assert square_check(mf)["pass"]


def test_long_diagonal_symbolic():
    assert long_diagonal_check()["pass"]


def test_long_diagonal_specialized():
    phi = _long_ring().gen("phi")
    rep = long_diagonal_check({"a1": 1, "a2": 1, "a3": 1, "psi": phi.scale(3)})
    assert rep["pass"]


def test_long_diagonal_wrong_specialization_fails():
    phi = _long_ring().gen("phi")
    rep = long_diagonal_check({"a1": 1, "a2": 1, "a3": 1, "psi": phi.scale(2)})
    assert not rep["pass"]


def test_long_diagonal_row_patterns():
    ring = _long_ring()
    J, E, _, D = long_diagonal_matrices(ring)
    phi, psi, a1, a2, a3, x, y, z = ring.gens()
    assert E[0] == [a1 * x, a2 * z, a3 * y]
    # D beta_1 x^2 + D gamma_1 y z
    assert J[0][0] == phi * a2 * a3 * x * x - phi * a1 * a1 * y * z


def test_short_diagonal_relations():
    rels = short_diagonal_relations()
    assert rels
    keys = {k for k, _ in rels}
    assert {swap_xz_key(k) for k in keys} == keys
    P, W, ring = short_diagonal_matrix()
    zero = {v: 0 for v in ("a1", "a2", "a3", "b1", "b2", "b3", "g1", "g2", "g3", "phi", "psi")}
    assert all(p.substitute(zero).is_zero() for _, p in rels)
    assert P[0][0].is_zero() and P[2][1] == -P[0][3]


def test_identity_morphism_is_closed():
    mf = p1_fixture()[0]
    ident = [[mf.ring.one() if i == j else mf.ring.zero() for j in range(mf.size)] for i in range(mf.size)]
    d = morphism_differential(ident, mf, mf)
    assert all(e.is_zero() for row in d for e in row)


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), st.lists(polys(), min_size=4, max_size=4))
def test_morphism_differential_squares_to_zero(a, b, fs):
    # P and Q factor the same target
    p = wedge_contraction([a], [b])
    q = wedge_contraction([b], [a])
    odd = [[R.zero(), fs[1]], [fs[2], R.zero()]]
    even = [[fs[0], R.zero()], [R.zero(), fs[3]]]
    for f in (even, odd):
        dd = morphism_differential(morphism_differential(f, p, q), p, q)
        assert all(e.is_zero() for row in dd for e in row)


def test_morphism_differential_curvature_difference():
    x = R.gen("x")
    one = R.one()
    p = wedge_contraction([x], [x])
    q = MatrixFactorization(R, [[R.zero(), x], [x, R.zero()]], (0, 1), x * x)
    q_shift = MatrixFactorization(R, [[R.zero(), x + one], [x - one, R.zero()]], (0, 1), x * x - one)
    ident = [[one, R.zero()], [R.zero(), one]]
    dd = morphism_differential(morphism_differential(ident, p, q_shift), p, q_shift)
    # d^2 f = (lambda_Q - lambda_P) f with lambda_Q - lambda_P = -1
    assert dd == [[-one, R.zero()], [R.zero(), -one]]
    assert morphism_differential(ident, p, q) == [[R.zero()] * 2] * 2


def test_trivial_certificate():
    one = R.one()
    x = R.gen("x")
    contractible = MatrixFactorization(R, [[R.zero(), one], [x, R.zero()]], (1, 0), x)
    assert trivial_certificate(contractible) == 1
    assert trivial_certificate(p1_fixture()[0]) is None
