import itertools
import json
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgmirror.ainfty import (
    AInftyAlgebra,
    WeakMCError,
    check_ainfty,
    curved_square_check,
    deform,
    dg_fixture,
    functor_check,
    functor_image,
    immersed_output_contributions,
    m1_b0,
    p1_algebra,
    polygon_fixture,
    psi_phi1,
    standard_b,
    weak_mc_check,
)
from lgmirror.enumerate import compute_potential, degree_two_parts
from lgmirror.qseries import QSeries


@lru_cache(maxsize=None)
def fixture(cutoff=20, k_max=5):
    return polygon_fixture((3, 3, 3), cutoff, k_max)


def _const(c) -> Fraction:
    # coefficients of the dg fixture live in a ring without variables
    val = c.coeff(())
    return val.coeff(0) if isinstance(val, QSeries) else Fraction(val)


# -- independent dg oracle ------------------------------------------------------


def dg_structure(alg):
    """Recover ``d`` and the product from ``m_1, m_2`` by undoing the sign twist."""
    deg = alg.degrees
    gens = alg.generators

    def vec(outs):
        return {g: _const(c) for g, c in (outs or {}).items() if _const(c)}

    d = {}
    for a in gens:
        sign = -1 if deg[a] % 2 else 1
        d[a] = {g: sign * c for g, c in vec(alg.op((a,))).items()}
    mul = {}
    for u, v in itertools.product(gens, repeat=2):
        # u . v = (-1)^{|v|(|u|+1)} m_2(v, u)
        sign = -1 if (deg[v] * (deg[u] + 1)) % 2 else 1
        mul[(u, v)] = {g: sign * c for g, c in vec(alg.op((v, u))).items()}
    return d, mul


def _lin(f, vec):
    out = {}
    for g, c in vec.items():
        for h, e in f(g).items():
            out[h] = out.get(h, 0) + c * e
    return {h: c for h, c in out.items() if c}


def _bil(mul, left, right):
    out = {}
    for a, c in left.items():
        for b, e in right.items():
            for h, f in mul[(a, b)].items():
                out[h] = out.get(h, 0) + c * e * f
    return {h: c for h, c in out.items() if c}


def _add(*vs):
    out = {}
    for v in vs:
        for g, c in v.items():
            out[g] = out.get(g, 0) + c
    return {g: c for g, c in out.items() if c}


def _scale(v, s):
    return {g: s * c for g, c in v.items()}


def dg_axioms_hold(alg) -> bool:
    d, mul = dg_structure(alg)
    deg = alg.degrees
    gens = alg.generators
    for a in gens:
        if _lin(lambda g: d[g], d[a]):
            return False
        # d must change parity
        if any(deg[g] % 2 == deg[a] % 2 for g in d[a]):
            return False
    for u, v in itertools.product(gens, repeat=2):
        lhs = _lin(lambda g: d[g], mul[(u, v)])
        rhs = _add(_bil(mul, d[u], {v: 1}), _scale(_bil(mul, {u: 1}, d[v]), -1 if deg[u] % 2 else 1))
        if lhs != rhs:
            return False
    for u, v, w in itertools.product(gens, repeat=3):
        if _bil(mul, mul[(u, v)], {w: 1}) != _bil(mul, {u: 1}, mul[(v, w)]):
            return False
    return True


def dg_mutations():
    alg = dg_fixture()
    out = []
    for n in (1, 2):
        for tup in itertools.product(alg.generators, repeat=n):
            for g in alg.generators:
                if alg.parity(g) == (sum(alg.degrees[x] for x in tup) + 2 - n) % 2:
                    out.append((tup, g))
    return out


def test_dg_fixture_passes():
    alg = dg_fixture()
    rep = check_ainfty(alg)
    assert rep.passed and rep.checked > 0 and rep.skipped == 0
    assert dg_axioms_hold(alg)


def test_unit_axioms():
    alg = dg_fixture()
    one = alg.ring.one()
    for x in alg.generators:
        assert alg.op(("1", x)) == {x: one}
        assert alg.op((x, "1")) == {x: one if alg.degrees[x] % 2 == 0 else -one}


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(dg_mutations()), st.sampled_from([-2, -1, 1, 2]))
def test_mutation_detected_iff_dg_axioms_break(mutation, delta):
    tup, g = mutation
    alg = dg_fixture()
    mutated = alg.with_entry(tup, g, alg.ring.one().scale(delta))
    rep = check_ainfty(mutated)
    assert rep.passed == dg_axioms_hold(mutated)
    if not rep.passed:
        assert all(len(v.inputs) >= 1 for v in rep.violations)


def test_mutation_located_on_polygon_fixture():
    alg = fixture()
    q = alg.ring.constant(QSeries({1: 1}, alg.cutoff + 1))
    rep = check_ainfty(alg.with_entry(("e", "X"), "X", q))
    assert not rep.passed
    first = rep.violations[0]
    assert "X" in first.inputs and first.energy == 1


def test_polygon_fixture_passes_small():
    rep = check_ainfty(polygon_fixture((3, 3, 3), 10, 4))
    assert rep.passed and rep.checked > 0


def test_deform_by_zero_is_identity():
    alg = fixture()
    assert deform(alg, {}).tables == alg.tables


def test_weak_mc_matches_potential():
    alg = fixture()
    w = weak_mc_check(alg, standard_b(alg))
    pot, _ = compute_potential((3, 3, 3), 20)
    assert w == pot.as_poly(include_lambda=True)


def test_immersed_outputs_cancel():
    alg = fixture()
    contributions = immersed_output_contributions(alg, standard_b(alg))
    assert all(c.is_zero() for c in contributions.values())
    # the cancellation is between nonzero polygon entries
    immersed = [c for outs in alg.tables.values() for g, c in outs.items() if g != "e" and not c.is_zero()]
    assert immersed


def test_undeformed_m1_vanishes():
    alg = fixture()
    for g in alg.generators:
        assert all(c.is_zero() for c in alg.op((g,)).values())


def test_deformed_m1_on_unit():
    # with m_2(x, e) = (-1)^{|x|} x the unit goes to -b
    alg = fixture()
    b = standard_b(alg)
    assert m1_b0(alg, b, "e") == {g: -c for g, c in b.items()}


def test_deformed_m1_degree_two_parts():
    alg = fixture()
    b = standard_b(alg)
    _, polys = compute_potential((3, 3, 3), 20)
    parts = degree_two_parts(polys, 20)
    img = m1_b0(alg, b, "X")
    assert img["Yb"] == parts["X"]["Yb"] and img["Zb"] == parts["X"]["Zb"]


def test_curved_square():
    alg = fixture()
    b = standard_b(alg)
    w = weak_mc_check(alg, b)
    rep = curved_square_check(alg, b, w)
    assert rep.passed and rep.checked >= 1


def test_p1_weak_mc_both_holonomies():
    for sign in (1, -1):
        alg = p1_algebra(sign)
        w = weak_mc_check(alg, standard_b(alg, ("X", "Y")))
        x, y = w.ring.gens()
        prec = alg.cutoff + 1
        assert w == (x * y).scale(QSeries({2: 1}, prec)) + w.ring.constant(QSeries({4: sign}, prec))
        assert check_ainfty(alg).passed


def test_even_generator_rejected():
    alg = fixture()
    with pytest.raises(ValueError):
        weak_mc_check(alg, {"X": alg.ring.gen("x"), "Xb": alg.ring.gen("y")})


def test_weak_mc_failure_has_witness():
    alg = fixture()
    broken = alg.with_entry(("X", "Y"), "Zb", alg.ring.constant(QSeries({1: 1}, alg.cutoff + 1)))
    with pytest.raises(WeakMCError) as err:
        weak_mc_check(broken, standard_b(broken))
    assert "Zb" in err.value.witness


def test_functor_unit_acts_by_sign():
    alg = fixture()
    b = standard_b(alg)
    minus_one = -alg.ring.one()
    for y in alg.generators:
        assert functor_image(alg, b, ("e",), y) == {y: minus_one}


def test_functor_equations():
    alg = fixture()
    b = standard_b(alg)
    one = functor_check(alg, b, [(g,) for g in alg.generators])
    two = functor_check(alg, b, [("X", "Y"), ("e", "X"), ("X", "e"), ("Y", "Z"), ("X", "X")])
    assert one.passed and one.checked > 0
    assert two.passed and two.checked > 0


def test_psi_phi_is_identity():
    alg = fixture()
    assert psi_phi1(alg, standard_b(alg)) == {"p": alg.ring.one()}


def test_json_round_trip():
    alg = fixture(10, 4)
    again = AInftyAlgebra.from_dict(json.loads(alg.to_json()))
    assert again.tables == alg.tables and again.degrees == alg.degrees
