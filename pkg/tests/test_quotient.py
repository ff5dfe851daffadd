import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from hypothesis import given, settings
from hypothesis import strategies as st

from lgmirror import reference
from lgmirror.matrixfact import p1_fixture
from lgmirror.quotient import (
    Group,
    GroupLabeling,
    check_twisted_equivariance,
    check_w_invariance,
    search_generator_labels,
    z3_labeling,
)
from lgmirror.verify import seidel_data


@lru_cache(maxsize=None)
def seidel():
    return seidel_data(100)


def golden_labels():
    path = resources.files("lgmirror") / "golden" / "seidel_z3_labels.json"
    return GroupLabeling.from_dict(json.loads(path.read_text()))


def test_potential_is_z3_invariant():
    w, _, _ = seidel()
    rep = check_w_invariance(w, z3_labeling())
    assert rep.passed and rep.checked == 3 * 4


def test_reference_potential_is_z3_invariant():
    assert check_w_invariance(reference.w333_potential(60), z3_labeling())


def test_mislabelled_variable_fails():
    w, _, _ = seidel()
    lab = GroupLabeling(Group((3,)), {"x": (0,), "y": (1,), "z": (1,)})
    rep = check_w_invariance(w, lab)
    assert not rep.passed
    xyz = [v for v in rep.violations if v["monomial"] == "x^1 y^1 z^1"]
    assert {v["phase"] for v in xyz} == {Fraction(2, 3), Fraction(1, 3)}


def test_trivial_group_always_invariant():
    w, _, _ = seidel()
    lab = GroupLabeling(Group(()), {"x": (), "y": (), "z": ()})
    assert check_w_invariance(w, lab).passed


def test_searched_labels_match_golden():
    _, _, mf = seidel()
    found = search_generator_labels(mf, z3_labeling())
    assert found is not None
    assert found.to_dict() == golden_labels().to_dict()
    assert check_twisted_equivariance(mf, found).passed


def test_permuted_labels_fail():
    _, _, mf = seidel()
    lab = golden_labels()
    gens = dict(lab.gen_labels)
    gens["e"], gens["X"] = gens["X"], gens["e"]
    rep = check_twisted_equivariance(mf, GroupLabeling(lab.group, lab.var_labels, gens))
    assert not rep.passed
    assert all({"from", "to", "monomial", "character"} <= set(v) for v in rep.violations)
    assert any("e" in (v["from"], v["to"]) for v in rep.violations)


def test_p1_fixture_trivial_group():
    mf, _ = p1_fixture()
    lab = GroupLabeling(Group(()), {v: () for v in mf.ring.variables})
    found = search_generator_labels(mf, lab)
    assert found is not None and check_twisted_equivariance(mf, found).passed


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2))
def test_shifted_labels_stay_equivariant(shift):
    # adding a constant to every basis label preserves equivariance
    _, _, mf = seidel()
    lab = golden_labels()
    gens = {b: lab.group.add(g, (shift,)) for b, g in lab.gen_labels.items()}
    assert check_twisted_equivariance(mf, GroupLabeling(lab.group, lab.var_labels, gens)).passed


def test_labeling_json_round_trip():
    lab = golden_labels()
    assert GroupLabeling.from_dict(json.loads(lab.to_json())).to_dict() == lab.to_dict()
