"""Dual-group actions on mirror variables.

A finite abelian group is given by its cyclic factors ``(n_1, ..., n_m)``;
elements and characters are integer tuples.  A character ``k`` takes ``g`` to
``exp(2 pi i sum k_j g_j / n_j)``, which is tracked exactly as the rational
``sum k_j g_j / n_j`` modulo one.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .enumerate import Potential
from .matrixfact import MatrixFactorization
from .polyring import MPoly

Element = tuple[int, ...]


@dataclass(frozen=True)
class Group:
    orders: tuple[int, ...]

    def __post_init__(self):
        if any(n < 1 for n in self.orders):
            raise ValueError("cyclic factor orders must be positive")

    def normalize(self, g: Iterable[int]) -> Element:
        g = tuple(g)
        if len(g) != len(self.orders):
            raise ValueError(f"element {g} does not match group {self.orders}")
        return tuple(a % n for a, n in zip(g, self.orders))

    def identity(self) -> Element:
        return tuple(0 for _ in self.orders)

    def add(self, a: Element, b: Element) -> Element:
        return self.normalize(x + y for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        return self.normalize(-x for x in a)

    def scale(self, a: Element, k: int) -> Element:
        return self.normalize(k * x for x in a)

    def elements(self) -> list[Element]:
        return [tuple(g) for g in itertools.product(*(range(n) for n in self.orders))]

    def characters(self) -> list[Element]:
        return self.elements()

    def pairing(self, chi: Element, g: Element) -> Fraction:
        """Phase of ``chi(g)`` as a fraction of a full turn, in ``[0, 1)``."""
        total = sum(Fraction(k * a, n) for k, a, n in zip(chi, g, self.orders))
        return total - (total.numerator // total.denominator)


@dataclass
class GroupLabeling:
    group: Group
    var_labels: dict[str, Element]
    gen_labels: dict[str, Element] = field(default_factory=dict)

    def __post_init__(self):
        self.var_labels = {v: self.group.normalize(g) for v, g in self.var_labels.items()}
        self.gen_labels = {v: self.group.normalize(g) for v, g in self.gen_labels.items()}

    def weight(self, variables: Sequence[str], exp: Sequence[int]) -> Element:
        w = self.group.identity()
        for v, e in zip(variables, exp):
            if e:
                if v not in self.var_labels:
                    raise ValueError(f"variable {v!r} has no label")
                w = self.group.add(w, self.group.scale(self.var_labels[v], e))
        return w

    def to_dict(self) -> dict:
        return {
            "group": list(self.group.orders),
            "varLabels": {v: list(g) for v, g in sorted(self.var_labels.items())},
            "genLabels": {v: list(g) for v, g in self.gen_labels.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "GroupLabeling":
        group = Group(tuple(int(n) for n in data["group"]))
        return cls(
            group,
            {v: tuple(g) for v, g in data["varLabels"].items()},
            {v: tuple(g) for v, g in data.get("genLabels", {}).items()},
        )


def z3_labeling() -> GroupLabeling:
    """``Z/3`` with ``x, y, z`` all labelled by the generator."""
    return GroupLabeling(Group((3,)), {"x": (1,), "y": (1,), "z": (1,)})


@dataclass
class QuotientReport:
    passed: bool
    checked: int
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def _as_poly(w) -> MPoly:
    if isinstance(w, Potential):
        return w.as_poly(include_lambda=True)
    return w


def check_w_invariance(w, lab: GroupLabeling) -> QuotientReport:
    """Every character fixes every monomial of ``w``."""
    poly = _as_poly(w)
    variables = poly.ring.variables
    violations = []
    checked = 0
    for exp, _ in poly.items():
        wt = lab.weight(variables, exp)
        for chi in lab.group.characters():
            checked += 1
            phase = lab.group.pairing(chi, wt)
            if phase:
                violations.append({"character": chi, "monomial": poly.ring.key(exp), "phase": phase})
    return QuotientReport(not violations, checked, violations)


def check_twisted_equivariance(mf: MatrixFactorization, lab: GroupLabeling) -> QuotientReport:
    """Each entry from a ``g1``-labelled to a ``g2``-labelled basis element is fixed by
    ``chi(g1)^{-1} chi(.) chi(g2)`` for every character ``chi``."""
    missing = [b for b in mf.labels if b not in lab.gen_labels]
    if missing:
        raise ValueError(f"basis elements without labels: {missing}")
    grp = lab.group
    violations = []
    checked = 0
    variables = mf.ring.variables
    for i, row in enumerate(mf.labels):
        for j, col in enumerate(mf.labels):
            entry = mf.entries[i][j]
            if entry.is_zero():
                continue
            g1, g2 = lab.gen_labels[col], lab.gen_labels[row]
            for exp, _ in entry.items():
                wt = lab.weight(variables, exp)
                for chi in grp.characters():
                    checked += 1
                    phase = grp.pairing(chi, grp.add(grp.add(grp.neg(g1), wt), g2))
                    if phase:
                        violations.append(
                            {"from": col, "to": row, "monomial": mf.ring.key(exp), "character": chi}
                        )
    return QuotientReport(not violations, checked, violations)


def search_generator_labels(mf: MatrixFactorization, lab: GroupLabeling) -> GroupLabeling | None:
    """First assignment in lexicographic order of ``G^n`` making ``mf`` twisted-equivariant.

    Depth-first over the basis in order; a partial assignment is dropped as
    soon as an entry between two labelled elements fails.
    """
    grp = lab.group
    elements = grp.elements()
    basis = mf.labels
    n = len(basis)
    variables = mf.ring.variables
    weights = {}
    for i in range(n):
        for j in range(n):
            entry = mf.entries[i][j]
            if not entry.is_zero():
                weights[(i, j)] = {lab.weight(variables, exp) for exp, _ in entry.items()}
    chosen: list[Element] = []

    def consistent(k: int) -> bool:
        for other in range(k + 1):
            for i, j in ((k, other), (other, k)):
                ws = weights.get((i, j))
                if ws is None:
                    continue
                need = grp.add(chosen[j], grp.neg(chosen[i]))
                if ws != {need}:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        for g in elements:
            chosen.append(g)
            if consistent(k) and extend(k + 1):
                return True
            chosen.pop()
        return False

    if not extend(0):
        return None
    return GroupLabeling(grp, dict(lab.var_labels), dict(zip(basis, chosen)))
