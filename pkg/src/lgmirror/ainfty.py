"""Energy-truncated A-infinity algebras stored as sparse tables.

Operations are finite tables ``(input tuple) -> {output generator: coefficient}``
with coefficients in a polynomial ring over truncated q-series.  A table need
not be complete: a tuple counts as *populated* when it has an explicit entry,
when all of its inputs lie in one of the declared ``domains`` (missing entries
there mean zero), or when it contains the strict unit.  Relation checks only
use populated values and report how many relations had to be skipped.

Sign conventions: ``|x|' = |x| - 1`` and the relation for ``(x_1, ..., x_n)`` is

    sum (-1)^{eps} m(x_1, ..., x_{i-1}, m(x_i, ...), ..., x_n) = 0,
    eps = sum_{j < i} (|x_j| + 1).

With these signs a strict unit satisfies ``m_2(e, x) = x`` and
``m_2(x, e) = (-1)^{|x|} x``.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cover import MedialGraph, RegionWeights, Tessellation, signature_kind
from .enumerate import Polygon, _precision_for, compute_potential, enumerate_polygons
from .polyring import MPoly, PolyRing, SeriesRing
from .qseries import QSeries

XYZ = ("x", "y", "z")
FIXTURE_GENERATORS = ("e", "X", "Y", "Z", "Xb", "Yb", "Zb", "p")
FIXTURE_DEGREES = (0, 1, 1, 1, 2, 2, 2, 3)
_BAR = {"X": "Xb", "Y": "Yb", "Z": "Zb"}

Table = dict[tuple, dict[str, MPoly]]


def series_ring(variables: Sequence[str] = XYZ) -> PolyRing:
    return PolyRing(tuple(variables), SeriesRing())


@dataclass
class AInftyAlgebra:
    generators: tuple[str, ...]
    degrees: dict[str, int]
    ring: PolyRing
    tables: Table
    unit: str | None = None
    k_max: int = 5
    cutoff: Fraction | None = None
    domains: tuple[frozenset, ...] = ()
    complete: bool = False
    note: str = ""

    def __post_init__(self):
        unknown = set(self.degrees) ^ set(self.generators)
        if unknown:
            raise ValueError(f"degrees and generators disagree on {sorted(unknown)}")
        for tup, outs in self.tables.items():
            for g in (*tup, *outs):
                if g not in self.degrees:
                    raise ValueError(f"unknown generator {g!r} in table entry {tup}")
            for out in outs:
                if self.parity(out) != (sum(self.degrees[g] for g in tup) + 2 - len(tup)) % 2:
                    raise ValueError(f"entry {tup} -> {out} has the wrong parity")

    def parity(self, g: str) -> int:
        return self.degrees[g] % 2

    def shifted(self, g: str) -> int:
        return self.degrees[g] - 1

    def zero(self) -> MPoly:
        return self.ring.zero()

    def populated(self, tup: tuple) -> bool:
        if tup in self.tables:
            return True
        if self.unit is not None and self.unit in tup:
            return True
        if len(tup) > self.k_max:
            return False
        if self.complete:
            return True
        return len(tup) > 0 and any(all(g in dom for g in tup) for dom in self.domains)

    def op(self, tup: tuple) -> dict[str, MPoly] | None:
        """Value of ``m_k`` on ``tup`` or ``None`` when the table does not cover it."""
        tup = tuple(tup)
        if tup in self.tables:
            return self.tables[tup]
        if self.unit is not None and self.unit in tup:
            return self._unit_rule(tup)
        if self.populated(tup):
            return {}
        return None

    def _unit_rule(self, tup: tuple) -> dict[str, MPoly]:
        if len(tup) != 2:
            return {}
        a, b = tup
        one = self.ring.one()
        if a == self.unit:
            return {b: one}
        return {a: one if self.parity(a) == 0 else -one}

    def with_entry(self, tup: tuple, out: str, delta) -> "AInftyAlgebra":
        """Copy with ``delta`` added to one structure constant."""
        tables = {k: dict(v) for k, v in self.tables.items()}
        current = self.op(tup)
        row = dict(current or {})
        row[out] = row.get(out, self.zero()) + delta
        tables[tuple(tup)] = row
        return replace(self, tables=tables)

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        entries = []
        for tup in sorted(self.tables, key=lambda t: (len(t), t)):
            outs = self.tables[tup]
            entries.append(
                {
                    "k": len(tup),
                    "in": list(tup),
                    "out": [[g, c.to_dict()] for g, c in sorted(outs.items())],
                }
            )
        return {
            "generators": [[g, self.degrees[g]] for g in self.generators],
            "unit": self.unit,
            "k_max": self.k_max,
            "cutoff": None if self.cutoff is None else [self.cutoff.numerator, self.cutoff.denominator],
            "domains": [sorted(d) for d in self.domains],
            "complete": self.complete,
            "note": self.note,
            "entries": entries,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: Mapping) -> "AInftyAlgebra":
        gens = tuple(g for g, _ in data["generators"])
        degrees = {g: int(d) for g, d in data["generators"]}
        coeffs = SeriesRing()
        tables: Table = {}
        ring = None
        for entry in data["entries"]:
            row = {}
            for g, c in entry["out"]:
                poly = MPoly.from_dict(c, coeffs)
                ring = ring or poly.ring
                row[g] = poly
            tables[tuple(entry["in"])] = row
        cutoff = data.get("cutoff")
        return cls(
            generators=gens,
            degrees=degrees,
            ring=ring or series_ring(),
            tables=tables,
            unit=data.get("unit"),
            k_max=int(data.get("k_max", 5)),
            cutoff=None if cutoff is None else Fraction(*cutoff),
            domains=tuple(frozenset(d) for d in data.get("domains", ())),
            complete=bool(data.get("complete", False)),
            note=data.get("note", ""),
        )


# -- relation checking ---------------------------------------------------------


@dataclass
class Violation:
    inputs: tuple
    output: str
    energy: Fraction | None
    residual: MPoly

    def __str__(self):
        return f"m-relation on {self.inputs} -> {self.output} fails at energy {self.energy}"


@dataclass
class RelationReport:
    passed: bool
    checked: int
    skipped: int
    violations: list[Violation] = field(default_factory=list)

    def __bool__(self):
        return self.passed


def _energy(poly: MPoly) -> Fraction | None:
    vals = [c.valuation() for _, c in poly.items() if not c.is_zero()]
    return min(vals) if vals else None


def _accumulate(acc: dict, outs: Mapping[str, MPoly], factor: MPoly):
    for g, c in outs.items():
        acc[g] = acc.get(g) + factor * c if g in acc else factor * c


def relation(alg: AInftyAlgebra, tup: tuple) -> dict[str, MPoly] | None:
    """Left side of the relation on ``tup``; ``None`` if it needs an unpopulated value."""
    n = len(tup)
    acc: dict[str, MPoly] = {}
    for n2 in range(0, n + 1):
        for i in range(0, n - n2 + 1):
            inner = alg.op(tup[i : i + n2])
            if inner is None:
                return None
            if not inner:
                continue
            eps = sum(alg.degrees[g] + 1 for g in tup[:i]) % 2
            for g, c in inner.items():
                if c.is_zero():
                    continue
                outer = alg.op(tup[:i] + (g,) + tup[i + n2 :])
                if outer is None:
                    return None
                _accumulate(acc, outer, -c if eps else c)
    return acc


def check_ainfty(alg: AInftyAlgebra, max_arity: int | None = None) -> RelationReport:
    """Check every relation on generator tuples of length at most ``max_arity``."""
    top = alg.k_max if max_arity is None else max_arity
    checked = skipped = 0
    violations = []
    for n in range(0, top + 1):
        for tup in itertools.product(alg.generators, repeat=n):
            res = relation(alg, tup)
            if res is None:
                skipped += 1
                continue
            checked += 1
            for g, c in sorted(res.items()):
                if not c.is_zero():
                    violations.append(Violation(tup, g, _energy(c), c))
    return RelationReport(not violations, checked, skipped, violations)


# -- deformation -----------------------------------------------------------------


def _validate_b(alg: AInftyAlgebra, b: Mapping[str, MPoly]):
    for g, c in b.items():
        if g not in alg.degrees:
            raise ValueError(f"unknown generator {g!r} in deformation")
        if alg.parity(g) != 1:
            raise ValueError(f"deformation element contains the even generator {g!r}")
        for exp, s in c.items():
            if sum(exp) == 0 and not s.is_zero() and s.valuation() <= 0:
                raise ValueError(f"coefficient of {g!r} has no positive energy; insertions do not converge")


def _expansions(b: Mapping[str, MPoly], length: int):
    """All ``(tuple, coefficient)`` from expanding ``b^{length}``."""
    items = [(g, c) for g, c in b.items() if not c.is_zero()]
    for choice in itertools.product(items, repeat=length):
        coef = None
        for _, c in choice:
            coef = c if coef is None else coef * c
        yield tuple(g for g, _ in choice), coef


def deformed_op(
    alg: AInftyAlgebra, xs: tuple, bs: Sequence[Mapping[str, MPoly] | None]
) -> dict[str, MPoly] | None:
    """``m_k^{b_0, ..., b_k}(x_1, ..., x_k)`` summed over insertions up to arity ``k_max``.

    ``bs`` has one entry per gap (``len(xs) + 1``); ``None`` or ``{}`` means no
    insertion there.  Returns ``None`` if a needed value is unpopulated.
    """
    k = len(xs)
    if len(bs) != k + 1:
        raise ValueError("need one deformation element per gap")
    gaps = [dict(b or {}) for b in bs]
    for b in gaps:
        _validate_b(alg, b)
    spare = alg.k_max - k
    acc: dict[str, MPoly] = {}
    live = [i for i, b in enumerate(gaps) if any(not c.is_zero() for c in b.values())]
    for total in range(0, max(spare, 0) + 1):
        for counts in _compositions(total, len(live)):
            ls = [0] * (k + 1)
            for i, c in zip(live, counts):
                ls[i] = c
            parts = [list(_expansions(gaps[i], ls[i])) if ls[i] else [((), None)] for i in range(k + 1)]
            for combo in itertools.product(*parts):
                tup: tuple = ()
                coef = None
                for i, (ins, c) in enumerate(combo):
                    tup += ins
                    if i < k:
                        tup += (xs[i],)
                    if c is not None:
                        coef = c if coef is None else coef * c
                outs = alg.op(tup)
                if outs is None:
                    return None
                if not outs:
                    continue
                if coef is None:
                    coef = alg.ring.one()
                _accumulate(acc, outs, coef)
    return {g: c for g, c in acc.items() if not c.is_zero()}


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def deform(alg: AInftyAlgebra, b: Mapping[str, MPoly], arity: int | None = None) -> AInftyAlgebra:
    """The curved algebra ``m^b`` with the same ``b`` in every gap.

    Tables are built for tuples up to ``arity`` (default ``k_max - 1``) whose
    expansion is fully populated; others are left out.
    """
    _validate_b(alg, b)
    if not any(not c.is_zero() for c in b.values()):
        return alg
    top = alg.k_max - 1 if arity is None else arity
    tables: Table = {}
    for n in range(0, top + 1):
        for tup in itertools.product(alg.generators, repeat=n):
            if alg.unit is not None and alg.unit in tup:
                continue
            val = deformed_op(alg, tup, [b] * (n + 1))
            if val is not None:
                tables[tup] = val
    return AInftyAlgebra(
        generators=alg.generators,
        degrees=dict(alg.degrees),
        ring=alg.ring,
        tables=tables,
        unit=alg.unit,
        k_max=top,
        cutoff=alg.cutoff,
        domains=(),
        complete=False,
        note=f"deformed by {sorted(b)}; truncated at arity {alg.k_max}",
    )


def m1_b0(alg: AInftyAlgebra, b: Mapping[str, MPoly], v: str) -> dict[str, MPoly] | None:
    """The Floer differential ``m_1^{b,0}(v)``."""
    return deformed_op(alg, (v,), [b, None])


# -- weak Maurer-Cartan ----------------------------------------------------------


class WeakMCError(ValueError):
    def __init__(self, msg: str, witness: dict):
        super().__init__(msg)
        self.witness = witness


def m_of_exp_b(alg: AInftyAlgebra, b: Mapping[str, MPoly]) -> dict[str, MPoly]:
    """``sum_k m_k(b, ..., b)`` over the populated arities."""
    val = deformed_op(alg, (), [b])
    if val is None:
        raise ValueError("m(e^b) needs table entries outside the populated domain")
    return val


def weak_mc_check(alg: AInftyAlgebra, b: Mapping[str, MPoly]) -> MPoly:
    """Return ``W(b)`` if ``m(e^b)`` is a multiple of the unit; raise otherwise."""
    if alg.unit is None:
        raise ValueError("weak Maurer-Cartan check needs a unit")
    val = m_of_exp_b(alg, b)
    bad = {g: c for g, c in val.items() if g != alg.unit and not c.is_zero()}
    if bad:
        g = min(bad)
        raise WeakMCError(f"m(e^b) has a nonzero {g} component from energy {_energy(bad[g])}", bad)
    return val.get(alg.unit, alg.zero())


def immersed_output_contributions(alg: AInftyAlgebra, b: Mapping[str, MPoly]) -> dict[str, MPoly]:
    """Non-unit components of ``m(e^b)`` before any cancellation check (all zero when weakly unobstructed)."""
    val = m_of_exp_b(alg, b)
    return {g: c for g, c in val.items() if g != alg.unit}


# -- bimodule and functor checks ------------------------------------------------


def curved_square_check(alg: AInftyAlgebra, b: Mapping[str, MPoly], potential: MPoly, vs=None) -> RelationReport:
    """``m_1^{b,0} m_1^{b,0}(v) = -W v`` for every ``v`` whose terms are populated."""
    vs = alg.generators if vs is None else vs
    checked = skipped = 0
    violations = []
    for v in vs:
        first = m1_b0(alg, b, v)
        if first is None:
            skipped += 1
            continue
        acc: dict[str, MPoly] = {v: potential}
        ok = True
        for g, c in first.items():
            second = m1_b0(alg, b, g)
            if second is None:
                ok = False
                break
            _accumulate(acc, second, c)
        if not ok:
            skipped += 1
            continue
        checked += 1
        for g, c in sorted(acc.items()):
            if not c.is_zero():
                violations.append(Violation((v,), g, _energy(c), c))
    return RelationReport(not violations, checked, skipped, violations)


def functor_image(alg: AInftyAlgebra, b, xs: tuple, y: str) -> dict[str, MPoly] | None:
    """``F_k(x_1, ..., x_k)(y) = (-1)^{|y|' |x|'} m_{k+1}^{b,0,...,0}(y, x_1, ..., x_k)``."""
    val = deformed_op(alg, (y, *xs), [b] + [None] * (len(xs) + 1))
    if val is None:
        return None
    sx = sum(alg.shifted(g) for g in xs)
    if (alg.shifted(y) * sx) % 2:
        return {g: -c for g, c in val.items()}
    return val


def _apply(alg, fn, vec: Mapping[str, MPoly]) -> dict[str, MPoly] | None:
    out: dict[str, MPoly] = {}
    for g, c in vec.items():
        img = fn(g)
        if img is None:
            return None
        _accumulate(out, img, c)
    return out


def functor_check(alg: AInftyAlgebra, b, xs_list: Iterable[tuple], ys=None) -> RelationReport:
    """Functor equations of arity one and two on the populated part.

    For ``x`` of arity one this is the chain-map identity for an ``m_1``-closed
    ``x``.  For ``(x_1, x_2)`` the three groups of terms are added and must
    cancel, as in the reduction to the relation on ``(y, x_1, x_2)``.
    """
    ys = alg.generators if ys is None else ys
    checked = skipped = 0
    violations = []

    def m1(v):
        return m1_b0(alg, b, v)

    for xs in xs_list:
        xs = tuple(xs)
        for y in ys:
            total = _functor_residual(alg, b, xs, y, m1)
            if total is None:
                skipped += 1
                continue
            checked += 1
            for g, c in sorted(total.items()):
                if not c.is_zero():
                    violations.append(Violation((y, *xs), g, _energy(c), c))
    return RelationReport(not violations, checked, skipped, violations)


def _functor_residual(alg, b, xs, y, m1):
    acc: dict[str, MPoly] = {}
    k = len(xs)
    if k not in (1, 2):
        raise ValueError("functor equations are checked at arity one and two")
    sx = sum(alg.shifted(g) for g in xs) % 2

    def F(args, v):
        return functor_image(alg, b, tuple(args), v)

    # terms with the undeformed operations applied to the x's
    for n2 in range(1, k + 1):
        for i in range(0, k - n2 + 1):
            inner = alg.op(xs[i : i + n2])
            if inner is None:
                return None
            eps = sum(alg.shifted(g) for g in xs[:i]) % 2
            for g, c in inner.items():
                args = xs[:i] + (g,) + xs[i + n2 :]
                img = F(args, y)
                if img is None:
                    return None
                _accumulate(acc, img, -c if eps else c)
    # composition term for arity two
    if k == 2:
        first = F(xs[:1], y)
        if first is None:
            return None
        second = _apply(alg, lambda v: F(xs[1:], v), first)
        if second is None:
            return None
        sign = (alg.degrees[xs[0]] * (alg.degrees[xs[1]] + 1)) % 2
        _accumulate(acc, second, -alg.ring.one() if sign else alg.ring.one())
    # differential terms
    img = F(xs, y)
    if img is None:
        return None
    d_img = _apply(alg, m1, img)
    if d_img is None:
        return None
    _accumulate(acc, d_img, alg.ring.one())
    dy = m1(y)
    if dy is None:
        return None
    back = _apply(alg, lambda v: F(xs, v), dy)
    if back is None:
        return None
    _accumulate(acc, back, -alg.ring.one() if sx else alg.ring.one())
    return acc


def psi_phi1(alg: AInftyAlgebra, b, x: str = "p") -> dict[str, MPoly]:
    """``F_1(x)`` evaluated on the unit with ``x = y = z = 0``."""
    val = functor_image(alg, b, (x,), alg.unit)
    if val is None:
        raise ValueError(f"F_1({x}) on the unit is not populated")
    zero = {v: 0 for v in alg.ring.variables}
    return {g: c.substitute(zero) for g, c in val.items() if not c.substitute(zero).is_zero()}


# -- fixtures -------------------------------------------------------------------


def dg_fixture() -> AInftyAlgebra:
    """``Lambda[xi] (x) k[t]/t^2`` with ``d xi = t``, turned into an A-infinity algebra.

    ``m_1(x) = (-1)^{|x|} d x`` and ``m_2(x_1, x_2) = (-1)^{|x_1|(|x_2|+1)} x_2 x_1``.
    """
    ring = series_ring(())
    gens = ("1", "xi", "t", "xit")
    degrees = {"1": 0, "xi": 1, "t": 2, "xit": 3}
    # basis monomials as (xi power, t power)
    shape = {"1": (0, 0), "xi": (1, 0), "t": (0, 1), "xit": (1, 1)}
    name = {v: k for k, v in shape.items()}
    one = ring.one()

    def product(a: str, b: str):
        (i1, j1), (i2, j2) = shape[a], shape[b]
        if i1 + i2 > 1 or j1 + j2 > 1:
            return None
        # t is even, so moving it past xi is free
        return name[(i1 + i2, j1 + j2)]

    def d(a: str):
        return {"xi": "t", "xit": None}.get(a)

    tables: Table = {}
    for a in gens:
        out = d(a)
        sign = -1 if degrees[a] % 2 else 1
        tables[(a,)] = {out: one.scale(sign)} if out else {}
    for a, b in itertools.product(gens, repeat=2):
        prod = product(b, a)
        sign = -1 if (degrees[a] * (degrees[b] + 1)) % 2 else 1
        tables[(a, b)] = {prod: one.scale(sign)} if prod else {}
    return AInftyAlgebra(
        generators=gens,
        degrees=degrees,
        ring=ring,
        tables=tables,
        unit="1",
        k_max=3,
        complete=True,
        note="dg algebra; m_0 and m_k for k >= 3 vanish",
    )


@dataclass(frozen=True)
class PolygonRecord:
    """A polygon with odd input corners, as the table builder needs it.

    ``sides[j]`` ends at corner ``word[j]``; ``agrees[j]`` says whether the
    boundary runs with the curve there and ``marks[j]`` maps unit-type outputs
    to the number of their markers on that side.
    """

    word: tuple[str, ...]
    agrees: tuple[bool, ...]
    marks: tuple[Mapping[str, Fraction], ...]
    spin: int
    area: Fraction
    r: int = 1
    holonomy: int = 1


def _side_sign(rec: PolygonRecord, skip: set[int]) -> int:
    n = len(rec.word)
    against = sum(1 for j in range(n) if j not in skip and not rec.agrees[j])
    return -1 if (against + rec.spin) % 2 else 1


def polygon_entries(rec: PolygonRecord) -> list[tuple[tuple, str, Fraction, Fraction]]:
    """``(inputs, output, coefficient, area)`` for every output position of ``rec``.

    An immersed output at corner ``j`` leaves the others as inputs starting at
    ``j+1``; the side from the first input to the second does not count
    towards the sign.  A marker output on side ``j`` takes all corners from
    ``j`` on as inputs; the sides on either side of the first input do not
    count.
    """
    n = len(rec.word)
    out = []
    for j in range(n):
        inputs = tuple(rec.word[(j + 1 + t) % n] for t in range(n - 1))
        sign = _side_sign(rec, {(j + 2) % n} if n > 1 else set())
        out.append((inputs, _BAR.get(rec.word[j], rec.word[j] + "b"), Fraction(sign * rec.holonomy, rec.r), rec.area))
    for j in range(n):
        if not rec.marks[j]:
            continue
        inputs = tuple(rec.word[(j + t) % n] for t in range(n))
        sign = _side_sign(rec, {j, (j + 1) % n})
        for g, count in rec.marks[j].items():
            if count:
                out.append((inputs, g, Fraction(sign * rec.holonomy, rec.r) * count, rec.area))
    return out


def _tables_from_records(records: Iterable[PolygonRecord], ring: PolyRing, precision, k_max: int) -> Table:
    acc: dict[tuple, dict[str, dict[Fraction, Fraction]]] = defaultdict(lambda: defaultdict(lambda: defaultdict(Fraction)))
    for rec in records:
        for inputs, g, c, area in polygon_entries(rec):
            if len(inputs) <= k_max:
                acc[inputs][g][area] += c
    tables: Table = {}
    for inputs, row in acc.items():
        out = {}
        for g, terms in row.items():
            s = QSeries(dict(terms), precision)
            out[g] = ring.constant(s)
        tables[inputs] = {g: c for g, c in out.items() if not c.is_zero()}
    return tables


def record_from_polygon(p: Polygon) -> PolygonRecord:
    names = ("X", "Y", "Z")
    return PolygonRecord(
        word=tuple(names[k] for k in p.word),
        agrees=tuple(side[3] for side in p.sides),
        marks=tuple({"e": side[4]} if side[4] else {} for side in p.sides),
        spin=p.s,
        area=p.area,
        r=p.r,
    )


def polygon_fixture(
    signature=(3, 3, 3),
    cutoff=30,
    k_max: int = 5,
    weights: RegionWeights | None = None,
    polys: list[Polygon] | None = None,
) -> AInftyAlgebra:
    """The Seidel curve's algebra restricted to odd immersed inputs plus the unit.

    Entries with only ``X, Y, Z`` as inputs come from the enumerated polygons,
    with outputs at an immersed corner or at an ``e`` marker.  ``m_1`` is zero
    on every generator.  Entries mixing barred generators or ``p`` with other
    inputs are left unpopulated.
    """
    weights = weights or RegionWeights()
    cutoff = Fraction(cutoff)
    if polys is None:
        graph = MedialGraph(Tessellation(*signature))
        polys = enumerate_polygons(graph, weights, cutoff)
    prec = _precision_for(cutoff, weights)
    ring = series_ring()
    tables = _tables_from_records((record_from_polygon(p) for p in polys), ring, prec, k_max)
    for g in FIXTURE_GENERATORS:
        tables.setdefault((g,), {})
    if signature_kind(*signature) != "spherical":
        # no disc without corners; the spherical constant term is not counted
        tables.setdefault((), {})
    return AInftyAlgebra(
        generators=FIXTURE_GENERATORS,
        degrees=dict(zip(FIXTURE_GENERATORS, FIXTURE_DEGREES)),
        ring=ring,
        tables=tables,
        unit="e",
        k_max=k_max,
        cutoff=cutoff,
        domains=(frozenset({"X", "Y", "Z"}),),
        note=(
            "populated: tuples of X, Y, Z (polygon counts), tuples containing e (strict unit), "
            "m_1 on all generators (zero), m_0 (zero); other mixed tuples are not populated"
        ),
    )


def standard_b(alg: AInftyAlgebra, names=("X", "Y", "Z")) -> dict[str, MPoly]:
    ring = alg.ring
    return {g: ring.gen(v) for g, v in zip(names, ring.variables)}


def p1_algebra(sign: int = 1, precision=9) -> AInftyAlgebra:
    """Two transverse equators in the sphere (total area 8) with holonomy ``sign``.

    Generators are the unit ``e = e_1 + e_2``, ``f = e_1 - e_2``, the odd
    immersed ``X`` (north pole) and ``Y`` (south pole) and their even partners.
    Two lunes with odd corners at both poles carry all polygon entries; each
    circle also bounds two discs of area four, giving ``m_0 = sign q^4 e``.
    """
    if sign not in (1, -1):
        raise ValueError("holonomy sign must be +1 or -1")
    ring = series_ring(("x", "y"))
    half = Fraction(1, 2)
    e1 = {"e": half, "f": half}
    e2 = {"e": half, "f": -half}
    lune = PolygonRecord(("X", "Y"), (True, True), ({}, e1), 0, Fraction(2))
    lune_op = PolygonRecord(("X", "Y"), (False, False), (e2, {}), 0, Fraction(2))
    tables = _tables_from_records((lune, lune_op), ring, precision, 5)
    gens = ("e", "f", "X", "Y", "Xb", "Yb")
    degrees = {"e": 0, "f": 0, "X": 1, "Y": 1, "Xb": 0, "Yb": 0}
    for g in gens:
        tables.setdefault((g,), {})
    tables[()] = {"e": ring.constant(QSeries({4: sign}, precision))}
    return AInftyAlgebra(
        generators=gens,
        degrees=degrees,
        ring=ring,
        tables=tables,
        unit="e",
        k_max=5,
        cutoff=Fraction(precision - 1),
        domains=(frozenset({"X", "Y"}),),
        note="populated: tuples of X, Y, tuples containing e, m_1 on all generators, m_0",
    )


def potential_poly(signature=(3, 3, 3), cutoff=30, weights=None) -> MPoly:
    pot, _ = compute_potential(signature, cutoff, weights)
    return pot.as_poly(include_lambda=True)
