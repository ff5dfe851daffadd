"""Mirror map for P^1(3,3,3) and its comparison with the enumerated potential.

The mirror map is ``qcheck(q) = -3 a(q)`` with
``a(q) = 1 + (1/3) (eta(q) / eta(q^9))^3``.  The potential is turned into
``x^3 + y^3 + z^3 - (psi/phi) xyz`` by ``y -> -y`` followed by a rescaling of all
three variables, and ``psi/phi`` is compared with the eta-quotient side
``3 + q^-8 prod (1 - q^8k)^3 / (1 - q^72k)^3`` and with ``-qcheck(q^8)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .enumerate import Potential
from .polyring import MPoly, PolyRing, SeriesRing
from .qseries import EtaQuotientSpec, QSeries, eta_quotient

XYZ = ("x", "y", "z")
A_SPEC = EtaQuotientSpec([(1, 3), (9, -3)], prefactor=-1)
RATIO_SPEC = EtaQuotientSpec([(8, 3), (72, -3)], prefactor=-8)


@dataclass
class MirrorMapData:
    a_q: QSeries
    qcheck: QSeries
    psi_over_phi: QSeries
    order: Fraction

    def integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.qcheck.items())


def compute_a(order) -> QSeries:
    """``a(q) = 1 + (1/3) (eta(q)/eta(q^9))^3`` to ``O(q^order)``."""
    return eta_quotient(A_SPEC, order).scale(Fraction(1, 3)) + QSeries.constant(1, order)


def compute_qcheck(order) -> QSeries:
    return compute_a(order).scale(-3)


def ratio_from_eta(order) -> QSeries:
    """``3 + q^-8 prod (1 - q^8k)^3 / (1 - q^72k)^3``."""
    return eta_quotient(RATIO_SPEC, order) + QSeries.constant(3, order)


def ratio_from_qcheck(order) -> QSeries:
    """``-qcheck(q^8)`` to ``O(q^order)``."""
    order = Fraction(order)
    return -compute_qcheck(order / 8).substitute_power(8)


def compute_mirror_map(order) -> MirrorMapData:
    order = Fraction(order)
    a = compute_a(order)
    qc = a.scale(-3)
    return MirrorMapData(a, qc, ratio_from_eta(order), order)


def inverse_mirror_map(qcheck: QSeries) -> QSeries:
    """``q`` as a series in ``t = 1/qcheck``."""
    return qcheck.compositional_inverse("t")


def flip_y(poly: MPoly) -> MPoly:
    y = poly.ring.variables.index("y")
    return MPoly(poly.ring, {e: (-c if e[y] % 2 else c) for e, c in poly.items()})


def rescale(poly: MPoly, factor: QSeries) -> MPoly:
    """Substitute ``v -> factor * v`` for every variable."""
    powers = {0: QSeries.constant(1)}
    out = {}
    for e, c in poly.items():
        d = sum(e)
        if d not in powers:
            powers[d] = factor**d
        out[e] = c * powers[d]
    return MPoly(poly.ring, out)


def _phi_psi(w: Potential) -> tuple[QSeries, QSeries]:
    if tuple(w.signature) != (3, 3, 3):
        raise ValueError("the mirror map comparison is for the (3,3,3) potential")
    return w.series((3, 0, 0)), w.series((1, 1, 1))


def phi_inverse_cube_root(phi: QSeries) -> QSeries:
    """``phi^(-1/3)`` with the real cube root, after pulling out ``-1`` and ``q^9``."""
    c, v = phi.leading_term()[1], phi.valuation()
    if c != -1 or v != 9:
        raise ValueError(f"expected phi to start with -q^9, got {c} q^{v}")
    unit = phi.shift(-9).scale(-1)
    return unit.nth_root(3).invert().shift(-3).scale(-1)


def standard_form(w: Potential) -> MPoly:
    """``x^3 + y^3 + z^3 - (psi/phi) xyz`` obtained from ``w`` by ``y -> -y`` and ``v -> phi^(-1/3) v``."""
    phi, _ = _phi_psi(w)
    return rescale(flip_y(w.as_poly(include_lambda=True)), phi_inverse_cube_root(phi))


def ratio_from_potential(w: Potential) -> QSeries:
    """``psi/phi`` read off the flipped potential: minus its ``xyz`` coefficient over its ``x^3`` one."""
    flipped = flip_y(w.as_poly(include_lambda=True))
    phi = flipped.coeff((3, 0, 0))
    minus_psi = flipped.coeff((1, 1, 1))
    return (-minus_psi) / phi


@dataclass
class Comparison:
    name: str
    passed: bool
    first_mismatch: Fraction | None = None
    left: Fraction | None = None
    right: Fraction | None = None

    def to_dict(self) -> dict:
        out = {"check": self.name, "pass": self.passed}
        if self.first_mismatch is not None:
            out["exponent"] = str(self.first_mismatch)
            out["left"] = str(self.left)
            out["right"] = str(self.right)
        return out


@dataclass
class SyzReport:
    order: Fraction
    comparisons: list[Comparison] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.comparisons)

    def to_dict(self) -> dict:
        return {
            "order": str(self.order),
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.comparisons],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def compare(name: str, a: QSeries, b: QSeries, order) -> Comparison:
    order = Fraction(order)
    for s in (a, b):
        if s.precision is not None and s.precision < order:
            raise ValueError(f"{name}: series known only to O(q^{s.precision}), need O(q^{order})")
    diff = (a - b).truncate(order)
    if diff.is_zero():
        return Comparison(name, True)
    e = diff.valuation()
    return Comparison(name, False, e, a.coeff(e), b.coeff(e))


def check_syz_equals_mirror(w: Potential, order) -> SyzReport:
    """Compare ``psi/phi`` from ``w`` with the eta-quotient side and with ``-qcheck(q^8)``."""
    order = Fraction(order)
    enumerated = ratio_from_potential(w)
    eta_side = ratio_from_eta(order)
    qc_side = ratio_from_qcheck(order)
    rep = SyzReport(order)
    rep.comparisons.append(compare("potential vs eta quotient", enumerated, eta_side, order))
    rep.comparisons.append(compare("potential vs mirror map", enumerated, qc_side, order))
    rep.comparisons.append(compare("eta quotient vs mirror map", eta_side, qc_side, order))
    return rep


def cutoff_for_order(order) -> Fraction:
    """Smallest area cutoff whose potential determines ``psi/phi`` to ``O(q^order)``.

    ``phi`` has valuation 9 and ``psi`` valuation 1, so the ratio loses 9 on
    ``psi`` and 17 on ``phi``.
    """
    return Fraction(order) + 17
