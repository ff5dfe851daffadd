"""Closed-form q-series for the (3,3,3) potential and its matrix factorization entries.

These are written straight from the theta-type sums and serve as independent
oracles for the enumerated data.
"""

from __future__ import annotations

from fractions import Fraction

from .polyring import MPoly, PolyRing, SeriesRing
from .qseries import QSeries


def _series(terms: dict, precision) -> QSeries:
    return QSeries({e: c for e, c in terms.items() if e < precision}, precision)


def phi(precision) -> QSeries:
    """``sum_{k>=0} (-1)^{k+1} (2k+1) q^{(6k+3)^2}``."""
    terms = {}
    k = 0
    while (6 * k + 3) ** 2 < precision:
        terms[(6 * k + 3) ** 2] = (-1) ** (k + 1) * (2 * k + 1)
        k += 1
    return _series(terms, Fraction(precision))


def _pair_sum(precision, plus, minus) -> dict:
    terms: dict[int, int] = {}
    k = 1
    while (6 * k - 1) ** 2 < precision:
        sign = (-1) ** (k + 1)
        for e, c in (((6 * k + 1) ** 2, plus(k)), ((6 * k - 1) ** 2, -minus(k))):
            if e < precision:
                terms[e] = terms.get(e, 0) + sign * c
        k += 1
    return terms


def psi(precision) -> QSeries:
    """``-q + sum_{k>=1} (-1)^{k+1} ((6k+1) q^{(6k+1)^2} - (6k-1) q^{(6k-1)^2})``."""
    terms = _pair_sum(precision, lambda k: 6 * k + 1, lambda k: 6 * k - 1)
    if 1 < precision:
        terms[1] = terms.get(1, 0) - 1
    return _series(terms, Fraction(precision))


def w333(precision) -> tuple[MPoly, MPoly, MPoly]:
    """The entries ``w_x, w_y, w_z`` of the (3,3,3) Seidel factorization."""
    precision = Fraction(precision)
    ring = PolyRing(("x", "y", "z"), SeriesRing())
    f = phi(precision)
    mixed_x = _pair_sum(precision, lambda k: 2 * k + 1, lambda k: 2 * k - 1)
    if 1 < precision:
        mixed_x[1] = mixed_x.get(1, 0) - 1
    mixed_yz = _pair_sum(precision, lambda k: 2 * k, lambda k: 2 * k)
    wx = MPoly(ring, {(2, 0, 0): f, (0, 1, 1): _series(mixed_x, precision)})
    wy = MPoly(ring, {(0, 2, 0): -f, (1, 0, 1): _series(mixed_yz, precision)})
    wz = MPoly(ring, {(0, 0, 2): f, (1, 1, 0): _series(mixed_yz, precision)})
    return wx, wy, wz


def w333_potential(precision) -> MPoly:
    """``phi (x^3 - y^3 + z^3) + psi xyz``."""
    ring = PolyRing(("x", "y", "z"), SeriesRing())
    f = phi(precision)
    return MPoly(ring, {(3, 0, 0): f, (0, 3, 0): -f, (0, 0, 3): f, (1, 1, 1): psi(precision)})
