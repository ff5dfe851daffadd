"""Truncated Laurent series in one formal area variable.

Coefficients and exponents are exact rationals.  Every value carries its own
precision ``O``: coefficients at exponents ``>= O`` are unknown.  A precision
of ``None`` marks an exact (finitely supported) series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

import gmpy2

Rational = Union[int, Fraction]
Precision = Union[Fraction, None]

__all__ = [
    "QSeries",
    "EtaQuotientSpec",
    "add",
    "mul",
    "invert",
    "nth_root",
    "eta_quotient",
    "jacobi_cube",
    "substitute_power",
    "compositional_inverse",
    "agree",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    raise TypeError(f"not an exact rational: {x!r}")


def _pmin(*ps: Precision) -> Precision:
    finite = [p for p in ps if p is not None]
    return min(finite) if finite else None


def _padd(p: Precision, v) -> Precision:
    if p is None or v is None:
        return None
    return p + v


class QSeries:
    """Immutable truncated Laurent series ``sum c_e q^e + O(q^precision)``."""

    __slots__ = ("variable", "_terms", "_exps", "precision")

    def __init__(
        self,
        terms: Mapping | Iterable | None = None,
        precision=None,
        variable: str = "q",
    ):
        prec = None if precision is None else _frac(precision)
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: dict[Fraction, Fraction] = {}
        for e, c in items:
            e = _frac(e)
            c = _frac(c)
            if prec is not None and e >= prec:
                continue
            acc[e] = acc.get(e, 0) + c
        clean = {e: c for e, c in acc.items() if c != 0}
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_exps", tuple(sorted(clean)))
        object.__setattr__(self, "precision", prec)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def _raw(cls, terms: dict, precision: Precision, variable: str) -> "QSeries":
        obj = object.__new__(cls)
        object.__setattr__(obj, "variable", variable)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_exps", tuple(sorted(terms)))
        object.__setattr__(obj, "precision", precision)
        return obj

    @classmethod
    def monomial(cls, coeff=1, exponent=0, precision=None, variable: str = "q") -> "QSeries":
        return cls({exponent: coeff}, precision, variable)

    @classmethod
    def constant(cls, c=1, precision=None, variable: str = "q") -> "QSeries":
        return cls({0: c}, precision, variable)

    @classmethod
    def zero(cls, precision=None, variable: str = "q") -> "QSeries":
        return cls({}, precision, variable)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_exact(self) -> bool:
        return self.precision is None

    def valuation(self) -> Fraction:
        if not self._terms:
            raise ValueError("zero series has no valuation")
        return self._exps[0]

    def leading_term(self) -> tuple[Fraction, Fraction]:
        e = self.valuation()
        return e, self._terms[e]

    def coeff(self, exponent) -> Fraction:
        e = _frac(exponent)
        if self.precision is not None and e >= self.precision:
            raise ValueError(f"coefficient at {e} is beyond precision {self.precision}")
        return self._terms.get(e, Fraction(0))

    def items(self) -> Iterator[tuple[Fraction, Fraction]]:
        for e in self._exps:
            yield e, self._terms[e]

    def exponents(self) -> tuple[Fraction, ...]:
        return self._exps

    def __len__(self) -> int:
        return len(self._terms)

    def _mul_val(self):
        # valuation used by the product precision rule
        if self._terms:
            return self._exps[0]
        return self.precision  # None means exact zero

    def truncate(self, precision) -> "QSeries":
        """Forget everything at exponents ``>= precision`` (never raises precision)."""
        p = _pmin(self.precision, _frac(precision))
        return QSeries._raw({e: c for e, c in self._terms.items() if e < p}, p, self.variable)

    def with_variable(self, variable: str) -> "QSeries":
        return QSeries._raw(dict(self._terms), self.precision, variable)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            if other.variable != self.variable:
                raise ValueError(f"variable mismatch: {self.variable!r} vs {other.variable!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.constant(other, None, self.variable)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = _pmin(self.precision, other.precision)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        if prec is not None:
            acc = {e: c for e, c in acc.items() if c != 0 and e < prec}
        else:
            acc = {e: c for e, c in acc.items() if c != 0}
        return QSeries._raw(acc, prec, self.variable)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries._raw({e: -c for e, c in self._terms.items()}, self.precision, self.variable)

    def __pos__(self) -> "QSeries":
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "QSeries":
        c = _frac(c)
        if c == 0:
            return QSeries._raw({}, self.precision, self.variable)
        return QSeries._raw({e: c * v for e, v in self._terms.items()}, self.precision, self.variable)

    def shift(self, exponent) -> "QSeries":
        """Multiply by the exact monomial ``q^exponent``."""
        k = _frac(exponent)
        return QSeries._raw(
            {e + k: c for e, c in self._terms.items()}, _padd(self.precision, k), self.variable
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        va, vb = self._mul_val(), other._mul_val()
        if self.precision is None and va is None or other.precision is None and vb is None:
            # an exact zero factor
            return QSeries._raw({}, None, self.variable)
        prec = _pmin(_padd(self.precision, vb), _padd(other.precision, va))
        a_items = [(e, self._terms[e]) for e in self._exps]
        b_items = [(e, other._terms[e]) for e in other._exps]
        acc: dict[Fraction, Fraction] = {}
        get = acc.get
        for ea, ca in a_items:
            if prec is None:
                for eb, cb in b_items:
                    e = ea + eb
                    acc[e] = get(e, 0) + ca * cb
            else:
                bound = prec - ea
                for eb, cb in b_items:
                    if eb >= bound:
                        break
                    e = ea + eb
                    acc[e] = get(e, 0) + ca * cb
        return QSeries._raw({e: c for e, c in acc.items() if c != 0}, prec, self.variable)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / _frac(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.invert()

    def __pow__(self, n: int) -> "QSeries":
        if not isinstance(n, int):
            raise TypeError("use nth_root for fractional powers")
        if n < 0:
            return self.invert() ** (-n)
        result = QSeries.constant(1, None, self.variable)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, None, self.variable)
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.variable == other.variable
            and self.precision == other.precision
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.variable, self.precision, tuple(self.items())))

    def __repr__(self) -> str:
        return f"QSeries({self})"

    def __str__(self) -> str:
        parts = []
        v = self.variable
        for e, c in self.items():
            if e == 0:
                mono = str(c)
            else:
                pw = v if e == 1 else f"{v}^{e}" if e.denominator == 1 and e > 0 else f"{v}^({e})"
                mono = pw if c == 1 else f"-{pw}" if c == -1 else f"{c}*{pw}"
            parts.append(mono)
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self.precision is not None:
            body += f" + O({v}^{self.precision})"
        return body

    # -- dense helpers ----------------------------------------------------

    def _grid(self) -> tuple[Fraction, int, list[Fraction], int]:
        """Dense view ``(v, D, coeffs, n)``: exponent ``v + k/D`` at index ``k``.

        ``n`` is the number of known slots from the valuation up to precision.
        """
        v = self.valuation()
        if self.precision is None:
            raise ValueError("operation needs a finite precision")
        den = 1
        for e in self._exps:
            den = math.lcm(den, (e - v).denominator)
        span = (self.precision - v) * den
        n = math.ceil(span)
        coeffs = [Fraction(0)] * n
        for e, c in self._terms.items():
            coeffs[int((e - v) * den)] = c
        return v, den, coeffs, n

    @staticmethod
    def _from_grid(v, den, coeffs, precision, variable) -> "QSeries":
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = v + Fraction(k, den)
                if precision is None or e < precision:
                    terms[e] = c
        return QSeries._raw(terms, precision, variable)

    def _unit_power(self, alpha: Fraction) -> tuple[list[Fraction], int]:
        """``(1 + u)^alpha`` where ``self = c q^v (1+u)``; returns dense coeffs and scale."""
        v, den, f, n = self._grid()
        c0 = f[0]
        f = [x / c0 for x in f]
        nz = [(j, f[j]) for j in range(1, n) if f[j]]
        g = [Fraction(0)] * n
        if n:
            g[0] = Fraction(1)
        for k in range(1, n):
            s = Fraction(0)
            for j, fj in nz:
                if j > k:
                    break
                s += ((alpha + 1) * j - k) * fj * g[k - j]
            g[k] = s / k
        return g, den

    def invert(self) -> "QSeries":
        if not self._terms:
            raise ZeroDivisionError("series is zero to its precision")
        v, c = self.leading_term()
        if len(self._terms) == 1 and self.precision is None:
            return QSeries._raw({-v: 1 / c}, None, self.variable)
        v_, den, f, n = self._grid()
        g = [Fraction(0)] * n
        nz = [(j, f[j]) for j in range(1, n) if f[j]]
        inv_c = 1 / c
        if n:
            g[0] = inv_c
        for k in range(1, n):
            s = Fraction(0)
            for j, fj in nz:
                if j > k:
                    break
                s += fj * g[k - j]
            g[k] = -s * inv_c
        prec = self.precision - 2 * v
        return QSeries._from_grid(-v, den, g, prec, self.variable)

    def nth_root(self, n: int) -> "QSeries":
        if not isinstance(n, int) or n < 1:
            raise ValueError("root index must be a positive integer")
        if not self._terms:
            raise ValueError("cannot take a root of a series that is zero to its precision")
        v, c = self.leading_term()
        if v.denominator != 1 or v.numerator % n != 0:
            raise ValueError(f"leading exponent {v} is not divisible by {n}")
        ve = v / n
        root_c = _rational_root(c, n)
        if len(self._terms) == 1 and self.precision is None:
            return QSeries._raw({ve: root_c}, None, self.variable)
        g, den = self._unit_power(Fraction(1, n))
        g = [root_c * x for x in g]
        prec = self.precision - v + ve
        return QSeries._from_grid(ve, den, g, prec, self.variable)

    def substitute_power(self, m) -> "QSeries":
        m = _frac(m)
        if m <= 0:
            raise ValueError("substitution exponent must be positive")
        return QSeries._raw(
            {e * m: c for e, c in self._terms.items()},
            None if self.precision is None else self.precision * m,
            self.variable,
        )

    def compose(self, inner: "QSeries") -> "QSeries":
        """``self(inner(t))`` for integral exponents and ``inner`` of valuation >= 1."""
        if any(e.denominator != 1 for e in self._exps):
            raise ValueError("composition needs integral exponents")
        if not inner._terms or inner.valuation() < 1:
            raise ValueError("inner series must have positive valuation")
        vi = inner.valuation()
        result = QSeries.zero(None, inner.variable)
        if self.precision is not None:
            result = result.truncate(self.precision * vi)
        if not self._terms:
            return result
        lo, hi = int(self._exps[0]), int(self._exps[-1])
        pos = QSeries.constant(1, None, inner.variable)
        powers = {0: pos}
        for k in range(1, max(hi, 0) + 1):
            pos = pos * inner
            powers[k] = pos
        if lo < 0:
            inv = inner.invert()
            neg = QSeries.constant(1, None, inner.variable)
            for k in range(1, -lo + 1):
                neg = neg * inv
                powers[-k] = neg
        for e, c in self.items():
            result = result + powers[int(e)].scale(c)
        return result

    def compositional_inverse(self, variable: str | None = None) -> "QSeries":
        """Series inverse under composition.

        For valuation ``1`` returns ``b`` with ``self(b(t)) = t``.  For valuation
        ``-1`` the inverse is expanded about infinity: ``b`` is a series in
        ``t = 1/self`` with ``self(b(t)) = 1/t``.
        """
        if not self._terms:
            raise ValueError("zero series has no compositional inverse")
        if any(e.denominator != 1 for e in self._exps):
            raise ValueError("compositional inverse needs integral exponents")
        v = self.valuation()
        var = variable or self.variable
        if v == -1:
            return self.invert().compositional_inverse(var)
        if v != 1:
            raise ValueError(f"valuation must be +1 or -1, got {v}")
        if self.precision is None:
            raise ValueError("compositional inverse needs a finite precision")
        p = self.precision
        n_max = math.ceil(p) - 1
        # Lagrange: [t^n] b = (1/n) [q^(n-1)] (q/a)^n
        h = self.shift(-1).invert()
        terms = {}
        hp = QSeries.constant(1, None, self.variable)
        for n in range(1, n_max + 1):
            hp = (hp * h).truncate(n_max)
            c = hp.coeff(n - 1) / n
            if c:
                terms[Fraction(n)] = c
        return QSeries._raw(terms, Fraction(n_max + 1) if n_max + 1 <= p else p, var)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        prec = self.precision
        return {
            "variable": self.variable,
            "precision": None if prec is None else [prec.numerator, prec.denominator],
            "terms": [[[e.numerator, e.denominator], str(c)] for e, c in self.items()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "QSeries":
        prec = data.get("precision")
        return cls(
            [(Fraction(int(e[0]), int(e[1])), Fraction(c)) for e, c in data["terms"]],
            None if prec is None else Fraction(int(prec[0]), int(prec[1])),
            data.get("variable", "q"),
        )


def _rational_root(c: Fraction, n: int) -> Fraction:
    sign = 1
    if c < 0:
        if n % 2 == 0:
            raise ValueError(f"{c} has no real {n}-th root")
        sign, c = -1, -c
    num, ok_n = gmpy2.iroot(c.numerator, n)
    den, ok_d = gmpy2.iroot(c.denominator, n)
    if not (ok_n and ok_d):
        raise ValueError(f"{c} has no rational {n}-th root")
    return sign * Fraction(int(num), int(den))


@dataclass(frozen=True)
class EtaQuotientSpec:
    """``q^prefactor * prod_m prod_k (1 - q^(m k))^e`` in canonical form."""

    factors: tuple[tuple[int, int], ...]
    prefactor: Fraction = Fraction(0)

    def __init__(self, factors: Iterable[tuple[int, int]], prefactor=0):
        merged: dict[int, int] = {}
        for m, e in factors:
            if not isinstance(m, int) or m <= 0:
                raise ValueError(f"scale must be a positive integer, got {m!r}")
            merged[m] = merged.get(m, 0) + int(e)
        object.__setattr__(
            self, "factors", tuple(sorted((m, e) for m, e in merged.items() if e != 0))
        )
        object.__setattr__(self, "prefactor", _frac(prefactor))


def eta_quotient(spec: EtaQuotientSpec, order, variable: str = "q") -> QSeries:
    order = _frac(order)
    shift = spec.prefactor
    n = max(0, math.ceil(order - shift))
    coeffs = [0] * n
    if n:
        coeffs[0] = 1
    for m, e in spec.factors:
        for step in range(m, n, m):
            for _ in range(abs(e)):
                if e > 0:
                    for i in range(n - 1, step - 1, -1):
                        coeffs[i] -= coeffs[i - step]
                else:
                    for i in range(step, n):
                        coeffs[i] += coeffs[i - step]
    terms = {shift + k: Fraction(c) for k, c in enumerate(coeffs) if c}
    return QSeries(terms, order, variable)


def jacobi_cube(order, variable: str = "q") -> QSeries:
    order = _frac(order)
    terms = {}
    k = 0
    while Fraction(k * (k + 1), 2) < order:
        terms[Fraction(k * (k + 1), 2)] = Fraction((-1) ** k * (2 * k + 1))
        k += 1
    return QSeries(terms, order, variable)


def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def invert(a: QSeries) -> QSeries:
    return a.invert()


def nth_root(a: QSeries, n: int) -> QSeries:
    return a.nth_root(n)


def substitute_power(a: QSeries, m) -> QSeries:
    return a.substitute_power(m)


def compositional_inverse(a: QSeries, variable: str | None = None) -> QSeries:
    return a.compositional_inverse(variable)


def agree(a: QSeries, b: QSeries) -> tuple[bool, Precision]:
    """Compare up to the smaller precision; returns ``(equal, bound)``."""
    if a.variable != b.variable:
        raise ValueError("variable mismatch")
    bound = _pmin(a.precision, b.precision)
    diff = a - b
    if bound is not None:
        diff = diff.truncate(bound)
    return diff.is_zero(), bound
