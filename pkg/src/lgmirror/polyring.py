"""Sparse multivariate polynomials over a pluggable exact coefficient ring."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .qseries import QSeries

Exp = tuple[int, ...]


class RationalField:
    """Exact rationals."""

    name = "QQ"

    def coerce(self, c) -> Fraction:
        if isinstance(c, Fraction):
            return c
        if isinstance(c, (int, str)):
            return Fraction(c)
        raise TypeError(f"cannot coerce {c!r} into QQ")

    def is_zero(self, c) -> bool:
        return c == 0

    def to_json(self, c):
        return str(c)

    def from_json(self, d):
        return Fraction(d)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "QQ"


class SeriesRing:
    """Truncated q-series coefficients; integers and rationals embed as exact constants."""

    def __init__(self, variable: str = "q"):
        self.variable = variable
        self.name = f"QSeries[{variable}]"

    def coerce(self, c) -> QSeries:
        if isinstance(c, QSeries):
            if c.variable != self.variable:
                raise ValueError("series variable mismatch")
            return c
        if isinstance(c, (int, Fraction)):
            return QSeries.constant(c, None, self.variable)
        raise TypeError(f"cannot coerce {c!r} into {self.name}")

    def is_zero(self, c) -> bool:
        return c.is_zero()

    def to_json(self, c):
        return c.to_dict()

    def from_json(self, d):
        return QSeries.from_dict(d)

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and other.variable == self.variable

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


QQ = RationalField()


class PolyRing:
    """Context: ordered variable names plus a coefficient ring."""

    def __init__(self, variables: Iterable[str], coeffs=QQ):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.coeffs = coeffs
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.nvars = len(self.variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.variables, self.coeffs))

    def __repr__(self):
        return f"PolyRing({', '.join(self.variables)}; {self.coeffs!r})"

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return self.constant(1)

    def constant(self, c) -> "MPoly":
        return MPoly(self, {(0,) * self.nvars: c})

    def gen(self, name: str) -> "MPoly":
        exp = [0] * self.nvars
        exp[self.index[name]] = 1
        return MPoly(self, {tuple(exp): 1})

    def gens(self) -> tuple["MPoly", ...]:
        return tuple(self.gen(v) for v in self.variables)

    def monomial(self, exp: Iterable[int], c=1) -> "MPoly":
        return MPoly(self, {tuple(exp): c})

    def from_key(self, key: str) -> Exp:
        exp = [0] * self.nvars
        if key.strip() == "1":
            return tuple(exp)
        for part in key.split():
            name, _, power = part.partition("^")
            exp[self.index[name]] += int(power) if power else 1
        return tuple(exp)

    def key(self, exp: Exp) -> str:
        parts = [f"{v}^{e}" for v, e in zip(self.variables, exp) if e]
        return " ".join(parts) if parts else "1"


def _grlex(exp: Exp):
    return (sum(exp), exp)


class MPoly:
    """Immutable sparse polynomial; terms map exponent tuples to coefficients."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Exp, object] | None = None):
        co = ring.coeffs
        clean: dict[Exp, object] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != ring.nvars or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent {exp} for {ring}")
            c = co.coerce(c)
            if exp in clean:
                c = clean[exp] + c
            clean[exp] = c
        self.ring = ring
        self._terms = {e: c for e, c in clean.items() if not co.is_zero(c)}

    @classmethod
    def _raw(cls, ring: PolyRing, terms: dict) -> "MPoly":
        obj = object.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        return obj

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Exp, object]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exp, object]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: _grlex(t[0]), reverse=True)

    def coeff(self, exp: Exp | str):
        if isinstance(exp, str):
            exp = self.ring.from_key(exp)
        return self._terms.get(tuple(exp), self.ring.coeffs.coerce(0))

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree(self, var: str) -> int:
        i = self.ring.index[var]
        return max((e[i] for e in self._terms), default=-1)

    def leading(self) -> tuple[Exp, object]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=_grlex)
        return exp, self._terms[exp]

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        try:
            return self.ring.constant(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        co = self.ring.coeffs
        acc = dict(self._terms)
        for e, c in other._terms.items():
            if e in acc:
                s = acc[e] + c
                if co.is_zero(s):
                    del acc[e]
                else:
                    acc[e] = s
            else:
                acc[e] = c
        return MPoly._raw(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.ring, {e: -c for e, c in self._terms.items()})

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

    def scale(self, c) -> "MPoly":
        co = self.ring.coeffs
        c = co.coerce(c)
        acc = {}
        for e, v in self._terms.items():
            p = v * c
            if not co.is_zero(p):
                acc[e] = p
        return MPoly._raw(self.ring, acc)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        co = self.ring.coeffs
        acc: dict[Exp, object] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                p = ca * cb
                if e in acc:
                    acc[e] = acc[e] + p
                else:
                    acc[e] = p
        return MPoly._raw(self.ring, {e: c for e, c in acc.items() if not co.is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            try:
                other = self.ring.constant(other)
            except TypeError:
                return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def map_coeffs(self, f: Callable, ring: PolyRing | None = None) -> "MPoly":
        target = ring or self.ring
        return MPoly(target, {e: f(c) for e, c in self._terms.items()})

    # -- substitution & division -----------------------------------------

    def substitute(self, mapping: Mapping[str, object], ring: PolyRing | None = None) -> "MPoly":
        """Simultaneous substitution ``var -> MPoly or scalar``.

        Unmapped variables go to the same-named generator of the target ring.
        """
        for name in mapping:
            if name not in self.ring.index:
                raise KeyError(f"unknown variable {name!r}")
        target = ring
        if target is None:
            target = next((v.ring for v in mapping.values() if isinstance(v, MPoly)), self.ring)
        images = []
        for name in self.ring.variables:
            if name in mapping:
                img = mapping[name]
                images.append(img if isinstance(img, MPoly) else target.constant(img))
            else:
                if name not in target.index:
                    raise KeyError(f"variable {name!r} missing from target ring")
                images.append(target.gen(name))
        cache: dict[tuple[int, int], MPoly] = {}

        def power(i: int, k: int) -> MPoly:
            if (i, k) not in cache:
                cache[(i, k)] = target.one() if k == 0 else power(i, k - 1) * images[i]
            return cache[(i, k)]

        result = target.zero()
        for exp, c in self._terms.items():
            term = target.constant(c)
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def divmod(self, d: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Multivariate division by a single divisor in graded-lex order."""
        d = self._coerce(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = d.leading()
        inv = Fraction(1) / lead_c if isinstance(lead_c, Fraction) else None
        if inv is None:
            raise TypeError("exact division needs a field of coefficients")
        quot: dict[Exp, object] = {}
        rem: dict[Exp, object] = {}
        work = dict(self._terms)
        d_items = list(d._terms.items())
        while work:
            e = max(work, key=_grlex)
            c = work.pop(e)
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if min(shift) < 0:
                rem[e] = c
                continue
            k = c * inv
            quot[shift] = k
            for de, dc in d_items:
                if de == lead_e:
                    continue
                t = tuple(a + b for a, b in zip(de, shift))
                v = work.get(t, 0) - k * dc
                if v == 0:
                    work.pop(t, None)
                else:
                    work[t] = v
        return MPoly._raw(self.ring, quot), MPoly._raw(self.ring, rem)

    def exact_divide(self, d: "MPoly") -> "MPoly":
        q, r = self.divmod(d)
        if not r.is_zero():
            raise ArithmeticError("polynomial is not divisible by the divisor")
        return q

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        co = self.ring.coeffs
        return {
            "vars": list(self.ring.variables),
            "terms": [{"exp": list(e), "coeff": co.to_json(c)} for e, c in self.items()],
        }

    @classmethod
    def from_dict(cls, data: Mapping, coeffs=QQ) -> "MPoly":
        ring = PolyRing(data["vars"], coeffs)
        return cls(ring, {tuple(t["exp"]): coeffs.from_json(t["coeff"]) for t in data["terms"]})

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = self.ring.key(e).replace(" ", "*")
            parts.append(f"({c})" if mono == "1" else f"({c})*{mono}")
        return " + ".join(parts)


def poly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def substitute_linear(p: MPoly, mapping: Mapping[str, object], ring: PolyRing | None = None) -> MPoly:
    return p.substitute(mapping, ring)


def exact_divide(p: MPoly, d: MPoly) -> MPoly:
    return p.exact_divide(d)
