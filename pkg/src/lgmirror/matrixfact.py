"""Matrix factorizations: constructors, the square law, and symbolic relation checks."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .enumerate import FloerData, Potential
from .polyring import QQ, MPoly, PolyRing, SeriesRing
from .qseries import QSeries

SEIDEL_BASIS = ("p", "X", "Y", "Z", "e", "Xb", "Yb", "Zb")
SEIDEL_PARITY = (1, 1, 1, 1, 0, 0, 0, 0)


def _is_zero(p: MPoly) -> bool:
    return all(p.ring.coeffs.is_zero(c) for _, c in p.items())


def mat_mul(a: Sequence[Sequence[MPoly]], b: Sequence[Sequence[MPoly]], ring: PolyRing):
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = ring.zero()
            for t in range(m):
                if not a[i][t].is_zero() and not b[t][j].is_zero():
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


@dataclass
class MatrixFactorization:
    """An odd operator ``d`` on a free Z/2-graded module with ``d^2 = target * Id``."""

    ring: PolyRing
    entries: list[list[MPoly]]
    parity: tuple[int, ...]
    target: MPoly
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries) or len(self.parity) != n:
            raise ValueError("entries must form a square matrix matching the parity list")
        if not self.labels:
            self.labels = tuple(str(i) for i in range(n))
        for i in range(n):
            for j in range(n):
                if self.parity[i] == self.parity[j] and not self.entries[i][j].is_zero():
                    raise ValueError(f"entry ({self.labels[i]}, {self.labels[j]}) breaks odd placement")

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, row: str, col: str) -> MPoly:
        return self.entries[self.labels.index(row)][self.labels.index(col)]

    def square(self) -> list[list[MPoly]]:
        return mat_mul(self.entries, self.entries, self.ring)

    def to_dict(self) -> dict:
        return {
            "basis": list(self.labels),
            "parity": list(self.parity),
            "target": self.target.to_dict(),
            "entries": [[e.to_dict() for e in row] for row in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict, coeffs=None) -> "MatrixFactorization":
        coeffs = coeffs or SeriesRing()
        target = MPoly.from_dict(data["target"], coeffs)
        entries = [[MPoly.from_dict(e, coeffs) for e in row] for row in data["entries"]]
        return cls(target.ring, entries, tuple(data["parity"]), target, tuple(data["basis"]))


def square_check(m: MatrixFactorization) -> dict:
    """Compare ``m^2`` with ``target * Id`` entry by entry."""
    sq = m.square()
    bad = []
    for i in range(m.size):
        for j in range(m.size):
            expected = m.target if i == j else m.ring.zero()
            residual = sq[i][j] - expected
            if not _is_zero(residual):
                bad.append({"row": m.labels[i], "col": m.labels[j], "residual": str(residual)})
    return {"pass": not bad, "offending": bad}


# -- constructors ---------------------------------------------------------------


def build_seidel_mf(fd: FloerData, W: Potential) -> MatrixFactorization:
    """The 8x8 factorization on ``p, X, Y, Z | e, Xb, Yb, Zb`` read off the Floer differential."""
    if Fraction(fd.cutoff) != Fraction(W.cutoff):
        raise ValueError("Floer data and potential were computed to different cutoffs")
    ring = fd.gamma.ring
    n = len(SEIDEL_BASIS)
    entries = [[ring.zero() for _ in range(n)] for _ in range(n)]
    for j, src in enumerate(SEIDEL_BASIS):
        for dst, coeff in fd.delta_table[src].items():
            entries[SEIDEL_BASIS.index(dst)][j] = coeff
    target = W.as_poly() - W.lam if not W.lam.is_zero() else W.as_poly()
    return MatrixFactorization(ring, entries, SEIDEL_PARITY, target, SEIDEL_BASIS)


def _subset_label(mask: int, n: int) -> str:
    if not mask:
        return "1"
    return "^".join(f"e{i + 1}" for i in range(n) if mask >> i & 1)


def wedge_contraction(xs: Sequence[MPoly], ws: Sequence[MPoly]) -> MatrixFactorization:
    """``sum x_i (e_i ^ .) + w_i (contraction by e_i)`` on the exterior algebra, subsets in binary order."""
    if len(xs) != len(ws):
        raise ValueError("xs and ws must have the same length")
    if not xs:
        raise ValueError("need at least one generator")
    ring = xs[0].ring
    n = len(xs)
    size = 1 << n
    entries = [[ring.zero() for _ in range(size)] for _ in range(size)]
    for mask in range(size):
        for i in range(n):
            below = bin(mask & ((1 << i) - 1)).count("1")
            sign = -1 if below % 2 else 1
            bit = 1 << i
            if mask & bit:
                target = mask ^ bit
                entries[target][mask] = entries[target][mask] + ws[i].scale(sign)
            else:
                target = mask | bit
                entries[target][mask] = entries[target][mask] + xs[i].scale(sign)
    parity = tuple(bin(m).count("1") % 2 for m in range(size))
    total = ring.zero()
    for x, w in zip(xs, ws):
        total = total + x * w
    labels = tuple(_subset_label(m, n) for m in range(size))
    return MatrixFactorization(ring, entries, parity, total, labels)


# exterior basis index -> (Seidel basis name, sign), from Y^Z = Xb, Z^X = Yb, X^Y = Zb, X^Y^Z = p
SEIDEL_EXTERIOR_MAP = {
    0b000: ("e", 1),
    0b001: ("X", 1),
    0b010: ("Y", 1),
    0b100: ("Z", 1),
    0b011: ("Zb", 1),
    0b101: ("Yb", -1),
    0b110: ("Xb", 1),
    0b111: ("p", 1),
}


def seidel_wedge_contraction(fd: FloerData) -> MatrixFactorization:
    ring = fd.gamma.ring
    return wedge_contraction(list(ring.gens()), list(fd.w))


def signed_permutation_equal(a: MatrixFactorization, b: MatrixFactorization, mapping: dict) -> bool:
    """Whether ``b`` is ``a`` after renaming basis element ``i`` of ``a`` to ``sign * mapping[i]``."""
    idx = {i: (b.labels.index(name), sign) for i, (name, sign) in mapping.items()}
    for i in range(a.size):
        for j in range(a.size):
            bi, si = idx[i]
            bj, sj = idx[j]
            if not _is_zero(a.entries[i][j].scale(si * sj) - b.entries[bi][bj]):
                return False
    return True


def p1_fixture(q_area: int = 1) -> tuple[MatrixFactorization, MPoly]:
    """The two-equator factorization ``H, K`` of ``W+ - q^4 = q^2 xy``.

    Returns the factorization in block form (odd ``p1, p2``, even ``q1, q2``)
    together with ``W+ = q^2 xy + q^4``.
    """
    ring = PolyRing(("x", "y"), SeriesRing())
    x, y = ring.gens()
    q = QSeries.monomial(1, q_area)
    zero = ring.zero()
    H = [[(-x).scale(q), zero], [zero, (-y).scale(q)]]  # rows q1, q2; columns p1, p2
    K = [[(-y).scale(q), zero], [zero, (-x).scale(q)]]  # rows p1, p2; columns q1, q2
    entries = [
        [zero, zero, K[0][0], K[0][1]],
        [zero, zero, K[1][0], K[1][1]],
        [H[0][0], H[0][1], zero, zero],
        [H[1][0], H[1][1], zero, zero],
    ]
    q2 = QSeries.monomial(1, 2 * q_area)
    q4 = QSeries.monomial(1, 4 * q_area)
    w_plus = (x * y).scale(q2) + ring.constant(q4)
    target = (x * y).scale(q2)
    mf = MatrixFactorization(ring, entries, (1, 1, 0, 0), target, ("p1", "p2", "q1", "q2"))
    return mf, w_plus


def block_products(mf: MatrixFactorization) -> tuple[list, list]:
    """``(H K, K H)`` for a factorization listed odd basis first."""
    odd = [i for i, p in enumerate(mf.parity) if p]
    even = [i for i, p in enumerate(mf.parity) if not p]
    K = [[mf.entries[i][j] for j in even] for i in odd]
    H = [[mf.entries[i][j] for j in odd] for i in even]
    return mat_mul(H, K, mf.ring), mat_mul(K, H, mf.ring)


def trivial_certificate(mf: MatrixFactorization):
    """Determinant of the constant part of the even-to-odd block, if it is a unit.

    A nonzero value certifies that the factorization is contractible (its
    target is not a critical value); ``None`` means no certificate.
    """
    odd = [i for i, p in enumerate(mf.parity) if p]
    even = [i for i, p in enumerate(mf.parity) if not p]
    if len(odd) != len(even):
        return None
    origin = (0,) * mf.ring.nvars
    block = [[mf.entries[i][j].coeff(origin) for j in even] for i in odd]
    det = _det(block, mf.ring)
    if det is None or mf.ring.coeffs.is_zero(det):
        return None
    return det


def _det(mat, ring):
    n = len(mat)
    co = ring.coeffs
    total = None
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = co.coerce(1)
        for i, j in enumerate(perm):
            c = mat[i][j]
            if c is None:
                term = None
                break
            term = term * c
        if term is None:
            continue
        term = -term if inv % 2 else term
        total = term if total is None else total + term
    return total


# -- morphisms ------------------------------------------------------------------


def morphism_degree(f: Sequence[Sequence[MPoly]], source: MatrixFactorization, target: MatrixFactorization) -> int:
    deg = None
    for i, row in enumerate(f):
        for j, e in enumerate(row):
            if not e.is_zero():
                d = (target.parity[i] + source.parity[j]) % 2
                if deg is None:
                    deg = d
                elif deg != d:
                    raise ValueError("morphism is not homogeneous")
    return deg or 0


def morphism_differential(f, source: MatrixFactorization, target: MatrixFactorization):
    """``d_Q f - (-1)^{deg f} f d_P`` on ``Hom(P, Q)``."""
    if len(f) != target.size or any(len(row) != source.size for row in f):
        raise ValueError("morphism shape does not match source and target")
    deg = morphism_degree(f, source, target)
    left = mat_mul(target.entries, f, target.ring)
    right = mat_mul(f, source.entries, source.ring)
    sign = 1 if deg % 2 else -1
    return [[l + r.scale(sign) for l, r in zip(lr, rr)] for lr, rr in zip(left, right)]


def dg_composition_sign(deg1: int, deg2: int) -> int:
    """Sign in ``x2 o x1 = (-1)^{|x1|(|x2|+1)} m2(x1, x2)``."""
    return -1 if (deg1 * (deg2 + 1)) % 2 else 1


def dg_differential_sign(deg: int) -> int:
    """Sign in ``d(x) = (-1)^{|x|} m1(x)``."""
    return -1 if deg % 2 else 1


# -- long and short diagonals -------------------------------------------------------

_PARAMS = ("phi", "psi", "a1", "a2", "a3")


def _long_ring() -> PolyRing:
    return PolyRing(_PARAMS + ("x", "y", "z"), QQ)


def long_diagonal_matrices(ring: PolyRing | None = None):
    """``(D J, E, D W)`` with ``D = a1 a2 a3`` clearing the denominators of ``beta, gamma``.

    ``beta_i = phi / a_i`` and ``gamma_i = -phi a_i / (a_j a_k)``; ``y`` is the
    sign-flipped coordinate.
    """
    ring = ring or _long_ring()
    phi, psi, a1, a2, a3, x, y, z = ring.gens()
    a = (a1, a2, a3)
    D = a1 * a2 * a3
    # D * beta_i and D * gamma_i
    b = [phi * a2 * a3, phi * a1 * a3, phi * a1 * a2]
    g = [-(phi * a1 * a1), -(phi * a2 * a2), -(phi * a3 * a3)]
    J = [
        [b[0] * x * x + g[0] * y * z, b[2] * z * z + g[2] * x * y, b[1] * y * y + g[1] * z * x],
        [b[1] * z * z + g[1] * x * y, b[0] * y * y + g[0] * z * x, b[2] * x * x + g[2] * y * z],
        [b[2] * y * y + g[2] * z * x, b[1] * x * x + g[1] * y * z, b[0] * z * z + g[0] * x * y],
    ]
    E = [
        [a[0] * x, a[1] * z, a[2] * y],
        [a[2] * z, a[0] * y, a[1] * x],
        [a[1] * y, a[2] * x, a[0] * z],
    ]
    W = phi * (x**3 + y**3 + z**3) - psi * x * y * z
    return J, E, D * W, D


def elliptic_relation(ring: PolyRing | None = None) -> MPoly:
    ring = ring or _long_ring()
    phi, psi, a1, a2, a3, *_ = ring.gens()
    return phi * (a1**3 + a2**3 + a3**3) - psi * a1 * a2 * a3


def long_diagonal_check(specialize: dict | None = None) -> dict:
    """Residuals of ``J E - W Id`` and ``E J - W Id`` modulo the elliptic relation.

    Every entry of ``D (J E - W Id)`` must be an exact multiple of ``R``; the
    cofactors (to be divided by ``D = a1 a2 a3``) are reported.  With
    ``specialize`` the parameters are substituted first and the residual itself
    must vanish.
    """
    ring = _long_ring()
    J, E, DW, D = long_diagonal_matrices(ring)
    R = elliptic_relation(ring)
    report = {"pass": True, "products": {}}
    for name, (A, B) in (("JE", (J, E)), ("EJ", (E, J))):
        prod = mat_mul(A, B, ring)
        rows = []
        for i in range(3):
            row = []
            for j in range(3):
                res = prod[i][j] - (DW if i == j else ring.zero())
                if specialize is not None:
                    res = res.substitute(specialize)
                    ok = res.is_zero()
                    row.append({"residual": str(res), "ok": ok})
                else:
                    try:
                        cof = res.exact_divide(R)
                        row.append({"cofactor": str(cof), "ok": True})
                        ok = True
                    except ArithmeticError:
                        ok = False
                        row.append({"cofactor": None, "ok": False})
                report["pass"] = report["pass"] and ok
            rows.append(row)
        report["products"][name] = rows
    report["denominator"] = str(D)
    return report


_SHORT = ("a1", "a2", "a3", "b1", "b2", "b3", "g1", "g2", "g3", "phi", "psi")


def short_diagonal_matrix(ring: PolyRing | None = None):
    ring = ring or PolyRing(_SHORT + ("x", "y", "z"), QQ)
    a1, a2, a3, b1, b2, b3, g1, g2, g3, phi, psi, x, y, z = ring.gens()
    L1 = a1 * x + a2 * y + a3 * z
    L2 = a3 * x + a2 * y + a1 * z
    Q1 = (b1 * x * x + g1 * y * z) + (b2 * y * y + g2 * z * x) + (b3 * z * z + g3 * x * y)
    Q2 = (b3 * x * x + g3 * y * z) + (b2 * y * y + g2 * z * x) + (b1 * z * z + g1 * x * y)
    zero = ring.zero()
    P = [
        [zero, zero, L1, Q2],
        [zero, zero, -L2, Q1],
        [Q1, -Q2, zero, zero],
        [L2, L1, zero, zero],
    ]
    W = phi * (x**3 - y**3 + z**3) + psi * x * y * z
    return P, W, ring


def short_diagonal_relations() -> list[tuple[str, MPoly]]:
    """Constraints on the parameters equivalent to ``P^2 = W Id``, one per monomial in x, y, z."""
    P, W, ring = short_diagonal_matrix()
    sq = mat_mul(P, P, ring)
    nparams = len(_SHORT)
    relations: dict[tuple, dict] = {}
    for i in range(4):
        for j in range(4):
            res = sq[i][j] - (W if i == j else ring.zero())
            for exp, c in res.items():
                mono = exp[nparams:]
                relations.setdefault(mono, {})
                key = exp[:nparams] + (0, 0, 0)
                # every diagonal entry yields the same polynomial; keep one copy
                relations[mono].setdefault((i, j), {})[key] = c
    out = []
    for mono in sorted(relations, reverse=True):
        per_entry = relations[mono]
        polys = {MPoly(ring, terms) for terms in per_entry.values()}
        for poly in sorted(polys, key=str):
            out.append((ring.key((0,) * nparams + mono), poly))
    return out


def swap_xz_key(key: str) -> str:
    parts = key.split()
    swapped = [p.replace("x", "#").replace("z", "x").replace("#", "z") for p in parts]
    order = {"x": 0, "y": 1, "z": 2}
    swapped.sort(key=lambda p: order[p[0]])
    return " ".join(swapped)
