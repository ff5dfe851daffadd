"""Verification reports behind ``lgmirror verify``.

Each check returns a JSON-ready dict with at least ``check`` and ``pass``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import reference
from .cover import RegionWeights
from .enumerate import (
    Potential,
    assemble_potential,
    compute_delta,
    compute_potential,
    compute_theta_gamma,
)
from .polyring import MPoly, PolyRing
from .qseries import EtaQuotientSpec, QSeries, eta_quotient, jacobi_cube


def series_mismatch(got: QSeries, want: QSeries) -> dict | None:
    """``None`` when equal (same precision, same coefficients), else the first difference."""
    if got.precision != want.precision:
        return {"reason": "precision", "got": str(got.precision), "want": str(want.precision)}
    diff = got - want
    if diff.is_zero():
        return None
    e = diff.valuation()
    return {"exponent": str(e), "got": str(got.coeff(e)), "want": str(want.coeff(e))}


def _poly_equal(a: MPoly, b: MPoly) -> bool:
    return all(c.is_zero() for _, c in (a - b).items())


def lattice_potential(cutoff) -> tuple[Potential, list]:
    return compute_potential((3, 3, 3), cutoff, backend="lattice")


# -- series -------------------------------------------------------------------


def check_potential_333(cutoff=200, backend="combinatorial", threads=1) -> dict:
    w, _ = compute_potential((3, 3, 3), cutoff, threads=threads, backend=backend)
    prec = w.lam.precision
    phi, psi = reference.phi(prec), reference.psi(prec)
    expected = {(3, 0, 0): phi, (0, 3, 0): -phi, (0, 0, 3): phi, (1, 1, 1): psi}
    mismatches = {}
    for mono in set(expected) | set(w.monomials):
        got = w.series(mono)
        want = expected.get(mono, QSeries.zero(prec))
        bad = series_mismatch(got, want)
        if bad:
            mismatches[Potential.key(mono)] = bad
    return {
        "check": "potential-333",
        "cutoff": str(Fraction(cutoff)),
        "backend": backend,
        "pass": not mismatches,
        "mismatches": mismatches,
    }


def check_jacobi(order=2000) -> dict:
    lhs = eta_quotient(EtaQuotientSpec([(1, 3)]), order)
    bad = series_mismatch(lhs, jacobi_cube(order))
    return {"check": "jacobi", "order": str(order), "pass": bad is None, "mismatch": bad}


def check_mirror_map(order=500, backend="lattice") -> dict:
    from .mirrormap import check_syz_equals_mirror, cutoff_for_order

    cutoff = cutoff_for_order(order)
    w, _ = compute_potential((3, 3, 3), cutoff, backend=backend)
    rep = check_syz_equals_mirror(w, order).to_dict()
    rep.update({"check": "mirror-map", "cutoff": str(cutoff), "backend": backend})
    return rep


def check_integrality(order=100) -> dict:
    from .mirrormap import compute_mirror_map

    data = compute_mirror_map(order)
    bad = [str(e) for e, c in data.qcheck.items() if c.denominator != 1]
    return {
        "check": "integrality",
        "order": str(order),
        "pass": not bad,
        "leading": str(data.qcheck.truncate(12)),
        "non_integral_exponents": bad,
    }


# -- matrix factorizations ----------------------------------------------------


def seidel_data(cutoff=100, backend="lattice"):
    from .matrixfact import build_seidel_mf

    w, polys = compute_potential((3, 3, 3), cutoff, backend=backend)
    theta, gamma = compute_theta_gamma(polys, cutoff)
    fd = compute_delta(polys, theta, gamma, cutoff, potential=w)
    return w, fd, build_seidel_mf(fd, w)


def check_mf_seidel(cutoff=100, backend="lattice") -> dict:
    from .matrixfact import square_check

    w, fd, mf = seidel_data(cutoff, backend)
    sq = square_check(mf)
    prec = w.lam.precision
    ref = reference.w333(prec)
    w_ok = {name: _poly_equal(got, want) for name, got, want in zip(("w_x", "w_y", "w_z"), fd.w, ref)}
    x, y, z = fd.w[0].ring.gens()
    euler = x * fd.w[0] + y * fd.w[1] + z * fd.w[2]
    euler_ok = _poly_equal(euler, w.as_poly(include_lambda=True))
    return {
        "check": "mf-seidel",
        "cutoff": str(Fraction(cutoff)),
        "pass": sq["pass"] and all(w_ok.values()) and euler_ok,
        "square": sq,
        "w_entries": w_ok,
        "euler_sum": euler_ok,
        "w_rule": fd.rule,
    }


def random_poly(ring: PolyRing, rng: random.Random, terms=3, degree=2) -> MPoly:
    out = {}
    for _ in range(rng.randint(0, terms)):
        exp = tuple(rng.randint(0, degree) for _ in ring.variables)
        out[exp] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return MPoly(ring, out)


def check_wedge(trials=200, seed=0, cutoff=30) -> dict:
    from .matrixfact import (
        SEIDEL_EXTERIOR_MAP,
        seidel_wedge_contraction,
        signed_permutation_equal,
        square_check,
        wedge_contraction,
    )

    rng = random.Random(seed)
    ring = PolyRing(("x", "y", "z", "u"))
    failures = []
    for k in range(trials):
        n = 1 + k % 4
        xs = [random_poly(ring, rng) for _ in range(n)]
        ws = [random_poly(ring, rng) for _ in range(n)]
        if not square_check(wedge_contraction(xs, ws))["pass"]:
            failures.append({"trial": k, "n": n})
    _, fd, mf = seidel_data(cutoff)
    iso = signed_permutation_equal(seidel_wedge_contraction(fd), mf, SEIDEL_EXTERIOR_MAP)
    return {
        "check": "wedge",
        "trials": trials,
        "seed": seed,
        "pass": not failures and iso,
        "failures": failures,
        "seidel_isomorphic": iso,
    }


def check_long_diagonal() -> dict:
    from .matrixfact import _long_ring, long_diagonal_check

    symbolic = long_diagonal_check()
    phi = _long_ring().gen("phi")
    special = long_diagonal_check({"a1": 1, "a2": 1, "a3": 1, "psi": phi.scale(3)})
    return {
        "check": "long-diagonal",
        "pass": symbolic["pass"] and special["pass"],
        "symbolic": symbolic,
        "specialized": special,
    }


def check_p1_fixture() -> dict:
    from .ainfty import p1_algebra, standard_b, weak_mc_check
    from .matrixfact import block_products, p1_fixture

    mf, w_plus = p1_fixture()
    hk, kh = block_products(mf)
    ring = mf.ring
    ok_blocks = True
    for prod in (hk, kh):
        for i in range(2):
            for j in range(2):
                want = mf.target if i == j else ring.zero()
                ok_blocks = ok_blocks and _poly_equal(prod[i][j], want)
    found = {}
    for sign in (1, -1):
        alg = p1_algebra(sign)
        w = weak_mc_check(alg, standard_b(alg, ("X", "Y")))
        x, y = w.ring.gens()
        prec = alg.cutoff + 1
        want = (x * y).scale(QSeries({2: 1}, prec)) + w.ring.constant(QSeries({4: sign}, prec))
        found["+" if sign > 0 else "-"] = {"W": str(w), "pass": w == want}
    wp_ok = _poly_equal(w_plus, mf.target + ring.constant(QSeries.monomial(1, 4)))
    return {
        "check": "p1-fixture",
        "pass": ok_blocks and wp_ok and all(v["pass"] for v in found.values()),
        "HK_KH": ok_blocks,
        "weak_mc": found,
    }


# -- A-infinity and quotient -------------------------------------------------------


def check_ainfty_suite(cutoff=30, k_max=5) -> dict:
    from .ainfty import (
        check_ainfty,
        functor_check,
        immersed_output_contributions,
        m1_b0,
        polygon_fixture,
        psi_phi1,
        standard_b,
        weak_mc_check,
    )

    alg = polygon_fixture((3, 3, 3), cutoff, k_max)
    rel = check_ainfty(alg)
    b = standard_b(alg)
    w_mc = weak_mc_check(alg, b)
    pot, _ = compute_potential((3, 3, 3), cutoff)
    w_ok = w_mc == pot.as_poly(include_lambda=True)
    immersed = immersed_output_contributions(alg, b)
    cancel = all(c.is_zero() for c in immersed.values())
    m1_zero = all(not alg.op((g,)) or all(c.is_zero() for c in alg.op((g,)).values()) for g in alg.generators)
    functor = functor_check(alg, b, [(g,) for g in alg.generators])
    inverse = psi_phi1(alg, b)
    inverse_ok = set(inverse) == {"p"} and inverse["p"] == alg.ring.one()
    return {
        "check": "ainfty",
        "cutoff": str(cutoff),
        "k_max": k_max,
        "pass": rel.passed and w_ok and cancel and m1_zero and functor.passed and inverse_ok,
        "relations": {"pass": rel.passed, "checked": rel.checked, "skipped": rel.skipped,
                      "violations": [str(v) for v in rel.violations[:20]]},
        "weak_mc_matches_potential": w_ok,
        "immersed_cancel": cancel,
        "m1_zero": m1_zero,
        "functor_k1": {"pass": functor.passed, "checked": functor.checked, "skipped": functor.skipped},
        "psi_phi1_identity": inverse_ok,
    }


def check_quotient(cutoff=100) -> dict:
    from .quotient import check_twisted_equivariance, check_w_invariance, search_generator_labels, z3_labeling

    w, _, mf = seidel_data(cutoff)
    lab = z3_labeling()
    inv = check_w_invariance(w, lab)
    found = search_generator_labels(mf, lab)
    eq = check_twisted_equivariance(mf, found) if found else None
    return {
        "check": "quotient",
        "cutoff": str(cutoff),
        "pass": inv.passed and bool(eq and eq.passed),
        "w_invariant": {"pass": inv.passed, "checked": inv.checked},
        "labeling": found.to_dict() if found else None,
        "equivariance_checked": eq.checked if eq else 0,
    }


def check_backends(cutoff=100, threads=1) -> dict:
    comb, _ = compute_potential((3, 3, 3), cutoff, threads=threads)
    lat, _ = lattice_potential(cutoff)
    same = comb.to_json() == lat.to_json()
    return {"check": "backends", "cutoff": str(cutoff), "pass": same}


LEADING_SIGNATURES = ((2, 3, 7), (3, 4, 5), (3, 3, 4))


def leading_cutoff(signature) -> int:
    """Just past the largest minimal gon area ``3 n`` for unit weights."""
    return 3 * max(signature) + 1


def leading_terms_report(signature, weights: RegionWeights | None = None) -> dict:
    weights = weights or RegionWeights()
    small, _ = compute_potential(signature, weights.central, weights)
    xyz = small.series((1, 1, 1))
    only_xyz = set(small.monomials) == {(1, 1, 1)}
    xyz_ok = only_xyz and dict(xyz.items()) == {weights.central: Fraction(-1)}
    scale = max(weights.central, weights.corner_a, weights.corner_b, weights.corner_c)
    big, _ = compute_potential(signature, leading_cutoff(signature) * scale, weights)
    pure = {}
    for mono in big.monomials:
        nonzero = [i for i, e in enumerate(mono) if e]
        if len(nonzero) == 1:
            pure.setdefault(nonzero[0], []).append(mono)
    wanted = {i: [tuple(n if k == i else 0 for k in range(3))] for i, n in enumerate(signature)}
    gons_ok = pure == wanted and all(len(big.series(m[0])) == 1 for m in wanted.values())
    return {
        "signature": list(signature),
        "pass": xyz_ok and gons_ok,
        "xyz_only_at_small_cutoff": xyz_ok,
        "pure_powers": {Potential.key(m[0]): str(big.series(m[0])) for m in pure.values()},
        "gon_terms_unique": gons_ok,
    }


def check_leading_terms(signatures=LEADING_SIGNATURES) -> dict:
    reports = [leading_terms_report(s) for s in signatures]
    return {"check": "leading-terms", "pass": all(r["pass"] for r in reports), "signatures": reports}
