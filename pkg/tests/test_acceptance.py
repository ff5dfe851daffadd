"""One test per acceptance criterion; each prints a PASS/FAIL line."""

from lgmirror import verify


def report(n, name, rep):
    print(f"[{'PASS' if rep['pass'] else 'FAIL'}] criterion {n}: {name}")
    return rep["pass"]


def test_c01_potential_333():
    rep = verify.check_potential_333(cutoff=200, backend="combinatorial")
    assert report(1, "(3,3,3) potential at cutoff 200 equals phi, psi exactly", rep), rep


def test_c02_jacobi():
    rep = verify.check_jacobi(order=2000)
    assert report(2, "eta(q)^3 equals the Jacobi cube to order 2000", rep), rep


def test_c03_mirror_map():
    rep = verify.check_mirror_map(order=500)
    assert report(3, "psi/phi equals the eta quotient and -qcheck(q^8) to order 500", rep), rep
    assert len(rep["checks"]) == 3


def test_c04_integrality():
    rep = verify.check_integrality(order=100)
    assert report(4, "qcheck has integer coefficients to order 100", rep), rep


def test_c05_seidel_mf():
    rep = verify.check_mf_seidel(cutoff=100)
    assert report(5, "Seidel matrix factorization squares to W and matches w_x, w_y, w_z", rep), rep


def test_c06_wedge_contraction():
    rep = verify.check_wedge(trials=200, seed=0)
    assert report(6, "wedge-contraction squares for 200 random cases and matches Seidel", rep), rep


def test_c07_long_diagonal():
    rep = verify.check_long_diagonal()
    assert report(7, "long diagonal divides by the cubic and specializes exactly", rep), rep


def test_c08_p1_fixture():
    rep = verify.check_p1_fixture()
    assert report(8, "P^1 fixture HK = KH = q^2 xy and W = q^2 xy +- q^4", rep), rep


def test_c09_ainfty_suite():
    rep = verify.check_ainfty_suite(cutoff=30, k_max=5)
    assert report(9, "A-infinity relations, weak MC potential, cancellation, functor", rep), rep


def test_c10_quotient():
    rep = verify.check_quotient(cutoff=100)
    assert report(10, "Z/3 invariance and twisted-equivariant generator labels", rep), rep


def test_c11_backends():
    rep = verify.check_backends(cutoff=100)
    assert report(11, "combinatorial and lattice backends give identical JSON at cutoff 100", rep), rep


def test_c12_leading_terms():
    rep = verify.check_leading_terms()
    assert report(12, "single xyz and x^a, y^b, z^c leading terms for (2,3,7), (3,4,5), (3,3,4)", rep), rep
