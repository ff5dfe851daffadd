"""Exact-arithmetic workbench for the Landau-Ginzburg mirror of orbifold spheres."""

from .ainfty import AInftyAlgebra, check_ainfty, weak_mc_check
from .cover import MedialGraph, RegionWeights, ResourceLimit, Tessellation
from .enumerate import Potential, compute_potential
from .matrixfact import MatrixFactorization, square_check, wedge_contraction
from .mirrormap import check_syz_equals_mirror, compute_mirror_map
from .polyring import MPoly, PolyRing, SeriesRing
from .qseries import EtaQuotientSpec, QSeries, eta_quotient, jacobi_cube
from .quotient import Group, GroupLabeling, check_twisted_equivariance, check_w_invariance

__all__ = [
    "AInftyAlgebra",
    "EtaQuotientSpec",
    "Group",
    "GroupLabeling",
    "MPoly",
    "MatrixFactorization",
    "MedialGraph",
    "PolyRing",
    "Potential",
    "QSeries",
    "RegionWeights",
    "ResourceLimit",
    "SeriesRing",
    "Tessellation",
    "check_ainfty",
    "check_syz_equals_mirror",
    "check_twisted_equivariance",
    "check_w_invariance",
    "compute_mirror_map",
    "compute_potential",
    "eta_quotient",
    "jacobi_cube",
    "square_check",
    "wedge_contraction",
    "weak_mc_check",
]
__version__ = "0.1.0"
