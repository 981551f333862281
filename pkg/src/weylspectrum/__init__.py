"""Spectral radii of Coxeter-group elements through orbit data.

Modules: ``lattice`` (Z^{1,n}, reflections, Noether checks), ``orbit``
(orbit data and normal forms), ``charpoly`` (characteristic polynomials),
``polyarith`` (exact root certification), ``enumerator`` (catalogs M_d),
``spectrum`` (scans), ``realizer`` (cubic-curve parameter systems).
"""
from .charpoly import char_poly, char_poly_of, limit_poly, psi_sequence
from .enumerator import canonicalize, enumerate_Md, truncations
from .lattice import WeylElement, check_noether, kappa_reflection, simple_reflection, validate_weyl
from .orbit import OrbitData, decompose, expand, extract_orbit_data
from .poly import IntPolynomial
from .polyarith import classify, largest_real_root, strip_cyclotomic, unit_disk_count

__version__ = "0.1.0"

__all__ = [
    "IntPolynomial",
    "OrbitData",
    "WeylElement",
    "canonicalize",
    "char_poly",
    "char_poly_of",
    "check_noether",
    "classify",
    "decompose",
    "enumerate_Md",
    "expand",
    "extract_orbit_data",
    "kappa_reflection",
    "largest_real_root",
    "limit_poly",
    "psi_sequence",
    "simple_reflection",
    "strip_cyclotomic",
    "truncations",
    "unit_disk_count",
    "validate_weyl",
]
