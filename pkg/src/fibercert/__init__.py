"""Exact lattice-polytope obstructions to real fibered logarithmic Gauss maps."""

from .certify import (
    CertificateReport,
    CertificationError,
    certify,
    check_smooth_dim1,
    check_unimodular_facets,
    khovanskii_betti,
    log_gauss_degree,
    outer_degree,
    surface_obstruction,
    topology_decompositions,
)
from .enumeration import (
    SimplexClass,
    canonical_form,
    counterexample_family,
    enumerate_simplices,
    verify_lemma,
)
from .gaussmap import (
    ProjectivePoint,
    RealLaurentPolynomial,
    fiber_probe,
    gauss_map,
    real_fibered_verdict,
)
from .lattice import content, det, extends_to_basis
from .polytope import (
    Face,
    LatticePolytope,
    build,
    lattice_length,
    lattice_perimeter,
    normalized_volume,
)

__version__ = "0.1.0"
