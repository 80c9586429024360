"""Polytope-level obstructions to a real fibered logarithmic Gauss map.

A torically non-singular real hypersurface whose logarithmic Gauss map is
real fibered must have a Newton polytope that survives every check in
:func:`certify`; only the unimodular simplex does.  The checks run in a
fixed order and the first failure names the verdict, but every invariant is
computed regardless so that reports are complete.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .lattice import LinearDependenceError, extends_to_basis
from .polytope import (
    Face,
    LatticePolytope,
    lattice_length,
    lattice_perimeter,
    normalized_volume,
)

# Components of the real part that are projective spaces; the surface case
# forces at least one.
SMITH_THOM_L = 1


class CertificationError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeCheck:
    edge: Face
    normals: tuple[tuple[int, ...], ...]
    passed: bool
    reason: str = ""


@dataclass(frozen=True)
class SmoothnessResult:
    edges: tuple[EdgeCheck, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.edges)

    @property
    def first_failure(self) -> EdgeCheck | None:
        return next((e for e in self.edges if not e.passed), None)

    def to_dict(self) -> dict:
        bad = self.first_failure
        out: dict[str, Any] = {"passed": self.passed}
        if bad is not None:
            out["edge"] = [list(v) for v in bad.edge.vertices]
            out["normals"] = [list(n) for n in bad.normals]
            out["reason"] = bad.reason
            out["failing_edges"] = [
                [list(v) for v in e.edge.vertices] for e in self.edges if not e.passed
            ]
        return out


def _require_dim(poly: LatticePolytope, low: int, what: str) -> None:
    if not poly.is_full_dimensional:
        raise CertificationError(
            f"{what} needs a full-dimensional polytope; got dimension {poly.dim} in Z^{poly.ambient_dim}"
        )
    if poly.dim < low:
        raise CertificationError(
            f"{what} needs dimension >= {low}; dimension-one smoothness is not defined for "
            f"{poly.dim}-dimensional polytopes, whose edges are their facets"
        )


def check_smooth_dim1(poly: LatticePolytope) -> SmoothnessResult:
    """At each edge, test whether the adjacent facet normals extend to a Z^m basis."""
    _require_dim(poly, 3, "smoothness in dimension one")
    checks = []
    for edge in poly.edges:
        normals = tuple(f.normal for f in poly.faces.facets_of(edge))
        try:
            ok = extends_to_basis(normals)
            reason = "" if ok else "normals span a sublattice of index > 1"
        except LinearDependenceError:
            ok, reason = False, "normals are linearly dependent (non-simple edge)"
        checks.append(EdgeCheck(edge, normals, ok, reason))
    return SmoothnessResult(tuple(checks))


def check_unimodular_facets(poly: LatticePolytope) -> tuple[dict[Face, int], bool]:
    if poly.dim < 2:
        raise CertificationError("facet unimodularity needs dimension >= 2")
    vols = {f: normalized_volume(f) for f in poly.facets}
    return vols, all(v == 1 for v in vols.values())


def log_gauss_degree(poly: LatticePolytope) -> int:
    """Degree of the logarithmic Gauss map: the normalized volume of the Newton polytope."""
    if not poly.is_full_dimensional:
        raise CertificationError("Gauss map degree needs a full-dimensional Newton polytope")
    return normalized_volume(poly)


def outer_degree(face: Face | LatticePolytope) -> int:
    """Gauss map degree on the outer oval of a Harnack curve: lattice perimeter minus two."""
    return lattice_perimeter(face) - 2


def khovanskii_betti(poly: LatticePolytope) -> int:
    """Total Betti number of the compactified complex surface from face volumes."""
    if poly.dim != 3:
        raise CertificationError(f"Betti formula is for 3-dimensional polytopes, got {poly.dim}")
    return (
        normalized_volume(poly)
        - sum(normalized_volume(f) for f in poly.facets)
        + sum(lattice_length(e) for e in poly.edges)
    )


def topology_decompositions(vol: int) -> list[tuple[int, int]]:
    """All (spheres, projective spaces) counts ``(k, l)`` with ``2k + l == vol``."""
    if vol < 1:
        raise ValueError("volume must be positive")
    return [(k, vol - 2 * k) for k in range(vol // 2, -1, -1)]


@dataclass(frozen=True)
class Stage:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, **self.detail}


def smith_thom_budget(poly: LatticePolytope, l: int = SMITH_THOM_L) -> dict:
    """Compare the real Betti lower bound with the complex Betti number.

    The real part has Betti sum ``2l + Vol``; Smith-Thom bounds it by the
    complex Betti sum, which rearranges to ``sum Area <= sum Length - 2l``.
    """
    vol = normalized_volume(poly)
    sum_area = sum(normalized_volume(f) for f in poly.facets)
    sum_length = sum(lattice_length(e) for e in poly.edges)
    complex_betti = vol - sum_area + sum_length
    real_betti = 2 * l + vol
    passed = real_betti <= complex_betti
    assert passed == (sum_area <= sum_length - 2 * l)
    return {
        "l": l,
        "real_betti": real_betti,
        "complex_betti": complex_betti,
        "sum_area": sum_area,
        "sum_length": sum_length,
        "area_budget": sum_length - 2 * l,
        "passed": passed,
    }


def surface_obstruction(poly: LatticePolytope) -> list[Stage]:
    """Run the surface-case stages in order; stops after the first failure."""
    _require_dim(poly, 3, "the surface obstruction")
    if poly.dim != 3:
        raise CertificationError(f"the surface obstruction is for dimension 3, got {poly.dim}")
    two_faces = poly.k_faces(2)
    degrees = {f: outer_degree(f) for f in two_faces}

    bad = [f for f, d in degrees.items() if d not in (1, 2)]
    stages = [Stage("outer_degree", not bad, _faces_detail("faces", bad, degrees))]
    if bad:
        return stages

    long_edges = [e for e in poly.edges if lattice_length(e) != 1]
    non_unit = [f for f in two_faces if len(f) != 3 or degrees[f] != 1]
    ok = not long_edges and not non_unit
    detail = {
        "long_edges": [[list(v) for v in e.vertices] for e in long_edges],
        "non_unit_faces": [[list(v) for v in f.vertices] for f in non_unit],
    }
    stages.append(Stage("unit_edges", ok, detail))
    if not ok:
        return stages

    n_facets = len(poly.facets)
    stages.append(Stage("tetrahedron", n_facets == 4, {"facets": n_facets}))
    if n_facets != 4:
        return stages

    budget = smith_thom_budget(poly)
    stages.append(Stage("smith_thom", budget["passed"], budget))
    return stages


def _faces_detail(key: str, faces, values) -> dict:
    return {key: [{"face": [list(v) for v in f.vertices], "value": values[f]} for f in faces]}


@dataclass
class CertificateReport:
    polytope_id: str
    dim: int
    vertices: list
    gauss_degree: int
    smooth_dim1: dict
    facet_volumes: list
    outer_degrees: list
    edge_lengths: list
    khovanskii_betti: int | None
    smith_thom_budget: dict | None
    decompositions: list
    stages: list
    facet_verdicts: list | None
    verdict: str

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    @property
    def failed_stage(self) -> str | None:
        return None if self.passed else self.verdict.split(":", 1)[1]

    def to_dict(self) -> dict:
        return {
            "polytope_id": self.polytope_id,
            "dim": self.dim,
            "vertices": self.vertices,
            "gauss_degree": self.gauss_degree,
            "smooth_dim1": self.smooth_dim1,
            "facet_volumes": self.facet_volumes,
            "outer_degrees": self.outer_degrees,
            "edge_lengths": self.edge_lengths,
            "khovanskii_betti": self.khovanskii_betti,
            "smith_thom_budget": self.smith_thom_budget,
            "decompositions": [list(kl) for kl in self.decompositions],
            "stages": self.stages,
            "facet_verdicts": self.facet_verdicts,
            "verdict": self.verdict,
        }


def _face_table(faces, fn) -> list[dict]:
    return [{"face": [list(v) for v in f.vertices], "value": fn(f)} for f in faces]


def certify(poly: LatticePolytope) -> CertificateReport:
    """Run the full obstruction chain; PASS only for the unimodular simplex."""
    _require_dim(poly, 3, "certification")
    gauss_degree = log_gauss_degree(poly)
    facet_vols, unimodular = check_unimodular_facets(poly)
    smooth = check_smooth_dim1(poly)

    stages: list[Stage] = [Stage("smooth_dim1", smooth.passed)]
    betti = budget = facet_verdicts = None
    if poly.dim == 3:
        betti = khovanskii_betti(poly)
        budget = smith_thom_budget(poly)
        if smooth.passed:
            stages += surface_obstruction(poly)
    elif smooth.passed:
        facet_verdicts = []
        for facet in poly.facets:
            sub = certify(poly.face_polytope(facet).in_own_lattice())
            facet_verdicts.append(
                {"face": [list(v) for v in facet.vertices], "verdict": sub.verdict,
                 "gauss_degree": sub.gauss_degree}
            )
        ok = all(fv["verdict"] == "PASS" for fv in facet_verdicts)
        stages.append(Stage("facets", ok))

    if all(s.passed for s in stages):
        stages.append(Stage("simplex", poly.is_simplex, {"vertices": len(poly.vertices)}))
    if all(s.passed for s in stages):
        # smooth + unimodular facets + simplex already force volume one
        assert unimodular and gauss_degree == 1, (
            f"simplex {poly.vertices} is smooth in dimension one with unimodular facets "
            f"but has volume {gauss_degree}"
        )
        stages.append(Stage("volume", gauss_degree == 1, {"volume": gauss_degree}))

    failed = next((s for s in stages if not s.passed), None)
    return CertificateReport(
        polytope_id=poly.polytope_id,
        dim=poly.dim,
        vertices=[list(v) for v in poly.vertices],
        gauss_degree=gauss_degree,
        smooth_dim1=smooth.to_dict(),
        facet_volumes=[{"face": [list(v) for v in f.vertices], "value": v} for f, v in facet_vols.items()],
        outer_degrees=_face_table(poly.k_faces(2), outer_degree),
        edge_lengths=_face_table(poly.edges, lattice_length),
        khovanskii_betti=betti,
        smith_thom_budget=budget,
        decompositions=topology_decompositions(gauss_degree),
        stages=[s.to_dict() for s in stages],
        facet_verdicts=facet_verdicts,
        verdict="PASS" if failed is None else f"FAIL:{failed.name}",
    )
