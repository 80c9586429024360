"""Lattice polytopes with an exact face lattice.

Hulls are found by brute force: every affinely independent subset of
``dim`` points spans a candidate hyperplane, which is kept when all points
lie on one side.  This is O(C(N, dim) * N) in the number ``N`` of distinct
input points, so inputs are capped at :data:`MAX_POINTS`.  The targets here
are simplices and other small polytopes, where this is instantaneous.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import (
    IntMatrix,
    IntVector,
    as_int_vector,
    content,
    det,
    kernel_normal,
    matvec,
    primitive,
    rank,
    saturation_chart,
    transpose,
)

MAX_POINTS = 24


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    """A face of a lattice polytope.

    ``vertex_indices`` index into the parent polytope's ``vertices``.  For
    facets, ``normal`` and ``offset`` describe the supporting hyperplane:
    ``<normal, x> <= offset`` on the polytope with equality on the face.
    The normal is primitive and is expressed in ambient coordinates when the
    polytope is full-dimensional, otherwise in the polytope's own lattice
    chart (see :attr:`LatticePolytope.chart`).
    """

    vertex_indices: tuple[int, ...]
    vertices: tuple[IntVector, ...]
    dim: int
    normal: IntVector | None = None
    offset: int | None = None

    def __len__(self):
        return len(self.vertex_indices)


@dataclass(frozen=True)
class FaceLattice:
    by_dim: tuple[tuple[Face, ...], ...]
    facets_containing: dict = field(repr=False)

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(fs) for fs in self.by_dim)

    def facets_of(self, face: Face) -> tuple[Face, ...]:
        return self.facets_containing[face.vertex_indices]


@dataclass(frozen=True)
class LatticePolytope:
    vertices: tuple[IntVector, ...]
    dim: int
    faces: FaceLattice = field(repr=False, compare=False)
    # (base point, basis rows, coordinate matrix) of the affine lattice
    chart: tuple = field(repr=False, compare=False)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def facets(self) -> tuple[Face, ...]:
        return self.faces.by_dim[self.dim - 1] if self.dim >= 1 else ()

    @property
    def edges(self) -> tuple[Face, ...]:
        return self.faces.by_dim[1] if self.dim >= 1 else ()

    def k_faces(self, k: int) -> tuple[Face, ...]:
        return self.faces.by_dim[k]

    @property
    def as_face(self) -> Face:
        return self.faces.by_dim[self.dim][0]

    @property
    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    @property
    def polytope_id(self) -> str:
        canon = json.dumps(sorted(map(list, self.vertices)), separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]

    def local_coordinates(self) -> tuple[IntVector, ...]:
        """Vertices written in a basis of the polytope's own affine lattice."""
        base, _, coords = self.chart
        return tuple(matvec(transpose(coords), _sub(v, base)) for v in self.vertices)

    def in_own_lattice(self) -> LatticePolytope:
        """The same polytope re-embedded full-dimensionally in Z^dim."""
        return build(self.local_coordinates())

    def face_polytope(self, face: Face) -> LatticePolytope:
        return build(face.vertices)

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}


def _sub(a: Sequence[int], b: Sequence[int]) -> IntVector:
    return tuple(x - y for x, y in zip(a, b))


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return rank([_sub(p, p0) for p in points[1:]])


def _hull_facets(pts: Sequence[IntVector], k: int) -> list[tuple[IntVector, int, frozenset]]:
    """Supporting hyperplanes of a full-dimensional point set in Z^k."""
    if k == 1:
        xs = [p[0] for p in pts]
        lo, hi = min(xs), max(xs)
        return [
            ((-1,), -lo, frozenset(i for i, x in enumerate(xs) if x == lo)),
            ((1,), hi, frozenset(i for i, x in enumerate(xs) if x == hi)),
        ]
    found = {}
    covered: list[frozenset] = []
    for combo in combinations(range(len(pts)), k):
        s = frozenset(combo)
        if any(s <= c for c in covered):
            continue
        p0 = pts[combo[0]]
        n = kernel_normal([_sub(pts[i], p0) for i in combo[1:]])
        if not any(n):
            continue
        n = primitive(n)
        values = [_dot(n, p) for p in pts]
        off = values[combo[0]]
        if all(v <= off for v in values):
            pass
        elif all(v >= off for v in values):
            n, off, values = tuple(-x for x in n), -off, [-v for v in values]
        else:
            continue
        on = frozenset(i for i, v in enumerate(values) if v == off)
        covered.append(on)
        found[(n, off)] = on
    return [(n, off, on) for (n, off), on in found.items()]


def build(points: Iterable[Iterable[int]]) -> LatticePolytope:
    """Convex hull of lattice points, with its full face lattice."""
    pts: list[IntVector] = []
    for p in points:
        p = as_int_vector(p)
        if p not in pts:
            pts.append(p)
    if not pts:
        raise PolytopeError("cannot build a polytope from no points")
    m = len(pts[0])
    if any(len(p) != m for p in pts):
        raise PolytopeError("points live in different ambient dimensions")
    if len(pts) > MAX_POINTS:
        raise PolytopeError(
            f"{len(pts)} distinct points exceeds the brute-force hull limit of {MAX_POINTS}"
        )

    base = pts[0]
    diffs = [_sub(p, base) for p in pts[1:] if any(_sub(p, base))]
    if not diffs:
        only = Face((0,), (base,), 0)
        lattice = FaceLattice(((only,),), {(0,): ()})
        return LatticePolytope((base,), 0, lattice, (base, (), ()))

    basis, coords = saturation_chart(diffs)
    k = len(basis)
    if k == m:
        local = pts
        chart = (tuple(0 for _ in range(m)), _identity_rows(m), _identity_rows(m))
    else:
        ct = transpose(coords)
        local = [matvec(ct, _sub(p, base)) for p in pts]
        chart = (base, basis, coords)

    hyperplanes = _hull_facets(local, k)
    on_facets = {i: [n for n, _, on in hyperplanes if i in on] for i in range(len(pts))}
    if k == 1:
        is_vertex = {i: bool(on_facets[i]) for i in range(len(pts))}
    else:
        is_vertex = {i: len(on_facets[i]) >= k and rank(on_facets[i]) == k for i in range(len(pts))}
    keep = [i for i in range(len(pts)) if is_vertex[i]]
    reindex = {old: new for new, old in enumerate(keep)}
    vertices = tuple(pts[i] for i in keep)
    local_v = [local[i] for i in keep]

    facet_sets = {}
    for n, off, on in hyperplanes:
        idx = tuple(sorted(reindex[i] for i in on if i in reindex))
        facet_sets[idx] = (n, off)

    # every proper face is an intersection of facets
    all_sets = set(map(frozenset, facet_sets))
    frontier = set(all_sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facet_sets:
                c = a & frozenset(b)
                if c and c not in all_sets:
                    new.add(c)
        all_sets |= new
        frontier = new
    all_sets.add(frozenset(range(len(vertices))))
    for i in range(len(vertices)):
        all_sets.add(frozenset((i,)))

    by_dim: list[list[Face]] = [[] for _ in range(k + 1)]
    for s in all_sets:
        idx = tuple(sorted(s))
        d = affine_rank([local_v[i] for i in idx])
        normal, offset = facet_sets.get(idx, (None, None)) if d == k - 1 else (None, None)
        by_dim[d].append(Face(idx, tuple(vertices[i] for i in idx), d, normal, offset))
    for fs in by_dim:
        fs.sort(key=lambda f: f.vertex_indices)

    facets = by_dim[k - 1]
    containing = {
        f.vertex_indices: tuple(g for g in facets if set(f.vertex_indices) <= set(g.vertex_indices))
        for fs in by_dim
        for f in fs
    }
    lattice = FaceLattice(tuple(map(tuple, by_dim)), containing)
    return LatticePolytope(vertices, k, lattice, chart)


def _identity_rows(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def lattice_length(edge: Face | Sequence[Sequence[int]]) -> int:
    """Number of lattice points on a lattice segment, minus one."""
    pts = edge.vertices if isinstance(edge, Face) else tuple(map(as_int_vector, edge))
    if isinstance(edge, Face) and edge.dim != 1:
        raise PolytopeError(f"lattice length needs an edge, got a {edge.dim}-face")
    if len(pts) != 2 or pts[0] == pts[1]:
        raise PolytopeError("lattice length needs a segment with two distinct endpoints")
    return content(_sub(pts[1], pts[0]))


def triangulate(poly: LatticePolytope, face: Face | None = None, apex: int = 0) -> list[tuple[int, ...]]:
    """Pulling triangulation of ``face`` into simplices of vertex indices.

    ``apex`` selects which vertex (by position in the sorted vertex list) is
    pulled at each level, so that different choices give different
    triangulations of the same face.
    """
    face = poly.as_face if face is None else face
    if face.dim == 0:
        return [face.vertex_indices]
    top = face.vertex_indices[apex % len(face.vertex_indices)]
    members = set(face.vertex_indices)
    out = []
    for sub in poly.k_faces(face.dim - 1):
        if top in sub.vertex_indices or not set(sub.vertex_indices) <= members:
            continue
        for simplex in triangulate(poly, sub, apex):
            out.append((top,) + simplex)
    return out


def normalized_volume(obj: LatticePolytope | Face, apex: int = 0) -> int:
    """Volume in units of a basis simplex of the object's own lattice.

    For a full-dimensional polytope in Z^k this is k! times the Euclidean
    volume.  Faces are measured in the saturated lattice parallel to them.
    """
    poly = obj if isinstance(obj, LatticePolytope) else build(obj.vertices)
    if poly.dim < 1:
        raise PolytopeError("normalized volume is undefined for a point")
    local = poly.local_coordinates()
    total = 0
    for simplex in triangulate(poly, apex=apex):
        o = local[simplex[0]]
        total += abs(det([_sub(local[i], o) for i in simplex[1:]]))
    return total


def lattice_perimeter(obj: LatticePolytope | Face) -> int:
    """Sum of the lattice lengths of the edges of a polygon."""
    poly = obj if isinstance(obj, LatticePolytope) else build(obj.vertices)
    if poly.dim != 2:
        raise PolytopeError(f"lattice perimeter needs a 2-face, got dimension {poly.dim}")
    return sum(lattice_length(e) for e in poly.edges)


def euler_characteristic_holds(poly: LatticePolytope) -> bool:
    """Alternating sum of proper face counts equals 1 - (-1)^dim."""
    f = poly.faces.f_vector
    d = poly.dim
    return sum((-1) ** k * f[k] for k in range(d)) == 1 - (-1) ** d


def ridges_in_two_facets(poly: LatticePolytope) -> bool:
    if poly.dim < 2:
        return True
    return all(len(poly.faces.facets_of(r)) == 2 for r in poly.k_faces(poly.dim - 2))


def parse_polytope_json(text: str) -> LatticePolytope:
    """Parse ``{"vertices": [[int, ...], ...]}``; floats are rejected."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolytopeError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise PolytopeError('polytope JSON must be an object with a "vertices" key')
    verts = doc["vertices"]
    if not isinstance(verts, list) or not verts or not all(isinstance(v, list) for v in verts):
        raise PolytopeError('"vertices" must be a non-empty list of integer lists')
    for v in verts:
        for x in v:
            if isinstance(x, float):
                raise PolytopeError(f"float vertex coordinate {x!r}; only exact integers are accepted")
            if isinstance(x, bool) or not isinstance(x, int):
                raise PolytopeError(f"non-integer vertex coordinate {x!r}")
    return build(verts)
