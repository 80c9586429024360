"""Lattice simplices up to integer affine equivalence.

Every lattice simplex with a vertex at the origin is GL(n, Z)-equivalent to
one whose edge matrix (edge vectors as columns) is in Hermite normal form,
so enumerating HNF matrices with bounded determinant reaches every class.
Many HNF matrices describe the same simplex with its vertices relabelled;
:func:`canonical_form` picks one representative per class.

Work is split by HNF diagonal.  Partitions are independent and the merged
output is sorted, so results do not depend on the number of workers.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

from .certify import check_smooth_dim1, check_unimodular_facets
from .lattice import IntMatrix, det, hermite_normal_form
from .polytope import LatticePolytope, build, normalized_volume

DEFAULT_MAX_VOL = {3: 20, 4: 8}


@dataclass(frozen=True, order=True)
class SimplexClass:
    volume: int
    canonical: IntMatrix

    def vertices(self) -> list[tuple[int, ...]]:
        d = len(self.canonical)
        cols = [tuple(self.canonical[i][j] for i in range(d)) for j in range(d)]
        return [tuple([0] * d)] + cols

    def polytope(self) -> LatticePolytope:
        return build(self.vertices())

    def to_dict(self) -> dict:
        return {"canonical": [list(r) for r in self.canonical], "volume": self.volume}


def canonical_form(vertices: Sequence[Sequence[int]]) -> IntMatrix:
    """Lexicographically least HNF of the edge matrix over all vertex orders."""
    verts = [tuple(v) for v in vertices]
    d = len(verts[0])
    if len(verts) != d + 1:
        raise ValueError(f"a full-dimensional simplex in Z^{d} has {d + 1} vertices")
    best = None
    for origin in range(d + 1):
        o = verts[origin]
        edges = [tuple(x - y for x, y in zip(v, o)) for i, v in enumerate(verts) if i != origin]
        for perm in permutations(edges):
            # rows of the edge matrix; its columns are the permuted edges
            h = hermite_normal_form(list(zip(*perm)))
            if best is None or h < best:
                best = h
    if det(best) == 0:
        raise ValueError("vertices do not span a full-dimensional simplex")
    return best


def simplex_class(vertices: Sequence[Sequence[int]]) -> SimplexClass:
    canon = canonical_form(vertices)
    return SimplexClass(abs(det(canon)), canon)


def hnf_diagonals(dim: int, max_vol: int) -> list[tuple[int, ...]]:
    """Positive integer tuples of length ``dim`` with product at most ``max_vol``."""
    out = []

    def rec(prefix, budget):
        if len(prefix) == dim:
            out.append(tuple(prefix))
            return
        for a in range(1, budget + 1):
            rec(prefix + [a], budget // a)

    rec([], max_vol)
    return out


def hnf_matrices(diagonal: tuple[int, ...]) -> Iterator[IntMatrix]:
    """Upper-triangular HNF matrices with the given diagonal."""
    d = len(diagonal)
    slots = [(i, j) for j in range(d) for i in range(j)]
    ranges = [range(diagonal[j]) for _, j in slots]
    for values in product(*ranges):
        m = [[0] * d for _ in range(d)]
        for i in range(d):
            m[i][i] = diagonal[i]
        for (i, j), x in zip(slots, values):
            m[i][j] = x
        yield tuple(map(tuple, m))


def _classes_for_diagonal(diagonal: tuple[int, ...]) -> set[IntMatrix]:
    found = set()
    for m in hnf_matrices(diagonal):
        d = len(m)
        cols = [tuple(m[i][j] for i in range(d)) for j in range(d)]
        found.add(canonical_form([tuple([0] * d)] + cols))
    return found


def enumerate_simplices(dim: int, max_vol: int, jobs: int | None = 1) -> Iterator[SimplexClass]:
    """One representative per class of ``dim``-simplices with volume <= ``max_vol``.

    Yields classes sorted by ``(volume, canonical)``.  ``jobs=None`` uses all
    available cores; the output is the same for every value.
    """
    if dim < 3:
        raise ValueError("enumeration is for dimension >= 3")
    if max_vol < 1:
        raise ValueError("max_vol must be positive")
    diagonals = hnf_diagonals(dim, max_vol)
    jobs = (os.cpu_count() or 1) if jobs is None else jobs
    if jobs > 1 and len(diagonals) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_classes_for_diagonal, diagonals, chunksize=4))
    else:
        parts = [_classes_for_diagonal(dg) for dg in diagonals]
    merged = set().union(*parts)
    yield from sorted(SimplexClass(math.prod(c[i][i] for i in range(dim)), c) for c in merged)


def classify(cls: SimplexClass) -> dict:
    """Stream record: canonical matrix, volume and the two lemma hypotheses."""
    poly = cls.polytope()
    _, unimodular = check_unimodular_facets(poly)
    smooth = check_smooth_dim1(poly).passed
    return {**cls.to_dict(), "unimodular_facets": unimodular, "smooth_dim1": smooth}


def verify_lemma(
    dim: int,
    max_vol: int,
    *,
    require_unimodular_facets: bool = True,
    require_smooth: bool = True,
    jobs: int | None = 1,
    classes: Sequence[SimplexClass] | None = None,
) -> list[SimplexClass]:
    """Simplices satisfying the enabled hypotheses but with volume > 1.

    With both hypotheses enabled the result must be empty: a simplex with
    unimodular facets that is smooth in dimension one is unimodular.
    Disabling either hypothesis exposes the families showing it is needed.
    """
    if classes is None:
        classes = enumerate_simplices(dim, max_vol, jobs)
    out = []
    for cls in classes:
        if cls.volume <= 1:
            continue
        poly = cls.polytope()
        if require_unimodular_facets and not check_unimodular_facets(poly)[1]:
            continue
        if require_smooth and not check_smooth_dim1(poly).passed:
            continue
        out.append(cls)
    return out


def counterexample_family(p: int, q: int) -> LatticePolytope:
    """Tetrahedron on 0, e1, e2, (1, p, q): unimodular facets but volume ``q``."""
    if q < 1:
        raise ValueError("q must be positive")
    if math.gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    poly = build([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, p, q)])
    vols, unimodular = check_unimodular_facets(poly)
    assert unimodular, vols
    assert normalized_volume(poly) == q
    return poly
