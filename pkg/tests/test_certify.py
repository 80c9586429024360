import math

import pytest

from fibercert.certify import (
    CertificationError,
    certify,
    check_smooth_dim1,
    check_unimodular_facets,
    khovanskii_betti,
    log_gauss_degree,
    outer_degree,
    smith_thom_budget,
    surface_obstruction,
    topology_decompositions,
)
from fibercert.lattice import content, cross, det
from fibercert.polytope import build

from conftest import NONSMOOTH_TET, REMARK_TET, UNIT_TET, affine_image, random_unimodular, standard_simplex


def betti_oracle(points):
    """Face sums for a tetrahedron from determinants, cross products and gcds."""
    o, *rest = points
    edges_from_o = [[a - b for a, b in zip(v, o)] for v in rest]
    vol = abs(det(edges_from_o))
    area = 0
    for tri in ([0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]):
        a, b, c = (points[i] for i in tri)
        area += content(cross([x - y for x, y in zip(b, a)], [x - y for x, y in zip(c, a)]))
    length = sum(math.gcd(*[abs(x - y) for x, y in zip(p, q)]) for p, q in
                 [(points[i], points[j]) for i in range(4) for j in range(i + 1, 4)])
    return vol - area + length


def test_smooth_dim1_unit_tetrahedron():
    res = check_smooth_dim1(build(UNIT_TET))
    assert res.passed and len(res.edges) == 6


def test_smooth_dim1_nonsmooth_tetrahedron():
    res = check_smooth_dim1(build(NONSMOOTH_TET))
    bad = res.first_failure
    assert bad.edge.vertices == ((1, 0, 0), (0, 1, 0))
    assert bad.normals == ((0, 0, -1), (2, 2, 1))
    assert [e.edge.vertices for e in res.edges if not e.passed] == [((1, 0, 0), (0, 1, 0))]


def test_smooth_dim1_remark_tetrahedron_fails_somewhere():
    res = check_smooth_dim1(build(REMARK_TET))
    assert not res.passed


def test_smooth_dim1_rejects_polygons_and_flat_input():
    with pytest.raises(CertificationError, match="not defined"):
        check_smooth_dim1(build([(0, 0), (1, 0), (0, 1)]))
    with pytest.raises(CertificationError, match="full-dimensional"):
        check_smooth_dim1(build([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]))


def test_smooth_dim1_non_simple_edge():
    # octahedron-based 4-polytope: bipyramid over an octahedron has non-simple edges
    pts = [(1, 0, 0, 0), (-1, 0, 0, 0), (0, 1, 0, 0), (0, -1, 0, 0), (0, 0, 1, 0), (0, 0, -1, 0),
           (0, 0, 0, 1), (0, 0, 0, -1)]
    res = check_smooth_dim1(build(pts))
    assert not res.passed
    assert "dependent" in res.first_failure.reason


def test_unimodular_facets():
    vols, ok = check_unimodular_facets(build(UNIT_TET))
    assert ok and set(vols.values()) == {1}
    vols, ok = check_unimodular_facets(build(REMARK_TET))
    assert ok and sorted(vols.values()) == [1, 1, 1, 1]
    vols, ok = check_unimodular_facets(build([(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1)]))
    assert not ok
    base = next(v for f, v in vols.items() if f.vertices == ((0, 0, 0), (2, 0, 0), (0, 1, 0)))
    assert base == abs(det([[2, 0], [0, 1]])) == 2


@pytest.mark.parametrize("points, expected", [
    (UNIT_TET, 1),
    (NONSMOOTH_TET, 2),
    (standard_simplex(3, 2), 8),
])
def test_log_gauss_degree(points, expected):
    assert log_gauss_degree(build(points)) == expected
    assert abs(det([list(v) for v in points[1:]])) == expected


def test_log_gauss_degree_requires_full_dimension():
    with pytest.raises(CertificationError):
        log_gauss_degree(build([(0, 0, 0), (1, 0, 0), (0, 1, 0)]))


@pytest.mark.parametrize("points, expected", [
    ([(0, 0), (1, 0), (0, 1)], 1),
    ([(0, 0), (2, 0), (0, 2)], 4),
    ([(0, 0), (1, 0), (0, 1), (1, 1)], 2),
])
def test_outer_degree(points, expected):
    assert outer_degree(build(points)) == expected


@pytest.mark.parametrize("points, expected", [
    (UNIT_TET, 3),
    (NONSMOOTH_TET, 3),
    (standard_simplex(3, 2), 4),
    (REMARK_TET, 2 - 4 + 6),
])
def test_khovanskii_betti(points, expected):
    assert khovanskii_betti(build(points)) == betti_oracle(points) == expected


def test_khovanskii_betti_rejects_other_dimensions():
    with pytest.raises(CertificationError):
        khovanskii_betti(build(standard_simplex(4)))


def test_unit_tetrahedron_betti_is_projective_plane():
    # one projective plane (k, l) = (0, 1) contributes 3l + 2k = 2l + Vol
    assert khovanskii_betti(build(UNIT_TET)) == 3 == 2 * 1 + 1
    assert topology_decompositions(1) == [(0, 1)]


@pytest.mark.parametrize("vol, expected", [
    (1, [(0, 1)]),
    (2, [(1, 0), (0, 2)]),
    (3, [(1, 1), (0, 3)]),
])
def test_topology_decompositions(vol, expected):
    assert topology_decompositions(vol) == expected


@pytest.mark.parametrize("vol", range(1, 40))
def test_topology_decompositions_solve_equation(vol):
    out = topology_decompositions(vol)
    assert all(2 * k + l == vol and k >= 0 and l >= 0 for k, l in out)
    assert len(out) == vol // 2 + 1
    assert [k for k, _ in out] == sorted((k for k, _ in out), reverse=True)


def test_surface_obstruction_examples():
    stages = surface_obstruction(build(UNIT_TET))
    assert [s.name for s in stages] == ["outer_degree", "unit_edges", "tetrahedron", "smith_thom"]
    assert all(s.passed for s in stages)

    stages = surface_obstruction(build(standard_simplex(3, 2)))
    assert [(s.name, s.passed) for s in stages] == [("outer_degree", False)]
    assert {d["value"] for d in stages[0].detail["faces"]} == {4}

    stages = surface_obstruction(build(REMARK_TET))
    assert [s.passed for s in stages[:3]] == [True, True, True]
    assert not check_smooth_dim1(build(REMARK_TET)).passed
    assert certify(build(REMARK_TET)).verdict == "FAIL:smooth_dim1"


def test_smith_thom_budget_rearrangement():
    b = smith_thom_budget(build(UNIT_TET))
    assert b["sum_length"] == 6 and b["area_budget"] == 4 and b["sum_area"] == 4 and b["passed"]
    b = smith_thom_budget(build(NONSMOOTH_TET))
    assert b["real_betti"] == 4 and b["complex_betti"] == 3 and not b["passed"]


def test_certify_examples():
    assert certify(build(UNIT_TET)).verdict == "PASS"
    rep = certify(build(NONSMOOTH_TET))
    assert rep.verdict == "FAIL:smooth_dim1"
    assert rep.smooth_dim1["edge"] == [[1, 0, 0], [0, 1, 0]]
    assert rep.smooth_dim1["normals"] == [[0, 0, -1], [2, 2, 1]]
    rep4 = certify(build(standard_simplex(4)))
    assert rep4.verdict == "PASS"
    assert len(rep4.facet_verdicts) == 5
    assert all(fv["verdict"] == "PASS" and fv["gauss_degree"] == 1 for fv in rep4.facet_verdicts)


def test_certify_reports_everything_after_failure():
    rep = certify(build(NONSMOOTH_TET))
    assert rep.gauss_degree == 2
    assert sorted(x["value"] for x in rep.facet_volumes) == [1, 1, 2, 2]
    assert sorted(x["value"] for x in rep.edge_lengths) == [1, 1, 1, 1, 1, 2]
    assert rep.khovanskii_betti == 3
    assert rep.smith_thom_budget is not None
    assert rep.decompositions == [(1, 0), (0, 2)]


def test_certify_non_simplex_and_dilates():
    cube = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    # unit squares have outer degree 2: allowed by stage (a), rejected by (b)
    assert certify(build(cube)).verdict == "FAIL:unit_edges"
    assert certify(build(standard_simplex(3, 2))).verdict == "FAIL:outer_degree"
    assert certify(build(standard_simplex(4, 2))).verdict == "FAIL:facets"
    # a smooth simplex whose facets fail deeper in the recursion
    prism = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
             (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1)]
    assert certify(build(prism)).verdict.startswith("FAIL:")


def test_certify_rejects_low_dimension():
    with pytest.raises(CertificationError):
        certify(build([(0, 0), (1, 0), (0, 1)]))


def test_pass_implies_unit_degree_and_facets():
    for d in (3, 4, 5):
        rep = certify(build(standard_simplex(d)))
        assert rep.passed and rep.gauss_degree == 1
        assert all(x["value"] == 1 for x in rep.facet_volumes)


@pytest.mark.parametrize("points", [UNIT_TET, NONSMOOTH_TET, REMARK_TET, standard_simplex(3, 2),
                                    [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)]])
def test_certify_verdict_is_affine_invariant(points, rng):
    verdict = certify(build(points)).verdict
    for _ in range(10):
        u = random_unimodular(rng, 3)
        shift = [rng.randint(-4, 4) for _ in range(3)]
        assert certify(build(affine_image(points, u, shift))).verdict == verdict


def test_unit_triangles_in_unimodular_facets_have_outer_degree_one():
    p = build(standard_simplex(4))
    for facet in p.facets:
        fp = build(facet.vertices)
        for tri in fp.k_faces(2):
            assert outer_degree(tri) == 1


def test_certify_is_deterministic():
    a = certify(build(REMARK_TET)).to_dict()
    b = certify(build(REMARK_TET)).to_dict()
    assert a == b
