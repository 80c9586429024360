import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from fibercert.lattice import (
    LinearDependenceError,
    as_int_vector,
    content,
    det,
    extends_to_basis,
    extends_to_basis_by_minors,
    hermite_normal_form,
    invariant_factors,
    matmul,
    rank,
    saturation_chart,
    smith_normal_form,
)

from conftest import random_unimodular


def cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)))


def gcd_fold(v):
    g = 0
    for x in v:
        a, b = abs(g), abs(x)
        while b:
            a, b = b, a % b
        g = a
    return g


small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@pytest.mark.parametrize("v, expected", [((0, 0, 0), 0), ((2, 2, 1), 1), ((0, -2, 0), 2)])
def test_content_examples(v, expected):
    assert content(v) == expected
    assert gcd_fold(v) == expected


@given(st.lists(small, min_size=1, max_size=5), st.integers(-20, 20))
def test_content_scales(v, k):
    assert content([k * x for x in v]) == abs(k) * content(v)


def test_det_examples():
    assert det([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    # columns e1, e2, (1, 1, 2)
    cols = [(1, 0, 0), (0, 1, 0), (1, 1, 2)]
    assert det(list(zip(*cols))) == 2
    cols = [(1, 0, 0), (0, 1, 0), (0, 0, 2)]
    assert det(list(zip(*cols))) == cofactor_det([list(r) for r in zip(*cols)]) == 2


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det([[1, 2, 3], [4, 5, 6]])


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
def test_det_multiplicative(pair):
    a, b = pair
    assert det(matmul(a, b)) == det(a) * det(b)
    assert det(a) == cofactor_det(a)


def test_det_large_entries_exact():
    big = 10**30
    m = [[big, 1, 0], [0, big, 1], [1, 0, big]]
    assert det(m) == cofactor_det(m) == big**3 + 1


@given(st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))))
@settings(max_examples=150)
def test_smith_normal_form_matches_sympy(m):
    u, d, v = smith_normal_form(m)  # decomposition is checked internally
    assert matmul(matmul(u, m), v) == d
    theirs = [int(x) for x in sympy_invariant_factors(Matrix(m)) if x != 0]
    assert list(invariant_factors(m)) == [abs(x) for x in theirs]
    assert len(invariant_factors(m)) == rank(m) == Matrix(m).rank()


@given(st.integers(2, 4).flatmap(square), st.integers(0, 10**6))
def test_hnf_is_left_unimodular_invariant(m, seed):
    if det(m) == 0:
        return
    u = random_unimodular(random.Random(seed), len(m))
    h = hermite_normal_form(m)
    assert hermite_normal_form(matmul(u, m)) == h
    n = len(m)
    assert all(h[i][j] == 0 for i in range(n) for j in range(i))
    assert all(h[i][i] > 0 for i in range(n))
    assert all(0 <= h[i][j] < h[j][j] for j in range(n) for i in range(j))
    assert abs(det(h)) == abs(det(m))


@pytest.mark.parametrize("vs, expected", [
    ([(1, 0, 0), (0, 1, 0)], True),
    ([(0, 0, -1), (2, 2, 1)], False),
    ([(2, 0, 0)], False),
])
def test_extends_to_basis_examples(vs, expected):
    assert extends_to_basis(vs) is expected
    assert extends_to_basis_by_minors(vs) is expected


def test_dependent_input_is_an_error():
    with pytest.raises(LinearDependenceError):
        extends_to_basis([(1, 2, 3), (2, 4, 6)])
    with pytest.raises(LinearDependenceError):
        extends_to_basis([(1, 0), (0, 1), (1, 1)])
    with pytest.raises(LinearDependenceError):
        extends_to_basis_by_minors([(0, 0, 0)])


def _box_completion_exists(vs, box):
    """Search completions with entries in [-box, box] for a unimodular matrix."""
    rng = range(-box, box + 1)
    cands = np.array(list(itertools.product(rng, repeat=3)))
    if len(vs) == 2:
        n = np.cross(np.array(vs[0]), np.array(vs[1]))
        return bool(np.any(np.abs(cands @ n) == 1))
    (v,) = vs
    crosses = np.unique(np.cross(cands[:, None, :], cands[None, :, :]).reshape(-1, 3), axis=0)
    return bool(np.any(np.abs(crosses @ np.array(v)) == 1))


def test_extends_to_basis_agrees_with_box_search():
    rng = random.Random(7)
    seen = {True: 0, False: 0}
    for _ in range(300):
        k = rng.choice([1, 2, 2, 2])
        vs = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(k)]
        if rank(vs) < k:
            with pytest.raises(LinearDependenceError):
                extends_to_basis(vs)
            continue
        expected = _box_completion_exists(vs, 3 if k == 1 else 9)
        assert extends_to_basis(vs) == extends_to_basis_by_minors(vs) == expected, vs
        seen[expected] += 1
    assert seen[True] > 20 and seen[False] > 20


@given(st.integers(1, 3).flatmap(
    lambda k: st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=k, max_size=k)))
def test_snf_and_minor_routes_agree(vs):
    if rank(vs) < len(vs):
        return
    assert extends_to_basis(vs) == extends_to_basis_by_minors(vs)


def test_saturation_chart_recovers_coordinates():
    gens = [(2, 2, 0, 4), (0, 2, 2, 2)]
    basis, coords = saturation_chart(gens)
    assert len(basis) == 2
    assert extends_to_basis(basis)
    for g in gens:
        c = [sum(x * y for x, y in zip(g, col)) for col in zip(*coords)]
        assert tuple(sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(4)) == g
    # (1, 1, 0, 2) is in the saturation but not in the span of the generators
    half = (1, 1, 0, 2)
    c = [sum(x * y for x, y in zip(half, col)) for col in zip(*coords)]
    assert tuple(sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(4)) == half


def test_rejects_float_coordinates():
    with pytest.raises(TypeError):
        as_int_vector([1, 2.0])
    with pytest.raises(TypeError):
        as_int_vector([True, 0])
    assert as_int_vector(np.array([1, 2], dtype=np.int64)) == (1, 2)
