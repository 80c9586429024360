"""Exact integer linear algebra on small dense matrices.

Vectors are tuples of Python ints and matrices are tuples of row tuples, so
every value is immutable and arithmetic never overflows.  No floating point
is used anywhere in this module.
"""

from __future__ import annotations

import math
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


class LinearDependenceError(ValueError):
    """Raised when vectors required to be independent over Q are not."""


def as_int_vector(v: Iterable) -> IntVector:
    """Validate and convert ``v`` to an :data:`IntVector`.

    Floats are rejected outright, even integral ones, so that a malformed
    input file never silently rounds.
    """
    out = []
    for x in v:
        if isinstance(x, bool) or not isinstance(x, int):
            # numpy integers are accepted through __index__
            if hasattr(x, "__index__") and not isinstance(x, (bool, float)):
                out.append(int(x.__index__()))
                continue
            raise TypeError(f"non-integer lattice coordinate {x!r}")
        out.append(int(x))
    if not out:
        raise ValueError("lattice vectors need at least one coordinate")
    return tuple(out)


def as_int_matrix(rows: Iterable[Iterable]) -> IntMatrix:
    m = tuple(as_int_vector(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ValueError("matrix rows have unequal lengths")
    return m


def content(v: Sequence[int]) -> int:
    """Return the gcd of the absolute values of the entries (0 for the zero vector)."""
    return reduce(math.gcd, (abs(x) for x in v), 0)


def primitive(v: Sequence[int]) -> IntVector:
    g = content(v)
    if g == 0:
        raise ValueError("the zero vector has no primitive direction")
    return tuple(x // g for x in v)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence[int]]) -> int:
    """Rank over Q, by fraction-free row reduction."""
    a = [list(row) for row in m]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][col]
        for i in range(r + 1, nrows):
            f = a[i][col]
            if f:
                a[i] = [p * x - f * y for x, y in zip(a[i], a[r])]
                g = content(a[i])
                if g > 1:
                    a[i] = [x // g for x in a[i]]
        r += 1
        if r == nrows:
            break
    return r


def cross(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def kernel_normal(rows: Sequence[Sequence[int]]) -> IntVector:
    """Integer vector orthogonal to ``m - 1`` rows in Z^m (generalized cross product).

    Entry ``j`` is the signed maximal minor with column ``j`` deleted.  The
    result is zero exactly when the rows are dependent.
    """
    m = len(rows[0])
    if len(rows) != m - 1:
        raise ValueError("need exactly m - 1 rows in Z^m")
    out = []
    for j in range(m):
        minor = [row[:j] + row[j + 1:] for row in map(tuple, rows)]
        out.append((-1) ** j * det(minor))
    return tuple(out)


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with nonnegative
    entries forming a divisibility chain.  The decomposition is checked
    before returning.
    """
    a = [list(row) for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = [list(row) for row in identity(nrows)]
    v = [list(row) for row in identity(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(nrows, ncols)):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, nrows) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, ncols) if a[t][j]]
            if rest:
                _, i, j = min(rest)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    U, D, V = tuple(map(tuple, u)), tuple(map(tuple, a)), tuple(map(tuple, v))
    _check_smith(m, U, D, V)
    return U, D, V


def _check_smith(m, U, D, V) -> None:
    assert matmul(matmul(U, m), V) == D, "SNF transform does not reproduce D"
    assert abs(det(U)) == 1 and abs(det(V)) == 1, "SNF transform is not unimodular"
    diag = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            assert i == j or x == 0, "SNF result is not diagonal"
    for x, y in zip(diag, diag[1:]):
        assert x >= 0 and (y == 0 if x == 0 else y % x == 0), "SNF divisibility chain broken"


def invariant_factors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith normal form."""
    _, d, _ = smith_normal_form(m)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i])


def hermite_normal_form(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form ``H = U @ m`` with ``U`` unimodular.

    ``H`` is in row echelon form with positive pivots, and every entry above
    a pivot lies in ``[0, pivot)``.  It depends only on the orbit of ``m``
    under left multiplication by GL(n, Z).
    """
    a = [list(row) for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        while True:
            rows = [(abs(a[i][col]), i) for i in range(r, nrows) if a[i][col]]
            if not rows:
                break
            _, i = min(rows)
            a[r], a[i] = a[i], a[r]
            p = a[r][col]
            done = True
            for i in range(r + 1, nrows):
                if a[i][col]:
                    q = a[i][col] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if a[r][col] == 0:
            continue
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
        p = a[r][col]
        for i in range(r):
            q = a[i][col] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return tuple(map(tuple, a))


def _check_independent(vs: Sequence[Sequence[int]]) -> None:
    if not vs:
        raise ValueError("need at least one vector")
    m = len(vs[0])
    if len(vs) > m:
        raise LinearDependenceError(f"{len(vs)} vectors in Z^{m} cannot be independent")
    if rank(vs) < len(vs):
        raise LinearDependenceError("vectors are linearly dependent over Q")


def extends_to_basis(vs: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors can be completed to a basis of Z^m.

    Decided by the Smith normal form: every invariant factor must be 1.
    Dependent input raises :class:`LinearDependenceError` instead of
    returning False.
    """
    vs = as_int_matrix(vs)
    _check_independent(vs)
    return all(d == 1 for d in invariant_factors(vs))


def maximal_minor_gcd(vs: Sequence[Sequence[int]]) -> int:
    k, m = len(vs), len(vs[0])
    g = 0
    for cols in combinations(range(m), k):
        g = math.gcd(g, det([[row[c] for c in cols] for row in vs]))
        if g == 1:
            break
    return g


def extends_to_basis_by_minors(vs: Sequence[Sequence[int]]) -> bool:
    """Same predicate as :func:`extends_to_basis`, via the gcd of maximal minors."""
    vs = as_int_matrix(vs)
    _check_independent(vs)
    return maximal_minor_gcd(vs) == 1


def saturation_chart(generators: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Basis of the saturated lattice ``span_Q(generators) ∩ Z^m``.

    Returns ``(basis, coords)``: ``basis`` has one row per basis vector and
    ``coords`` is an ``m x r`` integer matrix such that any lattice vector
    ``x`` in the span satisfies ``x == row_vector(x @ coords) @ basis``.
    """
    gens = as_int_matrix(generators)
    m = len(gens[0])
    _, d, v = smith_normal_form(gens)
    r = sum(1 for i in range(min(len(d), m)) if d[i][i])
    v_inv = _unimodular_inverse(v)
    basis = v_inv[:r]
    coords = tuple(row[:r] for row in v)
    return basis, coords


def _unimodular_inverse(v: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix via its adjugate."""
    n = len(v)
    d = det(v)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    if n == 1:
        return ((d,),)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(v) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return tuple(tuple(x * d for x in row) for row in adj)
