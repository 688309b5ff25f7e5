"""Exact integer and rational linear algebra.

Vectors are plain tuples of Python ints; matrices are lists of row lists.
Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]
Matrix = list[list[int]]


class DimensionError(ValueError):
    """Operands live in lattices of different rank."""


def vec(coords: Iterable[int]) -> Vector:
    out = tuple(coords)
    for c in out:
        if isinstance(c, bool) or not isinstance(c, int):
            raise TypeError(f"lattice coordinates must be integers, got {c!r}")
    return out


def _check_rank(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise DimensionError(f"rank mismatch: {len(a)} vs {len(b)}")


def pair(rho: Sequence, mu: Sequence):
    """Natural pairing of a covector with a vector (exact dot product)."""
    _check_rank(rho, mu)
    return sum(r * m for r, m in zip(rho, mu))


def add(a: Sequence[int], b: Sequence[int]) -> Vector:
    _check_rank(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    _check_rank(a, b)
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> Vector:
    return tuple(k * x for x in a)


def neg(a: Sequence[int]) -> Vector:
    return tuple(-x for x in a)


def content(v: Sequence[int]) -> int:
    return reduce(gcd, v, 0)


def primitive(v: Sequence[int]) -> Vector:
    """Return the primitive lattice vector on the ray through ``v``."""
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return tuple(x // g for x in v)


def integerize(v: Sequence[Fraction | int]) -> Vector:
    """Scale a rational vector by a positive factor to a primitive integer vector."""
    v = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    if not any(ints):
        return tuple(ints)
    return primitive(ints)


def normalize_rational(v: Sequence[Fraction | int]) -> tuple[Vector, int]:
    """Canonical form of a rational covector: integer coords and a positive denominator.

    The gcd of all coordinates together with the denominator is 1.
    """
    v = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = gcd(content(ints), den)
    return tuple(x // g for x in ints), den // g


# ---------------------------------------------------------------------------
# rational row reduction


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : rows . x = 0} as primitive integer vectors (not a lattice basis)."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(integerize(x))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> list[Fraction] | None:
    """One rational solution of rows . x = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def independent_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Indices of a maximal linearly independent subset, chosen greedily in order."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for idx, r in enumerate(rows):
        v = [Fraction(x) for x in r]
        for b, p in zip(basis, pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * c for a, c in zip(v, b)]
        p = next((c for c in range(ncols) if v[c] != 0), None)
        if p is None:
            continue
        v = [a / v[p] for a in v]
        basis.append(v)
        pivots.append(p)
        chosen.append(idx)
    return chosen


# ---------------------------------------------------------------------------
# integer normal forms


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def det(a: Matrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``U A V = D`` with U, V unimodular and d1 | d2 | ...

    Diagonal entries are nonnegative. Works for any shape, including empty.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(r) for r in a]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col_dst += k * col_src
        for r in d:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j] != 0]
            if not nz:
                return u, d, v
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = d[i][t] // p
                if q:
                    add_row(t, i, -q)
                if d[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = d[t][j] // p
                if q:
                    add_col(t, j, -q)
                if d[t][j]:
                    clean = False
            if not clean:
                continue
            # pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def hermite_normal_form(a: Matrix) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form ``H = U A``.

    H is upper triangular in echelon form with positive pivots, entries above each
    pivot reduced into ``[0, pivot)``, and zero rows dropped. U is unimodular
    (returned with all rows, so ``U A`` carries trailing zero rows).
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    h = [list(r) for r in a]
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if h[i][c] != 0]
            if not nz:
                break
            i = min(nz, key=lambda k: abs(h[k][c]))
            h[r], h[i] = h[i], h[r]
            u[r], u[i] = u[i], u[r]
            done = True
            for k in range(r + 1, rows):
                q = h[k][c] // h[r][c]
                if q:
                    h[k] = [x - q * y for x, y in zip(h[k], h[r])]
                    u[k] = [x - q * y for x, y in zip(u[k], u[r])]
                if h[k][c]:
                    done = False
            if done:
                break
        if all(h[i][c] == 0 for i in range(r, rows)):
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for k in range(r):
            q = h[k][c] // h[r][c]
            if q:
                h[k] = [x - q * y for x, y in zip(h[k], h[r])]
                u[k] = [x - q * y for x, y in zip(u[k], u[r])]
        r += 1
    return h[:r], u


def kernel_lattice(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Lattice basis of {x in Z^n : rows . x = 0}, in Hermite normal form.

    The result is canonical for the rational subspace since that lattice is saturated.
    """
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    _, d, v = smith_normal_form([list(r) for r in rows])
    r = sum(1 for i in range(min(len(d), ncols)) if d[i][i] != 0)
    basis = [[v[i][j] for i in range(ncols)] for j in range(r, ncols)]
    if not basis:
        return []
    h, _ = hermite_normal_form(basis)
    return [tuple(x) for x in h]


def solve_integer(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Vector | None:
    """Integer coefficients c with sum c_i basis_i = v, or None if v is not in the span lattice.

    The basis vectors are assumed linearly independent.
    """
    n = len(v)
    for b in basis:
        _check_rank(b, v)
    if not basis:
        return () if not any(v) else None
    # columns of A are basis vectors: A c = v
    a = [[b[i] for b in basis] for i in range(n)]
    u, d, w = smith_normal_form(a)
    uv = [sum(u[i][k] * v[k] for k in range(n)) for i in range(n)]
    k = len(basis)
    y = [0] * k
    for i in range(n):
        di = d[i][i] if i < k else 0
        if di == 0:
            if uv[i] != 0:
                return None
        else:
            if uv[i] % di:
                return None
            y[i] = uv[i] // di
    return tuple(sum(w[i][j] * y[j] for j in range(k)) for i in range(k))


def lattice_membership(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """True iff ``v`` is an integer combination of ``basis``.

    The basis may be linearly dependent; it is first replaced by its Hermite basis.
    """
    for b in basis:
        _check_rank(b, v)
    if not basis:
        return not any(v)
    h, _ = hermite_normal_form([list(b) for b in basis])
    return solve_integer(h, v) is not None
