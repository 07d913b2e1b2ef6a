"""Exact linear algebra over the rationals.

Vectors are tuples of ``Fraction``; matrices are tuples of row tuples.
An endomorphism matrix ``M`` acts on coordinate columns, so column ``c``
holds the image of the ``c``-th basis vector.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to ``Fraction``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def vec(values: Iterable) -> Vector:
    return tuple(frac(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def zero_matrix(rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return tuple((ZERO,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def is_zero(v) -> bool:
    if isinstance(v, tuple) and v and isinstance(v[0], tuple):
        return all(x == 0 for row in v for x in row)
    return all(x == 0 for x in v)


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b if b else a for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b if b else a for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    c = frac(c)
    return tuple(c * a for a in v)


def lincomb(coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c == 0:
            continue
        for k, x in enumerate(v):
            if x:
                out[k] += c * x
    return tuple(out)


def dot(u: Sequence, v: Sequence) -> Fraction:
    # skipping zero terms matters: most structure vectors are sparse
    out = ZERO
    for a, b in zip(u, v):
        if a and b:
            out += a * b
    return out


def transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(zip(*m))


def matvec(m: Matrix, v: Vector) -> Vector:
    return tuple(dot(row, v) for row in m)


def covec_mat(w: Vector, m: Matrix) -> Vector:
    """Row vector times matrix, i.e. the covector ``w o m``."""
    n = len(m[0]) if m else 0
    return tuple(dot(w, col) for col in transpose(m)) if n else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(add(r, s) for r, s in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(sub(r, s) for r, s in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(scale(c, r) for r in a)


def outer(v: Vector, w: Vector) -> Matrix:
    """The endomorphism ``w (x) v`` sending ``x`` to ``w(x) v``."""
    return tuple(tuple(a * b for b in w) for a in v)


def from_columns(cols: Sequence[Vector]) -> Matrix:
    return transpose(tuple(tuple(c) for c in cols))


def columns(m: Matrix) -> tuple:
    return transpose(m)


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(map(frac, r)) for r in rows]
    if not a:
        return (), ()
    nr, nc = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return tuple(tuple(row) for row in a[:r]), tuple(pivots)


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [unit(ncols, i) for i in range(ncols)]
    ncols = len(m[0])
    red, piv = rref(m)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of ``a x = b`` or ``None`` when inconsistent."""
    ncols = len(a[0])
    aug = [list(map(frac, row)) + [frac(bi)] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, piv):
        x[p] = row[-1]
    return tuple(x)


def det(m: Matrix) -> Fraction:
    a = [list(map(frac, r)) for r in m]
    n = len(a)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(map(frac, row)) + list(unit(n, i)) for i, row in enumerate(m)]
    red, piv = rref(aug)
    if tuple(piv[:n]) != tuple(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def leading_minors(m: Matrix) -> list[Fraction]:
    return [det(tuple(row[:k] for row in m[:k])) for k in range(1, len(m) + 1)]


def is_symmetric(m: Matrix) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i))


def coordinates(basis: Sequence[Vector], v: Vector) -> Vector | None:
    """Coefficients of ``v`` in ``basis`` or ``None`` when ``v`` is outside the span."""
    if not basis:
        return () if is_zero(v) else None
    return solve(from_columns(basis), v)


def restrict(m: Matrix, basis: Sequence[Vector]) -> Matrix:
    """Matrix of ``m`` on the invariant subspace spanned by ``basis``.

    Raises ``ValueError`` when the subspace is not invariant.
    """
    cols = []
    for b in basis:
        c = coordinates(basis, matvec(m, b))
        if c is None:
            raise ValueError("subspace is not invariant")
        cols.append(c)
    return from_columns(cols) if cols else ()


def power(m: Matrix, k: int) -> Matrix:
    out = identity(len(m))
    for _ in range(k):
        out = matmul(out, m)
    return out


def fmt(x: Fraction) -> str:
    """Canonical ``p`` or ``p/q`` string."""
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def column(m: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in m)
