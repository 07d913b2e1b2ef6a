"""Integer lattices in SU(2) x| H^n and first homology of their quotients."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError

IntMatrix = list  # list of lists of int

ADMISSIBLE_M = (1, 2, 3, 4, 6)


def _copy(m) -> IntMatrix:
    return [list(map(int, r)) for r in m]


def _eye(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def int_matmul(a, b) -> IntMatrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)] for i in range(len(a))]


def smith_normal_form(M) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """``(S, U, V)`` with ``U M V = S`` diagonal, ``d_1 | d_2 | ...``, ``d_i >= 0``."""
    A = _copy(M)
    r = len(A)
    c = len(A[0]) if r else 0
    U, V = _eye(r), _eye(c)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (A, V):
            for row in X:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        for X in (A, U):
            X[dst] = [x + f * y for x, y in zip(X[dst], X[src])]

    def add_col(src, dst, f):
        for X in (A, V):
            for row in X:
                row[dst] += f * row[src]

    t = 0
    while t < min(r, c):
        nz = [(abs(A[i][j]), i, j) for i in range(t, r) for j in range(t, c) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, r):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, c):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            U[t] = [-x for x in U[t]]
            A[t] = [-x for x in A[t]]
        t += 1
    if int_matmul(int_matmul(U, M), V) != A:
        raise AssertionError("Smith normal form certificate failed")
    return A, U, V


@dataclass(frozen=True)
class AbelianizationResult:
    invariant_factors: tuple
    free_rank: int

    @property
    def b1(self) -> int:
        return self.free_rank

    def to_dict(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank,
                "b1": self.b1}

    def __str__(self) -> str:
        parts = [f"Z_{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


def abelian_group_of(relations) -> AbelianizationResult:
    """Cokernel of the relation matrix (rows are relations over the generators)."""
    rows = _copy(relations)
    ngen = len(rows[0]) if rows else 0
    if not rows:
        return AbelianizationResult((), ngen)
    S, _, _ = smith_normal_form(rows)
    diag = [S[i][i] for i in range(min(len(S), ngen))]
    nonzero = [d for d in diag if d]
    return AbelianizationResult(tuple(d for d in nonzero if d > 1), ngen - len(nonzero))


def rotation_integer_form(m: int):
    """Integer matrix of exact order ``m`` conjugate to the plane rotation by ``2 pi / m``."""
    if m < 1:
        raise PreconditionError("m must be positive")
    if m == 1:
        return _eye(2)
    if m == 2:
        return [[-1, 0], [0, -1]]
    for t in (-1, 0, 1):
        E = [[0, -1], [1, t]]
        P, order = E, 1
        while P != _eye(2) and order <= m:
            P, order = int_matmul(P, E), order + 1
        if order == m:
            return E
    return None


def block_rotation(m: int, n: int) -> IntMatrix:
    """``2n`` diagonal copies of ``rotation_integer_form(m)`` acting on Z^{4n}."""
    E = rotation_integer_form(m)
    if E is None:
        raise PreconditionError(f"no integer rotation of order {m}")
    d = 4 * n
    out = [[0] * d for _ in range(d)]
    for b in range(2 * n):
        for i in range(2):
            for j in range(2):
                out[2 * b + i][2 * b + j] = E[i][j]
    return out


def gamma_abelianization(m: int, n: int) -> AbelianizationResult:
    if m not in ADMISSIBLE_M:
        raise PreconditionError(f"m = {m} is not one of {ADMISSIBLE_M}")
    if n < 1:
        raise PreconditionError("n must be positive")
    E = block_rotation(m, n)
    d = 4 * n
    rel = [[m] + [0] * d]
    for i in range(d):
        rel.append([0] + [E[i][j] - (i == j) for j in range(d)])
    return abelian_group_of(rel)


@dataclass(frozen=True)
class SemidirectPresentation:
    """Finite group ``<gens | relators>`` acting on ``Z^d``.

    Words are sequences of nonzero integers: ``k`` is generator ``k`` (1-based) and
    ``-k`` its inverse.
    """

    generators: tuple
    relators: tuple
    d: int
    action: tuple

    def __post_init__(self):
        g = len(self.generators)
        if len(self.action) != g:
            raise PreconditionError("need one action matrix per generator")
        for w in self.relators:
            if any(not isinstance(x, int) or x == 0 or abs(x) > g for x in w):
                raise PreconditionError(f"malformed relator {w!r}")
        for A in self.action:
            if len(A) != self.d or any(len(r) != self.d for r in A):
                raise PreconditionError("action matrix has the wrong size")
            if abs(_int_det(A)) != 1:
                raise PreconditionError("action matrix is not unimodular")


def _int_det(A) -> int:
    from fractions import Fraction
    from . import linalg as la
    return int(la.det([[Fraction(x) for x in r] for r in A])) if A else 1


def semidirect_abelianization(P: SemidirectPresentation) -> AbelianizationResult:
    g, d = len(P.generators), P.d
    rows = []
    for w in P.relators:
        row = [0] * (g + d)
        for x in w:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    # g u g^-1 = rho(g) u kills the image of rho(g) - I: one relation per column
    for A in P.action:
        for j in range(d):
            rows.append([0] * g + [A[i][j] - (i == j) for i in range(d)])
    if not rows:
        return AbelianizationResult((), g + d)
    return abelian_group_of(rows)


def cyclic_presentation(m: int, n: int) -> SemidirectPresentation:
    return SemidirectPresentation(("t",), ((1,) * m,), 4 * n, (block_rotation(m, n),))


def _quaternion_blocks(n: int):
    from .hypercomplex import LI, LJ, block_diagonal
    conv = lambda M: [[int(x) for x in r] for r in block_diagonal([M] * n)]
    return conv(LI), conv(LJ)


def q8_presentation(n: int) -> SemidirectPresentation:
    """``<x, y | x^4, x^2 y^-2, y x y^-1 x>`` acting by left multiplication by ``i`` and ``j``."""
    if n < 1:
        raise PreconditionError("n must be positive")
    X, Y = _quaternion_blocks(n)
    rels = ((1, 1, 1, 1), (1, 1, -2, -2), (2, 1, -2, 1))
    return SemidirectPresentation(("x", "y"), rels, 4 * n, (X, Y))


def q8_abelianization(n: int) -> AbelianizationResult:
    return semidirect_abelianization(q8_presentation(n))
