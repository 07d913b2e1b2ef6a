"""Reference computations kept independent of the package.

Algebras are plain ``{(i, j): [c_0, ..., c_{n-1}]}`` tables over sympy rationals
with ``i < j``; forms are ``{sorted index tuple: value}`` dicts.  Nothing here
calls into ``contactlie`` except :func:`table_of`, which only reads numbers.
"""
from __future__ import annotations

import random
from itertools import combinations
from math import gcd

import sympy as sp
from sympy import Rational

# ---------------------------------------------------------------- algebras


def table_of(L) -> dict:
    n = L.dim
    return {(i, j): [Rational(x.numerator, x.denominator) for x in L.c[i][j]]
            for i in range(n) for j in range(i + 1, n)}


def to_package(n: int, table: dict):
    from contactlie import LieAlgebra
    from fractions import Fraction
    conv = lambda x: Fraction(int(sp.fraction(x)[0]), int(sp.fraction(x)[1]))
    return LieAlgebra.from_brackets(n, {k: [conv(x) for x in v] for k, v in table.items()})


def basis_bracket(table: dict, n: int, i: int, j: int) -> list:
    if i == j:
        return [Rational(0)] * n
    if i < j:
        return list(table.get((i, j), [Rational(0)] * n))
    return [-x for x in table.get((j, i), [Rational(0)] * n)]


def bracket(table: dict, n: int, x, y) -> list:
    out = [Rational(0)] * n
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j] == 0:
                continue
            b = basis_bracket(table, n, i, j)
            for k in range(n):
                out[k] += x[i] * y[j] * b[k]
    return out


def unit(n: int, i: int) -> list:
    return [Rational(int(k == i)) for k in range(n)]


def jacobi_holds(table: dict, n: int) -> bool:
    for i, j, k in combinations(range(n), 3):
        e = lambda a: unit(n, a)
        s = [a + b + c for a, b, c in zip(
            bracket(table, n, bracket(table, n, e(i), e(j)), e(k)),
            bracket(table, n, bracket(table, n, e(j), e(k)), e(i)),
            bracket(table, n, bracket(table, n, e(k), e(i)), e(j)))]
        if any(s):
            return False
    return True


def derived_dim(table: dict, n: int) -> int:
    rows = [v for v in table.values()]
    return sp.Matrix(rows).rank() if rows else 0


def center_dim(table: dict, n: int) -> int:
    # x central iff sum_i x_i [e_i, e_j] = 0 for all j
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([basis_bracket(table, n, i, j)[k] for i in range(n)])
    return n - sp.Matrix(rows).rank()


def ad_matrix(table: dict, n: int, x) -> sp.Matrix:
    return sp.Matrix.hstack(*[sp.Matrix(bracket(table, n, x, unit(n, j))) for j in range(n)])


def killing_form(table: dict, n: int) -> sp.Matrix:
    ads = [ad_matrix(table, n, unit(n, i)) for i in range(n)]
    return sp.Matrix(n, n, lambda i, j: (ads[i] * ads[j]).trace())


def change_basis(table: dict, n: int, P: sp.Matrix) -> dict:
    """Table of the same algebra in the basis formed by the columns of ``P``."""
    Pi = P.inv()
    cols = [list(P[:, a]) for a in range(n)]
    out = {}
    for a, b in combinations(range(n), 2):
        v = Pi * sp.Matrix(bracket(table, n, cols[a], cols[b]))
        if any(v):
            out[(a, b)] = [sp.nsimplify(x) for x in v]
    return out


# ------------------------------------------------------------ dim-3 labels


def dim3_fingerprint(table: dict) -> tuple[str, object]:
    """Isomorphism class of a 3-dim real Lie algebra by invariants only."""
    n = 3
    d = derived_dim(table, n)
    if d == 0:
        return "ℝ³", None
    K = killing_form(table, n)
    if d == 3:
        ev = K.eigenvals()
        return ("so(3)" if all(e < 0 for e in ev) else "sl(2,ℝ)"), None
    if d == 1:
        der = sp.Matrix(list(table.values())).rowspace()[0]
        # derived algebra central gives the Heisenberg algebra, otherwise aff(R) x R
        central = all(not any(bracket(table, n, list(der), unit(n, j))) for j in range(n))
        return ("𝔥₁^ℝ" if central else "aff(ℝ)×ℝ"), None
    # d == 2: derived ideal is abelian R^2, pick x outside it
    D = sp.Matrix(list(table.values())).rowspace()
    Dm = sp.Matrix.vstack(*D)
    x = next(unit(n, i) for i in range(n) if sp.Matrix.vstack(Dm, sp.Matrix([unit(n, i)])).rank() == 3)
    B = sp.Matrix.hstack(*[r.T for r in D])
    M = sp.Matrix.hstack(*[B.solve_least_squares(sp.Matrix(bracket(table, n, x, list(r)))) for r in D])
    t, det = M.trace(), M.det()
    disc = t ** 2 - 4 * det
    if (M - t / 2 * sp.eye(2)).is_zero_matrix:
        return "r_{3,1}", None
    if disc < 0:
        lam = sp.sqrt(t ** 2 / (4 * det - t ** 2))
        return "r′_{3,λ}", sp.nsimplify(lam)
    return "other", None


# ------------------------------------------------------------------ forms


def perm_sign(seq) -> int:
    seq = list(seq)
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
            elif seq[i] == seq[j]:
                return 0
    return s


def form_value(comps: dict, idx) -> object:
    s = perm_sign(idx)
    if s == 0:
        return 0
    return s * comps.get(tuple(sorted(idx)), 0)


def form_on_vectors(comps: dict, vecs) -> object:
    k = len(vecs)
    n = len(vecs[0])
    total = 0
    for idx in combinations(range(n), k):
        c = comps.get(idx, 0)
        if c == 0:
            continue
        total += c * sp.Matrix([[vecs[a][idx[b]] for b in range(k)] for a in range(k)]).det()
    return total


def ce_d(table: dict, n: int, comps: dict, k: int) -> dict:
    """Chevalley-Eilenberg differential with trivial coefficients, full formula."""
    out = {}
    if k == 0:
        return out
    for idx in combinations(range(n), k + 1):
        tot = 0
        for a, b in combinations(range(k + 1), 2):
            rest = [unit(n, idx[c]) for c in range(k + 1) if c not in (a, b)]
            br = basis_bracket(table, n, idx[a], idx[b])
            tot += (-1) ** (a + b) * form_on_vectors(comps, [br] + rest)
        if tot != 0:
            out[idx] = sp.nsimplify(tot)
    return out


def wedge(a: dict, b: dict) -> dict:
    out = {}
    for I, x in a.items():
        for J, y in b.items():
            if set(I) & set(J):
                continue
            key = tuple(sorted(I + J))
            out[key] = out.get(key, 0) + perm_sign(I + J) * x * y
    return {k: v for k, v in out.items() if v != 0}


def add_forms(*fs, coeffs=None) -> dict:
    coeffs = coeffs or [1] * len(fs)
    out = {}
    for c, f in zip(coeffs, fs):
        for k, v in f.items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v != 0}


def two_form(pairs) -> dict:
    """``sum c * e^a ^ e^b`` from ``[(a, b, c), ...]`` with any order of ``a, b``."""
    out = {}
    for a, b, c in pairs:
        key = (min(a, b), max(a, b))
        out[key] = out.get(key, 0) + (c if a < b else -c)
    return {k: v for k, v in out.items() if v != 0}


def package_form_dict(w) -> dict:
    """Scalar package form as a sympy dict (reads components only)."""
    return {k: Rational(v[0].numerator, v[0].denominator) for k, v in w.comps.items()}


# ---------------------------------------------------- integer normal forms


def determinantal_invariants(M) -> list[int]:
    """Invariant factors from gcds of minors; slow, only for small matrices."""
    A = sp.Matrix(M)
    r, c = A.shape
    ds = [1]
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = gcd(g, int(A.extract(list(rows), list(cols)).det()))
        if g == 0:
            break
        ds.append(g)
    return [ds[i] // ds[i - 1] for i in range(1, len(ds))]


def integer_rotation_exists(m: int) -> bool:
    """2 cos(2 pi / m) is an integer iff its minimal polynomial has degree 1."""
    if m <= 2:
        return True
    return sp.totient(m) // 2 == 1


# ------------------------------------------------- random valid algebras


def _block(rng: random.Random, k: int) -> dict:
    """A random Lie algebra table of dimension ``k`` that is valid by construction."""
    kinds = ["abelian", "semidirect", "nilpotent"]
    if k == 2:
        kinds.append("aff")
    if k == 3:
        kinds += ["so3", "sl2"]
    kind = rng.choice(kinds)
    z = lambda: [Rational(0)] * k
    t = {}
    if kind == "aff":
        t[(0, 1)] = [Rational(0), Rational(1)]
    elif kind == "so3":
        for (i, j), m in (((0, 1), 2), ((1, 2), 0), ((0, 2), 1)):
            v = z()
            v[m] = Rational(-1 if (i, j) == (0, 2) else 1)
            t[(i, j)] = v
    elif kind == "sl2":
        t[(0, 1)] = [Rational(0), Rational(2), Rational(0)]
        t[(0, 2)] = [Rational(0), Rational(0), Rational(-2)]
        t[(1, 2)] = [Rational(1), Rational(0), Rational(0)]
    elif kind == "semidirect" and k >= 2:
        # R e_0 acting on R^{k-1} by an arbitrary integer matrix
        for j in range(1, k):
            v = z()
            for i in range(1, k):
                v[i] = Rational(rng.randint(-2, 2))
            t[(0, j)] = v
    elif kind == "nilpotent" and k >= 3:
        # central extension of R^a by random 2-forms with values in R^b
        b = rng.randint(1, k - 2)
        a = k - b
        for i, j in combinations(range(a), 2):
            v = z()
            for m in range(a, k):
                v[m] = Rational(rng.randint(-2, 2))
            if any(v):
                t[(i, j)] = v
    return t


def random_lie_table(rng: random.Random, n: int) -> dict:
    sizes, left = [], n
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    table, off = {}, 0
    for s in sizes:
        for (i, j), v in _block(rng, s).items():
            w = [Rational(0)] * n
            w[off:off + s] = v
            table[(off + i, off + j)] = w
        off += s
    return change_basis(table, n, random_unimodular(rng, n))


def random_unimodular(rng: random.Random, n: int) -> sp.Matrix:
    Lo = sp.eye(n)
    Up = sp.eye(n)
    for i in range(n):
        for j in range(i):
            Lo[i, j] = rng.randint(-1, 1)
            Up[j, i] = rng.randint(-1, 1)
    perm = list(range(n))
    rng.shuffle(perm)
    P = sp.Matrix(n, n, lambda i, j: int(perm[i] == j))
    return P * Lo * Up


def random_antisymmetric_table(rng: random.Random, n: int) -> dict:
    return {(i, j): [Rational(rng.randint(-1, 1)) for _ in range(n)]
            for i, j in combinations(range(n), 2)}



# ------------------------------------------------------------- connections


def koszul(table: dict, n: int, G: sp.Matrix) -> list:
    """Levi-Civita coefficients ``nabla_{e_i} e_j`` from the left-invariant Koszul formula."""
    Gi = G.inv()
    g = lambda u, v: (sp.Matrix(u).T * G * sp.Matrix(v))[0]
    e = lambda a: unit(n, a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            low = [(g(bracket(table, n, e(i), e(j)), e(k)) - g(bracket(table, n, e(j), e(k)), e(i))
                    + g(bracket(table, n, e(k), e(i)), e(j))) / 2 for k in range(n)]
            row.append(list(Gi * sp.Matrix(low)))
        out.append(row)
    return out


def curvature_from(table: dict, n: int, coeff: list) -> list:
    """``R[i][j]`` as a sympy matrix from connection coefficients."""
    ops = [sp.Matrix.hstack(*[sp.Matrix(coeff[i][j]) for j in range(n)]) for i in range(n)]
    op_of = lambda v: sum((v[a] * ops[a] for a in range(n)), sp.zeros(n, n))
    return [[ops[i] * ops[j] - ops[j] * ops[i] - op_of(basis_bracket(table, n, i, j)) for j in range(n)]
            for i in range(n)]
