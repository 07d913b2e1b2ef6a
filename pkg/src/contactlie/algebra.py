"""Lie algebras over Q: structure constants, subspaces, forms and metrics.

Basis indices are 0-based in code and 1-based in every report.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from . import linalg as la
from .errors import DimensionError, PreconditionError
from .linalg import ONE, ZERO, Matrix, Vector, frac


class LieAlgebra:
    """Structure constants ``c[i][j][k]``: coefficient of ``e_k`` in ``[e_i, e_j]``.

    Antisymmetry is enforced on construction; the Jacobi identity is not
    (see :func:`jacobi_check`).
    """

    __slots__ = ("dim", "c")

    def __init__(self, dim: int, c):
        if dim < 1:
            raise DimensionError("dimension must be positive")
        c = tuple(tuple(la.vec(c[i][j]) for j in range(dim)) for i in range(dim))
        if len(c) != dim or any(len(c[i][j]) != dim for i in range(dim) for j in range(dim)):
            raise DimensionError("structure tensor has the wrong shape")
        for i in range(dim):
            if not la.is_zero(c[i][i]):
                raise ValueError(f"[e{i + 1},e{i + 1}] must vanish")
            for j in range(i):
                if c[i][j] != la.scale(-1, c[j][i]):
                    raise ValueError(f"bracket not antisymmetric on (e{j + 1},e{i + 1})")
        self.dim = dim
        self.c = c

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping) -> "LieAlgebra":
        """Build from ``{(i, j): value}`` with 0-based ``i != j``.

        ``value`` is a full coordinate vector or a sparse ``{k: coeff}`` map.
        """
        c = [[list(la.zeros(dim)) for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in brackets.items():
            if i == j:
                raise ValueError("diagonal bracket given")
            if isinstance(v, Mapping):
                w = [ZERO] * dim
                for k, x in v.items():
                    w[k] += frac(x)
                v = w
            v = la.vec(v)
            if len(v) != dim:
                raise DimensionError("bracket value has the wrong length")
            c[i][j] = list(v)
            c[j][i] = [-x for x in v]
        return cls(dim, c)

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls.from_brackets(dim, {})

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self.c == other.c

    def __hash__(self):
        return hash((self.dim, self.c))

    def __repr__(self) -> str:
        nz = [(i + 1, j + 1) for i in range(self.dim) for j in range(i + 1, self.dim)
              if not la.is_zero(self.c[i][j])]
        return f"LieAlgebra(dim={self.dim}, nonzero_brackets={nz})"

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        out = [ZERO] * n
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0 or i == j:
                    continue
                f = x[i] * y[j]
                for k, v in enumerate(self.c[i][j]):
                    if v:
                        out[k] += f * v
        return tuple(out)

    def ad(self, x: Sequence) -> Matrix:
        n = self.dim
        return la.from_columns([self.bracket(x, la.unit(n, j)) for j in range(n)])

    def ad_basis(self, i: int) -> Matrix:
        return la.from_columns([self.c[i][j] for j in range(self.dim)])

    def is_abelian(self) -> bool:
        return all(la.is_zero(self.c[i][j]) for i in range(self.dim) for j in range(self.dim))

    def change_basis(self, p: Matrix) -> "LieAlgebra":
        """Same algebra written in the basis given by the columns of ``p``."""
        n = self.dim
        pinv = la.inverse(p)
        cols = la.columns(p)
        new = {}
        for a in range(n):
            for b in range(a + 1, n):
                new[(a, b)] = la.matvec(pinv, self.bracket(cols[a], cols[b]))
        return LieAlgebra.from_brackets(n, new)

    def direct_sum(self, other: "LieAlgebra") -> "LieAlgebra":
        n, m = self.dim, other.dim
        br = {}
        for i in range(n):
            for j in range(i + 1, n):
                br[(i, j)] = self.c[i][j] + la.zeros(m)
        for i in range(m):
            for j in range(i + 1, m):
                br[(n + i, n + j)] = la.zeros(n) + other.c[i][j]
        return LieAlgebra.from_brackets(n + m, br)


@dataclass(frozen=True)
class JacobiResult:
    ok: bool
    triple: tuple | None = None
    defect: Vector | None = None

    def __bool__(self) -> bool:
        return self.ok


def jacobiator(L: LieAlgebra, i: int, j: int, k: int) -> Vector:
    b = L.bracket
    return la.add(la.add(b(L.c[i][j], la.unit(L.dim, k)), b(L.c[j][k], la.unit(L.dim, i))),
                  b(L.c[k][i], la.unit(L.dim, j)))


def jacobi_check(L: LieAlgebra) -> JacobiResult:
    """``ok`` or the first triple ``i<j<k`` (1-based) with a nonzero Jacobiator."""
    for i, j, k in combinations(range(L.dim), 3):
        d = jacobiator(L, i, j, k)
        if not la.is_zero(d):
            return JacobiResult(False, (i + 1, j + 1, k + 1), d)
    return JacobiResult(True)


class Subspace:
    """A subspace of Q^n stored as its reduced row echelon basis."""

    __slots__ = ("n", "basis")

    def __init__(self, n: int, vectors: Iterable[Sequence] = ()):
        vectors = [la.vec(v) for v in vectors]
        if any(len(v) != n for v in vectors):
            raise DimensionError("vector length does not match ambient dimension")
        self.n = n
        self.basis = la.rref(vectors)[0] if vectors else ()

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, la.identity(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self) -> str:
        rows = [[la.fmt(x) for x in v] for v in self.basis]
        return f"Subspace(n={self.n}, basis={rows})"

    def contains(self, v: Sequence) -> bool:
        return la.rank(self.basis + (la.vec(v),)) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.n, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace(self.n)
        # x = sum a_i u_i = sum b_j w_j
        cols = list(self.basis) + [la.scale(-1, w) for w in other.basis]
        ker = la.nullspace(la.from_columns(cols))
        return Subspace(self.n, [la.lincomb(k[:self.dim], self.basis, self.n) for k in ker])

    def is_zero(self) -> bool:
        return self.dim == 0


def bracket_span(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    return Subspace(L.dim, [L.bracket(x, y) for x in a.basis for y in b.basis])


def center(L: LieAlgebra) -> Subspace:
    n = L.dim
    # x in the center iff sum_i x_i c[i][j] = 0 for every j
    rows = [[L.c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return Subspace(n, la.nullspace(rows, n))


def centralizer(L: LieAlgebra, s: Subspace) -> Subspace:
    n = L.dim
    rows = []
    for y in s.basis:
        ady = L.ad(y)
        rows.extend(ady)
    if not rows:
        return Subspace.whole(n)
    return Subspace(n, la.nullspace([la.scale(-1, r) for r in rows], n))


@dataclass(frozen=True)
class DerivedSeries:
    terms: tuple
    lower_central: tuple
    is_solvable: bool
    is_2step_solvable: bool
    is_nilpotent: bool

    @property
    def derived_algebra(self) -> Subspace:
        return self.terms[1] if len(self.terms) > 1 else self.terms[0]


def derived_series(L: LieAlgebra) -> DerivedSeries:
    g = Subspace.whole(L.dim)
    terms = [g]
    while True:
        nxt = bracket_span(L, terms[-1], terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    lower = [g]
    while True:
        nxt = bracket_span(L, g, lower[-1])
        if nxt == lower[-1]:
            break
        lower.append(nxt)
    second = terms[2] if len(terms) > 2 else terms[-1]
    return DerivedSeries(
        terms=tuple(terms),
        lower_central=tuple(lower),
        is_solvable=terms[-1].is_zero(),
        is_2step_solvable=second.is_zero(),
        is_nilpotent=lower[-1].is_zero(),
    )


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


class Form:
    """Alternating ``k``-linear map on Q^n with values in Q^m.

    Components are stored only for strictly increasing index tuples with a
    nonzero value.  ``m == 1`` gives ordinary scalar forms.
    """

    __slots__ = ("n", "k", "m", "comps")

    def __init__(self, n: int, k: int, m: int = 1, comps: Mapping | None = None):
        # k > n is allowed and gives the zero form
        if k < 0:
            raise DimensionError(f"negative degree {k}")
        self.n, self.k, self.m = n, k, m
        clean = {}
        for idx, val in (comps or {}).items():
            idx = tuple(idx)
            if len(idx) != k or any(not 0 <= i < n for i in idx):
                raise DimensionError(f"bad index tuple {idx}")
            if list(idx) != sorted(set(idx)):
                raise ValueError("components must be keyed by strictly increasing tuples")
            val = (frac(val),) if not isinstance(val, (tuple, list)) else la.vec(val)
            if len(val) != m:
                raise DimensionError("value has the wrong target dimension")
            if not la.is_zero(val):
                clean[idx] = val
        self.comps = clean

    @classmethod
    def from_function(cls, n: int, k: int, m: int, f: Callable) -> "Form":
        comps = {}
        for idx in combinations(range(n), k):
            v = f(idx)
            if m == 1 and not isinstance(v, (tuple, list)):
                v = (v,)
            comps[idx] = v
        return cls(n, k, m, comps)

    @classmethod
    def basis(cls, n: int, idx: Sequence[int], coeff=1) -> "Form":
        """``coeff * e^{idx}`` for 0-based ``idx`` (any order, sign tracked)."""
        idx = tuple(idx)
        if len(set(idx)) != len(idx):
            return cls(n, len(idx))
        s = _perm_sign(idx)
        return cls(n, len(idx), 1, {tuple(sorted(idx)): s * frac(coeff)})

    @classmethod
    def from_covector(cls, w: Sequence) -> "Form":
        return cls(len(w), 1, 1, {(i,): x for i, x in enumerate(la.vec(w))})

    def covector(self) -> Vector:
        if self.k != 1 or self.m != 1:
            raise DimensionError("not a scalar 1-form")
        return tuple(self.at(i)[0] for i in range(self.n))

    def at(self, *idx: int) -> Vector:
        """Value on basis vectors ``e_idx`` (0-based, any order)."""
        if len(set(idx)) != len(idx):
            return la.zeros(self.m)
        key = tuple(sorted(idx))
        v = self.comps.get(key)
        if v is None:
            return la.zeros(self.m)
        return v if _perm_sign(idx) > 0 else la.scale(-1, v)

    def scalar(self, *idx: int) -> Fraction:
        if self.m != 1:
            raise DimensionError("vector-valued form")
        return self.at(*idx)[0]

    def evaluate(self, *vectors: Sequence) -> Vector:
        if len(vectors) != self.k:
            raise DimensionError("wrong number of arguments")
        out = la.zeros(self.m)
        for idx, val in self.comps.items():
            minor = tuple(tuple(v[i] for i in idx) for v in vectors)
            d = la.det(minor) if self.k else ONE
            if d:
                out = la.add(out, la.scale(d, val))
        return out

    def evaluate_scalar(self, *vectors: Sequence) -> Fraction:
        return self.evaluate(*vectors)[0]

    def component(self, r: int) -> "Form":
        return Form(self.n, self.k, 1, {i: (v[r],) for i, v in self.comps.items()})

    @classmethod
    def stack(cls, forms: Sequence["Form"]) -> "Form":
        """Combine scalar forms into one vector-valued form."""
        n, k = forms[0].n, forms[0].k
        keys = set().union(*(f.comps for f in forms))
        return cls(n, k, len(forms), {i: tuple(f.at(*i)[0] for f in forms) for i in keys})

    def pullback(self, p: Matrix) -> "Form":
        """Form on Q^c given by ``w(P x_1, ..., P x_k)`` for the n-by-c matrix ``p``."""
        cols = la.columns(p)
        return Form.from_function(len(cols), self.k, self.m,
                                  lambda idx: self.evaluate(*(cols[i] for i in idx)))

    def _check(self, other: "Form"):
        if (self.n, self.k, self.m) != (other.n, other.k, other.m):
            raise DimensionError("forms of different type")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        comps = dict(self.comps)
        for i, v in other.comps.items():
            comps[i] = la.add(comps.get(i, la.zeros(self.m)), v)
        return Form(self.n, self.k, self.m, comps)

    def __neg__(self) -> "Form":
        return self.scale(-1)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c) -> "Form":
        return Form(self.n, self.k, self.m, {i: la.scale(c, v) for i, v in self.comps.items()})

    def __rmul__(self, c) -> "Form":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Form) and (self.n, self.k, self.m) == (other.n, other.k, other.m)
                and self.comps == other.comps)

    def __hash__(self):
        return hash((self.n, self.k, self.m, tuple(sorted(self.comps.items()))))

    def is_zero(self) -> bool:
        return not self.comps

    def is_multiple_of(self, other: "Form") -> Fraction | None:
        """``c`` with ``self == c * other`` (``other`` nonzero), else ``None``."""
        self._check(other)
        if other.is_zero():
            return None
        idx, val = next(iter(other.comps.items()))
        r = next(i for i, x in enumerate(val) if x)
        c = self.at(*idx)[r] / val[r]
        return c if self == other.scale(c) else None

    def __repr__(self) -> str:
        terms = []
        for idx, v in sorted(self.comps.items()):
            name = "e^" + "".join(str(i + 1) for i in idx) if self.k else "1"
            val = la.fmt(v[0]) if self.m == 1 else "(" + ",".join(la.fmt(x) for x in v) + ")"
            terms.append(f"{val}*{name}")
        return f"Form(k={self.k}, m={self.m}: " + (" + ".join(terms) or "0") + ")"


VectorValuedForm = Form


def zero_form(n: int, k: int, m: int = 1) -> Form:
    return Form(n, k, m)


def wedge(a: Form, b: Form) -> Form:
    """``a ^ b`` for a scalar form ``a``; ``b`` may be vector valued."""
    if a.m != 1:
        raise DimensionError("left factor must be scalar")
    if a.n != b.n:
        raise DimensionError("forms on different spaces")
    p, q, n = a.k, b.k, a.n
    comps = {}
    for idx in combinations(range(n), p + q):
        val = la.zeros(b.m)
        for pos in combinations(range(p + q), p):
            rest = tuple(i for i in range(p + q) if i not in pos)
            s = _perm_sign(pos + rest)
            x = a.at(*(idx[i] for i in pos))[0]
            if x == 0:
                continue
            y = b.at(*(idx[i] for i in rest))
            val = la.add(val, la.scale(s * x, y))
        comps[idx] = val
    return Form(n, p + q, b.m, comps)


def interior(v: Sequence, w: Form) -> Form:
    """``v _| w``, the form ``w(v, ...)``."""
    if w.k == 0:
        raise DimensionError("cannot contract a 0-form")
    n = w.n
    return Form.from_function(
        n, w.k - 1, w.m,
        lambda idx: la.lincomb([v[l] for l in range(n)], [w.at(l, *idx) for l in range(n)], w.m))


def ce_differential(L: LieAlgebra, w: Form) -> Form:
    """Chevalley-Eilenberg differential with trivial coefficients.

    ``dw(x_0..x_k) = sum_{a<b} (-1)^(a+b) w([x_a, x_b], x_0, ^a, ^b, .., x_k)``,
    so ``dw(x, y) = -w([x, y])`` for 1-forms.
    """
    if w.n != L.dim:
        raise DimensionError("form and algebra dimensions differ")
    if w.k >= L.dim:
        raise DimensionError(f"degree {w.k} >= dimension {L.dim}")
    n, k = L.dim, w.k

    def value(idx):
        out = la.zeros(w.m)
        for a, b in combinations(range(k + 1), 2):
            br = L.c[idx[a]][idx[b]]
            if la.is_zero(br):
                continue
            rest = tuple(idx[t] for t in range(k + 1) if t not in (a, b))
            s = -1 if (a + b) % 2 else 1
            for l, x in enumerate(br):
                if x:
                    out = la.add(out, la.scale(s * x, w.at(l, *rest)))
        return out

    return Form.from_function(n, k + 1, w.m, value)


def d(L: LieAlgebra, w: Form) -> Form:
    return ce_differential(L, w)


def is_cocycle(L: LieAlgebra, w: Form) -> bool:
    if w.k >= L.dim:
        return True
    return ce_differential(L, w).is_zero()


def is_exact(L: LieAlgebra, w: Form) -> bool:
    """Whether the scalar form ``w`` of degree >= 1 lies in the image of ``d``."""
    if w.k == 0:
        return w.is_zero()
    if w.m != 1:
        return all(is_exact(L, w.component(r)) for r in range(w.m))
    sources = list(combinations(range(L.dim), w.k - 1))
    targets = list(combinations(range(L.dim), w.k))
    cols = [ce_differential(L, Form(L.dim, w.k - 1, 1, {s: 1})) for s in sources]
    m = [[c.at(*t)[0] for c in cols] for t in targets]
    return la.solve(m, [w.at(*t)[0] for t in targets]) is not None


def is_derivation(L: LieAlgebra, D: Matrix) -> bool:
    n = L.dim
    e = [la.unit(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = la.matvec(D, L.c[i][j])
            rhs = la.add(L.bracket(la.matvec(D, e[i]), e[j]), L.bracket(e[i], la.matvec(D, e[j])))
            if lhs != rhs:
                return False
    return True


@dataclass(frozen=True, eq=False)
class Metric:
    """Positive definite symmetric Gram matrix with a cached exact inverse."""

    g: Matrix
    inv: Matrix = field(init=False, repr=False)

    def __post_init__(self):
        g = la.mat(self.g)
        object.__setattr__(self, "g", g)
        if any(len(r) != len(g) for r in g):
            raise DimensionError("metric must be square")
        if not la.is_symmetric(g):
            raise PreconditionError("metric is not symmetric")
        if any(m <= 0 for m in la.leading_minors(g)):
            raise PreconditionError("metric is not positive definite")
        object.__setattr__(self, "inv", la.inverse(g))

    @classmethod
    def identity(cls, n: int) -> "Metric":
        return cls(la.identity(n))

    @property
    def dim(self) -> int:
        return len(self.g)

    def __eq__(self, other) -> bool:
        return isinstance(other, Metric) and self.g == other.g

    def __hash__(self):
        return hash(self.g)

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        return la.dot(x, la.matvec(self.g, y))

    def flat(self, v: Sequence) -> Vector:
        return la.matvec(self.g, v)

    def sharp(self, w: Sequence) -> Vector:
        return la.matvec(self.inv, w)

    def restrict(self, basis: Sequence[Vector]) -> "Metric":
        return Metric(tuple(tuple(self.inner(a, b) for b in basis) for a in basis))

    def is_skew(self, m: Matrix, basis: Sequence[Vector] | None = None) -> bool:
        """Whether ``g(mX, Y) + g(X, mY) = 0`` on ``basis`` (default: all)."""
        basis = basis if basis is not None else [la.unit(self.dim, i) for i in range(self.dim)]
        return all(self.inner(la.matvec(m, x), y) + self.inner(x, la.matvec(m, y)) == 0
                   for x in basis for y in basis)


def nijenhuis(L: LieAlgebra, J: Matrix, x: Sequence, y: Sequence) -> Vector:
    """``[Jx,Jy] - J[Jx,y] - J[x,Jy] - [x,y]``."""
    jx, jy = la.matvec(J, x), la.matvec(J, y)
    out = la.sub(L.bracket(jx, jy), L.bracket(x, y))
    return la.sub(out, la.matvec(J, la.add(L.bracket(jx, y), L.bracket(x, jy))))


def is_complex_structure(J: Matrix) -> bool:
    n = len(J)
    return la.matmul(J, J) == la.mat_scale(-1, la.identity(n))


def is_integrable(L: LieAlgebra, J: Matrix) -> bool:
    n = L.dim
    e = [la.unit(n, i) for i in range(n)]
    return all(la.is_zero(nijenhuis(L, J, e[i], e[j]))
               for i in range(n) for j in range(i + 1, n))


def abelian_defect(L: LieAlgebra, J: Matrix) -> tuple | None:
    """First basis pair (1-based) with ``[Jx,Jy] != [x,y]``, or ``None``."""
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            ji, jj = la.column(J, i), la.column(J, j)
            if L.bracket(ji, jj) != L.c[i][j]:
                return (i + 1, j + 1)
    return None


def is_abelian_complex(L: LieAlgebra, J: Matrix) -> bool:
    return is_complex_structure(J) and abelian_defect(L, J) is None


def is_invariant_form(w: Form, J: Matrix) -> bool:
    """Whether ``w(Jx, Jy, ...) = w(x, y, ...)``."""
    return w.pullback(J) == w

