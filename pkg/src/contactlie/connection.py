"""Left-invariant metric connections, torsion, curvature and the parallelism checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .algebra import Form, LieAlgebra, Metric
from .contact import AlmostContact, characteristic_connection
from .errors import DimensionError, PreconditionError
from .linalg import Matrix, Vector
from .three_contact import EVEN_PERMS, Almost3Contact, canonical_check, canonical_torsion, case_analysis


class NotSkewError(PreconditionError):
    """Torsion of a connection is not totally skew; ``witness`` is ``(i, j, k, defect)``."""

    def __init__(self, witness):
        self.witness = witness
        i, j, k, dft = witness
        super().__init__(f"torsion not skew at ({i + 1},{j + 1},{k + 1}): defect {la.fmt(dft)}")


@dataclass(frozen=True)
class Connection:
    """``coeff[i][j]`` holds the coordinates of ``nabla_{e_i} e_j``."""

    algebra: LieAlgebra
    coeff: tuple

    def __post_init__(self):
        n = self.algebra.dim
        c = tuple(tuple(la.vec(v) for v in row) for row in self.coeff)
        if len(c) != n or any(len(r) != n or any(len(v) != n for v in r) for r in c):
            raise DimensionError("connection coefficients have the wrong shape")
        object.__setattr__(self, "coeff", c)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def operator(self, x: Sequence) -> Matrix:
        """Matrix of ``Y -> nabla_x Y``."""
        n = self.dim
        out = la.zero_matrix(n)
        for i, a in enumerate(la.vec(x)):
            if a:
                out = la.mat_add(out, la.mat_scale(a, la.from_columns(self.coeff[i])))
        return out

    def __call__(self, x: Sequence, y: Sequence) -> Vector:
        return la.matvec(self.operator(x), y)

    def __add__(self, other: "Connection") -> "Connection":
        return Connection(self.algebra, tuple(tuple(la.add(a, b) for a, b in zip(r, s))
                                              for r, s in zip(self.coeff, other.coeff)))

    def is_metric(self, g: Metric) -> bool:
        n = self.dim
        return all(g.inner(self.coeff[i][j], la.unit(n, k)) + g.inner(la.unit(n, j), self.coeff[i][k]) == 0
                   for i in range(n) for j in range(n) for k in range(j, n))

    def to_dict(self) -> dict:
        return {"coeff": [[[la.fmt(x) for x in v] for v in row] for row in self.coeff]}


def _from_lowered(L: LieAlgebra, g: Metric, f) -> Connection:
    """Connection with ``g(nabla_{e_i} e_j, e_k) = f(i, j, k)``."""
    n = L.dim
    return Connection(L, tuple(tuple(g.sharp(tuple(f(i, j, k) for k in range(n))) for j in range(n))
                               for i in range(n)))


def levi_civita(L: LieAlgebra, g: Metric) -> Connection:
    n = L.dim
    if g.dim != n:
        raise DimensionError("metric and algebra dimensions differ")
    e = lambda i: la.unit(n, i)
    b, ip = L.bracket_basis, g.inner
    nab = _from_lowered(L, g, lambda i, j, k: Fraction(
        ip(b(i, j), e(k)) - ip(b(j, k), e(i)) + ip(b(k, i), e(j)), 2))
    assert nab.is_metric(g) and torsion_form(nab, g).is_zero()
    return nab


def with_skew_torsion(nabla_g: Connection, T_tor: Form, g: Metric) -> Connection:
    if T_tor.k != 3 or T_tor.m != 1 or T_tor.n != nabla_g.dim:
        raise DimensionError("torsion must be a scalar 3-form on the algebra")
    n = nabla_g.dim
    half = _from_lowered(nabla_g.algebra, g, lambda i, j, k: T_tor.scalar(i, j, k) / 2)
    return Connection(nabla_g.algebra, tuple(
        tuple(la.add(nabla_g.coeff[i][j], half.coeff[i][j]) for j in range(n)) for i in range(n)))


def torsion_vector(nabla: Connection, i: int, j: int) -> Vector:
    return la.sub(la.sub(nabla.coeff[i][j], nabla.coeff[j][i]), nabla.algebra.bracket_basis(i, j))


def torsion_form(nabla: Connection, g: Metric) -> Form:
    n = nabla.dim
    t = {}
    for i in range(n):
        for j in range(n):
            tv = torsion_vector(nabla, i, j)
            for k in range(n):
                t[i, j, k] = g.inner(tv, la.unit(n, k))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if t[i, j, k] != -t[i, k, j]:
                    raise NotSkewError((i, j, k, t[i, j, k] + t[i, k, j]))
    return Form.from_function(n, 3, 1, lambda idx: t[idx])


def like_bismut(L: LieAlgebra, g: Metric) -> Connection:
    """``g(nabla_X Y, Z) = -g(X, [Y, Z])``."""
    n = L.dim
    return _from_lowered(L, g, lambda i, j, k: -g.inner(la.unit(n, i), L.bracket_basis(j, k)))


def covariant_derivative(nabla: Connection, tensor, kind: str) -> list:
    """``nabla_{e_i}`` of a left-invariant tensor for every basis direction ``i``.

    ``kind`` is ``"endomorphism"``, ``"vector"``, ``"covector"`` or ``"form"``.
    """
    n = nabla.dim
    ops = [la.from_columns(nabla.coeff[i]) for i in range(n)]
    if kind == "endomorphism":
        p = la.mat(tensor)
        return [la.mat_sub(la.matmul(A, p), la.matmul(p, A)) for A in ops]
    if kind == "vector":
        return [la.matvec(A, tensor) for A in ops]
    if kind == "covector":
        return [la.scale(-1, la.covec_mat(tensor, A)) for A in ops]
    if kind == "form":
        w = tensor

        def deriv(A):
            cols = la.columns(A)

            def value(idx):
                tot = la.zeros(w.m)
                for pos, j in enumerate(idx):
                    args = [la.unit(n, a) for a in idx]
                    args[pos] = cols[j]
                    tot = la.sub(tot, w.evaluate(*args))
                return tot

            return Form.from_function(n, w.k, w.m, value)

        return [deriv(A) for A in ops]
    raise DimensionError(f"unsupported tensor kind {kind!r}")


@dataclass(frozen=True)
class CurvatureTensor:
    """``R[i][j]`` is the matrix of ``R(e_i, e_j)``."""

    R: tuple

    def __call__(self, i: int, j: int, k: int) -> Vector:
        return la.column(self.R[i][j], k)

    def is_zero(self) -> bool:
        return all(la.is_zero(m) for row in self.R for m in row)


def curvature(nabla: Connection) -> CurvatureTensor:
    n = nabla.dim
    L = nabla.algebra
    ops = [la.from_columns(nabla.coeff[i]) for i in range(n)]
    R = []
    for i in range(n):
        row = []
        for j in range(n):
            m = la.mat_sub(la.matmul(ops[i], ops[j]), la.matmul(ops[j], ops[i]))
            m = la.mat_sub(m, nabla.operator(L.bracket_basis(i, j)))
            row.append(m)
        R.append(tuple(row))
    return CurvatureTensor(tuple(R))


def ricci(nabla: Connection, g: Metric, R: CurvatureTensor | None = None) -> Matrix:
    """``Ric(A, B) = sum g^{ab} g(R(e_a, A) B, e_b)``, i.e. the trace of ``X -> R(X, A) B``."""
    n = nabla.dim
    R = R or curvature(nabla)
    return tuple(tuple(sum((R.R[a][A][a][B] for a in range(n)), Fraction(0)) for B in range(n))
                 for A in range(n))


def pair_symmetry(nabla: Connection, g: Metric, R: CurvatureTensor | None = None) -> bool:
    n = nabla.dim
    R = R or curvature(nabla)
    # low[x][y][w][z] = g(R(e_x, e_y) e_z, e_w)
    low = [[la.matmul(g.g, R.R[x][y]) for y in range(n)] for x in range(n)]
    return all(low[x][y][w][z] == low[z][w][y][x]
               for x in range(n) for y in range(n) for z in range(n) for w in range(n))


def is_parallel_torsion(nabla: Connection, g: Metric) -> bool:
    T = torsion_form(nabla, g)
    return all(f.is_zero() for f in covariant_derivative(nabla, T, "form"))


def canonical_connection(L: LieAlgebra, T3: Almost3Contact, g: Metric) -> Connection:
    return with_skew_torsion(levi_civita(L, g), canonical_torsion(L, T3, g), g)


def characteristic(L: LieAlgebra, S: AlmostContact, g: Metric) -> Connection | None:
    res = characteristic_connection(L, S, g)
    return with_skew_torsion(levi_civita(L, g), res.torsion, g) if res.exists else None


def is_canonical_connection(L: LieAlgebra, T3: Almost3Contact, g: Metric,
                            nabla: Connection, beta) -> bool:
    """Whether ``nabla`` is metric with the canonical torsion and moves the structure
    tensors by ``beta`` as required."""
    beta = la.frac(beta)
    n = L.dim
    if not nabla.is_metric(g):
        return False
    try:
        tor = torsion_form(nabla, g)
    except NotSkewError:
        return False
    cc = canonical_check(L, T3)
    if cc.beta != beta or tor != canonical_torsion(L, T3, g):
        return False
    dphi = [covariant_derivative(nabla, T3.phi(i), "endomorphism") for i in range(3)]
    dxi = [covariant_derivative(nabla, T3.xi(i), "vector") for i in range(3)]
    deta = [covariant_derivative(nabla, T3.eta(i), "covector") for i in range(3)]
    for i, j, k in EVEN_PERMS:
        for x in range(n):
            a, c = T3.eta(k)[x], T3.eta(j)[x]
            if dphi[i][x] != la.mat_scale(beta, la.mat_sub(la.mat_scale(a, T3.phi(j)),
                                                           la.mat_scale(c, T3.phi(k)))):
                return False
            for got, t in ((dxi[i][x], T3.xi), (deta[i][x], T3.eta)):
                if got != la.scale(beta, la.sub(la.scale(a, t(j)), la.scale(c, t(k)))):
                    return False
    if case_analysis(L, T3).case == "PsiZero_ZZero_DeltaZero" and nabla != like_bismut(L, g):
        return False
    return True
