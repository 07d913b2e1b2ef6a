"""Almost contact structures on Lie algebras."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .algebra import (Form, LieAlgebra, Metric, Subspace, ce_differential, center, interior,
                      is_abelian_complex, is_cocycle, is_derivation, is_invariant_form,
                      wedge)
from .errors import (DimensionError, InternalError, NotApplicableError, PreconditionError)
from .linalg import Matrix, Vector


@dataclass(frozen=True)
class AlmostContact:
    phi: Matrix
    xi: Vector
    eta: Vector

    def __post_init__(self):
        object.__setattr__(self, "phi", la.mat(self.phi))
        object.__setattr__(self, "xi", la.vec(self.xi))
        object.__setattr__(self, "eta", la.vec(self.eta))
        n = len(self.xi)
        if len(self.eta) != n or len(self.phi) != n or any(len(r) != n for r in self.phi):
            raise DimensionError("phi, xi and eta have inconsistent sizes")

    @property
    def dim(self) -> int:
        return len(self.xi)

    def h_basis(self) -> list[Vector]:
        """Basis of ``Ker eta``, one vector per free coordinate."""
        return la.nullspace([self.eta])

    def project(self, v: Sequence) -> Vector:
        """Component of ``v`` in ``Ker eta`` along ``xi``."""
        return la.sub(la.vec(v), la.scale(la.dot(self.eta, v), self.xi))

    def eta_form(self) -> Form:
        return Form.from_covector(self.eta)

    def negated(self) -> "AlmostContact":
        return AlmostContact(la.mat_scale(-1, self.phi), la.scale(-1, self.xi),
                             la.scale(-1, self.eta))


@dataclass(frozen=True)
class Violation:
    identity: str
    where: tuple = ()
    defect: object = None

    def to_dict(self) -> dict:
        from .serialize import encode
        out = {"identity": self.identity, "where": list(self.where)}
        if self.defect is not None:
            out["defect"] = encode(self.defect)
        return out


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple = ()
    h_dim: int | None = None
    notes: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def _check_dims(L: LieAlgebra, S: AlmostContact):
    if L.dim != S.dim:
        raise DimensionError(f"structure has size {S.dim}, algebra has dimension {L.dim}")


def validate_almost_contact(L: LieAlgebra, S: AlmostContact) -> ValidationResult:
    _check_dims(L, S)
    n = L.dim
    notes = []
    if n % 2 == 0:
        warnings.warn("almost contact structure on an even-dimensional algebra", stacklevel=2)
        notes.append("even dimension")
    bad = []
    lhs = la.matmul(S.phi, S.phi)
    rhs = la.mat_add(la.mat_scale(-1, la.identity(n)), la.outer(S.xi, S.eta))
    if lhs != rhs:
        j = next(c for c in range(n) if la.column(lhs, c) != la.column(rhs, c))
        bad.append(Violation("phi^2 = -I + eta(x)xi", (j + 1,),
                             la.sub(la.column(lhs, j), la.column(rhs, j))))
    if la.dot(S.eta, S.xi) != 1:
        bad.append(Violation("eta(xi) = 1", (), la.dot(S.eta, S.xi)))
    if not la.is_zero(la.matvec(S.phi, S.xi)):
        bad.append(Violation("phi(xi) = 0", (), la.matvec(S.phi, S.xi)))
    if not la.is_zero(la.covec_mat(S.eta, S.phi)):
        bad.append(Violation("eta o phi = 0", (), la.covec_mat(S.eta, S.phi)))
    h = Subspace(n, S.h_basis())
    im = Subspace(n, la.columns(S.phi))
    if h != im:
        bad.append(Violation("Ker eta = Im phi", (h.dim, im.dim)))
    return ValidationResult(not bad, tuple(bad), h.dim, tuple(notes))


def require_valid(L: LieAlgebra, S: AlmostContact):
    r = validate_almost_contact(L, S)
    if not r.ok:
        raise PreconditionError(f"not an almost contact structure: {r.violations[0].identity}")


def is_compatible(S: AlmostContact, g: Metric) -> bool:
    """``g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)``."""
    lhs = la.matmul(la.transpose(S.phi), la.matmul(g.g, S.phi))
    return lhs == la.mat_sub(g.g, la.outer(S.eta, S.eta))


def fundamental_form(S: AlmostContact, g: Metric) -> Form:
    """``Phi(X, Y) = g(X, phi Y)``."""
    if not is_compatible(S, g):
        raise PreconditionError("metric is not compatible with the structure")
    gphi = la.matmul(g.g, S.phi)
    return Form.from_function(S.dim, 2, 1, lambda idx: gphi[idx[0]][idx[1]])


def deta(L: LieAlgebra, S: AlmostContact) -> Form:
    return ce_differential(L, S.eta_form())


@dataclass(frozen=True)
class NormalityResult:
    tensor: Form
    is_normal: bool


def normality_tensor(L: LieAlgebra, S: AlmostContact) -> NormalityResult:
    """``N(X,Y) = [phi,phi](X,Y) + d eta(X,Y) xi`` on basis pairs.

    The vanishing of ``N`` is compared against the two-condition criterion
    (``[ad_xi, phi] = 0`` plus the identity on ``Ker eta``).
    """
    require_valid(L, S)
    n = L.dim
    phi, b = S.phi, L.bracket
    de = deta(L, S)
    e = [la.unit(n, i) for i in range(n)]
    fe = [la.column(phi, i) for i in range(n)]

    def value(idx):
        i, j = idx
        v = la.add(b(fe[i], fe[j]), la.matvec(phi, la.matvec(phi, L.c[i][j])))
        v = la.sub(v, la.matvec(phi, la.add(b(fe[i], e[j]), b(e[i], fe[j]))))
        return la.add(v, la.scale(de.scalar(i, j), S.xi))

    N = Form.from_function(n, 2, n, value)
    if N.is_zero() != _normal_by_criterion(L, S):
        raise InternalError("normality tensor and the two-condition criterion disagree")
    return NormalityResult(N, N.is_zero())


def _commutes(a: Matrix, b: Matrix) -> bool:
    return la.matmul(a, b) == la.matmul(b, a)


def _normal_by_criterion(L: LieAlgebra, S: AlmostContact) -> bool:
    if not _commutes(L.ad(S.xi), S.phi):
        return False
    h = S.h_basis()
    for x in h:
        for y in h:
            fx, fy = la.matvec(S.phi, x), la.matvec(S.phi, y)
            lhs = la.sub(L.bracket(fx, fy), L.bracket(x, y))
            rhs = la.matvec(S.phi, la.add(L.bracket(fx, y), L.bracket(x, fy)))
            if lhs != rhs:
                return False
    return True


@dataclass(frozen=True)
class AbelianResult:
    ok: bool
    witness: Violation | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_abelian_contact(L: LieAlgebra, S: AlmostContact) -> AbelianResult:
    require_valid(L, S)
    adx = L.ad(S.xi)
    lhs, rhs = la.matmul(adx, S.phi), la.matmul(S.phi, adx)
    if lhs != rhs:
        j = next(c for c in range(L.dim) if la.column(lhs, c) != la.column(rhs, c))
        return AbelianResult(False, Violation("ad_xi o phi = phi o ad_xi", (j + 1,),
                                              la.sub(la.column(lhs, j), la.column(rhs, j))))
    h = S.h_basis()
    for a in range(len(h)):
        for c in range(a + 1, len(h)):
            x, y = h[a], h[c]
            d = la.sub(L.bracket(la.matvec(S.phi, x), la.matvec(S.phi, y)), L.bracket(x, y))
            if not la.is_zero(d):
                return AbelianResult(False, Violation("[phi X, phi Y] = [X, Y]", (a + 1, c + 1), d))
    return AbelianResult(True)


def require_abelian(L: LieAlgebra, S: AlmostContact):
    r = is_abelian_contact(L, S)
    if not r.ok:
        raise NotApplicableError(f"structure is not abelian: {r.witness.identity}")


@dataclass(frozen=True)
class ContactClassReport:
    normal: bool
    deta_closed: bool
    dPhi_closed: bool
    alpha_sasaki: Fraction | None
    alpha_kenmotsu: Fraction | None
    labels: tuple

    def to_dict(self) -> dict:
        f = lambda x: None if x is None else la.fmt(x)
        return {"normal": self.normal, "deta_closed": self.deta_closed,
                "dPhi_closed": self.dPhi_closed, "alpha_sasaki": f(self.alpha_sasaki),
                "alpha_kenmotsu": f(self.alpha_kenmotsu), "labels": list(self.labels)}


def metric_class(L: LieAlgebra, S: AlmostContact, g: Metric) -> ContactClassReport:
    """Classify a metric structure; non-normal input is flagged and gets no label."""
    Phi = fundamental_form(S, g)
    normal = normality_tensor(L, S).is_normal
    de = deta(L, S)
    dPhi = ce_differential(L, Phi)
    a_s = de.is_multiple_of(Phi)
    a_s = a_s / 2 if a_s else None
    a_k = None
    if de.is_zero():
        c = dPhi.is_multiple_of(wedge(S.eta_form(), Phi))
        a_k = c / 2 if c else None
    labels = []
    if normal:
        if dPhi.is_zero():
            labels.append("quasi-Sasakian")
            if de.is_zero():
                labels.append("coKähler")
        if a_s is not None:
            labels.append(f"α-Sasakian({la.fmt(a_s)})")
            if a_s == 1:
                labels.append("Sasakian")
        if a_k is not None:
            labels.append(f"α-Kenmotsu({la.fmt(a_k)})")
            if a_k == 1:
                labels.append("Kenmotsu")
    if not labels:
        labels.append("none")
    return ContactClassReport(normal, de.is_zero(), dPhi.is_zero(), a_s, a_k, tuple(labels))


@dataclass(frozen=True)
class CharacteristicResult:
    exists: bool
    torsion: Form | None = None
    c: Form | None = None


def horizontal_c(L: LieAlgebra, g: Metric, project) -> Form:
    """``c(X,Y,Z) = -g([X,Y],Z) - g([Y,Z],X) - g([Z,X],Y)`` on horizontal parts."""
    n = L.dim
    p = [project(la.unit(n, i)) for i in range(n)]

    def value(idx):
        x, y, z = (p[i] for i in idx)
        b, ip = L.bracket, g.inner
        return -ip(b(x, y), z) - ip(b(y, z), x) - ip(b(z, x), y)

    return Form.from_function(n, 3, 1, value)


def characteristic_connection(L: LieAlgebra, S: AlmostContact, g: Metric) -> CharacteristicResult:
    require_abelian(L, S)
    Phi = fundamental_form(S, g)
    h = S.h_basis()
    skew = g.is_skew(L.ad(S.xi), h)
    contracted = ce_differential(L, Phi)
    killing = interior(S.xi, contracted).is_zero()
    if skew != killing:
        raise InternalError("skew-symmetry of ad_xi and xi _| dPhi = 0 disagree")
    if not skew:
        return CharacteristicResult(False)
    c = horizontal_c(L, g, S.project)
    T = wedge(S.eta_form(), deta(L, S)) + c
    return CharacteristicResult(True, T, c)


DIM3_LABELS = ("ℝ³", "𝔥₁^ℝ", "aff(ℝ)×ℝ", "so(3)", "sl(2,ℝ)", "r_{3,1}", "r′_{3,λ}")


@dataclass(frozen=True)
class Dim3Result:
    label: str
    family: str
    params: dict
    lam: Fraction | None = None

    def to_dict(self) -> dict:
        out = {"label": self.label, "family": self.family,
               "params": {k: la.fmt(v) for k, v in self.params.items()}}
        if self.lam is not None:
            out["lambda"] = la.fmt(self.lam)
        return out


def dim3_label(a, b, alpha, beta, gamma) -> tuple[str, Fraction | None]:
    if a == 0 and b == 0:
        if alpha == 0 and beta == 0 and gamma == 0:
            return "ℝ³", None
        if beta != 0 or gamma != 0:
            return "aff(ℝ)×ℝ", None
        return "𝔥₁^ℝ", None
    if alpha != 0:
        return ("so(3)" if b * alpha > 0 else "sl(2,ℝ)"), None
    if b == 0:
        return "r_{3,1}", None
    return "r′_{3,λ}", abs(Fraction(a) / b)


def classify_dim3(L: LieAlgebra, S: AlmostContact) -> Dim3Result:
    if L.dim != 3:
        raise DimensionError("classify_dim3 needs a 3-dimensional algebra")
    require_abelian(L, S)
    n = 3
    e1 = next(S.project(la.unit(n, i)) for i in range(n)
              if not la.is_zero(S.project(la.unit(n, i))))
    e2 = la.matvec(S.phi, e1)
    basis = [S.xi, e1, e2]
    co = lambda v: la.coordinates(basis, v)
    _, a, b = co(L.bracket(S.xi, e1))
    c2 = co(L.bracket(S.xi, e2))
    if c2 != (0, -b, a):
        raise InternalError("ad_xi does not commute with phi on the adapted basis")
    alpha, beta, gamma = co(L.bracket(e1, e2))
    if a * alpha != 0 or a * beta + b * gamma != 0 or a * gamma - b * beta != 0:
        raise PreconditionError("bracket violates the Jacobi identity")
    family, lam = dim3_label(a, b, alpha, beta, gamma)
    label = family if lam is None else f"r′_{{3,{la.fmt(lam)}}}"
    params = {"a": a, "b": b, "alpha": alpha, "beta": beta, "gamma": gamma}
    return Dim3Result(label, family, params, lam)


@dataclass(frozen=True)
class CentralExtensionData:
    h: LieAlgebra
    J: Matrix
    sigma: Form
    basis: tuple


@dataclass(frozen=True)
class SemidirectData:
    h: LieAlgebra
    J: Matrix
    D: Matrix
    basis: tuple


def _horizontal_algebra(L: LieAlgebra, S: AlmostContact, basis) -> LieAlgebra:
    m = len(basis)
    br = {}
    for a in range(m):
        for b in range(a + 1, m):
            v = S.project(L.bracket(basis[a], basis[b]))
            br[(a, b)] = la.coordinates(basis, v)
    return LieAlgebra.from_brackets(m, br)


def decompose_central_extension(L: LieAlgebra, S: AlmostContact) -> CentralExtensionData:
    require_abelian(L, S)
    if not center(L).contains(S.xi):
        raise NotApplicableError("xi is not central")
    basis = tuple(S.h_basis())
    h = _horizontal_algebra(L, S, basis)
    J = la.restrict(S.phi, basis)
    pb = la.from_columns(basis)
    sigma = -(deta(L, S).pullback(pb))
    if not is_abelian_complex(h, J):
        raise InternalError("phi restricted to Ker eta is not an abelian complex structure")
    if not (is_cocycle(h, sigma) and is_invariant_form(sigma, J)):
        raise InternalError("sigma is not a J-invariant cocycle")
    return CentralExtensionData(h, J, sigma, basis)


def decompose_semidirect(L: LieAlgebra, S: AlmostContact) -> SemidirectData:
    require_abelian(L, S)
    if not deta(L, S).is_zero():
        raise NotApplicableError("d eta is not zero, Ker eta is not a subalgebra")
    basis = tuple(S.h_basis())
    h = _horizontal_algebra(L, S, basis)
    J = la.restrict(S.phi, basis)
    D = la.restrict(L.ad(S.xi), basis)
    if not _commutes(D, J) or not is_derivation(h, D):
        raise InternalError("ad_xi on Ker eta is not a derivation commuting with J")
    return SemidirectData(h, J, D, basis)


def adapted_frame(S: AlmostContact) -> Matrix:
    """Columns ``xi, h_1, ..., h_2n``; the basis used by the decompositions."""
    return la.from_columns([S.xi] + list(S.h_basis()))
