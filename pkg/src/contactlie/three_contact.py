"""Almost 3-contact structures: invariants, case analysis, dim-7 classification
and the canonical criteria."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .algebra import (Form, LieAlgebra, Metric, Subspace, ce_differential, center,
                      is_cocycle, is_exact, is_invariant_form, wedge)
from .contact import (AbelianResult, AlmostContact, ValidationResult, Violation,
                      deta, fundamental_form, horizontal_c, is_abelian_contact,
                      is_compatible, normality_tensor, validate_almost_contact)
from .errors import (DimensionError, InternalError, NotApplicableError, PreconditionError,
                     TheoremViolation)
from .hypercomplex import hypercomplex_check, recognize_4d
from .linalg import ZERO, Matrix, Vector

EVEN_PERMS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def _eps(r, s, t) -> int:
    if (r, s, t) in EVEN_PERMS:
        return 1
    if (s, r, t) in EVEN_PERMS:
        return -1
    return 0


@dataclass(frozen=True)
class Almost3Contact:
    structures: tuple

    def __post_init__(self):
        s = tuple(self.structures)
        if len(s) != 3 or not all(isinstance(x, AlmostContact) for x in s):
            raise TypeError("an almost 3-contact structure needs three AlmostContact values")
        if len({x.dim for x in s}) != 1:
            raise DimensionError("the three structures live on different spaces")
        object.__setattr__(self, "structures", s)

    @property
    def dim(self) -> int:
        return self.structures[0].dim

    def phi(self, i: int) -> Matrix:
        return self.structures[i].phi

    def xi(self, i: int) -> Vector:
        return self.structures[i].xi

    def eta(self, i: int) -> Vector:
        return self.structures[i].eta

    def h_basis(self) -> list[Vector]:
        return la.nullspace([self.eta(i) for i in range(3)])

    def project(self, v: Sequence) -> Vector:
        """Horizontal part of ``v``."""
        v = la.vec(v)
        for i in range(3):
            v = la.sub(v, la.scale(la.dot(self.eta(i), v), self.xi(i)))
        return v

    def vertical(self, v: Sequence) -> Vector:
        """Coordinates ``(eta_1(v), eta_2(v), eta_3(v))``."""
        return tuple(la.dot(self.eta(i), v) for i in range(3))


def validate_almost_3contact(L: LieAlgebra, T: Almost3Contact) -> ValidationResult:
    n = L.dim
    if n != T.dim:
        raise DimensionError("structure and algebra dimensions differ")
    if n % 4 != 3:
        raise DimensionError(f"dimension {n} is not 3 mod 4")
    bad = []
    for i, S in enumerate(T.structures):
        r = validate_almost_contact(L, S)
        bad.extend(Violation(f"structure {i + 1}: {v.identity}", v.where, v.defect)
                   for v in r.violations)
    for p, (i, j, k) in enumerate(EVEN_PERMS):
        tag = (i + 1, j + 1, k + 1)
        phi, xi, eta = T.phi, T.xi, T.eta
        checks = [
            ("phi_k = phi_i phi_j - eta_j (x) xi_i", phi(k),
             la.mat_sub(la.matmul(phi(i), phi(j)), la.outer(xi(i), eta(j)))),
            ("phi_k = -phi_j phi_i + eta_i (x) xi_j", phi(k),
             la.mat_add(la.mat_scale(-1, la.matmul(phi(j), phi(i))), la.outer(xi(j), eta(i)))),
            ("xi_k = phi_i xi_j", xi(k), la.matvec(phi(i), xi(j))),
            ("xi_k = -phi_j xi_i", xi(k), la.scale(-1, la.matvec(phi(j), xi(i)))),
            ("eta_k = eta_i o phi_j", eta(k), la.covec_mat(eta(i), phi(j))),
            ("eta_k = -eta_j o phi_i", eta(k), la.scale(-1, la.covec_mat(eta(j), phi(i)))),
        ]
        for name, lhs, rhs in checks:
            if lhs != rhs:
                bad.append(Violation(name, tag))
    h = len(T.h_basis())
    if not bad and h != n - 3:
        bad.append(Violation("dim h = 4n", (h,)))
    return ValidationResult(not bad, tuple(bad), h)


def require_valid3(L: LieAlgebra, T: Almost3Contact):
    r = validate_almost_3contact(L, T)
    if not r.ok:
        raise PreconditionError(f"not an almost 3-contact structure: {r.violations[0].identity}")


def is_abelian_3contact(L: LieAlgebra, T: Almost3Contact) -> AbelianResult:
    require_valid3(L, T)
    res = [is_abelian_contact(L, S) for S in T.structures]
    # two abelian structures force the third
    for a, b, c in EVEN_PERMS:
        if res[a].ok and res[b].ok and not res[c].ok:
            raise InternalError("two structures abelian but the third is not")
    for i, r in enumerate(res):
        if not r.ok:
            w = r.witness
            return AbelianResult(False, Violation(f"structure {i + 1}: {w.identity}", w.where, w.defect))
    return AbelianResult(True)


def require_abelian3(L: LieAlgebra, T: Almost3Contact):
    r = is_abelian_3contact(L, T)
    if not r.ok:
        raise NotApplicableError(f"structure is not abelian: {r.witness.identity}")


@dataclass(frozen=True)
class StructureInvariants:
    zeta: tuple
    Z: Vector
    delta: Fraction
    psi: Matrix
    psi_rank: int
    h_basis: tuple
    J: tuple
    ad_h: tuple

    def to_dict(self) -> dict:
        from .serialize import encode
        return {"zeta": encode(self.zeta), "Z": encode(self.Z), "delta": la.fmt(self.delta),
                "psi": encode(self.psi), "psi_rank": self.psi_rank,
                "h_basis": encode(self.h_basis)}


def _restrict(m: Matrix, basis) -> Matrix:
    try:
        return la.restrict(m, basis)
    except ValueError:
        raise InternalError("horizontal subspace is not invariant") from None


def structure_invariants(L: LieAlgebra, T: Almost3Contact) -> StructureInvariants:
    require_abelian3(L, T)
    zeta = [None] * 3
    for i, j, k in EVEN_PERMS:
        zeta[k] = L.bracket(T.xi(i), T.xi(j))
    Zs = [la.matvec(T.phi(i), zeta[i]) for i in range(3)]
    if Zs[0] != Zs[1] or Zs[1] != Zs[2]:
        raise InternalError("phi_i zeta_i depends on i")
    Z = Zs[0]
    delta = la.dot(T.eta(0), zeta[0]) / 2
    for r in range(3):
        for s in range(3):
            for t in range(3):
                val = la.dot(T.eta(r), L.bracket(T.xi(s), T.xi(t)))
                if val != 2 * delta * _eps(r, s, t):
                    raise InternalError("eta_r([xi_s, xi_t]) is not 2 delta eps_rst")
    for i in range(3):
        if zeta[i] != la.add(la.scale(-1, la.matvec(T.phi(i), Z)), la.scale(2 * delta, T.xi(i))):
            raise InternalError("zeta_i != -phi_i Z + 2 delta xi_i")
    hb = tuple(T.h_basis())
    ads = [L.ad(T.xi(i)) for i in range(3)]
    psis = []
    for i in range(3):
        psis.append(_restrict(la.matmul(ads[i], T.phi(i)), hb))
        psis.append(_restrict(la.matmul(T.phi(i), ads[i]), hb))
    if any(p != psis[0] for p in psis):
        raise InternalError("psi depends on the structure index")
    psi = psis[0]
    J = tuple(_restrict(T.phi(i), hb) for i in range(3))
    ad_h = tuple(_restrict(ads[i], hb) for i in range(3))
    rank = la.rank(psi) if psi else 0
    return StructureInvariants(tuple(zeta), Z, delta, psi, rank, hb, J, ad_h)


def identity_checks(L: LieAlgebra, T: Almost3Contact) -> dict:
    """Every structural identity of an abelian triple, evaluated exactly.

    Keys name the identity; values are booleans.
    """
    inv = structure_invariants(L, T)
    hb = inv.h_basis
    m = len(hb)
    b = L.bracket
    phi = lambda i, v: la.matvec(T.phi(i), v)
    xi = T.xi
    out = {}
    lemma1 = lemma2 = lemma3 = lemma4 = ti1 = ti2 = True
    for i, j, k in EVEN_PERMS:
        for x in hb:
            lemma1 &= b(xi(i), phi(i, x)) == b(xi(j), phi(j, x))
            v = b(xi(k), x)
            lemma2 &= (b(xi(i), phi(j, x)) == v and la.scale(-1, b(xi(j), phi(i, x))) == v
                       and phi(i, b(xi(j), x)) == v and la.scale(-1, phi(j, b(xi(i), x))) == v)
            lemma3 &= la.is_zero(T.vertical(b(xi(i), x)))
            for y in hb:
                w = b(phi(k, x), y)
                lemma4 &= b(phi(i, x), phi(j, y)) == w and la.scale(-1, b(phi(j, x), phi(i, y))) == w
    out["lemma: [xi_i, phi_i X] = [xi_j, phi_j X]"] = lemma1
    out["lemma: [xi_i, phi_j X] = [xi_k, X] (and equivalents)"] = lemma2
    out["lemma: [xi_i, X] horizontal"] = lemma3
    out["lemma: [phi_i X, phi_j Y] = [phi_k X, Y]"] = lemma4

    psi, psi2 = inv.psi, la.matmul(inv.psi, inv.psi) if inv.psi else ()
    for i, j, k in EVEN_PERMS:
        ti, tj, tk = inv.ad_h[i], inv.ad_h[j], inv.ad_h[k]
        if m:
            ti1 &= la.matmul(ti, ti) == la.mat_scale(-1, psi2)
            lhs = la.matmul(ti, tj)
            ti2 &= lhs == la.mat_scale(-1, la.matmul(tj, ti)) and lhs == la.mat_scale(-1, la.matmul(psi, tk))
    out["[xi_i, [xi_i, X]] = -psi^2 X"] = ti1
    out["[xi_i, [xi_j, X]] = -psi [xi_k, X]"] = ti2

    Zh = la.coordinates(hb, inv.Z) if m else ()
    out["Z horizontal"] = Zh is not None
    out["psi(Z) = 0"] = Zh is not None and (not m or la.is_zero(la.matvec(psi, Zh)))
    out["[v, Z] = 0"] = all(la.is_zero(b(xi(i), inv.Z)) for i in range(3))
    if m:
        adZ = _restrict(L.ad(inv.Z), hb)
        out["ad_Z|h = 2(psi^2 + delta psi)"] = adZ == la.mat_scale(2, la.mat_add(psi2, la.mat_scale(inv.delta, psi)))
        out["psi commutes with phi_i|h"] = all(la.matmul(psi, J) == la.matmul(J, psi) for J in inv.J)
        out["psi commutes with ad_xi_i|h"] = all(la.matmul(psi, t) == la.matmul(t, psi) for t in inv.ad_h)
        ker = Subspace(m, la.nullspace(psi))
        im = Subspace(m, la.columns(psi))
        out["Ker psi, Im psi phi_i-invariant"] = all(
            Subspace(m, [la.matvec(J, v) for v in s.basis]) <= s for J in inv.J for s in (ker, im))
    out["zeta_i = -phi_i Z + 2 delta xi_i"] = all(
        inv.zeta[i] == la.add(la.scale(-1, phi(i, inv.Z)), la.scale(2 * inv.delta, xi(i)))
        for i in range(3))
    out["rank psi in 4Z"] = inv.psi_rank % 4 == 0
    return out


def sphere_structure(T: Almost3Contact, a: Sequence) -> AlmostContact:
    a = la.vec(a)
    if len(a) != 3 or la.dot(a, a) != 1:
        raise PreconditionError("sphere point must be a rational unit 3-vector")
    return _combo(T, a)


def _combo(T: Almost3Contact, a) -> AlmostContact:
    n = T.dim
    phi = la.zero_matrix(n)
    for i in range(3):
        phi = la.mat_add(phi, la.mat_scale(a[i], T.phi(i)))
    xi = la.lincomb(a, [T.xi(i) for i in range(3)], n)
    eta = la.lincomb(a, [T.eta(i) for i in range(3)], n)
    return AlmostContact(phi, xi, eta)


def cross(a: Sequence, b: Sequence) -> Vector:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def sphere_relations_hold(T: Almost3Contact, a: Sequence, b: Sequence) -> bool:
    """The cross-product relations between ``phi_a, xi_a, eta_a`` for arbitrary ``a, b``."""
    a, b = la.vec(a), la.vec(b)
    Sa, Sb, Sc = _combo(T, a), _combo(T, b), _combo(T, cross(a, b))
    n = T.dim
    lhs = la.mat_sub(la.matmul(Sa.phi, Sb.phi), la.outer(Sa.xi, Sb.eta))
    rhs = la.mat_sub(Sc.phi, la.mat_scale(la.dot(a, b), la.identity(n)))
    return (lhs == rhs and la.matvec(Sa.phi, Sb.xi) == Sc.xi
            and la.covec_mat(Sa.eta, Sb.phi) == Sc.eta)


@dataclass(frozen=True)
class CaseReport:
    case: str
    invariants: StructureInvariants
    payload: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        from .serialize import encode
        return {"case": self.case,
                "payload": {k: encode(v) for k, v in sorted(self.payload.items())},
                "invariants": self.invariants.to_dict()}


def horizontal_algebra(L: LieAlgebra, T: Almost3Contact, hb) -> LieAlgebra:
    m = len(hb)
    br = {}
    for a in range(m):
        for c in range(a + 1, m):
            br[(a, c)] = la.coordinates(hb, T.project(L.bracket(hb[a], hb[c])))
    return LieAlgebra.from_brackets(m, br) if m else None


def _check(cond: bool, what: str):
    if not cond:
        raise InternalError(f"case claim failed: {what}")


def case_analysis(L: LieAlgebra, T: Almost3Contact) -> CaseReport:
    inv = structure_invariants(L, T)
    hb, m, delta = inv.h_basis, len(inv.h_basis), inv.delta
    b, xi = L.bracket, T.xi
    phi = lambda i, v: la.matvec(T.phi(i), v)
    Z0 = la.is_zero(inv.Z)

    if m and inv.psi_rank == m:
        _check(inv.psi == la.mat_scale(-delta, la.identity(m)) and delta != 0, "psi = -delta I, delta != 0")
        _check(all(la.is_zero(b(x, y)) for x in hb for y in hb), "h abelian")
        for i, j, k in EVEN_PERMS:
            _check(b(xi(i), xi(j)) == la.scale(2 * delta, xi(k)), "[xi_i, xi_j] = 2 delta xi_k")
        _check(all(b(xi(i), x) == la.scale(delta, phi(i, x)) for i in range(3) for x in hb),
               "[xi_i, X] = delta phi_i X")
        return CaseReport("PsiInvertible", inv, {"delta": delta})

    if inv.psi_rank != 0:
        return CaseReport(f"Intermediate({inv.psi_rank})", inv, {"rank": inv.psi_rank})

    h = horizontal_algebra(L, T, hb)
    payload = {"h": h, "J": inv.J, "delta": delta}
    if h is not None:
        hc = hypercomplex_check(h, *inv.J)
        _check(hc.is_abelian_hypercomplex, "J_i abelian hypercomplex on h")
    if Z0 and delta == 0:
        _check(Subspace(L.dim, [xi(i) for i in range(3)]) <= center(L), "v in the center")
        if h is not None:
            pb = la.from_columns(hb)
            sig = [-(deta(L, S).pullback(pb)) for S in T.structures]
            theta = Form.stack(sig)
            _check(is_cocycle(h, theta), "theta cocycle")
            _check(all(is_invariant_form(theta, J) for J in inv.J), "theta J_i-invariant")
            payload["theta"] = theta
        return CaseReport("PsiZero_ZZero_DeltaZero", inv, payload)
    if Z0:
        for i, j, k in EVEN_PERMS:
            _check(b(xi(i), xi(j)) == la.scale(2 * delta, xi(k)), "v = so(3)")
        _check(all(la.is_zero(b(xi(i), x)) for i in range(3) for x in hb), "[v, h] = 0")
        _check(all(la.is_zero(T.vertical(b(x, y))) for x in hb for y in hb), "h subalgebra")
        return CaseReport("PsiZero_ZZero_DeltaNonzero", inv, payload)

    Zi = tuple(phi(i, inv.Z) for i in range(3))
    for i, j, k in EVEN_PERMS:
        _check(b(xi(i), xi(j)) == la.sub(la.scale(2 * delta, xi(k)), Zi[k]),
               "[xi_i, xi_j] = 2 delta xi_k - Z_k")
    _check(all(la.is_zero(b(xi(i), x)) for i in range(3) for x in hb), "[xi_i, X] = 0")
    _check(all(la.is_zero(T.vertical(b(x, y))) for x in hb for y in hb), "h ideal")
    _check(all(la.is_zero(b(z, x)) for z in (inv.Z,) + Zi for x in hb), "Z, Z_i central in h")
    payload.update({"Z": inv.Z, "Z_i": Zi})
    if delta != 0:
        u = [la.sub(la.scale(2 * delta, xi(i)), Zi[i]) for i in range(3)]
        for i, j, k in EVEN_PERMS:
            _check(b(u[i], u[j]) == la.scale(4 * delta * delta, u[k]), "[u_i, u_j] = 4 delta^2 u_k")
        payload["u"] = tuple(u)
    return CaseReport("PsiZero_ZNonzero", inv, payload)


DIM7_LABELS = ("so(3)⋉ℝ⁴", "ℝ³×aff(ℂ)", "𝔥₂^ℝ×ℝ²", "𝔥₁^ℂ×ℝ", "𝔥₁^ℍ",
               "so(3)×ℝ⁴", "so(3)×aff(ℂ)", "𝔫×ℝ", "ℝ⁷")
RANK_LABELS = {0: "ℝ⁷", 1: "𝔥₂^ℝ×ℝ²", 2: "𝔥₁^ℂ×ℝ", 3: "𝔥₁^ℍ"}


@dataclass(frozen=True)
class Dim7Result:
    label: str
    case: str
    A: Matrix | None = None

    def to_dict(self) -> dict:
        from .serialize import encode
        out = {"label": self.label, "case": self.case}
        if self.A is not None:
            out["A"] = encode(self.A)
            out["rank_A"] = la.rank(self.A)
        return out


def bracket_matrix_A(L: LieAlgebra, T: Almost3Contact, inv: StructureInvariants) -> Matrix:
    """The 3x3 coefficient matrix in a basis ``W, J1 W, J2 W, J3 W`` of ``h``."""
    hb = inv.h_basis
    m = len(hb)
    w = next(la.unit(m, i) for i in range(m))
    e = [w] + [la.matvec(J, w) for J in inv.J]
    E = [la.lincomb(v, hb, L.dim) for v in e]
    v = lambda a, c: T.vertical(L.bracket(E[a], E[c]))
    cols = [v(0, 1), v(0, 2), v(0, 3)]
    if (cols[0] != la.scale(-1, v(2, 3)) or cols[1] != v(1, 3)
            or cols[2] != la.scale(-1, v(1, 2))):
        raise InternalError("bracket does not have the hypercomplex block pattern")
    return la.from_columns(cols)


def classify_dim7(L: LieAlgebra, T: Almost3Contact) -> Dim7Result:
    if L.dim != 7:
        raise DimensionError("classify_dim7 needs a 7-dimensional algebra")
    rep = case_analysis(L, T)
    if L.is_abelian():
        return Dim7Result("ℝ⁷", rep.case)
    case = rep.case
    if case.startswith("Intermediate"):
        raise TheoremViolation(f"psi has rank {rep.invariants.psi_rank} in dimension 7")
    if case == "PsiInvertible":
        return Dim7Result("so(3)⋉ℝ⁴", case)
    h = rep.payload["h"]
    if case == "PsiZero_ZNonzero":
        if not h.is_abelian():
            raise TheoremViolation("h is not abelian although Z != 0")
        return Dim7Result("𝔫×ℝ" if rep.invariants.delta == 0 else "so(3)×ℝ⁴", case)
    kind = recognize_4d(h, *rep.invariants.J)
    if kind == "neither":
        raise TheoremViolation("h carries an abelian hypercomplex structure but is not ℝ⁴ or aff(ℂ)")
    if case == "PsiZero_ZZero_DeltaNonzero":
        return Dim7Result("so(3)×ℝ⁴" if kind == "ℝ⁴" else "so(3)×aff(ℂ)", case)
    if kind == "aff(ℂ)":
        if not is_exact(h, rep.payload["theta"]):
            raise TheoremViolation("invariant cocycle on aff(ℂ) is not exact")
        return Dim7Result("ℝ³×aff(ℂ)", case)
    A = bracket_matrix_A(L, T, rep.invariants)
    return Dim7Result(RANK_LABELS[la.rank(A)], case, A)


@dataclass(frozen=True)
class CanonicalResult:
    beta: Fraction | None
    delta: Fraction | None = None
    reason: str = ""

    @property
    def canonical(self) -> bool:
        return self.beta is not None

    @property
    def parallel(self) -> bool:
        return self.beta == 0

    def to_dict(self) -> dict:
        f = lambda x: None if x is None else la.fmt(x)
        return {"canonical": self.canonical, "parallel_canonical": self.parallel,
                "beta": f(self.beta), "delta": f(self.delta), "reason": self.reason}


def canonical_check(L: LieAlgebra, T: Almost3Contact) -> CanonicalResult:
    """``beta`` with ``Z = 0`` and ``2 psi = -beta I``, or an absent ``beta``."""
    inv = structure_invariants(L, T)
    if not la.is_zero(inv.Z):
        return CanonicalResult(None, inv.delta, "Z != 0")
    m = len(inv.h_basis)
    beta = -2 * inv.psi[0][0] if m else ZERO
    if m and inv.psi != la.mat_scale(-beta / 2, la.identity(m)):
        return CanonicalResult(None, inv.delta, "psi is not a multiple of the identity")
    for i, j, k in EVEN_PERMS:
        if L.bracket(T.xi(i), T.xi(j)) != la.scale(2 * inv.delta, T.xi(k)):
            raise InternalError("v is not a subalgebra although Z = 0")
    for i in range(3):
        if m and inv.ad_h[i] != la.mat_scale(beta / 2, inv.J[i]):
            raise InternalError("ad_xi_i|h != (beta/2) phi_i|h")
    return CanonicalResult(beta, inv.delta)


def _gram(g: Metric, us, vs) -> Matrix:
    return tuple(tuple(g.inner(u, v) for v in vs) for u in us)


@dataclass(frozen=True)
class ReebKillingResult:
    A: dict
    beta: Fraction | None
    aii_zero: bool
    killing: bool
    condition_iii: bool
    canonical: bool

    def to_dict(self) -> dict:
        from .serialize import encode
        return {"A": {f"{i + 1}{j + 1}": encode(m) for (i, j), m in sorted(self.A.items())},
                "beta": None if self.beta is None else la.fmt(self.beta),
                "aii_zero": self.aii_zero, "killing": self.killing,
                "condition_iii": self.condition_iii, "canonical": self.canonical}


def _require_metric(T: Almost3Contact, g: Metric):
    if not all(is_compatible(S, g) for S in T.structures):
        raise PreconditionError("metric is not compatible with all three structures")


def reeb_killing_tensors(L: LieAlgebra, T: Almost3Contact, g: Metric) -> ReebKillingResult:
    require_abelian3(L, T)
    _require_metric(T, g)
    hb = T.h_basis()
    b = L.bracket
    phi = lambda i, v: la.matvec(T.phi(i), v)
    des = [deta(L, S) for S in T.structures]
    A = {}
    for i in range(3):
        for j in range(3):
            def entry(x, y, i=i, j=j):
                lie = la.sub(b(T.xi(j), phi(i, x)), phi(i, b(T.xi(j), x)))
                return (g.inner(lie, y) + des[j].evaluate_scalar(x, phi(i, y))
                        + des[j].evaluate_scalar(phi(i, x), y))
            A[(i, j)] = tuple(tuple(entry(x, y) for y in hb) for x in hb)
    Phis = [_gram(g, hb, [phi(k, y) for y in hb]) for k in range(3)]
    aii = all(la.is_zero(A[(i, i)]) for i in range(3)) if hb else True
    beta = None
    if aii:
        cands = set()
        ok = True
        for i, j, k in EVEN_PERMS:
            if not hb:
                cands.add(ZERO)
                continue
            pos = next(((r, c) for r in range(len(hb)) for c in range(len(hb)) if Phis[k][r][c]), None)
            bk = A[(i, j)][pos[0]][pos[1]] / Phis[k][pos[0]][pos[1]]
            ok &= (A[(i, j)] == la.mat_scale(bk, Phis[k])
                   and A[(j, i)] == la.mat_scale(-bk, Phis[k]))
            cands.add(bk)
        if ok and len(cands) == 1:
            beta = cands.pop()
    killing = all(g.is_skew(L.ad(T.xi(i))) for i in range(3))
    cond3 = _condition_iii(L, T, g, hb)
    normal_skew = all(normality_tensor(L, S).is_normal for S in T.structures)
    canonical = beta is not None and killing and cond3 and normal_skew
    res = ReebKillingResult(A, beta if canonical else None, aii, killing, cond3, canonical)
    cc = canonical_check(L, T)
    if cc.beta != res.beta:
        raise InternalError("Reeb Killing tensors and canonical_check disagree")
    return res


def _condition_iii(L, T, g, hb) -> bool:
    vals = []
    for i, S in enumerate(T.structures):
        N = normality_tensor(L, S).tensor
        dPhi = ce_differential(L, fundamental_form(S, g))
        f = lambda v: la.matvec(S.phi, v)
        vals.append(tuple(
            g.inner(N.evaluate(x, y), z) - dPhi.evaluate_scalar(f(x), f(y), f(z))
            for x in hb for y in hb for z in hb))
    return vals[0] == vals[1] == vals[2]


def eta123(T: Almost3Contact) -> Form:
    e = [Form.from_covector(T.eta(i)) for i in range(3)]
    return wedge(e[0], wedge(e[1], e[2]))


def canonical_torsion(L: LieAlgebra, T: Almost3Contact, g: Metric) -> Form:
    """``c + sum eta_i ^ d eta_i + 2(beta + 2 delta) eta_1 ^ eta_2 ^ eta_3``."""
    cc = canonical_check(L, T)
    if not cc.canonical:
        raise NotApplicableError(f"structure is not canonical ({cc.reason})")
    _require_metric(T, g)
    beta, delta = cc.beta, cc.delta
    tor = horizontal_c(L, g, T.project)
    for S in T.structures:
        tor = tor + wedge(S.eta_form(), deta(L, S))
    tor = tor + eta123(T).scale(2 * (beta + 2 * delta))
    hb = T.h_basis()
    xi = T.xi
    if tor.evaluate_scalar(xi(0), xi(1), xi(2)) != 2 * (beta - delta):
        raise InternalError("T(xi_1, xi_2, xi_3) != 2(beta - delta)")
    for i, S in enumerate(T.structures):
        de = deta(L, S)
        for x in hb:
            for y in hb:
                if tor.evaluate_scalar(x, y, xi(i)) != de.evaluate_scalar(x, y):
                    raise InternalError("T(X, Y, xi_i) != d eta_i(X, Y)")
            for j in range(3):
                if tor.evaluate_scalar(x, xi(i), xi(j)) != 0:
                    raise InternalError("T(X, xi_i, xi_j) != 0")
    return tor


def admits_3_alpha_delta_sasaki(L: LieAlgebra, T: Almost3Contact, g: Metric) -> bool:
    """Whether ``d eta_i = 2a Phi_i + 2(a - d) eta_j ^ eta_k`` has a solution with ``a != 0``."""
    _require_metric(T, g)
    rows, rhs = [], []
    for i, j, k in EVEN_PERMS:
        de = deta(L, T.structures[i])
        Phi = fundamental_form(T.structures[i], g)
        ejk = wedge(Form.from_covector(T.eta(j)), Form.from_covector(T.eta(k)))
        # de = a (2 Phi + 2 ejk) - d (2 ejk)
        for idx in set(de.comps) | set(Phi.comps) | set(ejk.comps):
            p, e = Phi.scalar(*idx), ejk.scalar(*idx)
            rows.append((2 * p + 2 * e, -2 * e))
            rhs.append(de.scalar(*idx))
    if not rows:
        return True
    sol = la.solve(rows, rhs)
    if sol is None:
        return False
    if sol[0] != 0:
        return True
    return any(v[0] != 0 for v in la.nullspace(rows))
