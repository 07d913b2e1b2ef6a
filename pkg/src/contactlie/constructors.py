"""Central extensions, semidirect products and the named example catalog."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import linalg as la
from .algebra import (Form, LieAlgebra, Metric, is_abelian_complex, is_cocycle, is_derivation,
                      is_invariant_form, jacobi_check)
from .contact import AlmostContact
from .errors import PreconditionError
from .hypercomplex import LI, LJ, LK, block_diagonal, hypercomplex_check, recognize_4d
from .linalg import Matrix
from .three_contact import EVEN_PERMS, Almost3Contact

__all__ = ["CatalogEntry", "central_extension", "semidirect_by_derivation", "so3_semidirect",
           "catalog", "CATALOG", "hypercomplex_check", "recognize_4d", "quaternionic_J",
           "AFF_C", "AFF_C_TRIPLE", "exact_extension_isomorphism"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: dict
    algebra: LieAlgebra
    structure: object
    metric: Metric
    expected: dict = field(default_factory=dict)

    @property
    def is_3contact(self) -> bool:
        return isinstance(self.structure, Almost3Contact)


def _hermitian_metric(Js: Sequence[Matrix]) -> Matrix:
    n = len(Js[0])
    if all(la.matmul(la.transpose(J), J) == la.identity(n) for J in Js):
        return la.identity(n)
    acc = la.identity(n)
    for J in Js:
        acc = la.mat_add(acc, la.matmul(la.transpose(J), J))
    return la.mat_scale(Fraction(1, len(Js) + 1), acc)


def _embed(blocks: Sequence[Matrix]) -> Matrix:
    return block_diagonal(blocks)


def _cross_block(i: int) -> Matrix:
    """``phi_i`` on the vertical span: ``xi_j -> xi_k``, ``xi_k -> -xi_j``."""
    m = [[0] * 3 for _ in range(3)]
    for a, b, c in EVEN_PERMS:
        if a == i:
            m[c][b] = 1
            m[b][c] = -1
    return la.mat(m)


def _three_structure(Jh: Sequence[Matrix]) -> Almost3Contact:
    m = len(Jh[0])
    n = m + 3
    out = []
    for i in range(3):
        phi = _embed([_cross_block(i), Jh[i]])
        out.append(AlmostContact(phi, la.unit(n, i), la.unit(n, i)))
    return Almost3Contact(tuple(out))


def _one_structure(J: Matrix) -> AlmostContact:
    n = len(J) + 1
    return AlmostContact(_embed([la.zero_matrix(1), J]), la.unit(n, 0), la.unit(n, 0))


def central_extension(h: LieAlgebra, theta: Form, J, name: str = "central_extension",
                      params: Mapping | None = None, expected: Mapping | None = None) -> CatalogEntry:
    """``V (+)_theta h`` with ``V`` of dimension 1 or 3 placed first in the basis."""
    m = theta.m
    if m not in (1, 3):
        raise PreconditionError("the cocycle must take values in a space of dimension 1 or 3")
    if theta.n != h.dim or theta.k != 2:
        raise PreconditionError("theta must be a 2-form on h")
    Js = [la.mat(J)] if m == 1 else [la.mat(x) for x in J]
    if len(Js) != m:
        raise PreconditionError("need one complex structure per extension direction")
    if m == 1:
        if not is_abelian_complex(h, Js[0]):
            raise PreconditionError("J is not an abelian complex structure")
    elif not hypercomplex_check(h, *Js).is_abelian_hypercomplex:
        raise PreconditionError("(J1, J2, J3) is not an abelian hypercomplex structure")
    if not is_cocycle(h, theta):
        raise PreconditionError("theta is not a cocycle")
    if not all(is_invariant_form(theta, J) for J in Js):
        raise PreconditionError("theta is not J-invariant")
    n = h.dim + m
    br = {}
    for a in range(h.dim):
        for b in range(a + 1, h.dim):
            br[(a + m, b + m)] = theta.at(a, b) + h.c[a][b]
    L = LieAlgebra.from_brackets(n, br)
    S = _one_structure(Js[0]) if m == 1 else _three_structure(Js)
    g = Metric(_embed([la.identity(m), _hermitian_metric(Js)]))
    return CatalogEntry(name, dict(params or {}), L, S, g, dict(expected or {}))


def semidirect_by_derivation(h: LieAlgebra, J: Matrix, D: Matrix, name: str = "semidirect",
                             params: Mapping | None = None,
                             expected: Mapping | None = None) -> CatalogEntry:
    """``R xi |x_D h`` with ``xi`` placed first in the basis."""
    J, D = la.mat(J), la.mat(D)
    if not is_derivation(h, D):
        raise PreconditionError("D is not a derivation of h")
    if la.matmul(D, J) != la.matmul(J, D):
        raise PreconditionError("D does not commute with J")
    if not is_abelian_complex(h, J):
        raise PreconditionError("J is not an abelian complex structure")
    n = h.dim + 1
    br = {}
    for a in range(h.dim):
        br[(0, a + 1)] = (0,) + la.column(D, a)
        for b in range(a + 1, h.dim):
            br[(a + 1, b + 1)] = (0,) + h.c[a][b]
    L = LieAlgebra.from_brackets(n, br)
    g = Metric(_embed([la.identity(1), _hermitian_metric([J])]))
    return CatalogEntry(name, dict(params or {}), L, _one_structure(J), g, dict(expected or {}))


def quaternionic_J(n: int) -> tuple:
    """``J_i`` on R^{4n} in the ordering ``tau_r, tau_{n+r}, tau_{2n+r}, tau_{3n+r}``."""
    out = []
    for L4 in (LI, LJ, LK):
        m = [[0] * (4 * n) for _ in range(4 * n)]
        for r in range(n):
            for p in range(4):
                for q in range(4):
                    m[p * n + r][q * n + r] = L4[p][q]
        out.append(la.mat(m))
    return tuple(out)


def _vertical_so3(delta) -> dict:
    return {(i, j): la.scale(2 * delta, la.unit(3, k)) for i, j, k in EVEN_PERMS}


def _pad(v, n: int, off: int = 0):
    out = [0] * n
    for a, x in enumerate(v):
        out[off + a] = x
    return tuple(out)


def so3_semidirect(n: int, delta) -> CatalogEntry:
    delta = la.frac(delta)
    if delta == 0:
        raise PreconditionError("delta must be nonzero")
    if n < 1:
        raise PreconditionError("n must be positive")
    Js = quaternionic_J(n)
    dim = 4 * n + 3
    br = {(i, j): _pad(v, dim) for (i, j), v in _vertical_so3(delta).items()}
    for i in range(3):
        for a in range(4 * n):
            br[(i, a + 3)] = _pad(la.scale(delta, la.column(Js[i], a)), dim, 3)
    L = LieAlgebra.from_brackets(dim, br)
    exp = {"psi": ("scalar", -delta), "beta": 2 * delta, "delta": delta, "Z_zero": True,
           "case": "PsiInvertible"}
    if n == 1:
        exp["dim7"] = "so(3)⋉ℝ⁴"
    return CatalogEntry("so3_semidirect", {"n": n, "delta": delta}, L, _three_structure(Js),
                        Metric.identity(dim), exp)


def _product_with_so3(h: LieAlgebra, Js, delta, name: str, params: dict, expected: dict) -> CatalogEntry:
    delta = la.frac(delta)
    if delta == 0:
        raise PreconditionError("delta must be nonzero")
    dim = h.dim + 3
    br = {(i, j): _pad(v, dim) for (i, j), v in _vertical_so3(delta).items()}
    for a in range(h.dim):
        for b in range(a + 1, h.dim):
            br[(a + 3, b + 3)] = _pad(h.c[a][b], dim, 3)
    L = LieAlgebra.from_brackets(dim, br)
    g = Metric(_embed([la.identity(3), _hermitian_metric(Js)]))
    return CatalogEntry(name, params, L, _three_structure(Js), g, expected)


AFF_C = LieAlgebra.from_brackets(4, {(0, 2): {2: 1}, (0, 3): {3: 1}, (1, 2): {3: 1}, (1, 3): {2: -1}})
AFF_C_TRIPLE = (
    la.mat([(0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0)]),
    la.mat([(0, 0, -1, 0), (0, 0, 0, -1), (1, 0, 0, 0), (0, 1, 0, 0)]),
    la.mat([(0, 0, 0, -1), (0, 0, 1, 0), (0, -1, 0, 0), (1, 0, 0, 0)]),
)


def _quaternionic_cocycle(n: int, lam, parts: Sequence[int]) -> Form:
    """The ``lambda``-scaled cocycle of the quaternionic examples, restricted to ``parts``."""
    t = lambda q, r: q * n + r
    comps = {}

    def put(a, b, k, c):
        key, s = ((a, b), 1) if a < b else ((b, a), -1)
        val = list(comps.get(key, (0, 0, 0)))
        val[k] += s * c
        comps[key] = tuple(val)

    for r in range(n):
        pairs = {0: [((0, 2), 1), ((3, 1), -1)],
                 1: [((0, 1), 1), ((2, 3), -1)],
                 2: [((0, 3), 1), ((1, 2), -1)]}
        for k in parts:
            for (p, q), c in pairs[k]:
                put(t(p, r), t(q, r), k, c * lam)
    return Form(4 * n, 2, 3, comps)


def _quaternionic_entry(name: str, n: int, lam, parts, expected: dict) -> CatalogEntry:
    lam = la.frac(lam)
    if lam == 0:
        raise PreconditionError("lambda must be nonzero")
    if n < 1:
        raise PreconditionError("n must be positive")
    theta = _quaternionic_cocycle(n, lam, parts)
    base = {"Z_zero": True, "delta": Fraction(0), "psi": ("scalar", Fraction(0)), "beta": Fraction(0),
            "case": "PsiZero_ZZero_DeltaZero"}
    base.update(expected)
    return central_extension(LieAlgebra.abelian(4 * n), theta, quaternionic_J(n), name,
                             {"n": n, "lambda": lam}, base)


def _heisenberg_real(n: int = 1) -> CatalogEntry:
    if n < 1:
        raise PreconditionError("n must be positive")
    J = la.from_columns([la.unit(2 * n, n + i) for i in range(n)]
                        + [la.scale(-1, la.unit(2 * n, i)) for i in range(n)])
    sigma = Form(2 * n, 2, 1, {(i, n + i): 2 for i in range(n)})
    exp = {"labels": ["Sasakian"], "sasaki_alpha": Fraction(1)}
    if n == 1:
        exp["dim3"] = "𝔥₁^ℝ"
    return central_extension(LieAlgebra.abelian(2 * n), sigma, J, "heisenberg_real", {"n": n}, exp)


def _aff_R() -> CatalogEntry:
    h = LieAlgebra.from_brackets(2, {(0, 1): {1: 1}})
    J = la.from_columns([(0, 1), (-1, 0)])
    return central_extension(h, Form(2, 2), J, "aff_R", {},
                             {"dim3": "aff(ℝ)×ℝ", "labels": ["coKähler"]})


def _aff_C_hypercomplex(x1=0, y1=0, x2=0, y2=0, x3=0, y3=0) -> CatalogEntry:
    xs = [(la.frac(x1), la.frac(y1)), (la.frac(x2), la.frac(y2)), (la.frac(x3), la.frac(y3))]
    comps = {}
    for k, (x, y) in enumerate(xs):
        for key, c in (((0, 2), x), ((1, 3), -x), ((0, 3), y), ((1, 2), y)):
            val = list(comps.get(key, (0, 0, 0)))
            val[k] += c
            comps[key] = tuple(val)
    theta = Form(4, 2, 3, comps)
    return central_extension(AFF_C, theta, AFF_C_TRIPLE, "aff_C_hypercomplex",
                             {"x1": xs[0][0], "y1": xs[0][1], "x2": xs[1][0], "y2": xs[1][1],
                              "x3": xs[2][0], "y3": xs[2][1]},
                             {"dim7": "ℝ³×aff(ℂ)", "Z_zero": True, "delta": Fraction(0),
                              "psi": ("scalar", Fraction(0)), "beta": Fraction(0),
                              "case": "PsiZero_ZZero_DeltaZero"})


def _hypercomplex_R4(**a) -> CatalogEntry:
    """``R^3 (+)_theta R^4`` whose bracket is encoded by the 3x3 matrix with entries ``a<row><col>``."""
    A = [[la.frac(a.pop(f"a{r}{c}", 0)) for c in (1, 2, 3)] for r in (1, 2, 3)]
    if a:
        raise PreconditionError(f"unknown parameters {sorted(a)}")
    theta = theta_from_A(A)
    rank = la.rank(A)
    labels = {0: "ℝ⁷", 1: "𝔥₂^ℝ×ℝ²", 2: "𝔥₁^ℂ×ℝ", 3: "𝔥₁^ℍ"}
    params = {f"a{r + 1}{c + 1}": A[r][c] for r in range(3) for c in range(3)}
    return central_extension(LieAlgebra.abelian(4), theta, (LI, LJ, LK), "hypercomplex_R4", params,
                             {"dim7": labels[rank], "rank_A": rank, "Z_zero": True,
                              "delta": Fraction(0), "psi": ("scalar", Fraction(0)),
                              "beta": Fraction(0), "case": "PsiZero_ZZero_DeltaZero"})


def theta_from_A(A) -> Form:
    """Cocycle with ``[e1,e2] = -[e3,e4]``, ``[e1,e3] = [e2,e4]``, ``[e1,e4] = -[e2,e3]``
    given by the columns of ``A``."""
    cols = la.columns(la.mat(A))
    return Form(4, 2, 3, {(0, 1): cols[0], (2, 3): la.scale(-1, cols[0]),
                          (0, 2): cols[1], (1, 3): cols[1],
                          (0, 3): cols[2], (1, 2): la.scale(-1, cols[2])})


def _sasaki5_center(variant: str = "R4", r=1, s=1) -> CatalogEntry:
    r, s = la.frac(r), la.frac(s)
    if variant not in ("R4", "affR×R2", "affR×affR", "affRxR2", "affRxaffR"):
        raise PreconditionError(f"unknown variant {variant!r}")
    variant = variant.replace("x", "×")
    h = {(0, 1): {}, (2, 3): {}}
    if variant != "R4":
        if r == 0:
            raise PreconditionError("r must be nonzero")
        h[(0, 1)] = {1: r}
    if variant == "affR×affR":
        if s == 0:
            raise PreconditionError("s must be nonzero")
        h[(2, 3)] = {3: s}
    hl = LieAlgebra.from_brackets(4, {k: v for k, v in h.items() if v})
    J = la.from_columns([(0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0)])
    sigma = Form(4, 2, 1, {(0, 1): 2, (2, 3): 2})
    params = {"variant": variant}
    if variant != "R4":
        params["r"] = r
    if variant == "affR×affR":
        params["s"] = s
    return central_extension(hl, sigma, J, "sasaki5_center", params,
                             {"labels": ["Sasakian"], "sasaki_alpha": Fraction(1)})


def _sasaki5_g0(cos=1, sin=0) -> CatalogEntry:
    c, s = la.frac(cos), la.frac(sin)
    if c * c + s * s != 1:
        raise PreconditionError("(cos, sin) must lie on the unit circle")
    # [e_i, e_j]_k = -(coefficient of e^{ij} in de^k), basis e1..e5 as indices 0..4
    de = {
        0: {(0, 1): 2 * c, (2, 3): 2 * c},
        1: {(0, 1): 2 * s, (2, 3): 2 * s},
        2: {(3, 4): 1, (0, 2): s, (1, 3): s, (0, 3): c, (1, 2): -c},
        3: {(2, 4): -1, (0, 2): -c, (1, 3): -c, (0, 3): s, (1, 2): -s},
        4: {(0, 1): 2, (2, 3): 2},
    }
    br = {}
    for k, terms in de.items():
        for pair, coef in terms.items():
            br.setdefault(pair, {})[k] = -coef
    L = LieAlgebra.from_brackets(5, br)
    phi = la.from_columns([(0, -1, 0, 0, 0), (1, 0, 0, 0, 0), (0, 0, 0, -1, 0), (0, 0, 1, 0, 0),
                           (0, 0, 0, 0, 0)])
    S = AlmostContact(phi, la.unit(5, 4), la.unit(5, 4))
    return CatalogEntry("sasaki5_g0", {"cos": c, "sin": s}, L, S, Metric.identity(5),
                        {"labels": ["Sasakian"], "sasaki_alpha": Fraction(1), "center_dim": 0})


def dim3_algebra(a, b, alpha, beta, gamma) -> LieAlgebra:
    a, b, alpha, beta, gamma = map(la.frac, (a, b, alpha, beta, gamma))
    return LieAlgebra.from_brackets(3, {(0, 1): (0, a, b), (0, 2): (0, -b, a),
                                        (1, 2): (alpha, beta, gamma)})


def _dim3_family(a=0, b=0, alpha=0, beta=0, gamma=0) -> CatalogEntry:
    L = dim3_algebra(a, b, alpha, beta, gamma)
    if not jacobi_check(L):
        raise PreconditionError("parameters violate the Jacobi identity")
    phi = la.from_columns([(0, 0, 0), (0, 0, 1), (0, -1, 0)])
    S = AlmostContact(phi, la.unit(3, 0), la.unit(3, 0))
    params = dict(zip(("a", "b", "alpha", "beta", "gamma"), map(la.frac, (a, b, alpha, beta, gamma))))
    return CatalogEntry("dim3_family", params, L, S, Metric.identity(3), {})


def _quasi_sasaki_gk(n: int = 1, k: int = 1) -> CatalogEntry:
    if not 1 <= k <= n:
        raise PreconditionError("need 1 <= k <= n")
    J = la.from_columns([la.unit(2 * n, n + i) for i in range(n)]
                        + [la.scale(-1, la.unit(2 * n, i)) for i in range(n)])
    sigma = Form(2 * n, 2, 1, {(i, n + i): 2 for i in range(k)})
    return central_extension(LieAlgebra.abelian(2 * n), sigma, J, "quasi_sasaki_gk", {"n": n, "k": k},
                             {"quasi_sasakian": True, "heisenberg_k": k, "center_dim": 2 * (n - k) + 1})


def _aff_C_extension() -> CatalogEntry:
    return central_extension(AFF_C, Form(4, 2, 1, {(0, 1): 1}), AFF_C_TRIPLE[0], "aff_C_extension", {},
                             {"quasi_sasakian": False})


def _kenmotsu(n: int = 1, alpha=1) -> CatalogEntry:
    alpha = la.frac(alpha)
    if alpha == 0:
        raise PreconditionError("alpha must be nonzero")
    J = la.from_columns([la.unit(2 * n, n + i) for i in range(n)]
                        + [la.scale(-1, la.unit(2 * n, i)) for i in range(n)])
    D = la.mat_scale(-alpha, la.identity(2 * n))
    label = "Kenmotsu" if alpha == 1 else f"α-Kenmotsu({la.fmt(alpha)})"
    return semidirect_by_derivation(LieAlgebra.abelian(2 * n), J, D, "kenmotsu", {"n": n, "alpha": alpha},
                                    {"labels": [label], "characteristic": False})


def _heisenberg_semidirect() -> CatalogEntry:
    h = LieAlgebra.from_brackets(4, {(0, 1): {2: 1}})
    J = la.from_columns([(0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0)])
    D = la.mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]])
    return semidirect_by_derivation(h, J, D, "heisenberg_semidirect", {},
                                    {"two_step_solvable": False})


def _free_nilpotent_times_R(delta=0) -> CatalogEntry:
    delta = la.frac(delta)
    Js = quaternionic_J(1)
    Zs = [la.column(J, 0) for J in Js]
    br = {}
    for i, j, k in EVEN_PERMS:
        br[(i, j)] = la.sub(la.scale(2 * delta, la.unit(7, k)), _pad(Zs[k], 7, 3))
    L = LieAlgebra.from_brackets(7, br)
    return CatalogEntry("free_nilpotent_times_R", {"delta": delta}, L, _three_structure(Js),
                        Metric.identity(7),
                        {"dim7": "𝔫×ℝ" if delta == 0 else "so(3)×ℝ⁴", "Z_zero": False,
                         "delta": delta, "psi": ("scalar", Fraction(0)), "case": "PsiZero_ZNonzero"})


def _so3_times_R4(delta=1) -> CatalogEntry:
    delta = la.frac(delta)
    return _product_with_so3(LieAlgebra.abelian(4), quaternionic_J(1), delta, "so3_times_R4",
                             {"delta": delta},
                             {"dim7": "so(3)×ℝ⁴", "Z_zero": True, "delta": delta, "beta": Fraction(0),
                              "psi": ("scalar", Fraction(0)), "case": "PsiZero_ZZero_DeltaNonzero"})


def _so3_times_affC(delta=1) -> CatalogEntry:
    delta = la.frac(delta)
    return _product_with_so3(AFF_C, AFF_C_TRIPLE, delta, "so3_times_affC", {"delta": delta},
                             {"dim7": "so(3)×aff(ℂ)", "Z_zero": True, "delta": delta, "beta": Fraction(0),
                              "psi": ("scalar", Fraction(0)), "case": "PsiZero_ZZero_DeltaNonzero"})


CATALOG: dict[str, Callable[..., CatalogEntry]] = {
    "heisenberg_real": _heisenberg_real,
    "aff_R": _aff_R,
    "aff_C_hypercomplex": _aff_C_hypercomplex,
    "quaternionic_heisenberg": lambda n=1, lam=1: _quaternionic_entry(
        "quaternionic_heisenberg", int(n), lam, (0, 1, 2), {"dim7": "𝔥₁^ℍ"} if int(n) == 1 else {}),
    "complex_heisenberg_times_R": lambda n=1, lam=1: _quaternionic_entry(
        "complex_heisenberg_times_R", int(n), lam, (0, 1), {"dim7": "𝔥₁^ℂ×ℝ"} if int(n) == 1 else {}),
    "real_heisenberg_times_R2": lambda n=1, lam=1: _quaternionic_entry(
        "real_heisenberg_times_R2", int(n), lam, (0,), {"dim7": "𝔥₂^ℝ×ℝ²"} if int(n) == 1 else {}),
    "hypercomplex_R4": _hypercomplex_R4,
    "sasaki5_center": _sasaki5_center,
    "sasaki5_g0": _sasaki5_g0,
    "dim3_family": _dim3_family,
    "quasi_sasaki_gk": _quasi_sasaki_gk,
    "so3_semidirect": lambda n=1, delta=1: so3_semidirect(int(n), delta),
    "free_nilpotent_times_R": _free_nilpotent_times_R,
    "so3_times_R4": _so3_times_R4,
    "so3_times_affC": _so3_times_affC,
    "kenmotsu": _kenmotsu,
    "aff_C_extension": _aff_C_extension,
    "heisenberg_semidirect": _heisenberg_semidirect,
}

_INT_PARAMS = {"n", "k"}
_ALIASES = {"λ": "lam", "lambda": "lam", "α": "alpha", "β": "beta", "γ": "gamma", "δ": "delta",
            "θ": "theta"}


def catalog(name: str, params: Mapping | None = None) -> CatalogEntry:
    if name not in CATALOG:
        raise KeyError(f"unknown catalog entry {name!r}")
    kw = {}
    for k, v in (params or {}).items():
        k = _ALIASES.get(k, k)
        if k in _INT_PARAMS:
            v = int(v)
        elif k != "variant":
            v = la.frac(v)
        kw[k] = v
    try:
        return CATALOG[name](**kw)
    except TypeError as exc:
        raise PreconditionError(f"bad parameters for {name}: {exc}") from None


def exact_extension_isomorphism(h: LieAlgebra, fs: Sequence[Sequence], J) -> tuple:
    """For ``theta = sum d f_i (x) xi_i`` build the extension and the map onto the product.

    Returns ``(entry, product algebra, T)`` with ``T`` the matrix ``xi + X -> xi + sum f_i(X) xi_i + X``.
    """
    from .algebra import ce_differential
    m = len(fs)
    sig = [ce_differential(h, Form.from_covector(f)) for f in fs]
    entry = central_extension(h, Form.stack(sig), J, "exact_extension")
    n = h.dim + m
    T = [list(r) for r in la.identity(n)]
    for i, f in enumerate(fs):
        for a, x in enumerate(la.vec(f)):
            T[i][m + a] = x
    product = LieAlgebra.abelian(m).direct_sum(h)
    return entry, product, la.mat(T)
