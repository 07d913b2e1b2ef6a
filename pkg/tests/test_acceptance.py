"""End-to-end acceptance run, one test per criterion.

Each test leaves a short detail string in ``user_properties``; the conftest hook
prints one PASS/FAIL line per criterion at the end of the session.
"""
import random
from fractions import Fraction
from itertools import combinations, product

import pytest
import sympy as sp

import oracles as O
from contactlie import (CATALOG, AlmostContact, Form, NotApplicableError, canonical_check,
                        canonical_connection, canonical_torsion, catalog, ce_differential,
                        central_extension, classify_dim3, classify_dim7, covariant_derivative,
                        curvature, decompose_central_extension, decompose_semidirect,
                        gamma_abelianization, identity_checks, is_abelian_3contact,
                        is_abelian_contact, is_canonical_connection, is_parallel_torsion,
                        levi_civita, like_bismut, normality_tensor, pair_symmetry, reeb_killing_tensors,
                        ricci, rotation_integer_form, semidirect_abelianization,
                        semidirect_by_derivation, structure_invariants, with_skew_torsion)
from contactlie import linalg as la
from contactlie.constructors import dim3_algebra
from contactlie.contact import adapted_frame, deta
from contactlie.lattice import cyclic_presentation, q8_abelianization, q8_presentation
from contactlie.three_contact import DIM7_LABELS, RANK_LABELS

EX = {"ex1": "quaternionic_heisenberg", "ex2": "complex_heisenberg_times_R",
      "ex3": "real_heisenberg_times_R2"}
EX_GRID = [(n, lam) for n in (1, 2) for lam in (1, 2)]
GRID3 = list(product((-1, 0, 1, 2), repeat=5))


def detail(record_property, text):
    record_property("detail", text)


def ex(key, n, lam):
    return catalog(EX[key], {"n": n, "lam": lam})


def three_contact_fixtures():
    out = [catalog(EX[k], {"n": n, "lam": lam}) for k in EX for n, lam in EX_GRID]
    out += [catalog("so3_semidirect", {"n": n, "delta": d}) for n in (1, 2) for d in (1, 2, -1)]
    out += [catalog("hypercomplex_R4", p) for p in ({}, {"a11": 1}, {"a11": 1, "a22": 1},
                                                     {"a11": 1, "a22": 2, "a33": 3})]
    out += [catalog(name) for name in ("aff_C_hypercomplex", "so3_times_R4", "so3_times_affC",
                                       "free_nilpotent_times_R")]
    out += [catalog("aff_C_hypercomplex", {"x1": 1, "y3": 2}),
            catalog("free_nilpotent_times_R", {"delta": 1}), catalog("so3_times_R4", {"delta": 2})]
    return out


def contact_fixtures():
    out = [catalog("heisenberg_real", {"n": n}) for n in (1, 2, 3)]
    out += [catalog(name) for name in ("aff_C_extension", "aff_R", "kenmotsu", "heisenberg_semidirect",
                                       "sasaki5_g0")]
    out += [catalog("sasaki5_center", p) for p in ({"variant": "R4"}, {"variant": "affR×R2", "r": 2},
                                                   {"variant": "affR×affR", "r": 1, "s": 2})]
    out += [catalog("sasaki5_g0", {"cos": Fraction(3, 5), "sin": Fraction(4, 5)}),
            catalog("quasi_sasaki_gk", {"n": 3, "k": 2}), catalog("kenmotsu", {"n": 2, "alpha": 2})]
    return out


def jacobi_system(a, b, alpha, beta, gamma):
    return a * alpha == 0 and a * beta + b * gamma == 0 and a * gamma - b * beta == 0


def dim3_table(a, b, alpha, beta, gamma):
    R = sp.Integer
    return {(0, 1): [R(0), R(a), R(b)], (0, 2): [R(0), R(-b), R(a)],
            (1, 2): [R(alpha), R(beta), R(gamma)]}


def eta_dict(T, i):
    return {(j,): sp.Rational(x.numerator, x.denominator) for j, x in enumerate(T.eta(i)) if x}


def oracle_sum_eta_deta(L, T):
    table, n = O.table_of(L), L.dim
    parts = [O.wedge(eta_dict(T, i), O.ce_d(table, n, eta_dict(T, i), 1)) for i in range(3)]
    return O.add_forms(*parts)


def oracle_eta123(T):
    return O.wedge(eta_dict(T, 0), O.wedge(eta_dict(T, 1), eta_dict(T, 2)))


# ------------------------------------------------------------------------ 1


@pytest.mark.criterion(1, "abelian structures are normal")
def test_criterion_1_normality(record_property):
    checked = 0
    for e in contact_fixtures():
        if is_abelian_contact(e.algebra, e.structure):
            assert normality_tensor(e.algebra, e.structure).is_normal, e.name
            checked += 1
    for e in three_contact_fixtures():
        if is_abelian_3contact(e.algebra, e.structure):
            for S in e.structure.structures:
                assert normality_tensor(e.algebra, S).is_normal, e.name
            checked += 1
    assert checked >= 12
    detail(record_property, f"{checked} abelian fixtures, N = 0 on all")


# ------------------------------------------------------------------------ 2


@pytest.mark.criterion(2, "dim-3 classification over the full grid")
def test_criterion_2_dim3(record_property):
    seen, valid = set(), 0
    for p in GRID3:
        table = dim3_table(*p)
        assert jacobi_system(*p) == O.jacobi_holds(table, 3), p
        if not jacobi_system(*p):
            continue
        valid += 1
        e = catalog("dim3_family", dict(zip(("a", "b", "alpha", "beta", "gamma"), p)))
        assert e.algebra == dim3_algebra(*p)
        r = classify_dim3(e.algebra, e.structure)
        label, lam = O.dim3_fingerprint(table)
        assert r.family == label, (p, r.family, label)
        if label == "r′_{3,λ}":
            a, b = p[0], p[1]
            assert r.lam == abs(Fraction(a, b)) and sp.Rational(r.lam.numerator, r.lam.denominator) == lam
            assert r.label == f"r′_{{3,{la.fmt(r.lam)}}}"
        seen.add(r.family)
    assert seen == {"ℝ³", "𝔥₁^ℝ", "aff(ℝ)×ℝ", "so(3)", "sl(2,ℝ)", "r_{3,1}", "r′_{3,λ}"}
    detail(record_property, f"{valid} admissible points of {len(GRID3)}, 7 classes")


# ------------------------------------------------------------------------ 3


def random_rank_matrix(rng, r):
    D = sp.diag(*([1] * r + [0] * (3 - r)))
    for i in range(r):
        D[i, i] = rng.choice([1, 2, -1, 3])
    return O.random_unimodular(rng, 3) * D * O.random_unimodular(rng, 3)


@pytest.mark.criterion(3, "dim-7 classification")
def test_criterion_3_dim7(record_property):
    reps = [("so3_semidirect", {"delta": 1}), ("aff_C_hypercomplex", {}),
            ("real_heisenberg_times_R2", {}), ("complex_heisenberg_times_R", {}),
            ("quaternionic_heisenberg", {}), ("so3_times_R4", {}), ("so3_times_affC", {}),
            ("free_nilpotent_times_R", {}), ("hypercomplex_R4", {})]
    labels = set()
    for name, params in reps:
        e = catalog(name, params)
        got = classify_dim7(e.algebra, e.structure).label
        assert got == e.expected["dim7"], name
        labels.add(got)
    assert labels == set(DIM7_LABELS)
    rng = random.Random(20261019)
    for r in (1, 2, 3):
        for _ in range(10):
            A = random_rank_matrix(rng, r)
            assert A.rank() == r
            params = {f"a{i + 1}{j + 1}": int(A[i, j]) for i in range(3) for j in range(3)}
            e = catalog("hypercomplex_R4", params)
            res = classify_dim7(e.algebra, e.structure)
            assert res.label == RANK_LABELS[r]
            assert la.rank(res.A) == r
            assert O.derived_dim(O.table_of(e.algebra), 7) == r
    detail(record_property, "9 labels, 30 random A")


# ------------------------------------------------------------------------ 4


@pytest.mark.criterion(4, "structural identities of abelian triples")
def test_criterion_4_identities(record_property):
    count = 0
    for e in three_contact_fixtures():
        L, T = e.algebra, e.structure
        if not is_abelian_3contact(L, T):
            continue
        checks = identity_checks(L, T)
        assert all(checks.values()), (e.name, [k for k, v in checks.items() if not v])
        rank = structure_invariants(L, T).psi_rank
        assert rank % 4 == 0
        if L.dim == 7:
            assert rank in (0, 4)
        count += 1
    detail(record_property, f"{count} fixtures")


# ------------------------------------------------------------------------ 5


@pytest.mark.criterion(5, "canonical check agrees with Reeb Killing tensors")
def test_criterion_5_canonical(record_property):
    fixtures = three_contact_fixtures()
    for e in fixtures:
        a = canonical_check(e.algebra, e.structure).beta
        assert reeb_killing_tensors(e.algebra, e.structure, e.metric).beta == a, e.name
    for key in EX:
        for n, lam in EX_GRID:
            e = ex(key, n, lam)
            assert canonical_check(e.algebra, e.structure).beta == 0
    for n in (1, 2):
        for delta in (1, 2, -1):
            e = catalog("so3_semidirect", {"n": n, "delta": delta})
            assert canonical_check(e.algebra, e.structure).beta == 2 * delta
    detail(record_property, f"{len(fixtures)} metric fixtures")


# ------------------------------------------------------------------------ 6


@pytest.mark.criterion(6, "torsion formulas and canonical connection")
def test_criterion_6_torsion(record_property):
    cases = 0
    for key in EX:
        for n, lam in EX_GRID:
            e = ex(key, n, lam)
            L, T, g = e.algebra, e.structure, e.metric
            Tor = canonical_torsion(L, T, g)
            assert O.package_form_dict(Tor) == oracle_sum_eta_deta(L, T)
            nab = with_skew_torsion(levi_civita(L, g), Tor, g)
            assert is_canonical_connection(L, T, g, nab, 0)
            assert nab == like_bismut(L, g)
            cases += 1
    for n in (1, 2):
        for delta in (1, 2, -1):
            e = catalog("so3_semidirect", {"n": n, "delta": delta})
            L, T, g = e.algebra, e.structure, e.metric
            Tor = canonical_torsion(L, T, g)
            e123 = oracle_eta123(T)
            want = O.add_forms(oracle_sum_eta_deta(L, T), e123, coeffs=[1, 8 * delta])
            assert O.package_form_dict(Tor) == want
            assert want == O.add_forms(e123, coeffs=[2 * delta])
            nab = with_skew_torsion(levi_civita(L, g), Tor, g)
            assert is_canonical_connection(L, T, g, nab, 2 * delta)
            cases += 1
    detail(record_property, f"{cases} fixtures")


# ------------------------------------------------------------------------ 7


def theta(l):
    return 2 + l


@pytest.mark.criterion(7, "parallel torsion")
def test_criterion_7_parallel_torsion(record_property):
    for n, lam in EX_GRID:
        for key, want in (("ex1", False), ("ex2", False), ("ex3", True)):
            e = ex(key, n, lam)
            nab = canonical_connection(e.algebra, e.structure, e.metric)
            assert is_parallel_torsion(nab, e.metric) is want, (key, n, lam)
            if key == "ex1":
                de1 = deta(e.algebra, e.structure.structures[0])
                got = covariant_derivative(nab, de1, "form")[1]
                assert O.package_form_dict(got) == O.two_form(
                    [(theta(r), theta(3 * n + r), -2 * lam ** 2) for r in range(1, n + 1)]
                    + [(theta(n + r), theta(2 * n + r), 2 * lam ** 2) for r in range(1, n + 1)])
    for n in (1, 2):
        e = catalog("so3_semidirect", {"n": n, "delta": 1})
        nab = canonical_connection(e.algebra, e.structure, e.metric)
        assert is_parallel_torsion(nab, e.metric)
    detail(record_property, "ex1/ex2 false, ex3 and so(3) semidirect true")


# ------------------------------------------------------------------------ 8


@pytest.mark.criterion(8, "curvature consequences")
def test_criterion_8_curvature(record_property):
    for key in EX:
        for n, lam in EX_GRID:
            e = ex(key, n, lam)
            Ric = ricci(canonical_connection(e.algebra, e.structure, e.metric), e.metric)
            assert Ric == la.transpose(Ric), (key, n, lam)
    parallel = 0
    for e in three_contact_fixtures():
        if canonical_check(e.algebra, e.structure).beta is None:
            continue
        nab = canonical_connection(e.algebra, e.structure, e.metric)
        if is_parallel_torsion(nab, e.metric):
            assert pair_symmetry(nab, e.metric, curvature(nab)), e.name
            parallel += 1
    assert parallel > 0
    detail(record_property, f"pair symmetry on {parallel} parallel fixtures")


# ------------------------------------------------------------------------ 9


def invariants(r):
    return sorted(r.invariant_factors), r.free_rank


@pytest.mark.criterion(9, "first homology of the lattices")
def test_criterion_9_homology(record_property):
    for n in (1, 2, 3):
        assert invariants(gamma_abelianization(2, n)) == ([2] * (4 * n + 1), 0)
        assert invariants(gamma_abelianization(4, n)) == ([2] * (2 * n) + [4], 0)
        assert invariants(gamma_abelianization(3, n)) == ([3] * (2 * n + 1), 0)
        assert invariants(gamma_abelianization(6, n)) == ([6], 0)
        assert invariants(gamma_abelianization(1, n)) == ([], 4 * n)
        assert invariants(q8_abelianization(n)) == ([2] * (n + 2), 0)
        for m in (2, 3, 4, 6):
            assert gamma_abelianization(m, n).b1 == 0
    present = [m for m in range(1, 101) if rotation_integer_form(m) is not None]
    assert present == [1, 2, 3, 4, 6]
    assert present == [m for m in range(1, 101) if O.integer_rotation_exists(m)]
    detail(record_property, "n = 1..3, m <= 100")


# ------------------------------------------------------------------------ 10


def random_form(rng, n, k):
    return Form(n, k, 1, {idx: rng.randint(-3, 3) for idx in combinations(range(n), k)})


def round_trips(e):
    L, S = e.algebra, e.structure
    done = 0
    P = adapted_frame(S)
    try:
        data = decompose_central_extension(L, S)
    except NotApplicableError:
        pass
    else:
        rebuilt = central_extension(data.h, data.sigma, data.J)
        assert rebuilt.algebra == L.change_basis(P)
        assert rebuilt.structure.phi == la.matmul(la.inverse(P), la.matmul(S.phi, P))
        done += 1
    try:
        data = decompose_semidirect(L, S)
    except NotApplicableError:
        pass
    else:
        assert semidirect_by_derivation(data.h, data.J, data.D).algebra == L.change_basis(P)
        done += 1
    return done


@pytest.mark.criterion(10, "oracle cross-checks")
def test_criterion_10_oracles(record_property):
    rng = random.Random(10)
    compared = 0
    for _ in range(200):
        n = rng.randint(1, 6)
        table = O.random_lie_table(rng, n)
        L = O.to_package(n, table)
        for k in range(1, n - 1):
            w = random_form(rng, n, k)
            dw = ce_differential(L, w)
            assert ce_differential(L, dw).is_zero()
            if k <= 2:
                comps = {idx: sp.Rational(v[0].numerator, v[0].denominator) for idx, v in w.comps.items()}
                assert O.package_form_dict(dw) == O.ce_d(table, n, comps, k)
                compared += 1
    for n in (1, 2, 3):
        for m in (1, 2, 3, 4, 6):
            assert semidirect_abelianization(cyclic_presentation(m, n)) == gamma_abelianization(m, n)
        assert semidirect_abelianization(q8_presentation(n)) == q8_abelianization(n)
    trips = 0
    for e in contact_fixtures():
        if is_abelian_contact(e.algebra, e.structure):
            trips += round_trips(e)
    for p in GRID3:
        if jacobi_system(*p):
            e = catalog("dim3_family", dict(zip(("a", "b", "alpha", "beta", "gamma"), p)))
            if is_abelian_contact(e.algebra, e.structure):
                trips += round_trips(e)
    assert trips > 0
    detail(record_property, f"200 algebras, {compared} differentials vs oracle, {trips} round trips")


def test_every_catalog_entry_is_covered():
    names = {e.name for e in contact_fixtures() + three_contact_fixtures()} | {"dim3_family"}
    assert names == set(CATALOG)
    assert all(isinstance(e.structure, AlmostContact) for e in contact_fixtures())
