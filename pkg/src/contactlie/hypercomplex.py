"""Hypercomplex structures on Lie algebras and the 4-dimensional recognizer."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .algebra import (LieAlgebra, abelian_defect, center, derived_series,
                      is_complex_structure, is_integrable)
from .errors import DimensionError
from .linalg import Matrix

# Left multiplication by i, j, k on H = R^4 with basis 1, i, j, k.
LI = la.from_columns([(0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0)])
LJ = la.from_columns([(0, 0, 1, 0), (0, 0, 0, -1), (-1, 0, 0, 0), (0, 1, 0, 0)])
LK = la.from_columns([(0, 0, 0, 1), (0, 0, 1, 0), (0, -1, 0, 0), (-1, 0, 0, 0)])
QUATERNION_TRIPLE = (LI, LJ, LK)


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for r, row in enumerate(b):
            for c, x in enumerate(row):
                out[off + r][off + c] = x
        off += len(b)
    return la.mat(out)


@dataclass(frozen=True)
class HypercomplexReport:
    is_hypercomplex: bool
    is_abelian_hypercomplex: bool
    failures: tuple = ()

    def __bool__(self) -> bool:
        return self.is_hypercomplex


def hypercomplex_check(h: LieAlgebra, J1: Matrix, J2: Matrix, J3: Matrix) -> HypercomplexReport:
    """Quaternion relations, integrability and abelianness of ``(J1, J2, J3)``."""
    if h.dim % 4:
        raise DimensionError("hypercomplex structures need dimension divisible by 4")
    Js = [la.mat(J) for J in (J1, J2, J3)]
    fails = []
    for i, J in enumerate(Js):
        if not is_complex_structure(J):
            fails.append(f"J{i + 1}^2 = -I")
    mm = la.matmul
    if mm(Js[0], Js[1]) != Js[2]:
        fails.append("J1 J2 = J3")
    if mm(Js[1], Js[0]) != la.mat_scale(-1, Js[2]):
        fails.append("J2 J1 = -J3")
    almost = not fails
    for i, J in enumerate(Js):
        if almost and not is_integrable(h, J):
            fails.append(f"N_J{i + 1} = 0")
    integrable = not fails
    abelian = integrable and all(abelian_defect(h, J) is None for J in Js)
    return HypercomplexReport(integrable, abelian, tuple(fails))


def recognize_4d(h: LieAlgebra, J1: Matrix, J2: Matrix, J3: Matrix) -> str:
    """``"ℝ⁴"``, ``"aff(ℂ)"`` or ``"neither"`` for a 4-dimensional algebra."""
    if h.dim != 4:
        raise DimensionError("recognize_4d needs a 4-dimensional algebra")
    rep = hypercomplex_check(h, J1, J2, J3)
    if not rep.is_abelian_hypercomplex:
        return "neither"
    if h.is_abelian():
        return "ℝ⁴"
    ds = derived_series(h)
    if ds.derived_algebra.dim == 2 and center(h).is_zero() and ds.is_2step_solvable:
        return "aff(ℂ)"
    return "neither"
