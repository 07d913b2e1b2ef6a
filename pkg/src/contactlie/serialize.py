"""JSON encoding of rationals, algebras, structures, metrics and forms.

Rationals are strings ``"p"`` or ``"p/q"`` in lowest terms with ``q > 0``.
Indices in documents are 1-based.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import linalg as la
from .algebra import Form, LieAlgebra, Metric
from .contact import AlmostContact
from .errors import SchemaError
from .three_contact import Almost3Contact


def encode_rational(x) -> str:
    return la.fmt(la.frac(x))


def decode_rational(v: Any, path: str = "$") -> Fraction:
    if isinstance(v, bool):
        raise SchemaError(path, "expected a rational, got a boolean")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(path, f"not a rational string: {v!r}") from None
    raise SchemaError(path, f"expected a rational string, got {type(v).__name__}")


def _vector(v: Any, n: int | None, path: str) -> tuple:
    if not isinstance(v, list):
        raise SchemaError(path, "expected an array")
    if n is not None and len(v) != n:
        raise SchemaError(path, f"expected {n} entries, got {len(v)}")
    return tuple(decode_rational(x, f"{path}[{i}]") for i, x in enumerate(v))


def _matrix(v: Any, n: int, path: str) -> tuple:
    if not isinstance(v, list) or len(v) != n:
        raise SchemaError(path, f"expected a {n}x{n} array")
    return tuple(_vector(r, n, f"{path}[{i}]") for i, r in enumerate(v))


def _field(doc: Any, key: str, path: str):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    if key not in doc:
        raise SchemaError(f"{path}.{key}", "missing")
    return doc[key]


def encode_algebra(L: LieAlgebra) -> dict:
    br = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            v = L.c[i][j]
            if not la.is_zero(v):
                br.append({"i": i + 1, "j": j + 1, "coeffs": [encode_rational(x) for x in v]})
    return {"dim": L.dim, "brackets": br}


def decode_algebra(doc: Any, path: str = "$") -> LieAlgebra:
    n = _field(doc, "dim", path)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError(f"{path}.dim", "expected a positive integer")
    brs = doc.get("brackets", [])
    if not isinstance(brs, list):
        raise SchemaError(f"{path}.brackets", "expected an array")
    table = {}
    for a, b in enumerate(brs):
        p = f"{path}.brackets[{a}]"
        i, j = _field(b, "i", p), _field(b, "j", p)
        for key, v in (("i", i), ("j", j)):
            if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
                raise SchemaError(f"{p}.{key}", f"expected an index in 1..{n}")
        if i == j:
            raise SchemaError(p, "bracket of a basis vector with itself")
        coeffs = _vector(_field(b, "coeffs", p), n, f"{p}.coeffs")
        key, sgn = ((i - 1, j - 1), 1) if i < j else ((j - 1, i - 1), -1)
        if key in table:
            raise SchemaError(p, f"bracket ({i},{j}) given twice")
        table[key] = la.scale(sgn, coeffs)
    return LieAlgebra.from_brackets(n, table)


def rational_array(x: Any) -> Any:
    """Nested arrays of numbers as nested arrays of rational strings."""
    if isinstance(x, (tuple, list)):
        return [rational_array(y) for y in x]
    return encode_rational(x)


def encode_structure(S: AlmostContact) -> dict:
    return {"phi": rational_array(S.phi), "xi": rational_array(S.xi), "eta": rational_array(S.eta)}


def decode_structure(doc: Any, n: int, path: str = "$") -> AlmostContact:
    phi = _matrix(_field(doc, "phi", path), n, f"{path}.phi")
    xi = _vector(_field(doc, "xi", path), n, f"{path}.xi")
    eta = _vector(_field(doc, "eta", path), n, f"{path}.eta")
    return AlmostContact(phi, xi, eta)


def encode_3structure(T: Almost3Contact) -> dict:
    return {"structures": [encode_structure(S) for S in T.structures]}


def decode_3structure(doc: Any, n: int, path: str = "$") -> Almost3Contact:
    ss = _field(doc, "structures", path)
    if not isinstance(ss, list) or len(ss) != 3:
        raise SchemaError(f"{path}.structures", "expected three structures")
    return Almost3Contact(tuple(decode_structure(s, n, f"{path}.structures[{i}]")
                                for i, s in enumerate(ss)))


def encode_metric(g: Metric) -> dict:
    return {"g": rational_array(g.g)}


def decode_metric(doc: Any, n: int, path: str = "$") -> Metric:
    from .errors import PreconditionError
    g = _matrix(_field(doc, "g", path), n, f"{path}.g")
    try:
        return Metric(g)
    except PreconditionError as exc:
        raise SchemaError(f"{path}.g", str(exc)) from None


def encode_form(w: Form) -> dict:
    return {"n": w.n, "k": w.k, "m": w.m,
            "components": [{"idx": [i + 1 for i in idx], "value": rational_array(v if w.m > 1 else v[0])}
                           for idx, v in sorted(w.comps.items())]}


def encode(x: Any) -> Any:
    """Generic JSON-ready view of package values.

    Plain ints (dimensions, indices, ranks) stay ints; ``Fraction`` values become
    rational strings.  Numeric vectors and matrices should hold ``Fraction`` entries.
    """
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, Fraction):
        return encode_rational(x)
    if isinstance(x, (tuple, list)):
        return [encode(y) for y in x]
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, Form):
        return encode_form(x)
    if isinstance(x, LieAlgebra):
        return encode_algebra(x)
    if isinstance(x, Metric):
        return encode_metric(x)
    if isinstance(x, AlmostContact):
        return encode_structure(x)
    if isinstance(x, Almost3Contact):
        return encode_3structure(x)
    if hasattr(x, "to_dict"):
        return x.to_dict()
    raise TypeError(f"cannot encode {type(x).__name__}")


def encode_document(L: LieAlgebra, structure=None, metric: Metric | None = None, **extra) -> dict:
    doc = {"algebra": encode_algebra(L)}
    if structure is not None:
        doc["structure"] = encode(structure)
    if metric is not None:
        doc["metric"] = encode_metric(metric)
    doc.update({k: encode(v) for k, v in extra.items()})
    return doc


def decode_document(doc: Any) -> tuple:
    """``(algebra, structure or None, metric or None)`` from a full input document."""
    L = decode_algebra(_field(doc, "algebra", "$"), "$.algebra")
    S = g = None
    if "structure" in doc:
        s = doc["structure"]
        S = (decode_3structure(s, L.dim, "$.structure") if isinstance(s, dict) and "structures" in s
             else decode_structure(s, L.dim, "$.structure"))
    if "metric" in doc:
        g = decode_metric(doc["metric"], L.dim, "$.metric")
    return L, S, g


def dumps(obj: Any) -> str:
    return json.dumps(encode(obj), sort_keys=True, ensure_ascii=False, indent=2)
