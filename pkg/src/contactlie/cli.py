"""Command line front end.

Exit codes: 0 success, 1 mathematical failure, 2 input or schema error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructors, lattice
from .algebra import jacobi_check
from .contact import (characteristic_connection, classify_dim3, is_abelian_contact,
                      is_compatible, metric_class, normality_tensor, validate_almost_contact)
from .errors import ContactLieError, SchemaError
from .serialize import decode_document, encode, encode_document
from .three_contact import (Almost3Contact, canonical_check, canonical_torsion, case_analysis,
                            classify_dim7, identity_checks, is_abelian_3contact, reeb_killing_tensors,
                            structure_invariants, validate_almost_3contact)

OK, MATH_FAIL, INPUT_FAIL = 0, 1, 2


class Failure(Exception):
    """A mathematical check failed; ``report`` is emitted before exiting with 1."""

    def __init__(self, report: dict):
        super().__init__(report.get("error", "failure"))
        self.report = report


def parse_params(text: str | None) -> dict:
    out = {}
    if not text:
        return out
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise SchemaError("--params", f"expected K=V, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def load_input(args) -> tuple:
    if getattr(args, "catalog", None):
        try:
            e = constructors.catalog(args.catalog, parse_params(args.params))
        except KeyError as exc:
            raise SchemaError("--catalog", str(exc.args[0])) from None
        return e.algebra, e.structure, e.metric
    if not getattr(args, "input", None):
        raise SchemaError("$", "no input: give a JSON file or --catalog NAME")
    try:
        if args.input == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.input, encoding="utf-8") as fh:
                doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    return decode_document(doc)


def _need_structure(S):
    if S is None:
        raise SchemaError("$.structure", "missing")


def _need_metric(g):
    if g is None:
        raise SchemaError("$.metric", "missing")


def _jacobi(L):
    jr = jacobi_check(L)
    if not jr.ok:
        raise Failure({"ok": False, "violations": [
            {"identity": "jacobi", "where": list(jr.triple), "defect": encode(jr.defect)}]})


def cmd_validate(args) -> dict:
    L, S, g = load_input(args)
    _jacobi(L)
    report = {"ok": True, "jacobi": True}
    if S is not None:
        r = (validate_almost_3contact(L, S) if isinstance(S, Almost3Contact)
             else validate_almost_contact(L, S))
        report["structure"] = {"ok": r.ok, "h_dim": r.h_dim,
                               "violations": [v.to_dict() for v in r.violations]}
        if not r.ok:
            report["ok"] = False
            raise Failure(report)
        ab = is_abelian_3contact(L, S) if isinstance(S, Almost3Contact) else is_abelian_contact(L, S)
        report["abelian"] = ab.ok
        if not ab.ok:
            report["abelian_witness"] = ab.witness.to_dict()
    if g is not None and S is not None:
        structs = S.structures if isinstance(S, Almost3Contact) else (S,)
        report["metric_compatible"] = all(is_compatible(s, g) for s in structs)
        if not report["metric_compatible"]:
            report["ok"] = False
            raise Failure(report)
    return report


def cmd_classify(args) -> dict:
    L, S, g = load_input(args)
    _jacobi(L)
    _need_structure(S)
    dim7 = args.dim7 or (not args.dim3 and isinstance(S, Almost3Contact))
    if dim7:
        if not isinstance(S, Almost3Contact):
            raise SchemaError("$.structure", "--dim7 needs an almost 3-contact structure")
        return classify_dim7(L, S).to_dict()
    if isinstance(S, Almost3Contact):
        raise SchemaError("$.structure", "--dim3 needs a single almost contact structure")
    if args.dim3 or L.dim == 3:
        return classify_dim3(L, S).to_dict()
    _need_metric(g)
    return metric_class(L, S, g).to_dict()


def cmd_invariants(args) -> dict:
    L, S, g = load_input(args)
    _jacobi(L)
    _need_structure(S)
    if isinstance(S, Almost3Contact):
        inv = structure_invariants(L, S)
        out = inv.to_dict()
        out["case"] = case_analysis(L, S).case
        checks = identity_checks(L, S)
        out["identities"] = checks
        if not all(checks.values()):
            raise Failure({"ok": False, **out})
        return out
    nt = normality_tensor(L, S)
    out = {"normal": nt.is_normal, "N_phi": encode(nt.tensor),
           "abelian": is_abelian_contact(L, S).ok}
    if g is not None:
        out["metric_class"] = metric_class(L, S, g).to_dict()
    return out


def cmd_canonical(args) -> dict:
    L, S, g = load_input(args)
    _jacobi(L)
    _need_structure(S)
    if not isinstance(S, Almost3Contact):
        raise SchemaError("$.structure", "canonical needs an almost 3-contact structure")
    out = canonical_check(L, S).to_dict()
    if g is not None:
        out["reeb_killing"] = reeb_killing_tensors(L, S, g).to_dict()
    return out


def cmd_torsion(args) -> dict:
    from .connection import canonical_connection, characteristic, is_parallel_torsion
    L, S, g = load_input(args)
    _jacobi(L)
    _need_structure(S)
    _need_metric(g)
    if isinstance(S, Almost3Contact):
        T = canonical_torsion(L, S, g)
        out = {"torsion": encode(T), "kind": "canonical"}
        nab = canonical_connection(L, S, g) if args.check_parallel else None
    else:
        res = characteristic_connection(L, S, g)
        if not res.exists:
            raise Failure({"ok": False, "error": "no characteristic connection",
                           "reason": "ad_xi is not skew on Ker eta"})
        out = {"torsion": encode(res.torsion), "kind": "characteristic"}
        nab = characteristic(L, S, g) if args.check_parallel else None
    if nab is not None:
        out["parallel_torsion"] = is_parallel_torsion(nab, g)
    return out


def cmd_homology(args) -> dict:
    if args.group:
        if args.group.lower() != "q8":
            raise SchemaError("--group", f"unknown group {args.group!r}")
        if args.n is None:
            raise SchemaError("--n", "missing")
        return lattice.q8_abelianization(args.n).to_dict()
    if args.m is None or args.n is None:
        raise SchemaError("--m", "give --m M --n N or --group q8 --n N")
    return lattice.gamma_abelianization(args.m, args.n).to_dict()


def cmd_catalog(args) -> dict:
    if args.list or not args.name:
        return {"names": sorted(constructors.CATALOG)}
    try:
        e = constructors.catalog(args.name, parse_params(args.params))
    except KeyError as exc:
        raise SchemaError("--name", str(exc.args[0])) from None
    return encode_document(e.algebra, e.structure, e.metric, name=e.name, params=e.params)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="contactlie", description=__doc__.splitlines()[0])
    p.add_argument("--output", choices=("json", "text"), default=None)
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp):
        sp.add_argument("input", nargs="?", help="JSON document, or - for stdin")
        sp.add_argument("--catalog", metavar="NAME")
        sp.add_argument("--params", metavar="K=V,...")
        sp.add_argument("--output", choices=("json", "text"), default=argparse.SUPPRESS)
        return sp

    with_input(sub.add_parser("validate")).set_defaults(func=cmd_validate)
    c = with_input(sub.add_parser("classify"))
    g = c.add_mutually_exclusive_group()
    g.add_argument("--dim3", action="store_true")
    g.add_argument("--dim7", action="store_true")
    c.set_defaults(func=cmd_classify)
    with_input(sub.add_parser("invariants")).set_defaults(func=cmd_invariants)
    with_input(sub.add_parser("canonical")).set_defaults(func=cmd_canonical)
    t = with_input(sub.add_parser("torsion"))
    t.add_argument("--check-parallel", action="store_true")
    t.set_defaults(func=cmd_torsion)
    h = sub.add_parser("homology")
    h.add_argument("--m", type=int)
    h.add_argument("--n", type=int)
    h.add_argument("--group")
    h.add_argument("--output", choices=("json", "text"), default=argparse.SUPPRESS)
    h.set_defaults(func=cmd_homology)
    k = sub.add_parser("catalog")
    k.add_argument("--list", action="store_true")
    k.add_argument("--name")
    k.add_argument("--params", metavar="K=V,...")
    k.add_argument("--output", choices=("json", "text"), default=argparse.SUPPRESS)
    k.set_defaults(func=cmd_catalog)
    return p


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, dict) and v or isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict) or isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(map(str, v)) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(report: dict, fmt: str, stream=None):
    stream = stream or sys.stdout
    if fmt == "text":
        stream.write("\n".join(_text(report)) + "\n")
    else:
        stream.write(json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_FAIL if exc.code else OK
    fmt = args.output or os.environ.get("CONTACTLIE_OUTPUT", "json")
    if fmt not in ("json", "text"):
        sys.stderr.write(f"CONTACTLIE_OUTPUT must be json or text, got {fmt!r}\n")
        return INPUT_FAIL
    try:
        report = args.func(args)
    except SchemaError as exc:
        emit({"ok": False, "error": "schema", "path": exc.path, "message": exc.message}, fmt, sys.stderr)
        return INPUT_FAIL
    except OSError as exc:
        emit({"ok": False, "error": "io", "message": str(exc)}, fmt, sys.stderr)
        return INPUT_FAIL
    except Failure as exc:
        emit(encode(exc.report), fmt)
        return MATH_FAIL
    except ContactLieError as exc:
        emit({"ok": False, "error": type(exc).__name__, "message": str(exc)}, fmt)
        return MATH_FAIL
    emit(encode(report), fmt)
    return OK


if __name__ == "__main__":
    sys.exit(main())
