"""
Command line entry point.

    tanerve check SPEC [--kmax K] [--field F]
    tanerve nerve SPEC --beads 2 --from 0 --to 2 [--labels 0,1,2]
    tanerve horn SPEC [HORN] [--n N --j J --from A --to B]
    tanerve simplex SPEC COLLECTION
    tanerve selftest [--only necklace,kernel,...]

Every command prints one JSON report (sorted keys, stable order) to
stdout or to --out.  Exit codes: 0 when everything passes, 1 when a
verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .ainfty import (
    SpecError,
    _read_json,
    category_from_dict,
    check_functor,
    check_relations,
    check_units,
    load_functor,
)
from .exactlin import SignConvention, field_from_spec
from .necklace import Necklace
from .nerve import Nerve, basis_report, element_to_dict
from .quasicat import (
    HornData,
    collection_from_dict,
    faonte_check,
    horn_compatible,
    horn_fill,
    horn_from_dict,
    horn_to_dict,
    restrict_to_horn,
    tan_simplex_member,
    verify_filler,
)
from .report import SCHEMA_VERSION, Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _envelope(command: str, **body) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "tool": "tanerve", "version": __version__, "command": command, **body}


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_spec(path: str, field: str | None) -> dict:
    data = _read_json(path)
    if field is not None:
        field_from_spec(field)
        if "object_map" in data:
            for side in ("source", "target"):
                if isinstance(data.get(side), dict):
                    data[side] = {**data[side], "field": field}
        else:
            data["field"] = field
    return data


def _category(args) -> Any:
    data = _load_spec(args.spec, args.field)
    if "object_map" in data:
        raise InputError("expected a category spec, got a functor spec")
    return category_from_dict(data)


def _object(A, text: str):
    for x in A.objects:
        if str(x) == str(text):
            return x
    raise InputError(f"unknown object {text!r}; objects are {[str(x) for x in A.objects]}")


def _labels(A, text: str | None):
    if text is None:
        return None
    return tuple(_object(A, t.strip()) for t in text.split(",") if t.strip())


# --------------------------------------------------------------------------
# commands


def cmd_check(args) -> tuple[dict, int]:
    data = _load_spec(args.spec, args.field)
    if "object_map" in data:
        F = load_functor(data)
        reports = [check_relations(F.source), check_relations(F.target), check_functor(F, args.kmax)]
        kind = "functor"
    else:
        A = category_from_dict(data)
        reports = [check_relations(A, args.kmax), check_units(A)]
        kind = "category"
    passed = all(reports)
    doc = _envelope("check", input=str(args.spec), kind=kind, passed=passed, reports=[r.to_dict() for r in reports])
    return doc, EXIT_OK if passed else EXIT_FAIL


def cmd_nerve(args) -> tuple[dict, int]:
    A = _category(args)
    if args.beads is None or args.source is None or args.target is None:
        raise InputError("nerve needs --beads, --from and --to")
    try:
        T = Necklace.parse(args.beads)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    a, b = _object(A, args.source), _object(A, args.target)
    labels = _labels(A, args.labels)
    if labels is not None and (len(labels) != T.spine + 1 or labels[0] != a or labels[-1] != b):
        raise InputError(f"--labels must list {T.spine + 1} objects from {a} to {b}")
    nv = Nerve(A, args.sign_convention)
    body = basis_report(nv, T, a, b, labels)
    bad = [i for i, y in enumerate(nv.basis(T, a, b, labels)) if nv.tan_residuals(y)]
    body["residual_check"] = {"passed": not bad, "failing_basis_vectors": bad}
    return _envelope("nerve", input=str(args.spec), passed=not bad, **body), EXIT_OK if not bad else EXIT_FAIL


def _default_horn(nv: Nerve, args) -> HornData:
    if args.n is None or args.j is None:
        raise InputError("horn needs a horn file or --n and --j")
    A = nv.A
    n = args.n
    if n < 2 or not 0 < args.j < n:
        raise InputError(f"need 0 < j < n, got n={n}, j={args.j}")
    T = Necklace.simplex(n)
    if args.source is not None and args.target is not None:
        ends = [(_object(A, args.source), _object(A, args.target))]
    else:
        ends = [(a, b) for a in A.objects for b in A.objects]
    for a, b in ends:
        B = nv.basis(T, a, b)
        if B:
            w = B[0]
            for y in B[1:]:
                w = w + y
            return restrict_to_horn(nv, w, args.j)
    raise InputError(f"no nonzero {n}-simplex to restrict")


def cmd_horn(args) -> tuple[dict, int]:
    A = _category(args)
    nv = Nerve(A, args.sign_convention)
    if args.horn:
        H = horn_from_dict(_read_json(args.horn), A)
        if args.n is not None and args.n != H.n or args.j is not None and args.j != H.j:
            raise InputError(f"--n/--j disagree with the horn file (n={H.n}, j={H.j})")
    else:
        H = _default_horn(nv, args)
    comp = horn_compatible(nv, H)
    doc = _envelope("horn", input=str(args.spec), horn=horn_to_dict(H, A), compatibility=comp.to_dict())
    if not comp:
        doc["passed"] = False
        return doc, EXIT_FAIL
    z = horn_fill(nv, H, check=False)
    ver = verify_filler(nv, H, z)
    doc.update(passed=ver.passed, filler=element_to_dict(z, A), verification=ver.to_dict())
    return doc, EXIT_OK if ver else EXIT_FAIL


def cmd_simplex(args) -> tuple[dict, int]:
    A = _category(args)
    if not args.collection:
        raise InputError("simplex needs a collection file")
    S = collection_from_dict(_read_json(args.collection), A)
    try:
        S.validate(A)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rel = faonte_check(A, S)
    tan = tan_simplex_member(Nerve(A, args.sign_convention), S)
    agree = rel.passed == tan
    doc = _envelope(
        "simplex", input=str(args.spec), passed=rel.passed and tan, relations=rel.to_dict(), tan_member=tan, agree=agree
    )
    return doc, EXIT_OK if rel.passed and tan else EXIT_FAIL


def cmd_selftest(args) -> tuple[dict, int]:
    from .suites import SUITES, run_all

    only = None
    if args.only:
        only = [s.strip() for s in args.only.split(",") if s.strip()]
        unknown = [s for s in only if s not in SUITES]
        if unknown:
            raise InputError(f"unknown suites {unknown}; choose from {sorted(SUITES)}")
    reports = run_all(args.sign_convention, only)
    passed = all(reports)
    doc = _envelope(
        "selftest",
        sign_convention=SignConvention(args.sign_convention).value,
        passed=passed,
        reports=[r.to_dict() for r in reports],
    )
    return doc, EXIT_OK if passed else EXIT_FAIL


COMMANDS = {"check": cmd_check, "nerve": cmd_nerve, "horn": cmd_horn, "simplex": cmd_simplex, "selftest": cmd_selftest}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tanerve", description="Exact checks for A-infinity categories and their nerves.")
    p.add_argument("--version", action="version", version=f"tanerve {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec=True):
        if spec:
            sp.add_argument("spec", help="category (or, for check, functor) JSON spec")
        sp.add_argument("--field", help="override the field of the input file: Q or Fp:<p>")
        sp.add_argument(
            "--sign-convention",
            default=SignConvention.KOSZUL.value,
            choices=[c.value for c in SignConvention],
            help="how operators pass tensor factors (default: koszul)",
        )
        sp.add_argument("--out", help="write the JSON report here instead of stdout")

    c = sub.add_parser("check", help="A-infinity relations, units or functor relations")
    common(c)
    c.add_argument("--kmax", type=int, help="highest arity to check")

    n = sub.add_parser("nerve", help="dimension and basis of a nerve component")
    common(n)
    n.add_argument("--beads", help="necklace as comma separated bead lengths; '' is Delta^0")
    n.add_argument("--from", dest="source")
    n.add_argument("--to", dest="target")
    n.add_argument("--labels", help="comma separated objects at the vertices (labelled component)")

    h = sub.add_parser("horn", help="fill an inner horn")
    common(h)
    h.add_argument("horn", nargs="?", help="horn JSON; omit to restrict a basis simplex")
    h.add_argument("--n", type=int)
    h.add_argument("--j", type=int)
    h.add_argument("--from", dest="source")
    h.add_argument("--to", dest="target")

    s = sub.add_parser("simplex", help="decide whether a simplex collection is a simplex")
    common(s)
    s.add_argument("collection")

    t = sub.add_parser("selftest", help="run the property suites")
    common(t, spec=False)
    t.add_argument("--only", help="comma separated suite names")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if getattr(args, "kmax", None) is not None and args.kmax < 1:
        print("tanerve: --kmax must be positive", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        if getattr(args, "field", None) is not None:
            field_from_spec(args.field)
        doc, code = COMMANDS[args.command](args)
    except (SpecError, InputError, OSError, ValueError) as exc:
        msg = str(exc)
        print(f"tanerve: {msg}", file=sys.stderr)
        _emit(_envelope(args.command, passed=False, error=msg), getattr(args, "out", None))
        return EXIT_INPUT
    if args.command == "selftest":
        print(f"tanerve: selftest finished in {time.perf_counter() - start:.1f}s", file=sys.stderr)
    _emit(doc, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
