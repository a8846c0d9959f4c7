"""Command-line surface: decision procedures in, JSON or DOT out.

Every subcommand is a thin adapter over exactly one library operation:

    subgroup-canonicalize -> lattice.canonicalize_subgroup
    cotoral-test          -> lattice.is_cotoral
    isotropy              -> isotropy.isotropy_of
    ideal-compare         -> isotropy.ideal_contains (both directions)
    spectrum-slice        -> balmer.enumerate_slice
    semifree-check        -> semifree.twisted_witness
    semifree-decompose    -> semifree.decompose_untwisted
    weyl-quotient         -> beyond_tori.toral_quotient_slice
    o2-support-check      -> beyond_tori.o2_is_realizable_support

Exit status 0 carries a JSON document (or DOT with --format dot) on
stdout; parse and validation failures exit with status 2 and a
machine-readable error object on stderr.  The environment variable
COTORAL_COLOR switches on node colouring in DOT output and affects
nothing else.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import balmer, beyond_tori, isotropy, lattice, semifree
from .parser import ParseError, parse_subgroup_literal, parse_wedge_expr


class CliError(ValueError):
    """Raised for argument-level problems so they exit with status 2."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _emit(doc: dict) -> int:
    sys.stdout.write(json.dumps(doc) + "\n")
    return 0


def _emit_text(text: str) -> int:
    sys.stdout.write(text)
    return 0


def _color_enabled() -> bool:
    return bool(os.environ.get("COTORAL_COLOR"))


def _load_json_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _matrix_arg(text: str) -> list:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as e:
        raise CliError(f"matrix literal is not valid JSON: {e}") from e
    if not isinstance(rows, list) or \
            not all(isinstance(r, list) and all(isinstance(x, int) for x in r)
                    for r in rows):
        raise CliError("matrix literal must be a list of integer rows")
    return rows


def _dims_arg(text: str) -> set[int]:
    try:
        return {int(part) for part in text.split(",") if part.strip() != ""}
    except ValueError as e:
        raise CliError(f"--dims wants comma-separated integers: {e}") from e


def _dihedral_arg(text: str) -> beyond_tori.DihedralFamily:
    kind, _, rest = text.partition(":")
    try:
        ns = {int(p) for p in rest.split(",") if p.strip() != ""}
    except ValueError as e:
        raise CliError("--dihedral wants finite:n1,n2,... or "
                       f"cofinite:n1,n2,...: {e}") from e
    if kind == "finite":
        return beyond_tori.DihedralFamily.finite(ns)
    if kind == "cofinite":
        return beyond_tori.DihedralFamily.all_but(ns)
    raise CliError("--dihedral must start with finite: or cofinite:")


def _bool_arg(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise CliError(f"expected a boolean, got {text!r}")


def build_parser() -> _ArgumentParser:
    top = _ArgumentParser(prog="cotoral",
                          description="exact computations in the subgroup "
                                      "spectrum of a torus")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subgroup-canonicalize",
                       help="canonical form of a closed subgroup")
    p.add_argument("--ambient", type=int, required=True)
    p.add_argument("--generators", help="annihilator generator matrix, "
                                        "e.g. [[2,0],[1,1]]")
    p.add_argument("--in", dest="infile", help="subgroup JSON document")

    p = sub.add_parser("cotoral-test",
                       help="is one subgroup cotoral in another")
    p.add_argument("--ambient", type=int, required=True)
    p.add_argument("--sub", required=True, help="subgroup literal")
    p.add_argument("--super", dest="sup", required=True,
                   help="subgroup literal")

    p = sub.add_parser("isotropy", help="geometric isotropy of a wedge")
    p.add_argument("--ambient", type=int, required=True)
    p.add_argument("--expr", required=True, help="wedge expression")

    p = sub.add_parser("ideal-compare",
                       help="thick tensor ideal containment both ways")
    p.add_argument("--ambient", type=int, required=True)
    p.add_argument("--x", required=True, help="wedge expression")
    p.add_argument("--y", required=True, help="wedge expression")

    p = sub.add_parser("spectrum-slice",
                       help="bounded slice of the subgroup prime poset")
    p.add_argument("--ambient", type=int, required=True)
    p.add_argument("--max-index", type=int, required=True)
    p.add_argument("--dims", help="comma-separated dimensions to keep")
    p.add_argument("--max-entry", type=int,
                   help="entry bound for annihilator bases "
                        "(defaults to --max-index)")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("semifree-check",
                       help="membership in thick(S^{kz}) for a wide sphere")
    p.add_argument("--in", dest="infile", required=True,
                   help="wide-sphere JSON document")
    p.add_argument("--k", type=int, default=0)

    p = sub.add_parser("semifree-decompose",
                       help="build certificate for an untwisted wide sphere")
    p.add_argument("--in", dest="infile", required=True,
                   help="wide-sphere JSON document")

    p = sub.add_parser("weyl-quotient",
                       help="torus slice folded along a Weyl action")
    p.add_argument("--ambient", type=int, required=True)
    p.add_argument("--weyl", required=True,
                   help="Weyl-action JSON document or inline JSON")
    p.add_argument("--max-index", type=int, required=True)
    p.add_argument("--dims")
    p.add_argument("--max-entry", type=int)
    p.add_argument("--format", choices=("json", "dot"), default="json")

    p = sub.add_parser("o2-support-check",
                       help="realizability of an O(2) isotropy family")
    p.add_argument("--cyclic", required=True,
                   help="JSON list of annihilator matrices over the circle")
    p.add_argument("--dihedral", required=True,
                   help="finite:n1,n2,... or cofinite:n1,n2,...")
    p.add_argument("--top", required=True,
                   help="true when the whole group is in the family")
    return top


def _run_subgroup_canonicalize(args) -> int:
    if (args.generators is None) == (args.infile is None):
        raise CliError("give exactly one of --generators or --in")
    if args.infile is not None:
        doc = _load_json_file(args.infile)
        k = lattice.subgroup_from_json(doc)
        if k.ambient.rank != args.ambient:
            raise CliError(
                f"document rank {k.ambient.rank} != --ambient {args.ambient}")
    else:
        rows = _matrix_arg(args.generators)
        k = lattice.canonicalize_subgroup(lattice.AmbientTorus(args.ambient),
                                          rows)
    doc = lattice.subgroup_to_json(k)
    doc.update({"dim": k.dim, "connected": k.is_connected,
                "label": k.describe()})
    return _emit(doc)


def _run_cotoral_test(args) -> int:
    small = parse_subgroup_literal(args.sub, args.ambient)
    big = parse_subgroup_literal(args.sup, args.ambient)
    return _emit({"schema": 1, "cotoral": lattice.is_cotoral(small, big)})


def _run_isotropy(args) -> int:
    expr = parse_wedge_expr(args.expr, args.ambient)
    return _emit(isotropy.isotropy_to_json(isotropy.isotropy_of(expr)))


def _run_ideal_compare(args) -> int:
    x = parse_wedge_expr(args.x, args.ambient)
    y = parse_wedge_expr(args.y, args.ambient)
    return _emit({
        "schema": 1,
        "x_contains_y": isotropy.ideal_contains(x, y),
        "y_contains_x": isotropy.ideal_contains(y, x),
    })


def _run_spectrum_slice(args) -> int:
    dims = _dims_arg(args.dims) if args.dims else None
    sl = balmer.enumerate_slice(lattice.AmbientTorus(args.ambient),
                                args.max_index, dims, args.max_entry,
                                threads=args.threads)
    if args.format == "dot":
        return _emit_text(balmer.slice_to_dot(sl, color=_color_enabled()))
    return _emit(balmer.slice_to_json(sl))


def _run_semifree_check(args) -> int:
    x = semifree.wide_sphere_from_json(_load_json_file(args.infile))
    witness = semifree.twisted_witness(x, args.k)
    if witness is None:
        return _emit({"schema": 1, "member": True, "k": args.k})
    return _emit({"schema": 1, "member": False, "k": args.k,
                  "failed": f"condition_{witness.condition}",
                  "degree": witness.degree})


def _run_semifree_decompose(args) -> int:
    x = semifree.wide_sphere_from_json(_load_json_file(args.infile))
    got = semifree.decompose_untwisted(x)
    if isinstance(got, semifree.ConditionFailure):
        return _emit({"schema": 1, "untwisted": False,
                      "failed": f"condition_{got.condition}",
                      "degree": got.degree})
    return _emit({"schema": 1, "untwisted": True,
                  "steps": [{"degree": s.degree, "twist": s.twist,
                             "vector": [str(c) for c in s.vector]}
                            for s in got]})


def _run_weyl_quotient(args) -> int:
    text = args.weyl.strip()
    if text.startswith("{"):
        doc = json.loads(text)
    else:
        doc = _load_json_file(args.weyl)
    action = beyond_tori.weyl_action_from_json(doc)
    if action.rank != args.ambient:
        raise CliError(f"action rank {action.rank} != --ambient "
                       f"{args.ambient}")
    dims = _dims_arg(args.dims) if args.dims else None
    qs = beyond_tori.toral_quotient_slice(lattice.AmbientTorus(args.ambient),
                                          action, args.max_index, dims,
                                          args.max_entry)
    if args.format == "dot":
        return _emit_text(
            beyond_tori.quotient_slice_to_dot(qs, color=_color_enabled()))
    return _emit(beyond_tori.quotient_slice_to_json(qs))


def _run_o2_support_check(args) -> int:
    try:
        matrices = json.loads(args.cyclic)
    except json.JSONDecodeError as e:
        raise CliError(f"--cyclic is not valid JSON: {e}") from e
    if not isinstance(matrices, list):
        raise CliError("--cyclic must be a JSON list of matrices")
    ambient = lattice.AmbientTorus(1)
    members = [lattice.canonicalize_subgroup(ambient, rows)
               for rows in matrices]
    family = isotropy.IsotropySet.from_members(ambient, members)
    dihedral = _dihedral_arg(args.dihedral)
    top = _bool_arg(args.top)
    ok = beyond_tori.o2_is_realizable_support(family, dihedral, top)
    return _emit({"schema": 1, "realizable": ok})


_RUNNERS = {
    "subgroup-canonicalize": _run_subgroup_canonicalize,
    "cotoral-test": _run_cotoral_test,
    "isotropy": _run_isotropy,
    "ideal-compare": _run_ideal_compare,
    "spectrum-slice": _run_spectrum_slice,
    "semifree-check": _run_semifree_check,
    "semifree-decompose": _run_semifree_decompose,
    "weyl-quotient": _run_weyl_quotient,
    "o2-support-check": _run_o2_support_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _RUNNERS[args.command](args)
    except (CliError, ParseError, ValueError, OSError,
            json.JSONDecodeError) as e:
        err = {"schema": 1,
               "error": {"type": type(e).__name__, "message": str(e)}}
        sys.stderr.write(json.dumps(err) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
