"""Batch CLI: parse 4ti2 files or curve specs, run the engines, emit results.

Exit codes: 0 success, 2 domain or parse errors, 3 resource limits or
arithmetic overflow, 4 verification mismatches.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import curves as curves_mod
from . import lawrence as lawrence_mod
from . import markov as markov_mod
from .core import (
    Configuration,
    ConsistencyError,
    DomainError,
    IntVec,
    ParseError,
    ResourceLimitError,
    a_degree,
    fiber,
    one_norm,
)
from .fourti2 import format_basis, format_matrix, parse_matrix_file
from .graver import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_PAIRS,
    graver_basis,
    graver_complexity,
)

SCHEMA = "toricbases/1"


def _vec_arg(text: str) -> IntVec:
    try:
        return tuple(int(tok) for tok in text.split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a list of integers")


def _json_out(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _vec_str(v: Sequence[int]) -> str:
    return " ".join(str(x) for x in v)


def _caps(args) -> dict:
    return {"max_elements": args.max_elements, "max_pairs": args.max_pairs}


def _add_caps(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS,
                        help="stored-element cap for completions (default %(default)s)")
    parser.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS,
                        help="pair-queue cap for completions (default %(default)s)")


def _add_format(parser: argparse.ArgumentParser, choices=("text", "json", "4ti2")):
    parser.add_argument("--format", choices=list(choices), default="text")


def _basis_payload(command: str, elements, n: int) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "counts": {"elements": len(elements)},
        "elements": [list(v) for v in elements],
        "columns": n,
    }


def _render_basis(command: str, title: str, elements, n: int, fmt: str) -> str:
    if fmt == "4ti2":
        return format_basis(elements, n)
    if fmt == "json":
        return _json_out(_basis_payload(command, elements, n))
    lines = [f"{title} ({len(elements)} elements)"]
    lines.extend(_vec_str(v) for v in elements)
    return "\n".join(lines) + "\n"


def cmd_kernel(args) -> str:
    config = parse_matrix_file(args.matrix)
    basis = config.kernel_basis
    return _render_basis("kernel", "kernel basis", basis, config.n, args.format)


def cmd_graver(args) -> str:
    config = parse_matrix_file(args.matrix)
    gb = graver_basis(config, **_caps(args))
    return _render_basis("graver", "graver basis", gb.elements, config.n, args.format)


def cmd_markov(args) -> str:
    config = parse_matrix_file(args.matrix)
    caps = _caps(args)
    if args.kind == "minimal":
        basis = markov_mod.minimal_markov_basis(config, **caps)
    elif args.kind == "universal":
        basis = markov_mod.universal_markov_basis(config, **caps)
    else:
        basis = markov_mod.indispensable_subset(config, **caps)
    if args.format == "json":
        payload = _basis_payload("markov", basis.elements, config.n)
        payload["kind"] = args.kind
        payload["degrees"] = [list(a_degree(config, v)) for v in basis.elements]
        payload["fiber_sizes"] = [
            len(fiber(config, a_degree(config, v))) for v in basis.elements]
        return _json_out(payload)
    return _render_basis("markov", f"{args.kind} markov basis",
                         basis.elements, config.n, args.format)


def cmd_fiber(args) -> str:
    config = parse_matrix_file(args.matrix)
    fib = fiber(config, args.rhs)
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "fiber",
            "degrees": [list(args.rhs)],
            "counts": {"points": len(fib.points)},
            "elements": [list(p) for p in fib.points],
        }
        return _json_out(payload)
    if args.format == "4ti2":
        return format_basis(fib.points, config.n)
    lines = [f"fiber of degree {_vec_str(args.rhs)} ({len(fib.points)} points)"]
    lines.extend(_vec_str(p) for p in fib.points)
    return "\n".join(lines) + "\n"


def cmd_decompose(args) -> str:
    config = parse_matrix_file(args.matrix)
    u = args.vector
    if args.kind == "sc":
        witness = markov_mod.find_semiconformal_witness(config, u)
        if args.format == "json":
            payload = {
                "schema": SCHEMA,
                "command": "decompose",
                "kind": "sc",
                "vector": list(u),
                "witness": None if witness is None else [list(w) for w in witness],
            }
            return _json_out(payload)
        if witness is None:
            return ("no proper semiconformal decomposition "
                    "(the vector is indispensable)\n")
        v, w = witness
        return (f"semiconformal split: {_vec_str(u)}\n"
                f"  first:  {_vec_str(v)}\n"
                f"  second: {_vec_str(w)}\n")
    chain = markov_mod.find_ssc_chain(config, u)
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "decompose",
            "kind": "ssc",
            "vector": list(u),
            "chain": None if chain is None else [list(c) for c in chain],
            "minimal_length": None if chain is None else len(chain),
        }
        return _json_out(payload)
    if chain is None:
        return ("no proper strongly semiconformal decomposition "
                "(the vector is in the universal Markov basis)\n")
    lines = [f"strongly semiconformal chain of minimal length {len(chain)}"]
    if len(chain) > 2:
        lines.append("(no decomposition into 2 parts exists)")
    lines.extend(f"  part {i + 1}: {_vec_str(c)}" for i, c in enumerate(chain))
    return "\n".join(lines) + "\n"


def cmd_lift(args) -> str:
    config = parse_matrix_file(args.matrix)
    if args.coupling is None:
        lifted = lawrence_mod.lift(config, args.r)
    else:
        coupling = parse_matrix_file(args.coupling)
        lifted = lawrence_mod.generalized_lift(config, coupling, args.r)
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "lift",
            "counts": {"rows": lifted.m, "columns": lifted.n},
            "elements": [list(row) for row in lifted.matrix],
        }
        return _json_out(payload)
    return format_matrix(lifted.matrix)


def _config_from_spec(spec: str) -> Configuration:
    if spec.startswith("curve:"):
        parts = spec[len("curve:"):].split(",")
        try:
            n1, n2, n3 = (int(p) for p in parts)
        except ValueError:
            raise DomainError(f"bad curve spec {spec!r}; want curve:N1,N2,N3")
        return curves_mod.Curve(n1, n2, n3).config
    return parse_matrix_file(spec)


def cmd_complexity(args) -> str:
    config = _config_from_spec(args.matrix)
    caps = _caps(args)
    if args.exact:
        if args.kind != "graver":
            raise DomainError("--exact only applies to --kind graver")
        value, witness = graver_complexity(config, **caps)
        if args.format == "json":
            payload = {
                "schema": SCHEMA,
                "command": "complexity",
                "kind": "graver",
                "exact": True,
                "bounds": {"graver_complexity": value},
                "witness": None if witness is None else list(witness),
            }
            return _json_out(payload)
        lines = [f"graver complexity: {value}"]
        if witness is not None:
            lines.append(f"witness ({one_norm(witness)} 1-norm): {_vec_str(witness)}")
        return "\n".join(lines) + "\n"
    if args.max_r is None:
        raise DomainError("complexity needs --max-r R (or --exact for graver)")
    if args.kind == "markov":
        scan = lawrence_mod.markov_complexity_scan(config, args.max_r, **caps)
        rows = [{"r": r, "max_type": t, "elements": c} for r, t, c in scan]
        text = [f"r={r} max_type={t} size={c}" for r, t, c in scan]
    else:
        scan = lawrence_mod.graver_type_scan(config, args.max_r, **caps)
        rows = [{"r": r, "max_type": t} for r, t in scan]
        text = [f"r={r} max_type={t}" for r, t in scan]
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "complexity",
            "kind": args.kind,
            "exact": False,
            "types": rows,
        }
        return _json_out(payload)
    return "\n".join(text) + "\n"


def _herzog_payload(hd) -> dict:
    return {
        "c": list(hd.c),
        "representations": [list(r) for r in hd.reps],
        "classification": ("complete_intersection" if hd.is_complete_intersection
                           else "not_complete_intersection"),
        "critical_pair": None if hd.critical is None
                         else [hd.critical[0] + 1, hd.critical[1] + 1],
    }


def cmd_curve(args) -> str:
    curve = curves_mod.Curve(args.n1, args.n2, args.n3)
    caps = _caps(args)
    hd = curves_mod.herzog_data(curve)
    basis, minimal_count = curves_mod.closed_form_markov(curve)
    complexity = curves_mod.markov_complexity(curve)
    lawrence_basis = None
    max_type = None
    if args.lawrence is not None:
        lawrence_basis = curves_mod.closed_form_lawrence_markov(
            curve, args.lawrence, **caps)
        max_type = max((lawrence_mod.tableau_type(v, args.lawrence, 3)
                        for v in lawrence_basis.elements), default=0)
    verified = False
    if args.verify:
        curves_mod.verify_closed_forms(curve, args.lawrence, **caps)
        verified = True
    if args.format == "4ti2":
        target = lawrence_basis if lawrence_basis is not None else basis
        return format_basis(target.elements, target.config.n)
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "curve",
            "curve": list(curve.entries),
            "herzog": _herzog_payload(hd),
            "counts": {
                "universal": len(basis.elements),
                "minimal_bases": minimal_count,
            },
            "elements": [list(v) for v in basis.elements],
            "bounds": {"markov_complexity": complexity},
            "verified": verified,
        }
        if lawrence_basis is not None:
            payload["lawrence"] = {
                "r": args.lawrence,
                "counts": {"elements": len(lawrence_basis.elements)},
                "types": {"max": max_type},
                "elements": [list(v) for v in lawrence_basis.elements],
            }
        return _json_out(payload)
    lines = [f"curve: {_vec_str(curve.entries)}"]
    lines.append(f"c: {_vec_str(hd.c)}")
    reps = []
    for i, (x, y) in enumerate(hd.reps):
        j, k = (t for t in range(3) if t != i)
        n = curve.entries
        reps.append(f"{hd.c[i]}*{n[i]} = {x}*{n[j]} + {y}*{n[k]}")
    lines.append("representations: " + "; ".join(reps))
    if hd.is_complete_intersection:
        i, j = hd.critical
        lines.append(f"classification: complete intersection (c{i + 1}*n{i + 1} "
                     f"= c{j + 1}*n{j + 1})")
    else:
        lines.append("classification: not a complete intersection")
    lines.append(f"markov complexity: {complexity}")
    plural = "basis" if minimal_count == 1 else "bases"
    lines.append(f"universal markov basis ({len(basis.elements)} elements, "
                 f"{minimal_count} minimal {plural})")
    lines.extend(f"  {_vec_str(v)}" for v in basis.elements)
    if lawrence_basis is not None:
        lines.append(f"lawrence r={args.lawrence} universal basis "
                     f"({len(lawrence_basis.elements)} elements, max type {max_type})")
        lines.extend(f"  {_vec_str(v)}" for v in lawrence_basis.elements)
    if verified:
        lines.append("verified against the brute-force engines")
    return "\n".join(lines) + "\n"


def cmd_bounds(args) -> str:
    curve = curves_mod.Curve(args.n1, args.n2, args.n3)
    caps = _caps(args)
    hd = curves_mod.herzog_data(curve)
    reduced = curves_mod.reduce_curve(curve)
    lower = curves_mod.graver_lower_bound(curve)
    identity = Configuration([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    hs_id, wit_id = curves_mod.hs_lower_bound(curve, identity, **caps)
    hs_coupling = None
    if args.coupling is not None:
        coupling = parse_matrix_file(args.coupling)
        hs_coupling = curves_mod.hs_lower_bound(curve, coupling, **caps)
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "bounds",
            "curve": list(curve.entries),
            "herzog": _herzog_payload(hd),
            "bounds": {
                "graver_complexity_lower": lower,
                "markov_lower_identity": hs_id,
            },
            "witnesses": {
                "markov_lower_identity": None if wit_id is None else list(wit_id),
            },
            "reduced_curve": list(reduced.entries),
        }
        if hs_coupling is not None:
            payload["bounds"]["markov_lower_coupling"] = hs_coupling[0]
            payload["witnesses"]["markov_lower_coupling"] = (
                None if hs_coupling[1] is None else list(hs_coupling[1]))
        return _json_out(payload)
    lines = [f"curve: {_vec_str(curve.entries)}"]
    lines.append(f"reduced curve: {_vec_str(reduced.entries)}")
    lines.append(f"graver complexity lower bound: {lower}")
    wit = "none" if wit_id is None else _vec_str(wit_id)
    lines.append(f"markov lower bound (identity coupling): {hs_id} (witness: {wit})")
    if hs_coupling is not None:
        wit = "none" if hs_coupling[1] is None else _vec_str(hs_coupling[1])
        lines.append(f"markov lower bound (coupling): {hs_coupling[0]} "
                     f"(witness: {wit})")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricbases",
        description="Graver and Markov bases of integer configurations, "
                    "Lawrence liftings, and monomial-curve closed forms.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("kernel", help="integer kernel basis of a matrix")
    p.add_argument("matrix")
    _add_format(p)
    p.set_defaults(func=cmd_kernel, max_elements=DEFAULT_MAX_ELEMENTS,
                   max_pairs=DEFAULT_MAX_PAIRS)

    p = sub.add_parser("graver", help="Graver basis of a matrix")
    p.add_argument("matrix")
    _add_format(p)
    _add_caps(p)
    p.set_defaults(func=cmd_graver)

    p = sub.add_parser("markov", help="minimal/universal/indispensable Markov basis")
    p.add_argument("matrix")
    p.add_argument("--kind", choices=["minimal", "universal", "indispensable"],
                   default="minimal")
    _add_format(p)
    _add_caps(p)
    p.set_defaults(func=cmd_markov)

    p = sub.add_parser("fiber", help="enumerate all nonnegative preimages of a degree")
    p.add_argument("matrix")
    p.add_argument("--rhs", type=_vec_arg, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("decompose", help="semiconformal witnesses and chains")
    p.add_argument("matrix")
    p.add_argument("--vector", type=_vec_arg, required=True)
    p.add_argument("--kind", choices=["sc", "ssc"], default="ssc")
    _add_format(p, ("text", "json"))
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("lift", help="Lawrence lifting of a matrix")
    p.add_argument("matrix")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--coupling", default=None,
                   help="matrix replacing the identity block")
    _add_format(p, ("text", "json"))
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("complexity", help="max tableau type of lifted bases")
    p.add_argument("matrix", help="matrix file or curve:N1,N2,N3")
    p.add_argument("--kind", choices=["markov", "graver"], required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--max-r", type=int, default=None)
    group.add_argument("--exact", action="store_true",
                       help="Graver complexity via the Graver basis of the "
                            "Graver basis (heavy; honors the caps)")
    _add_format(p, ("text", "json"))
    _add_caps(p)
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("curve", help="closed forms for a monomial curve")
    p.add_argument("n1", type=int)
    p.add_argument("n2", type=int)
    p.add_argument("n3", type=int)
    p.add_argument("--lawrence", type=int, default=None, metavar="R")
    p.add_argument("--verify", action="store_true",
                   help="cross-check the closed forms against brute force")
    _add_format(p)
    _add_caps(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("bounds", help="complexity bounds for a monomial curve")
    p.add_argument("n1", type=int)
    p.add_argument("n2", type=int)
    p.add_argument("n3", type=int)
    p.add_argument("--coupling", default=None)
    _add_format(p, ("text", "json"))
    _add_caps(p)
    p.set_defaults(func=cmd_bounds)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        sys.stdout.write(args.func(args))
    except (DomainError, ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimitError, OverflowError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except ConsistencyError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
