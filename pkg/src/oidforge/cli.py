"""Command-line front end: session files, JSON artifacts for resolutions and
bracket hierarchies, verification reports, and pointwise analysis."""

from __future__ import annotations

import argparse
import json
import re
import sys

from .brackets import LieInftyAlgebroid, check_algebroid
from .catalog import hyperelliptic, koszul_foliation, vanishing_ideal
from .construct import NotLieRinehartIdeal, build_all, rescale, restrict
from .isotropy import is_regular, isotropy_lie_algebra, minimality_at
from .modres import (FreeModuleMap, FreeResolution, NotExact,
                     certify_exactness, free_resolution)
from .polyring import (MonomialOrder, ParseError, Ring, VectorField,
                       parse_poly, parse_vector_field, poly_to_string)
from .symalg import TaylorMap


# --- JSON artifact format ----------------------------------------------------


def dump_json(data) -> str:
    """Canonical serialization: sorted keys, fixed indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def ring_to_data(ring: Ring) -> dict:
    data = {"variables": list(ring.variables), "order": ring.order.tag}
    if ring.order.perm is not None:
        data["priority"] = list(ring.order.perm)
    if ring.quotient is not None:
        data["quotient"] = [poly_to_string(p) for p in ring.quotient]
    return data


def ring_from_data(data: dict, order_tag: str | None = None) -> Ring:
    tag = order_tag or data.get("order", "grevlex")
    perm = tuple(data["priority"]) if data.get("priority") else None
    ring = Ring(tuple(data["variables"]), MonomialOrder(tag, perm))
    if data.get("quotient"):
        ring = ring.quotient_ring([parse_poly(s, ring) for s in data["quotient"]])
    return ring


def _matrix_to_data(m: FreeModuleMap):
    return [[poly_to_string(p) for p in row] for row in m.matrix]


def _map_from_data(ring: Ring, rows, source_deg: int, target_deg: int) -> FreeModuleMap:
    matrix = tuple(tuple(parse_poly(s, ring) for s in row) for row in rows)
    return FreeModuleMap(ring, matrix, source_deg, target_deg)


def resolution_to_data(res: FreeResolution) -> dict:
    data = {
        "ring": ring_to_data(res.ring),
        "ranks": list(res.ranks),
        "anchor": _matrix_to_data(res.anchor),
        "diffs": {str(i): _matrix_to_data(res.d(i)) for i in range(2, res.L + 1)},
    }
    if res.generator_names:
        data["names"] = [[l, i, n]
                         for (l, i), n in sorted(res.generator_names.items())]
    return data


def resolution_from_data(data: dict, order_tag: str | None = None) -> FreeResolution:
    ring = ring_from_data(data["ring"], order_tag)
    diffs = {int(k): _map_from_data(ring, rows, -int(k), -int(k) + 1)
             for k, rows in data.get("diffs", {}).items()}
    names = None
    if data.get("names"):
        names = {(l, i): n for l, i, n in data["names"]}
    anchor = _map_from_data(ring, data["anchor"], -1, 0)
    return FreeResolution(ring, tuple(data["ranks"]), diffs, anchor, names)


def tables_to_data(alg: LieInftyAlgebroid) -> dict:
    out = {}
    for k in sorted(alg.tables):
        entries = []
        for w in sorted(alg.tables[k].entries):
            val = alg.tables[k].entries[w]
            entries.append({
                "word": [list(l) for l in w],
                "value": [[list(l), poly_to_string(c)]
                          for l, c in sorted(val.items())],
            })
        out[str(k)] = entries
    return out


def algebroid_to_data(alg: LieInftyAlgebroid) -> dict:
    return {"kind": "algebroid",
            "resolution": resolution_to_data(alg.res),
            "tables": tables_to_data(alg)}


def algebroid_from_data(data: dict, order_tag: str | None = None) -> LieInftyAlgebroid:
    if data.get("kind") != "algebroid":
        raise ParseError("artifact is not a bracket hierarchy")
    res = resolution_from_data(data["resolution"], order_tag)
    tables = {}
    for key, entries in data.get("tables", {}).items():
        tm = TaylorMap(int(key), {}, 1)
        for ent in entries:
            w = tuple(tuple(l) for l in ent["word"])
            tm.entries[w] = {tuple(l): parse_poly(s, res.ring)
                             for l, s in ent["value"]}
        tables[int(key)] = tm
    return LieInftyAlgebroid(res, tables)


# --- session files -----------------------------------------------------------


def load_session(path: str, order_tag: str | None = None):
    """(ring, generator fields, options) from a session file: a ring declaration
    plus either vector-field generators or ideal generators."""
    with open(path) as fh:
        data = json.load(fh)
    if "ring" not in data:
        raise ParseError("session file needs a 'ring' entry")
    ring = ring_from_data(data["ring"], order_tag)
    fields = []
    if data.get("generators"):
        for g in data["generators"]:
            if isinstance(g, str):
                fields.append(parse_vector_field(g, ring))
            else:
                coeffs = [parse_poly(c, ring) if c not in ("", "0") else ring.zero()
                          for c in g]
                fields.append(VectorField(ring, coeffs))
    elif data.get("ideal"):
        phis = [parse_poly(s, ring) for s in data["ideal"]]
        for phi in phis:
            for a in range(ring.nvars):
                coeffs = [ring.zero()] * ring.nvars
                coeffs[a] = phi
                fields.append(VectorField(ring, coeffs))
    else:
        raise ParseError("session file needs 'generators' or 'ideal'")
    return ring, fields, data.get("options", {})


def _load_algebroid(path: str, order_tag: str | None = None) -> LieInftyAlgebroid:
    with open(path) as fh:
        return algebroid_from_data(json.load(fh), order_tag)


def _write_artifact(path: str | None, data: dict):
    if path:
        with open(path, "w") as fh:
            fh.write(dump_json(data))


def _parse_point(text: str):
    return tuple(part.strip() for part in text.split(","))


# --- reporting ---------------------------------------------------------------


def _verify_algebroid(alg: LieInftyAlgebroid, exactness: bool = True) -> int:
    if exactness:
        try:
            certify_exactness(alg.res)
            print("exactness: certified")
        except NotExact as e:
            print(f"exactness: FAILED at level {e.level}, witness {e.witness}")
            return 1
    report = check_algebroid(alg)
    print(report.to_text())
    return 0 if report.ok else 1


def _isotropy_report(alg: LieInftyAlgebroid, point, json_out: str | None) -> int:
    iso = isotropy_lie_algebra(alg, point)
    regular = is_regular(alg, point)
    minimal, _ = minimality_at(alg, point)
    print(f"point: ({', '.join(str(q) for q in iso.point)})")
    print(f"isotropy dimension: {iso.dim}")
    print(f"regular point: {'yes' if regular else 'no'}")
    print(f"minimal at point: {'yes' if minimal else 'no'}")
    if iso.structure:
        print("structure constants:")
        for (a, b), coords in sorted(iso.structure.items()):
            terms = " + ".join(f"({q})*g{t + 1}" for t, q in enumerate(coords)
                               if q != 0)
            print(f"  [g{a + 1}, g{b + 1}] = {terms}")
    elif iso.dim:
        print("structure constants: all zero (abelian)")
    _write_artifact(json_out, {
        "point": [str(q) for q in iso.point],
        "dimension": iso.dim,
        "regular": regular,
        "minimal": minimal,
        "representatives": [[str(q) for q in rep] for rep in iso.reps],
        "structure": {f"{a},{b}": [str(q) for q in coords]
                      for (a, b), coords in sorted(iso.structure.items())},
    })
    return 0


# --- subcommands -------------------------------------------------------------


def cmd_resolve(args) -> int:
    ring, fields, _ = load_session(args.gens, args.order)
    res = free_resolution(fields, ring=ring)
    print(f"resolution ranks: {', '.join(str(r) for r in res.ranks)}")
    try:
        certify_exactness(res)
        print("exactness: certified")
    except NotExact as e:
        print(f"exactness: FAILED at level {e.level}, witness {e.witness}")
        return 1
    _write_artifact(args.json_out, {"kind": "resolution",
                                    **resolution_to_data(res)})
    return 0


def cmd_build(args) -> int:
    ring, fields, options = load_session(args.gens, args.order)
    max_arity = args.max_arity if args.max_arity is not None else options.get("max_arity")
    seed = args.seed if args.seed is not None else options.get("seed")
    res = free_resolution(fields, ring=ring)
    alg = build_all(res, max_arity=max_arity, seed=seed)
    print(f"resolution ranks: {', '.join(str(r) for r in res.ranks)}")
    print(f"bracket tables: arities {', '.join(str(k) for k in sorted(alg.tables))}")
    if args.verify:
        code = _verify_algebroid(alg)
        if code:
            return code
    if args.isotropy:
        _isotropy_report(alg, _parse_point(args.isotropy), None)
    _write_artifact(args.json_out, algebroid_to_data(alg))
    return 0


def cmd_catalog(args) -> int:
    if not args.phi:
        raise ParseError("need at least one --phi polynomial")
    if args.family == "hyperelliptic":
        ring = Ring(("x",))
    else:
        if args.vars:
            names = tuple(v.strip() for v in args.vars.split(","))
        else:
            seen = sorted({m.group(0) for text in args.phi
                           for m in re.finditer(r"[A-Za-z_][A-Za-z_0-9]*", text)})
            if not seen:
                raise ParseError("no variables found; pass --vars explicitly")
            names = tuple(seen)
        ring = Ring(names, MonomialOrder(args.order or "grevlex"))
    phis = [parse_poly(text, ring) for text in args.phi]
    if args.family == "koszul":
        if len(phis) != 1:
            raise ParseError("koszul takes exactly one --phi")
        alg = koszul_foliation(phis[0], check=False)
    elif args.family == "vanishing":
        alg = vanishing_ideal(phis, ring=ring)
    else:
        if len(phis) != 1:
            raise ParseError("hyperelliptic takes exactly one --phi")
        alg = hyperelliptic(phis[0])
    print(f"resolution ranks: {', '.join(str(r) for r in alg.res.ranks)}")
    print(f"bracket tables: arities {', '.join(str(k) for k in sorted(alg.tables)) or 'none'}")
    if args.verify:
        code = _verify_algebroid(alg)
        if code:
            return code
    _write_artifact(args.json_out, algebroid_to_data(alg))
    return 0


def cmd_verify(args) -> int:
    alg = _load_algebroid(args.infile, args.order)
    report = check_algebroid(alg)
    if args.exactness:
        try:
            certify_exactness(alg.res)
            print("exactness: certified")
        except NotExact as e:
            print(f"exactness: FAILED at level {e.level}, witness {e.witness}")
            return 1
    print(report.to_text())
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(report.to_json() + "\n")
    return 0 if report.ok else 1


def cmd_isotropy(args) -> int:
    alg = _load_algebroid(args.infile, args.order)
    return _isotropy_report(alg, _parse_point(args.point), args.json_out)


def cmd_restrict(args) -> int:
    alg = _load_algebroid(args.infile, args.order)
    gens = [parse_poly(text, alg.res.ring) for text in args.ideal]
    try:
        sub = restrict(alg, gens)
    except NotLieRinehartIdeal as e:
        print(f"ideal is not anchor-invariant, witness {e.args[0]}")
        return 1
    if args.verify:
        report = check_algebroid(sub)
        print(report.to_text())
        if not report.ok:
            return 1
    _write_artifact(args.json_out, algebroid_to_data(sub))
    return 0


def cmd_rescale(args) -> int:
    alg = _load_algebroid(args.infile, args.order)
    chi = parse_poly(args.chi, alg.res.ring)
    out = rescale(alg, chi)
    if args.verify:
        report = check_algebroid(out)
        print(report.to_text())
        if not report.ok:
            return 1
    _write_artifact(args.json_out, algebroid_to_data(out))
    return 0


# --- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oidforge",
        description="Resolutions and bracket hierarchies for modules of "
                    "polynomial vector fields, with exact verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, infile=False, gens=False, verify=False):
        p.add_argument("--order", choices=("grevlex", "lex"), default=None,
                       help="monomial order override")
        p.add_argument("--json-out", dest="json_out", default=None,
                       help="write the JSON artifact to this path")
        if infile:
            p.add_argument("--in", dest="infile", required=True,
                           help="input artifact (JSON)")
        if gens:
            p.add_argument("--gens", required=True,
                           help="session file with ring and generators")
        if verify:
            p.add_argument("--verify", action="store_true",
                           help="certify exactness and check all identities")

    p = sub.add_parser("resolve", help="compute and certify a free resolution")
    common(p, gens=True)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("build", help="construct the full bracket hierarchy")
    common(p, gens=True, verify=True)
    p.add_argument("--max-arity", dest="max_arity", type=int, default=None)
    p.add_argument("--seed", type=int, default=None,
                   help="tie-break seed for the correction solver")
    p.add_argument("--isotropy", metavar="POINT", default=None,
                   help="also report the isotropy Lie algebra at this point")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("catalog", help="closed-form families")
    p.add_argument("family", choices=("koszul", "vanishing", "hyperelliptic"))
    p.add_argument("--phi", action="append", default=[],
                   help="defining polynomial (repeat for several)")
    p.add_argument("--vars", default=None,
                   help="comma-separated variable names (default: inferred)")
    common(p, verify=True)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="check all identities of an artifact")
    common(p, infile=True)
    p.add_argument("--exactness", action="store_true",
                   help="also certify exactness of the resolution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("isotropy", help="pointwise invariants of an artifact")
    common(p, infile=True)
    p.add_argument("--point", required=True,
                   help="comma-separated rational coordinates")
    p.set_defaults(func=cmd_isotropy)

    p = sub.add_parser("restrict", help="restrict to an invariant ideal")
    common(p, infile=True, verify=True)
    p.add_argument("--ideal", action="append", required=True,
                   help="ideal generator (repeat for several)")
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("rescale", help="twist by a polynomial function")
    common(p, infile=True, verify=True)
    p.add_argument("--chi", required=True, help="rescaling polynomial")
    p.set_defaults(func=cmd_rescale)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NotExact as e:
        print(f"exactness FAILED at level {e.level}, witness {e.witness}")
        return 1
    except (ParseError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
