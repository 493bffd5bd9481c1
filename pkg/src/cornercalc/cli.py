"""Command-line front door.

Subcommands read one JSON document from a file path or stdin ("-"),
run the requested construction, and print a deterministic report as
text or JSON.  Exit codes: 0 success, 1 negative mathematical verdict
or violated invariant, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import complexes, orient, serialize, suites
from .errors import (
    BadFace,
    BadLabel,
    CornerCalcError,
    HypothesisNotMet,
    InvalidGerm,
    ModelMismatch,
    NotSmoothAtOrigin,
    NotTransverse,
    ParseError,
)
from .fibre import (
    corner_identity_check,
    fibre_product,
    interface_data,
    is_strongly_transverse,
    is_transverse,
)
from .germ import compose, is_b_submersive, is_immersion, is_submersion
from .model import boundary, corners_count, iterated_boundary_count, strata
from .poly import classify_at_origin, germ_of

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


def _read_document(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}")


def _emit(report: dict, fmt: str, lines: list[str]):
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_classify(args) -> int:
    doc = _read_document(args.input)
    q = serialize.polymap_from_doc(doc)
    cls = classify_at_origin(q)
    report: dict[str, Any] = {"kind": cls.kind}
    lines = [f"classification: {cls.kind}"]
    if cls.kind == "smooth":
        report["germ"] = serialize.germ_to_doc(cls.germ)
        lines.append(f"transfers: {sorted(cls.germ.transfers)}")
        lines.append(
            "jacobian: "
            + json.dumps([[str(x) for x in row] for row in cls.germ.jacobian])
        )
        lines.append(f"immersion: {is_immersion(cls.germ)}")
        lines.append(f"submersion: {is_submersion(cls.germ)}")
        lines.append(f"b_submersive: {is_b_submersive(cls.germ)}")
    elif cls.kind == "b-map":
        report["exponents"] = [list(row) for row in cls.b_germ.exponents]
        report["flat_rows"] = sorted(cls.b_germ.flat_rows)
        lines.append(f"exponents: {[list(r) for r in cls.b_germ.exponents]}")
        lines.append("not smooth: some exponent row is not a single face")
    elif cls.kind == "not-into-model":
        row, point = cls.negativity_witness
        report["witness"] = {"component": row, "point": [str(x) for x in point]}
        lines.append(
            f"negative value: component {row} at ({', '.join(str(x) for x in point)})"
        )
    else:
        report["failing_rows"] = sorted(cls.failing_rows)
        lines.append(f"rows failing the transfer test: {sorted(cls.failing_rows)}")
    _emit(report, args.format, lines)
    return EXIT_OK


def cmd_germ(args) -> int:
    doc = _read_document(args.input)
    q = serialize.polymap_from_doc(doc)
    germ = germ_of(q)
    report = serialize.germ_to_doc(germ)
    lines = [
        f"source: ({germ.source.dim}, {germ.source.depth})",
        f"target: ({germ.target.dim}, {germ.target.depth})",
        f"transfers: {sorted(germ.transfers)}",
        "jacobian: " + json.dumps([[str(x) for x in row] for row in germ.jacobian]),
    ]
    _emit(report, args.format, lines)
    return EXIT_OK


def cmd_compose(args) -> int:
    doc = _read_document(args.input)
    if not isinstance(doc, dict) or "f" not in doc or "g" not in doc:
        raise ParseError("compose needs an object with keys 'f' and 'g'")
    f = serialize.map_from_doc(doc["f"])
    g = serialize.map_from_doc(doc["g"])
    out = compose(g, f)
    report = serialize.germ_to_doc(out)
    lines = [
        f"composite: ({out.source.dim}, {out.source.depth}) -> "
        f"({out.target.dim}, {out.target.depth})",
        f"transfers: {sorted(out.transfers)}",
        "jacobian: " + json.dumps([[str(x) for x in row] for row in out.jacobian]),
    ]
    _emit(report, args.format, lines)
    return EXIT_OK


def cmd_corners(args) -> int:
    doc = _read_document(args.input)
    if not isinstance(doc, dict) or "model" not in doc:
        raise ParseError("corners needs an object with key 'model'")
    m = serialize.model_from_doc(doc["model"])
    report: dict[str, Any] = {"model": serialize.model_to_doc(m), "depths": []}
    lines = [f"model: ({m.dim}, {m.depth})"]
    for j in range(m.depth + 1):
        entry = {
            "depth": j,
            "corners": corners_count(m, j),
            "ordered": iterated_boundary_count(m, j),
            "labels": [sorted(lab) for lab, _ in strata(m, j)],
        }
        report["depths"].append(entry)
        lines.append(
            f"depth {j}: corners={entry['corners']} ordered={entry['ordered']} "
            f"labels={entry['labels']}"
        )
    report["boundary_faces"] = len(boundary(m))
    _emit(report, args.format, lines)
    return EXIT_OK


def cmd_fibre(args) -> int:
    doc = _read_document(args.input)
    if not isinstance(doc, dict) or "f" not in doc or "g" not in doc:
        raise ParseError("fibre needs an object with keys 'f' and 'g'")
    f = serialize.map_from_doc(doc["f"])
    g = serialize.map_from_doc(doc["g"])
    if not is_transverse(f, g):
        print("not transverse", file=sys.stderr)
        return EXIT_NEGATIVE
    data = interface_data(f, g)
    ledger = fibre_product(f, g)
    strong = is_strongly_transverse(f, g)
    identity = corner_identity_check(f, g)
    report = {
        "transverse": True,
        "strongly_transverse": strong,
        "interface": {
            "P_f": sorted(data.p_f),
            "P_g": sorted(data.p_g),
            "Pi_f": {str(j): i for j, i in data.pi_f},
            "Pi_g": {str(j): i for j, i in data.pi_g},
            "classes": [
                {"members": sorted(cl.members), "kind": cl.kind}
                for cl in data.classes
            ],
            "representatives": sorted(data.representatives),
        },
        "w_model": serialize.model_to_doc(ledger.w_model),
        "registry": [entry.describe() for entry in ledger.registry],
        "pi_x": serialize.germ_to_doc(ledger.pi_x),
        "pi_y": serialize.germ_to_doc(ledger.pi_y),
        "corner_identity": {
            "holds": identity.identity_holds and identity.strongly_transverse,
            "lhs_counts": [list(t) for t in identity.lhs_counts],
            "rhs_count_by_excess": _excess_histogram(identity),
        },
    }
    lines = [
        "transverse: true",
        f"strongly transverse: {str(strong).lower()}",
        f"W model: ({ledger.w_model.dim}, {ledger.w_model.depth})",
        "registry: " + (", ".join(e.describe() for e in ledger.registry) or "(empty)"),
        "classes: "
        + (
            ", ".join(
                f"{sorted(cl.members)}:{cl.kind}" for cl in data.classes
            )
            or "(none)"
        ),
    ]
    if identity.witness is not None:
        w = identity.witness
        report["corner_identity"]["witness"] = {
            "label_x": sorted(w.label_x),
            "label_y": sorted(w.label_y),
            "label_z": sorted(w.label_z),
        }
        lhs0 = identity.lhs_counts[0][1]
        rhs0 = sum(1 for t in identity.rhs_triples if t.excess == 0)
        lines.append(
            f"corner identity FAILS at depth 0: faces-of-W count {lhs0}, "
            f"matched-pair count {rhs0}"
        )
        lines.append(
            f"witness labels: X{sorted(w.label_x)} Y{sorted(w.label_y)} "
            f"Z{sorted(w.label_z)}"
        )
    else:
        lines.append(
            "corner identity: "
            + ("holds" if identity.identity_holds else "FAILS")
        )
    _emit(report, args.format, lines)
    return EXIT_OK


def _excess_histogram(identity) -> dict:
    hist: dict[str, int] = {}
    for t in identity.rhs_triples:
        key = str(t.excess)
        hist[key] = hist.get(key, 0) + 1
    return hist


def cmd_orient(args) -> int:
    doc = _read_document(args.input)
    if not isinstance(doc, dict) or "identity" not in doc:
        raise ParseError("orient needs an object with key 'identity'")
    name = doc["identity"]
    try:
        if name in ("unit_product", "product_swap"):
            ox = orient.OrientedModel(
                serialize.model_from_doc(doc["x"]), int(doc.get("sign_x", 1))
            )
            oy = orient.OrientedModel(
                serialize.model_from_doc(doc["y"]), int(doc.get("sign_y", 1))
            )
            report = orient.verify_sign_identity(name, ox, oy)
        elif name in ("minus_boundary", "identity_pullback"):
            f = serialize.map_from_doc(doc["f"])
            report = orient.verify_sign_identity(
                name, f, int(doc.get("sign_x", 1)), int(doc.get("sign_y", 1))
            )
        elif name in ("associativity", "product_pairing"):
            maps = [serialize.map_from_doc(doc[k]) for k in ("d", "e", "f", "g")]
            signs = tuple(int(s) for s in doc.get("signs", (1, 1, 1, 1, 1)))
            report = orient.verify_sign_identity(name, *maps, signs)
        else:
            f = serialize.map_from_doc(doc["f"])
            g = serialize.map_from_doc(doc["g"])
            report = orient.verify_sign_identity(
                name,
                f,
                g,
                int(doc.get("sign_x", 1)),
                int(doc.get("sign_y", 1)),
                int(doc.get("sign_z", 1)),
            )
    except KeyError as exc:
        raise ParseError(f"orient document missing key {exc}")
    payload = {
        "identity": report.identity,
        "holds": report.holds,
        "checks": [
            {"description": c.description, "left": c.left, "right": c.right}
            for c in report.checks
        ],
    }
    lines = [f"identity: {report.identity}"] + [
        f"  {c.description}: {c.left} == {c.right} {'ok' if c.ok else 'VIOLATED'}"
        for c in report.checks
    ] + [f"holds: {str(report.holds).lower()}"]
    _emit(payload, args.format, lines)
    return EXIT_OK if report.holds else EXIT_NEGATIVE


def cmd_complex(args) -> int:
    doc = _read_document(args.input)
    if isinstance(doc, dict) and "name" in doc:
        name = doc["name"]
        corpus = {
            "teardrop": complexes.teardrop,
            "square": complexes.square,
            "half_space": complexes.half_space,
            "boundaryless": complexes.boundaryless,
            "quadrant": complexes.quadrant,
        }
        if name not in corpus:
            raise ParseError(f"unknown complex name {name!r}")
        c = corpus[name]()
    else:
        c = serialize.complex_from_doc(doc)
    cls = complexes.classify(c)
    graph = complexes.boundary_graph(c)
    bnd = complexes.boundary_complex(c)
    deepest = max((m.depth for m in c.charts), default=0)
    report = {
        "charts": [serialize.model_to_doc(m) for m in c.charts],
        "boundary_pieces": len(graph.components),
        "with_faces": cls.with_faces,
        "embedded_parts": cls.embedded_parts,
        "witness": [list(part) for part in cls.witness] if cls.witness else None,
        "boundary_chart_count": len(bnd.charts),
        "corner_counts": {
            str(k): complexes.corners_complex(c, k).count
            for k in range(deepest + 1)
        },
    }
    lines = [
        f"charts: {len(c.charts)}",
        f"boundary pieces: {len(graph.components)}",
        f"with faces: {str(cls.with_faces).lower()}",
        (
            f"embedded with {cls.embedded_parts} part(s)"
            if cls.is_embedded
            else "not embedded (plain only)"
        ),
    ]
    for k in range(deepest + 1):
        lines.append(f"corners at depth {k}: {report['corner_counts'][str(k)]}")
    _emit(report, args.format, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(suites.ALL_SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        fn = suites.ALL_SUITES[name]
        kwargs: dict[str, int] = {"seed": args.seed}
        if args.max_dim is not None and "max_dim" in fn.__code__.co_varnames:
            kwargs["max_dim"] = args.max_dim
        if args.size is not None:
            for key in ("pairs", "count", "cones", "instances"):
                if key in fn.__code__.co_varnames:
                    kwargs[key] = args.size
        results.append(fn(**kwargs))
    report = {
        r.name: {
            "checks": r.checks,
            "failures": r.failures,
            "ok": r.ok,
        }
        for r in results
    }
    lines = []
    for r in results:
        lines.extend(r.lines())
    _emit(report, args.format, lines)
    return EXIT_OK if all(r.ok for r in results) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cornercalc",
        description="Exact germ-level calculus for manifolds with corners",
    )
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_input=True):
        p = sub.add_parser(name)
        if needs_input:
            p.add_argument("input", help="JSON document path, or - for stdin")
        p.set_defaults(handler=fn)
        return p

    add("classify", cmd_classify)
    add("germ", cmd_germ)
    add("compose", cmd_compose)
    add("corners", cmd_corners)
    add("fibre", cmd_fibre)
    add("orient", cmd_orient)
    add("complex", cmd_complex)
    p_verify = add("verify", cmd_verify, needs_input=False)
    p_verify.add_argument(
        "--suite",
        default="all",
        choices=sorted(suites.ALL_SUITES) + ["all"],
    )
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--max-dim", dest="max_dim", type=int, default=None)
    p_verify.add_argument(
        "--size", type=int, default=None, help="override the suite's batch size"
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, ModelMismatch, BadFace, BadLabel, InvalidGerm) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotTransverse, NotSmoothAtOrigin, HypothesisNotMet) as exc:
        print(f"negative verdict: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except CornerCalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
