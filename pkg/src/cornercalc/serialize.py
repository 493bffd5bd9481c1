"""JSON round-tripping for models, germs, polynomial maps and complexes.

Rationals travel as strings ("3/2") so nothing is ever rounded; plain
integers are accepted on input.  Document shapes:

  model    {"dim": 2, "depth": 2}
  germ     {"source": model, "target": model, "P": [1, 2],
            "Pi": {"1": 1, "2": 1}, "jacobian": [["1", "0"], ...]}
  polymap  {"source": model, "target": model, "components": ["x1^2", ...]}
  complex  {"charts": [model, ...],
            "gluings": [{"chart_a": 0, "face_a": 1, "chart_b": 1,
                         "face_b": 1, "matrix": [...], "offset": [...]}],
            "overlaps": [[0, 1], ...]}
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .complexes import AffineFaceMap, CornerComplex, Gluing
from .errors import ParseError
from .germ import CornerMapGerm
from .model import ModelCorner
from .poly import PolyMap


def parse_fraction(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {value!r}: {exc}")
    raise ParseError(f"expected a rational, got {value!r}")


def fraction_to_json(x: Fraction) -> str:
    return str(x)


def _expect_dict(doc: Any, what: str) -> dict:
    if not isinstance(doc, dict):
        raise ParseError(f"{what} must be an object")
    return doc


def model_from_doc(doc: Any) -> ModelCorner:
    doc = _expect_dict(doc, "model")
    try:
        return ModelCorner(int(doc["dim"]), int(doc["depth"]))
    except KeyError as exc:
        raise ParseError(f"model missing key {exc}")
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad model: {exc}")


def model_to_doc(m: ModelCorner) -> dict:
    return {"dim": m.dim, "depth": m.depth}


def germ_from_doc(doc: Any) -> CornerMapGerm:
    doc = _expect_dict(doc, "germ")
    try:
        source = model_from_doc(doc["source"])
        target = model_from_doc(doc["target"])
        transfer_set = [int(j) for j in doc.get("P", [])]
        transfer_map = {int(j): int(i) for j, i in doc.get("Pi", {}).items()}
        jac = [[parse_fraction(x) for x in row] for row in doc["jacobian"]]
    except KeyError as exc:
        raise ParseError(f"germ missing key {exc}")
    except (TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"bad germ: {exc}")
    missing = [j for j in transfer_set if j not in transfer_map]
    if missing:
        raise ParseError(f"P lists faces absent from Pi: {missing}")
    return CornerMapGerm.make(source, target, transfer_set, transfer_map, jac)


def germ_to_doc(f: CornerMapGerm) -> dict:
    return {
        "source": model_to_doc(f.source),
        "target": model_to_doc(f.target),
        "P": sorted(f.transfer_set),
        "Pi": {str(j): i for j, i in f.transfers},
        "jacobian": [[fraction_to_json(x) for x in row] for row in f.jacobian],
    }


def polymap_from_doc(doc: Any) -> PolyMap:
    doc = _expect_dict(doc, "polynomial map")
    try:
        source = model_from_doc(doc["source"])
        target = model_from_doc(doc["target"])
        texts = list(doc["components"])
    except KeyError as exc:
        raise ParseError(f"polynomial map missing key {exc}")
    if len(texts) != target.dim:
        raise ParseError("one component per target coordinate")
    try:
        return PolyMap.parse(source, target, texts)
    except ValueError as exc:
        raise ParseError(str(exc))


def polymap_to_doc(q: PolyMap) -> dict:
    return {
        "source": model_to_doc(q.source),
        "target": model_to_doc(q.target),
        "components": [str(c) for c in q.components],
    }


def complex_from_doc(doc: Any) -> CornerComplex:
    doc = _expect_dict(doc, "complex")
    try:
        charts = tuple(model_from_doc(d) for d in doc["charts"])
    except KeyError as exc:
        raise ParseError(f"complex missing key {exc}")
    gluings = []
    for gdoc in doc.get("gluings", []):
        gdoc = _expect_dict(gdoc, "gluing")
        try:
            matrix = tuple(
                tuple(parse_fraction(x) for x in row) for row in gdoc["matrix"]
            )
            offset = tuple(parse_fraction(x) for x in gdoc["offset"])
            gluings.append(
                Gluing(
                    int(gdoc["chart_a"]),
                    int(gdoc["face_a"]),
                    int(gdoc["chart_b"]),
                    int(gdoc["face_b"]),
                    AffineFaceMap(matrix, offset),
                )
            )
        except KeyError as exc:
            raise ParseError(f"gluing missing key {exc}")
    overlaps = tuple((int(i), int(j)) for i, j in doc.get("overlaps", []))
    return CornerComplex(charts, tuple(gluings), overlaps)


def complex_to_doc(c: CornerComplex) -> dict:
    return {
        "charts": [model_to_doc(m) for m in c.charts],
        "gluings": [
            {
                "chart_a": gl.chart_a,
                "face_a": gl.face_a,
                "chart_b": gl.chart_b,
                "face_b": gl.face_b,
                "matrix": [
                    [fraction_to_json(x) for x in row]
                    for row in gl.identification.matrix
                ],
                "offset": [fraction_to_json(x) for x in gl.identification.offset],
            }
            for gl in c.gluings
        ],
        "overlaps": [list(p) for p in c.overlaps],
    }


def map_from_doc(doc: Any) -> CornerMapGerm:
    """Accept either a germ document or a polynomial-map document."""
    doc = _expect_dict(doc, "map")
    if "jacobian" in doc:
        return germ_from_doc(doc)
    if "components" in doc:
        from .poly import germ_of

        return germ_of(polymap_from_doc(doc))
    raise ParseError("map document needs 'jacobian' or 'components'")
