"""Acceptance gate: one test per criterion, printing a verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines; the
suite parameters are the contract (seeded batch sizes, dimension bounds,
exact expected values) and are not tunable from outside.
"""

from cornercalc import suites
from cornercalc.complexes import (
    boundaryless,
    boundary_complex,
    classify,
    component_count,
    half_space,
    quadrant,
    square,
    teardrop,
)
from cornercalc.fibre import corner_identity_check, fibre_product
from cornercalc.germ import is_immersion, is_submersion
from cornercalc.model import ModelCorner
from cornercalc.poly import (
    B_MAP,
    SMOOTH,
    WEAKLY_SMOOTH_ONLY,
    PolyMap,
    classify_at_origin,
    germ_of,
)


def _report(number: int, title: str, ok: bool, detail: str = ""):
    verdict = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number} {verdict}: {title}{suffix}")
    assert ok, f"criterion {number} failed: {title} {detail}"


def _suite_ok(result):
    return result.ok, "; ".join(result.lines())


def test_criterion_1_classifier_reproduces_worked_examples():
    half = ModelCorner(1, 1)
    line = ModelCorner(1, 0)
    quarter = ModelCorner(2, 2)

    inclusion = classify_at_origin(PolyMap.parse(half, line, ["x1"]))
    ok = inclusion.kind == SMOOTH
    ok = ok and is_immersion(inclusion.germ) and not is_submersion(inclusion.germ)

    square_on_half = classify_at_origin(PolyMap.parse(half, half, ["x1^2"]))
    ok = ok and square_on_half.kind == B_MAP
    ok = ok and square_on_half.b_germ.exponents == ((2,),)

    square_on_line = classify_at_origin(PolyMap.parse(line, half, ["x1^2"]))
    ok = ok and square_on_line.kind == WEAKLY_SMOOTH_ONLY

    addition = classify_at_origin(PolyMap.parse(quarter, half, ["x1+x2"]))
    ok = ok and addition.kind == WEAKLY_SMOOTH_ONLY

    multiplication = classify_at_origin(PolyMap.parse(quarter, half, ["x1*x2"]))
    ok = ok and multiplication.kind == B_MAP
    ok = ok and multiplication.b_germ.exponents == ((1, 1),)

    _report(1, "classifier matches the four worked examples exactly", ok)


def test_criterion_2_functor_laws():
    result = suites.suite_functor(seed=0, pairs=1000, max_dim=4)
    ok, detail = _suite_ok(result)
    _report(2, "corner functor laws over 1000 seeded pairs", ok, detail)


def test_criterion_3_product_count_formulas():
    result = suites.suite_counts(seed=0, max_dim=6)
    ok, detail = _suite_ok(result)
    _report(3, "product counting formulas against brute force, dims <= 6", ok, detail)


def test_criterion_4_fibre_bookkeeping():
    result = suites.suite_fibre(seed=0, pairs=500, max_dim=3)
    ok, detail = _suite_ok(result)
    _report(
        4,
        "dimensions, registry sizes, interface conditions and the depth "
        "inequality over 500 seeded transverse pairs",
        ok,
        detail,
    )


def test_criterion_5_corner_identity():
    # the strongly transverse branch of the seeded fibre suite runs the
    # full bijection; it must have fired on a substantial batch
    result = suites.suite_fibre(seed=1, pairs=500, max_dim=3)
    ok, detail = _suite_ok(result)
    strong_note = next(n for n in result.notes if n.startswith("strong_pairs"))
    strong = int(strong_note.split("=")[1])
    ok = ok and strong >= 100

    half = ModelCorner(1, 1)
    pair = ModelCorner(2, 2)
    f = germ_of(PolyMap.parse(half, pair, ["x1", "2*x1"]))
    g = germ_of(PolyMap.parse(half, pair, ["2*x1", "x1"]))
    report = corner_identity_check(f, g)
    ok = ok and not report.strongly_transverse
    ok = ok and report.lhs_counts == ((0, 1),)
    rhs_zero = sum(1 for t in report.rhs_triples if t.excess == 0)
    rhs_other = sum(1 for t in report.rhs_triples if t.excess != 0)
    ok = ok and rhs_zero == 2 and rhs_other == 0
    ok = ok and fibre_product(f, g).w_model == ModelCorner(0, 0)
    _report(
        5,
        "corner identity bijection on strongly transverse pairs; the "
        "crossing-lines pair counts 1 against 2 at depth zero",
        ok,
        f"{detail}; strong_pairs={strong}",
    )


def test_criterion_6_universal_property():
    result = suites.suite_universal(seed=0, cones=500, max_dim=3)
    ok, detail = _suite_ok(result)
    _report(6, "mediator exists, is unique and round-trips over 500 cones", ok, detail)


def test_criterion_7_orientation_identities():
    result = suites.suite_signs(seed=0, instances=200, max_dim=3)
    ok, detail = _suite_ok(result)
    _report(
        7,
        "orientation sign identities: parity suites, 200 random instances, "
        "boundary-sign determinants, axioms and splitting independence",
        ok,
        detail,
    )


def test_criterion_8_complex_classifications():
    ok = True
    cls = classify(teardrop())
    ok = ok and not cls.with_faces and cls.embedded_parts is None
    cls = classify(square())
    ok = ok and cls.with_faces and cls.embedded_parts == 2
    cls = classify(half_space())
    ok = ok and cls.with_faces and cls.embedded_parts == 1
    for c in (teardrop(), square(), half_space(), boundaryless(), quadrant()):
        got = classify(c)
        if got.is_embedded:
            ok = ok and got.with_faces
        ok = ok and got.plain
    tb = boundary_complex(teardrop())
    ok = ok and len(tb.charts) == 3 and component_count(tb) == 1
    result = suites.suite_complex(seed=0)
    suite_ok, detail = _suite_ok(result)
    _report(8, "presentation corpus classifications and implications", ok and suite_ok, detail)


def test_criterion_9_boundary_formulas():
    result = suites.suite_boundary(seed=0, instances=120, max_dim=3)
    ok, detail = _suite_ok(result)
    _report(
        9,
        "boundary decompositions of fibre products, including the "
        "transfer-only (unproved) variants",
        ok,
        detail,
    )
