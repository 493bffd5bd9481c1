from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cornercalc import gen, linalg
from cornercalc.errors import NoMediator, NotTransverse
from cornercalc.fibre import (
    boundary_of_fibre_product,
    check_universal_property,
    corner_identity_check,
    factor_through_face,
    fibre_product,
    has_cycle_class,
    interface_data,
    is_strongly_transverse,
    is_transverse,
    matched_triples,
    submersion_boundary_identity,
)
from cornercalc.germ import (
    CornerMapGerm,
    compose,
    constant_germ,
    corner_map,
    face_inclusion_germ,
    identity_germ,
    is_isomorphism,
    is_submersion,
    projection_germ,
)
from cornercalc.model import ModelCorner
from cornercalc.poly import PolyMap, germ_of

HALF = ModelCorner(1, 1)
QUAD = ModelCorner(2, 2)
POINT = ModelCorner(0, 0)


def crossing_pair():
    """The two lines x2 = 2 x1 and x1 = 2 x2 inside the quadrant."""
    f = germ_of(PolyMap.parse(HALF, QUAD, ["x1", "2*x1"]))
    g = germ_of(PolyMap.parse(HALF, QUAD, ["2*x1", "x1"]))
    return f, g


def test_transversality_examples():
    f, g = crossing_pair()
    assert is_transverse(f, g)
    point_in_line = constant_germ(POINT, ModelCorner(1, 0))
    assert not is_transverse(point_in_line, point_in_line)
    rng = gen.rng_from_seed(2)
    for _ in range(30):
        z = gen.random_model(rng, 3)
        sub = gen.random_submersion(rng, z)
        other = gen.random_germ(rng, target=z)
        assert is_transverse(sub, other)
        assert is_transverse(other, sub)


def test_strong_transversality_examples():
    f, g = crossing_pair()
    assert not is_strongly_transverse(f, g)
    assert has_cycle_class(f, g)
    ident = identity_germ(HALF)
    assert is_strongly_transverse(ident, ident)
    rng = gen.rng_from_seed(3)
    for _ in range(30):
        z = gen.random_model(rng, 3)
        sub = gen.random_submersion(rng, z)
        other = gen.random_germ(rng, target=z)
        assert is_strongly_transverse(other, sub)


def test_interface_crossing_pair():
    f, g = crossing_pair()
    data = interface_data(f, g)
    assert data.p_f == data.p_g == frozenset({1, 2})
    assert data.pi_f_map == {1: 1, 2: 1} and data.pi_g_map == {1: 1, 2: 1}
    assert len(data.classes) == 1
    (cl,) = data.classes
    assert cl.members == frozenset({1, 2}) and cl.kind == "cycle"
    assert data.representatives == frozenset()


def test_interface_diagonal_identities():
    ident = identity_germ(HALF)
    data = interface_data(ident, ident)
    (cl,) = data.classes
    assert cl.members == frozenset({1}) and cl.kind == "tree"
    assert data.representatives == frozenset({1})


def test_interface_no_shared_faces():
    f = projection_germ(HALF, HALF, 0)  # submersion (2,2) -> (1,1)
    g = constant_germ(POINT, HALF)  # flat constant germ
    assert is_transverse(f, g)
    data = interface_data(f, g)
    assert data.p_g == frozenset() and data.classes == ()
    ledger = fibre_product(f, g)
    assert ledger.w_model == ModelCorner(1, 1)
    assert [e.describe() for e in ledger.registry] == ["x_face 2"]


def test_interface_requires_transverse():
    point_in_line = constant_germ(POINT, ModelCorner(1, 0))
    with pytest.raises(NotTransverse):
        interface_data(point_in_line, point_in_line)
    with pytest.raises(NotTransverse):
        fibre_product(point_in_line, point_in_line)


def test_fibre_product_crossing_pair_is_point():
    f, g = crossing_pair()
    ledger = fibre_product(f, g)
    assert ledger.w_model == POINT
    assert ledger.registry == ()
    assert compose(f, ledger.pi_x) == compose(g, ledger.pi_y)


def test_fibre_product_diagonal():
    ident = identity_germ(HALF)
    ledger = fibre_product(ident, ident)
    assert ledger.w_model == HALF
    assert [e.describe() for e in ledger.registry] == ["shared_class [1]"]
    assert ledger.pi_x == ledger.pi_y
    assert compose(ident, ledger.pi_x) == compose(ident, ledger.pi_y)
    # both projections are germ isomorphisms of the half line
    assert is_isomorphism(ledger.pi_x)


def test_fibre_product_pullback_along_identity():
    rng = gen.rng_from_seed(9)
    for _ in range(25):
        f = gen.random_germ(rng, max_dim=3)
        ledger = fibre_product(identity_germ(f.target), f)
        assert ledger.w_model.dim == f.source.dim
        assert ledger.w_model.depth == f.source.depth
        h = check_universal_property(
            identity_germ(f.target), f, ledger, f, identity_germ(f.source)
        )
        assert is_isomorphism(h)


def test_grounded_collision_counterexample():
    # A privately transferred face lands on the source face of a shared
    # class; the class's coordinate vanishes identically on W and the
    # class contributes no boundary face.
    f = CornerMapGerm.make(
        ModelCorner(1, 1), ModelCorner(3, 3), {1, 3}, {1: 1, 3: 1},
        [[2], [0], [Fraction(1, 3)]],
    )
    g = CornerMapGerm.make(
        ModelCorner(2, 2), ModelCorner(3, 3), {2, 3}, {2: 1, 3: 2},
        [[0, 0], [1, 0], [0, 1]],
    )
    assert is_transverse(f, g)
    data = interface_data(f, g)
    assert data.conditions_map["private_faces_separated"] is False
    assert data.conditions_map["private_transfer_injective"] is True
    (cl,) = data.classes
    assert cl.kind == "tree" and cl.grounded and not cl.contributes_face
    ledger = fibre_product(f, g)
    assert ledger.w_model == POINT and ledger.registry == ()
    assert is_strongly_transverse(f, g) and not has_cycle_class(f, g)
    report = corner_identity_check(f, g)
    assert report.identity_holds


def test_universal_property_self_cone():
    f, g = crossing_pair()
    ledger = fibre_product(f, g)
    h = check_universal_property(f, g, ledger, ledger.pi_x, ledger.pi_y)
    assert h == identity_germ(ledger.w_model)


def test_universal_property_constant_cone():
    ident = identity_germ(HALF)
    ledger = fibre_product(ident, ident)
    h1 = constant_germ(POINT, HALF)
    h = check_universal_property(ident, ident, ledger, h1, h1)
    assert h == constant_germ(POINT, ledger.w_model)


def test_universal_property_rejects_non_cone():
    ident = identity_germ(HALF)
    ledger = fibre_product(ident, ident)
    good = identity_germ(HALF)
    doubled = CornerMapGerm.make(HALF, HALF, {1}, {1: 1}, [[2]])
    with pytest.raises(NoMediator):
        check_universal_property(ident, ident, ledger, good, doubled)


@given(st.integers(0, 10**9))
@settings(max_examples=60, deadline=None)
def test_universal_property_round_trip(seed):
    rng = gen.rng_from_seed(seed)
    f, g = gen.random_transverse_pair(rng, 3)
    ledger = fibre_product(f, g)
    h1, h2, h = gen.random_cone(rng, ledger, 3)
    mediator = check_universal_property(f, g, ledger, h1, h2)
    assert mediator == h


def test_matched_triples_inequality_and_restrictions():
    rng = gen.rng_from_seed(31)
    for _ in range(60):
        f, g = gen.random_transverse_pair(rng, 3)
        for t in matched_triples(f, g):
            assert t.excess >= 0
            rf = corner_map(f, t.label_x).restricted
            rg = corner_map(g, t.label_y).restricted
            assert is_transverse(rf, rg)


def test_corner_identity_crossing_pair_counts():
    f, g = crossing_pair()
    report = corner_identity_check(f, g)
    assert not report.strongly_transverse
    assert report.lhs_counts == ((0, 1),)
    assert sum(1 for t in report.rhs_triples if t.excess == 0) == 2
    assert all(t.excess == 0 for t in report.rhs_triples)
    w = report.witness
    assert (w.label_x, w.label_y, w.label_z) == (
        frozenset({1}),
        frozenset({1}),
        frozenset({1, 2}),
    )


def test_corner_identity_diagonal():
    ident = identity_germ(HALF)
    report = corner_identity_check(ident, ident)
    assert report.strongly_transverse and report.identity_holds
    assert report.lhs_counts == ((0, 1), (1, 1))
    assert len(report.bijection) == 2


def test_corner_identity_strong_random():
    rng = gen.rng_from_seed(13)
    checked = 0
    while checked < 40:
        f, g = gen.random_transverse_pair(rng, 3)
        if not is_strongly_transverse(f, g):
            continue
        if f.source.dim + g.source.dim > 6:
            continue
        report = corner_identity_check(f, g)
        assert report.identity_holds
        checked += 1


def test_factor_through_face():
    inc = face_inclusion_germ(QUAD, 1)
    back = factor_through_face(inc, 1)
    assert back == identity_germ(HALF)


def test_submersion_boundary_identity_examples():
    proj = projection_germ(HALF, HALF, 0)
    report = submersion_boundary_identity(proj)
    assert all(p.ok for p in report.pieces)
    rng = gen.rng_from_seed(19)
    for _ in range(20):
        s = gen.random_submersion(rng)
        assert all(p.ok for p in submersion_boundary_identity(s).pieces)


def test_boundary_formula_projection_vs_identity():
    f = projection_germ(HALF, HALF, 0)
    g = identity_germ(HALF)
    report = boundary_of_fibre_product(f, g, "left_fibration")
    assert report.holds
    assert len(report.pieces) == 2
    report = boundary_of_fibre_product(f, g, "double_fibration")
    assert report.holds


def test_boundary_formula_boundaryless_target():
    rng = gen.rng_from_seed(23)
    done = 0
    while done < 20:
        z = ModelCorner(rng.randint(0, 2), 0)
        f = gen.random_germ(rng, target=z, max_dim=3)
        g = gen.random_germ(rng, target=z, max_dim=3)
        if not is_transverse(f, g):
            continue
        report = boundary_of_fibre_product(f, g, "boundaryless_target")
        assert report.holds
        done += 1


def test_boundary_formula_transfer_only_variants():
    rng = gen.rng_from_seed(29)
    done = 0
    while done < 15:
        z = gen.random_model(rng, 2)
        f = gen.random_b_submersive(rng, z, 3)
        g = gen.random_b_submersive(rng, z, 3)
        if not is_transverse(f, g):
            continue
        if is_submersion(f) and is_submersion(g):
            continue
        assert boundary_of_fibre_product(f, g, "left_fibration").holds
        assert boundary_of_fibre_product(f, g, "double_fibration").holds
        done += 1


def test_registry_depth_count():
    rng = gen.rng_from_seed(37)
    for _ in range(80):
        f, g = gen.random_transverse_pair(rng, 3)
        ledger = fibre_product(f, g)
        a, b, c = f.source.depth, g.source.depth, f.target.depth
        assert len(ledger.registry) == a + b - c == ledger.w_model.depth
        assert ledger.w_model.dim == f.source.dim + g.source.dim - f.target.dim


def test_projection_jacobians_span_matching_kernel():
    rng = gen.rng_from_seed(41)
    for _ in range(40):
        f, g = gen.random_transverse_pair(rng, 3)
        ledger = fibre_product(f, g)
        stacked = ledger.pi_x.jacobian + ledger.pi_y.jacobian
        w_dim = ledger.w_model.dim
        assert linalg.rank(stacked) == w_dim
        diff = tuple(
            rf + tuple(-x for x in rg) for rf, rg in zip(f.jacobian, g.jacobian)
        )
        for col in linalg.transpose(stacked, w_dim) if w_dim else ():
            assert all(x == 0 for x in linalg.matvec(diff, col))
