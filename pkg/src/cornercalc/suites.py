"""Seeded verification suites over randomized and exhaustive inputs.

Each suite runs a batch of independent checks and collects failure
descriptions instead of raising, so one run reports every violation it
finds.  All randomness flows from the suite's single seed; with equal
parameters the outcome (and its printed form) is identical across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, permutations

from . import complexes, gen, linalg, orient
from .errors import CornerCalcError, InternalInvariantViolation
from .fibre import (
    boundary_of_fibre_product,
    check_universal_property,
    corner_identity_check,
    fibre_product,
    has_cycle_class,
    interface_data,
    is_strongly_transverse,
    is_transverse,
    matched_triples,
    submersion_boundary_identity,
)
from .germ import (
    compose,
    corner_map,
    corner_map_flat,
    face_inclusion_germ,
    identity_germ,
    is_b_submersive,
    is_submersion,
    product_germ,
    projection_germ,
    submersion_normal_form,
)
from .model import (
    ModelCorner,
    corners_count,
    iterated_boundary_count,
    orthant_face_lattice,
    product,
    strata,
)
from .poly import (
    B_MAP,
    SMOOTH,
    WEAKLY_SMOOTH_ONLY,
    Polynomial,
    PolyMap,
    classify_at_origin,
    compose_poly,
    germ_of,
)

MAX_REPORTED = 12


@dataclass
class SuiteResult:
    name: str
    seed: int
    parameters: tuple[tuple[str, int], ...]
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, message: str):
        self.checks += 1
        if not condition:
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(message)
            else:
                self.failures[-1] = "... further failures suppressed"

    def lines(self) -> list[str]:
        params = " ".join(f"{k}={v}" for k, v in self.parameters)
        head = (
            f"{self.name}: seed={self.seed} {params} checks={self.checks} "
            f"failures={len(self.failures)} {'PASS' if self.ok else 'FAIL'}"
        )
        return (
            [head]
            + [f"  note: {msg}" for msg in self.notes]
            + [f"  {msg}" for msg in self.failures]
        )


def _all_labels(m: ModelCorner):
    for size in range(m.depth + 1):
        for label in combinations(m.faces, size):
            yield frozenset(label)


# -- counting ------------------------------------------------------------


def suite_counts(seed: int = 0, max_dim: int = 6) -> SuiteResult:
    """Exact face-count identities on all models up to a dimension bound."""
    res = SuiteResult("counts", seed, (("max_dim", max_dim),))
    models = [ModelCorner(n, k) for n in range(max_dim + 1) for k in range(n + 1)]
    for m in models:
        lattice = orthant_face_lattice(m.depth)
        for j in range(m.depth + 2):
            labels = [lab for lab, _ in strata(m, j)]
            res.check(
                sorted(labels, key=sorted) == lattice.get(j, []),
                f"strata({m}, {j}) disagrees with orthant enumeration",
            )
            res.check(
                corners_count(m, j) == len(lattice.get(j, [])),
                f"corners_count({m}, {j}) != brute-force subset count",
            )
            res.check(
                iterated_boundary_count(m, j)
                == len(lattice.get(j, [])) * math.factorial(j),
                f"iterated_boundary_count({m}, {j}) != ordered subset count",
            )
    for m1 in models:
        for m2 in models:
            if m1.dim + m2.dim > max_dim:
                continue
            prod = product(m1, m2)
            for j in range(prod.depth + 1):
                conv = sum(
                    corners_count(m1, i) * corners_count(m2, j - i)
                    for i in range(j + 1)
                )
                res.check(
                    corners_count(prod, j) == conv,
                    f"corner convolution fails for {m1} x {m2} at {j}",
                )
                ordered = sum(
                    math.comb(j, i)
                    * iterated_boundary_count(m1, i)
                    * iterated_boundary_count(m2, j - i)
                    for i in range(j + 1)
                )
                res.check(
                    iterated_boundary_count(prod, j) == ordered,
                    f"ordered-boundary convolution fails for {m1} x {m2} at {j}",
                )
    for m in models:
        k = m.depth
        for j in range(k + 1):
            # one face plus a j-set of the rest against a pointed (j+1)-set
            lhs = k * corners_count(ModelCorner(max(m.dim - 1, 0), k - 1), j) if k else 0
            rhs = (j + 1) * corners_count(m, j + 1)
            res.check(
                lhs == rhs, f"face/corner exchange count fails for {m} at {j}"
            )
    return res


# -- functor laws ---------------------------------------------------------


def suite_functor(seed: int = 0, pairs: int = 1000, max_dim: int = 4) -> SuiteResult:
    """Composition and identity laws of both corner functors."""
    res = SuiteResult("functor", seed, (("pairs", pairs), ("max_dim", max_dim)))
    rng = gen.rng_from_seed(seed)
    for _ in range(pairs):
        g, f = gen.random_composable_pair(rng, max_dim)
        gf = compose(g, f)
        for label in _all_labels(f.source):
            for functor in (corner_map, corner_map_flat):
                step_f = functor(f, label)
                step_g = functor(g, step_f.target_label)
                direct = functor(gf, label)
                res.check(
                    direct.target_label == step_g.target_label,
                    f"label mismatch for {functor.__name__} on {sorted(label)}",
                )
                res.check(
                    direct.restricted
                    == compose(step_g.restricted, step_f.restricted),
                    f"restriction mismatch for {functor.__name__} on {sorted(label)}",
                )
        ident = identity_germ(f.source)
        for label in _all_labels(f.source):
            for functor in (corner_map, corner_map_flat):
                step = functor(ident, label)
                res.check(
                    step.target_label == label
                    and step.restricted == identity_germ(step.restricted.source),
                    f"identity law fails for {functor.__name__} on {sorted(label)}",
                )
        if is_b_submersive(f):
            for label in _all_labels(f.source):
                res.check(
                    len(corner_map(f, label).target_label) <= len(label),
                    "transfer-injective germ raised a label's depth",
                )
    return res


def suite_germs(seed: int = 0, count: int = 300, max_dim: int = 4) -> SuiteResult:
    """Structural germ laws: products, inclusions, normal forms, sectors."""
    res = SuiteResult("germs", seed, (("count", count), ("max_dim", max_dim)))
    rng = gen.rng_from_seed(seed)
    for _ in range(count):
        f = gen.random_germ(rng, max_dim=max_dim)
        g = gen.random_germ(rng, max_dim=max_dim)
        fg = product_germ(f, g)
        res.check(
            fg.source == product(f.source, g.source)
            and fg.target == product(f.target, g.target),
            "product germ has wrong models",
        )
        res.check(
            compose(projection_germ(f.target, g.target, 0), fg)
            == compose(f, projection_germ(f.source, g.source, 0)),
            "product germ does not commute with projections",
        )
        s = gen.random_submersion(rng)
        res.check(is_submersion(s), "submersion generator produced a non-submersion")
        res.check(is_b_submersive(s), "a submersion germ must transfer all faces")
        nf = submersion_normal_form(s)
        res.check(
            compose(projection_germ(nf.y_model, nf.z_model, 0), nf.witness) == s,
            "normal form witness does not reproduce the submersion",
        )
        res.check(
            linalg.det(nf.witness.jacobian) != 0,
            "normal form witness is not invertible",
        )
        v = [
            gen.random_positive(rng) if t < f.source.depth else gen.random_fraction(rng)
            for t in range(f.source.dim)
        ]
        image = linalg.matvec(f.jacobian, v)
        res.check(
            all(image[j] >= 0 for j in range(f.target.depth)),
            "first-order image leaves the inward sector",
        )
        m = f.source
        if m.depth:
            i = rng.choice(list(m.faces))
            inc = face_inclusion_germ(m, i)
            for label in _all_labels(inc.source):
                chart_faces = frozenset(t if t < i else t + 1 for t in label)
                res.check(
                    corner_map(inc, label).target_label == chart_faces,
                    "face inclusion corner action mislabels faces",
                )
    return res


# -- polynomial front end ---------------------------------------------------


def suite_poly(seed: int = 0, pairs: int = 80) -> SuiteResult:
    res = SuiteResult("poly", seed, (("pairs", pairs),))
    rng = gen.rng_from_seed(seed)

    half = ModelCorner(1, 1)
    line = ModelCorner(1, 0)
    quarter = ModelCorner(2, 2)

    fixed = [
        (PolyMap.parse(half, line, ["x1"]), SMOOTH),
        (PolyMap.parse(half, half, ["x1^2"]), B_MAP),
        (PolyMap.parse(line, half, ["x1^2"]), WEAKLY_SMOOTH_ONLY),
        (PolyMap.parse(quarter, half, ["x1+x2"]), WEAKLY_SMOOTH_ONLY),
        (PolyMap.parse(quarter, half, ["x1*x2"]), B_MAP),
        (PolyMap.parse(half, ModelCorner(2, 2), ["x1", "2*x1"]), SMOOTH),
    ]
    for q, expected in fixed:
        res.check(
            classify_at_origin(q).kind == expected,
            f"classification of {[str(c) for c in q.components]} != {expected}",
        )
    cls = classify_at_origin(fixed[1][0])
    res.check(
        cls.b_germ is not None and cls.b_germ.exponents == ((2,),),
        "x1^2 should carry exponent row (2,)",
    )
    cls = classify_at_origin(fixed[4][0])
    res.check(
        cls.b_germ is not None and cls.b_germ.exponents == ((1, 1),),
        "x1*x2 should carry exponent row (1, 1)",
    )

    for _ in range(pairs):
        f = gen.random_smooth_polymap(rng)
        g = gen.random_smooth_polymap(rng, source=f.target)
        res.check(
            classify_at_origin(f).kind == SMOOTH,
            "smooth generator produced a non-smooth map",
        )
        gf = compose_poly(g, f)
        res.check(
            germ_of(gf) == compose(germ_of(g), germ_of(f)),
            "lowering does not commute with polynomial composition",
        )
        for j in range(f.target.depth):
            comp = f.components[j]
            if comp.is_zero:
                continue
            content = comp.monomial_content()
            unit = comp.divide_monomial(content)
            res.check(
                unit.constant_term() > 0
                and all(e == 0 for e in content[f.source.depth:]),
                "smooth map fails the positive-unit-times-monomial test",
            )
            rebuilt = Polynomial.make(f.source.dim, {content: 1}) * unit
            res.check(
                rebuilt == comp,
                "content/unit factorization does not rebuild the component",
            )
    return res


# -- fibre products -----------------------------------------------------------


def suite_fibre(seed: int = 0, pairs: int = 500, max_dim: int = 3) -> SuiteResult:
    """Dimension, registry, matched-triple and corner-identity checks.

    The separation condition on privately transferred faces can fail on
    honestly transverse pairs (the colliding class grounds and drops out
    of the registry); such pairs are counted in the notes and every
    other condition and downstream invariant is still enforced on them.
    """
    res = SuiteResult("fibre", seed, (("pairs", pairs), ("max_dim", max_dim)))
    rng = gen.rng_from_seed(seed)
    collisions = 0
    strong_checked = 0
    for _ in range(pairs):
        f, g = gen.random_transverse_pair(rng, max_dim)
        try:
            data = interface_data(f, g)
        except InternalInvariantViolation as exc:
            res.check(False, f"interface conditions failed: {exc}")
            continue
        verdicts = data.conditions_map
        res.check(
            verdicts["private_transfer_injective"]
            and verdicts["class_sizes"]
            and verdicts["faces_covered"],
            "a provable interface condition failed",
        )
        if not verdicts["private_faces_separated"]:
            collisions += 1
            res.check(
                any(cl.grounded for cl in data.classes),
                "separation failed without a grounded class",
            )
        ledger = fibre_product(f, g)
        m, n, p = f.source.dim, g.source.dim, f.target.dim
        a, b, c = f.source.depth, g.source.depth, f.target.depth
        res.check(ledger.w_model.dim == m + n - p, "fibre product dimension wrong")
        res.check(
            ledger.w_model.depth == a + b - c and len(ledger.registry) == a + b - c,
            "registry size differs from the depth count",
        )
        res.check(
            compose(f, ledger.pi_x) == compose(g, ledger.pi_y),
            "projections do not commute",
        )
        stacked = ledger.pi_x.jacobian + ledger.pi_y.jacobian
        diff = tuple(
            rf + tuple(-x for x in rg) for rf, rg in zip(f.jacobian, g.jacobian)
        )
        res.check(
            linalg.rank(stacked) == ledger.w_model.dim,
            "projection columns are dependent",
        )
        cols = (
            linalg.transpose(stacked, ledger.w_model.dim)
            if ledger.w_model.dim
            else ()
        )
        res.check(
            all(all(x == 0 for x in linalg.matvec(diff, col)) for col in cols),
            "projection columns leave the matching kernel",
        )
        triples = matched_triples(f, g)
        res.check(
            all(t.excess >= 0 for t in triples),
            "matched labels violate the depth inequality",
        )
        res.check(
            all(
                is_transverse(
                    corner_map(f, t.label_x).restricted,
                    corner_map(g, t.label_y).restricted,
                )
                for t in triples
            ),
            "a matched restriction is not transverse",
        )
        strong_enum = is_strongly_transverse(f, g)
        res.check(
            strong_enum == (not has_cycle_class(f, g)),
            "strong-transversality criteria disagree",
        )
        if strong_enum and m + n <= 6:
            strong_checked += 1
            report = corner_identity_check(f, g)
            res.check(
                report.identity_holds,
                "corner identity fails on a strongly transverse pair",
            )
    res.notes.append(f"private_transfer_collisions={collisions}")
    res.notes.append(f"strong_pairs_checked={strong_checked}")
    return res


def suite_universal(seed: int = 0, cones: int = 500, max_dim: int = 3) -> SuiteResult:
    """Existence, uniqueness and round-trip of the mediating germ."""
    res = SuiteResult("universal", seed, (("cones", cones), ("max_dim", max_dim)))
    rng = gen.rng_from_seed(seed)
    built = 0
    while built < cones:
        f, g = gen.random_transverse_pair(rng, max_dim)
        ledger = fibre_product(f, g)
        for _ in range(3):
            if built >= cones:
                break
            h1, h2, h = gen.random_cone(rng, ledger, max_dim)
            built += 1
            try:
                mediator = check_universal_property(f, g, ledger, h1, h2)
            except CornerCalcError as exc:
                res.check(False, f"no mediator for a commuting cone: {exc}")
                continue
            res.check(mediator == h, "mediator differs from the generating germ")
        try:
            ident = check_universal_property(f, g, ledger, ledger.pi_x, ledger.pi_y)
            res.check(
                ident == identity_germ(ledger.w_model),
                "self-cone mediator is not the identity",
            )
        except CornerCalcError as exc:
            res.check(False, f"self-cone has no mediator: {exc}")
    return res


def suite_boundary(seed: int = 0, instances: int = 120, max_dim: int = 3) -> SuiteResult:
    """The boundary decompositions, including the transfer-only variants."""
    res = SuiteResult(
        "boundary", seed, (("instances", instances), ("max_dim", max_dim))
    )
    rng = gen.rng_from_seed(seed)
    built = 0
    while built < instances:
        style = rng.randrange(4)
        if style == 0:
            s = gen.random_submersion(rng)
            report = submersion_boundary_identity(s)
            res.check(
                all(p.ok for p in report.pieces),
                "pullback description of the transferred boundary failed",
            )
            built += 1
            continue
        if style == 1:
            z = ModelCorner(rng.randint(0, max_dim), 0)
            f = gen.random_germ(rng, target=z, max_dim=max_dim)
            g = gen.random_germ(rng, target=z, max_dim=max_dim)
            if not is_transverse(f, g):
                continue
            formula = "boundaryless_target"
        elif style == 2:
            z = gen.random_model(rng, max_dim - 1)
            f = (
                gen.random_submersion(rng, z)
                if rng.random() < 0.5
                else gen.random_b_submersive(rng, z, max_dim)
            )
            g = gen.random_germ(rng, target=z, max_dim=max_dim)
            if not is_transverse(f, g):
                continue
            formula = "left_fibration"
        else:
            z = gen.random_model(rng, max_dim - 1)
            f = (
                gen.random_submersion(rng, z)
                if rng.random() < 0.5
                else gen.random_b_submersive(rng, z, max_dim)
            )
            g = (
                gen.random_submersion(rng, z)
                if rng.random() < 0.5
                else gen.random_b_submersive(rng, z, max_dim)
            )
            if not is_transverse(f, g):
                continue
            formula = "double_fibration"
        report = boundary_of_fibre_product(f, g, formula)
        res.check(
            report.holds,
            f"{formula} ({report.hypothesis}) decomposition failed: "
            + "; ".join(p.error or p.description for p in report.pieces if not p.ok),
        )
        built += 1
    return res


# -- orientations --------------------------------------------------------------


def _parity_models() -> list[ModelCorner]:
    return [ModelCorner(n, k) for n in (0, 1, 2) for k in range(n + 1)]


def suite_signs(seed: int = 0, instances: int = 200, max_dim: int = 3) -> SuiteResult:
    res = SuiteResult("signs", seed, (("instances", instances), ("max_dim", max_dim)))
    rng = gen.rng_from_seed(seed)

    for n in range(1, 7):
        for k in range(1, n + 1):
            m = ModelCorner(n, k)
            for i in m.faces:
                res.check(
                    orient.boundary_orientation_sign(m, i) == (-1) ** i,
                    f"boundary sign of face {i} of {m}",
                )
    for k in (2, 3):
        m = ModelCorner(k, k)
        base = orient.iterated_boundary_sign(m, tuple(m.faces))
        for perm in permutations(m.faces):
            inversions = sum(
                1
                for s in range(len(perm))
                for t in range(s + 1, len(perm))
                if perm[s] > perm[t]
            )
            res.check(
                orient.iterated_boundary_sign(m, perm) == (-1) ** inversions * base,
                f"face permutation {perm} sign on {m}",
            )

    flats = [ModelCorner(d, 0) for d in (0, 1, 2)]
    for md in flats:
        for zd in flats:
            for nd in flats:
                fx = projection_germ(md, zd, 1)
                gy = projection_germ(zd, nd, 0)
                res.check(
                    orient.verify_swap(fx, gy, 1, 1, 1).holds,
                    f"swap parity fails at dims {md.dim},{zd.dim},{nd.dim}",
                )
                res.check(
                    orient.splitting_independence(fx, gy),
                    f"splitting dependence at dims {md.dim},{zd.dim},{nd.dim}",
                )
    for mx in _parity_models():
        for my in _parity_models():
            ox = orient.OrientedModel(mx, 1)
            oy = orient.OrientedModel(my, 1)
            res.check(
                orient.verify_product_swap(ox, oy).holds,
                f"product swap parity fails at {mx} x {my}",
            )
            res.check(
                orient.verify_unit_product(ox, oy).holds,
                f"fibre product over a point fails at {mx} x {my}",
            )

    # projection suites with corners for the boundary sign laws
    for y in _parity_models():
        for zp in _parity_models():
            f = projection_germ(y, zp, 0)
            res.check(
                orient.verify_minus_boundary(f, 1, 1).holds,
                f"minus-boundary signs fail for projection onto {y} with {zp}",
            )
            res.check(
                orient.verify_minus_boundary(f, -1, 1).holds,
                f"minus-boundary signs (reversed) fail for {y} with {zp}",
            )
    small = [m for m in _parity_models() if m.dim <= 1]
    for z in small:
        for e1 in small:
            for e2 in small:
                f = projection_germ(z, e1, 0)
                g = projection_germ(z, e2, 0)
                rep = orient.verify_boundary_double_fibration(f, g, 1, 1, 1)
                res.check(
                    rep.holds,
                    f"double-fibration signs fail at {z}, {e1}, {e2}",
                )

    # associativity and pairing identities on boundaryless parity dims
    for yd in (0, 1):
        for zd in (0, 1):
            for pv in (0, 1):
                for px in (0, 1):
                    my, mz = ModelCorner(yd, 0), ModelCorner(zd, 0)
                    d = projection_germ(my, ModelCorner(pv, 0), 0)
                    e = projection_germ(my, mz, 0)
                    fmap = projection_germ(my, mz, 1)
                    gmap = projection_germ(mz, ModelCorner(px, 0), 0)
                    rep = orient.verify_associativity(
                        d, e, fmap, gmap, (1, 1, 1, 1, 1)
                    )
                    res.check(
                        rep.holds,
                        f"associativity parity fails at dims {yd},{zd},{pv},{px}",
                    )
                    d2 = projection_germ(my, mz, 0)
                    e2 = projection_germ(my, mz, 1)
                    f2 = projection_germ(my, ModelCorner(pv, 0), 0)
                    g2 = projection_germ(mz, ModelCorner(px, 0), 0)
                    rep = orient.verify_product_pairing(
                        d2, e2, f2, g2, (1, 1, 1, 1, 1)
                    )
                    res.check(
                        rep.holds,
                        f"pairing parity fails at dims {yd},{zd},{pv},{px}",
                    )

    built = 0
    while built < instances:
        kind = rng.randrange(6)
        if kind == 0:
            s = gen.random_submersion(rng)
            report = orient.verify_minus_boundary(
                s, gen.random_orientation(rng), gen.random_orientation(rng)
            )
        elif kind == 1:
            f, g = gen.random_transverse_pair(rng, max_dim)
            report = orient.verify_swap(
                f,
                g,
                gen.random_orientation(rng),
                gen.random_orientation(rng),
                gen.random_orientation(rng),
            )
            res.check(
                orient.splitting_independence(f, g),
                "splitting dependence on a random pair",
            )
        elif kind == 2:
            z = ModelCorner(rng.randint(0, 2), 0)
            f = gen.random_germ(rng, target=z, max_dim=max_dim)
            g = gen.random_germ(rng, target=z, max_dim=max_dim)
            if not is_transverse(f, g):
                continue
            report = orient.verify_boundary_boundaryless_target(
                f, g, *(gen.random_orientation(rng) for _ in range(3))
            )
        elif kind == 3:
            z = gen.random_model(rng, 2)
            f = gen.random_submersion(rng, z)
            g = gen.random_germ(rng, target=z, max_dim=max_dim)
            if not is_transverse(f, g):
                continue
            report = orient.verify_boundary_fibration(
                f, g, *(gen.random_orientation(rng) for _ in range(3))
            )
        elif kind == 4:
            z = gen.random_model(rng, 2)
            f = gen.random_submersion(rng, z)
            g = gen.random_submersion(rng, z)
            report = orient.verify_boundary_double_fibration(
                f, g, *(gen.random_orientation(rng) for _ in range(3))
            )
        else:
            f = gen.random_germ(rng, max_dim=max_dim)
            report = orient.verify_identity_pullback(
                f, gen.random_orientation(rng), gen.random_orientation(rng)
            )
        res.check(report.holds, f"{report.identity} violated")
        built += 1

    for _ in range(25):
        y = gen.random_model(rng, 2)
        z = gen.random_model(rng, 2)
        d = gen.random_submersion(rng, y)
        extra = gen.random_model(rng, 1)
        w = product(z, extra)
        fmap = compose(projection_germ(z, extra, 0), gen.random_iso(rng, w))
        e = gen.random_germ(rng, source=w, target=y)
        gmap = gen.random_germ(rng, target=z, max_dim=2)
        signs = tuple(gen.random_orientation(rng) for _ in range(5))
        rep = orient.verify_associativity(d, e, fmap, gmap, signs)
        res.check(rep.holds, "associativity identity violated")
    for _ in range(25):
        y = gen.random_model(rng, 2)
        z = gen.random_model(rng, 2)
        v = gen.random_model(rng, 2)
        d = gen.random_germ(rng, source=v, target=y)
        e = gen.random_germ(rng, source=v, target=z)
        fsub = gen.random_submersion(rng, y)
        gsub = gen.random_submersion(rng, z)
        signs = tuple(gen.random_orientation(rng) for _ in range(5))
        rep = orient.verify_product_pairing(d, e, fsub, gsub, signs)
        res.check(rep.holds, "product pairing identity violated")
    return res


# -- complexes -----------------------------------------------------------------


def suite_complex(seed: int = 0) -> SuiteResult:
    res = SuiteResult("complex", seed, ())
    tear = complexes.teardrop()
    sq = complexes.square()
    half = complexes.half_space()
    flat = complexes.boundaryless()
    corpus = [tear, sq, half, flat, complexes.quadrant()]

    cls = complexes.classify(tear)
    res.check(
        not cls.with_faces and cls.embedded_parts is None,
        "teardrop should be plain only",
    )
    cls = complexes.classify(sq)
    res.check(
        cls.with_faces and cls.embedded_parts == 2,
        "square should split into two face groups",
    )
    cls = complexes.classify(half)
    res.check(
        cls.with_faces and cls.embedded_parts == 1,
        "half-space should be a one-part manifold with boundary",
    )
    cls = complexes.classify(flat)
    res.check(
        cls.with_faces and cls.embedded_parts == 0,
        "boundaryless complex should need zero parts",
    )

    for c in corpus:
        cls = complexes.classify(c)
        if cls.is_embedded:
            res.check(cls.with_faces, "embedded must imply distinct pieces")
        graph = complexes.boundary_graph(c)
        for ci, counts in graph.multiplicities:
            res.check(
                sum(mult for _, mult in counts) == c.charts[ci].depth,
                "piece multiplicities do not sum to the depth",
            )

    tb = complexes.boundary_complex(tear)
    res.check(
        len(tb.charts) == 3 and complexes.component_count(tb) == 1,
        "teardrop boundary should be one closed edge",
    )
    res.check(
        complexes.corners_complex(tear, 2).count == 1,
        "teardrop should have one deep corner",
    )
    res.check(
        len(complexes.boundary_complex(tb).charts) == 2,
        "teardrop corner should yield two ordered second-boundary points",
    )
    sb = complexes.boundary_complex(sq)
    res.check(
        len(sb.charts) == 8 and complexes.component_count(sb) == 4,
        "square boundary should be four edges",
    )
    res.check(
        complexes.corners_complex(sq, 2).count == 4,
        "square should have four corners",
    )
    for c in corpus:
        second = complexes.boundary_complex(complexes.boundary_complex(c))
        res.check(
            len(second.charts) == sum(2 * corners_count(m, 2) for m in c.charts),
            "ordered second-boundary count disagrees with the corner count",
        )

    for c1 in (tear, sq, half):
        for c2 in (half, flat, complexes.quadrant()):
            prod = complexes.product_complex(c1, c2)
            top = max((m.depth for m in prod.charts), default=0)
            for k in range(top + 1):
                conv = sum(
                    complexes.corners_complex(c1, i).count
                    * complexes.corners_complex(c2, k - i).count
                    for i in range(k + 1)
                )
                res.check(
                    complexes.corners_complex(prod, k).count == conv,
                    f"product corner count fails at depth {k}",
                )
    return res


ALL_SUITES = {
    "counts": suite_counts,
    "functor": suite_functor,
    "germs": suite_germs,
    "poly": suite_poly,
    "fibre": suite_fibre,
    "universal": suite_universal,
    "boundary": suite_boundary,
    "signs": suite_signs,
    "complex": suite_complex,
}
