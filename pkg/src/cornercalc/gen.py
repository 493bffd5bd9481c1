"""Seeded random generators for models, germs and map pairs.

Every suite derives its data from a single integer seed through
``random.Random`` (the stdlib Mersenne Twister), so runs are exactly
reproducible across machines.  Generators bias towards small dimensions
and small rational entries; several constructions (submersions, shared
transfer patterns) are built to hit the interesting strata of the input
space rather than waiting for rejection sampling to find them.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from . import linalg
from .germ import CornerMapGerm, compose, projection_germ
from .fibre import FibreLedger, is_transverse
from .model import ModelCorner, product
from .poly import Polynomial, PolyMap

_ZERO = Fraction(0)


def rng_from_seed(seed: int) -> random.Random:
    return random.Random(seed)


def random_model(rng: random.Random, max_dim: int, min_dim: int = 0) -> ModelCorner:
    dim = rng.randint(min_dim, max_dim)
    return ModelCorner(dim, rng.randint(0, dim))


def random_fraction(rng: random.Random, zero_weight: int = 2) -> Fraction:
    if rng.randrange(zero_weight + 3) < zero_weight:
        return _ZERO
    return Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2, 3]))


def random_positive(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 4), rng.choice([1, 1, 2, 3]))


def random_germ(
    rng: random.Random,
    source: Optional[ModelCorner] = None,
    target: Optional[ModelCorner] = None,
    max_dim: int = 4,
) -> CornerMapGerm:
    if source is None:
        source = random_model(rng, max_dim)
    if target is None:
        target = random_model(rng, max_dim)
    m, a = source.dim, source.depth
    p, c = target.dim, target.depth
    transfer = {}
    if a:
        for j in range(1, c + 1):
            if rng.random() < 0.7:
                transfer[j] = rng.randint(1, a)
    rows = []
    for j in range(1, p + 1):
        if j <= c:
            row = [_ZERO] * m
            if j in transfer:
                row[transfer[j] - 1] = random_positive(rng)
            rows.append(tuple(row))
        else:
            rows.append(tuple(random_fraction(rng) for _ in range(m)))
    return CornerMapGerm.make(source, target, transfer.keys(), transfer, tuple(rows))


def random_iso(rng: random.Random, m: ModelCorner) -> CornerMapGerm:
    """Random germ automorphism: permuted scaled faces, mixed interior."""
    perm = list(m.faces)
    rng.shuffle(perm)
    while True:
        rows = []
        for i in range(1, m.dim + 1):
            if i <= m.depth:
                row = [_ZERO] * m.dim
                row[perm[i - 1] - 1] = random_positive(rng)
            else:
                row = [random_fraction(rng) for _ in range(m.dim)]
            rows.append(tuple(row))
        if linalg.det(tuple(rows)) != 0:
            return CornerMapGerm.from_jacobian(m, m, tuple(rows))


def random_submersion(
    rng: random.Random, target: Optional[ModelCorner] = None, max_extra: int = 2
) -> CornerMapGerm:
    """A projection onto the target composed with a source automorphism."""
    if target is None:
        target = random_model(rng, 3)
    extra = random_model(rng, max_extra)
    proj = projection_germ(target, extra, 0)
    return compose(proj, random_iso(rng, product(target, extra)))


def random_b_submersive(
    rng: random.Random, target: Optional[ModelCorner] = None, max_dim: int = 4
) -> CornerMapGerm:
    """Full injective transfer with otherwise random entries."""
    if target is None:
        target = random_model(rng, max_dim)
    p, c = target.dim, target.depth
    m = rng.randint(max(c, p - 1, 1), max_dim + c)
    a = rng.randint(c, min(m, c + 2))
    source = ModelCorner(m, a)
    perm = rng.sample(range(1, a + 1), c)
    transfer = {j: perm[j - 1] for j in range(1, c + 1)}
    rows = []
    for j in range(1, p + 1):
        if j <= c:
            row = [_ZERO] * m
            row[transfer[j] - 1] = random_positive(rng)
            rows.append(tuple(row))
        else:
            rows.append(tuple(random_fraction(rng) for _ in range(m)))
    return CornerMapGerm.make(source, target, transfer.keys(), transfer, tuple(rows))


def random_composable_pair(rng: random.Random, max_dim: int = 4):
    """(g, f) with f: X -> Y and g: Y -> Z."""
    x = random_model(rng, max_dim)
    y = random_model(rng, max_dim)
    z = random_model(rng, max_dim)
    f = random_germ(rng, x, y)
    g = random_germ(rng, y, z)
    return g, f


def random_linked_pair(rng: random.Random):
    """A pair transferring every target face, with deliberately small images.

    Collapsing several target faces onto few source faces on both sides
    produces multi-member link classes, including closed cycles, which
    generic sampling almost never hits.
    """
    c = rng.randint(1, 3)
    p = c + rng.randint(0, 1)
    a = rng.randint(1, c)
    b = rng.randint(1, c)
    germs = []
    for depth in (a, b):
        m = depth + (p - c) + rng.randint(0, 1)
        source = ModelCorner(m, depth)
        transfer = {j: rng.randint(1, depth) for j in range(1, c + 1)}
        rows = []
        for j in range(1, p + 1):
            if j <= c:
                row = [_ZERO] * m
                row[transfer[j] - 1] = random_positive(rng)
            else:
                row = [_ZERO] * m
                row[depth + (j - c) - 1] = random_positive(rng)
                for t in range(m):
                    if rng.random() < 0.3:
                        row[t] += random_fraction(rng)
            rows.append(tuple(row))
        germs.append(
            CornerMapGerm.make(
                source, ModelCorner(p, c), transfer.keys(), transfer, tuple(rows)
            )
        )
    return germs[0], germs[1]


def random_shared_transfer_pair(rng: random.Random, max_dim: int = 3):
    """A pair into one target with overlapping, possibly linked transfers."""
    z = random_model(rng, max_dim)
    f = random_germ(rng, random_model(rng, max_dim), z)
    g = random_germ(rng, random_model(rng, max_dim), z)
    return f, g


def random_transverse_pair(
    rng: random.Random, max_dim: int = 3, tries: int = 60
):
    """A transverse pair into a common target.

    Mixes raw rejection sampling with submersion-based pairs so that
    both generic and highly structured inputs appear; falls back to a
    guaranteed-transverse submersion pair when sampling misses.
    """
    for attempt in range(tries):
        style = rng.randrange(6)
        z = random_model(rng, max_dim)
        if style == 0:
            f = random_germ(rng, random_model(rng, max_dim), z)
            g = random_germ(rng, random_model(rng, max_dim), z)
        elif style == 1:
            f = random_submersion(rng, z)
            g = random_germ(rng, random_model(rng, max_dim), z)
        elif style == 2:
            f = random_b_submersive(rng, z, max_dim)
            g = random_b_submersive(rng, z, max_dim)
        elif style == 3:
            f = random_b_submersive(rng, z, max_dim)
            g = random_germ(rng, random_model(rng, max_dim), z)
        else:
            f, g = random_linked_pair(rng)
        if is_transverse(f, g):
            return f, g
    z = random_model(rng, max_dim)
    return random_submersion(rng, z), random_submersion(rng, z)


def random_strongly_transverse_pair(rng: random.Random, max_dim: int = 3):
    """Transverse with no cycle class: a submersion against anything."""
    while True:
        z = random_model(rng, max_dim)
        f = random_submersion(rng, z)
        g = random_germ(rng, random_model(rng, max_dim), z)
        if is_transverse(f, g):
            return f, g


def random_cone(rng: random.Random, ledger: FibreLedger, max_dim: int = 3):
    """A commuting cone over a fibre product, with the germ it factors by.

    Returns (h1, h2, h): h is a random germ into W and h1, h2 are its
    projections, so h is the unique mediator for (h1, h2).
    """
    apex = random_model(rng, max_dim)
    h = random_germ(rng, apex, ledger.w_model)
    h1 = compose(ledger.pi_x, h)
    h2 = compose(ledger.pi_y, h)
    return h1, h2, h


def random_smooth_polymap(
    rng: random.Random,
    source: Optional[ModelCorner] = None,
    target: Optional[ModelCorner] = None,
    max_dim: int = 3,
) -> PolyMap:
    """A polynomial map that classifies smooth at the origin.

    Constrained components are built as boundary variable times a unit
    with positive constant term; unconstrained ones are small random
    polynomials vanishing at the origin (so composition stays anchored).
    """
    if source is None:
        source = random_model(rng, max_dim, min_dim=1)
    if target is None:
        depth_max = source.depth if source.depth else 0
        target = random_model(rng, max_dim, min_dim=0)
        target = ModelCorner(target.dim, min(target.depth, depth_max))
    m, a = source.dim, source.depth
    comps = []
    for j in range(1, target.dim + 1):
        if j <= target.depth:
            if a == 0 or rng.random() < 0.2:
                comps.append(Polynomial.zero(m))
                continue
            i = rng.randint(1, a)
            unit = Polynomial.constant(m, random_positive(rng))
            for _ in range(rng.randrange(3)):
                exps = tuple(rng.randrange(2) for _ in range(m))
                unit = unit + Polynomial.make(m, {exps: random_fraction(rng)})
            # keep the constant term positive after the perturbations
            if unit.constant_term() <= 0:
                unit = unit + Polynomial.constant(m, 1 - unit.constant_term())
            comps.append(Polynomial.variable(m, i) * unit)
        else:
            poly = Polynomial.zero(m)
            for _ in range(rng.randrange(4)):
                exps = tuple(rng.randrange(3) for _ in range(m))
                if all(e == 0 for e in exps):
                    continue
                poly = poly + Polynomial.make(m, {exps: random_fraction(rng)})
            comps.append(poly)
    return PolyMap(source, target, tuple(comps))


def random_orientation(rng: random.Random) -> int:
    return rng.choice([1, -1])
