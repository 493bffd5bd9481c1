"""Local corner models [0,inf)^k x R^(n-k) and their face combinatorics.

A model corner is determined by its dimension n and depth k.  Faces are
indexed 1..k and every enumeration below emits labels in lexicographic
order so output is deterministic.  Coordinates are exact rationals; no
floating point appears anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import BadFace, PointOutsideModel

# A stratum label is a set of face indices; ordered tuples of distinct
# faces label iterated-boundary points instead.
StratumLabel = frozenset


@dataclass(frozen=True, order=True)
class ModelCorner:
    """The model [0,inf)^depth x R^(dim-depth)."""

    dim: int
    depth: int

    def __post_init__(self):
        if not (0 <= self.depth <= self.dim):
            raise ValueError(f"need 0 <= depth <= dim, got ({self.dim}, {self.depth})")

    @property
    def faces(self) -> range:
        return range(1, self.depth + 1)

    @property
    def interior_dim(self) -> int:
        return self.dim - self.depth

    def __mul__(self, other: "ModelCorner") -> "ModelCorner":
        return product(self, other)

    def __repr__(self):
        return f"ModelCorner({self.dim}, {self.depth})"


def depth_of_point(m: ModelCorner, coords: Sequence) -> int:
    """Number of boundary faces of the model containing the point."""
    p = [Fraction(x) for x in coords]
    if len(p) != m.dim:
        raise PointOutsideModel(f"expected {m.dim} coordinates, got {len(p)}")
    if any(p[i] < 0 for i in range(m.depth)):
        raise PointOutsideModel("negative boundary coordinate")
    return sum(1 for i in range(m.depth) if p[i] == 0)


def strata(m: ModelCorner, j: int) -> list[tuple[StratumLabel, ModelCorner]]:
    """All depth-j stratum labels with the model of the closed stratum.

    Empty for j > depth; labels come out in lexicographic order.
    """
    if j < 0 or j > m.depth:
        return []
    sub = ModelCorner(m.dim - j, m.depth - j)
    return [(frozenset(a), sub) for a in combinations(m.faces, j)]


def boundary(m: ModelCorner) -> list[tuple[int, ModelCorner]]:
    """The boundary faces: one entry per face index, each one dimension down."""
    if m.depth == 0:
        return []
    sub = ModelCorner(m.dim - 1, m.depth - 1)
    return [(i, sub) for i in m.faces]


def face_model(m: ModelCorner, i: int) -> ModelCorner:
    if i not in m.faces:
        raise BadFace(f"face {i} of {m}")
    return ModelCorner(m.dim - 1, m.depth - 1)


def iterated_boundary_count(m: ModelCorner, j: int) -> int:
    """Connected components of the j-fold boundary over the deepest point.

    These are ordered j-tuples of distinct faces, so the count is the
    falling factorial k!/(k-j)!.
    """
    if j < 0 or j > m.depth:
        return 0
    return math.perm(m.depth, j)


def corners_count(m: ModelCorner, j: int) -> int:
    """Unordered j-subsets of faces at the deepest point: binomial(k, j)."""
    if j < 0 or j > m.depth:
        return 0
    return math.comb(m.depth, j)


def product(m1: ModelCorner, m2: ModelCorner) -> ModelCorner:
    """Product model: dimensions and depths add."""
    return ModelCorner(m1.dim + m2.dim, m1.depth + m2.depth)


def product_coordinates(m1: ModelCorner, m2: ModelCorner) -> tuple[tuple[int, int], ...]:
    """Coordinate layout of the product model.

    Entry t (0-based) of the result is (factor, index) with factor 0 or 1
    and index the 1-based coordinate within that factor.  Boundary
    coordinates of both factors come first, then the interiors, so the
    product really is a model corner in its own coordinates.
    """
    out = []
    out += [(0, i) for i in range(1, m1.depth + 1)]
    out += [(1, i) for i in range(1, m2.depth + 1)]
    out += [(0, i) for i in range(m1.depth + 1, m1.dim + 1)]
    out += [(1, i) for i in range(m2.depth + 1, m2.dim + 1)]
    return tuple(out)


def product_face(m1: ModelCorner, m2: ModelCorner, factor: int, face: int) -> int:
    """Face index of the product corresponding to a face of one factor."""
    if factor == 0:
        if face not in m1.faces:
            raise BadFace(f"face {face} of {m1}")
        return face
    if face not in m2.faces:
        raise BadFace(f"face {face} of {m2}")
    return m1.depth + face


def orthant_face_lattice(k: int) -> dict[int, list[frozenset]]:
    """Brute-force face lattice of [0,inf)^k via sign patterns.

    Classifies each pattern in {0, +}^k by its zero set; used as an
    independent oracle for the stratum enumeration.
    """
    out: dict[int, list[frozenset]] = {j: [] for j in range(k + 1)}
    for bits in range(2 ** k):
        zeros = frozenset(i + 1 for i in range(k) if bits & (1 << i))
        out[len(zeros)].append(zeros)
    for j in out:
        out[j].sort(key=sorted)
    return out
