"""Map germs between model corners, anchored at the deepest corners.

A germ carries two pieces of data: the *transfer pairs* (j, i), meaning
the j-th boundary defining function of the target pulls back to a
positive multiple of the i-th one of the source, and the exact rational
Jacobian at the anchor.  Target faces with no transfer pair pull back to
the zero germ ("flat" faces).  These two facts force the shape of the
constrained Jacobian rows, which the constructor checks:

  * row j for a transferred face is lam * e_i with lam > 0,
  * row j for a flat face is zero,
  * rows past the target depth are unconstrained.

Everything in this module is a pure function of immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import linalg
from .errors import (
    BadFace,
    BadLabel,
    InvalidGerm,
    ModelMismatch,
    NotSubmersion,
)
from .linalg import Matrix
from .model import ModelCorner, StratumLabel, product, product_coordinates, product_face

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class CornerMapGerm:
    """A germ source -> target with transfer data and exact Jacobian."""

    source: ModelCorner
    target: ModelCorner
    transfers: tuple[tuple[int, int], ...]  # sorted pairs (target face, source face)
    jacobian: Matrix

    def __post_init__(self):
        a, c = self.source.depth, self.target.depth
        if len(self.jacobian) != self.target.dim:
            raise InvalidGerm("Jacobian row count != target dimension")
        if any(len(row) != self.source.dim for row in self.jacobian):
            raise InvalidGerm("Jacobian column count != source dimension")
        seen = set()
        for j, i in self.transfers:
            if not 1 <= j <= c:
                raise InvalidGerm(f"transfer from non-face {j} of target")
            if not 1 <= i <= a:
                raise InvalidGerm(f"transfer to non-face {i} of source")
            if j in seen:
                raise InvalidGerm(f"target face {j} transferred twice")
            seen.add(j)
        if list(self.transfers) != sorted(self.transfers):
            raise InvalidGerm("transfer pairs must be sorted")
        pi = dict(self.transfers)
        for j in range(1, c + 1):
            row = self.jacobian[j - 1]
            if j in pi:
                i = pi[j]
                if row[i - 1] <= 0:
                    raise InvalidGerm(f"transfer coefficient for face {j} not positive")
                if any(x != 0 for t, x in enumerate(row) if t != i - 1):
                    raise InvalidGerm(f"row {j} is not a multiple of a basis vector")
            else:
                if any(x != 0 for x in row):
                    raise InvalidGerm(f"flat face {j} has a nonzero row")

    # -- constructors ------------------------------------------------

    @classmethod
    def make(
        cls,
        source: ModelCorner,
        target: ModelCorner,
        transfer_set: Iterable[int],
        transfer_map: Mapping[int, int],
        jacobian,
    ) -> "CornerMapGerm":
        pairs = tuple(sorted((j, transfer_map[j]) for j in transfer_set))
        return cls(source, target, pairs, linalg.matrix(jacobian))

    @classmethod
    def from_jacobian(cls, source: ModelCorner, target: ModelCorner, jacobian) -> "CornerMapGerm":
        """Derive the transfer data from the constrained rows.

        Valid because a transferred row is a positive multiple of a basis
        vector and a flat row is zero; anything else raises InvalidGerm.
        """
        jac = linalg.matrix(jacobian)
        pairs = []
        for j in range(1, target.depth + 1):
            row = jac[j - 1]
            support = [t for t, x in enumerate(row) if x != 0]
            if not support:
                continue
            if len(support) > 1 or support[0] >= source.depth or row[support[0]] < 0:
                raise InvalidGerm(f"row {j} fits neither a flat nor a transferred face")
            pairs.append((j, support[0] + 1))
        return cls(source, target, tuple(pairs), jac)

    # -- views -------------------------------------------------------

    @property
    def transfer_set(self) -> frozenset:
        """Target faces that pull back to a boundary defining function."""
        return frozenset(j for j, _ in self.transfers)

    @property
    def transfer_map(self) -> dict[int, int]:
        return dict(self.transfers)

    @property
    def flat_faces(self) -> frozenset:
        return frozenset(self.target.faces) - self.transfer_set

    def coefficient(self, j: int) -> Fraction:
        """The positive factor lam with row j = lam * e_{transfer(j)}."""
        i = self.transfer_map[j]
        return self.jacobian[j - 1][i - 1]

    def __repr__(self):
        return (
            f"CornerMapGerm({self.source} -> {self.target}, "
            f"transfers={list(self.transfers)})"
        )


@dataclass(frozen=True)
class CornerPointMap:
    """One point of the corner functor: stratum label to stratum label."""

    source_label: StratumLabel
    target_label: StratumLabel
    restricted: CornerMapGerm


@dataclass(frozen=True)
class BoundaryDecomposition:
    """Source faces split by whether some target face transfers onto them."""

    minus_faces: frozenset
    plus_faces: frozenset


@dataclass(frozen=True)
class SubmersionNormalForm:
    """Witness that a submersion germ is a projection in new coordinates.

    ``witness`` is a germ isomorphism source -> product(y_model, z_model)
    whose composition with the product projection reproduces the original
    germ exactly.  ``face_permutation[i]`` is the source face placed at
    product face i+1.
    """

    face_permutation: tuple[int, ...]
    y_model: ModelCorner
    z_model: ModelCorner
    witness: CornerMapGerm


@dataclass(frozen=True)
class BoundaryLifts:
    """Face restrictions of a submersion.

    ``plus`` maps each untransferred source face i to the composite with
    the face inclusion (a germ onto the whole target); ``minus`` maps
    each transferred source face i to (j, lift) where j is the target
    face it receives and lift is the germ between the two face models.
    """

    plus: dict[int, CornerMapGerm]
    minus: dict[int, tuple[int, CornerMapGerm]]


# -- basic constructors ---------------------------------------------


def identity_germ(m: ModelCorner) -> CornerMapGerm:
    pairs = tuple((i, i) for i in m.faces)
    return CornerMapGerm(m, m, pairs, linalg.identity(m.dim))


def face_inclusion_germ(m: ModelCorner, i: int) -> CornerMapGerm:
    """The inclusion of the face-i model into m.

    Target face i is flat (the face sits inside it); every other target
    face transfers to its own copy in the face model.
    """
    if i not in m.faces:
        raise BadFace(f"face {i} of {m}")
    sub = ModelCorner(m.dim - 1, m.depth - 1)
    rows = []
    for j in range(1, m.dim + 1):
        if j == i:
            rows.append((_ZERO,) * sub.dim)
        else:
            col = j - 1 if j < i else j - 2
            rows.append(linalg.unit_vector(sub.dim, col))
    pairs = tuple(
        (j, j if j < i else j - 1) for j in m.faces if j != i
    )
    return CornerMapGerm(sub, m, pairs, tuple(rows))


def constant_germ(source: ModelCorner, target: ModelCorner) -> CornerMapGerm:
    """The germ of the constant map onto the target anchor."""
    return CornerMapGerm(source, target, (), linalg.zeros(target.dim, source.dim))


# -- algebra ---------------------------------------------------------


def compose(g: CornerMapGerm, f: CornerMapGerm) -> CornerMapGerm:
    """g after f.  Transfers chase through f; coefficients multiply."""
    if f.target != g.source:
        raise ModelMismatch(f"cannot compose {g.source} after {f.target}")
    pi_f, pi_g = f.transfer_map, g.transfer_map
    pairs = tuple(
        sorted((j, pi_f[i]) for j, i in g.transfers if i in pi_f)
    )
    jac = linalg.matmul(
        g.jacobian, f.jacobian, (g.target.dim, f.target.dim, f.source.dim)
    )
    return CornerMapGerm(f.source, g.target, pairs, jac)


def product_germ(f: CornerMapGerm, g: CornerMapGerm) -> CornerMapGerm:
    """f x g on the product models, with block Jacobian re-indexed."""
    src = product(f.source, g.source)
    tgt = product(f.target, g.target)
    src_coords = product_coordinates(f.source, g.source)
    tgt_coords = product_coordinates(f.target, g.target)
    jacs = (f.jacobian, g.jacobian)
    rows = []
    for t_factor, t_idx in tgt_coords:
        row = []
        for s_factor, s_idx in src_coords:
            if s_factor == t_factor:
                row.append(jacs[t_factor][t_idx - 1][s_idx - 1])
            else:
                row.append(_ZERO)
        rows.append(tuple(row))
    pairs = [
        (product_face(f.target, g.target, 0, j), product_face(f.source, g.source, 0, i))
        for j, i in f.transfers
    ]
    pairs += [
        (product_face(f.target, g.target, 1, j), product_face(f.source, g.source, 1, i))
        for j, i in g.transfers
    ]
    return CornerMapGerm(src, tgt, tuple(sorted(pairs)), tuple(rows))


def direct_product_germ(f: CornerMapGerm, g: CornerMapGerm) -> CornerMapGerm:
    """(f, g): shared source into the product of the targets."""
    if f.source != g.source:
        raise ModelMismatch("direct product needs a shared source model")
    tgt = product(f.target, g.target)
    tgt_coords = product_coordinates(f.target, g.target)
    jacs = (f.jacobian, g.jacobian)
    rows = tuple(jacs[factor][idx - 1] for factor, idx in tgt_coords)
    pairs = [(product_face(f.target, g.target, 0, j), i) for j, i in f.transfers]
    pairs += [(product_face(f.target, g.target, 1, j), i) for j, i in g.transfers]
    return CornerMapGerm(f.source, tgt, tuple(sorted(pairs)), rows)


# -- predicates ------------------------------------------------------


def is_immersion(f: CornerMapGerm) -> bool:
    return linalg.rank(f.jacobian) == f.source.dim


def is_submersion(f: CornerMapGerm) -> bool:
    """Surjective on the tangent space and on the deepest stratum.

    The stratum condition only involves the interior block because the
    constrained rows vanish on interior columns by the germ invariants.
    """
    m, a = f.source.dim, f.source.depth
    p, c = f.target.dim, f.target.depth
    if linalg.rank(f.jacobian) != p:
        return False
    block = linalg.submatrix(f.jacobian, range(c, p), range(a, m))
    return linalg.rank(block) == p - c


def is_b_submersive(f: CornerMapGerm) -> bool:
    """Every target face transfers, each to a different source face."""
    pi = f.transfer_map
    return len(pi) == f.target.depth and len(set(pi.values())) == len(pi)


def is_isomorphism(f: CornerMapGerm) -> bool:
    """Invertible germ: same-shaped models and invertible Jacobian.

    Invertibility already forces full, bijective transfer data, so the
    inverse Jacobian satisfies the germ invariants as well.
    """
    if (f.source.dim, f.source.depth) != (f.target.dim, f.target.depth):
        return False
    return linalg.det(f.jacobian) != 0


def inverse_germ(f: CornerMapGerm) -> CornerMapGerm:
    if not is_isomorphism(f):
        raise InvalidGerm("germ is not invertible")
    inv = linalg.inverse(f.jacobian)
    assert inv is not None
    return CornerMapGerm.from_jacobian(f.target, f.source, inv)


# -- boundary behaviour ----------------------------------------------


def transfer_partition(f: CornerMapGerm) -> tuple[frozenset, tuple[tuple[int, int], ...]]:
    """Split the target faces into flat ones and transferred ones.

    Returns (flat_faces, transferred) where transferred lists the pairs
    (target face, receiving source face).
    """
    return f.flat_faces, f.transfers


def boundary_decomposition(f: CornerMapGerm) -> BoundaryDecomposition:
    minus = frozenset(i for _, i in f.transfers)
    plus = frozenset(f.source.faces) - minus
    return BoundaryDecomposition(minus_faces=minus, plus_faces=plus)


def _restrict(f: CornerMapGerm, label_a: frozenset, label_b: frozenset) -> CornerMapGerm:
    """Delete source columns label_a and target rows label_b, re-indexed."""
    m, a = f.source.dim, f.source.depth
    p, c = f.target.dim, f.target.depth
    keep_cols = [t for t in range(m) if t + 1 not in label_a]
    keep_rows = [t for t in range(p) if t + 1 not in label_b]
    jac = linalg.submatrix(f.jacobian, keep_rows, keep_cols)
    sub_src = ModelCorner(m - len(label_a), a - len(label_a))
    sub_tgt = ModelCorner(p - len(label_b), c - len(label_b))
    new_row = {old + 1: new + 1 for new, old in enumerate(keep_rows)}
    new_col = {old + 1: new + 1 for new, old in enumerate(keep_cols)}
    pairs = tuple(
        sorted(
            (new_row[j], new_col[i])
            for j, i in f.transfers
            if j not in label_b and i not in label_a
        )
    )
    return CornerMapGerm(sub_src, sub_tgt, pairs, jac)


def corner_label(f: CornerMapGerm, label: StratumLabel) -> frozenset:
    """Target stratum label hit by the corner functor at a source label."""
    if not label <= frozenset(f.source.faces):
        raise BadLabel(f"{sorted(label)} is not a stratum label of {f.source}")
    return frozenset(j for j, i in f.transfers if i in label)


def corner_map(f: CornerMapGerm, label: StratumLabel) -> CornerPointMap:
    """Action of the corner functor at one stratum label.

    The target label collects the transferred faces whose receiving face
    lies in the source label; the restricted germ lives between the two
    stratum models.
    """
    label = frozenset(label)
    target_label = corner_label(f, label)
    return CornerPointMap(label, target_label, _restrict(f, label, target_label))


def corner_map_flat(f: CornerMapGerm, label: StratumLabel) -> CornerPointMap:
    """Variant of the corner functor that also carries every flat face.

    Flat target faces contain the whole image, so they may be adjoined
    to every target label; the same functor laws hold.
    """
    label = frozenset(label)
    if not label <= frozenset(f.source.faces):
        raise BadLabel(f"{sorted(label)} is not a stratum label of {f.source}")
    target_label = corner_label(f, label) | f.flat_faces
    return CornerPointMap(label, target_label, _restrict(f, label, target_label))


# -- submersion structure --------------------------------------------


def submersion_normal_form(f: CornerMapGerm) -> SubmersionNormalForm:
    """Coordinates on the source making a submersion a projection.

    The transferred source faces move to the front in target order, the
    remaining faces follow in ascending order, the target's interior
    coordinates are pulled back next, and the basis is completed by the
    unused interior coordinates (leftmost-pivot rule).
    """
    if not is_submersion(f):
        raise NotSubmersion(str(f))
    m, a = f.source.dim, f.source.depth
    p, c = f.target.dim, f.target.depth
    pi = f.transfer_map
    # A submersion transfers every target face injectively.
    front = [pi[j] for j in range(1, c + 1)]
    rest = sorted(set(range(1, a + 1)) - set(front))
    face_perm = tuple(front + rest)

    y_model = f.target
    z_model = ModelCorner(m - p, a - c)
    interior_block = linalg.submatrix(f.jacobian, range(c, p), range(a, m))
    pivots = linalg.rref(interior_block, m - a)[1]
    completion = [a + t for t in range(m - a) if t not in pivots]

    rows: list[tuple[Fraction, ...]] = []
    rows += [f.jacobian[j - 1] for j in range(1, c + 1)]
    rows += [linalg.unit_vector(m, i - 1) for i in rest]
    rows += [f.jacobian[j - 1] for j in range(c + 1, p + 1)]
    rows += [linalg.unit_vector(m, t) for t in completion]
    witness = CornerMapGerm.from_jacobian(f.source, product(y_model, z_model), tuple(rows))
    return SubmersionNormalForm(face_perm, y_model, z_model, witness)


def projection_germ(m1: ModelCorner, m2: ModelCorner, factor: int) -> CornerMapGerm:
    """Projection of the product model onto one factor."""
    tgt = (m1, m2)[factor]
    coords = product_coordinates(m1, m2)
    rows = tuple(
        linalg.unit_vector(len(coords), coords.index((factor, i)))
        for i in range(1, tgt.dim + 1)
    )
    pairs = tuple(
        (i, product_face(m1, m2, factor, i)) for i in range(1, tgt.depth + 1)
    )
    return CornerMapGerm(product(m1, m2), tgt, pairs, rows)


def boundary_lifts(f: CornerMapGerm) -> BoundaryLifts:
    """Restrict a submersion to each boundary face of its source.

    On an untransferred face the composite with the inclusion is again a
    submersion onto the whole target; on a transferred face the germ
    drops to the corresponding face model of the target and satisfies
    f o include_source_face = include_target_face o lift.
    """
    if not is_submersion(f):
        raise NotSubmersion(str(f))
    dec = boundary_decomposition(f)
    plus = {
        i: compose(f, face_inclusion_germ(f.source, i)) for i in sorted(dec.plus_faces)
    }
    receives = {i: j for j, i in f.transfers}
    minus = {}
    for i in sorted(dec.minus_faces):
        j = receives[i]
        minus[i] = (j, corner_map(f, frozenset({i})).restricted)
    return BoundaryLifts(plus=plus, minus=minus)
