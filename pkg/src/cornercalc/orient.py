"""Orientation signs for model corners, boundaries and fibre products.

A connected model corner is orientable and its orientation is a sign
relative to the standard ordered-coordinate orientation, so every
orientation statement at germ level reduces to an exact determinant
sign.  The fibre-product convention: splitting the defining exact
sequence identifies W (+) Z with X (+) Y, and the two direct-sum
orientations are declared to differ by (-1)^(dim Y * dim Z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .errors import BadFace, HypothesisNotMet, InternalInvariantViolation, NotTransverse
from .fibre import (
    FibreLedger,
    _difference_matrix,
    _face_lift,
    boundary_of_fibre_product,
    check_universal_property,
    fibre_product,
    submersion_boundary_identity,
)
from .germ import (
    CornerMapGerm,
    compose,
    constant_germ,
    direct_product_germ,
    face_inclusion_germ,
    identity_germ,
    product_germ,
    projection_germ,
)
from .model import ModelCorner, product, product_coordinates


@dataclass(frozen=True)
class OrientedModel:
    """A model corner with a sign against its standard coordinate frame."""

    model: ModelCorner
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def opposite(self) -> "OrientedModel":
        return OrientedModel(self.model, -self.sign)


def _sign(x: Fraction) -> int:
    if x == 0:
        raise InternalInvariantViolation("vanishing determinant in a sign computation")
    return 1 if x > 0 else -1


def boundary_orientation_sign(m: ModelCorner, i: int) -> int:
    """Induced-orientation sign of face i against its own coordinates.

    The outward normal at face i is -e_i; the sign is the determinant of
    the basis (outward normal, remaining coordinates in order) against
    the standard one, computed exactly.
    """
    if i not in m.faces:
        raise BadFace(f"face {i} of {m}")
    n = m.dim
    cols = [tuple(-x for x in linalg.unit_vector(n, i - 1))]
    cols += [linalg.unit_vector(n, t) for t in range(n) if t != i - 1]
    matrix = linalg.transpose(tuple(cols), n)
    return _sign(linalg.det(matrix))


def iterated_boundary_sign(m: ModelCorner, face_order: Sequence[int]) -> int:
    """Accumulated boundary sign of taking faces in the given order.

    ``face_order`` lists distinct faces of m; each step applies the
    induced-orientation sign at that face's current index.
    """
    remaining = list(m.faces)
    current = m
    out = 1
    for face in face_order:
        pos = remaining.index(face) + 1
        out *= boundary_orientation_sign(current, pos)
        remaining.remove(face)
        current = ModelCorner(current.dim - 1, current.depth - 1)
    return out


def product_orientation(ox: OrientedModel, oy: OrientedModel) -> OrientedModel:
    """Product orientation against the product model's own coordinates.

    The product model interleaves boundary coordinates before interior
    ones, so the concatenated orientation picks up the parity of that
    shuffle.
    """
    m1, m2 = ox.model, oy.model
    coords = product_coordinates(m1, m2)
    concat = [(0, i) for i in range(1, m1.dim + 1)] + [
        (1, i) for i in range(1, m2.dim + 1)
    ]
    perm = [concat.index(c) for c in coords]
    parity = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        t = start
        while not seen[t]:
            seen[t] = True
            t = perm[t]
            length += 1
        if length % 2 == 0:
            parity = -parity
    return OrientedModel(product(m1, m2), parity * ox.sign * oy.sign)


def _splitting_columns(
    f: CornerMapGerm, g: CornerMapGerm, pivot: str
) -> linalg.Matrix:
    """A right inverse of (u, v) |-> J_f u - J_g v supported on pivots."""
    diff = _difference_matrix(f, g)
    total = f.source.dim + g.source.dim
    p = f.target.dim
    order = "left" if pivot == "left" else "right"
    cols = linalg.independent_columns(diff, total, order)
    if len(cols) != p:
        raise NotTransverse("difference matrix is not surjective")
    square = linalg.submatrix(diff, range(p), cols)
    inv = linalg.inverse(square)
    assert inv is not None
    lift = [[Fraction(0)] * p for _ in range(total)]
    for row_idx, col in enumerate(cols):
        for j in range(p):
            lift[col][j] = inv[row_idx][j]
    return tuple(tuple(row) for row in lift)


def fibre_product_orientation(
    f: CornerMapGerm,
    g: CornerMapGerm,
    ox: int,
    oy: int,
    oz: int,
    ledger: Optional[FibreLedger] = None,
    pivot: str = "left",
) -> int:
    """Orientation sign of the fibre product against its own coordinates.

    Assembles the change of basis from (W coordinates, lifted Z
    coordinates) to the concatenated (X, Y) coordinates and applies the
    convention factor (-1)^(dim Y * dim Z).  The result does not depend
    on the pivot rule used for the lift; both rules are exposed so that
    independence can be checked.
    """
    if ledger is None:
        ledger = fibre_product(f, g)
    basis = ledger.pi_x.jacobian + ledger.pi_y.jacobian
    total = f.source.dim + g.source.dim
    lift = _splitting_columns(f, g, pivot)
    change = tuple(
        basis[t] + lift[t] for t in range(total)
    )
    sign = _sign(linalg.det(change)) if total else 1
    parity = (-1) ** (g.source.dim * f.target.dim)
    return sign * ox * oy * oz * parity


# -- identity verification ---------------------------------------------


@dataclass(frozen=True)
class SignCheck:
    """One verified instance of a sign identity."""

    description: str
    left: int
    right: int

    @property
    def ok(self) -> bool:
        return self.left == self.right


@dataclass(frozen=True)
class SignReport:
    identity: str
    checks: tuple[SignCheck, ...]

    @property
    def holds(self) -> bool:
        return all(c.ok for c in self.checks)


def _transport(sign: int, iso: CornerMapGerm) -> int:
    """Push an orientation sign through a germ isomorphism."""
    return sign * _sign(linalg.det(iso.jacobian))


def verify_minus_boundary(f: CornerMapGerm, ox: int, oy: int) -> SignReport:
    """Sign law for the transferred boundary of a submersion.

    Each transferred source face, with its induced orientation, matches
    the fibre product with the corresponding target face inclusion up to
    the factor (-1)^(dim X + dim Y).
    """
    report = submersion_boundary_identity(f)
    factor = (-1) ** (f.source.dim + f.target.dim)
    pi = f.transfer_map
    checks = []
    for j, piece in zip(sorted(f.target.faces), report.pieces):
        if not piece.ok:
            raise InternalInvariantViolation(f"boundary identity failed: {piece}")
        i = pi[j]
        left = boundary_orientation_sign(f.source, i) * ox
        o_face = boundary_orientation_sign(f.target, j) * oy
        inc = face_inclusion_germ(f.target, j)
        o_w = fibre_product_orientation(f, inc, ox, o_face, oy, piece.ledger)
        checks.append(
            SignCheck(f"target face {j}", _transport(left, piece.iso), factor * o_w)
        )
    return SignReport("minus_boundary", tuple(checks))


def _boundary_formula_signs(
    f: CornerMapGerm,
    g: CornerMapGerm,
    ox: int,
    oy: int,
    oz: int,
    formula: str,
    identity: str,
) -> SignReport:
    report = boundary_of_fibre_product(f, g, formula)
    ledger = fibre_product(f, g)
    o_w = fibre_product_orientation(f, g, ox, oy, oz, ledger)
    cross_factor = (-1) ** (f.source.dim + f.target.dim)
    checks = []
    for piece in report.pieces:
        if not piece.ok:
            raise InternalInvariantViolation(f"boundary identity failed: {piece}")
        left = boundary_orientation_sign(ledger.w_model, piece.position) * o_w
        if piece.side == "x":
            (i,) = piece.faces
            inc_sign = boundary_orientation_sign(f.source, i) * ox
            o_v = fibre_product_orientation(
                compose(f, face_inclusion_germ(f.source, i)),
                g,
                inc_sign,
                oy,
                oz,
                piece.ledger,
            )
            factor = 1
        elif piece.side == "y":
            (j,) = piece.faces
            inc_sign = boundary_orientation_sign(g.source, j) * oy
            o_v = fibre_product_orientation(
                f,
                compose(g, face_inclusion_germ(g.source, j)),
                ox,
                inc_sign,
                oz,
                piece.ledger,
            )
            factor = cross_factor
        else:  # matched pair of transferred faces over a face of Z
            i, j, q = piece.faces
            _, f_lift = _face_lift(f, i)
            _, g_lift = _face_lift(g, j)
            o_v = fibre_product_orientation(
                f_lift,
                g_lift,
                boundary_orientation_sign(f.source, i) * ox,
                boundary_orientation_sign(g.source, j) * oy,
                boundary_orientation_sign(f.target, q) * oz,
                piece.ledger,
            )
            factor = 1
        right = factor * _transport(o_v, piece.iso)
        checks.append(SignCheck(piece.description, left, right))
    return SignReport(identity, tuple(checks))


def verify_boundary_boundaryless_target(f, g, ox, oy, oz) -> SignReport:
    return _boundary_formula_signs(
        f, g, ox, oy, oz, "boundaryless_target", "boundary_boundaryless_target"
    )


def verify_boundary_fibration(f, g, ox, oy, oz) -> SignReport:
    return _boundary_formula_signs(
        f, g, ox, oy, oz, "left_fibration", "boundary_fibration"
    )


def verify_boundary_double_fibration(f, g, ox, oy, oz) -> SignReport:
    return _boundary_formula_signs(
        f, g, ox, oy, oz, "double_fibration", "boundary_double_fibration"
    )


def verify_swap(f, g, ox, oy, oz) -> SignReport:
    """X x_Z Y against Y x_Z X with the factor from the dimension excess."""
    lw = fibre_product(f, g)
    lv = fibre_product(g, f)
    s_w = fibre_product_orientation(f, g, ox, oy, oz, lw)
    s_v = fibre_product_orientation(g, f, oy, ox, oz, lv)
    h = check_universal_property(g, f, lv, lw.pi_y, lw.pi_x)
    excess = ((f.source.dim - f.target.dim) * (g.source.dim - g.target.dim))
    factor = (-1) ** excess
    return SignReport(
        "swap",
        (SignCheck("swap", _transport(s_w, h), factor * s_v),),
    )


def verify_associativity(
    d: CornerMapGerm,
    e: CornerMapGerm,
    f: CornerMapGerm,
    g: CornerMapGerm,
    signs: tuple[int, int, int, int, int],
) -> SignReport:
    """V x_Y (W x_Z X) against (V x_Y W) x_Z X, with no sign factor.

    ``signs`` lists (oV, oW, oX, oY, oZ); all four fibre products must
    be transverse.
    """
    o_v, o_w, o_x, o_y, o_z = signs
    if d.target != e.target or f.target != g.target:
        raise HypothesisNotMet("targets must pair up")
    if e.source != f.source:
        raise HypothesisNotMet("middle factor must be shared")
    wx = fibre_product(f, g)
    s_wx = fibre_product_orientation(f, g, o_w, o_x, o_z, wx)
    a1 = fibre_product(d, compose(e, wx.pi_x))
    s_a1 = fibre_product_orientation(d, compose(e, wx.pi_x), o_v, s_wx, o_y, a1)
    vw = fibre_product(d, e)
    s_vw = fibre_product_orientation(d, e, o_v, o_w, o_y, vw)
    a2 = fibre_product(compose(f, vw.pi_y), g)
    s_a2 = fibre_product_orientation(compose(f, vw.pi_y), g, s_vw, o_x, o_z, a2)

    h_vw = check_universal_property(d, e, vw, a1.pi_x, compose(wx.pi_x, a1.pi_y))
    h = check_universal_property(
        compose(f, vw.pi_y), g, a2, h_vw, compose(wx.pi_y, a1.pi_y)
    )
    return SignReport(
        "associativity",
        (SignCheck("associativity", _transport(s_a1, h), s_a2),),
    )


def verify_product_pairing(
    d: CornerMapGerm,
    e: CornerMapGerm,
    f: CornerMapGerm,
    g: CornerMapGerm,
    signs: tuple[int, int, int, int, int],
) -> SignReport:
    """V x_(Y x Z) (W x X) against (V x_Y W) x_Z X.

    ``d, e`` share the source V; ``f: W -> Y`` and ``g: X -> Z``.  The
    two sides differ by (-1)^(dim Z (dim Y + dim W)).
    """
    o_v, o_w, o_x, o_y, o_z = signs
    if d.source != e.source:
        raise HypothesisNotMet("d and e must share a source")
    if f.target != d.target or g.target != e.target:
        raise HypothesisNotMet("targets must pair up")
    de = direct_product_germ(d, e)
    fg = product_germ(f, g)
    a1 = fibre_product(de, fg)
    o_yz = product_orientation(
        OrientedModel(f.target, o_y), OrientedModel(g.target, o_z)
    ).sign
    o_wx = product_orientation(
        OrientedModel(f.source, o_w), OrientedModel(g.source, o_x)
    ).sign
    s_a1 = fibre_product_orientation(de, fg, o_v, o_wx, o_yz, a1)

    vw = fibre_product(d, f)
    s_vw = fibre_product_orientation(d, f, o_v, o_w, o_y, vw)
    a2 = fibre_product(compose(e, vw.pi_x), g)
    s_a2 = fibre_product_orientation(compose(e, vw.pi_x), g, s_vw, o_x, o_z, a2)

    pr_w = projection_germ(f.source, g.source, 0)
    pr_x = projection_germ(f.source, g.source, 1)
    h_vw = check_universal_property(
        d, f, vw, a1.pi_x, compose(pr_w, a1.pi_y)
    )
    h = check_universal_property(
        compose(e, vw.pi_x), g, a2, h_vw, compose(pr_x, a1.pi_y)
    )
    factor = (-1) ** (g.target.dim * (f.target.dim + f.source.dim))
    return SignReport(
        "product_pairing",
        (SignCheck("product_pairing", _transport(s_a1, h), factor * s_a2),),
    )


def verify_unit_product(ox: OrientedModel, oy: OrientedModel) -> SignReport:
    """Fibre product over a point carries the product orientation."""
    point = ModelCorner(0, 0)
    f = constant_germ(ox.model, point)
    g = constant_germ(oy.model, point)
    ledger = fibre_product(f, g)
    s_w = fibre_product_orientation(f, g, ox.sign, oy.sign, 1, ledger)
    prod = product_orientation(ox, oy)
    pr_x = projection_germ(ox.model, oy.model, 0)
    pr_y = projection_germ(ox.model, oy.model, 1)
    h = check_universal_property(f, g, ledger, pr_x, pr_y)
    return SignReport(
        "unit_product",
        (SignCheck("unit_product", _transport(prod.sign, h), s_w),),
    )


def verify_identity_pullback(f: CornerMapGerm, ox: int, oy: int) -> SignReport:
    """Pullback along the identity preserves orientation."""
    ledger = fibre_product(identity_germ(f.target), f)
    s_w = fibre_product_orientation(identity_germ(f.target), f, oy, ox, oy, ledger)
    h = check_universal_property(
        identity_germ(f.target), f, ledger, f, identity_germ(f.source)
    )
    return SignReport(
        "identity_pullback",
        (SignCheck("identity_pullback", _transport(ox, h), s_w),),
    )


def verify_product_swap(ox: OrientedModel, oy: OrientedModel) -> SignReport:
    """X x Y against Y x X: the parity of the full coordinate exchange."""
    m1, m2 = ox.model, oy.model
    coords_xy = product_coordinates(m1, m2)
    coords_yx = product_coordinates(m2, m1)
    n = m1.dim + m2.dim
    rows = []
    for factor, idx in coords_yx:
        src = coords_xy.index((1 - factor, idx))
        rows.append(linalg.unit_vector(n, src))
    swap = CornerMapGerm.from_jacobian(product(m1, m2), product(m2, m1), tuple(rows))
    s_xy = product_orientation(ox, oy).sign
    s_yx = product_orientation(oy, ox).sign
    factor = (-1) ** (m1.dim * m2.dim)
    return SignReport(
        "product_swap",
        (SignCheck("product_swap", _transport(s_xy, swap), factor * s_yx),),
    )


def splitting_independence(f: CornerMapGerm, g: CornerMapGerm) -> bool:
    """The convention must not depend on the chosen splitting."""
    ledger = fibre_product(f, g)
    left = fibre_product_orientation(f, g, 1, 1, 1, ledger, pivot="left")
    right = fibre_product_orientation(f, g, 1, 1, 1, ledger, pivot="right")
    return left == right


_IDENTITY_DISPATCH = {
    "minus_boundary": verify_minus_boundary,
    "boundary_boundaryless_target": verify_boundary_boundaryless_target,
    "boundary_fibration": verify_boundary_fibration,
    "boundary_double_fibration": verify_boundary_double_fibration,
    "swap": verify_swap,
    "associativity": verify_associativity,
    "product_pairing": verify_product_pairing,
    "unit_product": verify_unit_product,
    "identity_pullback": verify_identity_pullback,
    "product_swap": verify_product_swap,
}


def verify_sign_identity(identity: str, *args, **kwargs) -> SignReport:
    """Dispatch to one of the named sign-identity checkers."""
    try:
        checker = _IDENTITY_DISPATCH[identity]
    except KeyError:
        raise HypothesisNotMet(f"unknown identity {identity!r}")
    return checker(*args, **kwargs)
