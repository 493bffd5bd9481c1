"""Transversality and the explicit germ-level fibre product.

Given germs f: X -> Z and g: Y -> Z with X = (m, a), Y = (n, b) and
Z = (p, c), the fibre product W lives on the kernel of

    (u, v) |-> J_f u - J_g v

inside R^m + R^n.  Its boundary faces come in three kinds:

  * an untransferred face of X ("x_face"),
  * an untransferred face of Y ("y_face"),
  * a linked class of target faces transferred by both maps
    ("shared_class"), which contributes one face when the class links
    as a tree and none when it closes a cycle (a cycle forces the
    involved coordinates to vanish identically on W).

The registry of faces is ordered x_faces ascending, then y_faces
ascending, then classes by smallest member, and the kernel basis is
chosen dual to the registry's defining functionals, completed by the
leftmost-pivot rule.  This makes every construction reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from . import linalg
from .errors import (
    HypothesisNotMet,
    InternalInvariantViolation,
    ModelMismatch,
    NoMediator,
    NotTransverse,
)
from .germ import (
    CornerMapGerm,
    compose,
    corner_label,
    corner_map,
    face_inclusion_germ,
    is_b_submersive,
    is_isomorphism,
    is_submersion,
)
from .model import ModelCorner

_ZERO = Fraction(0)
_ONE = Fraction(1)

TREE = "tree"
CYCLE = "cycle"

X_FACE = "x_face"
Y_FACE = "y_face"
SHARED_CLASS = "shared_class"


@dataclass(frozen=True)
class LinkedClass:
    """A connected component of the shared-transfer graph.

    Members are target faces transferred by both maps; two members are
    linked when they land on the same source face of either factor.  The
    component is a ``tree`` when the faces it meets number one more than
    its members, and a ``cycle`` when they number exactly its members.

    A class is ``grounded`` when a target face transferred by only one
    of the maps lands on a source face the class also meets.  The flat
    pullback of the other map then forces that coordinate, and with it
    every coordinate the class links to it, to vanish identically on
    the fibre product, so a grounded class contributes no boundary face.
    Transversality forbids everything past one grounding per tree and
    any grounding of a cycle (the constrained rows would be dependent).
    """

    members: frozenset
    kind: str
    grounded: bool = False

    @property
    def representative(self) -> int:
        return min(self.members)

    @property
    def contributes_face(self) -> bool:
        return self.kind == TREE and not self.grounded


@dataclass(frozen=True)
class TransversalityInterface:
    """Bookkeeping shared by the two maps over the target's faces."""

    p_f: frozenset
    p_g: frozenset
    pi_f: tuple[tuple[int, int], ...]
    pi_g: tuple[tuple[int, int], ...]
    conditions: tuple[tuple[str, bool], ...]
    classes: tuple[LinkedClass, ...]
    representatives: frozenset

    @property
    def pi_f_map(self) -> dict[int, int]:
        return dict(self.pi_f)

    @property
    def pi_g_map(self) -> dict[int, int]:
        return dict(self.pi_g)

    @property
    def conditions_map(self) -> dict[str, bool]:
        return dict(self.conditions)


@dataclass(frozen=True)
class RegistryEntry:
    """One boundary face of the fibre product."""

    kind: str
    face: Optional[int] = None
    linked: Optional[LinkedClass] = None

    def describe(self) -> str:
        if self.kind == X_FACE:
            return f"x_face {self.face}"
        if self.kind == Y_FACE:
            return f"y_face {self.face}"
        assert self.linked is not None
        return f"shared_class {sorted(self.linked.members)}"


@dataclass(frozen=True)
class FibreLedger:
    """The assembled fibre product of a transverse pair."""

    f: CornerMapGerm
    g: CornerMapGerm
    w_model: ModelCorner
    registry: tuple[RegistryEntry, ...]
    pi_x: CornerMapGerm
    pi_y: CornerMapGerm
    interface: TransversalityInterface


def _difference_matrix(f: CornerMapGerm, g: CornerMapGerm) -> linalg.Matrix:
    """The p x (m+n) matrix of (u, v) |-> J_f u - J_g v."""
    return tuple(
        rf + tuple(-x for x in rg) for rf, rg in zip(f.jacobian, g.jacobian)
    )


def _require_same_target(f: CornerMapGerm, g: CornerMapGerm):
    if f.target != g.target:
        raise ModelMismatch(f"targets differ: {f.target} vs {g.target}")


def is_transverse(f: CornerMapGerm, g: CornerMapGerm) -> bool:
    """Joint surjectivity onto the target and onto its deepest stratum."""
    _require_same_target(f, g)
    p, c = f.target.dim, f.target.depth
    m, a = f.source.dim, f.source.depth
    n, b = g.source.dim, g.source.depth
    if linalg.rank(_difference_matrix(f, g)) != p:
        return False
    interior = linalg.hstack(
        linalg.submatrix(f.jacobian, range(c, p), range(a, m)),
        linalg.submatrix(g.jacobian, range(c, p), range(b, n)),
    )
    return linalg.rank(interior) == p - c


def interface_data(f: CornerMapGerm, g: CornerMapGerm) -> TransversalityInterface:
    """Transfer bookkeeping of a transverse pair, with consistency checks.

    Three of the four recorded conditions are consequences of
    transversality (the constrained rows of the difference matrix would
    otherwise be dependent), so their failure raises
    InternalInvariantViolation.  ``private_faces_separated`` is the
    exception: a privately transferred face may collide with a shared
    class, grounding it; the verdict is recorded honestly and the
    grounded class drops out of the boundary registry.
    """
    if not is_transverse(f, g):
        raise NotTransverse("interface data needs a transverse pair")
    p_f, p_g = f.transfer_set, g.transfer_set
    pi_f, pi_g = f.transfer_map, g.transfer_map
    shared = p_f & p_g
    only_f = p_f - p_g
    only_g = p_g - p_f
    grounded_f = {pi_f[j] for j in only_f}
    grounded_g = {pi_g[j] for j in only_g}

    # Union-find over the shared faces: linked when either map sends two
    # of them to the same source face.
    parent = {j: j for j in shared}

    def find(j: int) -> int:
        while parent[j] != j:
            parent[j] = parent[parent[j]]
            j = parent[j]
        return j

    def union(i: int, j: int):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for pi in (pi_f, pi_g):
        by_target: dict[int, int] = {}
        for j in sorted(shared):
            t = pi[j]
            if t in by_target:
                union(by_target[t], j)
            else:
                by_target[t] = j
    groups: dict[int, set[int]] = {}
    for j in shared:
        groups.setdefault(find(j), set()).add(j)

    classes = []
    sizes_ok = True
    grounded_cycle = False
    for root in sorted(groups):
        members = frozenset(groups[root])
        nf = len({pi_f[j] for j in members})
        ng = len({pi_g[j] for j in members})
        if nf + ng == len(members) + 1:
            kind = TREE
        elif nf + ng == len(members):
            kind = CYCLE
        else:
            sizes_ok = False
            kind = CYCLE if nf + ng <= len(members) else TREE
        groundings = len({pi_f[j] for j in members} & grounded_f)
        groundings += len({pi_g[j] for j in members} & grounded_g)
        grounded = groundings > 0
        if grounded and (kind == CYCLE or groundings > 1):
            grounded_cycle = True
        classes.append(LinkedClass(members, kind, grounded))

    cond = (
        (
            "private_faces_separated",
            not any(cl.grounded for cl in classes),
        ),
        (
            "private_transfer_injective",
            len(grounded_f) == len(only_f) and len(grounded_g) == len(only_g),
        ),
        ("class_sizes", sizes_ok),
        ("faces_covered", p_f | p_g == frozenset(f.target.faces)),
    )
    hard_failures = [
        name for name, ok in cond[1:] if not ok
    ]
    if grounded_cycle:
        hard_failures.append("grounded cycle or doubly grounded class")
    if hard_failures:
        raise InternalInvariantViolation(
            f"transverse pair violates {hard_failures}; this is a bug"
        )
    reps = frozenset(
        cl.representative for cl in classes if cl.contributes_face
    )
    return TransversalityInterface(
        p_f=p_f,
        p_g=p_g,
        pi_f=f.transfers,
        pi_g=g.transfers,
        conditions=cond,
        classes=tuple(classes),
        representatives=reps,
    )


def is_strongly_transverse(f: CornerMapGerm, g: CornerMapGerm) -> bool:
    """Transverse, and matched stratum labels never sit at equal depth sum.

    Enumerates all pairs of stratum labels (A, B) whose corner images
    agree, requiring |A| + |B| > |image| except for the empty triple.
    """
    _require_same_target(f, g)
    if not is_transverse(f, g):
        return False
    a_faces = list(f.source.faces)
    b_faces = list(g.source.faces)
    labels_b: dict[frozenset, list[frozenset]] = {}
    for kb in range(len(b_faces) + 1):
        for bb in combinations(b_faces, kb):
            label = corner_label(g, frozenset(bb))
            labels_b.setdefault(label, []).append(frozenset(bb))
    for ka in range(len(a_faces) + 1):
        for aa in combinations(a_faces, ka):
            a_set = frozenset(aa)
            label = corner_label(f, a_set)
            for b_set in labels_b.get(label, ()):
                if len(a_set) + len(b_set) == len(label) and (a_set or b_set):
                    return False
    return True


def has_cycle_class(f: CornerMapGerm, g: CornerMapGerm) -> bool:
    """Equivalent reformulation of strong transversality failure."""
    data = interface_data(f, g)
    return any(cl.kind == CYCLE for cl in data.classes)


def _registry(
    f: CornerMapGerm, g: CornerMapGerm, data: TransversalityInterface
) -> tuple[RegistryEntry, ...]:
    pi_f, pi_g = data.pi_f_map, data.pi_g_map
    x_used = {pi_f[j] for j in data.p_f}
    y_used = {pi_g[j] for j in data.p_g}
    entries = [
        RegistryEntry(X_FACE, face=i) for i in f.source.faces if i not in x_used
    ]
    entries += [
        RegistryEntry(Y_FACE, face=i) for i in g.source.faces if i not in y_used
    ]
    entries += [
        RegistryEntry(SHARED_CLASS, linked=cl)
        for cl in sorted(
            (cl for cl in data.classes if cl.contributes_face),
            key=lambda cl: cl.representative,
        )
    ]
    return tuple(entries)


def _functional(entry: RegistryEntry, f: CornerMapGerm, g: CornerMapGerm, pi_f) -> tuple:
    """Coordinate functional on R^m + R^n cutting out one registry face."""
    m, n = f.source.dim, g.source.dim
    if entry.kind == X_FACE:
        return linalg.unit_vector(m + n, entry.face - 1)
    if entry.kind == Y_FACE:
        return linalg.unit_vector(m + n, m + entry.face - 1)
    assert entry.linked is not None
    return linalg.unit_vector(m + n, pi_f[entry.linked.representative] - 1)


def _transfer_rows(
    registry: tuple[RegistryEntry, ...],
    data: TransversalityInterface,
    side: str,
) -> dict[int, int]:
    """Map each transferring source face of one factor to its W face."""
    out: dict[int, int] = {}
    pi = data.pi_f_map if side == "x" else data.pi_g_map
    for pos, entry in enumerate(registry, start=1):
        if side == "x" and entry.kind == X_FACE:
            out[entry.face] = pos
        elif side == "y" and entry.kind == Y_FACE:
            out[entry.face] = pos
        elif entry.kind == SHARED_CLASS:
            for j in entry.linked.members:
                out[pi[j]] = pos
    return out


def fibre_product(f: CornerMapGerm, g: CornerMapGerm) -> FibreLedger:
    """Construct the fibre product germ data of a transverse pair.

    Builds the registry, chooses the kernel basis dual to the registry
    functionals, reads off both projection germs, and asserts the
    postconditions (registry size, projection identity).
    """
    if not is_transverse(f, g):
        raise NotTransverse("fibre product needs a transverse pair")
    data = interface_data(f, g)
    m, a = f.source.dim, f.source.depth
    n, b = g.source.dim, g.source.depth
    p, c = f.target.dim, f.target.depth

    registry = _registry(f, g, data)
    d = len(registry)
    if d != a + b - c:
        raise InternalInvariantViolation(
            f"registry size {d} != {a} + {b} - {c}; this is a bug"
        )
    w_model = ModelCorner(m + n - p, d)

    diff = _difference_matrix(f, g)
    kernel = linalg.kernel_basis(diff, m + n)
    if len(kernel) != w_model.dim:
        raise InternalInvariantViolation("kernel dimension mismatch; this is a bug")

    # Re-basis the kernel so the first d coordinates are the registry
    # functionals and the rest are completed by the leftmost-pivot rule.
    pi_f = data.pi_f_map
    functionals = [_functional(e, f, g, pi_f) for e in registry]
    w_dim = w_model.dim
    phi = tuple(
        tuple(sum(fn[t] * vec[t] for t in range(m + n)) for vec in kernel)
        for fn in functionals
    )
    pivots = linalg.rref(phi, w_dim)[1] if d else ()
    if len(pivots) != d:
        raise InternalInvariantViolation("registry functionals are dependent; bug")
    extension = tuple(
        linalg.unit_vector(w_dim, t) for t in range(w_dim) if t not in pivots
    )
    change = linalg.inverse(phi + extension)
    if change is None:
        raise InternalInvariantViolation("basis completion failed; this is a bug")
    basis_matrix = linalg.matmul(
        linalg.transpose(tuple(kernel), m + n) if kernel else linalg.zeros(m + n, 0),
        change,
        (m + n, w_dim, w_dim),
    )

    jac_x = tuple(basis_matrix[t] for t in range(m))
    jac_y = tuple(basis_matrix[t] for t in range(m, m + n))
    x_faces = _transfer_rows(registry, data, "x")
    y_faces = _transfer_rows(registry, data, "y")
    pi_x = CornerMapGerm.make(w_model, f.source, x_faces.keys(), x_faces, jac_x)
    pi_y = CornerMapGerm.make(w_model, g.source, y_faces.keys(), y_faces, jac_y)

    if compose(f, pi_x) != compose(g, pi_y):
        raise InternalInvariantViolation("projections do not commute; this is a bug")
    return FibreLedger(
        f=f,
        g=g,
        w_model=w_model,
        registry=registry,
        pi_x=pi_x,
        pi_y=pi_y,
        interface=data,
    )


def check_universal_property(
    f: CornerMapGerm,
    g: CornerMapGerm,
    ledger: FibreLedger,
    h1: CornerMapGerm,
    h2: CornerMapGerm,
) -> CornerMapGerm:
    """Return the unique mediating germ through the fibre product.

    ``h1`` and ``h2`` share a source and satisfy f o h1 = g o h2; the
    result h satisfies pi_x o h = h1 and pi_y o h = h2 and is unique
    because the stacked projections form a basis of the kernel.
    """
    if h1.source != h2.source:
        raise NoMediator("cone legs have different sources")
    if h1.target != f.source or h2.target != g.source:
        raise NoMediator("cone legs do not match the factors")
    if compose(f, h1) != compose(g, h2):
        raise NoMediator("cone does not commute with the pair")
    m, n = f.source.dim, g.source.dim
    stacked = h1.jacobian + h2.jacobian
    basis = ledger.pi_x.jacobian + ledger.pi_y.jacobian
    sol = linalg.solve_unique(basis, stacked, ledger.w_model.dim) if m + n else \
        linalg.zeros(0, h1.source.dim)
    if sol is None:
        raise NoMediator("cone legs leave the kernel; premise violated")
    try:
        h = CornerMapGerm.from_jacobian(h1.source, ledger.w_model, sol)
    except Exception as exc:  # invalid rows mean no smooth mediator
        raise NoMediator(f"mediator Jacobian violates germ invariants: {exc}")
    if compose(ledger.pi_x, h) != h1 or compose(ledger.pi_y, h) != h2:
        raise NoMediator("mediator fails to reproduce the cone")
    return h


# -- corner identity ---------------------------------------------------


@dataclass(frozen=True)
class MatchedTriple:
    """A pair of stratum labels with the same corner image."""

    label_x: frozenset
    label_y: frozenset
    label_z: frozenset

    @property
    def excess(self) -> int:
        return len(self.label_x) + len(self.label_y) - len(self.label_z)


@dataclass(frozen=True)
class CornerIdentityReport:
    """Comparison of the corner strata of W with the matched triples."""

    strongly_transverse: bool
    lhs_counts: tuple[tuple[int, int], ...]
    rhs_triples: tuple[MatchedTriple, ...]
    restricted_all_transverse: bool
    bijection: Optional[tuple[tuple[tuple[int, ...], MatchedTriple], ...]]
    counts_agree: bool
    models_agree: bool
    witness: Optional[MatchedTriple]

    @property
    def identity_holds(self) -> bool:
        return self.counts_agree and self.models_agree and self.restricted_all_transverse


def matched_triples(f: CornerMapGerm, g: CornerMapGerm) -> tuple[MatchedTriple, ...]:
    """All pairs of stratum labels with equal corner images, in lex order."""
    _require_same_target(f, g)
    by_label: dict[frozenset, list[frozenset]] = {}
    for kb in range(g.source.depth + 1):
        for bb in combinations(g.source.faces, kb):
            by_label.setdefault(corner_label(g, frozenset(bb)), []).append(frozenset(bb))
    out = []
    for ka in range(f.source.depth + 1):
        for aa in combinations(f.source.faces, ka):
            a_set = frozenset(aa)
            label = corner_label(f, a_set)
            for b_set in by_label.get(label, ()):
                out.append(MatchedTriple(a_set, b_set, label))
    return tuple(out)


def _entry_contribution(entry: RegistryEntry, data: TransversalityInterface):
    pi_f, pi_g = data.pi_f_map, data.pi_g_map
    if entry.kind == X_FACE:
        return frozenset({entry.face}), frozenset(), frozenset()
    if entry.kind == Y_FACE:
        return frozenset(), frozenset({entry.face}), frozenset()
    members = entry.linked.members
    return (
        frozenset(pi_f[j] for j in members),
        frozenset(pi_g[j] for j in members),
        members,
    )


def corner_identity_check(f: CornerMapGerm, g: CornerMapGerm) -> CornerIdentityReport:
    """Verify that corner strata of W match the matched-triple census.

    For a strongly transverse pair this produces the explicit bijection
    (subsets of registry faces to matched triples) and checks dimension
    and depth of both sides by rebuilding each restricted fibre product.
    Otherwise it reports the excess-zero witness that breaks the count.
    """
    ledger = fibre_product(f, g)
    data = ledger.interface
    triples = matched_triples(f, g)
    restricted_ok = True
    models_ok = True
    for t in triples:
        rf = corner_map(f, t.label_x).restricted
        rg = corner_map(g, t.label_y).restricted
        if not is_transverse(rf, rg):
            restricted_ok = False
            continue
        sub = fibre_product(rf, rg)
        want = ModelCorner(
            ledger.w_model.dim - t.excess, ledger.w_model.depth - t.excess
        )
        if sub.w_model != want:
            models_ok = False

    d = ledger.w_model.depth
    lhs_counts = tuple(
        (i, len(list(combinations(range(1, d + 1), i)))) for i in range(d + 1)
    )
    strong = not any(cl.kind == CYCLE for cl in data.classes)
    if not strong:
        witness = next(
            t
            for t in triples
            if t.excess == 0 and (t.label_x or t.label_y or t.label_z)
        )
        rhs_zero = sum(1 for t in triples if t.excess == 0)
        counts_agree = rhs_zero == 1
        return CornerIdentityReport(
            strongly_transverse=False,
            lhs_counts=lhs_counts,
            rhs_triples=triples,
            restricted_all_transverse=restricted_ok,
            bijection=None,
            counts_agree=counts_agree,
            models_agree=models_ok,
            witness=witness,
        )

    contributions = [_entry_contribution(e, data) for e in ledger.registry]
    assignment = []
    image = set()
    injective = True
    consistent = True
    for size in range(d + 1):
        for subset in combinations(range(d), size):
            ax: frozenset = frozenset()
            by: frozenset = frozenset()
            lz: frozenset = frozenset()
            for t in subset:
                ca, cb, cl = contributions[t]
                ax, by, lz = ax | ca, by | cb, lz | cl
            triple = MatchedTriple(ax, by, lz)
            if corner_label(f, ax) != lz or corner_label(g, by) != lz:
                consistent = False
            if triple.excess != size:
                consistent = False
            key = (ax, by)
            if key in image:
                injective = False
            image.add(key)
            assignment.append((tuple(t + 1 for t in subset), triple))
    surjective = image == {(t.label_x, t.label_y) for t in triples}
    counts_agree = injective and surjective and consistent
    return CornerIdentityReport(
        strongly_transverse=True,
        lhs_counts=lhs_counts,
        rhs_triples=triples,
        restricted_all_transverse=restricted_ok,
        bijection=tuple(assignment),
        counts_agree=counts_agree,
        models_agree=models_ok,
        witness=None,
    )


# -- boundary formulas -------------------------------------------------


def factor_through_face(h: CornerMapGerm, pos: int) -> CornerMapGerm:
    """Given h landing inside face ``pos`` of its target, peel that face off.

    Returns h' with include_face o h' = h; requires the pos row of h to
    be flat.
    """
    tgt = h.target
    if pos not in tgt.faces:
        raise HypothesisNotMet(f"face {pos} of {tgt}")
    if pos in h.transfer_set or any(x != 0 for x in h.jacobian[pos - 1]):
        raise HypothesisNotMet(f"germ does not land inside face {pos}")
    sub = ModelCorner(tgt.dim - 1, tgt.depth - 1)
    rows = tuple(h.jacobian[t] for t in range(tgt.dim) if t != pos - 1)
    pairs = tuple(
        sorted((j if j < pos else j - 1, i) for j, i in h.transfers)
    )
    return CornerMapGerm(h.source, sub, pairs, rows)


@dataclass(frozen=True)
class BoundaryPiece:
    """One term of a boundary decomposition, matched to a W face.

    ``iso`` maps the term's fibre product onto the face model of W at
    registry position ``position``; for the decomposition to hold it
    must be a germ isomorphism.  A piece that could not even be built
    carries the failure text instead.  ``side`` records which factor the
    term restricts ("x", "y", or "pair") and ``faces`` the face indices
    involved (one for a single restriction, (i, j, q) for a pair over
    target face q).
    """

    description: str
    position: int
    side: str = ""
    faces: tuple[int, ...] = ()
    ledger: Optional[FibreLedger] = None
    iso: Optional[CornerMapGerm] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.iso is not None and is_isomorphism(self.iso)


@dataclass(frozen=True)
class BoundaryFormulaReport:
    formula: str
    hypothesis: str
    pieces: tuple[BoundaryPiece, ...]
    covered_positions: tuple[int, ...]
    registry_size: int

    @property
    def holds(self) -> bool:
        return (
            all(piece.ok for piece in self.pieces)
            and sorted(self.covered_positions) == list(range(1, self.registry_size + 1))
            and len(set(self.covered_positions)) == len(self.covered_positions)
        )


def _face_lift(f: CornerMapGerm, i: int) -> tuple[int, CornerMapGerm]:
    """Lift of f to a transferred source face i: (target face j, germ)."""
    receives = {src: j for j, src in f.transfers}
    j = receives[i]
    return j, corner_map(f, frozenset({i})).restricted


def _piece(
    ledger: FibreLedger,
    sub: FibreLedger,
    h1: CornerMapGerm,
    h2: CornerMapGerm,
    pos: int,
    description: str,
    side: str,
    faces: tuple[int, ...],
) -> BoundaryPiece:
    h = check_universal_property(ledger.f, ledger.g, ledger, h1, h2)
    iso = factor_through_face(h, pos)
    return BoundaryPiece(
        description=description, position=pos, side=side, faces=faces,
        ledger=sub, iso=iso,
    )


def submersion_boundary_identity(f: CornerMapGerm) -> BoundaryFormulaReport:
    """Check that the transferred boundary of a submersion is a pullback.

    For every target face j, the fibre product of f with the face
    inclusion must be isomorphic to the face model of the source at the
    receiving face, compatibly with the projections.
    """
    if not is_submersion(f):
        raise HypothesisNotMet("needs a submersion")
    pieces = []
    pi = f.transfer_map
    for j in sorted(f.target.faces):
        inc = face_inclusion_germ(f.target, j)
        sub = fibre_product(f, inc)
        i = pi[j]
        _, lift = _face_lift(f, i)
        h1 = face_inclusion_germ(f.source, i)
        h = check_universal_property(f, inc, sub, h1, lift)
        pieces.append(
            BoundaryPiece(
                description=f"target face {j} vs source face {i}",
                ledger=sub,
                position=0,
                iso=h,
            )
        )
    return BoundaryFormulaReport(
        formula="submersion_minus_boundary",
        hypothesis="submersion",
        pieces=tuple(pieces),
        covered_positions=(),
        registry_size=0,
    )


def _positions_by_kind(ledger: FibreLedger):
    x_pos = {}
    y_pos = {}
    class_pos = {}
    for pos, entry in enumerate(ledger.registry, start=1):
        if entry.kind == X_FACE:
            x_pos[entry.face] = pos
        elif entry.kind == Y_FACE:
            y_pos[entry.face] = pos
        else:
            class_pos[entry.linked.members] = pos
    return x_pos, y_pos, class_pos


def boundary_of_fibre_product(
    f: CornerMapGerm, g: CornerMapGerm, formula: str
) -> BoundaryFormulaReport:
    """Verify one of the three boundary decompositions of W = X x_Z Y.

    ``formula`` selects the hypothesis:

      * "boundaryless_target": dZ empty; the boundary splits into the
        boundary of X against Y and X against the boundary of Y.
      * "left_fibration": f carries every target face injectively; the
        untransferred faces of X pair with Y, and each face of Y pairs
        with X through g composed with the inclusion.
      * "double_fibration": both maps carry every target face
        injectively; three groups of terms, the last matching the two
        boundary lifts over each face of Z.

    Every term is rebuilt as a germ fibre product and matched to its
    registry face through the mediating germ, which must peel off the
    face as an isomorphism.
    """
    ledger = fibre_product(f, g)
    x_pos, y_pos, class_pos = _positions_by_kind(ledger)
    pieces: list[BoundaryPiece] = []
    covered: list[int] = []
    c = f.target.depth

    def x_face_piece(i: int, pos: int):
        description = f"(dX at {i}) x Y"
        covered.append(pos)
        try:
            inc = face_inclusion_germ(f.source, i)
            fi = compose(f, inc)
            sub = fibre_product(fi, g)
            h1 = compose(inc, sub.pi_x)
            h2 = sub.pi_y
            pieces.append(_piece(ledger, sub, h1, h2, pos, description, "x", (i,)))
        except (NotTransverse, NoMediator, HypothesisNotMet) as exc:
            pieces.append(
                BoundaryPiece(
                    description=description, position=pos, side="x", faces=(i,),
                    error=str(exc),
                )
            )

    def y_face_piece(j: int, pos: int):
        description = f"X x (dY at {j})"
        covered.append(pos)
        try:
            inc = face_inclusion_germ(g.source, j)
            gj = compose(g, inc)
            sub = fibre_product(f, gj)
            h1 = sub.pi_x
            h2 = compose(inc, sub.pi_y)
            pieces.append(_piece(ledger, sub, h1, h2, pos, description, "y", (j,)))
        except (NotTransverse, NoMediator, HypothesisNotMet) as exc:
            pieces.append(
                BoundaryPiece(
                    description=description, position=pos, side="y", faces=(j,),
                    error=str(exc),
                )
            )

    if formula == "boundaryless_target":
        if c != 0:
            raise HypothesisNotMet("target must have no boundary faces")
        for i in sorted(x_pos):
            x_face_piece(i, x_pos[i])
        for j in sorted(y_pos):
            y_face_piece(j, y_pos[j])
        hypothesis = "boundaryless target"
    elif formula == "left_fibration":
        if not is_b_submersive(f):
            raise HypothesisNotMet("f must transfer all faces injectively")
        for i in sorted(x_pos):
            x_face_piece(i, x_pos[i])
        pi_g = g.transfer_map
        for j in sorted(g.source.faces):
            if j in y_pos:
                y_face_piece(j, y_pos[j])
            else:
                members = next(
                    ms for ms in class_pos if any(pi_g[t] == j for t in ms)
                )
                y_face_piece(j, class_pos[members])
        hypothesis = "f submersion" if is_submersion(f) else "f b-submersive"
    elif formula == "double_fibration":
        if not (is_b_submersive(f) and is_b_submersive(g)):
            raise HypothesisNotMet("both maps must transfer all faces injectively")
        for i in sorted(x_pos):
            x_face_piece(i, x_pos[i])
        for j in sorted(y_pos):
            y_face_piece(j, y_pos[j])
        for q in range(1, c + 1):
            i = f.transfer_map[q]
            j = g.transfer_map[q]
            pos = class_pos[frozenset({q})]
            description = f"(d-X at {i}) x_dZ (d-Y at {j})"
            covered.append(pos)
            try:
                _, f_lift = _face_lift(f, i)
                _, g_lift = _face_lift(g, j)
                sub = fibre_product(f_lift, g_lift)
                h1 = compose(face_inclusion_germ(f.source, i), sub.pi_x)
                h2 = compose(face_inclusion_germ(g.source, j), sub.pi_y)
                pieces.append(
                    _piece(ledger, sub, h1, h2, pos, description, "pair", (i, j, q))
                )
            except (NotTransverse, NoMediator, HypothesisNotMet) as exc:
                pieces.append(
                    BoundaryPiece(
                        description=description, position=pos, side="pair",
                        faces=(i, j, q), error=str(exc),
                    )
                )
        hypothesis = (
            "both submersions"
            if is_submersion(f) and is_submersion(g)
            else "both b-submersive"
        )
    else:
        raise HypothesisNotMet(f"unknown formula {formula!r}")

    return BoundaryFormulaReport(
        formula=formula,
        hypothesis=hypothesis,
        pieces=tuple(pieces),
        covered_positions=tuple(covered),
        registry_size=len(ledger.registry),
    )


def applicable_boundary_formulas(f: CornerMapGerm, g: CornerMapGerm) -> tuple[str, ...]:
    out = []
    if f.target.depth == 0:
        out.append("boundaryless_target")
    if is_b_submersive(f):
        out.append("left_fibration")
    if is_b_submersive(f) and is_b_submersive(g):
        out.append("double_fibration")
    return tuple(out)
