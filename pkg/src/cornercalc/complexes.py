"""Finite presentations of manifolds with corners by glued model charts.

A complex lists model-corner charts, one per deep point it presents, and
face pairings.  A pairing (chart, face, chart', face') declares that the
two boundary hypersurface germs are part of the same boundary piece of
the presented manifold, identified along an affine map between the face
models (a partial overlap; it needs not respect the deeper corners).
Connected components of the boundary are therefore exactly the classes
of faces under the pairing relation.

``overlaps`` records chart pairs that present overlapping regions of the
same piece without any face identification; these only arise in derived
boundary complexes, where they keep component bookkeeping honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from . import linalg
from .errors import BadFace, ParseError
from .model import ModelCorner, product, product_coordinates

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class AffineFaceMap:
    """Affine identification between two face models, x |-> Mx + t."""

    matrix: linalg.Matrix
    offset: tuple[Fraction, ...]

    @classmethod
    def make(cls, matrix, offset) -> "AffineFaceMap":
        return cls(linalg.matrix(matrix), linalg.vector(offset))

    @classmethod
    def identity(cls, dim: int) -> "AffineFaceMap":
        return cls(linalg.identity(dim), (_ZERO,) * dim)

    @classmethod
    def reversal(cls, dim: int, span=1) -> "AffineFaceMap":
        """x1 |-> span - x1 on the first coordinate, identity elsewhere.

        The usual identification of the two chart views of a compact
        edge, approached from opposite ends.
        """
        rows = [list(linalg.unit_vector(dim, t)) for t in range(dim)]
        if dim:
            rows[0] = [-x for x in rows[0]]
        offset = [Fraction(span)] + [_ZERO] * (dim - 1)
        return cls(tuple(tuple(r) for r in rows), tuple(offset))

    def inverse(self) -> "AffineFaceMap":
        inv = linalg.inverse(self.matrix)
        if inv is None:
            raise ParseError("affine face map is not invertible")
        t = linalg.matvec(inv, self.offset)
        return AffineFaceMap(inv, tuple(-x for x in t))


@dataclass(frozen=True)
class Gluing:
    chart_a: int
    face_a: int
    chart_b: int
    face_b: int
    identification: AffineFaceMap

    def face_pairs(self, model_a: ModelCorner, model_b: ModelCorner):
        """Corner-respecting face correspondences induced by the map.

        Face g of the first face model matches face g' of the second
        when the map carries the hyperplane of g onto the hyperplane of
        g' with a positive factor and no offset.
        """
        fm_a = ModelCorner(model_a.dim - 1, model_a.depth - 1)
        fm_b = ModelCorner(model_b.dim - 1, model_b.depth - 1)
        out = []
        for gp in fm_b.faces:
            row = self.identification.matrix[gp - 1]
            support = [t for t, x in enumerate(row) if x != 0]
            if (
                len(support) == 1
                and support[0] < fm_a.depth
                and row[support[0]] > 0
                and self.identification.offset[gp - 1] == 0
            ):
                out.append((support[0] + 1, gp))
        return tuple(out)


@dataclass(frozen=True)
class CornerComplex:
    charts: tuple[ModelCorner, ...]
    gluings: tuple[Gluing, ...] = ()
    overlaps: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for gl in self.gluings:
            for chart, face in ((gl.chart_a, gl.face_a), (gl.chart_b, gl.face_b)):
                if not 0 <= chart < len(self.charts):
                    raise ParseError(f"chart index {chart} out of range")
                if face not in self.charts[chart].faces:
                    raise BadFace(f"face {face} of chart {chart}")
            dim_a = self.charts[gl.chart_a].dim - 1
            dim_b = self.charts[gl.chart_b].dim - 1
            if dim_a != dim_b:
                raise ParseError("glued faces have different dimensions")
            if len(gl.identification.matrix) != dim_b or (
                dim_b and len(gl.identification.matrix[0]) != dim_a
            ):
                raise ParseError("identification shape mismatch")
            if dim_a and linalg.det(gl.identification.matrix) == 0:
                raise ParseError("identification is degenerate")
        for i, j in self.overlaps:
            if not (0 <= i < len(self.charts) and 0 <= j < len(self.charts)):
                raise ParseError("overlap chart index out of range")

    @property
    def face_nodes(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (ci, face) for ci, m in enumerate(self.charts) for face in m.faces
        )


# -- boundary pieces and the adjacency graph ---------------------------


def face_classes(c: CornerComplex) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Connected components of the boundary, as sorted face classes."""
    nodes = list(c.face_nodes)
    parent = {n: n for n in nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for gl in c.gluings:
        a, b = find((gl.chart_a, gl.face_a)), find((gl.chart_b, gl.face_b))
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[tuple[int, int], list] = {}
    for n in nodes:
        groups.setdefault(find(n), []).append(n)
    return tuple(tuple(sorted(groups[root])) for root in sorted(groups))


@dataclass(frozen=True)
class BoundaryGraph:
    """Faces, their adjacency through deep strata, and component data."""

    nodes: tuple[tuple[int, int], ...]
    edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    components: tuple[tuple[tuple[int, int], ...], ...]
    multiplicities: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]

    def component_of(self, node: tuple[int, int]) -> int:
        for idx, comp in enumerate(self.components):
            if node in comp:
                return idx
        raise KeyError(node)


def boundary_graph(c: CornerComplex) -> BoundaryGraph:
    """Assemble the face graph: intra-chart adjacency plus components.

    The multiplicity record lists, for the deepest point of every chart,
    how many of its local boundary components land in each boundary
    piece; the counts always sum to the chart's depth.
    """
    comps = face_classes(c)
    comp_of = {n: i for i, comp in enumerate(comps) for n in comp}
    edges = []
    mult = []
    for ci, m in enumerate(c.charts):
        for f1, f2 in combinations(m.faces, 2):
            edges.append(((ci, f1), (ci, f2)))
        counts: dict[int, int] = {}
        for f in m.faces:
            k = comp_of[(ci, f)]
            counts[k] = counts.get(k, 0) + 1
        mult.append((ci, tuple(sorted(counts.items()))))
    return BoundaryGraph(
        nodes=c.face_nodes,
        edges=tuple(edges),
        components=comps,
        multiplicities=tuple(mult),
    )


# -- classification -----------------------------------------------------


@dataclass(frozen=True)
class ComplexClass:
    """Outcome of the boundary-structure classification.

    ``with_faces`` holds when every deep point meets as many distinct
    boundary pieces as its depth.  ``embedded_parts`` is the least N for
    which the boundary splits into N groups of pieces, each meeting any
    chart at most once (None when impossible); ``witness`` exhibits one
    such grouping as a partition of piece indices.
    """

    with_faces: bool
    embedded_parts: Optional[int]
    witness: Optional[tuple[tuple[int, ...], ...]]

    @property
    def plain(self) -> bool:
        return True

    @property
    def is_embedded(self) -> bool:
        return self.embedded_parts is not None


def classify(c: CornerComplex) -> ComplexClass:
    comps = face_classes(c)
    comp_of = {n: i for i, comp in enumerate(comps) for n in comp}
    n_comp = len(comps)

    with_faces = True
    conflicts: set[tuple[int, int]] = set()
    self_loop = False
    for ci, m in enumerate(c.charts):
        seen = [comp_of[(ci, f)] for f in m.faces]
        if len(set(seen)) != len(seen):
            with_faces = False
            self_loop = True
        for k1, k2 in combinations(sorted(set(seen)), 2):
            conflicts.add((k1, k2))

    if self_loop:
        return ComplexClass(with_faces=with_faces, embedded_parts=None, witness=None)

    if n_comp == 0:
        return ComplexClass(with_faces=True, embedded_parts=0, witness=())

    adjacency = {k: set() for k in range(n_comp)}
    for k1, k2 in conflicts:
        adjacency[k1].add(k2)
        adjacency[k2].add(k1)

    def colourable(n_parts: int) -> Optional[list[int]]:
        colour = [-1] * n_comp

        def go(k: int) -> bool:
            if k == n_comp:
                return True
            used = {colour[t] for t in adjacency[k] if colour[t] >= 0}
            for col in range(n_parts):
                if col not in used:
                    colour[k] = col
                    if go(k + 1):
                        return True
                    colour[k] = -1
            return False

        return colour if go(0) else None

    for n_parts in range(1, n_comp + 1):
        colour = colourable(n_parts)
        if colour is not None:
            witness = tuple(
                tuple(k for k in range(n_comp) if colour[k] == part)
                for part in range(n_parts)
            )
            return ComplexClass(
                with_faces=with_faces,
                embedded_parts=n_parts,
                witness=tuple(p for p in witness if p),
            )
    raise AssertionError("colouring with one part per piece always succeeds")


# -- boundary and corner complexes --------------------------------------


def boundary_complex(c: CornerComplex) -> CornerComplex:
    """The boundary presented as a complex, one chart per face.

    Pairings descend where an identification respects a deeper corner;
    the remaining information, that two face charts present the same
    boundary piece, is kept as an overlap.
    """
    nodes = list(c.face_nodes)
    index = {n: i for i, n in enumerate(nodes)}
    charts = tuple(
        ModelCorner(c.charts[ci].dim - 1, c.charts[ci].depth - 1) for ci, _ in nodes
    )
    gluings = []
    overlaps = []
    for gl in c.gluings:
        a = index[(gl.chart_a, gl.face_a)]
        b = index[(gl.chart_b, gl.face_b)]
        overlaps.append((a, b))
        model_a = c.charts[gl.chart_a]
        model_b = c.charts[gl.chart_b]
        for g, gp in gl.face_pairs(model_a, model_b):
            # The identification restricts to an affine map between the
            # two corner germs; recompute it by deleting the paired
            # coordinates.
            mat = gl.identification.matrix
            keep_rows = [t for t in range(len(mat)) if t != gp - 1]
            keep_cols = [t for t in range(model_a.dim - 1) if t != g - 1]
            sub = linalg.submatrix(mat, keep_rows, keep_cols)
            off = tuple(gl.identification.offset[t] for t in keep_rows)
            gluings.append(
                Gluing(a, g, b, gp, AffineFaceMap(sub, off))
            )
    return CornerComplex(charts, tuple(gluings), tuple(overlaps))


def component_count(c: CornerComplex) -> int:
    """Connected components of the presented manifold."""
    n = len(c.charts)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for gl in c.gluings:
        union(gl.chart_a, gl.chart_b)
    for i, j in c.overlaps:
        union(i, j)
    return len({find(i) for i in range(n)})


@dataclass(frozen=True)
class CornerPieces:
    """Deep strata of one depth with unordered labels, up to pairing."""

    depth: int
    model_by_piece: tuple[ModelCorner, ...]
    labels: tuple[tuple[tuple[int, frozenset], ...], ...]

    @property
    def count(self) -> int:
        return len(self.labels)


def corners_complex(c: CornerComplex, k: int) -> CornerPieces:
    """Depth-k corner pieces of the complex.

    A piece is a chart with an unordered k-set of its faces; two pieces
    merge when a pairing identifies their labels corner for corner.
    """
    pieces: list[tuple[int, frozenset]] = []
    for ci, m in enumerate(c.charts):
        for label in combinations(m.faces, k):
            pieces.append((ci, frozenset(label)))
    index = {p: t for t, p in enumerate(pieces)}
    parent = list(range(len(pieces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    if k >= 1:
        for gl in c.gluings:
            model_a = c.charts[gl.chart_a]
            model_b = c.charts[gl.chart_b]
            pair_map = dict(gl.face_pairs(model_a, model_b))

            def chart_face_a(g: int) -> int:
                return g if g < gl.face_a else g + 1

            def chart_face_b(g: int) -> int:
                return g if g < gl.face_b else g + 1

            for (ci, label) in pieces:
                if ci != gl.chart_a or gl.face_a not in label:
                    continue
                rest = sorted(label - {gl.face_a})
                image = set()
                ok = True
                for f in rest:
                    g = f if f < gl.face_a else f - 1
                    if g not in pair_map:
                        ok = False
                        break
                    image.add(chart_face_b(pair_map[g]))
                if ok:
                    other = (gl.chart_b, frozenset({gl.face_b}) | frozenset(image))
                    if other in index:
                        union(index[(ci, label)], index[other])
    groups: dict[int, list] = {}
    for t in range(len(pieces)):
        groups.setdefault(find(t), []).append(pieces[t])
    labels = tuple(
        tuple(sorted(groups[r], key=lambda p: (p[0], sorted(p[1]))))
        for r in sorted(groups)
    )
    models = tuple(
        ModelCorner(c.charts[group[0][0]].dim - k, c.charts[group[0][0]].depth - k)
        for group in labels
    )
    return CornerPieces(depth=k, model_by_piece=models, labels=labels)


def product_complex(c1: CornerComplex, c2: CornerComplex) -> CornerComplex:
    """Chartwise product, with pairings extended by the identity factor."""

    def flat(i1: int, i2: int) -> int:
        return i1 * len(c2.charts) + i2

    charts = tuple(
        product(m1, m2) for m1 in c1.charts for m2 in c2.charts
    )

    def lifted_gluing(gl: Gluing, other: ModelCorner, other_idx: int, first: bool):
        if first:
            ma, mb = c1.charts[gl.chart_a], c1.charts[gl.chart_b]
            pa, pb = product(ma, other), product(mb, other)
            ca, cb = flat(gl.chart_a, other_idx), flat(gl.chart_b, other_idx)
            face_a, face_b = gl.face_a, gl.face_b
            factor = 0
        else:
            ma, mb = c2.charts[gl.chart_a], c2.charts[gl.chart_b]
            pa, pb = product(other, ma), product(other, mb)
            ca, cb = flat(other_idx, gl.chart_a), flat(other_idx, gl.chart_b)
            face_a = other.depth + gl.face_a
            face_b = other.depth + gl.face_b
            factor = 1

        def face_coords(prod_a: ModelCorner, prod_b: ModelCorner, m_from, m_to):
            # Coordinates of the face model of a product chart, as the
            # product coordinates with the glued face deleted.
            ca_coords = [
                t for t in product_coordinates(*m_from) if t != (factor, gl.face_a)
            ]
            cb_coords = [
                t for t in product_coordinates(*m_to) if t != (factor, gl.face_b)
            ]
            return ca_coords, cb_coords

        m_from = (ma, other) if first else (other, ma)
        m_to = (mb, other) if first else (other, mb)
        src_coords, dst_coords = face_coords(pa, pb, m_from, m_to)
        src_index = {t: s for s, t in enumerate(src_coords)}
        rows = []
        off = []
        for tfac, tidx in dst_coords:
            row = [_ZERO] * len(src_coords)
            if tfac != factor:
                row[src_index[(tfac, tidx)]] = _ONE
                off.append(_ZERO)
            else:
                g_to = tidx if tidx < gl.face_b else tidx - 1
                for g_from in range(len(gl.identification.matrix[g_to - 1])):
                    coeff = gl.identification.matrix[g_to - 1][g_from]
                    if coeff != 0:
                        idx = g_from + 1 if g_from + 1 < gl.face_a else g_from + 2
                        row[src_index[(factor, idx)]] = coeff
                off.append(gl.identification.offset[g_to - 1])
            rows.append(tuple(row))
        return Gluing(ca, face_a, cb, face_b, AffineFaceMap(tuple(rows), tuple(off)))

    gluings = []
    for gl in c1.gluings:
        for i2, m2 in enumerate(c2.charts):
            gluings.append(lifted_gluing(gl, m2, i2, True))
    for gl in c2.gluings:
        for i1, m1 in enumerate(c1.charts):
            gluings.append(lifted_gluing(gl, m1, i1, False))
    overlaps = [
        (flat(i, t), flat(j, t)) for i, j in c1.overlaps for t in range(len(c2.charts))
    ]
    overlaps += [
        (flat(t, i), flat(t, j)) for i, j in c2.overlaps for t in range(len(c1.charts))
    ]
    return CornerComplex(charts, tuple(gluings), tuple(overlaps))


# -- corpus --------------------------------------------------------------


def teardrop() -> CornerComplex:
    """One corner chart whose two faces run into the two ends of an edge."""
    corner = ModelCorner(2, 2)
    edge = ModelCorner(2, 1)
    return CornerComplex(
        charts=(corner, edge),
        gluings=(
            Gluing(0, 1, 1, 1, AffineFaceMap.identity(1)),
            Gluing(0, 2, 1, 1, AffineFaceMap.reversal(1)),
        ),
    )


def square() -> CornerComplex:
    """Four corner charts pasted in a cycle: the compact square."""
    corner = ModelCorner(2, 2)
    gluings = tuple(
        Gluing(i, 2, (i + 1) % 4, 1, AffineFaceMap.reversal(1)) for i in range(4)
    )
    return CornerComplex(charts=(corner,) * 4, gluings=gluings)


def half_space(dim: int = 2) -> CornerComplex:
    return CornerComplex(charts=(ModelCorner(dim, 1),))


def boundaryless(dim: int = 2) -> CornerComplex:
    return CornerComplex(charts=(ModelCorner(dim, 0),))


def quadrant(depth: int = 2, dim: int = 2) -> CornerComplex:
    """A single model chart, boundary faces left free."""
    return CornerComplex(charts=(ModelCorner(dim, depth),))
