import pytest

from cornercalc.complexes import (
    AffineFaceMap,
    CornerComplex,
    Gluing,
    boundaryless,
    boundary_complex,
    boundary_graph,
    classify,
    component_count,
    corners_complex,
    face_classes,
    half_space,
    product_complex,
    quadrant,
    square,
    teardrop,
)
from cornercalc.errors import ParseError
from cornercalc.model import ModelCorner, corners_count


def test_validation():
    with pytest.raises(ParseError):
        CornerComplex(
            charts=(ModelCorner(2, 2), ModelCorner(3, 1)),
            gluings=(Gluing(0, 1, 1, 1, AffineFaceMap.identity(1)),),
        )
    with pytest.raises(ParseError):
        CornerComplex(
            charts=(ModelCorner(2, 2),) * 2,
            gluings=(Gluing(0, 1, 1, 1, AffineFaceMap.make([[0]], [0])),),
        )


def test_face_classes_square():
    classes = face_classes(square())
    assert len(classes) == 4
    assert all(len(c) == 2 for c in classes)


def test_face_classes_teardrop():
    classes = face_classes(teardrop())
    assert len(classes) == 1
    assert classes[0] == ((0, 1), (0, 2), (1, 1))


def test_classify_teardrop_plain_only():
    cls = classify(teardrop())
    assert cls.plain
    assert not cls.with_faces
    assert cls.embedded_parts is None and cls.witness is None


def test_classify_square_two_parts():
    cls = classify(square())
    assert cls.with_faces
    assert cls.embedded_parts == 2
    # opposite edges pair up: each part holds two non-adjacent pieces
    assert sorted(len(part) for part in cls.witness) == [2, 2]
    cover = sorted(k for part in cls.witness for k in part)
    assert cover == [0, 1, 2, 3]


def test_classify_half_space_single_part():
    cls = classify(half_space())
    assert cls.with_faces and cls.embedded_parts == 1


def test_classify_boundaryless_zero_parts():
    cls = classify(boundaryless())
    assert cls.with_faces and cls.embedded_parts == 0 and cls.witness == ()


def test_implication_chain():
    for c in (teardrop(), square(), half_space(), boundaryless(), quadrant()):
        cls = classify(c)
        if cls.is_embedded:
            assert cls.with_faces
        assert cls.plain


def test_boundary_graph_multiplicities():
    graph = boundary_graph(teardrop())
    # the deep corner chart meets the single boundary piece twice
    by_chart = dict(graph.multiplicities)
    assert by_chart[0] == ((0, 2),)
    assert sum(m for _, m in by_chart[1]) == 1
    for c in (square(), half_space(), quadrant()):
        for ci, counts in boundary_graph(c).multiplicities:
            assert sum(m for _, m in counts) == c.charts[ci].depth


def test_boundary_complex_teardrop_single_edge():
    bnd = boundary_complex(teardrop())
    assert len(bnd.charts) == 3
    assert component_count(bnd) == 1
    assert sorted((m.dim, m.depth) for m in bnd.charts) == [(1, 0), (1, 1), (1, 1)]
    second = boundary_complex(bnd)
    assert len(second.charts) == 2


def test_boundary_complex_square_four_edges():
    bnd = boundary_complex(square())
    assert len(bnd.charts) == 8
    assert component_count(bnd) == 4
    second = boundary_complex(bnd)
    assert len(second.charts) == 8


def test_boundary_complex_of_boundaryless_empty():
    assert boundary_complex(boundaryless()).charts == ()


def test_ordered_second_boundary_counts():
    for c in (teardrop(), square(), half_space(), quadrant(), quadrant(3, 3)):
        second = boundary_complex(boundary_complex(c))
        expected = sum(2 * corners_count(m, 2) for m in c.charts)
        assert len(second.charts) == expected


def test_corners_complex_examples():
    assert corners_complex(teardrop(), 2).count == 1
    assert corners_complex(square(), 2).count == 4
    assert corners_complex(square(), 3).count == 0
    assert corners_complex(teardrop(), 1).count == 1  # one boundary piece
    assert corners_complex(square(), 0).count == 4  # one piece per chart


def test_product_complex_counts_convolve():
    pairs = [
        (teardrop(), half_space()),
        (square(), half_space()),
        (teardrop(), quadrant()),
        (half_space(), half_space()),
        (square(), boundaryless()),
    ]
    for c1, c2 in pairs:
        prod = product_complex(c1, c2)
        top = max((m.depth for m in prod.charts), default=0)
        for k in range(top + 1):
            conv = sum(
                corners_complex(c1, i).count * corners_complex(c2, k - i).count
                for i in range(k + 1)
            )
            assert corners_complex(prod, k).count == conv


def test_product_complex_classification_square_like():
    # half-space x half-space is the quadrant with two honest pieces
    prod = product_complex(half_space(1), half_space(1))
    cls = classify(prod)
    assert cls.with_faces and cls.embedded_parts == 2


def test_reversal_map_round_trip():
    rev = AffineFaceMap.reversal(2, span=3)
    inv = rev.inverse()
    assert inv.matrix == rev.matrix  # an involution
    assert inv.offset == rev.offset
