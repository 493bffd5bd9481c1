import json

import pytest

from cornercalc import gen, serialize
from cornercalc.cli import main
from cornercalc.errors import ParseError


def run_cli(capsys, args, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        import sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- serialization round trips -------------------------------------------


def test_germ_document_round_trip():
    rng = gen.rng_from_seed(1)
    for _ in range(30):
        f = gen.random_germ(rng)
        doc = serialize.germ_to_doc(f)
        assert serialize.germ_from_doc(json.loads(json.dumps(doc))) == f


def test_polymap_document_round_trip():
    rng = gen.rng_from_seed(2)
    for _ in range(20):
        q = gen.random_smooth_polymap(rng)
        doc = serialize.polymap_to_doc(q)
        back = serialize.polymap_from_doc(json.loads(json.dumps(doc)))
        assert back.components == q.components


def test_complex_document_round_trip():
    from cornercalc.complexes import square, teardrop

    for c in (square(), teardrop()):
        doc = serialize.complex_to_doc(c)
        back = serialize.complex_from_doc(json.loads(json.dumps(doc)))
        assert back == c


def test_bad_documents():
    with pytest.raises(ParseError):
        serialize.model_from_doc({"dim": 1})
    with pytest.raises(ParseError):
        serialize.germ_from_doc({"source": {"dim": 1, "depth": 1}})
    with pytest.raises(ParseError):
        serialize.parse_fraction("3/0")
    with pytest.raises(ParseError):
        serialize.map_from_doc({"source": {"dim": 1, "depth": 1}})


# -- CLI commands ----------------------------------------------------------


def poly_doc(source, target, components):
    return json.dumps(
        {
            "source": {"dim": source[0], "depth": source[1]},
            "target": {"dim": target[0], "depth": target[1]},
            "components": components,
        }
    )


def test_cli_classify_examples(capsys, monkeypatch):
    cases = [
        (poly_doc((1, 1), (1, 0), ["x1"]), "smooth"),
        (poly_doc((1, 1), (1, 1), ["x1^2"]), "b-map"),
        (poly_doc((2, 2), (1, 1), ["x1+x2"]), "weakly-smooth-only"),
        (poly_doc((2, 2), (1, 1), ["x1*x2"]), "b-map"),
    ]
    for doc, expected in cases:
        code, out, _ = run_cli(capsys, ["classify", "-"], doc, monkeypatch)
        assert code == 0
        assert f"classification: {expected}" in out


def test_cli_classify_reports_exponents(capsys, monkeypatch):
    doc = poly_doc((2, 2), (1, 1), ["x1*x2"])
    code, out, _ = run_cli(capsys, ["classify", "-"], doc, monkeypatch)
    assert "exponents: [[1, 1]]" in out


def test_cli_germ_and_compose(capsys, monkeypatch):
    doc = poly_doc((1, 1), (2, 2), ["x1", "2*x1"])
    code, out, _ = run_cli(capsys, ["--format", "json", "germ", "-"], doc, monkeypatch)
    assert code == 0
    germ_doc = json.loads(out)
    assert germ_doc["P"] == [1, 2]

    compose_doc = json.dumps({"f": germ_doc, "g": germ_doc})
    code, _, err = run_cli(capsys, ["compose", "-"], compose_doc, monkeypatch)
    assert code == 2  # models do not match: an input error
    assert "cannot compose" in err

    ident = {
        "source": {"dim": 2, "depth": 2},
        "target": {"dim": 2, "depth": 2},
        "P": [1, 2],
        "Pi": {"1": 1, "2": 2},
        "jacobian": [["1", "0"], ["0", "1"]],
    }
    ok_doc = json.dumps({"f": germ_doc, "g": ident})
    code, out, _ = run_cli(capsys, ["compose", "-"], ok_doc, monkeypatch)
    assert code == 0
    assert "composite: (1, 1) -> (2, 2)" in out


def test_cli_germ_rejects_non_smooth(capsys, monkeypatch):
    doc = poly_doc((1, 1), (1, 1), ["x1^2"])
    code, _, err = run_cli(capsys, ["germ", "-"], doc, monkeypatch)
    assert code == 1
    assert "negative verdict" in err


def test_cli_corners(capsys, monkeypatch):
    doc = json.dumps({"model": {"dim": 3, "depth": 2}})
    code, out, _ = run_cli(capsys, ["corners", "-"], doc, monkeypatch)
    assert code == 0
    assert "depth 1: corners=2 ordered=2" in out


def test_cli_fibre_crossing_pair(capsys, monkeypatch):
    doc = json.dumps(
        {
            "f": {
                "source": {"dim": 1, "depth": 1},
                "target": {"dim": 2, "depth": 2},
                "components": ["x1", "2*x1"],
            },
            "g": {
                "source": {"dim": 1, "depth": 1},
                "target": {"dim": 2, "depth": 2},
                "components": ["2*x1", "x1"],
            },
        }
    )
    code, out, _ = run_cli(capsys, ["fibre", "-"], doc, monkeypatch)
    assert code == 0
    assert "strongly transverse: false" in out
    assert "W model: (0, 0)" in out
    assert "corner identity FAILS at depth 0: faces-of-W count 1, matched-pair count 2" in out


def test_cli_fibre_not_transverse_exit_one(capsys, monkeypatch):
    point_doc = {
        "source": {"dim": 0, "depth": 0},
        "target": {"dim": 1, "depth": 0},
        "P": [],
        "Pi": {},
        "jacobian": [[]],
    }
    doc = json.dumps({"f": point_doc, "g": point_doc})
    code, _, err = run_cli(capsys, ["fibre", "-"], doc, monkeypatch)
    assert code == 1
    assert "not transverse" in err


def test_cli_parse_error_exit_two(capsys, monkeypatch):
    code, _, err = run_cli(capsys, ["classify", "-"], "{not json", monkeypatch)
    assert code == 2
    assert "input error" in err


def test_cli_complex_corpus(capsys, monkeypatch):
    code, out, _ = run_cli(
        capsys, ["complex", "-"], json.dumps({"name": "teardrop"}), monkeypatch
    )
    assert code == 0
    assert "not embedded (plain only)" in out
    code, out, _ = run_cli(
        capsys, ["complex", "-"], json.dumps({"name": "square"}), monkeypatch
    )
    assert "embedded with 2 part(s)" in out


def test_cli_orient(capsys, monkeypatch):
    doc = json.dumps(
        {
            "identity": "product_swap",
            "x": {"dim": 1, "depth": 1},
            "y": {"dim": 2, "depth": 1},
        }
    )
    code, out, _ = run_cli(capsys, ["orient", "-"], doc, monkeypatch)
    assert code == 0
    assert "holds: true" in out


def test_cli_verify_deterministic(capsys):
    args = ["verify", "--suite", "poly", "--seed", "7", "--size", "15"]
    code1, out1, _ = run_cli(capsys, args)
    code2, out2, _ = run_cli(capsys, args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert "PASS" in out1


def test_cli_verify_json_format(capsys):
    code, out, _ = run_cli(
        capsys,
        ["--format", "json", "verify", "--suite", "counts", "--max-dim", "4"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["counts"]["ok"] is True
