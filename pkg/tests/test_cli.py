from importlib import resources

import pytest

from weakomega.cli import main, run
from weakomega.fileformat import PresentationError, parse_presentation, serialize

DATA = resources.files("weakomega") / "data"
FILES = sorted(p.name for p in DATA.iterdir() if p.name.endswith(".omg"))


def path(name):
    return str(DATA / name)


def test_unknown_directive_has_line_number():
    with pytest.raises(PresentationError) as e:
        parse_presentation("dim 1 A\ncell 0 x\n\nfrob x\n")
    assert e.value.line == 4
    assert "line 4" in str(e.value)


def test_comp_with_unknown_cell():
    with pytest.raises(PresentationError) as e:
        parse_presentation("dim 1 A\ncell 0 x\ncell 1 1x\ndom 1x x\ncod 1x x\ncomp 0 1x q = 1x\n")
    assert e.value.line == 6


def test_missing_boundary_reported():
    with pytest.raises(PresentationError, match="lacks dom or cod"):
        parse_presentation("dim 1 A\ncell 0 x\ncell 1 f\ndom f x\n")


def test_g2_document():
    doc = parse_presentation(open(path("g2.omg")).read())
    assert len(doc.graph("G2").cells(0)) == 2


@pytest.mark.parametrize("name", FILES)
def test_serialize_is_stable(name):
    doc = parse_presentation(open(path(name)).read())
    once = serialize(doc)
    assert serialize(parse_presentation(once)) == once


@pytest.mark.parametrize("argv, code", [
    (["validate", "g2.omg"], 0),
    (["validate", "wb1.omg"], 0),
    (["validate", "nonassoc.omg"], 0),
    (["nf", "gf.omg", "--term", "comp(0,gen:f,gen:f)"], 0),
    (["eq", "gf.omg", "--term", "comp(0,gen:f,gen:f)", "--term", "gen:f"], 1),
    (["eq", "gf.omg", "--term", "comp(0,gen:f,id(gen:*))", "--term", "gen:f"], 0),
    (["eq", "gf.omg", "--term", "gen:f"], 2),
    (["nf", "gf.omg", "--term", "gen:nope"], 2),
    (["stretch", "gf.omg", "--bound", "4"], 0),
    (["hom", "b2.omg", "--src", "x", "--tgt", "y"], 0),
    (["hom", "b2.omg", "--src", "x", "--tgt", "f"], 2),
    (["stabilize", "mono2.omg", "--up", "--down"], 2),
    (["extract-cat", "ciso.omg"], 0),
    (["extract-bicat", "wb1.omg"], 0),
    (["weakify", "b1.omg"], 0),
    (["eqtable", "b2.omg"], 0),
    (["pi", "functors.omg", "--span", "CISO"], 0),
    (["tame", "functors.omg", "--source", "CISO", "--target", "T", "--map", "bang"], 0),
    (["weq", "functors.omg", "--source", "CISO", "--target", "T", "--map", "bang"], 0),
    (["weq", "functors.omg", "--source", "T", "--target", "CISO", "--map", "pick"], 0),
    (["oeq", "functors.omg", "--source", "CISO", "--target", "T", "--map", "bang", "--inverse", "pick"], 0),
    (["weq", "functors.omg", "--source", "CISO", "--target", "T"], 2),
    (["theta", "wb1.omg", "--h", "u", "--src", "*"], 0),
    (["theta", "wb1.omg", "--h", "u", "--src", "u"], 2),
    (["frobnicate", "g2.omg"], 2),
])
def test_exit_codes(argv, code):
    got, lines = run([argv[0], path(argv[1])] + argv[2:])
    assert got == code, lines
    if code < 2:
        assert lines[0] == "VERDICT " + ("ok" if code == 0 else "fail")
    elif argv[0] != "frobnicate":
        assert lines[0].startswith("ERROR ")


def test_missing_file(tmp_path):
    assert run(["validate", str(tmp_path / "absent.omg")])[0] == 2


def test_malformed_file(tmp_path):
    p = tmp_path / "bad.omg"
    p.write_text("dim 1 A\ncell 0 x\nwat\n")
    code, lines = run(["validate", str(p)])
    assert code == 2 and "line 3" in lines[0]


def test_invalid_presentation_fails(tmp_path):
    p = tmp_path / "bad.omg"
    p.write_text("dim 1 A\ncell 0 x\ncell 0 y\ncell 1 1x\ndom 1x x\ncod 1x y\nid x -> 1x\n")
    code, lines = run(["validate", str(p)])
    assert code == 1
    assert any(line.startswith("WITNESS") for line in lines)


def test_stabilize_round_trip(tmp_path):
    up, down = tmp_path / "up.omg", tmp_path / "down.omg"
    assert run(["stabilize", path("mono2.omg"), "--up", "--out", str(up)])[0] == 0
    assert run(["stabilize", str(up), "--down", "--out", str(down)])[0] == 0
    original = serialize(parse_presentation(open(path("mono2.omg")).read()))
    assert down.read_text() == original


def test_hom_output_is_a_document(tmp_path):
    out = tmp_path / "hom.omg"
    assert run(["hom", path("b2.omg"), "--src", "x", "--tgt", "y", "--out", str(out)])[0] == 0
    assert run(["validate", str(out)])[0] == 0


def test_eq_detects_unit_law():
    code, lines = run(["eq", path("gf.omg"), "--term", "comp(0,id(gen:*),gen:f)", "--term", "gen:f"])
    assert code == 0


def test_eqtable_lines():
    code, lines = run(["eqtable", path("b2.omg")])
    assert code == 0
    assert "EQ 2 t stratum 1 clique" in lines
    assert not any(line.startswith("EQ 1 f ") for line in lines)


def test_pi_lines():
    assert run(["pi", path("functors.omg"), "--span", "T"])[1][1:] == ["CLASS *"]
    assert run(["pi", path("functors.omg"), "--span", "CISO"])[1][1:] == ["CLASS x y"]


def test_theta_lines():
    _, lines = run(["theta", path("wb1.omg"), "--h", "u", "--src", "*"])
    assert "MAP e -> u" in lines
    assert "NOTE tame" in lines


@pytest.mark.parametrize("command, extra", [("eqtable", []), ("pi", ["--span", "B2"])])
def test_plots(tmp_path, command, extra):
    out = tmp_path / (command + ".png")
    code, lines = run([command, path("b2.omg"), "--plot", str(out)] + extra)
    assert code == 0
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_main_prints(capsys):
    assert main(["validate", path("g2.omg")]) == 0
    assert capsys.readouterr().out.startswith("VERDICT ok")
    assert main(["validate", "/nonexistent/x.omg"]) == 2
    assert capsys.readouterr().err.startswith("ERROR")
