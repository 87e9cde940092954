import json
import re

import pytest
from hypothesis import given

from wildrep.catalog import NAMES, SOURCES, catalog
from wildrep.circle import circle
from wildrep.cli import main
from wildrep.diagram import diagram
from wildrep.dsl import parse_class, print_class
from wildrep.errors import ParseError, SemanticError
from wildrep.exact import INF, SpherePoint
from wildrep.fission import forest_of
from wildrep.report import analyze, emit_dot, emit_json, forest_from_json, forest_to_json

from conftest import global_classes


def test_parse_examples():
    G = parse_class("class PI { at inf: <x^(5/2)> #1 {t1:[1]}; }")
    assert G == catalog("PI") and G.name == "PI"
    H = parse_class("class T { at inf: <0> #2 {a:[1]; b:[1]}; at 0: <0> #2 {e1:[1]; 1:[1]}; }")
    e = H.at(SpherePoint.finite(0)).entries[0]
    assert e.mult == 2 and e.circle.terms == ()
    K = parse_class("class K { at inf: <x^2 + 3*x^(1/2)> #1 {a:[1]}; }")
    assert K.locals[0].entries[0].circle == circle([(2, 1), ("1/2", 3)])


def test_comments_and_flavor():
    G = parse_class("// a comment\nunmodified class U {\n  at inf: <x> #2; // trailing\n  at 3: <0> #2;\n}\n")
    assert G.flavor == "unmodified"
    assert [e.mult for L in G.locals for e in L.entries] == [2, 2]


@pytest.mark.parametrize("name", NAMES)
def test_print_parse_fixpoint_catalog(name):
    G = parse_class(SOURCES[name])
    text = print_class(G)
    assert parse_class(text) == G
    assert print_class(parse_class(text)) == text


@given(global_classes(max_den=4))
def test_print_parse_fixpoint_random(G):
    assert parse_class(print_class(G)) == G


@pytest.mark.parametrize("src, line, col", [
    ("class X { at inf: <x^2 #1; }", 1, 24),
    ("class X {\n  at inf <x> #1;\n}", 2, 10),
    ("class X { at inf: <x^(1/0)>; }", 1, 25),
    ("klass X {}", 1, 1),
])
def test_parse_errors_have_positions(src, line, col):
    with pytest.raises(ParseError) as ei:
        parse_class(src)
    assert (ei.value.line, ei.value.col) == (line, col)


@pytest.mark.parametrize("src", [
    "class X { at inf: <x> #1; at inf: <0> #1; }",
    "class X { at inf: <x + 2*x> #1; }",
    "class X { at inf: <x> #0; }",
    "class X { at inf: <x> #2 {a:[1]}; }",
    "unmodified class X { at inf: <x> #1; at 2: <0> #2; }",
])
def test_semantic_errors(src):
    with pytest.raises(SemanticError):
        parse_class(src)


def run(tmp_path, capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.wr"
    bad.write_text("class X { at inf: <x^2 #1; }")
    assert run(tmp_path, capsys, "analyze", bad)[0] == 2
    sem = tmp_path / "sem.wr"
    sem.write_text("class X { at inf: <x> #1; at inf: <0> #1; }")
    assert run(tmp_path, capsys, "analyze", sem)[0] == 3
    inc = tmp_path / "inc.wr"
    inc.write_text("class X { at inf: <x> #1; at 1: <0> #3; }")
    assert run(tmp_path, capsys, "analyze", inc)[0] == 4
    r1 = tmp_path / "r1.wr"
    r1.write_text("class X { at inf: <x> #1; }")
    code, _, err = run(tmp_path, capsys, "analyze", r1)
    assert code == 4 and "ExcludedRankOne" in err
    assert run(tmp_path, capsys, "painleve", "PXI")[0] == 3
    assert run(tmp_path, capsys, "realize", bad)[0] == 2


def test_cli_analyze_and_realize(tmp_path, capsys):
    src = tmp_path / "p3.wr"
    src.write_text(SOURCES["PIII2"])
    js = tmp_path / "p3.json"
    code, out, _ = run(tmp_path, capsys, "analyze", src, "--json", js, "--dot-dir", tmp_path / "dots", "--verify-readings")
    assert code == 0 and "k = 2" in out and "dimension = 2" in out
    doc = json.loads(js.read_text())
    assert list(doc)[:4] == ["schema", "name", "input", "k"]
    assert {"name", "k", "enriched_tree", "readings", "diagram", "distinct_forests"} <= set(doc)
    assert set(doc["diagram"]) == {"nodes", "B", "legs", "d", "dimension"}
    assert len(list((tmp_path / "dots").glob("*.dot"))) == 2 + 3 + 1
    fj = tmp_path / "f.json"
    fj.write_text(json.dumps(doc["readings"][1]["forest"]))
    code, out, _ = run(tmp_path, capsys, "realize", fj)
    assert code == 0 and parse_class(out).name == "realized"


def test_cli_unmodified_flag(tmp_path, capsys):
    src = tmp_path / "u.wr"
    src.write_text("class PVI { at inf: <0> #2 {a:[1]; b:[1]}; at 2: <0> #2 {x:[1]; 1:[1]};"
                   " at 3: <0> #2 {y:[1]; 1:[1]}; at 5: <0> #2 {z:[1]; 1:[1]}; }")
    code, out, _ = run(tmp_path, capsys, "analyze", src, "--unmodified")
    assert code == 0 and "dimension = 2" in out


def test_painleve_all_is_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    c1, o1, _ = run(tmp_path, capsys, "painleve", "all", "--json", a)
    c2, o2, _ = run(tmp_path, capsys, "painleve", "all", "--json", b)
    assert c1 == c2 == 0 and o1 == o2 and a.read_bytes() == b.read_bytes()
    assert len(json.loads(a.read_text())) == len(NAMES)


def test_json_round_trip():
    r = analyze(catalog("PVI"), verify=True)
    doc = json.loads(emit_json(r))
    assert doc == json.loads(json.dumps(r.to_dict()))
    for row, rd in zip(doc["readings"], r.readings):
        assert forest_from_json(row["forest"]) == rd.forest
    Fo = forest_of(catalog("PIII0"))
    assert forest_from_json(json.loads(json.dumps(forest_to_json(Fo)))) == Fo
    with pytest.raises(ParseError):
        forest_from_json({"trees": []})


def test_dot_pi_tree():
    dot = emit_dot(forest_of(catalog("PI")).trees[0]).decode()
    filled = re.findall(r'style=filled[^\]]*xlabel="([^"]+)"', dot)
    hollow = re.findall(r'style=solid[^\]]*xlabel="([^"]+)"', dot)
    assert filled == ["5/2"] and hollow == ["2", "3/2", "1", "1/2"]
    assert "shape=square" in dot


def test_dot_pvi_diagram():
    dot = emit_dot(diagram(catalog("PVI"))).decode()
    core = re.findall(r"^  (c\d) \[shape=circle, style=filled", dot, re.M)
    leg = re.findall(r"^  (l\d+_\d) \[shape=circle, label", dot, re.M)
    assert len(core) == 5 - 1 and len(leg) == 1
    center = "c3"
    nbrs = [l for l in dot.splitlines() if "--" in l and center in l]
    assert len(nbrs) == 4


def test_dot_dashed_negative():
    dot = emit_dot(diagram(catalog("PIII0"))).decode()
    assert 'c0 -- c0 [label="-3", style=dashed]' in dot
    assert 'label="6"' in dot
