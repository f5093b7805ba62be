from pathlib import Path

import pytest

from helpers import FIXTURES, GOLDEN
from linext.cli import main
from linext.cli.dot import emit_dot
from linext.cli.dsl import format_document, parse
from linext.errors import ParseError
from linext.poset import chain


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def fx(name):
    return FIXTURES / name


def test_parse_round_trip():
    for path in sorted(Path(FIXTURES).glob("*.pos")):
        doc = parse(path.read_text())
        again = parse(format_document(doc))
        assert [d.name for d in again.definitions] == [d.name for d in doc.definitions]
        for name in doc.names("poset") + doc.names("mobile"):
            assert again[name].poset == doc[name].poset
            assert again[name].names == doc[name].names


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        parse("poset P {\n  elements: a, b;\n  covers: a < c;\n}\n")
    assert "in poset P" in str(info.value)
    with pytest.raises(ParseError) as info:
        parse("poset P { elements a }")
    assert (info.value.line, info.value.column) == (1, 20)
    with pytest.raises(ParseError):
        parse("poset P { elements: a, b; covers: a<b, b<a; }")
    with pytest.raises(ParseError):
        parse("mobile M { ribbon 3 {1}; hang Q under z1; }")


def test_mobile_references():
    doc = parse("poset C { elements: c; }\nmobile U { ribbon 3 {1}; hang C under z_2; hang C under z3; }")
    assert doc["U"].poset.n == 5


def test_count_methods(capsys):
    assert run(capsys, "count", fx("ribbon.pos"))[:2] == (0, "35")
    assert run(capsys, "count", fx("ribbon.pos"), "--method", "atkinson")[:2] == (0, "35")
    assert run(capsys, "count", fx("bridges.pos"), "--method", "oracle")[:2] == (0, "77")
    assert run(capsys, "count", fx("bridges.pos"), "--folds", "c<e,d<g", "--check")[:2] == (0, "77")
    assert run(capsys, "count", fx("mobile_diamond.pos"), "M", "--check")[:2] == (0, "240")
    assert run(capsys, "count", fx("mobile_tree.pos"), "M")[:2] == (0, "12")
    assert run(capsys, "count", fx("x_poset.pos"))[:2] == (0, "4")


def test_hook_method_needs_d_complete(capsys):
    code, _, err = run(capsys, "count", fx("mobile_tree.pos"), "M", "--method", "hook")
    assert code == 1 and "NotDCompleteError" in err


def test_qcount(capsys):
    want_maj = "q^4+2q^5+q^6+q^8+3q^9+3q^10+q^11"
    assert run(capsys, "qcount", "maj", fx("mobile_tree.pos"), "M", "--labeling", "L", "--check")[:2] == (0, want_maj)
    assert run(capsys, "qcount", "inv", fx("mobile_tree.pos"), "M", "--labeling", "L")[:2] == (0, "q^6+3q^7+4q^8+3q^9+q^10")
    assert run(capsys, "qcount", "maj", fx("mobile_tree.pos"), "M", "--labeling", "L", "--method", "oracle")[1] == want_maj


def test_spectrum(capsys):
    assert run(capsys, "spectrum", fx("x_poset.pos"), "X", "c", "--check")[:2] == (0, "0 0 4 0 0")


def test_check_dcomplete(capsys):
    code, out, _ = run(capsys, "check-dcomplete", fx("mobile_diamond.pos"), "D")
    assert code == 0 and out.startswith("d-complete")
    code, out, _ = run(capsys, "check-dcomplete", fx("star.pos"))
    assert code == 0 and "not d-complete" in out


def test_recognize(capsys):
    code, out, _ = run(capsys, "recognize-mobile", fx("x_poset.pos"))
    assert code == 0 and "ribbon" in out
    code, out, _ = run(capsys, "recognize-mobile", fx("star.pos"))
    assert code == 0 and "not a mobile tree" in out


def test_euler_and_descent_poly(capsys):
    assert run(capsys, "euler", "chain", 1, "1..5")[1].split() == ["1", "16", "1036", "174664", "60849880"]
    assert run(capsys, "euler", "antichain", 2, "2", "--closed-form")[:2] == (0, "220")
    assert run(capsys, "descent-poly", "--euler", "chain", 1, 3)[1] == "16*binom(N,6) - 4*binom(N,3) + 28"


def test_golden_dot(capsys):
    code, out, _ = run(capsys, "dot", fx("up_down.pos"))
    assert code == 0
    assert out + "\n" == (GOLDEN / "c1_2.dot").read_text()


def test_emit_dot_highlights():
    text = emit_dot(chain(2), ("x", "y"), highlights=[(0, 1)], graph_name="G")
    assert '"x" -> "y" [color=red, penwidth=2];' in text and text.startswith('digraph "G" {')


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.pos"
    bad.write_text("poset P { elements: a, b; covers: a < c; }\n")
    code, _, err = run(capsys, "count", bad)
    assert code == 1 and "line 1" in err
    assert run(capsys, "count", tmp_path / "missing.pos")[0] == 1
    assert run(capsys, "no-such-command")[0] == 1
    # a star is not a path of components under all its folds
    code, _, err = run(capsys, "count", fx("star.pos"), "--folds", "c<p,c<q,c<r")
    assert code == 1 and "NotPathOrderError" in err


def test_consistency_failure_exit_code(capsys, monkeypatch):
    import linext.cli as cli

    monkeypatch.setattr(cli.oracle, "count", lambda poset, limit=None: -1)
    code, _, err = run(capsys, "count", fx("ribbon.pos"), "--check")
    assert code == 2 and "consistency failure" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0 and out.splitlines()[-1] == "16 passed, 0 failed"
