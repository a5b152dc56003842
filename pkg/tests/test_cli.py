import io
import json
import re

import pytest

from exdg.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def dot_edges(text):
    assert text.startswith("digraph ") and text.rstrip().endswith("}")
    for line in text.splitlines()[1:-1]:
        assert re.fullmatch(r'  (rankdir=\w+;|"[^"]*" \[label="[^"]*"\];|"[^"]*" -> "[^"]*"( \[.*\])?;)', line), line
    return re.findall(r'"([^"]*)" -> "([^"]*)"(?: \[(.*)\])?;', text)


def test_basis():
    code, out = call("basis")
    assert code == 0 and "result: ok" in out


def test_hom_table():
    code, out = call("hom", "P2", "S2")
    assert code == 0


def test_output_is_byte_stable():
    assert call("--emit", "json", "egroup", "S2", "P1") == call("--emit", "json", "egroup", "S2", "P1")
    assert call("ar-quiver") == call("ar-quiver")


def test_json_is_valid():
    code, out = call("--emit", "json", "check-hses", "beta")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["command"] == "check-hses"
    assert len(data["inputs_digest"]) == 16


def test_ar_quiver_dot():
    code, out = call("--emit", "dot", "ar-quiver")
    assert code == 0
    edges = dot_edges(out)
    solid = {(s, t) for s, t, a in edges if "dashed" not in a}
    dashed = {(s, t, re.search(r'label="(\w+)"', a).group(1)) for s, t, a in edges if "dashed" in a}
    assert solid == {("P1", "P2"), ("P2", "S2"), ("S2", "SP1"), ("SP1", "SP2")}
    assert dashed == {("S2", "P1", "beta"), ("SP1", "P2", "alpha"), ("SP2", "S2", "gamma")}


def test_lattice_dot():
    code, out = call("--emit", "dot", "lattice", "--samples", "5")
    assert code == 0
    assert "rankdir=BT;" in out
    assert len(dot_edges(out)) == 12


def test_cycle3_module_props():
    code, out = call("--fixture", "cycle3", "--emit", "json", "module", "S2", "--props")
    v = json.loads(out)["verdicts"]
    assert code == 0 and v["pd"] == 1 and v["dual-pd"] == 1 and v["reflexive"] is True


def test_cycle3_counterexample_verdicts():
    code, out = call("--fixture", "cycle3", "--emit", "json", "check-hses", "counterexample")
    v = json.loads(out)["verdicts"]
    assert code == 0
    assert v["short exact"] is True and v["ambient short exact"] is False


def test_sv_commands():
    code, out = call("--fixture", "supervect", "--emit", "json", "sv-hkernel", "2,0", "1,0", "--matrix", "1 1")
    assert code == 0 and json.loads(out)["data"]["object"] == [1, 0]
    code, _ = call("--fixture", "supervect", "sv-hcokernel", "1,0", "2,0", "--matrix", "1;0")
    assert code == 0


def test_stable_check_exit_codes():
    assert call("--fixture", "supervect", "stable-check")[0] == 0
    code, out = call("stable-check", "--samples", "20")
    assert code == 1 and "result: FAILED" in out


@pytest.mark.parametrize("argv", [
    ("--fixture", "nope", "basis"),
    ("hom", "P1", "Q9"),
    ("--emit", "dot", "basis"),
    ("realize", "S2", "P1", "--delta", "1,1"),
    ("check-hses", "delta"),
])
def test_input_errors_exit_2(argv, capsys):
    code, out = call(*argv)
    assert code == 2 and out == ""
    assert "exdg: error:" in capsys.readouterr().err


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as e:
        call("frobnicate")
    assert e.value.code == 2


def test_figures(tmp_path):
    for argv in (("ar-quiver",), ("hom", "S2", "SP1"), ("lattice", "--samples", "3"),
                 ("verify-axioms", "--samples", "5")):
        code, out = call("--figures", str(tmp_path), *argv)
        assert code == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert {"ar_quiver.png", "hom.png", "lattice.png", "axioms.png"} <= names
    for p in tmp_path.iterdir():
        assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_timings_flag():
    code, out = call("--timings", "basis")
    assert code == 0 and "time total:" in out
