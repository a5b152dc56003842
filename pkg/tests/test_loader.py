import shutil
from importlib import resources

import pytest

from exdg.loader import FixtureError, load_fixture, shipped_fixtures


def _copy_a2(tmp_path):
    src = resources.files("exdg") / "fixtures" / "a2-two-term"
    dst = tmp_path / "fx"
    shutil.copytree(str(src), dst)
    return dst


def _edit(path, old, new):
    text = path.read_text()
    assert old in text
    path.write_text(text.replace(old, new, 1))


def test_shipped_fixtures_load():
    names = shipped_fixtures()
    assert {"a2-two-term", "a3-two-term", "cycle3", "linear-a4-rel", "supervect"} <= set(names)
    dims = {"a2-two-term": 3, "a3-two-term": 6, "cycle3": 7, "linear-a4-rel": 7}
    for name, dim in dims.items():
        fx = load_fixture(name)
        assert fx.alg.dim == dim
    assert load_fixture("supervect").model == "supervect"


def test_a2_contents(a2):
    assert list(a2.indecomposables) == ["P1", "P2", "S2", "SP1", "SP2"]
    assert set(a2.sequences) == {"alpha", "beta", "gamma"}
    assert a2.objects["S2"].dims() == {-1: 1, 0: 1}


def test_directory_path_and_digest(tmp_path):
    root = _copy_a2(tmp_path)
    fx = load_fixture(str(root))
    assert fx.digest == load_fixture("a2-two-term").digest
    _edit(root / "objects.toml", "# the five", "# five")
    assert load_fixture(str(root)).digest != fx.digest


def test_unknown_fixture():
    with pytest.raises(FixtureError):
        load_fixture("no-such-fixture")


def test_malformed_relation_has_location(tmp_path):
    root = _copy_a2(tmp_path)
    _edit(root / "algebra.toml", "items = []", 'items = ["a*z"]')
    with pytest.raises(FixtureError) as e:
        load_fixture(str(root))
    msg = str(e.value)
    assert "algebra.toml:" in msg and "a*z" in msg
    assert e.value.line is not None


def test_unknown_vertex_in_object(tmp_path):
    root = _copy_a2(tmp_path)
    _edit(root / "objects.toml", 'terms = [["2"]]', 'terms = [["7"]]')
    with pytest.raises(FixtureError) as e:
        load_fixture(str(root))
    assert "unknown vertex" in str(e.value)


def test_differential_must_square_to_zero(tmp_path):
    root = _copy_a2(tmp_path)
    _edit(root / "objects.toml", 'differentials = { "-1" = [["a"]] }', 'differentials = { "-1" = [["e1"]] }')
    with pytest.raises(FixtureError):
        load_fixture(str(root))


def test_toml_syntax_error_reports_line_and_column(tmp_path):
    root = _copy_a2(tmp_path)
    _edit(root / "fixture.toml", "seed = 0", "seed = = 0")
    with pytest.raises(FixtureError) as e:
        load_fixture(str(root))
    assert e.value.line == 3 and e.value.col is not None


def test_unknown_sequence_reference(tmp_path):
    root = _copy_a2(tmp_path)
    _edit(root / "sequences.toml", 'A2 = "SP1"', 'A2 = "SP9"')
    with pytest.raises(FixtureError) as e:
        load_fixture(str(root))
    assert "SP9" in str(e.value)


def test_inconsistent_sequence_rejected(tmp_path):
    root = _copy_a2(tmp_path)
    _edit(root / "sequences.toml", 'h = { "0" = [["-e1"]] }', 'h = {}')
    with pytest.raises(FixtureError):
        load_fixture(str(root))
