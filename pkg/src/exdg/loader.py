"""Fixture files: an algebra, objects (complexes, maps, spans, modules), h-complexes and
run settings, all in TOML.  Errors carry file:line:column locations."""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .algebra import InputError, Quiver, build_algebra
from .complexes import GradedMap, ProjComplex
from .exactness import HCospan, HSpan
from .h3t import H3Error, validate_h3
from .linalg import GF, QQ
from .modules import cokernel_module, projective, simple

FIXTURE_DIR = Path(__file__).with_name("fixtures")
FILES = ("algebra.toml", "objects.toml", "sequences.toml", "fixture.toml")


class FixtureError(InputError):
    def __init__(self, message, path=None, line=None, col=None):
        loc = str(path) if path else "<fixture>"
        if line is not None:
            loc += f":{line}:{col or 1}"
        super().__init__(f"{loc}: {message}")
        self.path, self.line, self.col = path, line, col


@dataclass
class Fixture:
    name: str
    root: Path
    digest: str
    model: str = "path-algebra"
    alg: object = None
    objects: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    sequences: dict = field(default_factory=dict)
    cospans: dict = field(default_factory=dict)
    spans: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    indecomposables: dict = field(default_factory=dict)
    sequence_names: dict = field(default_factory=dict)
    test_set: str = "two-term"
    seed: int = 0
    sv: object = None
    max_dim: int = 2


def shipped_fixtures() -> list:
    return sorted(p.name for p in FIXTURE_DIR.iterdir() if (p / "fixture.toml").exists())


def resolve(name_or_path: str) -> Path:
    p = Path(name_or_path)
    if p.is_dir():
        return p
    q = FIXTURE_DIR / name_or_path
    if q.is_dir():
        return q
    raise FixtureError(f"unknown fixture {name_or_path!r} (shipped: {', '.join(shipped_fixtures())})")


class _Source:
    """One parsed file plus its text, for locating offending values."""

    def __init__(self, path: Path):
        self.path = path
        self.text = path.read_text(encoding="utf-8")
        try:
            self.data = tomllib.loads(self.text)
        except tomllib.TOMLDecodeError as e:
            m = re.search(r"line (\d+), column (\d+)", str(e))
            msg = re.sub(r"\s*\(at line \d+, column \d+\)", "", str(e))
            raise FixtureError(msg, path, *(map(int, m.groups()) if m else (None, None))) from None

    def locate(self, needle) -> tuple:
        if needle is None:
            return None, None
        for pat in (f'"{needle}"', str(needle)):
            k = self.text.find(pat)
            if k >= 0:
                line = self.text.count("\n", 0, k) + 1
                col = k - (self.text.rfind("\n", 0, k) + 1) + 1
                return line, col
        return None, None

    def error(self, message, needle=None):
        return FixtureError(message, self.path, *self.locate(needle))


def _field_of(table, src: _Source):
    kind = str(table.get("kind", "rationals")).lower()
    if kind in ("rationals", "qq", "q"):
        return QQ
    if kind in ("prime", "gf", "finite"):
        p = table.get("p")
        try:
            return GF(int(p))
        except (TypeError, ValueError) as e:
            raise src.error(f"bad prime field: {e}", "p =") from None
    raise src.error(f"unknown field kind {kind!r}", kind)


def _sources(root: Path) -> dict:
    return {f: _Source(root / f) for f in FILES if (root / f).exists()}


def _digest(srcs: dict) -> str:
    h = hashlib.sha256()
    for name in sorted(srcs):
        h.update(name.encode())
        h.update(srcs[name].text.encode())
    return h.hexdigest()[:16]


def load_fixture(name_or_path: str) -> Fixture:
    root = resolve(name_or_path)
    srcs = _sources(root)
    if "fixture.toml" not in srcs:
        raise FixtureError("missing fixture.toml", root)
    meta = srcs["fixture.toml"]
    fx = Fixture(root.name, root, _digest(srcs))
    fx.seed = int(meta.data.get("seed", 0))
    fx.test_set = meta.data.get("test_set", "two-term")
    fx.model = meta.data.get("model", "path-algebra")
    if fx.model == "supervect":
        from .stable import SVCat
        fx.sv = SVCat(_field_of(meta.data.get("field", {"kind": "prime", "p": 2}), meta))
        fx.max_dim = int(meta.data.get("enumeration", {}).get("max_dim", 2))
        return fx
    if fx.model != "path-algebra":
        raise meta.error(f"unknown model {fx.model!r}", fx.model)
    if "algebra.toml" not in srcs:
        raise FixtureError("missing algebra.toml", root)
    fx.alg = _load_algebra(srcs["algebra.toml"])
    for f in ("objects.toml", "sequences.toml"):
        if f in srcs and "field" in srcs[f].data:
            if _field_of(srcs[f].data["field"], srcs[f]) != fx.alg.field:
                raise srcs[f].error("field differs from the algebra file", "[field]")
    if "objects.toml" in srcs:
        _load_objects(fx, srcs["objects.toml"])
    if "sequences.toml" in srcs:
        _load_sequences(fx, srcs["sequences.toml"])
    for n in meta.data.get("indecomposables", []):
        if n not in fx.objects:
            raise meta.error(f"unknown object {n!r}", n)
        fx.indecomposables[n] = fx.objects[n]
    names = meta.data.get("sequence_names", {})
    for end in names:
        if end not in fx.indecomposables:
            raise meta.error(f"sequence name keyed by unknown end term {end!r}", end)
    fx.sequence_names = dict(names)
    if fx.test_set not in ("two-term", "ambient"):
        raise meta.error(f"unknown test set {fx.test_set!r}", fx.test_set)
    return fx


def _load_algebra(src: _Source):
    d = src.data
    F = _field_of(d.get("field", {}), src)
    q = d.get("quiver")
    if not isinstance(q, dict) or "vertices" not in q:
        raise src.error("missing [quiver] vertices", "[quiver]")
    verts = tuple(str(v) for v in q["vertices"])
    arrows = []
    for a in q.get("arrows", []):
        for key in ("name", "source", "target"):
            if key not in a:
                raise src.error(f"arrow without {key}", a.get("name"))
        for key in ("source", "target"):
            if str(a[key]) not in verts:
                raise src.error(f"arrow {a['name']}: unknown vertex {a[key]!r}", a[key])
        arrows.append((str(a["name"]), str(a["source"]), str(a["target"])))
    try:
        quiver = Quiver(verts, tuple(arrows))
    except (InputError, ValueError) as e:
        raise src.error(str(e)) from None
    rels = list(d.get("relations", {}).get("items", []))
    for r in rels:
        try:
            from .algebra import parse_combination
            parse_combination(r, quiver, F)
        except InputError as e:
            raise src.error(f"relation {r!r}: {e}", r) from None
    try:
        return build_algebra(quiver, rels, F)
    except InputError as e:
        raise src.error(str(e)) from None


def _matrix(alg, rows, src_verts, tgt_verts, src: _Source, where: str) -> dict:
    if not isinstance(rows, list) or len(rows) != len(tgt_verts):
        raise src.error(f"{where}: expected {len(tgt_verts)} rows", where.split()[0])
    out = {}
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(src_verts):
            raise src.error(f"{where}: row {r} should have {len(src_verts)} entries", row[0] if row else None)
        for c, text in enumerate(row):
            try:
                el = alg.element(str(text), src=src_verts[c], tgt=tgt_verts[r])
            except InputError as e:
                raise src.error(f"{where}[{r},{c}]: {e}", text) from None
            if el:
                out[(r, c)] = el
    return out


def _degree_keys(table, src: _Source, where: str) -> dict:
    out = {}
    for k, v in (table or {}).items():
        try:
            out[int(k)] = v
        except ValueError:
            raise src.error(f"{where}: degree key {k!r} is not an integer", k) from None
    return out


def _load_objects(fx: Fixture, src: _Source):
    alg = fx.alg
    verts = set(alg.quiver.vertices)
    for o in src.data.get("objects", []):
        name = o.get("name")
        if not name:
            raise src.error("object without a name", "[[objects]]")
        degs, terms = o.get("degrees", []), o.get("terms", [])
        if len(degs) != len(terms):
            raise src.error(f"object {name}: degrees and terms differ in length", name)
        tmap = {}
        for n, t in zip(degs, terms):
            for v in t:
                if str(v) not in verts:
                    raise src.error(f"object {name}: unknown vertex {v!r}", v)
            tmap[int(n)] = [str(v) for v in t]
        diff = {}
        for n, rows in _degree_keys(o.get("differentials"), src, name).items():
            diff[n] = _matrix(alg, rows, tmap.get(n, []), tmap.get(n + 1, []), src, f"{name} d^{n}")
        try:
            fx.objects[name] = ProjComplex(alg, tmap, diff, name=name)
        except InputError as e:
            raise src.error(str(e), name) from None
    for m in src.data.get("maps", []):
        fx.maps[m["name"]] = _graded_map(fx, m.get("source"), m.get("target"), int(m.get("degree", 0)),
                                         m.get("components"), src, m["name"])
    for c in src.data.get("cospans", []):
        fx.cospans[c["name"]] = HCospan(_ref(fx.maps, c.get("p"), src), _ref(fx.maps, c.get("c"), src))
    for s in src.data.get("spans", []):
        fx.spans[s["name"]] = HSpan(_ref(fx.maps, s.get("b"), src), _ref(fx.maps, s.get("pp"), src))
    for md in src.data.get("modules", []):
        fx.modules[md["name"]] = _module(fx, md, src)


def _ref(table, key, src):
    if key not in table:
        raise src.error(f"unknown reference {key!r}", key)
    return table[key]


def _graded_map(fx, s, t, degree, comps, src, where):
    X, Y = _ref(fx.objects, s, src), _ref(fx.objects, t, src)
    out = {}
    for n, rows in _degree_keys(comps, src, where).items():
        out[n] = _matrix(fx.alg, rows, X.term(n), Y.term(n + degree), src, f"{where} component {n}")
    return GradedMap(X, Y, degree, out)


def _module(fx, md, src):
    alg = fx.alg
    verts = set(alg.quiver.vertices)
    for key in ("simple", "projective"):
        if key in md:
            v = str(md[key])
            if v not in verts:
                raise src.error(f"module {md['name']}: unknown vertex {v!r}", v)
            M = simple(alg, v) if key == "simple" else projective(alg, v)
            M.label = md["name"]
            return M
    if "cokernel" in md:
        ck = md["cokernel"]
        p1, p0 = [str(v) for v in ck.get("p1", [])], [str(v) for v in ck.get("p0", [])]
        ent = _matrix(alg, ck.get("matrix", []), p1, p0, src, f"module {md['name']}")
        M = cokernel_module(alg, p1, p0, ent)
        M.label = md["name"]
        return M
    raise src.error(f"module {md['name']}: expected simple, projective or cokernel", md["name"])


def _load_sequences(fx: Fixture, src: _Source):
    for s in src.data.get("sequences", []):
        name = s.get("name")
        A0, A1, A2 = (_ref(fx.objects, s.get(k), src) for k in ("A0", "A1", "A2"))
        f = _graded_map(fx, s["A0"], s["A1"], 0, s.get("f"), src, f"{name}.f")
        j = _graded_map(fx, s["A1"], s["A2"], 0, s.get("j"), src, f"{name}.j")
        h = _graded_map(fx, s["A0"], s["A2"], -1, s.get("h"), src, f"{name}.h")
        try:
            fx.sequences[name] = validate_h3(A0, A1, A2, f, j, h, name)
        except H3Error as e:
            raise src.error(f"sequence {name}: {e}", name) from None
