"""Bounded complexes of projectives, graded maps, Hom complexes and cohomology.

Conventions: d(f) = d o f - (-1)^|f| f o d; (S^k X)^n = X^{n+k} with
differential (-1)^k d; Cone(f)^n = X^{n+1} + Y^n with d = [[-d_X, 0], [f, d_Y]].
"""

from __future__ import annotations

import itertools

from .algebra import InputError
from .linalg import Echelon, kernel_sparse, solve_sparse
from .modules import (ModuleMap, ProjLayout, RightModule, kernel as module_kernel,
                      matrix_module_map, submodule, CoordSolver, columns_to_matrix)

_ids = itertools.count()


# --- element-matrix helpers -------------------------------------------------

def _mat_mul(alg, g: dict, f: dict) -> dict:
    """(g f)[(r, c)] = sum_k g[(r, k)] f[(k, c)]."""
    if not g or not f:
        return {}
    by_row = {}
    for (k, c), el in f.items():
        by_row.setdefault(k, []).append((c, el))
    out = {}
    for (r, k), gel in g.items():
        for c, fel in by_row.get(k, ()):
            prod = alg.mul(gel, fel)
            if prod:
                key = (r, c)
                out[key] = alg.add(out[key], prod) if key in out else prod
                if not out[key]:
                    del out[key]
    return out


def _mat_add(alg, a: dict, b: dict, c=1) -> dict:
    out = dict(a)
    for k, el in b.items():
        v = alg.add(out.get(k, {}), el, c)
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _mat_scale(alg, a: dict, c) -> dict:
    if c == 0:
        return {}
    return {k: alg.scale(el, c) for k, el in a.items()}


# --- complexes --------------------------------------------------------------

class ProjComplex:
    """Bounded complex of finitely generated projective right modules."""

    def __init__(self, alg, terms: dict, diff: dict | None = None, name: str = "", check: bool = True):
        self.alg = alg
        self.terms = {n: list(v) for n, v in terms.items() if v}
        self.diff = {n: {k: dict(e) for k, e in m.items() if e} for n, m in (diff or {}).items()}
        self.diff = {n: m for n, m in self.diff.items() if m}
        self.name = name
        self.uid = next(_ids)
        if check:
            self.validate()

    @property
    def lo(self):
        return min(self.terms) if self.terms else 0

    @property
    def hi(self):
        return max(self.terms) if self.terms else -1

    def term(self, n) -> list:
        return self.terms.get(n, [])

    def d(self, n) -> dict:
        return self.diff.get(n, {})

    def is_zero(self) -> bool:
        return not self.terms

    def validate(self):
        alg = self.alg
        for n, m in self.diff.items():
            src, tgt = self.term(n), self.term(n + 1)
            for (r, c), el in m.items():
                if r >= len(tgt) or c >= len(src):
                    raise InputError(f"{self.name or 'complex'}: differential d^{n} entry {(r, c)} out of range")
                for b in el:
                    if alg.src(b) != src[c] or alg.tgt(b) != tgt[r]:
                        raise InputError(
                            f"{self.name or 'complex'}: d^{n}[{r},{c}] not in e{tgt[r]} A e{src[c]}")
        for n in self.diff:
            if _mat_mul(alg, self.d(n + 1), self.d(n)):
                raise InputError(f"{self.name or 'complex'}: d^{n + 1} d^{n} != 0")

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def dims(self) -> dict:
        return {n: len(v) for n, v in sorted(self.terms.items())}

    def __repr__(self):
        return f"ProjComplex({self.name or self.uid}: {self.dims()})"

    def describe(self) -> str:
        parts = []
        for n in self.degrees():
            t = self.term(n)
            parts.append(f"[{n}] " + ("+".join(f"P{v}" for v in t) if t else "0"))
        return " -> ".join(parts) if parts else "0"


def stalk(alg, vertices, degree: int = 0, name: str = "") -> ProjComplex:
    return ProjComplex(alg, {degree: list(vertices)}, {}, name=name)


def stalk_A(alg) -> ProjComplex:
    return stalk(alg, alg.vertices, 0, name="A")


def zero_complex(alg) -> ProjComplex:
    return ProjComplex(alg, {}, {}, name="0")


def shift(X: ProjComplex, k: int = 1) -> ProjComplex:
    sgn = -1 if k % 2 else 1
    terms = {n - k: v for n, v in X.terms.items()}
    diff = {n - k: _mat_scale(X.alg, m, sgn) for n, m in X.diff.items()}
    nm = X.name
    if nm:
        nm = f"S{nm}" if k == 1 else (X.name if k == 0 else f"S^{k}{nm}")
    return ProjComplex(X.alg, terms, diff, name=nm, check=False)


def direct_sum(objs, name: str = "") -> tuple:
    """(X_1 + ... + X_m, inclusions, projections)."""
    alg = objs[0].alg
    degs = sorted({n for X in objs for n in X.terms})
    terms, offs = {}, []
    for X in objs:
        off = {}
        for n in degs:
            off[n] = len(terms.get(n, []))
            terms.setdefault(n, []).extend(X.term(n))
        offs.append(off)
    diff = {}
    for X, off in zip(objs, offs):
        for n, m in X.diff.items():
            for (r, c), el in m.items():
                diff.setdefault(n, {})[(r + off.get(n + 1, 0), c + off[n])] = el
    S = ProjComplex(alg, terms, diff, name=name or "+".join(X.name or "?" for X in objs), check=False)
    incs, projs = [], []
    for X, off in zip(objs, offs):
        inc = {n: {(i + off[n], i): alg.e(v) for i, v in enumerate(X.term(n))} for n in X.terms}
        pr = {n: {(i, i + off[n]): alg.e(v) for i, v in enumerate(X.term(n))} for n in X.terms}
        incs.append(GradedMap(X, S, 0, inc))
        projs.append(GradedMap(S, X, 0, pr))
    return S, incs, projs


# --- graded maps ------------------------------------------------------------

class GradedMap:
    """Homogeneous map of degree p: components src^n -> tgt^{n+p} as element matrices."""

    __slots__ = ("src", "tgt", "degree", "comps")

    def __init__(self, src: ProjComplex, tgt: ProjComplex, degree: int, comps: dict | None = None):
        self.src, self.tgt, self.degree = src, tgt, degree
        self.comps = {n: m for n, m in (comps or {}).items() if m}

    @property
    def alg(self):
        return self.src.alg

    def comp(self, n) -> dict:
        return self.comps.get(n, {})

    def __add__(self, other):
        self._check(other)
        alg = self.alg
        out = dict(self.comps)
        for n, m in other.comps.items():
            out[n] = _mat_add(alg, out.get(n, {}), m)
        return GradedMap(self.src, self.tgt, self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = self.alg.field(c) if not isinstance(c, int) else c
        return GradedMap(self.src, self.tgt, self.degree,
                         {n: _mat_scale(self.alg, m, c) for n, m in self.comps.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, f: "GradedMap") -> "GradedMap":
        """self o f."""
        if f.tgt is not self.src:
            raise ValueError("non-composable graded maps")
        alg, p = self.alg, f.degree
        out = {}
        for n, fm in f.comps.items():
            gm = self.comps.get(n + p)
            if gm:
                m = _mat_mul(alg, gm, fm)
                if m:
                    out[n] = m
        return GradedMap(f.src, self.tgt, self.degree + p, out)

    def d(self) -> "GradedMap":
        """d_Y o f - (-1)^p f o d_X."""
        X, Y, p, alg = self.src, self.tgt, self.degree, self.alg
        sgn = -1 if p % 2 else 1
        out = {}
        for n, m in self.comps.items():
            a = _mat_mul(alg, Y.d(n + p), m)
            if a:
                out[n] = a
        for n, m in self.comps.items():
            b = _mat_mul(alg, m, X.d(n - 1))
            if b:
                out[n - 1] = _mat_add(alg, out.get(n - 1, {}), b, -sgn)
        return GradedMap(X, Y, p + 1, {n: m for n, m in out.items() if m})

    def is_zero(self) -> bool:
        return not any(self.comps.values())

    def is_closed(self) -> bool:
        return self.d().is_zero()

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self.src is other.src and self.tgt is other.tgt and self.degree == other.degree
                and (self - other).is_zero())

    __hash__ = None

    def _check(self, other):
        if other.src is not self.src or other.tgt is not self.tgt or other.degree != self.degree:
            raise ValueError("graded maps live in different Hom spaces")

    def retarget(self, src=None, tgt=None) -> "GradedMap":
        """Same components viewed between identical-shaped complexes."""
        return GradedMap(src or self.src, tgt or self.tgt, self.degree, self.comps)

    def __repr__(self):
        return f"GradedMap({self.src.name}->{self.tgt.name}, deg {self.degree}, {self.comps})"

    def format(self) -> dict:
        alg = self.alg
        return {n: {f"{r},{c}": alg.format(el) for (r, c), el in sorted(m.items())}
                for n, m in sorted(self.comps.items())}


def identity_map(X: ProjComplex) -> GradedMap:
    alg = X.alg
    return GradedMap(X, X, 0, {n: {(i, i): alg.e(v) for i, v in enumerate(t)} for n, t in X.terms.items()})


def zero_map(X, Y, p=0) -> GradedMap:
    return GradedMap(X, Y, p, {})


def shift_map(f: GradedMap, k: int, src=None, tgt=None) -> GradedMap:
    """(S^k f)^n = (-1)^{kp} f^{n+k} between the shifted complexes."""
    src = src or shift(f.src, k)
    tgt = tgt or shift(f.tgt, k)
    sgn = -1 if (k * f.degree) % 2 else 1
    return GradedMap(src, tgt, f.degree, {n - k: _mat_scale(f.alg, m, sgn) for n, m in f.comps.items()})


def block_map(src_sum, tgt_sum, blocks: dict) -> GradedMap:
    """Assemble a map between direct sums from blocks {(i, j): map from summand j to summand i}."""
    S, sincs, sprojs = src_sum
    T, tincs, tprojs = tgt_sum
    out = None
    for (i, j), f in blocks.items():
        g = tincs[i] @ f.retarget(src=sprojs[j].tgt, tgt=tincs[i].src) @ sprojs[j]
        out = g if out is None else out + g
    return out


# --- Hom spaces ---------------------------------------------------------------

class HomSpace:
    """Hom^p(X, Y) with coordinates indexed by (n, row, col, basis path)."""

    def __init__(self, X: ProjComplex, Y: ProjComplex, p: int):
        self.X, self.Y, self.p = X, Y, p
        alg = X.alg
        slots = []
        for n in X.degrees():
            src, tgt = X.term(n), Y.term(n + p)
            for r, v in enumerate(tgt):
                for c, u in enumerate(src):
                    for b in alg.paths(u, v):
                        slots.append((n, r, c, b))
        self.slots = slots
        self.index = {s: i for i, s in enumerate(slots)}

    @property
    def dim(self) -> int:
        return len(self.slots)

    def coords(self, f: GradedMap) -> dict:
        idx = self.index
        out = {}
        for n, m in f.comps.items():
            for (r, c), el in m.items():
                for b, x in el.items():
                    out[idx[(n, r, c, b)]] = x
        return out

    def vector(self, f: GradedMap) -> list:
        v = [0] * self.dim
        for i, x in self.coords(f).items():
            v[i] = x
        return v

    def element(self, vec) -> GradedMap:
        comps = {}
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        for i, x in items:
            if x:
                n, r, c, b = self.slots[i]
                comps.setdefault(n, {}).setdefault((r, c), {})[b] = x
        return GradedMap(self.X, self.Y, self.p, comps)

    def basis_element(self, i) -> GradedMap:
        n, r, c, b = self.slots[i]
        return GradedMap(self.X, self.Y, self.p, {n: {(r, c): {b: 1}}})

    def basis(self) -> list:
        return [self.basis_element(i) for i in range(self.dim)]

    def zero(self) -> GradedMap:
        return GradedMap(self.X, self.Y, self.p, {})

    def random(self, rng) -> GradedMap:
        F = self.X.alg.field
        return self.element([F.random(rng) for _ in range(self.dim)])


class ComplexCategory:
    """The dg category of bounded complexes of projectives over one algebra."""

    def __init__(self, alg):
        self.alg = alg
        self.field = alg.field
        self._spaces = {}

    def hom_space(self, X, Y, p) -> HomSpace:
        key = (X.uid, Y.uid, p)
        sp = self._spaces.get(key)
        if sp is None or sp.X is not X or sp.Y is not Y:
            sp = HomSpace(X, Y, p)
            if len(self._spaces) > 20000:
                self._spaces.clear()
            self._spaces[key] = sp
        return sp

    def hom_degrees(self, X, Y) -> tuple:
        if X.is_zero() or Y.is_zero():
            return (0, -1)
        return (Y.lo - X.hi, Y.hi - X.lo)

    def identity(self, X):
        return identity_map(X)

    def zero(self, X, Y, p=0):
        return zero_map(X, Y, p)


_default_cats = {}


def cat_of(f):
    """The category a map lives in (maps of other models carry a ``cat`` attribute)."""
    cat = getattr(f, "cat", None)
    return cat if cat is not None else category_of(f.alg)


def category_of(alg) -> ComplexCategory:
    cat = _default_cats.get(id(alg))
    if cat is None or cat.alg is not alg:
        cat = ComplexCategory(alg)
        _default_cats[id(alg)] = cat
    return cat


# --- complexes of vector spaces ----------------------------------------------------

class VComplex:
    """Complex of finite-dimensional vector spaces; D[n] lists sparse images of basis vectors."""

    def __init__(self, field, dims: dict, D: dict):
        self.F = field
        self.dims = {n: d for n, d in dims.items()}
        self.D = D  # n -> list (len dims[n]) of sparse dicts in degree n+1 coordinates

    def dim(self, n) -> int:
        return self.dims.get(n, 0)

    def degrees(self):
        return sorted(self.dims)

    def _rows(self, n):
        rows = {}
        for j, col in enumerate(self.D.get(n, [])):
            for i, x in col.items():
                rows.setdefault(i, {})[j] = x
        return list(rows.values())

    def cycles(self, n) -> list:
        return kernel_sparse(self._rows(n), self.dim(n), self.F)

    def boundaries(self, n) -> list:
        """Sparse spanning set of B^n."""
        return [c for c in self.D.get(n - 1, []) if c]

    def rank(self, n) -> int:
        ech = Echelon(self.F)
        for c in self.D.get(n, []):
            ech.add(c)
        return len(ech)

    def cohomology_dim(self, n) -> int:
        return self.dim(n) - self.rank(n) - self.rank(n - 1)

    def check_d2(self) -> bool:
        for n in self.D:
            nxt = self.D.get(n + 1)
            if not nxt:
                continue
            for col in self.D[n]:
                acc = {}
                for i, x in col.items():
                    for k, y in nxt[i].items():
                        acc[k] = self.F.norm(acc.get(k, 0) + x * y)
                if any(acc.values()):
                    return False
        return True


class VMap:
    """Degree-0 chain map of VComplexes; cols[n][j] is the sparse image of basis vector j."""

    def __init__(self, src: VComplex, tgt: VComplex, cols: dict):
        self.src, self.tgt, self.cols = src, tgt, cols

    def apply(self, n, vec) -> dict:
        F, out = self.src.F, {}
        cols = self.cols.get(n, [])
        for j, x in enumerate(vec) if isinstance(vec, list) else vec.items():
            if x and j < len(cols):
                for i, y in cols[j].items():
                    out[i] = F.norm(out.get(i, 0) + x * y)
        return {i: x for i, x in out.items() if x}

    def is_chain_map(self) -> bool:
        F = self.src.F
        for n in self.src.degrees():
            for j in range(self.src.dim(n)):
                lhs = self.apply(n + 1, self.src.D.get(n, [{}] * self.src.dim(n))[j])
                rhs = {}
                for i, x in self.cols.get(n, [{}] * self.src.dim(n))[j].items():
                    for k, y in self.tgt.D.get(n, [])[i].items() if self.tgt.D.get(n) else ():
                        rhs[k] = F.norm(rhs.get(k, 0) + x * y)
                rhs = {k: v for k, v in rhs.items() if v}
                if lhs != rhs:
                    return False
        return True

    def induced_rank(self, n) -> int:
        """Rank of H^n(phi)."""
        ech = Echelon(self.src.F)
        for b in self.tgt.boundaries(n):
            ech.add(b)
        base = len(ech)
        for z in self.src.cycles(n):
            ech.add(self.apply(n, z))
        return len(ech) - base

    def is_iso_in(self, n) -> bool:
        hs, ht = self.src.cohomology_dim(n), self.tgt.cohomology_dim(n)
        if hs != ht:
            return False
        return self.induced_rank(n) == hs

    def failure_degrees(self, degrees) -> list:
        return [n for n in degrees if not self.is_iso_in(n)]


def is_quasi_iso(phi: VMap, up_to: int | None = None, degrees=None) -> bool:
    """H^n(phi) bijective for all n (or all n <= up_to)."""
    if degrees is None:
        ds = set(phi.src.degrees()) | set(phi.tgt.degrees())
        degrees = sorted(n for n in ds if up_to is None or n <= up_to)
    return not phi.failure_degrees(degrees)


def desuspended_cone(phi: VMap) -> VComplex:
    """S^{-1}Cone(phi)^n = V^n + W^{n-1}, d(v, w) = (dv, -phi v - dw)."""
    V, W, F = phi.src, phi.tgt, phi.src.F
    degs = sorted(set(V.degrees()) | {n + 1 for n in W.degrees()})
    dims = {n: V.dim(n) + W.dim(n - 1) for n in degs}
    D = {}
    for n in degs:
        cols = []
        off_next = V.dim(n + 1)
        vD = V.D.get(n, [])
        for j in range(V.dim(n)):
            col = dict(vD[j]) if vD else {}
            for i, x in phi.apply(n, {j: 1}).items():
                col[off_next + i] = F.norm(-x)
            cols.append({k: x for k, x in col.items() if x})
        wD = W.D.get(n - 1, [])
        for j in range(W.dim(n - 1)):
            col = {}
            if wD:
                for i, x in wD[j].items():
                    col[off_next + i] = F.norm(-x)
            cols.append(col)
        D[n] = cols
    return VComplex(F, dims, D)


def hom_vcomplex(cat, X, Y, window=None) -> VComplex:
    lo, hi = window or cat.hom_degrees(X, Y)
    dims, D = {}, {}
    for n in range(lo, hi + 1):
        dims[n] = cat.hom_space(X, Y, n).dim
    for n in range(lo, hi + 1):
        sp = cat.hom_space(X, Y, n)
        if n + 1 > hi:
            D[n] = [{} for _ in range(sp.dim)]
            continue
        nxt = cat.hom_space(X, Y, n + 1)
        D[n] = [nxt.coords(b.d()) for b in sp.basis()]
    return VComplex(cat.field, dims, D)


def hom_complex(X: ProjComplex, Y: ProjComplex) -> VComplex:
    return hom_vcomplex(category_of(X.alg), X, Y)


def postcompose_vmap(cat, S, f, V: VComplex, W: VComplex, sign_by_degree=False) -> VMap:
    """u -> f o u : Hom(S, X) -> Hom(S, Y) for degree-0 f."""
    cols = {}
    for n in V.degrees():
        sp, tp = cat.hom_space(S, f.src, n), cat.hom_space(S, f.tgt, n)
        cols[n] = [tp.coords(f @ b) for b in sp.basis()]
    return VMap(V, W, cols)


def precompose_vmap(cat, g, S, V: VComplex, W: VComplex) -> VMap:
    """v -> v o g : Hom(Y, S) -> Hom(X, S) for degree-0 g: X -> Y."""
    cols = {}
    for n in V.degrees():
        sp, tp = cat.hom_space(g.tgt, S, n), cat.hom_space(g.src, S, n)
        cols[n] = [tp.coords(b @ g) for b in sp.basis()]
    return VMap(V, W, cols)


def induced_vmap(X: ProjComplex, f: GradedMap) -> VMap:
    """Hom(X, f) for a closed degree-0 f."""
    cat = category_of(X.alg)
    lo = min(cat.hom_degrees(X, f.src)[0], cat.hom_degrees(X, f.tgt)[0])
    hi = max(cat.hom_degrees(X, f.src)[1], cat.hom_degrees(X, f.tgt)[1])
    V = hom_vcomplex(cat, X, f.src, (lo, hi))
    W = hom_vcomplex(cat, X, f.tgt, (lo, hi))
    return postcompose_vmap(cat, X, f, V, W)


# --- cones ------------------------------------------------------------------

def cone(f: GradedMap, name: str = ""):
    """(Cone(f), inclusion Y -> Cone, projection Cone -> SX)."""
    if f.degree != 0 or not f.is_closed():
        raise ValueError("cone needs a closed degree-0 map")
    X, Y, alg = f.src, f.tgt, f.alg
    degs = sorted({n - 1 for n in X.terms} | set(Y.terms))
    terms, diff = {}, {}
    for n in degs:
        terms[n] = X.term(n + 1) + Y.term(n)
    for n in degs:
        ox, ox1 = len(X.term(n + 1)), len(X.term(n + 2))
        m = {}
        for (r, c), el in X.d(n + 1).items():
            m[(r, c)] = alg.scale(el, -1)
        for (r, c), el in f.comp(n + 1).items():
            m[(ox1 + r, c)] = el
        for (r, c), el in Y.d(n).items():
            m[(ox1 + r, ox + c)] = el
        if m:
            diff[n] = m
    C = ProjComplex(alg, terms, diff, name=name or f"Cone({f.src.name}->{f.tgt.name})", check=False)
    SX = shift(X, 1)
    inc = GradedMap(Y, C, 0, {n: {(len(X.term(n + 1)) + i, i): alg.e(v) for i, v in enumerate(t)}
                              for n, t in Y.terms.items()})
    proj = GradedMap(C, SX, 0, {n: {(i, i): alg.e(v) for i, v in enumerate(X.term(n + 1))}
                                for n in degs if X.term(n + 1)})
    return C, inc, proj


def desusp_cone(j: GradedMap, name: str = ""):
    """V = S^{-1}Cone(j) with V^n = A1^n + A2^{n-1}, d = [[d, 0], [-j, -d]], plus the
    projection f = [1, 0]: V -> A1 and the degree -1 map h = [0, 1]: V -> A2."""
    A1, A2, alg = j.src, j.tgt, j.alg
    degs = sorted(set(A1.terms) | {n + 1 for n in A2.terms})
    terms = {n: A1.term(n) + A2.term(n - 1) for n in degs}
    diff = {}
    for n in degs:
        o1, o1n = len(A1.term(n)), len(A1.term(n + 1))
        m = {}
        for k, el in A1.d(n).items():
            m[k] = el
        for (r, c), el in j.comp(n).items():
            m[(o1n + r, c)] = alg.scale(el, -1)
        for (r, c), el in A2.d(n - 1).items():
            m[(o1n + r, o1 + c)] = alg.scale(el, -1)
        if m:
            diff[n] = m
    V = ProjComplex(alg, terms, diff, name=name or f"hker({j.src.name}->{j.tgt.name})", check=False)
    f = GradedMap(V, A1, 0, {n: {(i, i): alg.e(v) for i, v in enumerate(A1.term(n))} for n in degs})
    h = GradedMap(V, A2, -1, {n: {(i, len(A1.term(n)) + i): alg.e(v) for i, v in enumerate(A2.term(n - 1))}
                              for n in degs})
    return V, f, h


# --- module complexes -------------------------------------------------------------

class ModComplex:
    """Bounded complex of finite-dimensional modules (scratch space for truncations)."""

    def __init__(self, alg, terms: dict, diffs: dict):
        self.alg = alg
        self.terms = terms  # n -> RightModule
        self.diffs = diffs  # n -> ModuleMap terms[n] -> terms[n+1]

    def at_vertex(self, v) -> VComplex:
        F = self.alg.field
        dims = {n: M.dims[v] for n, M in self.terms.items()}
        D = {}
        for n, phi in self.diffs.items():
            m = phi.mats[v]
            D[n] = [{i: m[i][j] for i in range(len(m)) if m[i][j]} for j in range(dims[n])]
        return VComplex(F, dims, D)

    def check_d2(self) -> bool:
        return all(self.at_vertex(v).check_d2() for v in self.alg.vertices)

    def cohomology(self, n) -> dict:
        return {v: self.at_vertex(v).cohomology_dim(n) for v in self.alg.vertices}

    def cohomology_module(self, n) -> RightModule:
        from .modules import quotient
        Z, inc = self.cycle_module(n)
        if n - 1 in self.diffs:
            d = self.diffs[n - 1]
            solver = {v: CoordSolver(self.alg.field, [inc.apply(v, e) for e in _std(Z.dims[v])],
                                     self.terms[n].dims[v]) for v in self.alg.vertices}
            sub = {}
            for v in self.alg.vertices:
                cols = [[row[j] for row in d.mats[v]] for j in range(d.src.dims[v])]
                sub[v] = [solver[v](c) for c in cols]
            return quotient(Z, sub)[0]
        return Z

    def cycle_module(self, n):
        M = self.terms[n]
        if n in self.diffs:
            return module_kernel(self.diffs[n])
        return submodule(M, {v: _std(M.dims[v]) for v in self.alg.vertices})


def _std(n):
    return [[1 if i == j else 0 for i in range(n)] for j in range(n)]


def to_modcomplex(X: ProjComplex) -> ModComplex:
    alg = X.alg
    terms = {n: ProjLayout(alg, X.term(n)).module() for n in X.degrees()}
    diffs = {}
    for n in X.degrees():
        if n + 1 in terms:
            diffs[n] = matrix_module_map(alg, X.term(n), X.term(n + 1), X.d(n))
    return ModComplex(alg, terms, diffs)


def truncate_le0(M: ModComplex) -> ModComplex:
    alg = M.alg
    terms = {n: T for n, T in M.terms.items() if n < 0}
    diffs = {n: phi for n, phi in M.diffs.items() if n < -1}
    if 0 in M.terms:
        Z, inc = M.cycle_module(0)
        terms[0] = Z
        if -1 in M.diffs:
            d = M.diffs[-1]
            solver = {v: CoordSolver(alg.field, [inc.apply(v, e) for e in _std(Z.dims[v])],
                                     M.terms[0].dims[v]) for v in alg.vertices}
            mats = {}
            for v in alg.vertices:
                cols = [solver[v]([row[j] for row in d.mats[v]]) for j in range(d.src.dims[v])]
                mats[v] = columns_to_matrix(cols, Z.dims[v])
            diffs[-1] = ModuleMap(d.src, Z, mats)
    return ModComplex(alg, terms, diffs)


def cohomology(M, n):
    """Dimension vector of H^n (ModComplex) or dimension (VComplex)."""
    if isinstance(M, VComplex):
        return M.cohomology_dim(n)
    return M.cohomology(n)


def is_quasi_iso_mod(S: ModComplex, T: ModComplex, mats: dict, up_to=None) -> bool:
    """Quasi-isomorphism test for a map of module complexes given by ModuleMaps per degree."""
    for v in S.alg.vertices:
        V, W = S.at_vertex(v), T.at_vertex(v)
        cols = {}
        for n, phi in mats.items():
            m = phi.mats[v]
            cols[n] = [{i: m[i][j] for i in range(len(m)) if m[i][j]} for j in range(V.dim(n))]
        if not is_quasi_iso(VMap(V, W, cols), up_to=up_to):
            return False
    return True


# --- linear systems in Hom spaces ------------------------------------------------------

class LinearSystem:
    """Affine system: unknowns in Hom spaces, residual affine in them.

    ``residual(unknowns)`` returns a list of maps (GradedMap or compatible) whose
    joint vanishing is required.
    """

    def __init__(self, cat, spaces, residual):
        self.cat = cat
        self.spaces = spaces
        self.residual = residual
        self.F = cat.field
        zero = [sp.zero() for sp in spaces]
        r0 = residual(zero)
        self.out_spaces = [cat.hom_space(r.src, r.tgt, r.degree) for r in r0]
        self.b = self._flatten(r0)
        self.nvars = sum(sp.dim for sp in spaces)
        self.cols = []
        for k, sp in enumerate(spaces):
            for i in range(sp.dim):
                args = list(zero)
                args[k] = sp.basis_element(i)
                r = self._flatten(residual(args))
                col = {key: self.F.norm(x - self.b.get(key, 0)) for key, x in r.items()}
                for key, x in self.b.items():
                    if key not in r:
                        col[key] = self.F.norm(-x)
                self.cols.append({k2: v for k2, v in col.items() if v})

    def _flatten(self, maps) -> dict:
        out = {}
        for k, (m, sp) in enumerate(zip(maps, self.out_spaces)):
            for i, x in sp.coords(m).items():
                out[(k, i)] = x
        return out

    def _rows(self):
        rows = {}
        for j, col in enumerate(self.cols):
            for key, x in col.items():
                rows.setdefault(key, {})[j] = x
        return rows

    def _split(self, vec):
        out, pos = [], 0
        for sp in self.spaces:
            out.append(sp.element(vec[pos:pos + sp.dim]))
            pos += sp.dim
        return out

    def solve(self):
        rows = self._rows()
        keys = list(rows) + [k for k in self.b if k not in rows]
        rhs = [self.F.norm(-self.b.get(k, 0)) for k in keys]
        x = solve_sparse([rows.get(k, {}) for k in keys], rhs, self.nvars, self.F)
        if x is None:
            return None
        return self._split(x)

    def kernel(self) -> list:
        rows = self._rows()
        return [self._split(v) for v in kernel_sparse(list(rows.values()), self.nvars, self.F)]

    def random_solution(self, rng):
        base = self.solve()
        if base is None:
            return None
        F = self.F
        for kv in self.kernel():
            c = F.random(rng)
            if c:
                base = [a + b.scale(c) for a, b in zip(base, kv)]
        return base


def solve_affine(cat, spaces, residual):
    return LinearSystem(cat, spaces, residual).solve()


def null_homotopy(f: GradedMap):
    """h of degree |f| - 1 with d(h) = f, or None."""
    cat = cat_of(f)
    sp = cat.hom_space(f.src, f.tgt, f.degree - 1)
    sol = solve_affine(cat, [sp], lambda u: [u[0].d() - f])
    return sol[0] if sol else None


def homotopy_inverse(f: GradedMap):
    """(g, h1, h2) with d(h1) = g f - 1 and d(h2) = f g - 1, or None."""
    cat = cat_of(f)
    X, Y = f.src, f.tgt
    spaces = [cat.hom_space(Y, X, 0), cat.hom_space(X, X, -1), cat.hom_space(Y, Y, -1)]
    idX, idY = cat.identity(X), cat.identity(Y)

    def res(u):
        g, h1, h2 = u
        return [g.d(), g @ f - idX - h1.d(), f @ g - idY - h2.d()]

    sol = solve_affine(cat, spaces, res)
    return tuple(sol) if sol else None


def is_homotopy_equivalence(f: GradedMap) -> bool:
    return homotopy_inverse(f) is not None


def h0_basis(X: ProjComplex, Y: ProjComplex) -> list:
    """Closed degree-0 maps X -> Y representing a basis of H^0 Hom(X, Y)."""
    return cohomology_basis(X, Y, 0)


def cohomology_basis(X, Y, p, cat=None) -> list:
    cat = cat or category_of(X.alg)
    sp = cat.hom_space(X, Y, p)
    nxt = cat.hom_space(X, Y, p + 1)
    prev = cat.hom_space(X, Y, p - 1)
    F = cat.field
    rows = {}
    for j, b in enumerate(sp.basis()):
        for i, x in nxt.coords(b.d()).items():
            rows.setdefault(i, {})[j] = x
    cyc = kernel_sparse(list(rows.values()), sp.dim, F)
    ech = Echelon(F)
    for b in prev.basis():
        ech.add(sp.coords(b.d()))
    out = []
    for z in cyc:
        if ech.add({i: x for i, x in enumerate(z) if x}):
            out.append(sp.element(z))
    return out


class CohomologySpace:
    """H^p Hom(X, Y) with canonical coordinates of classes."""

    def __init__(self, X, Y, p, cat=None):
        self.cat = cat or category_of(X.alg)
        self.X, self.Y, self.p = X, Y, p
        self.space = self.cat.hom_space(X, Y, p)
        F = self.cat.field
        self.F = F
        prev = self.cat.hom_space(X, Y, p - 1)
        self.bound = Echelon(F)
        for b in prev.basis():
            self.bound.add(self.space.coords(b.d()))
        self.basis = cohomology_basis(X, Y, p, self.cat)
        # coordinates: reduce modulo boundaries, then express in reduced basis
        n = self.space.dim
        self._solver = CoordSolver(F, [self._reduced(b) for b in self.basis], n)

    def _reduced(self, f) -> list:
        r = self.bound.reduce(self.space.coords(f))
        v = [0] * self.space.dim
        for i, x in r.items():
            v[i] = x
        return v

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, f) -> list:
        c = self._solver(self._reduced(f))
        if c is None:
            raise ValueError("map is not a cocycle")
        return c

    def is_zero(self, f) -> bool:
        return not any(self.coords(f))

    def element(self, coords) -> GradedMap:
        out = self.space.zero()
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out
