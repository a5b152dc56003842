"""Stability checks, the stable => triangulated verification, and the dg category of
finite-dimensional super vector spaces with its closed-form homotopy kernels."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .complexes import cohomology_basis
from .exactness import ProbeSet, check_exactness, homotopy_cokernel, homotopy_kernel, is_left_exact, is_right_exact
from .h3t import HComplex3, equivalence6, validate_h3
from .linalg import Echelon, GF, kernel_sparse, sparse

_uid = itertools.count(1)


# --- objects and maps ---------------------------------------------------------------------

class SVObj:
    """V = V_0 + V_1 with basis ordered (even part, odd part)."""

    __slots__ = ("d0", "d1", "name", "uid", "cat")

    def __init__(self, cat, d0: int, d1: int, name: str = ""):
        self.cat, self.d0, self.d1 = cat, d0, d1
        self.name = name or f"({d0},{d1})"
        self.uid = next(_uid)

    @property
    def dim(self):
        return self.d0 + self.d1

    def __repr__(self):
        return f"SVObj{self.name}"


def _blocks(X, Y, p):
    """Allowed (row, col) index ranges of Hom^p(X, Y) as (tgt parity, src parity) pairs."""
    if p >= 2:
        return []
    if p == 1:
        return [(1, 0)]
    return [(0, 0), (1, 1)] if p % 2 == 0 else [(1, 0), (0, 1)]


class SVMap:
    """Homogeneous map of degree p as a dense (dim Y) x (dim X) matrix."""

    __slots__ = ("src", "tgt", "degree", "m")

    def __init__(self, src: SVObj, tgt: SVObj, degree: int, m=None):
        self.src, self.tgt, self.degree = src, tgt, degree
        F = src.cat.field
        if m is None:
            m = [[0] * src.dim for _ in range(tgt.dim)]
        self.m = [[F.norm(x) for x in row] for row in m]

    @property
    def cat(self):
        return self.src.cat

    @property
    def alg(self):
        return None

    def _new(self, m, degree=None):
        return SVMap(self.src, self.tgt, self.degree if degree is None else degree, m)

    def __add__(self, other):
        self._check(other)
        return self._new([[a + b for a, b in zip(r, s)] for r, s in zip(self.m, other.m)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return self._new([[c * a for a in r] for r in self.m])

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, f: "SVMap") -> "SVMap":
        if f.tgt is not self.src:
            raise ValueError("non-composable maps")
        deg = self.degree + f.degree
        if deg >= 2:
            return SVMap(f.src, self.tgt, deg)
        F = self.cat.field
        inner = self.src.dim
        m = [[F.norm(sum(self.m[i][k] * f.m[k][j] for k in range(inner))) for j in range(f.src.dim)]
             for i in range(self.tgt.dim)]
        return SVMap(f.src, self.tgt, deg, m)

    def d(self) -> "SVMap":
        return SVMap(self.src, self.tgt, self.degree + 1)

    def is_zero(self) -> bool:
        return not any(x for r in self.m for x in r)

    def is_closed(self) -> bool:
        return True

    def __eq__(self, other):
        return isinstance(other, SVMap) and self.degree == other.degree and (self - other).is_zero()

    __hash__ = None

    def _check(self, other):
        if other.src is not self.src or other.tgt is not self.tgt or other.degree != self.degree:
            raise ValueError("maps live in different Hom spaces")

    def retarget(self, src=None, tgt=None):
        return SVMap(src or self.src, tgt or self.tgt, self.degree, self.m)

    def __repr__(self):
        return f"SVMap({self.src.name}->{self.tgt.name}, deg {self.degree}, {self.m})"


class SVHomSpace:
    def __init__(self, X: SVObj, Y: SVObj, p: int):
        self.X, self.Y, self.p = X, Y, p
        rng_ = {0: range(0, X.d0), 1: range(X.d0, X.dim)}
        trg = {0: range(0, Y.d0), 1: range(Y.d0, Y.dim)}
        self.slots = [(i, j) for (tp, sp) in _blocks(X, Y, p) for i in trg[tp] for j in rng_[sp]]
        self.index = {s: k for k, s in enumerate(self.slots)}

    @property
    def dim(self):
        return len(self.slots)

    def coords(self, f: SVMap) -> dict:
        out = {}
        for (i, j), k in self.index.items():
            if f.m[i][j]:
                out[k] = f.m[i][j]
        return out

    def element(self, vec) -> SVMap:
        m = [[0] * self.X.dim for _ in range(self.Y.dim)]
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        for k, x in items:
            if x:
                i, j = self.slots[k]
                m[i][j] = x
        return SVMap(self.X, self.Y, self.p, m)

    def basis_element(self, k) -> SVMap:
        return self.element({k: 1})

    def basis(self):
        return [self.basis_element(k) for k in range(self.dim)]

    def zero(self) -> SVMap:
        return SVMap(self.X, self.Y, self.p)

    def random(self, rng) -> SVMap:
        F = self.X.cat.field
        return self.element([F.random(rng) for _ in range(self.dim)])


class SVCat:
    """The dg category of finite-dimensional super vector spaces (differential zero)."""

    window = (-4, 1)  # Hom is 2-periodic below 0; four degrees cover every check
    truncated_below = True

    def __init__(self, field=None):
        self.field = field or GF(2)
        self._spaces = {}
        self._objs = {}

    def obj(self, d0: int, d1: int) -> SVObj:
        key = (d0, d1)
        if key not in self._objs:
            self._objs[key] = SVObj(self, d0, d1)
        return self._objs[key]

    def hom_space(self, X, Y, p) -> SVHomSpace:
        key = (X.uid, Y.uid, p)
        sp = self._spaces.get(key)
        if sp is None:
            sp = self._spaces[key] = SVHomSpace(X, Y, p)
        return sp

    def hom_degrees(self, X, Y):
        return self.window

    def identity(self, X) -> SVMap:
        return SVMap(X, X, 0, [[1 if i == j else 0 for j in range(X.dim)] for i in range(X.dim)])

    def zero(self, X, Y, p=0) -> SVMap:
        return SVMap(X, Y, p)

    def shift(self, X) -> SVObj:
        return self.obj(X.d1, X.d0)

    def direct_sum(self, objs):
        d0 = sum(X.d0 for X in objs)
        d1 = sum(X.d1 for X in objs)
        S = SVObj(self, d0, d1, "+".join(X.name for X in objs))
        incs, projs = [], []
        o0, o1 = 0, d0
        for X in objs:
            idx = list(range(o0, o0 + X.d0)) + list(range(o1, o1 + X.d1))
            inc = [[1 if idx[j] == i else 0 for j in range(X.dim)] for i in range(S.dim)]
            incs.append(SVMap(X, S, 0, inc))
            projs.append(SVMap(S, X, 0, [list(r) for r in zip(*inc)] if X.dim else []))
            o0 += X.d0
            o1 += X.d1
        return S, incs, projs

    def default_probes(self) -> ProbeSet:
        return ProbeSet([self.obj(1, 0), self.obj(0, 1)], 0, "super {(1,0), (0,1)}")

    def objects(self, max_dim: int):
        return [self.obj(a, b) for n in range(max_dim + 1) for a in range(n + 1) for b in [n - a]]

    def homotopy_kernel(self, g):
        return sv_homotopy_kernel(g)

    def homotopy_cokernel(self, f):
        return sv_homotopy_cokernel(f)


def sv_hom_complex(cat: SVCat, V: SVObj, W: SVObj, lo: int = -4) -> dict:
    """Graded dimensions of Hom(V, W) for degrees lo..1 (zero above)."""
    return {n: cat.hom_space(V, W, n).dim for n in range(lo, 2)}


# --- closed-form kernels -------------------------------------------------------------------

def _even_blocks(f: SVMap):
    X, Y = f.src, f.tgt
    f0 = [row[:X.d0] for row in f.m[:Y.d0]]
    f1 = [row[X.d0:] for row in f.m[Y.d0:]]
    return f0, f1


def _ker_coker(F, m, ncols, nrows):
    """(kernel basis, cokernel free rows, section of the cokernel projection)."""
    rows = [sparse(r) for r in m]
    ker = kernel_sparse(rows, ncols, F)
    ech = Echelon(F)
    for j in range(ncols):
        ech.add({i: m[i][j] for i in range(nrows) if m[i][j]})
    free = [i for i in range(nrows) if i not in ech.rows]
    proj = []
    for i in free:
        proj.append([0] * nrows)
    pos = {i: k for k, i in enumerate(free)}
    for r in range(nrows):
        for k, x in ech.reduce({r: 1}).items():
            proj[pos[k]][r] = x
    return ker, free, proj


def _retraction(F, basis, n):
    """Rows r with r(basis_k) = e_k (a left inverse of the inclusion of span(basis))."""
    if not basis:
        return []
    from .linalg import Mat, solve
    # solve for each coordinate functional: columns = basis vectors; rows of R satisfy R B = I
    B = Mat.from_rows(F, [[b[i] for b in basis] for i in range(n)])
    BT = B.T()
    out = []
    for k in range(len(basis)):
        e = [1 if i == k else 0 for i in range(len(basis))]
        x = solve(BT, e)
        out.append(x)
    return out


def sv_homotopy_kernel(g: SVMap, zero_homotopy: bool = False) -> HComplex3:
    """ker(g) + S cok(g) --[inc, 0]--> V --g--> V'.

    The homotopy is [0, s] with s: S cok(g) -> V' of degree -1 a section of the cokernel
    projection; ``zero_homotopy=True`` uses h = 0 instead (not left exact once cok g != 0)."""
    if g.degree != 0:
        raise ValueError("expected an even (degree-0) map")
    cat, F = g.cat, g.cat.field
    V, W = g.src, g.tgt
    f0, f1 = _even_blocks(g)
    k0, fr0, _ = _ker_coker(F, f0, V.d0, W.d0)
    k1, fr1, _ = _ker_coker(F, f1, V.d1, W.d1)
    # ker = (len k0, len k1); cok = (len fr0, len fr1); S cok = (len fr1, len fr0)
    K = SVObj(cat, len(k0) + len(fr1), len(k1) + len(fr0), name=f"hker({V.name}->{W.name})")
    inc = [[0] * K.dim for _ in range(V.dim)]
    for c, v in enumerate(k0):
        for i, x in enumerate(v):
            inc[i][c] = x
    for c, v in enumerate(k1):
        for i, x in enumerate(v):
            inc[V.d0 + i][K.d0 + c] = x
    f = SVMap(K, V, 0, inc)
    h = [[0] * K.dim for _ in range(W.dim)]
    if not zero_homotopy:
        # S cok even part (cok_1) sits at K even columns len(k0).., maps by degree -1 into W_1
        for c, i in enumerate(fr1):
            h[W.d0 + i][len(k0) + c] = 1
        for c, i in enumerate(fr0):
            h[i][K.d0 + len(k1) + c] = 1
    return validate_h3(K, V, W, f, g, SVMap(K, W, -1, h), name=K.name)


def sv_homotopy_cokernel(f: SVMap, zero_homotopy: bool = False) -> HComplex3:
    """V --f--> V' --[pr, 0]^T--> cok(f) + S ker(f), homotopy [0; r] with r a retraction
    onto ker(f) of degree -1 (``zero_homotopy=True`` uses 0)."""
    if f.degree != 0:
        raise ValueError("expected an even (degree-0) map")
    cat, F = f.cat, f.cat.field
    V, W = f.src, f.tgt
    f0, f1 = _even_blocks(f)
    k0, fr0, p0 = _ker_coker(F, f0, V.d0, W.d0)
    k1, fr1, p1 = _ker_coker(F, f1, V.d1, W.d1)
    C = SVObj(cat, len(fr0) + len(k1), len(fr1) + len(k0), name=f"hcok({V.name}->{W.name})")
    pr = [[0] * W.dim for _ in range(C.dim)]
    for r, row in enumerate(p0):
        for i, x in enumerate(row):
            pr[r][i] = x
    for r, row in enumerate(p1):
        for i, x in enumerate(row):
            pr[C.d0 + r][W.d0 + i] = x
    j = SVMap(W, C, 0, pr)
    h = [[0] * V.dim for _ in range(C.dim)]
    if not zero_homotopy:
        r0 = _retraction(F, k0, V.d0)  # V_0 -> ker_0, lands in (S ker)_1 = odd part of C
        r1 = _retraction(F, k1, V.d1)
        for a, row in enumerate(r0):
            for i, x in enumerate(row):
                h[C.d0 + len(fr1) + a][i] = x
        for a, row in enumerate(r1):
            for i, x in enumerate(row):
                h[len(fr0) + a][V.d0 + i] = x
    return validate_h3(V, W, C, f, j, SVMap(V, C, -1, h), name=C.name)


def sv_maps(cat: SVCat, V: SVObj, W: SVObj, degree: int = 0):
    """Every map of the given degree (exhaustive over a finite field)."""
    sp = cat.hom_space(V, W, degree)
    F = cat.field
    for vec in itertools.product(range(F.p), repeat=sp.dim):
        yield sp.element(list(vec))


# --- stability -------------------------------------------------------------------------------

@dataclass
class StabilityReport:
    kernels_checked: int = 0
    cokernels_checked: int = 0
    hcomplexes_checked: int = 0
    missing_kernels: list = field(default_factory=list)
    missing_cokernels: list = field(default_factory=list)
    lr_mismatch: list = field(default_factory=list)

    @property
    def condition_a(self) -> bool:
        return not self.missing_kernels and not self.missing_cokernels

    @property
    def condition_b(self) -> bool:
        return not self.lr_mismatch

    @property
    def stable(self) -> bool:
        return self.condition_a and self.condition_b


class SVModel:
    """Exhaustive finite fixture for the super-vector category over a prime field."""

    def __init__(self, cat: SVCat | None = None, max_dim: int = 2, total_dim: int | None = None):
        self.cat = cat or SVCat()
        self.max_dim, self.total_dim = max_dim, total_dim
        self.probes = self.cat.default_probes()

    def morphisms(self):
        objs = self.cat.objects(self.max_dim)
        for V in objs:
            for W in objs:
                yield from sv_maps(self.cat, V, W)

    def hcomplexes(self):
        cat = self.cat
        objs = cat.objects(self.max_dim)
        for A0, A1, A2 in itertools.product(objs, repeat=3):
            if self.total_dim is not None and A0.dim + A1.dim + A2.dim > self.total_dim:
                continue
            for f in sv_maps(cat, A0, A1):
                for j in sv_maps(cat, A1, A2):
                    if not (j @ f).is_zero():
                        continue
                    for h in sv_maps(cat, A0, A2, -1):
                        yield HComplex3(A0, A1, A2, f, j, h)

    def kernel(self, g):
        return sv_homotopy_kernel(g)

    def cokernel(self, f):
        return sv_homotopy_cokernel(f)


class TwoTermModel:
    """Seeded samples in the two-term subcategory over a finite-dimensional algebra."""

    def __init__(self, objects: dict, samples: int = 50, seed: int = 0):
        self.objects = list(objects.values())
        self.samples, self.seed = samples, seed
        self.alg = self.objects[0].alg
        from .exactness import two_term_probes
        self.probes = two_term_probes(self.alg)

    def _rand(self, X, Y, rng):
        out = None
        for b in cohomology_basis(X, Y, 0):
            c = self.alg.field.random(rng)
            out = b.scale(c) if out is None else out + b.scale(c)
        from .complexes import zero_map
        return out if out is not None else zero_map(X, Y, 0)

    def morphisms(self):
        rng = random.Random(self.seed)
        for _ in range(self.samples):
            yield self._rand(rng.choice(self.objects), rng.choice(self.objects), rng)

    def hcomplexes(self):
        for g in self.morphisms():
            K = homotopy_kernel(g)
            if K is not None:
                yield K
            C = homotopy_cokernel(g)
            if C is not None:
                yield C

    def kernel(self, g):
        return homotopy_kernel(g)

    def cokernel(self, f):
        return homotopy_cokernel(f)


class ZeroModel:
    probes = None

    def morphisms(self):
        return iter(())

    def hcomplexes(self):
        return iter(())


def is_stable(model, stop_at_first: bool = False) -> StabilityReport:
    rep = StabilityReport()
    for g in model.morphisms():
        K = model.kernel(g)
        rep.kernels_checked += 1
        if K is None or not is_left_exact(K, model.probes):
            rep.missing_kernels.append(g)
        C = model.cokernel(g)
        rep.cokernels_checked += 1
        if C is None or not is_right_exact(C, model.probes):
            rep.missing_cokernels.append(g)
        if stop_at_first and not rep.condition_a:
            return rep
    for X in model.hcomplexes():
        rep.hcomplexes_checked += 1
        if is_left_exact(X, model.probes) != is_right_exact(X, model.probes):
            rep.lr_mismatch.append(X)
            if stop_at_first:
                return rep
    return rep


# --- stable => triangulated ------------------------------------------------------------------

@dataclass
class TriangulatedReport:
    morphisms_checked: int = 0
    not_inflation: list = field(default_factory=list)
    not_deflation: list = field(default_factory=list)
    shift_conflations: int = 0
    bad_shift: list = field(default_factory=list)
    ext_counts: dict = field(default_factory=dict)  # (C, A) -> (classes, expected)

    @property
    def ok(self) -> bool:
        return (not self.not_inflation and not self.not_deflation and not self.bad_shift
                and all(a == b for a, b in self.ext_counts.values()))


def stable_gives_triangulated(model: SVModel, ext_dim: int = 1, require_stable: bool = True) -> TriangulatedReport:
    if require_stable and not is_stable(model, stop_at_first=True).stable:
        raise ValueError("model is not certified stable")
    cat = model.cat
    rep = TriangulatedReport()
    for f in model.morphisms():
        rep.morphisms_checked += 1
        C = sv_homotopy_cokernel(f)
        if not check_exactness(C, model.probes).short:
            rep.not_inflation.append(f)
        K = sv_homotopy_kernel(f)
        if not check_exactness(K, model.probes).short:
            rep.not_deflation.append(f)
    zero = cat.obj(0, 0)
    for V in cat.objects(model.max_dim):
        X = sv_homotopy_cokernel(cat.zero(V, zero))
        rep.shift_conflations += 1
        if not check_exactness(X, model.probes).short or (X.A2.d0, X.A2.d1) != (V.d1, V.d0):
            rep.bad_shift.append(V)
    for C in cat.objects(ext_dim):
        for A in cat.objects(ext_dim):
            if C.dim == 0 or A.dim == 0:
                continue
            n = count_extensions(cat, C, A, model.probes)
            expected = cat.field.p ** (C.d0 * A.d1 + C.d1 * A.d0)
            rep.ext_counts[(C.name, A.name)] = (n, expected)
    return rep


def count_extensions(cat: SVCat, C: SVObj, A: SVObj, probes) -> int:
    """Number of equivalence classes of conflations A -> B -> C (exhaustive)."""
    reps = []
    for B in cat.objects(C.dim + A.dim):
        for f in sv_maps(cat, A, B):
            for j in sv_maps(cat, B, C):
                if not (j @ f).is_zero():
                    continue
                for h in sv_maps(cat, A, C, -1):
                    X = HComplex3(A, B, C, f, j, h)
                    if not check_exactness(X, probes).short:
                        continue
                    if not any(equivalence6(X, Y) is not None for Y in reps):
                        reps.append(X)
    return len(reps)
