"""Homotopy left/right exactness, homotopy kernels and cokernels, pullbacks, pushouts and
the lifting lemmas, all decided by finite linear algebra against probe objects."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import InputError
from .complexes import (GradedMap, LinearSystem, ProjComplex, VMap, cat_of, category_of, cohomology_basis,
                        desusp_cone, desuspended_cone, direct_sum, hom_vcomplex, homotopy_inverse, shift,
                        stalk_A)
from .h3t import HComplex3, HSquare, MorMorphism, SixTuple, six_spaces, validate_h3
from .linalg import Echelon, sparse
from .modules import CoordSolver, ProjLayout, is_projective, kernel, mat_mul, matrix_module_map, top_generators


# --- direct sums in any model ------------------------------------------------------

def sum_object(cat, objs):
    """(S, inclusions, projections) in the given category."""
    if hasattr(cat, "direct_sum"):
        return cat.direct_sum(objs)
    return direct_sum(objs)


def map_into_sum(cat, S, maps):
    obj, incs, _ = S
    out = None
    for inc, m in zip(incs, maps):
        g = inc @ m
        out = g if out is None else out + g
    return out


def map_out_of_sum(cat, S, maps):
    obj, _, projs = S
    out = None
    for pr, m in zip(projs, maps):
        g = m @ pr
        out = g if out is None else out + g
    return out


# --- probes and subcategories ------------------------------------------------------

@dataclass
class ProbeSet:
    """Finite stand-in for "every object S": the probes, and the top degree checked
    (0 for tau<=0 comparisons, None for full quasi-isomorphisms)."""

    probes: list
    bound: int | None = 0
    label: str = ""

    def __post_init__(self):
        if not self.probes:
            raise ValueError("a probe set must be nonempty")


def two_term_probes(alg) -> ProbeSet:
    A = stalk_A(alg)
    return ProbeSet([A, shift(A, 1)], 0, "two-term {A, SA}")


def ambient_probes(alg) -> ProbeSet:
    return ProbeSet([stalk_A(alg)], None, "ambient {A}, all degrees")


@dataclass
class SubcategorySpec:
    """Either an amplitude window [a, b] or an explicit list of objects (plus their sums)."""

    amplitude: tuple | None = (-1, 0)
    objects: list | None = None

    def contains(self, X) -> bool:
        if self.objects is not None:
            return any(X is Y for Y in self.objects)
        a, b = self.amplitude
        return all(a <= n <= b for n in X.terms)

    def probes(self, alg) -> ProbeSet:
        if self.objects is not None:
            return ProbeSet(list(self.objects), 0, "listed objects (relative)")
        a, b = self.amplitude
        A = stalk_A(alg)
        return ProbeSet([shift(A, -a - 1 + k) for k in range(b - a + 1)] if b > a else [shift(A, -a)], 0,
                        f"amplitude [{a},{b}]")

    @property
    def is_two_term(self) -> bool:
        return self.objects is None and tuple(self.amplitude) == (-1, 0)


TWO_TERM = SubcategorySpec((-1, 0))


# --- comparison maps -----------------------------------------------------------------

def _window(cat, S, objs, probe_first=True):
    if hasattr(cat, "window"):
        return cat.window
    lo, hi = None, None
    for Y in objs:
        a, b = cat.hom_degrees(S, Y) if probe_first else cat.hom_degrees(Y, S)
        if a > b:
            continue
        lo = a if lo is None else min(lo, a)
        hi = b if hi is None else max(hi, b)
    if lo is None:
        return (0, 0)
    return (lo, hi + 1)


def _degrees(cat, window, bound):
    lo, hi = window
    if getattr(cat, "truncated_below", False):
        lo += 2
    return [n for n in range(lo, hi + 1) if bound is None or n <= bound]


def hker_comparison_map(X: HComplex3, S, window=None) -> VMap:
    """alpha: Hom(S, A0) -> S^{-1}Cone(Hom(S, j)), u -> (f u, h u)."""
    cat = cat_of(X.f)
    window = window or _window(cat, S, [X.A0, X.A1, X.A2])
    V0 = hom_vcomplex(cat, S, X.A0, window)
    V1 = hom_vcomplex(cat, S, X.A1, window)
    V2 = hom_vcomplex(cat, S, X.A2, window)
    phi = _post(cat, S, X.j, V1, V2)
    C = desuspended_cone(phi)
    cols = {}
    for n in V0.degrees():
        sp = cat.hom_space(S, X.A0, n)
        t1 = cat.hom_space(S, X.A1, n)
        off = V1.dim(n)
        t2 = cat.hom_space(S, X.A2, n - 1) if V2.dim(n - 1) else None
        col = []
        for b in sp.basis():
            c = dict(t1.coords(X.f @ b))
            if t2 is not None:
                for i, x in t2.coords(X.h @ b).items():
                    c[off + i] = x
            col.append(c)
        cols[n] = col
    return VMap(V0, C, cols)


def hcok_comparison_map(X: HComplex3, S, window=None) -> VMap:
    """beta: Hom(A2, S) -> S^{-1}Cone(Hom(f, S)), u -> (u j, (-1)^n u h)."""
    cat = cat_of(X.f)
    window = window or _window(cat, S, [X.A0, X.A1, X.A2], probe_first=False)
    V2 = hom_vcomplex(cat, X.A2, S, window)
    V1 = hom_vcomplex(cat, X.A1, S, window)
    V0 = hom_vcomplex(cat, X.A0, S, window)
    phi = _pre(cat, X.f, S, V1, V0)
    C = desuspended_cone(phi)
    cols = {}
    for n in V2.degrees():
        sp = cat.hom_space(X.A2, S, n)
        t1 = cat.hom_space(X.A1, S, n)
        off = V1.dim(n)
        t0 = cat.hom_space(X.A0, S, n - 1) if V0.dim(n - 1) else None
        sgn = -1 if n % 2 else 1
        col = []
        for b in sp.basis():
            c = dict(t1.coords(b @ X.j))
            if t0 is not None:
                for i, x in t0.coords((b @ X.h).scale(sgn)).items():
                    c[off + i] = x
            col.append(c)
        cols[n] = col
    return VMap(V2, C, cols)


def _post(cat, S, f, V, W):
    cols = {}
    for n in V.degrees():
        sp, tp = cat.hom_space(S, f.src, n), cat.hom_space(S, f.tgt, n)
        cols[n] = [tp.coords(f @ b) for b in sp.basis()]
    return VMap(V, W, cols)


def _pre(cat, g, S, V, W):
    cols = {}
    for n in V.degrees():
        sp, tp = cat.hom_space(g.tgt, S, n), cat.hom_space(g.src, S, n)
        cols[n] = [tp.coords(b @ g) for b in sp.basis()]
    return VMap(V, W, cols)


# --- verdicts ------------------------------------------------------------------------

@dataclass
class ExactnessVerdict:
    left: bool
    right: bool
    left_failures: dict = field(default_factory=dict)  # probe label -> failing degrees
    right_failures: dict = field(default_factory=dict)
    probes: str = ""

    @property
    def short(self) -> bool:
        return self.left and self.right


def _probe_label(S, k):
    return getattr(S, "name", "") or f"probe{k}"


def left_failures(X: HComplex3, probes: ProbeSet) -> dict:
    cat = cat_of(X.f)
    out = {}
    for k, S in enumerate(probes.probes):
        window = _window(cat, S, [X.A0, X.A1, X.A2])
        alpha = hker_comparison_map(X, S, window)
        bad = alpha.failure_degrees(_degrees(cat, window, probes.bound))
        if bad:
            out[_probe_label(S, k)] = bad
    return out


def right_failures(X: HComplex3, probes: ProbeSet) -> dict:
    cat = cat_of(X.f)
    out = {}
    for k, S in enumerate(probes.probes):
        window = _window(cat, S, [X.A0, X.A1, X.A2], probe_first=False)
        beta = hcok_comparison_map(X, S, window)
        bad = beta.failure_degrees(_degrees(cat, window, probes.bound))
        if bad:
            out[_probe_label(S, k)] = bad
    return out


def _default_probes(X, probes):
    if probes is not None:
        return probes
    cat = cat_of(X.f)
    if hasattr(cat, "default_probes"):
        return cat.default_probes()
    return two_term_probes(X.alg)


def is_left_exact(X: HComplex3, probes: ProbeSet | None = None) -> bool:
    return not left_failures(X, _default_probes(X, probes))


def is_right_exact(X: HComplex3, probes: ProbeSet | None = None) -> bool:
    return not right_failures(X, _default_probes(X, probes))


def check_exactness(X: HComplex3, probes: ProbeSet | None = None) -> ExactnessVerdict:
    probes = _default_probes(X, probes)
    lf, rf = left_failures(X, probes), right_failures(X, probes)
    return ExactnessVerdict(not lf, not rf, lf, rf, probes.label)


def is_ambient_exact(X: HComplex3) -> bool:
    """Short exact in the pretriangulated hull: full quasi-isomorphisms against A."""
    return check_exactness(X, ambient_probes(X.alg)).short


# --- the two-term M-construction -----------------------------------------------------

def _require_two_term(*objs):
    for Y in objs:
        if any(n not in (-1, 0) for n in Y.terms):
            raise InputError(f"{Y.name or 'object'} is not a two-term complex (degrees {sorted(Y.terms)})")


def _blocks(blocks, row_offsets, col_offsets):
    out = {}
    for (bi, bj), m in blocks.items():
        for (r, c), el in m.items():
            if el:
                out[(row_offsets[bi] + r, col_offsets[bj] + c)] = el
    return out


def _neg(alg, m):
    return {k: alg.scale(el, -1) for k, el in m.items()}


@dataclass
class MData:
    """M = Z^0(S^{-1}Cone(g)) for g: Q -> R between two-term complexes."""

    M: object
    inc: object  # M -> Q^0 + R^{-1}
    layout: ProjLayout  # of Q^0 + R^{-1}
    im_dv: dict  # per-vertex image of d_V^{-1}: Q^{-1} -> M, in M-coordinates


def m_module(g: GradedMap) -> MData:
    Q, R, alg = g.src, g.tgt, g.alg
    q0, rm1, r0, qm1 = Q.term(0), R.term(-1), R.term(0), Q.term(-1)
    N_layout = ProjLayout(alg, q0 + rm1)
    kappa = matrix_module_map(alg, q0 + rm1, r0,
                              _blocks({(0, 0): _neg(alg, g.comp(0)), (0, 1): _neg(alg, R.d(-1))},
                                      [0], [0, len(q0)]))
    M, inc = kernel(kappa)
    dv = matrix_module_map(alg, qm1, q0 + rm1,
                           _blocks({(0, 0): Q.d(-1), (1, 0): _neg(alg, g.comp(-1))}, [0, len(q0)], [0]))
    im = {}
    for x in alg.vertices:
        solver = CoordSolver(alg.field, [inc.apply(x, e) for e in _std(M.dims[x])], len(N_layout.slots[x]))
        vecs = []
        for j in range(dv.src.dims[x]):
            col = [row[j] for row in dv.mats[x]]
            c = solver(col)
            if c is None:
                raise ArithmeticError("d_V does not land in M")
            vecs.append(c)
        im[x] = vecs
    return MData(M, inc, N_layout, im)


def _std(n):
    return [[1 if i == j else 0 for i in range(n)] for j in range(n)]


def two_term_kernel_data(g: GradedMap):
    """Build (P, f, h) from generators of M and the kernel K of P^0 + Q^{-1} -> M.

    Returns (P, f, h, K_projective).  When K is not projective the returned P is the
    candidate built from a projective cover of K and fails left exactness."""
    Q, R, alg = g.src, g.tgt, g.alg
    data = m_module(g)
    q0, rm1, qm1 = Q.term(0), R.term(-1), Q.term(-1)
    gens = top_generators(data.M, data.im_dv)
    p0 = [u for u, _ in gens]
    # phi^0 = (f^0, h^0): P^0 -> Q^0 + R^{-1}
    f0, h0 = {}, {}
    for c, (u, m) in enumerate(gens):
        vec = data.inc.apply(u, m)
        for i, el in data.layout.vector_elements(u, vec).items():
            if i < len(q0):
                f0[(i, c)] = el
            else:
                h0[(i - len(q0), c)] = el
    # psi: P^0 + Q^{-1} -> Q^0 + R^{-1}, (p, q) -> phi^0 p + d_V q
    psi = matrix_module_map(alg, p0 + qm1, q0 + rm1,
                            _blocks({(0, 0): f0, (1, 0): h0, (0, 1): Q.d(-1), (1, 1): _neg(alg, g.comp(-1))},
                                    [0, len(q0)], [0, len(p0)]))
    K, kinc = kernel(psi)
    projective = is_projective(K)
    kgens = top_generators(K)
    src_layout = ProjLayout(alg, p0 + qm1)
    pm1 = [w for w, _ in kgens]
    dP, fm1 = {}, {}
    for c, (w, k) in enumerate(kgens):
        vec = kinc.apply(w, k)
        for i, el in src_layout.vector_elements(w, vec).items():
            if i < len(p0):
                dP[(i, c)] = alg.scale(el, -1)
            else:
                fm1[(i - len(p0), c)] = el
    P = ProjComplex(alg, {-1: pm1, 0: p0}, {-1: dP} if dP else {}, name=f"hker({g_name(g)})")
    f = GradedMap(P, Q, 0, {0: f0, -1: fm1})
    h = GradedMap(P, R, -1, {0: h0})
    return P, f, h, projective


def g_name(g):
    return f"{g.src.name or '?'}->{g.tgt.name or '?'}"


def two_term_left_exact(X: HComplex3) -> bool:
    """Exactness of 0 -> P^{-1} -> P^0 + Q^{-1} -> M -> 0, vertex by vertex."""
    P, Q, R, alg = X.A0, X.A1, X.A2, X.alg
    _require_two_term(P, Q, R)
    F = alg.field
    data = m_module(X.j)
    q0, rm1, qm1, p0, pm1 = Q.term(0), R.term(-1), Q.term(-1), P.term(0), P.term(-1)
    psi = matrix_module_map(alg, p0 + qm1, q0 + rm1,
                            _blocks({(0, 0): X.f.comp(0), (1, 0): X.h.comp(0), (0, 1): Q.d(-1),
                                     (1, 1): _neg(alg, X.j.comp(-1))}, [0, len(q0)], [0, len(p0)]))
    iota = matrix_module_map(alg, pm1, p0 + qm1,
                             _blocks({(0, 0): _neg(alg, P.d(-1)), (1, 0): X.f.comp(-1)}, [0, len(p0)], [0]))
    for x in alg.vertices:
        a = iota.mats[x]
        b = psi.mats[x]
        n_pm1, n_mid = iota.src.dims[x], psi.src.dims[x]
        rk_a = _rank(F, a, n_pm1)
        rk_b = _rank(F, b, n_mid)
        if rk_a != n_pm1:  # injectivity
            return False
        if rk_b != data.M.dims[x]:  # surjectivity onto M (psi lands in M)
            return False
        if n_mid - rk_b != rk_a:  # image = kernel, given psi iota = 0
            return False
        if any(x for row in mat_mul(F, b, a, inner=n_mid) for x in row):
            return False
    return True


def _rank(F, m, ncols):
    ech = Echelon(F)
    for r in m:
        ech.add(sparse(r))
    return len(ech)


# --- duality on complexes --------------------------------------------------------------

def dual_complex(X: ProjComplex) -> ProjComplex:
    """D(X)^n = (X^{-n-1})^* over the opposite algebra; D(D(X)) is X itself."""
    D = getattr(X, "_dual", None)
    if D is not None:
        return D
    alg = X.alg
    op = alg.op
    terms = {-n - 1: list(v) for n, v in X.terms.items()}
    diff = {}
    for n, m in X.diff.items():
        # d^n: X^n -> X^{n+1} transposes to D^{-n-2} -> D^{-n-1}
        diff[-n - 2] = {(c, r): dict(el) for (r, c), el in m.items()}
    nm = f"D({X.name})" if X.name else ""
    D = ProjComplex(op, terms, diff, name=nm)
    X._dual, D._dual = D, X
    return D


def dual_map(f: GradedMap) -> GradedMap:
    """Plain transpose D(f): D(Y) -> D(X) of f: X -> Y (a dg functor on degrees 0 and -1)."""
    DX, DY = dual_complex(f.src), dual_complex(f.tgt)
    p = f.degree
    comps = {}
    for n, m in f.comps.items():
        # f^n: X^n -> Y^{n+p}; D(Y)^{-n-p-1} -> D(X)^{-n-1}
        comps[-n - p - 1] = {(c, r): dict(el) for (r, c), el in m.items()}
    return GradedMap(DY, DX, p, comps)


def dual_h3(X: HComplex3) -> HComplex3:
    """D(A2) -> D(A1) -> D(A0) with maps D(j), D(f) and homotopy D(h)."""
    return validate_h3(dual_complex(X.A2), dual_complex(X.A1), dual_complex(X.A0),
                       dual_map(X.j), dual_map(X.f), dual_map(X.h), name=f"D({X.name})")


# --- homotopy kernels and cokernels ------------------------------------------------------

def _check_map(g, sub):
    if g.degree != 0 or not g.is_closed():
        raise InputError("expected a closed degree-0 map")
    if sub is not None and not (sub.contains(g.src) and sub.contains(g.tgt)):
        raise InputError("map leaves the subcategory")


def homotopy_kernel(g: GradedMap, sub: SubcategorySpec | None = None, probes: ProbeSet | None = None):
    """A homotopy left exact h-complex K -> Q -> R ending in g, or None if none exists."""
    sub = sub or TWO_TERM
    _check_map(g, sub)
    alg = g.alg
    probes = probes or sub.probes(alg)
    if sub.is_two_term:
        P, f, h, projective = two_term_kernel_data(g)
        if not projective:
            return None
        X = validate_h3(P, g.src, g.tgt, f, g, h, name=P.name)
        if not is_left_exact(X, probes):
            raise ArithmeticError("M-construction produced a non-exact kernel")
        return X
    V, f, h = desusp_cone(g)
    if sub.objects is None:
        X = HComplex3(V, g.src, g.tgt, f, g, h, V.name)
        return X if sub.contains(V) else None
    return _search_kernel(V, f, h, g, sub, probes)


def _search_kernel(V, f, h, g, sub, probes, tries=6):
    cat = category_of(g.alg)
    rng = random.Random(0)
    cands = list(sub.objects)
    for K in cands:
        basis = cohomology_basis(K, V, 0, cat)
        if not basis:
            if homotopy_inverse(cat.zero(K, V)) is not None:
                return validate_h3(K, g.src, g.tgt, cat.zero(K, g.src), g, cat.zero(K, g.tgt, -1), K.name)
            continue
        trial = [basis[i] for i in range(len(basis))]
        for t in range(tries + len(basis)):
            if t < len(basis):
                e = trial[t]
            else:
                e = basis[0].scale(0)
                for b in basis:
                    e = e + b.scale(cat.field.random(rng))
            if homotopy_inverse(e) is not None:
                X = validate_h3(K, g.src, g.tgt, f @ e, g, h @ e, K.name)
                if is_left_exact(X, probes):
                    return X
    return None


def homotopy_cokernel(f: GradedMap, sub: SubcategorySpec | None = None, probes: ProbeSet | None = None):
    """A homotopy right exact h-complex P -> Q -> C starting with f, or None."""
    sub = sub or TWO_TERM
    _check_map(f, sub)
    alg = f.alg
    probes = probes or sub.probes(alg)
    if not sub.is_two_term:
        from .complexes import cone
        C, inc, _ = cone(f)
        # Cone(f) with j the inclusion and h = the degree -1 map P -> Cone(f) onto the SP summand
        h = GradedMap(f.src, C, -1, {n: {(i, i): alg.e(v) for i, v in enumerate(f.src.term(n))}
                                     for n in f.src.terms})
        X = HComplex3(f.src, f.tgt, C, f, inc, -h, C.name)
        if X.defects():
            raise ArithmeticError("cone cokernel sign error")
        if sub.objects is None:
            return X if sub.contains(C) else None
        return _search_cokernel(X, sub, probes)
    Df = dual_map(f)
    K = homotopy_kernel(Df, TWO_TERM, None)
    if K is None:
        return None
    C = dual_complex(K.A0)
    C.name = f"hcok({g_name(f)})"
    j = dual_map(K.f).retarget(src=f.tgt, tgt=C)
    h = dual_map(K.h).retarget(src=f.src, tgt=C)
    X = validate_h3(f.src, f.tgt, C, f, j, h, name=C.name)
    if not is_right_exact(X, probes):
        raise ArithmeticError("dual M-construction produced a non-exact cokernel")
    return X


def _search_cokernel(X, sub, probes, tries=6):
    cat = category_of(X.alg)
    rng = random.Random(0)
    for K in sub.objects:
        basis = cohomology_basis(X.A2, K, 0, cat)
        for t in range(tries + len(basis)):
            if not basis:
                e = cat.zero(X.A2, K)
            elif t < len(basis):
                e = basis[t]
            else:
                e = basis[0].scale(0)
                for b in basis:
                    e = e + b.scale(cat.field.random(rng))
            if homotopy_inverse(e) is not None:
                Y = validate_h3(X.A0, X.A1, K, X.f, e @ X.j, e @ X.h, K.name)
                if is_right_exact(Y, probes):
                    return Y
            if not basis:
                break
    return None


# --- pullbacks and pushouts ---------------------------------------------------------------

@dataclass
class HCospan:
    p: GradedMap  # B -> C
    c: GradedMap  # C' -> C


@dataclass
class HSpan:
    b: GradedMap  # B' -> B
    pp: GradedMap  # B' -> C'


def homotopy_pullback(cs: HCospan, sub=None, probes=None):
    """(square, certificate): the square B' -> B, C' over the cospan, with its kernel h-complex."""
    if cs.p.tgt is not cs.c.tgt:
        raise InputError("cospan legs must share a target")
    cat = cat_of(cs.p)
    S = sum_object(cat, [cs.p.src, cs.c.src])
    g = map_out_of_sum(cat, S, [cs.p, -cs.c])
    if hasattr(cat, "homotopy_kernel"):
        K = cat.homotopy_kernel(g)
    else:
        sub = sub or TWO_TERM
        if sub.objects is not None and not sub.contains(S[0]):
            sub = SubcategorySpec(None, list(sub.objects) + [S[0]])
        K = homotopy_kernel(g, sub, probes)
    if K is None:
        return None
    _, _, projs = S
    sq = HSquare(pp=projs[1] @ K.f, b=projs[0] @ K.f, c=cs.c, p=cs.p, s=K.h)
    return sq, K


def homotopy_pushout(sp: HSpan, sub=None, probes=None):
    if sp.b.src is not sp.pp.src:
        raise InputError("span legs must share a source")
    cat = cat_of(sp.b)
    S = sum_object(cat, [sp.b.tgt, sp.pp.tgt])
    f = map_into_sum(cat, S, [sp.b, sp.pp])
    if hasattr(cat, "homotopy_cokernel"):
        K = cat.homotopy_cokernel(f)
    else:
        sub = sub or TWO_TERM
        if sub.objects is not None and not sub.contains(S[0]):
            sub = SubcategorySpec(None, list(sub.objects) + [S[0]])
        K = homotopy_cokernel(f, sub, probes)
    if K is None:
        return None
    _, incs, _ = S
    sq = HSquare(pp=sp.pp, b=sp.b, c=-(K.j @ incs[1]), p=K.j @ incs[0], s=K.h)
    return sq, K


def is_pullback_square(sq: HSquare, probes=None) -> bool:
    return is_left_exact(sq.as_hcomplex(), probes)


def is_pushout_square(sq: HSquare, probes=None) -> bool:
    return is_right_exact(sq.as_hcomplex(), probes)


def paste(upper: HSquare, lower: HSquare) -> HSquare:
    """Vertical pasting: upper.p must be lower.pp; the diagonal is h'g + j'h."""
    if upper.p is not lower.pp and not (upper.p == lower.pp):
        raise InputError("squares are not vertically composable")
    return HSquare(pp=upper.pp, b=lower.b @ upper.b, c=lower.c @ upper.c, p=lower.p,
                   s=lower.s @ upper.b + lower.c @ upper.s)


def pasting_check(upper: HSquare, lower: HSquare, probes=None):
    """(outer square, verdict) where verdict says the pasting biconditional holds."""
    outer = paste(upper, lower)
    if not outer.identity_holds():
        raise ArithmeticError("outer square violates d(s) = c p' - p b")
    if not is_pullback_square(lower, probes):
        raise InputError("lower square is not a homotopy pullback")
    return outer, is_pullback_square(outer, probes) == is_pullback_square(upper, probes)


# --- lifting lemmas ------------------------------------------------------------------------

def back_edge(alpha: SixTuple) -> MorMorphism:
    """The Mor-morphism [[r1, 0], [-s2, r2]] carried by the back square of a 6-tuple."""
    return MorMorphism(alpha.src.j, alpha.tgt.j, 0, alpha.r1, -alpha.s2, alpha.r2)


def front_edge(alpha: SixTuple) -> MorMorphism:
    return MorMorphism(alpha.src.f, alpha.tgt.f, 0, alpha.r0, -alpha.s1, alpha.r1)


class LiftError(ArithmeticError):
    pass


def lift_through_left_exact(X1: HComplex3, X2: HComplex3, theta: MorMorphism) -> SixTuple:
    """Closed 6-tuple X1 -> X2 whose back square is theta (r1 = theta.j, r2 = theta.l,
    s2 = -theta.h); solves for (r0, s1, t)."""
    cat = cat_of(X1.f)
    b, c, s2 = theta.j, theta.l, -theta.h
    if not (s2.d() - (X2.j @ b - c @ X1.j)).is_zero():
        raise InputError("theta is not closed")
    sp = six_spaces(X1, X2, 0)

    def res(u):
        a, s1, t = u
        return [a.d(), s1.d() - (X2.f @ a - b @ X1.f),
                t.d() - (c @ X1.h - X2.h @ a - s2 @ X1.f - X2.j @ s1)]

    sol = LinearSystem(cat, [sp[0], sp[3], sp[5]], res).solve()
    if sol is None:
        raise LiftError("no lift: the target is not left exact against the source")
    a, s1, t = sol
    return SixTuple(X1, X2, 0, a, b, c, s1, s2, t)


def lift_through_right_exact(X1: HComplex3, X2: HComplex3, theta: MorMorphism) -> SixTuple:
    """Dual: given the front square (r0 = theta.j, r1 = theta.l, s1 = -theta.h) with X1
    right exact, solve for (r2, s2, t)."""
    cat = cat_of(X1.f)
    a, b, s1 = theta.j, theta.l, -theta.h
    if not (s1.d() - (X2.f @ a - b @ X1.f)).is_zero():
        raise InputError("theta is not closed")
    sp = six_spaces(X1, X2, 0)

    def res(u):
        c, s2, t = u
        return [c.d(), s2.d() - (X2.j @ b - c @ X1.j),
                t.d() - (c @ X1.h - X2.h @ a - s2 @ X1.f - X2.j @ s1)]

    sol = LinearSystem(cat, [sp[2], sp[4], sp[5]], res).solve()
    if sol is None:
        raise LiftError("no lift: the source is not right exact against the target")
    c, s2, t = sol
    return SixTuple(X1, X2, 0, a, b, c, s1, s2, t)


def pushout_completion(X: HComplex3, a: GradedMap, sub=None, probes=None):
    """(X', mu) with X' = A' -> E -> C right exact and mu: X -> X' with r0 = a, r2 = 1."""
    res_po = homotopy_pushout(HSpan(b=X.f, pp=a), sub, probes)
    if res_po is None:
        raise LiftError("the span has no homotopy pushout in the subcategory")
    sq, _ = res_po
    E = sq.p.tgt
    fp = sq.c  # A' -> E
    p = sq.p  # B -> E
    s = sq.s  # d(s) = fp a - p f
    cat = cat_of(X.f)
    C = X.A2
    spaces = [cat.hom_space(E, C, 0), cat.hom_space(a.tgt, C, -1), cat.hom_space(X.A1, C, -1),
              cat.hom_space(X.A0, C, -2)]

    def res(u):
        jp, hp, s2, t = u
        return [jp.d(), hp.d() + jp @ fp, s2.d() - (jp @ p - X.j),
                t.d() - (X.h - hp @ a - s2 @ X.f - jp @ s)]

    sol = LinearSystem(cat, spaces, res).solve()
    if sol is None:
        raise LiftError("no completion found")
    jp, hp, s2, t = sol
    Xp = validate_h3(a.tgt, E, C, fp, jp, hp, name=f"{X.name}'")
    mu = SixTuple(X, Xp, 0, a, p, cat.identity(C), s, s2, t)
    if not mu.is_closed():
        raise ArithmeticError("completion 6-tuple is not closed")
    return Xp, mu


def pullback_completion(X: HComplex3, c: GradedMap, sub=None, probes=None):
    """(X', mu) with X' = A -> E -> C' left exact and mu: X' -> X with r0 = 1, r2 = c."""
    res_pb = homotopy_pullback(HCospan(p=X.j, c=c), sub, probes)
    if res_pb is None:
        raise LiftError("the cospan has no homotopy pullback in the subcategory")
    sq, _ = res_pb
    E = sq.b.src
    q = sq.b  # E -> B
    jp = sq.pp  # E -> C'
    s = -sq.s  # d(s) = j q - c jp
    cat = cat_of(X.f)
    A = X.A0
    spaces = [cat.hom_space(A, E, 0), cat.hom_space(A, c.src, -1), cat.hom_space(A, X.A1, -1),
              cat.hom_space(A, X.A2, -2)]

    def res(u):
        fp, hp, s1, t = u
        # mu = (1, q, c, s1, s, t)
        return [fp.d(), hp.d() + jp @ fp, s1.d() - (X.f - q @ fp),
                t.d() - (c @ hp - X.h - s @ fp - X.j @ s1)]

    sol = LinearSystem(cat, spaces, res).solve()
    if sol is None:
        raise LiftError("no completion found")
    fp, hp, s1, t = sol
    Xp = validate_h3(A, E, c.src, fp, jp, hp, name=f"{X.name}'")
    mu = SixTuple(Xp, X, 0, cat.identity(A), q, c, s1, s, t)
    if not mu.is_closed():
        raise ArithmeticError("completion 6-tuple is not closed")
    return Xp, mu


# --- the two-term counterexample ------------------------------------------------------------

def counterexample_sequence(M) -> HComplex3:
    """(P1 -> P0) -> (0 -> Q0*) -> (0 -> Q1*) built from minimal presentations of M and M*.

    Homotopy short exact among two-term complexes whenever pd M = 1, pd M* = 1 and M
    is reflexive, but not short exact in the ambient category."""
    from .complexes import stalk
    from .modules import dual_module, min_projective_presentation
    alg = M.alg
    pres = min_projective_presentation(M)
    D, bases = dual_module(M)
    qres = min_projective_presentation(D)
    if not pres.exact or not qres.exact:
        raise InputError("module or its dual has projective dimension > 1")
    P = ProjComplex(alg, {-1: pres.p1, 0: pres.p0}, {-1: pres.d}, name="P")
    Q0 = stalk(alg, qres.p0, 0, name="Q0*")
    Q1 = stalk(alg, qres.p1, 0, name="Q1*")
    # f^0: P0 -> M -> Q0*, generator c of P0 goes to (phi_k(m_c))_k
    lay0 = ProjLayout(alg, pres.p0)
    f0 = {}
    for c, v in enumerate(pres.p0):
        m_c = pres.cover.apply(v, lay0.element_vector(v, {c: alg.e(v)}))
        for k, w in enumerate(qres.p0):
            coeffs = qres.cover.apply(w, ProjLayout(alg.op, qres.p0).element_vector(w, {k: alg.op.e(w)}))
            val = None
            for x, phi in zip(coeffs, bases[w]):
                if x:
                    vec = [alg.field.norm(x * y) for y in phi.apply(v, m_c)]
                    val = vec if val is None else [alg.field.norm(p + q) for p, q in zip(val, vec)]
            if val is not None and any(val):
                f0[(k, c)] = ProjLayout(alg, [w]).vector_elements(v, val).get(0, {})
    j0 = {(c, r): dict(el) for (r, c), el in qres.d.items()}
    f = GradedMap(P, Q0, 0, {0: f0})
    j = GradedMap(Q0, Q1, 0, {0: j0})
    return validate_h3(P, Q0, Q1, f, j, GradedMap(P, Q1, -1, {}), name="counterexample")


# --- random sampling -------------------------------------------------------------------------

def random_closed(X, Y, p, rng, cat=None):
    """A random cycle of degree p: a random class plus a random boundary."""
    cat = cat or category_of(X.alg)
    F = cat.field
    out = cat.zero(X, Y, p)
    for b in cohomology_basis(X, Y, p, cat):
        out = out + b.scale(F.random(rng))
    return out + cat.hom_space(X, Y, p - 1).random(rng).d()


def random_hcomplex(objects: list, rng, mode: str | None = None):
    """A seeded random 3-term h-complex over the given objects, or None when the draw
    does not close up.  Modes: "free" (random f, j and a solving h), "extension"
    (a realized random class, twisted by random homotopies) and "kernel"."""
    from .complexes import null_homotopy
    mode = mode or rng.choice(["free", "extension", "kernel"])
    cat = category_of(objects[0].alg)
    if mode == "free":
        A0, A1, A2 = (rng.choice(objects) for _ in range(3))
        f, j = random_closed(A0, A1, 0, rng, cat), random_closed(A1, A2, 0, rng, cat)
        h = null_homotopy(-(j @ f))
        if h is None:
            return None
        return validate_h3(A0, A1, A2, f, j, h + random_closed(A0, A2, -1, rng, cat))
    if mode == "extension":
        from .extri import ext_space, ExtClass, realize
        C, A = rng.choice(objects), rng.choice(objects)
        sp = ext_space(C, A)
        d = ExtClass(C, A, sp.element([cat.field.random(rng) for _ in range(sp.dim)]))
        X = realize(d, sub=None).X
        # move f, j within their homotopy classes and correct h accordingly
        u = cat.hom_space(X.A0, X.A1, -1).random(rng)
        v = cat.hom_space(X.A1, X.A2, -1).random(rng)
        f, j = X.f + u.d(), X.j + v.d()
        h = X.h - X.j @ u - v @ f + random_closed(X.A0, X.A2, -1, rng, cat)
        return validate_h3(X.A0, X.A1, X.A2, f, j, h)
    if mode == "kernel":
        Q, R = rng.choice(objects), rng.choice(objects)
        g = random_closed(Q, R, 0, rng, cat)
        if not (TWO_TERM.contains(Q) and TWO_TERM.contains(R)):
            return None
        return homotopy_kernel(g)
    raise ValueError(f"unknown mode {mode!r}")
