"""Finite-dimensional right modules over a path algebra, given by representations.

A right module M has a vector space M_v = M e_v per vertex; an arrow a: u -> v
acts M_v -> M_u (column vectors, ``act[a] @ x``).  Left modules are right
modules over ``alg.op``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Echelon, kernel_sparse, solve_sparse, sparse


# --- small dense helpers ---------------------------------------------------

def zeros(r, c):
    return [[0] * c for _ in range(r)]


def mat_mul(F, a, b, inner=None):
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        oi = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += x * bk[j]
        if F.p:
            out[i] = [v % F.p for v in oi]
    return out


def mat_vec(F, a, v):
    return [F.norm(sum(x * y for x, y in zip(row, v))) for row in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def columns_to_matrix(cols, nrows):
    return [[c[i] for c in cols] for i in range(nrows)]


def span_rank(F, vectors) -> int:
    ech = Echelon(F)
    for v in vectors:
        ech.add(sparse(v))
    return len(ech)


def coords_in(F, basis, v):
    """Coordinates of v in the list of independent vectors ``basis`` (or None)."""
    n = len(basis)
    if n == 0:
        return [] if not any(v) else None
    rows = [{j: basis[j][i] for j in range(n) if basis[j][i] != 0} for i in range(len(v))]
    return solve_sparse(rows, v, n, F)


class CoordSolver:
    """Repeated coordinate extraction with respect to a fixed basis."""

    def __init__(self, F, basis, dim):
        self.F, self.n, self.dim = F, len(basis), dim
        # echelon on augmented rows [b | e_j] to record combinations
        self.ech = Echelon(F)
        for j, b in enumerate(basis):
            row = sparse(b)
            row[dim + j] = 1
            self.ech.add(row)

    def __call__(self, v):
        F = self.F
        r = self.ech.reduce(sparse(v))
        if any(k < self.dim for k in r):
            return None
        out = [0] * self.n
        for k, x in r.items():
            out[k - self.dim] = F.norm(-x)
        return out


# --- modules ----------------------------------------------------------------

@dataclass
class RightModule:
    alg: object
    dims: dict  # vertex -> int
    act: dict  # arrow name -> matrix (dims[source] x dims[target])
    label: str = ""

    @property
    def F(self):
        return self.alg.field

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.alg.vertices)

    def act_path(self, path):
        """Matrix of the right action of a path (source x) -> (target y): M_y -> M_x."""
        s, t, arrows = path
        m = identity(self.dims[t])
        for a in reversed(arrows):
            m = mat_mul(self.F, self.act[a], m)
        return m

    def act_basis(self, i):
        return self.act_path(self.alg.basis[i])

    def check(self) -> bool:
        """Relations act as zero."""
        F = self.F
        for rel in self.alg.relations:
            s, t = rel[0][1][0], rel[0][1][1]
            acc = zeros(self.dims[s], self.dims[t])
            for c, p in rel:
                m = self.act_path(p)
                acc = [[F.norm(x + c * y) for x, y in zip(r1, r2)] for r1, r2 in zip(acc, m)]
            if any(x for r in acc for x in r):
                return False
        return True


@dataclass
class ModuleMap:
    src: RightModule
    tgt: RightModule
    mats: dict  # vertex -> matrix (tgt.dims[v] x src.dims[v])

    def is_natural(self) -> bool:
        F = self.src.F
        for name, u, v in self.src.alg.quiver.arrows:
            lhs = mat_mul(F, self.mats[u], self.src.act[name], self.src.dims[v])
            rhs = mat_mul(F, self.tgt.act[name], self.mats[v], self.tgt.dims[v])
            if lhs != rhs:
                return False
        return True

    def flat(self) -> list:
        out = []
        for v in self.src.alg.vertices:
            for row in self.mats[v]:
                out.extend(row)
        return out

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        F = self.src.F
        return ModuleMap(other.src, self.tgt, {
            v: mat_mul(F, self.mats[v], other.mats[v], self.src.dims[v]) for v in self.src.alg.vertices
        })

    def apply(self, v, x):
        return mat_vec(self.src.F, self.mats[v], x)


# --- projectives --------------------------------------------------------------

class ProjLayout:
    """Coordinates on a direct sum of indecomposable projectives e_{v_i} A."""

    def __init__(self, alg, vertices):
        self.alg = alg
        self.vertices = list(vertices)
        self.slots = {}  # x -> list of (i, basis index)
        self.pos = {}  # x -> {(i, b): coordinate}
        for x in alg.vertices:
            sl = [(i, b) for i, v in enumerate(self.vertices) for b in alg.paths(x, v)]
            self.slots[x] = sl
            self.pos[x] = {s: k for k, s in enumerate(sl)}

    def module(self) -> RightModule:
        alg, F = self.alg, self.alg.field
        dims = {x: len(self.slots[x]) for x in alg.vertices}
        act = {}
        for name, u, w in alg.quiver.arrows:
            ai = alg.index.get((u, w, (name,)))
            m = zeros(dims[u], dims[w])
            if ai is not None:
                for col, (i, b) in enumerate(self.slots[w]):
                    for k, c in alg.mult.get((b, ai), {}).items():
                        m[self.pos[u][(i, k)]][col] = F.norm(m[self.pos[u][(i, k)]][col] + c)
            act[name] = m
        return RightModule(alg, dims, act)

    def element_vector(self, x, elems: dict) -> list:
        """Vector at vertex x for a family {i: element of e_{v_i} A e_x}."""
        v = [0] * len(self.slots[x])
        for i, el in elems.items():
            for b, c in el.items():
                v[self.pos[x][(i, b)]] = c
        return v

    def vector_elements(self, x, vec) -> dict:
        out = {}
        for k, c in enumerate(vec):
            if c:
                i, b = self.slots[x][k]
                out.setdefault(i, {})[b] = c
        return out


def projective(alg, vertex) -> RightModule:
    if vertex not in alg.vertices:
        raise KeyError(f"unknown vertex {vertex!r}")
    M = ProjLayout(alg, [vertex]).module()
    M.label = f"P{vertex}"
    return M


def matrix_module_map(alg, src_vertices, tgt_vertices, entries: dict) -> ModuleMap:
    """Module map between sums of projectives given by left multiplication.

    ``entries[(r, c)]`` is an element of e_{tgt_r} A e_{src_c}.
    """
    F = alg.field
    sl, tl = ProjLayout(alg, src_vertices), ProjLayout(alg, tgt_vertices)
    S, T = sl.module(), tl.module()
    mats = {}
    by_col = {}
    for (r, c), el in entries.items():
        by_col.setdefault(c, []).append((r, el))
    for x in alg.vertices:
        m = zeros(T.dims[x], S.dims[x])
        for col, (c, b) in enumerate(sl.slots[x]):
            for r, el in by_col.get(c, []):
                for k, coeff in alg.mul(el, {b: 1}).items():
                    row = tl.pos[x][(r, k)]
                    m[row][col] = F.norm(m[row][col] + coeff)
        mats[x] = m
    return ModuleMap(S, T, mats)


# --- Hom, kernels, quotients ---------------------------------------------------

def hom_modules(M: RightModule, N: RightModule) -> list:
    """Basis of Hom_A(M, N) as ModuleMaps."""
    alg, F = M.alg, M.F
    verts = alg.vertices
    off, n = {}, 0
    for v in verts:
        off[v] = n
        n += N.dims[v] * M.dims[v]

    def var(v, i, j):
        return off[v] + i * M.dims[v] + j

    rows = []
    for name, u, w in alg.quiver.arrows:
        # F_u act_M[a] - act_N[a] F_w = 0, an (N_u x M_w) system
        am, an = M.act[name], N.act[name]
        for i in range(N.dims[u]):
            for j in range(M.dims[w]):
                row = {}
                for k in range(M.dims[u]):
                    c = am[k][j]
                    if c:
                        key = var(u, i, k)
                        row[key] = F.norm(row.get(key, 0) + c)
                for k in range(N.dims[w]):
                    c = an[i][k]
                    if c:
                        key = var(w, k, j)
                        row[key] = F.norm(row.get(key, 0) - c)
                row = {k: x for k, x in row.items() if x}
                if row:
                    rows.append(row)
    out = []
    for vec in kernel_sparse(rows, n, F):
        mats = {}
        for v in verts:
            mats[v] = [[vec[var(v, i, j)] for j in range(M.dims[v])] for i in range(N.dims[v])]
        out.append(ModuleMap(M, N, mats))
    return out


def submodule(M: RightModule, bases: dict):
    """Submodule spanned per vertex by ``bases[v]`` (assumed closed under the action)."""
    F, alg = M.F, M.alg
    dims = {v: len(bases[v]) for v in alg.vertices}
    solvers = {v: CoordSolver(F, bases[v], M.dims[v]) for v in alg.vertices}
    act = {}
    for name, u, w in alg.quiver.arrows:
        cols = []
        for b in bases[w]:
            c = solvers[u](mat_vec(F, M.act[name], b))
            if c is None:
                raise ValueError("subspace is not a submodule")
            cols.append(c)
        act[name] = columns_to_matrix(cols, dims[u])
    S = RightModule(alg, dims, act)
    inc = ModuleMap(S, M, {v: columns_to_matrix(bases[v], M.dims[v]) for v in alg.vertices})
    return S, inc


def kernel(phi: ModuleMap):
    F = phi.src.F
    bases = {}
    for v in phi.src.alg.vertices:
        m = phi.mats[v]
        bases[v] = kernel_sparse([sparse(r) for r in m], phi.src.dims[v], F)
    return submodule(phi.src, bases)


def image_bases(phi: ModuleMap) -> dict:
    F = phi.src.F
    out = {}
    for v in phi.src.alg.vertices:
        cols = [[row[j] for row in phi.mats[v]] for j in range(phi.src.dims[v])]
        ech = Echelon(F)
        for c in cols:
            ech.add(sparse(c))
        n = phi.tgt.dims[v]
        out[v] = [[r.get(i, 0) for i in range(n)] for _, r in sorted(ech.rows.items())]
    return out


def canonical_subspace(F, vectors, n) -> list:
    ech = Echelon(F)
    for v in vectors:
        ech.add(sparse(v))
    return [tuple(r.get(i, 0) for i in range(n)) for _, r in sorted(ech.rows.items())]


def radical_bases(M: RightModule) -> dict:
    """M * rad, spanned at u by the images of the arrows starting at u."""
    F = M.F
    out = {}
    for u in M.alg.vertices:
        vecs = []
        for name, s, w in M.alg.quiver.arrows:
            if s == u:
                a = M.act[name]
                vecs.extend([[row[j] for row in a] for j in range(M.dims[w])])
        out[u] = [list(r) for r in canonical_subspace(F, vecs, M.dims[u])]
    return out


def top_generators(M: RightModule, extra: dict | None = None) -> list:
    """Vectors (vertex, m) lifting a basis of M / (M rad + extra)."""
    F = M.F
    rad = radical_bases(M)
    gens = []
    for u in M.alg.vertices:
        ech = Echelon(F)
        for v in rad[u]:
            ech.add(sparse(v))
        for v in (extra or {}).get(u, []):
            ech.add(sparse(v))
        for i in range(M.dims[u]):
            e = [0] * M.dims[u]
            e[i] = 1
            if ech.add(sparse(e)):
                gens.append((u, e))
    return gens


def map_from_generators(M: RightModule, gens) -> tuple:
    """The map P = sum of P_u -> M sending the idempotent of each summand to its generator."""
    alg, F = M.alg, M.F
    layout = ProjLayout(alg, [u for u, _ in gens])
    P = layout.module()
    acts = {}
    mats = {}
    for x in alg.vertices:
        cols = []
        for i, b in layout.slots[x]:
            if b not in acts:
                acts[b] = M.act_basis(b)
            cols.append(mat_vec(F, acts[b], gens[i][1]))
        mats[x] = columns_to_matrix(cols, M.dims[x])
    return layout, P, ModuleMap(P, M, mats)


def projective_cover(M: RightModule):
    gens = top_generators(M)
    layout, P, pi = map_from_generators(M, gens)
    return layout, P, pi


def is_projective(M: RightModule) -> bool:
    _, P, _ = projective_cover(M)
    return P.dim == M.dim


def syzygy(M: RightModule):
    layout, P, pi = projective_cover(M)
    K, inc = kernel(pi)
    return K, (layout, P, pi)


def proj_dim_leq(M: RightModule, n: int):
    """(pd M <= n, witness chain of syzygies)."""
    if n > 4:
        raise ValueError("bounded search: n must be at most 4")
    chain = [M]
    cur = M
    for _ in range(n):
        cur, _ = syzygy(cur)
        chain.append(cur)
    return is_projective(cur), chain


def proj_dim(M: RightModule, bound: int = 4):
    for n in range(bound + 1):
        ok, _ = proj_dim_leq(M, n)
        if ok:
            return n
    return None


@dataclass
class Presentation:
    p1: list  # vertices of P1
    p0: list  # vertices of P0
    d: dict  # (r, c) -> element of e_{p0[r]} A e_{p1[c]}
    cover: ModuleMap  # P0 -> M
    exact: bool


def min_projective_presentation(M: RightModule) -> Presentation:
    alg, F = M.alg, M.F
    layout0, P0, pi = projective_cover(M)
    K, inc = kernel(pi)
    gens1 = top_generators(K)
    entries = {}
    for c, (w, g) in enumerate(gens1):
        vec = inc.apply(w, g)
        for r, el in layout0.vector_elements(w, vec).items():
            entries[(r, c)] = el
    p1 = [w for w, _ in gens1]
    d = matrix_module_map(alg, p1, layout0.vertices, entries)
    exact = True
    for x in alg.vertices:
        img = image_bases(d)[x]
        ker = canonical_subspace(F, [inc.apply(x, k) for k in _std(K.dims[x])], P0.dims[x])
        if canonical_subspace(F, img, P0.dims[x]) != ker:
            exact = False
    return Presentation(p1, list(layout0.vertices), entries, pi, exact)


def _std(n):
    return [[1 if i == j else 0 for i in range(n)] for j in range(n)]


# --- duality ------------------------------------------------------------------

def dual_module(M: RightModule):
    """M* = Hom_A(M, A) as a right module over ``alg.op``; also returns the Hom bases."""
    alg, F = M.alg, M.F
    op = alg.op
    proj = {v: projective(alg, v) for v in alg.vertices}
    bases = {v: hom_modules(M, proj[v]) for v in alg.vertices}
    solvers = {v: CoordSolver(F, [phi.flat() for phi in bases[v]], len(bases[v][0].flat()) if bases[v] else 0)
               for v in alg.vertices}
    dims = {v: len(bases[v]) for v in alg.vertices}
    act = {}
    for name, u, v in alg.quiver.arrows:
        # in A^op the arrow runs v -> u and acts M*_u -> M*_v by phi -> a . phi
        ai = alg.index.get((u, v, (name,)))
        la = matrix_module_map(alg, [u], [v], {(0, 0): {ai: 1}} if ai is not None else {})
        cols = []
        for phi in bases[u]:
            psi = ModuleMap(M, proj[v], la.compose(phi).mats)
            c = solvers[v](psi.flat()) if dims[v] else []
            if c is None:
                raise ArithmeticError("dual action left the Hom space")
            cols.append(c)
        act[name] = columns_to_matrix(cols, dims[v])
    D = RightModule(op, dims, act, label=f"{M.label}*" if M.label else "")
    return D, bases


def is_reflexive(M: RightModule) -> bool:
    alg, F = M.alg, M.F
    D, bases = dual_module(M)
    DD, _ = dual_module(D)
    for u in alg.vertices:
        if DD.dims[u] != M.dims[u]:
            return False
        # ev(m) at vertex v sends phi to phi_u(m) in e_v A e_u
        images = []
        for m in _std(M.dims[u]):
            flat = []
            for v in alg.vertices:
                for phi in bases[v]:
                    flat.extend(phi.apply(u, m))
            images.append(flat)
        if span_rank(F, images) != M.dims[u]:
            return False
    return True


def simple(alg, vertex) -> RightModule:
    dims = {v: (1 if v == vertex else 0) for v in alg.vertices}
    act = {name: zeros(dims[u], dims[w]) for name, u, w in alg.quiver.arrows}
    return RightModule(alg, dims, act, label=f"S{vertex}")


def cokernel_module(alg, p_neg1, p_0, entries) -> RightModule:
    """The cokernel module of P^{-1} -> P^0 given by an element matrix."""
    d = matrix_module_map(alg, p_neg1, p_0, entries)
    return quotient(d.tgt, image_bases(d))[0]


def complement(F, vectors, n):
    """(free coordinates, projection rows) for a complement of span(vectors) in F^n."""
    ech = Echelon(F)
    for v in vectors:
        ech.add(sparse(v))
    free = [i for i in range(n) if i not in ech.rows]
    pos = {i: k for k, i in enumerate(free)}
    proj = [[0] * n for _ in free]
    for j in range(n):
        for k, x in ech.reduce({j: 1}).items():
            proj[pos[k]][j] = x
    return free, proj


def quotient(M: RightModule, sub: dict):
    """M / S for a submodule given by per-vertex spanning vectors; returns (Q, projection)."""
    F, alg = M.F, M.alg
    frees, projs = {}, {}
    for v in alg.vertices:
        frees[v], projs[v] = complement(F, sub.get(v, []), M.dims[v])
    dims = {v: len(frees[v]) for v in alg.vertices}
    act = {}
    for name, u, w in alg.quiver.arrows:
        cols = []
        for f in frees[w]:
            e = [0] * M.dims[w]
            e[f] = 1
            cols.append(mat_vec(F, projs[u], mat_vec(F, M.act[name], e)))
        act[name] = columns_to_matrix(cols, dims[u])
    Q = RightModule(alg, dims, act)
    return Q, ModuleMap(M, Q, projs)
