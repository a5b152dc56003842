"""Path algebras of finite quivers with relations.

Paths are stored as ``(source, target, arrows)`` with ``arrows`` in traversal
order.  In written form ``"x*y"`` means apply ``y`` first, so the string
``"b*a"`` is the traversal ``(a, b)``.  A path from u to v lies in e_v A e_u.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Echelon, Field


class InputError(ValueError):
    """Malformed user input (exit code 2 at the command line)."""


class InfiniteDimensional(InputError):
    pass


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (name, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex label")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow name")
        for name, s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise InputError(f"arrow {name}: unknown endpoint")
            if name in {f"e{v}" for v in self.vertices} | {f"e_{v}" for v in self.vertices}:
                raise InputError(f"arrow name {name!r} clashes with an idempotent")

    @property
    def arrow_map(self) -> dict:
        return {a[0]: (a[1], a[2]) for a in self.arrows}

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple((n, t, s) for n, s, t in self.arrows))


def path_str(path) -> str:
    s, t, arr = path
    if not arr:
        return f"e{s}"
    return "*".join(reversed(arr))


def parse_combination(text: str, quiver: Quiver, field: Field) -> list:
    """Parse ``"c1 p1 + c2 p2"`` into ``[(coeff, path), ...]``."""
    amap = quiver.arrow_map
    idem = {}
    for v in quiver.vertices:
        idem[f"e{v}"] = v
        idem[f"e_{v}"] = v
    text = text.strip()
    if not text:
        raise InputError("empty algebra element")
    if re.fullmatch(r"[+-]?\s*0", text):
        return []
    out = []
    pieces = re.findall(r"[+-]?[^+-]+", text)
    for piece in pieces:
        piece = piece.strip()
        if piece.startswith("+"):
            piece = piece[1:].strip()
        sign = 1
        if piece.startswith("-"):
            sign, piece = -1, piece[1:].strip()
        if not piece:
            raise InputError(f"dangling operator in {text!r}")
        toks = piece.replace("*", " * ").split()
        coeff = Fraction(sign)
        factors = []
        for tok in toks:
            if tok == "*":
                continue
            if re.fullmatch(r"\d+(/\d+)?", tok) and not factors:
                coeff *= Fraction(tok)
                continue
            factors.append(tok)
        if not factors:
            raise InputError(f"term {piece!r} has no path (scalars need an idempotent, e.g. 2 e1)")
        # factors are in function order: last applied first
        trav = []
        src = tgt = None
        for name in reversed(factors):
            if name in idem:
                v = idem[name]
                if src is None:
                    src = tgt = v
                elif tgt != v:
                    raise InputError(f"non-composable path {piece!r}")
                continue
            if name not in amap:
                raise InputError(f"unknown arrow or idempotent {name!r}")
            s, t = amap[name]
            if tgt is not None and tgt != s:
                raise InputError(f"non-composable path {piece!r}")
            if src is None:
                src = s
            trav.append(name)
            tgt = t
        out.append((field(coeff), (src, tgt, tuple(trav))))
    return out


class Algebra:
    """A finite-dimensional quotient of a path algebra with explicit basis."""

    def __init__(self, quiver, field, relations, basis, mult, nf_table, cutoff, op=None):
        self.quiver = quiver
        self.field = field
        self.relations = relations  # list of [(coeff, path)]
        self.basis = basis  # list of paths
        self.index = {p: i for i, p in enumerate(basis)}
        self.mult = mult  # (i, j) -> {k: c}, product b_i * b_j (b_j first)
        self._nf = nf_table  # path -> {k: c} for non-basis paths shorter than cutoff
        self.cutoff = cutoff
        self.vertices = quiver.vertices
        self.idem = {p[0]: i for i, p in enumerate(basis) if not p[2]}
        self.between = {}
        for i, (s, t, _) in enumerate(basis):
            self.between.setdefault((s, t), []).append(i)
        self._op = op

    @property
    def dim(self) -> int:
        return len(self.basis)

    def paths(self, u, v) -> list:
        """Basis indices of e_v A e_u (paths from u to v)."""
        return self.between.get((u, v), [])

    def src(self, i):
        return self.basis[i][0]

    def tgt(self, i):
        return self.basis[i][1]

    def normal_form(self, path) -> dict:
        if path in self.index:
            return {self.index[path]: 1}
        if len(path[2]) >= self.cutoff:
            return {}
        return dict(self._nf.get(path, {}))

    # element arithmetic; elements are dicts basis index -> scalar
    def mul(self, x: dict, y: dict) -> dict:
        F, out = self.field, {}
        mult = self.mult
        for i, a in x.items():
            for j, b in y.items():
                prod = mult.get((i, j))
                if not prod:
                    continue
                ab = a * b
                for k, c in prod.items():
                    nv = F.norm(out.get(k, 0) + ab * c)
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def add(self, x: dict, y: dict, c=1) -> dict:
        F = self.field
        out = dict(x)
        for k, v in y.items():
            nv = F.norm(out.get(k, 0) + c * v)
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return out

    def scale(self, x: dict, c) -> dict:
        if c == 0:
            return {}
        F = self.field
        return {k: F.norm(v * c) for k, v in x.items()}

    def e(self, v) -> dict:
        return {self.idem[v]: 1}

    def element(self, text: str, src=None, tgt=None) -> dict:
        """Parse an element; optionally check that it lies in e_tgt A e_src."""
        out = {}
        for c, path in parse_combination(text, self.quiver, self.field):
            if src is not None and path[0] != src or tgt is not None and path[1] != tgt:
                raise InputError(
                    f"element {text!r}: path {path_str(path)} is not in e{tgt} A e{src}"
                )
            out = self.add(out, self.normal_form(path), c)
        return out

    def format(self, x: dict) -> str:
        if not x:
            return "0"
        parts = []
        for k in sorted(x):
            c, p = x[k], path_str(self.basis[k])
            if c == 1:
                parts.append(p)
            elif c == -1 or (self.field.p and c == self.field.p - 1):
                parts.append(f"-{p}")
            else:
                parts.append(f"{c} {p}")
        return " + ".join(parts).replace("+ -", "- ")

    @property
    def op(self) -> "Algebra":
        """Opposite algebra with the same basis indices (paths reversed)."""
        if self._op is None:
            basis = [(t, s, tuple(reversed(a))) for s, t, a in self.basis]
            mult = {(j, i): v for (i, j), v in self.mult.items()}
            nf = {(t, s, tuple(reversed(a))): v for (s, t, a), v in self._nf.items()}
            rel = [[(c, (t, s, tuple(reversed(a)))) for c, (s, t, a) in r] for r in self.relations]
            self._op = Algebra(self.quiver.opposite(), self.field, rel, basis, mult, nf, self.cutoff, op=self)
        return self._op

    def check_associative(self) -> bool:
        n = self.dim
        for i in range(n):
            for j in range(n):
                if (i, j) not in self.mult:
                    continue
                for k in range(n):
                    if (j, k) not in self.mult:
                        continue
                    left = self.mul(self.mul({i: 1}, {j: 1}), {k: 1})
                    right = self.mul({i: 1}, self.mul({j: 1}, {k: 1}))
                    if left != right:
                        return False
        return True

    def __repr__(self):
        return f"Algebra(dim={self.dim}, vertices={list(self.vertices)}, field={self.field})"


def _concat(p, q):
    """Path p then q (traversal order)."""
    return (p[0], q[1], p[2] + q[2])


def build_algebra(quiver: Quiver, relations, field: Field, length_cap: int = 12) -> Algebra:
    """Quotient of the path algebra by the ideal generated by ``relations``.

    ``relations`` are strings or ``[(coeff, path)]`` lists.  Raises
    :class:`InfiniteDimensional` if paths of length ``length_cap`` are not all
    in the ideal.
    """
    rels = []
    for r in relations:
        terms = parse_combination(r, quiver, field) if isinstance(r, str) else list(r)
        terms = [(c, p) for c, p in terms if c != 0]
        if not terms:
            continue
        ends = {(p[0], p[1]) for _, p in terms}
        if len(ends) != 1:
            raise InputError(f"relation {r!r}: paths are not parallel")
        if any(len(p[2]) < 2 for _, p in terms):
            raise InputError(f"relation {r!r}: contains a path of length < 2 (not admissible)")
        rels.append(terms)
    maxlen = max((len(p[2]) for r in rels for _, p in r), default=0)
    if length_cap < maxlen:
        raise InputError("length_cap is smaller than the longest relation path")

    amap = quiver.arrows
    by_len = [[(v, v, ()) for v in quiver.vertices]]
    all_paths = list(by_len[0])

    def extend(paths):
        out = []
        for p in paths:
            for name, s, t in amap:
                if s == p[1]:
                    out.append((p[0], t, p[2] + (name,)))
        return out

    cutoff = None
    for N in range(1, length_cap + 1):
        by_len.append(extend(by_len[-1]))
        all_paths.extend(by_len[-1])
        if not by_len[N]:
            cutoff = N
            break
        if not rels:
            continue
        ids = {p: i for i, p in enumerate(all_paths)}
        ech = Echelon(field)
        for row in _ideal_rows(rels, by_len, N, ids, field, truncate=False):
            ech.add(row)
        if all(ech.contains({ids[p]: 1}) for p in by_len[N]):
            cutoff = N
            break
    if cutoff is None:
        raise InfiniteDimensional(
            f"possibly infinite-dimensional: paths of length {length_cap} are not all in the ideal"
        )

    short = [p for p in all_paths if len(p[2]) < cutoff]
    ids = {p: i for i, p in enumerate(short)}
    key = lambda i: (-len(short[i][2]), i)
    ech = Echelon(field, key=key)
    for row in _ideal_rows(rels, by_len, cutoff, ids, field, truncate=True):
        ech.add(row)
    basis = [p for p in short if ids[p] not in ech.rows]
    vorder = {v: k for k, v in enumerate(quiver.vertices)}
    basis.sort(key=lambda p: (len(p[2]), vorder[p[0]], vorder[p[1]], ids[p]))
    bidx = {p: i for i, p in enumerate(basis)}
    nf = {}
    for pc, row in ech.rows.items():
        p = short[pc]
        nf[p] = {bidx[short[q]]: field.norm(-c) for q, c in row.items() if q != pc}

    def normal(path):
        if path in bidx:
            return {bidx[path]: 1}
        if len(path[2]) >= cutoff:
            return {}
        return nf.get(path, {})

    mult = {}
    for i, p in enumerate(basis):
        for j, q in enumerate(basis):
            if q[1] == p[0]:
                v = normal(_concat(q, p))
                if v:
                    mult[(i, j)] = dict(v)
    return Algebra(quiver, field, rels, basis, mult, nf, cutoff)


def _ideal_rows(rels, by_len, N, ids, field, truncate):
    """Rows u*rho*w.  Untruncated: all terms of length <= N.  Truncated: drop
    terms of length >= N, keep products whose shortest term is shorter than N."""
    for r in rels:
        lens = [len(p[2]) for _, p in r]
        lo, hi = min(lens), max(lens)
        s, t = r[0][1][0], r[0][1][1]
        budget = (N - 1 - lo) if truncate else (N - hi)
        if budget < 0:
            continue
        for lw in range(budget + 1):
            for w in by_len[lw]:
                if w[1] != s:
                    continue
                for lu in range(budget - lw + 1):
                    for u in by_len[lu]:
                        if u[0] != t:
                            continue
                        row = {}
                        for c, p in r:
                            path = (w[0], u[1], w[2] + p[2] + u[2])
                            if len(path[2]) >= N and truncate:
                                continue
                            k = ids[path]
                            nv = field.norm(row.get(k, 0) + c)
                            if nv:
                                row[k] = nv
                            else:
                                row.pop(k, None)
                        if row:
                            yield row
