"""3-term homotopy complexes, their 6-tuple morphisms, Mor(A) and homotopy squares."""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import LinearSystem, cat_of, homotopy_inverse


class H3Error(ValueError):
    pass


def _sign(n):
    return -1 if n % 2 else 1


_cat = cat_of


@dataclass
class HComplex3:
    """A0 --f--> A1 --j--> A2 with h: A0 -> A2 of degree -1 and d(h) = -j f."""

    A0: object
    A1: object
    A2: object
    f: object
    j: object
    h: object
    name: str = ""

    @property
    def alg(self):
        return self.f.alg

    @property
    def cat(self):
        return getattr(self.f, "cat", None)

    def defects(self) -> list:
        bad = []
        if not self.f.d().is_zero():
            bad.append("d(f) != 0")
        if not self.j.d().is_zero():
            bad.append("d(j) != 0")
        if not (self.h.d() + self.j @ self.f).is_zero():
            bad.append("d(h) + j f != 0")
        return bad

    def negated(self) -> "HComplex3":
        """The sequence (-f, j, -h) representing the negative class."""
        return HComplex3(self.A0, self.A1, self.A2, -self.f, self.j, -self.h, self.name and f"-{self.name}")


def validate_h3(A0, A1, A2, f, j, h, name="") -> HComplex3:
    if f.src is not A0 or f.tgt is not A1 or j.src is not A1 or j.tgt is not A2:
        raise H3Error("shapes of f, j do not match the terms")
    if h.src is not A0 or h.tgt is not A2 or h.degree != -1 or f.degree != 0 or j.degree != 0:
        raise H3Error("h must be a degree -1 map A0 -> A2; f, j of degree 0")
    X = HComplex3(A0, A1, A2, f, j, h, name)
    bad = X.defects()
    if bad:
        raise H3Error("invalid h-complex: " + ", ".join(bad))
    return X


@dataclass
class SixTuple:
    """(r0, r1, r2, s1, s2, t) of degrees (n, n, n, n-1, n-1, n-2) from X to Y."""

    src: HComplex3
    tgt: HComplex3
    degree: int
    r0: object
    r1: object
    r2: object
    s1: object
    s2: object
    t: object

    def parts(self):
        return [self.r0, self.r1, self.r2, self.s1, self.s2, self.t]

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts())

    def __add__(self, other):
        return SixTuple(self.src, self.tgt, self.degree, *[a + b for a, b in zip(self.parts(), other.parts())])

    def __sub__(self, other):
        return SixTuple(self.src, self.tgt, self.degree, *[a - b for a, b in zip(self.parts(), other.parts())])

    def scale(self, c):
        return SixTuple(self.src, self.tgt, self.degree, *[a.scale(c) for a in self.parts()])

    def __eq__(self, other):
        return (self - other).is_zero()

    __hash__ = None

    def is_closed(self) -> bool:
        return differential6(self).is_zero()


def six_spaces(X: HComplex3, Y: HComplex3, n: int) -> list:
    cat = _cat(X.f)
    return [cat.hom_space(X.A0, Y.A0, n), cat.hom_space(X.A1, Y.A1, n), cat.hom_space(X.A2, Y.A2, n),
            cat.hom_space(X.A0, Y.A1, n - 1), cat.hom_space(X.A1, Y.A2, n - 1),
            cat.hom_space(X.A0, Y.A2, n - 2)]


def zero6(X, Y, n=0) -> SixTuple:
    return SixTuple(X, Y, n, *[sp.zero() for sp in six_spaces(X, Y, n)])


def identity6(X: HComplex3) -> SixTuple:
    cat = _cat(X.f)
    z = six_spaces(X, X, 0)
    return SixTuple(X, X, 0, cat.identity(X.A0), cat.identity(X.A1), cat.identity(X.A2),
                    z[3].zero(), z[4].zero(), z[5].zero())


def random6(X, Y, n, rng) -> SixTuple:
    return SixTuple(X, Y, n, *[sp.random(rng) for sp in six_spaces(X, Y, n)])


def differential6(H: SixTuple) -> SixTuple:
    X, Y, n = H.src, H.tgt, H.degree
    e = _sign(n)
    r0, r1, r2, s1, s2, t = H.parts()
    f, j, h = X.f, X.j, X.h
    f_, j_, h_ = Y.f, Y.j, Y.h
    s1n = s1.d() + (f_ @ r0).scale(-e) + (r1 @ f).scale(e)
    s2n = s2.d() + (j_ @ r1).scale(-e) + (r2 @ j).scale(e)
    tn = t.d() + (j_ @ s1).scale(e) + h_ @ r0 + (s2 @ f).scale(e) + (r2 @ h).scale(-e)
    return SixTuple(X, Y, n + 1, r0.d(), r1.d(), r2.d(), s1n, s2n, tn)


def compose6(H2: SixTuple, H1: SixTuple) -> SixTuple:
    """H2 o H1 with Koszul signs from the degree of H1."""
    if H1.tgt is not H2.src:
        raise H3Error("non-composable 6-tuples")
    r = H1.degree
    e = _sign(r)
    a0, a1, a2, b1, b2, c = H1.parts()
    x0, x1, x2, y1, y2, z = H2.parts()
    s1 = x1 @ b1 + (y1 @ a0).scale(e)
    s2 = x2 @ b2 + (y2 @ a1).scale(e)
    t = x2 @ c + z @ a0 + (y2 @ b1).scale(-e)
    return SixTuple(H1.src, H2.tgt, H1.degree + H2.degree, x0 @ a0, x1 @ a1, x2 @ a2, s1, s2, t)


def homotopic6(H: SixTuple, H2: SixTuple):
    """Witness G of degree -1 with differential6(G) = H - H2, or None."""
    if not H.is_closed() or not H2.is_closed():
        raise H3Error("homotopic6 needs closed 6-tuples")
    X, Y, n = H.src, H.tgt, H.degree
    diff = H - H2
    spaces = six_spaces(X, Y, n - 1)

    def res(u):
        G = SixTuple(X, Y, n - 1, *u)
        return (differential6(G) - diff).parts()

    sol = LinearSystem(_cat(X.f), spaces, res).solve()
    return SixTuple(X, Y, n - 1, *sol) if sol else None


def is_iso6(H: SixTuple) -> bool:
    if not H.is_closed():
        raise H3Error("is_iso6 needs a closed 6-tuple")
    return all(homotopy_inverse(r) is not None for r in (H.r0, H.r1, H.r2))




def inverse6(H: SixTuple):
    """Closed G: Y -> X with G o H homotopic to the identity (linear solve), or None."""
    X, Y = H.src, H.tgt
    gsp = six_spaces(Y, X, 0)
    ksp = six_spaces(X, X, -1)
    idX = identity6(X)

    def res(u):
        G = SixTuple(Y, X, 0, *u[:6])
        K = SixTuple(X, X, -1, *u[6:])
        return differential6(G).parts() + (compose6(G, H) - idX - differential6(K)).parts()

    sol = LinearSystem(_cat(X.f), gsp + ksp, res).solve()
    return SixTuple(Y, X, 0, *sol[:6]) if sol else None


def equivalence6(X: HComplex3, Y: HComplex3):
    """Closed 6-tuple X -> Y with identity ends (r0 = 1, r2 = 1), or None."""
    if X.A0 is not Y.A0 or X.A2 is not Y.A2:
        raise H3Error("equivalence needs identical end terms")
    cat = _cat(X.f)
    sp = six_spaces(X, Y, 0)
    id0, id2 = cat.identity(X.A0), cat.identity(X.A2)

    def res(u):
        r1, s1, s2, t = u
        return differential6(SixTuple(X, Y, 0, id0, r1, id2, s1, s2, t)).parts()

    sol = LinearSystem(cat, [sp[1], sp[3], sp[4], sp[5]], res).solve()
    if sol is None:
        return None
    r1, s1, s2, t = sol
    return SixTuple(X, Y, 0, id0, r1, id2, s1, s2, t)


# --- Mor(A) -------------------------------------------------------------------------

@dataclass
class MorMorphism:
    """[[j, 0], [h, l]] from the object f: A -> B to f2: A2 -> B2, of degree m."""

    f: object
    f2: object
    degree: int
    j: object
    h: object
    l: object

    def is_zero(self):
        return self.j.is_zero() and self.h.is_zero() and self.l.is_zero()


def mor_differential(m: MorMorphism) -> MorMorphism:
    sgn = _sign(m.degree)
    mid = m.h.d() + m.f2 @ m.j + (m.l @ m.f).scale(-sgn)
    return MorMorphism(m.f, m.f2, m.degree + 1, -m.j.d(), mid, m.l.d())


def mor_identity(f) -> MorMorphism:
    cat = _cat(f)
    return MorMorphism(f, f, 0, cat.identity(f.src), cat.hom_space(f.src, f.tgt, -1).zero(), cat.identity(f.tgt))


# --- homotopy squares --------------------------------------------------------------

@dataclass
class HSquare:
    """B' --p'--> C' ; B' --b--> B ; C' --c--> C ; B --p--> C ; s: B' -> C of degree -1
    with d(s) = c p' - p b."""

    pp: object  # p': B' -> C'
    b: object
    c: object
    p: object
    s: object

    def identity_holds(self) -> bool:
        return (self.s.d() - (self.c @ self.pp - self.p @ self.b)).is_zero()

    def as_hcomplex(self) -> HComplex3:
        """B' --[b; p']--> B + C' --[p, -c]--> C with h = s."""
        from .exactness import sum_object, map_into_sum, map_out_of_sum
        cat = _cat(self.b)
        S = sum_object(cat, [self.b.tgt, self.pp.tgt])
        f = map_into_sum(cat, S, [self.b, self.pp])
        g = map_out_of_sum(cat, S, [self.p, -self.c])
        return HComplex3(self.b.src, S[0], self.p.tgt, f, g, self.s)


def restrict(alpha: SixTuple, which: str) -> HSquare:
    """Front: the square on f (f, f', r0, r1, s1); back: on j (j, j', r1, r2, s2)."""
    X, Y = alpha.src, alpha.tgt
    if which == "front":
        return HSquare(pp=alpha.r0, b=X.f, c=Y.f, p=alpha.r1, s=alpha.s1)
    if which == "back":
        return HSquare(pp=alpha.r1, b=X.j, c=Y.j, p=alpha.r2, s=alpha.s2)
    raise ValueError("which must be 'front' or 'back'")
