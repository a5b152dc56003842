import itertools

import pytest

from exdg.algebra import InfiniteDimensional, InputError, Quiver, build_algebra, path_str
from exdg.linalg import QQ
from exdg.modules import (dual_module, hom_modules, is_reflexive, min_projective_presentation, proj_dim_leq,
                          projective, simple)


def quiver(verts, arrows):
    return Quiver(tuple(verts), tuple(arrows))


A2Q = quiver("12", [("a", "1", "2")])
A3Q = quiver("123", [("a", "1", "2"), ("b", "2", "3")])
C3Q = quiver("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])


def test_a2_basis():
    A = build_algebra(A2Q, [], QQ)
    assert A.dim == 3
    assert sorted(path_str(p) for p in A.basis) == ["a", "e1", "e2"]


def test_cycle3_dimension():
    # e1, e2, e3, a, b, c and a*c; b*a and c*b vanish
    A = build_algebra(C3Q, ["b*a", "c*b"], QQ)
    assert A.dim == 7
    assert A.check_associative()


def test_free_loop_is_rejected():
    with pytest.raises(InfiniteDimensional):
        build_algebra(quiver("1", [("x", "1", "1")]), [], QQ, length_cap=5)


@pytest.mark.parametrize("bad", ["a", "e1", "q*a", "a*b"])
def test_bad_relations(bad):
    with pytest.raises(InputError):
        build_algebra(A3Q, [bad], QQ)


def test_associativity_of_structure_constants():
    A = build_algebra(quiver("1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")]), ["b*a", "c*b"], QQ)
    assert A.dim == 7
    for i, j, k in itertools.product(range(A.dim), repeat=3):
        x, y, z = ({i: 1}, {j: 1}, {k: 1})
        assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))


def test_projective_dimension_vectors():
    # e_v A at vertex u is spanned by the paths u -> v
    A = build_algebra(A2Q, [], QQ)
    assert projective(A, "1").dim_vector() == (1, 0)
    assert projective(A, "2").dim_vector() == (1, 1)
    for alg in (A, build_algebra(C3Q, ["b*a", "c*b"], QQ)):
        assert sum(projective(alg, v).dim for v in alg.vertices) == alg.dim


def test_hom_between_projectives():
    A = build_algebra(A2Q, [], QQ)
    P1, P2 = projective(A, "1"), projective(A, "2")
    assert len(hom_modules(P1, P2)) == 1
    assert len(hom_modules(P2, P1)) == 0
    assert len(hom_modules(P2, P2)) == 1


def test_yoneda_and_relations_act_trivially():
    A = build_algebra(C3Q, ["b*a", "c*b"], QQ)
    for M in [simple(A, v) for v in A.vertices] + [projective(A, v) for v in A.vertices]:
        assert M.check()
        for u in A.vertices:
            assert len(hom_modules(projective(A, u), M)) == M.dims[u]


def test_duals():
    A = build_algebra(A2Q, [], QQ)
    D, _ = dual_module(projective(A, "1"))
    assert D.alg is A.op and D.dim == 2
    S2 = simple(A, "2")
    D, _ = dual_module(S2)
    assert D.dim == 0
    assert not is_reflexive(S2)
    assert is_reflexive(projective(A, "2"))


def test_presentations():
    A = build_algebra(A2Q, [], QQ)
    pres = min_projective_presentation(simple(A, "2"))
    assert pres.exact and pres.p1 == ["1"] and pres.p0 == ["2"]
    pres = min_projective_presentation(projective(A, "2"))
    assert pres.exact and pres.p1 == [] and pres.p0 == ["2"]
    C = build_algebra(C3Q, ["b*a", "c*b"], QQ)
    pres = min_projective_presentation(simple(C, "2"))
    assert pres.exact and pres.p1


def test_projective_dimension_and_reflexivity():
    C = build_algebra(C3Q, ["b*a", "c*b"], QQ)
    S2 = simple(C, "2")
    assert proj_dim_leq(S2, 1)[0]
    assert not proj_dim_leq(S2, 0)[0]
    assert is_reflexive(S2)
    A3 = build_algebra(A3Q, [], QQ)
    assert not proj_dim_leq(simple(A3, "2"), 0)[0]
    assert proj_dim_leq(projective(A3, "3"), 0)[0]
