import pytest

from exdg.exactness import check_exactness, is_left_exact
from exdg.linalg import GF, Mat, rank
from exdg.stable import (SVCat, SVMap, SVModel, TwoTermModel, ZeroModel, count_extensions, is_stable,
                         stable_gives_triangulated, sv_hom_complex, sv_homotopy_cokernel, sv_homotopy_kernel,
                         sv_maps)


@pytest.fixture(scope="module")
def cat():
    return SVCat(GF(2))


def _ranks(g):
    F = g.cat.field
    V, W = g.src, g.tgt
    r0 = rank(Mat.from_rows(F, [row[:V.d0] for row in g.m[:W.d0]])) if V.d0 and W.d0 else 0
    r1 = rank(Mat.from_rows(F, [row[V.d0:] for row in g.m[W.d0:]])) if V.d1 and W.d1 else 0
    return r0, r1


def expected_kernel(g):
    """(even, odd) dims of ker(g) + S cok(g)."""
    V, W = g.src, g.tgt
    r0, r1 = _ranks(g)
    k0, k1, c0, c1 = V.d0 - r0, V.d1 - r1, W.d0 - r0, W.d1 - r1
    return k0 + c1, k1 + c0


def expected_cokernel(g):
    V, W = g.src, g.tgt
    r0, r1 = _ranks(g)
    k0, k1, c0, c1 = V.d0 - r0, V.d1 - r1, W.d0 - r0, W.d1 - r1
    return c0 + k1, c1 + k0


def test_hom_dims(cat):
    assert sv_hom_complex(cat, cat.obj(1, 0), cat.obj(0, 1)) == {-4: 0, -3: 1, -2: 0, -1: 1, 0: 0, 1: 1}
    assert sv_hom_complex(cat, cat.obj(1, 1), cat.obj(1, 1))[0] == 2


def test_composition_closed(cat):
    V = cat.obj(1, 1)
    for f in sv_maps(cat, V, V, -1):
        for g in sv_maps(cat, V, V, -1):
            assert (g @ f).degree == -2


def test_kernel_examples(cat):
    V = cat.obj(1, 1)
    K = sv_homotopy_kernel(cat.identity(V))
    assert (K.A0.d0, K.A0.d1) == (0, 0)
    K = sv_homotopy_kernel(cat.zero(cat.obj(1, 0), cat.obj(1, 0)))
    assert (K.A0.d0, K.A0.d1) == (1, 1)
    g = SVMap(cat.obj(2, 0), cat.obj(1, 0), 0, [[1, 1]])
    K = sv_homotopy_kernel(g)
    assert (K.A0.d0, K.A0.d1) == (1, 0)
    C = sv_homotopy_cokernel(SVMap(cat.obj(1, 0), cat.obj(2, 0), 0, [[1], [0]]))
    assert (C.A2.d0, C.A2.d1) == (1, 0)


def test_kernel_formula_exhaustive(cat):
    n = 0
    for V in cat.objects(2):
        for W in cat.objects(2):
            for g in sv_maps(cat, V, W):
                K, C = sv_homotopy_kernel(g), sv_homotopy_cokernel(g)
                assert (K.A0.d0, K.A0.d1) == expected_kernel(g)
                assert (C.A2.d0, C.A2.d1) == expected_cokernel(g)
                assert check_exactness(K).short and check_exactness(C).short
                n += 1
    assert n == 99


def test_zero_homotopy_breaks_left_exactness(cat):
    fails = 0
    for V in cat.objects(2):
        for W in cat.objects(2):
            for g in sv_maps(cat, V, W):
                K = sv_homotopy_kernel(g, zero_homotopy=True)
                if not is_left_exact(K):
                    fails += 1
                    r0, r1 = _ranks(g)
                    assert W.d0 - r0 or W.d1 - r1  # only when the cokernel is nonzero
    assert fails > 0


def test_cokernel_of_kernel_recovers_target(cat):
    for V in cat.objects(2):
        for W in cat.objects(2):
            for g in sv_maps(cat, V, W):
                K = sv_homotopy_kernel(g)
                C = sv_homotopy_cokernel(K.f)
                assert (C.A2.d0, C.A2.d1) == (W.d0, W.d1)


def test_stable_and_triangulated():
    model = SVModel()
    rep = is_stable(model)
    assert rep.condition_a and rep.condition_b and rep.hcomplexes_checked == 4148
    tr = stable_gives_triangulated(model)
    assert tr.ok and tr.morphisms_checked == 99


def test_zero_model_is_stable():
    assert is_stable(ZeroModel()).stable


def test_a2_is_not_stable(a2):
    rep = is_stable(TwoTermModel(a2.indecomposables, samples=30, seed=0))
    assert rep.condition_a
    assert not rep.condition_b
    X = rep.lr_mismatch[0]
    v = check_exactness(X)
    assert v.right and not v.left


def test_extension_count(cat):
    assert count_extensions(cat, cat.obj(1, 0), cat.obj(0, 1), cat.default_probes()) == 2
    assert count_extensions(cat, cat.obj(1, 0), cat.obj(1, 0), cat.default_probes()) == 1


def _verdicts(cat):
    out = []
    for V in cat.objects(2):
        for W in cat.objects(2):
            for g in sv_maps(cat, V, W):
                for X in (sv_homotopy_kernel(g, zero_homotopy=True), sv_homotopy_cokernel(g, zero_homotopy=True)):
                    v = check_exactness(X)
                    out.append((v.left, v.right))
    return out


def test_verdicts_ignore_deeper_window():
    deep = SVCat(GF(2))
    deep.window = (-8, 1)
    assert _verdicts(SVCat(GF(2))) == _verdicts(deep)
