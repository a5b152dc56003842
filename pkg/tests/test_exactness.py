import random

import pytest

from exdg.algebra import InputError
from exdg.complexes import category_of, direct_sum, zero_complex
from exdg.exactness import (HCospan, HSpan, ambient_probes, back_edge, check_exactness, counterexample_sequence,
                            dual_complex, dual_h3, front_edge, homotopy_cokernel, homotopy_kernel,
                            homotopy_pullback, homotopy_pushout, is_ambient_exact, is_left_exact,
                            is_pullback_square, is_pushout_square, is_right_exact, lift_through_left_exact,
                            lift_through_right_exact, pasting_check, pullback_completion, pushout_completion,
                            random_hcomplex, two_term_left_exact)
from exdg.h3t import HSquare, identity6
from exdg.modules import simple


@pytest.mark.parametrize("name", ["alpha", "beta", "gamma"])
def test_shipped_sequences_are_short_exact(a2, name):
    X = a2.sequences[name]
    v = check_exactness(X)
    assert v.left and v.right and v.short
    assert is_ambient_exact(X)
    assert two_term_left_exact(X)


def test_kernel_of_projection_is_p1(a2):
    K = homotopy_kernel(a2.maps["p"])
    assert K is not None and is_left_exact(K)
    assert K.A0.dims() == a2.objects["P1"].dims()


def test_kernel_of_connecting_map(a2):
    K = homotopy_kernel(a2.maps["q"])
    assert K is not None
    assert K.A0.dims() == a2.objects["P2"].dims()


def test_cokernel_of_arrow(a2):
    C = homotopy_cokernel(a2.maps["a"])
    assert C is not None and is_right_exact(C)
    assert C.A2.dims() == a2.objects["S2"].dims()


def test_kernel_rejects_wrong_degree(a2):
    cat = category_of(a2.alg)
    g = cat.hom_space(a2.objects["P1"], a2.objects["SP1"], -1).basis()[0]
    with pytest.raises(InputError):
        homotopy_kernel(g)


def test_cycle3_counterexample(cycle3):
    X = counterexample_sequence(simple(cycle3.alg, "2"))
    assert check_exactness(X).short
    assert two_term_left_exact(X)
    v = check_exactness(X, ambient_probes(cycle3.alg))
    assert not v.short
    assert not is_ambient_exact(X)
    fx = cycle3.sequences["counterexample"]
    for a, b in [(X.A0, fx.A0), (X.A1, fx.A1), (X.A2, fx.A2)]:
        assert a.dims() == b.dims()


def test_dual_is_involutive(a2):
    for X in a2.objects.values():
        assert dual_complex(dual_complex(X)).dims() == X.dims()


def test_dual_swaps_exactness(a2):
    for X in a2.sequences.values():
        D = dual_h3(X)
        assert check_exactness(D).short
        assert is_ambient_exact(D)


def test_pullback_and_pushout(a2):
    sq, K = homotopy_pullback(a2.cospans["pq"])
    assert sq.identity_holds() and is_pullback_square(sq) and is_left_exact(K)
    sq, K = homotopy_pushout(a2.spans["aa"])
    assert sq.identity_holds() and is_pushout_square(sq) and is_right_exact(K)


def test_pasting(a2):
    sq, _ = homotopy_pullback(a2.cospans["pq"])
    cat = category_of(a2.alg)
    B, C = sq.pp.src, sq.pp.tgt
    # identities down the sides of pp: a pullback, so the outer square must be one too
    upper = HSquare(pp=sq.pp, b=cat.identity(B), c=cat.identity(C), p=sq.pp, s=cat.zero(B, C, -1))
    outer, ok = pasting_check(upper, sq)
    assert ok and outer.identity_holds()
    assert is_pullback_square(outer)


def test_lifts_on_identities(a2):
    for X in a2.sequences.values():
        one = identity6(X)
        L = lift_through_left_exact(X, X, back_edge(one))
        assert L.is_closed() and L.r1 == one.r1 and L.r2 == one.r2
        R = lift_through_right_exact(X, X, front_edge(one))
        assert R.is_closed() and R.r0 == one.r0 and R.r1 == one.r1


def test_completions(a2):
    beta = a2.sequences["beta"]
    cat = category_of(a2.alg)
    a = cat.identity(beta.A0)
    Xp, mu = pushout_completion(beta, a)
    assert mu.is_closed() and is_right_exact(Xp)
    Xq, nu = pullback_completion(beta, cat.identity(beta.A2))
    assert nu.is_closed() and is_left_exact(Xq)


def test_random_two_term_exact_are_ambient_exact(a2):
    objs = list(a2.indecomposables.values())
    objs += [direct_sum([x, y])[0] for i, x in enumerate(objs) for y in objs[i:]]
    rng = random.Random(1)
    seen = 0
    for _ in range(300):
        X = random_hcomplex(objs, rng)
        if X is None or not check_exactness(X).short:
            continue
        seen += 1
        assert is_ambient_exact(X)
    assert seen > 50


def test_lift_rejects_open_back_square(a2):
    beta = a2.sequences["beta"]
    cat = category_of(a2.alg)
    theta = back_edge(identity6(beta))
    theta.l = cat.zero(beta.A2, beta.A2, 0)  # r2 = 0 does not match the identity middle term
    with pytest.raises(InputError):
        lift_through_left_exact(beta, beta, theta)


def test_cokernel_of_projection_is_shifted_p1(a2):
    C = homotopy_cokernel(a2.maps["p"])
    assert C is not None and C.A2.dims() == a2.objects["SP1"].dims()


def test_pullback_along_zero_is_kernel(a2):
    cat = category_of(a2.alg)
    Z = zero_complex(a2.alg)
    q = a2.maps["q"]
    sq, K = homotopy_pullback(HCospan(p=q, c=cat.zero(Z, q.tgt, 0)))
    assert sq.b.src.dims() == a2.objects["P2"].dims()


def test_pushout_along_zero_is_cokernel(a2):
    cat = category_of(a2.alg)
    Z = zero_complex(a2.alg)
    q = a2.maps["q"]
    sq, K = homotopy_pushout(HSpan(b=q, pp=cat.zero(q.src, Z, 0)))
    assert sq.p.tgt.dims() == a2.objects["SP2"].dims()
