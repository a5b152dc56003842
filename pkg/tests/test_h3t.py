import random

import pytest

from exdg.complexes import category_of, zero_map
from exdg.h3t import (H3Error, compose6, differential6, equivalence6, identity6, inverse6, is_iso6,
                      mor_differential, mor_identity, random6, restrict, validate_h3, MorMorphism)


def test_fixture_sequences_are_hcomplexes(a2):
    for X in a2.sequences.values():
        assert X.defects() == []


def test_validate_rejects_bad_homotopy(a2):
    beta = a2.sequences["beta"]
    with pytest.raises(H3Error):
        validate_h3(beta.A0, beta.A1, beta.A2, beta.f, beta.j, zero_map(beta.A0, beta.A2, -1))
    with pytest.raises(H3Error):
        validate_h3(beta.A0, beta.A1, beta.A2, beta.f, beta.j, zero_map(beta.A0, beta.A2, 0))


def test_identity6_is_closed_and_unital(a2):
    rng = random.Random(0)
    for X in a2.sequences.values():
        I = identity6(X)
        assert I.is_closed()
        for Y in a2.sequences.values():
            H = random6(X, Y, rng.randint(-1, 1), rng)
            assert compose6(H, I) == H
            assert compose6(identity6(Y), H) == H


def test_six_tuple_d_squared_and_leibniz(a2):
    rng = random.Random(5)
    seqs = list(a2.sequences.values())
    for _ in range(60):
        X, Y, Z = (rng.choice(seqs) for _ in range(3))
        m, n = rng.randint(-2, 1), rng.randint(-2, 1)
        H1, H2 = random6(X, Y, m, rng), random6(Y, Z, n, rng)
        assert differential6(differential6(H1)).is_zero()
        lhs = differential6(compose6(H2, H1))
        rhs = compose6(differential6(H2), H1) + compose6(H2, differential6(H1)).scale(-1 if n % 2 else 1)
        assert lhs == rhs


def test_equivalence_and_inverse(a2):
    for X in a2.sequences.values():
        E = equivalence6(X, X)
        assert E is not None and E.is_closed() and is_iso6(E)
        assert inverse6(identity6(X)) is not None
    neg = a2.sequences["beta"].negated()
    assert neg.defects() == []


def test_squares_from_six_tuples(a2):
    for X in a2.sequences.values():
        I = identity6(X)
        for which in ("front", "back"):
            assert restrict(I, which).identity_holds()
        assert restrict(I, "front").as_hcomplex().defects() == []


def test_mor_differential_squares_to_zero(a2):
    cat = category_of(a2.alg)
    rng = random.Random(2)
    f, f2 = a2.maps["a"], a2.maps["p"]
    for n in range(-2, 2):
        m = MorMorphism(f, f2, n, cat.hom_space(f.src, f2.src, n).random(rng),
                        cat.hom_space(f.src, f2.tgt, n - 1).random(rng), cat.hom_space(f.tgt, f2.tgt, n).random(rng))
        assert mor_differential(mor_differential(m)).is_zero()
    assert mor_differential(mor_identity(f)).is_zero()
