import itertools
import random

import pytest

from exdg.complexes import direct_sum
from exdg.exactness import check_exactness, is_ambient_exact, random_closed
from exdg.extri import (ExtClass, ExtError, ar_quiver, baer_sum, class_of, decompose, defect_of, ext_dim, ext_element,
                        ext_group, ext_space, is_split, pull_back, push_forward, realize, split_criteria,
                        substructure_lattice, verify_axioms, zero_class)


def _random_class(C, A, rng):
    sp = ext_space(C, A)
    return ext_element(C, A, [C.alg.field.random(rng) for _ in range(sp.dim)])


def test_ext_dims_a2(a2):
    o = a2.objects
    assert ext_dim(o["S2"], o["P1"]) == 1
    assert ext_dim(o["SP1"], o["P2"]) == 1
    assert ext_dim(o["SP2"], o["S2"]) == 1
    assert ext_dim(o["P1"], o["P2"]) == 0
    assert ext_dim(o["S2"], o["S2"]) == 0


def test_realize_round_trip(a2):
    objs = list(a2.indecomposables.values())
    for C, A in itertools.product(objs, repeat=2):
        for d in ext_group(C, A) + [zero_class(C, A)]:
            conf = realize(d, sub=None)
            assert check_exactness(conf.X).short and is_ambient_exact(conf.X)
            assert class_of(conf.X) == d


def test_class_of_shipped_sequences(a2):
    for X in a2.sequences.values():
        d = class_of(X)
        assert not d.is_zero()
        assert class_of(realize(d, sub=None).X) == d


def test_baer_group_axioms_on_bases(a2):
    objs = list(a2.indecomposables.values())
    for C, A in itertools.product(objs, repeat=2):
        basis = ext_group(C, A)
        z = zero_class(C, A)
        for x in basis:
            assert baer_sum(x, z) == x
            assert baer_sum(x, -x).is_zero()
            for y in basis:
                assert baer_sum(x, y) == baer_sum(y, x)
                for w in basis:
                    assert baer_sum(baer_sum(x, y), w) == baer_sum(x, baer_sum(y, w))


def test_split_criteria_agree(a3):
    objs = list(a3.indecomposables.values())
    rng = random.Random(3)
    split = nonsplit = 0
    for _ in range(40):
        C, A = rng.choice(objs), rng.choice(objs)
        X = realize(_random_class(C, A, rng), sub=None).X
        crit = split_criteria(X)
        assert len(set(crit.values())) == 1
        if is_split(X):
            split += 1
        else:
            nonsplit += 1
    assert split and nonsplit


def test_defect_identity(a3):
    ind = a3.indecomposables
    objs = list(ind.values())
    rng = random.Random(5)
    n = 0
    while n < 20:
        C, A, Cp = (rng.choice(objs) for _ in range(3))
        if not ext_dim(C, A):
            continue
        d = _random_class(C, A, rng)
        theta = pull_back(random_closed(Cp, C, 0, rng), d)
        u = realize(theta, sub=None).X.f
        mu = push_forward(u, d)
        dd, dt, dm = (defect_of(e, ind).as_dict() for e in (d, theta, mu))
        assert all(dd[k] == dt[k] + dm[k] for k in ind)
        n += 1


def test_defect_additive(a2):
    ind = a2.indecomposables
    b, g = class_of(a2.sequences["beta"]), class_of(a2.sequences["gamma"])
    Xb, Xg = realize(b, sub=None).X, realize(g, sub=None).X
    Cs, ic, pc = direct_sum([Xb.A2, Xg.A2])
    As, ia, pa = direct_sum([Xb.A0, Xg.A0])
    coc = ia[0] @ b.cocycle @ pc[0] + ia[1] @ g.cocycle @ pc[1]
    s = defect_of(ExtClass(Cs, As, coc), ind).as_dict()
    tb, tg = defect_of(b, ind).as_dict(), defect_of(g, ind).as_dict()
    assert all(s[k] == tb[k] + tg[k] for k in ind)


def test_ar_quiver_a2(a2):
    ar = ar_quiver(a2.indecomposables, a2.sequence_names)
    assert set(ar.nodes) == {"P1", "P2", "S2", "SP1", "SP2"}
    seqs = {s.name: (s.A, tuple(sorted(s.B)), s.C) for s in ar.sequences}
    assert seqs == {"alpha": ("P2", ("S2",), "SP1"), "beta": ("P1", ("P2",), "S2"),
                    "gamma": ("S2", ("SP1",), "SP2")}
    assert set(ar.arrows) == {("P1", "P2"), ("P2", "S2"), ("S2", "SP1"), ("SP1", "SP2")}
    for s in ar.sequences:
        assert s.defect.support() == {s.C}


def test_ar_quiver_a3(a3):
    ar = ar_quiver(a3.indecomposables)
    assert len(ar.sequences) == 6
    for s in ar.sequences:
        assert s.defect.length == 1


def test_decompose(a2):
    o = a2.objects
    S, _, _ = direct_sum([o["P1"], o["S2"], o["P1"]])
    assert decompose(S, a2.indecomposables) == {"P1": 2, "S2": 1}


def test_lattice_a2(a2):
    ar = ar_quiver(a2.indecomposables, a2.sequence_names)
    lat = substructure_lattice(ar, a2.indecomposables, samples=20, seed=0)
    assert len(lat.nodes) == 8
    members = [frozenset(n.members) for n in lat.nodes]
    expect = {(i, j) for i, a in enumerate(members) for j, b in enumerate(members)
              if a < b and len(b) == len(a) + 1}
    assert set(lat.hasse) == expect and len(expect) == 12
    assert all(n.certificate["ok"] for n in lat.nodes)


def test_lattice_rejects_bad_witness(a2):
    ar = ar_quiver(a2.indecomposables, a2.sequence_names)
    ar.sequences[1].C = ar.sequences[0].C  # two sequences claiming the same end
    with pytest.raises(ExtError):
        substructure_lattice(ar, a2.indecomposables, samples=2, certify=False)


def test_verify_axioms_small(a2):
    rep = verify_axioms(a2.indecomposables, samples=30, seed=1)
    assert rep.ok, rep.failures
    assert all(v > 0 for v in rep.counts.values())
