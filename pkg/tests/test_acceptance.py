"""Acceptance criteria.  Each test prints one PASS/FAIL line with its runtime budget.

The lines are printed even under pytest's output capture.  Run alone with
``pytest tests/test_acceptance.py -v`` or as a script: ``python3 tests/test_acceptance.py``."""

import io
import itertools
import json
import random
import sys
import time

import pytest

from exdg.cli import run
from exdg.complexes import category_of, direct_sum, stalk_A
from exdg.exactness import check_exactness, is_ambient_exact, random_closed, random_hcomplex
from exdg.extri import (baer_sum, class_of, defect_of, ext_dim, ext_element, ext_group, ext_space, pull_back,
                        push_forward, realize, split_criteria, verify_axioms, zero_class)
from exdg.h3t import compose6, differential6, random6
from exdg.linalg import GF, Mat, rank
from exdg.loader import load_fixture
from exdg.stable import (SVCat, SVModel, stable_gives_triangulated, sv_homotopy_cokernel,
                         sv_homotopy_kernel, sv_maps)

LINES = []


def report(num, title, ok, elapsed, budget, detail=""):
    passed = ok and elapsed < budget
    line = (f"{'PASS' if passed else 'FAIL'} criterion {num}: {title} "
            f"[{elapsed:.1f}s / budget {budget:.0f}s]" + (f" {detail}" if detail else ""))
    LINES.append(line)
    print(line, flush=True)
    return passed


def cli_json(*argv):
    out = io.StringIO()
    code = run(["--emit", "json", *argv], out)
    return code, json.loads(out.getvalue()) if out.getvalue() else None


# --- 1. AR-quiver of the two-term category over A2 ------------------------------------------

def criterion_1():
    t = time.perf_counter()
    code, rep = cli_json("--fixture", "a2-two-term", "ar-quiver")
    d = rep["data"]
    nodes_ok = set(d["nodes"]) == {"P1", "P2", "S2", "SP1", "SP2"} and len(d["nodes"]) == 5
    seqs = {k: (a, tuple(b), c) for k, (a, b, c) in d["sequences"].items()}
    seqs_ok = seqs == {"alpha": ("P2", ("S2",), "SP1"), "beta": ("P1", ("P2",), "S2"),
                       "gamma": ("S2", ("SP1",), "SP2")}
    arrows_ok = {tuple(e) for e in d["arrows"]} == {("P1", "P2"), ("P2", "S2"), ("S2", "SP1"), ("SP1", "SP2")}
    ok = code == 0 and nodes_ok and seqs_ok and arrows_ok
    return report(1, "A2 AR-quiver (5 nodes, sequences alpha, beta, gamma)", ok, time.perf_counter() - t, 5,
                  f"nodes={nodes_ok} sequences={seqs_ok} arrows={arrows_ok}")


# --- 2. Boolean lattice of substructures ---------------------------------------------------

def criterion_2():
    t = time.perf_counter()
    code, rep = cli_json("--fixture", "a2-two-term", "lattice", "--samples", "200", "--seed", "0")
    d = rep["data"]
    members = [frozenset(x for x in lab.strip("{}").split(",") if x) for lab in d["nodes"]]
    boolean = set(members) == {frozenset(c) for r in range(4) for c in itertools.combinations(
        ("alpha", "beta", "gamma"), r)}
    expect = {(i, j) for i, a in enumerate(members) for j, b in enumerate(members) if a < b and len(b - a) == 1}
    hasse_ok = {tuple(e) for e in d["hasse"]} == expect and len(expect) == 12
    certs = d["certificates"]
    certs_ok = all(c["ok"] and all(v == 200 for v in c["checked"].values()) for c in certs.values())
    ok = code == 0 and len(d["nodes"]) == 8 and boolean and hasse_ok and certs_ok
    return report(2, "lattice of substructures is B3 with certificates at 200 samples", ok,
                  time.perf_counter() - t, 30, f"nodes={len(d['nodes'])} hasse={hasse_ok} certified={certs_ok}")


# --- 3. the two-term counterexample ---------------------------------------------------------

def criterion_3():
    t = time.perf_counter()
    c1, props = cli_json("--fixture", "cycle3", "module", "S2", "--props")
    c2, hses = cli_json("--fixture", "cycle3", "check-hses", "counterexample")
    p, v = props["verdicts"], hses["verdicts"]
    ok = (c1 == 0 and c2 == 0 and p["pd"] == 1 and p["dual-pd"] == 1 and p["reflexive"] is True
          and v["short exact"] is True and v["ambient short exact"] is False)
    return report(3, "cycle3: S2 has pd 1, dual pd 1, reflexive; sequence two-term exact, not ambient",
                  ok, time.perf_counter() - t, 10,
                  f"pd={p['pd']} dual-pd={p['dual-pd']} reflexive={p['reflexive']} "
                  f"two-term={v['short exact']} ambient={v['ambient short exact']}")


# --- 4. hereditary maximality --------------------------------------------------------------

def criterion_4(n=500):
    t = time.perf_counter()
    fx = load_fixture("a2-two-term")
    objs = list(fx.indecomposables.values())
    objs += [direct_sum([x, y])[0] for i, x in enumerate(objs) for y in objs[i:]]
    rng = random.Random(fx.seed)
    passed = exceptions = draws = 0
    while passed < n and draws < 20 * n:
        draws += 1
        X = random_hcomplex(objs, rng)
        if X is None or not check_exactness(X).short:
            continue
        passed += 1
        if not is_ambient_exact(X):
            exceptions += 1
    ok = passed == n and exceptions == 0
    return report(4, f"{n} random two-term exact h-complexes on a2 are ambient exact", ok,
                  time.perf_counter() - t, 60, f"two-term exact={passed} exceptions={exceptions} draws={draws}")


# --- 5. super vector spaces ------------------------------------------------------------------

def _ranks(g):
    F, V, W = g.cat.field, g.src, g.tgt
    r0 = rank(Mat.from_rows(F, [row[:V.d0] for row in g.m[:W.d0]])) if V.d0 and W.d0 else 0
    r1 = rank(Mat.from_rows(F, [row[V.d0:] for row in g.m[W.d0:]])) if V.d1 and W.d1 else 0
    return r0, r1


def criterion_5():
    t = time.perf_counter()
    cat = SVCat(GF(2))
    mismatches = maps = 0
    for V in cat.objects(2):
        for W in cat.objects(2):
            for g in sv_maps(cat, V, W):
                maps += 1
                r0, r1 = _ranks(g)
                k0, k1, c0, c1 = V.d0 - r0, V.d1 - r1, W.d0 - r0, W.d1 - r1
                K, C = sv_homotopy_kernel(g), sv_homotopy_cokernel(g)
                fine = ((K.A0.d0, K.A0.d1) == (k0 + c1, k1 + c0) and (C.A2.d0, C.A2.d1) == (c0 + k1, c1 + k0)
                        and (g @ K.f).is_zero() and check_exactness(K).left and check_exactness(C).right)
                mismatches += not fine
    code, rep = cli_json("--fixture", "supervect", "stable-check")
    sv = rep["verdicts"]
    tri = stable_gives_triangulated(SVModel(cat, max_dim=2))
    ok = (mismatches == 0 and code == 0 and sv["condition (a)"] is True and sv["condition (b)"] is True
          and tri.ok and tri.morphisms_checked == maps)
    return report(5, "super vector spaces: closed-form kernels, stability (a)+(b), triangulated", ok,
                  time.perf_counter() - t, 30,
                  f"maps={maps} mismatches={mismatches} a={sv['condition (a)']} b={sv['condition (b)']} "
                  f"triangulated={tri.ok}")


# --- 6. property suites ----------------------------------------------------------------------

def _hom_leibniz(fx, rng, n):
    cat = category_of(fx.alg)
    objs = list(fx.objects.values()) + [stalk_A(fx.alg)]
    bad = 0
    for _ in range(n):
        X, Y, Z = (rng.choice(objs) for _ in range(3))
        p, q = rng.randint(-2, 2), rng.randint(-2, 2)
        f, g = cat.hom_space(X, Y, p).random(rng), cat.hom_space(Y, Z, q).random(rng)
        rhs = g.d() @ f + (g @ f.d()).scale(-1 if q % 2 else 1)
        bad += not (f.d().d().is_zero() and ((g @ f).d() - rhs).is_zero())
    return bad


def _six_leibniz(seqs, rng, n):
    bad = 0
    for _ in range(n):
        X, Y, Z = (rng.choice(seqs) for _ in range(3))
        m, k = rng.randint(-2, 1), rng.randint(-2, 1)
        H1, H2 = random6(X, Y, m, rng), random6(Y, Z, k, rng)
        rhs = compose6(differential6(H2), H1) + compose6(H2, differential6(H1)).scale(-1 if k % 2 else 1)
        bad += not (differential6(differential6(H1)).is_zero() and differential6(compose6(H2, H1)) == rhs)
    return bad


def _baer(fx):
    bad = 0
    objs = list(fx.indecomposables.values())
    for C, A in itertools.product(objs, repeat=2):
        basis, z = ext_group(C, A), zero_class(C, A)
        for x in basis:
            bad += not (baer_sum(x, z) == x and baer_sum(x, -x).is_zero())
            for y in basis:
                bad += baer_sum(x, y) != baer_sum(y, x)
                for w in basis:
                    bad += baer_sum(baer_sum(x, y), w) != baer_sum(x, baer_sum(y, w))
    return bad


def _random_class(C, A, rng):
    return ext_element(C, A, [C.alg.field.random(rng) for _ in range(ext_space(C, A).dim)])


def _split(fx, rng, n):
    objs = list(fx.indecomposables.values())
    bad = 0
    for _ in range(n):
        C, A = rng.choice(objs), rng.choice(objs)
        crit = split_criteria(realize(_random_class(C, A, rng), sub=None).X)
        bad += len(set(crit.values())) != 1 or None in crit.values()
    return bad


def _round_trips(fx):
    objs = list(fx.indecomposables.values())
    bad = 0
    for C, A in itertools.product(objs, repeat=2):
        for d in ext_group(C, A) + [zero_class(C, A)]:
            bad += class_of(realize(d, sub=None).X) != d
    return bad


def _defects(fx, rng, n):
    ind = fx.indecomposables
    objs = list(ind.values())
    bad = done = 0
    while done < n:
        C, A, Cp = (rng.choice(objs) for _ in range(3))
        if not ext_dim(C, A):
            continue
        d = _random_class(C, A, rng)
        theta = pull_back(random_closed(Cp, C, 0, rng), d)
        mu = push_forward(realize(theta, sub=None).X.f, d)
        dd, dt, dm = (defect_of(e, ind).as_dict() for e in (d, theta, mu))
        bad += any(dd[k] != dt[k] + dm[k] for k in ind)
        done += 1
    return bad


def criterion_6():
    t = time.perf_counter()
    a2, a3 = load_fixture("a2-two-term"), load_fixture("a3-two-term")
    rng = random.Random(0)
    fails = {
        "hom d^2/Leibniz": _hom_leibniz(a2, rng, 500) + _hom_leibniz(a3, rng, 500),
        "6-tuple d^2/Leibniz": _six_leibniz(list(a2.sequences.values()), rng, 1000),
        "Baer axioms": _baer(a2),
        "split criteria": _split(a3, rng, 200),
        "round trips": _round_trips(a2) + _round_trips(a3),
        "defect sequence": _defects(a3, rng, 100),
    }
    for name, fx in (("a2", a2), ("a3", a3)):
        r = verify_axioms(fx.indecomposables, samples=200, seed=fx.seed)
        fails[f"axioms {name}"] = sum(len(v) for v in r.failures.values())
    ok = not any(fails.values())
    detail = " ".join(f"{k.replace(' ', '_')}={v}" for k, v in fails.items())
    return report(6, "property suites (zero failures)", ok, time.perf_counter() - t, 300, "failures: " + detail)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 7)])
def test_acceptance(criterion, capsys):
    with capsys.disabled():
        print()
        ok = criterion()
    assert ok, LINES[-1]


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
