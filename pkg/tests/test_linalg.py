import random

import pytest

from exdg.linalg import GF, QQ, Field, Mat, block_diag, cokernel_basis, rank, rank_and_kernel, solve

F7 = GF(7)


def M(rows, F=QQ, cols=None):
    return Mat.from_rows(F, rows, cols)


def test_field_characteristics():
    assert QQ.characteristic == 0 and QQ.kind == "Rationals"
    assert GF(5).kind == "PrimeField"
    with pytest.raises(ValueError):
        Field(4)
    assert GF(7)("1/2") == 4
    assert QQ("1/2") * 2 == 1


def test_rank_and_kernel_examples():
    r, ker = rank_and_kernel(M([[1, 0], [0, 1]]))
    assert r == 2 and ker == []
    r, ker = rank_and_kernel(M([[0, 0], [0, 0]]))
    assert r == 0 and sorted(ker) == [[0, 1], [1, 0]]
    r, ker = rank_and_kernel(M([[1, 2], [2, 4]]))
    assert r == 1 and len(ker) == 1
    (v,) = ker
    assert v[0] == -2 * v[1] and v[1] != 0


def test_solve_examples():
    assert solve(M([[1, 0], [0, 1]]), [3, 5]) == [3, 5]
    assert solve(M([[0, 0], [0, 0]]), [1, 0]) is None
    assert solve(M([[1, 1], [0, 1]]), [2, 1]) == [1, 1]
    with pytest.raises(ValueError):
        solve(M([[1, 0]]), [1, 2])


def test_cokernel_examples():
    assert cokernel_basis(M([[1, 0], [0, 1]]))[0] == 0
    dim, proj = cokernel_basis(Mat.zero(QQ, 2, 3))
    assert dim == 2 and proj == Mat.identity(QQ, 2)
    dim, proj = cokernel_basis(M([[1], [2]]))
    assert dim == 1 and (proj @ M([[1], [2]])).is_zero()


def test_block_diag_examples():
    assert block_diag([M([[1]]), M([[1]])]) == Mat.identity(QQ, 2)
    e = block_diag([])
    assert (e.rows, e.cols) == (0, 0)
    b = block_diag([M([[1, 0]]), M([[2]])])
    assert (b.rows, b.cols) == (2, 3) and rank(b) == 2
    with pytest.raises(ValueError):
        block_diag([M([[1]]), M([[1]], F7)])


def _rand(rng, r, c):
    return Mat.from_rows(F7, [[rng.randrange(7) for _ in range(c)] for _ in range(r)], c)


def test_random_solve_round_trip_f7():
    rng = random.Random(7)
    for _ in range(100):
        m = _rand(rng, rng.randint(1, 5), rng.randint(1, 5))
        r, ker = rank_and_kernel(m)
        assert r + len(ker) == m.cols
        assert all(not any(m @ v) for v in ker)
        x = [rng.randrange(7) for _ in range(m.cols)]
        y = solve(m, m @ x)
        assert y is not None and m @ y == m @ x


def test_rank_additive_and_cokernel_annihilates():
    rng = random.Random(11)
    for _ in range(60):
        a = _rand(rng, rng.randint(1, 4), rng.randint(1, 4))
        b = _rand(rng, rng.randint(1, 4), rng.randint(1, 4))
        assert rank(block_diag([a, b])) == rank(a) + rank(b)
        dim, proj = cokernel_basis(a)
        assert dim == a.rows - rank(a)
        assert (proj @ a).is_zero()
