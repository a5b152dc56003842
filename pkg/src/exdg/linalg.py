"""Exact linear algebra over Q and F_p.

Scalars are plain Python values: ``int``/``Fraction`` for Q, reduced ``int``
residues for F_p.  The workhorse is :class:`Echelon`, an incrementally built
reduced row echelon form over sparse rows (``dict`` col -> value).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """The rationals (``p == 0``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p != 0 and (p >= 2**31 or not _is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime < 2^31, got {p}")
        self.p = p

    @property
    def kind(self) -> str:
        return "Rationals" if self.p == 0 else "PrimeField"

    @property
    def characteristic(self) -> int:
        return self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def norm(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return Fraction(1) / x

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def random(self, rng, small: int = 2):
        if self.p:
            return rng.randrange(self.p)
        return rng.randint(-small, small)

    def to_str(self, x) -> str:
        return str(x)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# --- sparse echelon --------------------------------------------------------

class Echelon:
    """Fully reduced row echelon form, built one row at a time.

    Rows are sparse dicts.  The pivot of each row is its smallest column under
    ``key`` (default: natural order), so the result is the canonical RREF.
    """

    def __init__(self, field: Field, key=None):
        self.F = field
        self.key = key
        self.rows: dict = {}  # pivot col -> row

    def __len__(self):
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        F = self.F
        out = dict(row)
        for c in [c for c in row if c in self.rows]:
            m = out.get(c)
            if not m:
                continue
            for k, v in self.rows[c].items():
                nv = F.norm(out.get(k, 0) - m * v)
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def add(self, row: dict) -> bool:
        """Insert a row; return False if it was already in the span."""
        F = self.F
        r = self.reduce(row)
        if not r:
            return False
        c = min(r, key=self.key) if self.key else min(r)
        inv = F.inv(r[c])
        r = {k: F.norm(v * inv) for k, v in r.items()}
        for pr in self.rows.values():
            m = pr.get(c)
            if m:
                for k, v in r.items():
                    nv = F.norm(pr.get(k, 0) - m * v)
                    if nv:
                        pr[k] = nv
                    else:
                        del pr[k]
        self.rows[c] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    @property
    def pivots(self) -> list:
        return sorted(self.rows, key=self.key) if self.key else sorted(self.rows)


def sparse(vec: Sequence) -> dict:
    return {i: x for i, x in enumerate(vec) if x != 0}


def dense(row: dict, n: int) -> list:
    out = [0] * n
    for i, x in row.items():
        out[i] = x
    return out


def kernel_sparse(rows: Iterable[dict], ncols: int, field: Field) -> list:
    """Kernel basis (dense vectors) of the matrix with the given sparse rows."""
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    piv = set(ech.rows)
    basis = []
    for f in range(ncols):
        if f in piv:
            continue
        v = [0] * ncols
        v[f] = 1
        for pc, pr in ech.rows.items():
            x = pr.get(f)
            if x:
                v[pc] = field.norm(-x)
        basis.append(v)
    return basis


def solve_sparse(rows: Sequence[dict], rhs: Sequence, ncols: int, field: Field):
    """One solution x of rows . x = rhs, or None.  Free variables are set to 0."""
    ech = Echelon(field)
    for r, b in zip(rows, rhs):
        rr = dict(r)
        if b != 0:
            rr[ncols] = b
        ech.add(rr)
    if ncols in ech.rows:
        return None
    x = [0] * ncols
    for pc, pr in ech.rows.items():
        x[pc] = pr.get(ncols, 0)
    return x


# --- dense matrices --------------------------------------------------------

@dataclass(frozen=True)
class Mat:
    field: Field
    rows: int
    cols: int
    data: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, field: Field, rows, cols: int | None = None) -> "Mat":
        rows = [tuple(field(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, tuple(rows))

    @classmethod
    def zero(cls, field: Field, r: int, c: int) -> "Mat":
        return cls(field, r, c, tuple((0,) * c for _ in range(r)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls(field, n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __matmul__(self, other):
        F = self.field
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.data)) if other.rows else [()] * other.cols
            out = tuple(
                tuple(F.norm(sum(a * b for a, b in zip(r, c))) for c in cols) for r in self.data
            )
            return Mat(F, self.rows, other.cols, out)
        if len(other) != self.cols:
            raise ValueError("shape mismatch")
        return [F.norm(sum(a * b for a, b in zip(r, other))) for r in self.data]

    def T(self) -> "Mat":
        return Mat(self.field, self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def sparse_rows(self) -> list:
        return [sparse(r) for r in self.data]

    def tolist(self) -> list:
        return [list(r) for r in self.data]


def rank_and_kernel(m: Mat):
    ker = kernel_sparse(m.sparse_rows(), m.cols, m.field)
    return m.cols - len(ker), ker


def rank(m: Mat) -> int:
    ech = Echelon(m.field)
    for r in m.sparse_rows():
        ech.add(r)
    return len(ech)


def solve(m: Mat, b: Sequence):
    if len(b) != m.rows:
        raise ValueError(f"dimension mismatch: matrix has {m.rows} rows, b has {len(b)}")
    F = m.field
    return solve_sparse(m.sparse_rows(), [F(x) for x in b], m.cols, F)


def cokernel_basis(m: Mat):
    """(dim, projection) with projection killing the column space of m."""
    F = m.field
    ech = Echelon(F)
    for c in range(m.cols):
        ech.add({i: m.data[i][c] for i in range(m.rows) if m.data[i][c] != 0})
    free = [i for i in range(m.rows) if i not in ech.rows]
    pos = {i: k for k, i in enumerate(free)}
    proj = [[0] * m.rows for _ in free]
    for j in range(m.rows):
        for k, x in ech.reduce({j: 1}).items():
            proj[pos[k]][j] = x
    return len(free), Mat(F, len(free), m.rows, tuple(tuple(r) for r in proj))


def block_diag(ms: Sequence[Mat], field: Field | None = None) -> Mat:
    if not ms:
        return Mat(field or QQ, 0, 0, ())
    F = ms[0].field
    if any(m.field != F for m in ms):
        raise ValueError("block_diag over mixed fields")
    cols = sum(m.cols for m in ms)
    out, off = [], 0
    for m in ms:
        for r in m.data:
            out.append((0,) * off + tuple(r) + (0,) * (cols - off - m.cols))
        off += m.cols
    return Mat(F, len(out), cols, tuple(out))
