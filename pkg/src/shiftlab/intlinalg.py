"""Exact integer matrix arithmetic: Smith/Hermite normal forms, solving, lattices.

Everything here works over plain Python ints (arbitrary precision), so
intermediate entry growth during elimination is harmless.  All values are
immutable after construction and all functions are pure.

Conventions, fixed so that outputs are reproducible:

* Smith normal form pivoting picks the smallest nonzero absolute value in
  the remaining submatrix, ties broken by row then column.
* Hermite normal form is column-style: ``M @ T`` has the canonical form in
  its leading columns and zeros afterwards.  Pivots are positive, pivot rows
  strictly increase, entries right of a pivot in its row are zero, and the
  remaining entries of each pivot row are reduced into ``[0, pivot)``.  Zero
  columns are trimmed from the returned ``H``.  This makes the basis of a
  lattice unique, so lattice equality is plain matrix equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class DimensionMismatch(ValueError):
    """Shapes of the operands do not compose."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != m:
                raise ValueError("ragged rows")
        return IntMatrix(n, m, tuple(int(x) for r in rows for x in r))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, (0,) * (rows * cols))

    @staticmethod
    def column(vec) -> "IntMatrix":
        vec = [int(x) for x in vec]
        return IntMatrix(len(vec), 1, tuple(vec))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries)

    @property
    def is_zero_one(self) -> bool:
        return all(x in (0, 1) for x in self.entries)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            ai = a[i]
            for j in range(other.cols):
                out.append(sum(ai[k] * b[k][j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def mul_vec(self, vec) -> tuple:
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        return tuple(sum(self.row(i)[k] * vec[k] for k in range(self.cols))
                     for i in range(self.rows))

    def pow(self, n: int) -> "IntMatrix":
        if not self.is_square:
            raise DimensionMismatch("power of a non-square matrix")
        if n < 0:
            raise ValueError("negative power")
        result = IntMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base if n > 1 else base
            n >>= 1
        return result

    def trace(self) -> int:
        if not self.is_square:
            raise DimensionMismatch("trace of a non-square matrix")
        return sum(self[i, i] for i in range(self.rows))

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product; kron(P, Q) @ kron(v, w) = kron(P v, Q w)."""
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                for j in range(self.cols):
                    sij = self[i, j]
                    for l in range(other.cols):
                        out.append(sij * other[k, l])
        return IntMatrix(self.rows * other.rows, self.cols * other.cols, tuple(out))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in self.row(i))
                               for i in range(self.rows)) + "]"


def kron_vec(v, w) -> tuple:
    """Kronecker product of vectors, matching IntMatrix.kron index order."""
    return tuple(a * b for a in v for b in w)


@dataclass(frozen=True)
class SmithForm:
    """U @ M @ V = D with U, V unimodular and D diagonal with divisor chain."""

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix
    divisors: tuple


def snf(M: IntMatrix) -> SmithForm:
    """Smith normal form with transforms.

    Deterministic: the pivot is always the smallest nonzero absolute value of
    the remaining submatrix, ties broken by row index then column index.
    """
    r, c = M.rows, M.cols
    a = M.to_rows()
    u = IntMatrix.identity(r).to_rows()
    v = IntMatrix.identity(c).to_rows()

    def swap_rows(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]
        u[i1], u[i2] = u[i2], u[i1]

    def swap_cols(j1, j2):
        for row in a:
            row[j1], row[j2] = row[j2], row[j1]
        for row in v:
            row[j1], row[j2] = row[j2], row[j1]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        ad, asr = a[dst], a[src]
        for j in range(c):
            ad[j] += q * asr[j]
        ud, usr = u[dst], u[src]
        for j in range(r):
            ud[j] += q * usr[j]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def pick_pivot(t):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return best

    t = 0
    while t < min(r, c):
        best = pick_pivot(t)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            # clear column t
            dirty = False
            for i in range(r):
                if i != t and a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(c):
                if j != t and a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            p = a[t][t]
            offender = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    divisors = tuple(a[i][i] for i in range(min(r, c)))
    return SmithForm(U=IntMatrix.from_rows(u), V=IntMatrix.from_rows(v),
                     D=IntMatrix.from_rows(a) if r else IntMatrix.zeros(r, c),
                     divisors=divisors)


def _hnf_raw(M: IntMatrix):
    """Column Hermite form without trimming.

    Returns (h, t, pivots) where M @ t == h, t is unimodular, and pivots is a
    list of (row, col) positions; columns past len(pivots) are zero.
    """
    r, c = M.rows, M.cols
    a = M.to_rows()
    t = IntMatrix.identity(c).to_rows()

    def swap_cols(j1, j2):
        for row in a:
            row[j1], row[j2] = row[j2], row[j1]
        for row in t:
            row[j1], row[j2] = row[j2], row[j1]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in t:
            row[dst] += q * row[src]

    def negate_col(j):
        for row in a:
            row[j] = -row[j]
        for row in t:
            row[j] = -row[j]

    pivots = []
    cur = 0
    for i in range(r):
        if cur >= c:
            break
        while True:
            nonzero = [(abs(a[i][j]), j) for j in range(cur, c) if a[i][j] != 0]
            if not nonzero:
                break
            _, jmin = min(nonzero)
            if jmin != cur:
                swap_cols(cur, jmin)
            done = True
            for j in range(cur + 1, c):
                if a[i][j] != 0:
                    q = a[i][j] // a[i][cur]
                    add_col(j, cur, -q)
                    if a[i][j] != 0:
                        done = False
            if done:
                break
        if cur < c and a[i][cur] != 0:
            if a[i][cur] < 0:
                negate_col(cur)
            pivots.append((i, cur))
            cur += 1
    # canonicalize: in each pivot row, reduce the entries of earlier columns
    # into [0, pivot); entries right of the pivot are already zero
    for (pr, pc) in pivots:
        p = a[pr][pc]
        for j in range(pc):
            q = a[pr][j] // p
            if q:
                add_col(j, pc, -q)
    return a, t, pivots


def hnf(M: IntMatrix):
    """Canonical column Hermite normal form.

    Returns (H, T) with T unimodular and M @ T = [H | 0]: H holds the nonzero
    columns of the reduced matrix (possibly zero columns of M are trimmed).
    """
    a, t, pivots = _hnf_raw(M)
    k = len(pivots)
    h = IntMatrix.from_rows([row[:k] for row in a]) if k else IntMatrix.zeros(M.rows, 0)
    return h, IntMatrix.from_rows(t) if M.cols else IntMatrix.zeros(0, 0)


@dataclass(frozen=True)
class Lattice:
    """Integer lattice inside Z^ambient_rank, basis in canonical column HNF.

    Two lattices are equal iff their canonical bases are identical.
    """

    ambient_rank: int
    basis: IntMatrix

    @staticmethod
    def from_generators(ambient_rank: int, gens: IntMatrix) -> "Lattice":
        if gens.rows != ambient_rank:
            raise DimensionMismatch("generators do not live in the stated ambient space")
        h, _ = hnf(gens)
        return Lattice(ambient_rank, h)

    @staticmethod
    def zero(ambient_rank: int) -> "Lattice":
        return Lattice(ambient_rank, IntMatrix.zeros(ambient_rank, 0))

    @staticmethod
    def full(ambient_rank: int) -> "Lattice":
        return Lattice(ambient_rank, IntMatrix.identity(ambient_rank))

    @property
    def rank(self) -> int:
        return self.basis.cols

    def contains_vector(self, vec) -> bool:
        return solve(self.basis, vec) is not None


def solve(M: IntMatrix, b):
    """Canonical integer solution of M x = b, or None if there is none.

    The particular solution is reduced against the kernel HNF so equal
    (M, b) inputs always produce the same x.
    """
    b = [int(x) for x in b]
    if len(b) != M.rows:
        raise DimensionMismatch("right-hand side length does not match row count")
    a, t, pivots = _hnf_raw(M)
    c = M.cols
    y = [0] * c
    residual = list(b)
    pivot_of_row = {pr: pc for pr, pc in pivots}
    for i in range(M.rows):
        pc = pivot_of_row.get(i)
        if pc is None:
            if residual[i] != 0:
                return None
            continue
        p = a[i][pc]
        if residual[i] % p != 0:
            return None
        q = residual[i] // p
        y[pc] = q
        if q:
            for ii in range(i, M.rows):
                residual[ii] -= q * a[ii][pc]
    if any(residual):
        return None
    x = [sum(t[i][j] * y[j] for j in range(c)) for i in range(c)]
    # canonical representative: reduce against the kernel basis
    ker = kernel(M)
    kb = ker.basis
    for j in range(kb.cols):
        col = kb.col(j)
        pr = next(i for i in range(len(col)) if col[i] != 0)
        q = x[pr] // col[pr]
        if q:
            for i in range(c):
                x[i] -= q * col[i]
    return tuple(x)


def kernel(M: IntMatrix) -> Lattice:
    """Lattice of all integer x with M x = 0."""
    a, t, pivots = _hnf_raw(M)
    k = len(pivots)
    gens = IntMatrix.from_rows([row[k:] for row in t]) if M.cols else IntMatrix.zeros(0, 0)
    return Lattice.from_generators(M.cols, gens)


def lattice_contains(outer: Lattice, inner: Lattice) -> bool:
    """True iff every generator of inner lies in outer."""
    if outer.ambient_rank != inner.ambient_rank:
        raise DimensionMismatch("lattices live in different ambient spaces")
    return all(outer.contains_vector(inner.basis.col(j)) for j in range(inner.basis.cols))


def lattice_equal(l1: Lattice, l2: Lattice) -> bool:
    if l1.ambient_rank != l2.ambient_rank:
        raise DimensionMismatch("lattices live in different ambient spaces")
    return l1.basis == l2.basis
