"""Matrix and subshift domain model.

Validation flags (essential / irreducible / aperiodic / permutation),
admissible words, the edge-graph presentation of a nonnegative integral
matrix, strong-shift-equivalence steps via state splitting, shift
equivalence checks and periodic-point counts.

Symbols of words are 1-based (alphabet {1..N}); matrix indices are 0-based.
Edge enumeration order is fixed as source-major, target-minor, multiplicity
ascending, so the edge-graph matrices are reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Optional

from .intlinalg import DimensionMismatch, IntMatrix


class NotEssentialError(ValueError):
    """The matrix has a zero row or column."""


class InvalidPartitionError(ValueError):
    """A splitting partition does not cover the edge multiset exactly."""


class ChainCapExceeded(ValueError):
    """The SSE chain generator hit its state-count cap."""


@dataclass(frozen=True)
class MarkovShiftSpec:
    """Analysis flags of a square nonnegative matrix."""

    matrix: IntMatrix
    alphabet_size: int
    is_01: bool
    essential: bool
    irreducible: bool
    is_permutation: bool
    period: Optional[int]
    aperiodic: bool
    n0: Optional[int]

    def warnings(self) -> list:
        out = []
        if not self.essential:
            out.append("matrix is not essential (zero row or column)")
        if not self.irreducible:
            out.append("matrix is not irreducible; standing assumptions fail")
        if self.is_permutation:
            out.append("matrix is a permutation; standing assumptions fail")
        return out


def analyze(A: IntMatrix) -> MarkovShiftSpec:
    """Compute all flags; problems are reported, never raised."""
    if not A.is_square:
        raise DimensionMismatch("analysis requires a square matrix")
    if not A.is_nonnegative:
        raise ValueError("analysis requires a nonnegative matrix")
    n = A.rows
    essential = all(any(A[i, j] for j in range(n)) for i in range(n)) and \
        all(any(A[i, j] for i in range(n)) for j in range(n)) and n > 0
    is_perm = A.is_zero_one and n > 0 and \
        all(sum(A.row(i)) == 1 for i in range(n)) and \
        all(sum(A.col(j)) == 1 for j in range(n))
    irreducible = _strongly_connected(A)
    period = _period(A) if irreducible else None
    aperiodic = irreducible and period == 1
    n0 = _least_positive_power(A) if aperiodic else None
    return MarkovShiftSpec(A, n, A.is_zero_one, essential, irreducible,
                           is_perm, period, aperiodic, n0)


def _strongly_connected(A: IntMatrix) -> bool:
    n = A.rows
    if n == 0:
        return False
    adj = [[j for j in range(n) if A[i, j]] for i in range(n)]
    radj = [[i for i in range(n) if A[i, j]] for j in range(n)]

    def reach(start, nbrs):
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in nbrs[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    # irreducibility asks for paths of length >= 1, so a single vertex
    # needs a loop
    if n == 1:
        return A[0, 0] > 0
    return len(reach(0, adj)) == n and len(reach(0, radj)) == n


def _period(A: IntMatrix) -> int:
    """gcd of cycle lengths of an irreducible matrix via BFS levels."""
    n = A.rows
    level = [None] * n
    level[0] = 0
    queue = [0]
    g = 0
    while queue:
        nxt = []
        for u in queue:
            for v in range(n):
                if A[u, v]:
                    if level[v] is None:
                        level[v] = level[u] + 1
                        nxt.append(v)
                    else:
                        g = gcd(g, level[u] + 1 - level[v])
        queue = nxt
    return abs(g) if g else 1


def _least_positive_power(A: IntMatrix) -> Optional[int]:
    """Least n with A^n strictly positive; capped at N^2."""
    n = A.rows
    cap = max(n * n, 1)
    power = A
    for k in range(1, cap + 1):
        if all(x > 0 for x in power.entries):
            return k
        power = power @ A
    raise ValueError(f"no strictly positive power up to the cap {cap}")


@dataclass(frozen=True)
class Word:
    """Finite word over {1..N}; admissibility is relative to a matrix."""

    symbols: tuple

    def __post_init__(self):
        if any(s < 1 for s in self.symbols):
            raise ValueError("symbols are 1-based")

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return "".join(str(s) for s in self.symbols) if all(s <= 9 for s in self.symbols) \
            else ",".join(str(s) for s in self.symbols)


def is_admissible(A: IntMatrix, word) -> bool:
    symbols = word.symbols if isinstance(word, Word) else tuple(word)
    if any(not 1 <= s <= A.rows for s in symbols):
        return False
    return all(A[a - 1, b - 1] >= 1 for a, b in zip(symbols, symbols[1:]))


def words(A: IntMatrix, n: int) -> list:
    """All admissible words of length n, lexicographically sorted."""
    if not A.is_zero_one:
        raise ValueError("words of a non-0-1 matrix require the edge graph first")
    if n < 0:
        raise ValueError("length must be nonnegative")
    if n == 0:
        return [Word(())]
    out = []
    stack = [(s,) for s in range(A.rows, 0, -1)]
    while stack:
        w = stack.pop()
        if len(w) == n:
            out.append(Word(w))
            continue
        for s in range(A.rows, 0, -1):
            if A[w[-1] - 1, s - 1]:
                stack.append(w + (s,))
    return out


def edge_graph(A: IntMatrix):
    """Edge-graph presentation (A_G, R, S) with A = R S and A_G = S R.

    Edges are ordered source-major, target-minor, multiplicity ascending.
    R(v, e) = 1 iff e starts at v; S(e, w) = 1 iff e ends at w; A_G(e, f) = 1
    iff e ends where f starts.
    """
    spec = analyze(A)
    if not spec.essential:
        raise NotEssentialError("edge graph requires an essential matrix")
    n = A.rows
    edges = [(i, j) for i in range(n) for j in range(n) for _ in range(A[i, j])]
    na = len(edges)
    r = IntMatrix.from_rows([[1 if edges[e][0] == v else 0 for e in range(na)]
                             for v in range(n)])
    s = IntMatrix.from_rows([[1 if edges[e][1] == w else 0 for w in range(n)]
                             for e in range(na)])
    ag = IntMatrix.from_rows([[1 if edges[e][1] == edges[f][0] else 0
                               for f in range(na)] for e in range(na)])
    assert r @ s == A and s @ r == ag
    return ag, r, s


def verify_sse_step(A: IntMatrix, B: IntMatrix, R: IntMatrix, S: IntMatrix) -> bool:
    """Exact check of A = R S and B = S R."""
    if R.rows != A.rows or S.cols != A.cols or R.cols != S.rows:
        raise DimensionMismatch("step shapes do not compose with A")
    if S.rows != B.rows or R.cols != B.cols:
        raise DimensionMismatch("step shapes do not compose with B")
    return R @ S == A and S @ R == B


@dataclass(frozen=True)
class SseChain:
    """Matrices A_0..A_t with per-step factorizations A_i = R S, A_{i+1} = S R."""

    matrices: tuple
    steps: tuple  # ((R, S), ...)

    def verify(self) -> bool:
        if len(self.steps) != len(self.matrices) - 1:
            return False
        return all(verify_sse_step(self.matrices[i], self.matrices[i + 1], r, s)
                   for i, (r, s) in enumerate(self.steps))


def verify_sse_chain(chain: SseChain) -> bool:
    return chain.verify()


def verify_se(A: IntMatrix, B: IntMatrix, R: IntMatrix, S: IntMatrix, ell: int) -> bool:
    """Exact check of AR = RB, SA = BS, A^l = RS, B^l = SR."""
    if ell < 1:
        raise ValueError("lag must be at least 1")
    if not (R.is_nonnegative and S.is_nonnegative):
        raise ValueError("shift-equivalence witnesses must be nonnegative")
    if R.rows != A.rows or R.cols != B.cols or S.rows != B.rows or S.cols != A.cols:
        raise DimensionMismatch("witness shapes do not compose")
    return (A @ R == R @ B and S @ A == B @ S
            and A.pow(ell) == R @ S and B.pow(ell) == S @ R)


def _validate_partition(cells, row) -> None:
    if not cells:
        raise InvalidPartitionError("state has no cells")
    total = [0] * len(row)
    for cell in cells:
        if not any(cell.get(j, 0) for j in range(len(row))):
            raise InvalidPartitionError("empty cell")
        for j, c in cell.items():
            if c < 0:
                raise InvalidPartitionError("negative multiplicity")
            total[j] += c
    if total != list(row):
        raise InvalidPartitionError("cells do not cover the edge multiset exactly")


def out_split(A: IntMatrix, partition):
    """Out-split A along a partition of each state's outgoing edges.

    partition[i] is a list of cells; a cell maps target state -> count.
    Returns (B, R, S) with A = R S and B = S R (verified).
    """
    n = A.rows
    if len(partition) != n:
        raise InvalidPartitionError("partition must cover every state")
    for i in range(n):
        _validate_partition(partition[i], A.row(i))
    states = [(i, k) for i in range(n) for k in range(len(partition[i]))]
    nn = len(states)
    r = IntMatrix.from_rows([[1 if states[t][0] == i else 0 for t in range(nn)]
                             for i in range(n)])
    s = IntMatrix.from_rows([[partition[i][k].get(j, 0) for j in range(n)]
                             for (i, k) in states])
    b = s @ r
    assert verify_sse_step(A, b, r, s)
    return b, r, s


def in_split(A: IntMatrix, partition):
    """In-split A along a partition of each state's incoming edges.

    partition[j] is a list of cells; a cell maps source state -> count.
    """
    n = A.rows
    if len(partition) != n:
        raise InvalidPartitionError("partition must cover every state")
    for j in range(n):
        _validate_partition(partition[j], A.col(j))
    states = [(j, k) for j in range(n) for k in range(len(partition[j]))]
    nn = len(states)
    r = IntMatrix.from_rows([[partition[j][k].get(i, 0) for (j, k) in states]
                             for i in range(n)])
    s = IntMatrix.from_rows([[1 if states[t][0] == j else 0 for j in range(n)]
                             for t in range(nn)])
    b = s @ r
    assert verify_sse_step(A, b, r, s)
    return b, r, s


STATE_CAP = 12


def random_sse_chain(A: IntMatrix, steps: int, seed: int) -> SseChain:
    """Seeded chain of verified splitting/amalgamation steps from A.

    Deterministic per (A, steps, seed).  Splits that would push the state
    count past STATE_CAP fall back to the trivial partition; an undo of the
    previous step (amalgamation) is taken with some probability.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if A.rows > STATE_CAP:
        raise ChainCapExceeded(f"start matrix exceeds the state cap {STATE_CAP}")
    rng = random.Random(seed)
    matrices = [A]
    chain_steps = []
    for _ in range(steps):
        cur = matrices[-1]
        if chain_steps and rng.random() < 0.3:
            r, s = chain_steps[-1]
            chain_steps.append((s, r))
            matrices.append(matrices[-2])
            continue
        direction = rng.choice(("out", "in"))
        n = cur.rows
        rows = [cur.row(i) for i in range(n)] if direction == "out" \
            else [cur.col(j) for j in range(n)]
        # split one state's edges into at most two cells, others trivial
        candidates = [i for i in range(n) if sum(rows[i]) >= 2]
        partition = []
        split_state = rng.choice(candidates) if candidates and n < STATE_CAP else None
        for i in range(n):
            row = rows[i]
            if i != split_state:
                partition.append([{j: c for j, c in enumerate(row) if c}])
                continue
            cell_a, cell_b = {}, {}
            instances = [j for j, c in enumerate(row) for _ in range(c)]
            assignment = [rng.randrange(2) for _ in instances]
            if all(a == assignment[0] for a in assignment):
                assignment[0] = 1 - assignment[0]
            for j, a in zip(instances, assignment):
                cell = cell_a if a == 0 else cell_b
                cell[j] = cell.get(j, 0) + 1
            partition.append([cell_a, cell_b])
        b, r, s = out_split(cur, partition) if direction == "out" \
            else in_split(cur, partition)
        matrices.append(b)
        chain_steps.append((r, s))
    return SseChain(tuple(matrices), tuple(chain_steps))


def periodic_count(A: IntMatrix, n: int) -> int:
    """Number of periodic points of period n: trace(A^n), exact."""
    if n < 1:
        raise ValueError("period must be positive")
    return A.pow(n).trace()
