"""Sliding block codes as finite lookup tables.

A code from the shift of A to the shift of B is a table over admissible
(m+n+1)-windows of A; construction checks totality and that images of
admissible (m+n+2)-windows stay admissible in B.  Bi-infinite points are
handled through periodic points (cycles with a phase origin) and finite
words with margins; lag-2K conjugacy is verified exhaustively on all
periodic points up to a stated period.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .intlinalg import IntMatrix
from .shift_spaces import Word, is_admissible, words


class InadmissibleWord(ValueError):
    """Input word not admissible for the relevant matrix."""


class AlphabetMismatch(ValueError):
    """Block maps do not compose."""


@dataclass(frozen=True)
class BlockMap:
    """Local rule with memory m and anticipation n between two 0-1 shifts."""

    memory: int
    anticipation: int
    source: IntMatrix
    target: IntMatrix
    table: dict = field(hash=False)

    def __post_init__(self):
        w = self.window
        for u in words(self.source, w):
            if u.symbols not in self.table:
                raise ValueError(f"table misses admissible window {u}")
        for key, val in self.table.items():
            if len(key) != w:
                raise ValueError("table key of wrong window length")
            if not is_admissible(self.source, key):
                raise ValueError(f"table key {key} is not admissible")
            if not 1 <= val <= self.target.rows:
                raise ValueError("table value outside the target alphabet")
        for u in words(self.source, w + 1):
            a = self.table[u.symbols[:w]]
            b = self.table[u.symbols[1:]]
            if not self.target[a - 1, b - 1]:
                raise ValueError(
                    f"image of window {u} is inadmissible in the target")

    @property
    def window(self) -> int:
        return self.memory + self.anticipation + 1

    @staticmethod
    def identity(A: IntMatrix) -> "BlockMap":
        return BlockMap(0, 0, A, A, {(s,): s for s in range(1, A.rows + 1)})

    @staticmethod
    def shift(A: IntMatrix) -> "BlockMap":
        """The shift map sigma as a code with memory 0, anticipation 1."""
        table = {w.symbols: w.symbols[1] for w in words(A, 2)}
        return BlockMap(0, 1, A, A, table)


@dataclass(frozen=True)
class PeriodicPoint:
    """Periodic bi-infinite point given by one cycle, phase origin at 0."""

    cycle: Word

    def rotate(self, k: int) -> "PeriodicPoint":
        q = len(self.cycle)
        k %= q
        return PeriodicPoint(Word(self.cycle.symbols[k:] + self.cycle.symbols[:k]))

    def closes_in(self, A: IntMatrix) -> bool:
        s = self.cycle.symbols
        return bool(s) and is_admissible(A, s) and A[s[-1] - 1, s[0] - 1] >= 1


def apply_word(phi: BlockMap, w) -> Word:
    """Slide the window over an admissible word; output shrinks by m + n."""
    symbols = w.symbols if isinstance(w, Word) else tuple(w)
    k = phi.window
    if len(symbols) < k:
        raise InadmissibleWord("word shorter than the code window")
    if not is_admissible(phi.source, symbols):
        raise InadmissibleWord("word not admissible in the source")
    return Word(tuple(phi.table[symbols[i:i + k]]
                      for i in range(len(symbols) - k + 1)))


def apply_periodic(phi: BlockMap, p: PeriodicPoint) -> PeriodicPoint:
    """Evaluate the induced map on a periodic point; windows wrap around."""
    if not p.closes_in(phi.source):
        raise InadmissibleWord("cycle does not close admissibly in the source")
    s = p.cycle.symbols
    q = len(s)
    m, k = phi.memory, phi.window
    out = []
    for i in range(q):
        window = tuple(s[(i - m + t) % q] for t in range(k))
        out.append(phi.table[window])
    return PeriodicPoint(Word(tuple(out)))


def compose(phi: BlockMap, psi: BlockMap) -> BlockMap:
    """The code psi o phi (phi applied first); memory/anticipation add."""
    if phi.target != psi.source:
        raise AlphabetMismatch("target of the first code is not the source of the second")
    m = phi.memory + psi.memory
    n = phi.anticipation + psi.anticipation
    table = {}
    for u in words(phi.source, m + n + 1):
        mid = apply_word(phi, u)
        table[u.symbols] = psi.table[mid.symbols]
    return BlockMap(m, n, phi.source, psi.target, table)


def _cycles(A: IntMatrix, max_period: int):
    for q in range(1, max_period + 1):
        for w in words(A, q):
            if A[w.symbols[-1] - 1, w.symbols[0] - 1]:
                yield PeriodicPoint(w)


def verify_lag_conjugacy(phi: BlockMap, psi: BlockMap, K: int, P: int) -> bool:
    """Check psi o phi = sigma^2K on A and phi o psi = sigma^2K on B.

    Exhaustive over all periodic points of period <= P on both sides;
    K = 0 certifies a genuine conjugacy on the tested set.
    """
    if P < 1:
        raise ValueError("P must be at least 1")
    if phi.source != psi.target or phi.target != psi.source:
        raise AlphabetMismatch("codes do not pair up between the two shifts")
    for p in _cycles(phi.source, P):
        if apply_periodic(psi, apply_periodic(phi, p)) != p.rotate(2 * K):
            return False
    for p in _cycles(phi.target, P):
        if apply_periodic(phi, apply_periodic(psi, p)) != p.rotate(2 * K):
            return False
    return True


def higher_block_code(A: IntMatrix, k: int):
    """k-block recoding (A_k, phi, psi) with a lag-0 conjugacy by construction.

    States of A_k are the admissible k-words of A in lexicographic order;
    phi reads a k-window, psi projects to the first symbol.  k = 2 coincides
    with the edge graph of a 0-1 matrix.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not A.is_zero_one:
        raise ValueError("higher-block recoding requires a 0-1 matrix")
    if k == 1:
        ident = BlockMap.identity(A)
        return A, ident, ident
    blocks = words(A, k)
    index = {w.symbols: i + 1 for i, w in enumerate(blocks)}
    nk = len(blocks)
    ak = IntMatrix.from_rows(
        [[1 if u.symbols[1:] == v.symbols[:-1] else 0 for v in blocks]
         for u in blocks])
    phi = BlockMap(0, k - 1, A, ak, {w.symbols: index[w.symbols] for w in blocks})
    psi_table = {(i + 1,): w.symbols[0] for i, w in enumerate(blocks)}
    psi = BlockMap(0, 0, ak, A, psi_table)
    assert verify_lag_conjugacy(phi, psi, 0, 6)
    return ak, phi, psi
