"""Finitely generated abelian groups presented as cokernels Z^N / L.

A group is a cokernel of an integer relation matrix.  Elements are ambient
integer vectors; equality is membership of the difference in the relation
lattice, never raw vector equality.  Tensor products track elements through
an explicit Kronecker embedding, and pairs (group, distinguished element)
are compared through a canonical summary: invariant factors, free rank,
element order, per-prime height sequences of the torsion image and the
content gcd of the free image.

For finite groups the per-prime height sequence (the classical Ulm
sequence) is a complete invariant of the automorphism orbit of an element,
which is what makes ``pair_equiv`` a genuine decision procedure there; the
brute-force orbit oracle at the bottom of the module exists to cross-check
that claim in tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from math import gcd, lcm
from typing import Optional

from .intlinalg import (
    DimensionMismatch,
    IntMatrix,
    Lattice,
    SmithForm,
    kernel,
    kron_vec,
    lattice_equal,
    snf,
    solve,
)


class GroupMismatch(ValueError):
    """Elements of different groups were combined."""


def _prime_factors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FgAbGroup:
    """Z^ambient_rank modulo the relation lattice."""

    ambient_rank: int
    relations: Lattice
    snf_form: SmithForm = field(repr=False)
    invariant_factors: tuple
    free_rank: int

    @staticmethod
    def from_cokernel(rel: IntMatrix) -> "FgAbGroup":
        """Group presented by the columns of rel as relations."""
        ambient = rel.rows
        relations = Lattice.from_generators(ambient, rel)
        form = snf(relations.basis)
        # basis columns are independent, so every diagonal entry is positive
        factors = tuple(d for d in form.divisors if d > 1)
        free_rank = ambient - relations.rank
        return FgAbGroup(ambient, relations, form, factors, free_rank)

    @staticmethod
    def free(rank: int) -> "FgAbGroup":
        return FgAbGroup.from_cokernel(IntMatrix.zeros(rank, 0))

    @staticmethod
    def cyclic(n: int) -> "FgAbGroup":
        return FgAbGroup.from_cokernel(IntMatrix.from_rows([[n]]))

    @staticmethod
    def of_invariant_factors(factors, free_rank: int = 0) -> "FgAbGroup":
        """Direct sum of Z/d for d in factors plus Z^free_rank."""
        factors = [int(d) for d in factors]
        n = len(factors) + free_rank
        rel = IntMatrix.from_rows(
            [[factors[i] if i == j and i < len(factors) else 0
              for j in range(len(factors))] for i in range(n)])
        return FgAbGroup.from_cokernel(rel)

    @property
    def iso_type(self):
        return (self.invariant_factors, self.free_rank)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> Optional[int]:
        """Number of elements, or None when infinite."""
        if not self.is_finite:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_isomorphic(self, other: "FgAbGroup") -> bool:
        return self.iso_type == other.iso_type

    def element(self, vector) -> "GroupElement":
        return GroupElement(self, tuple(int(x) for x in vector))

    def zero(self) -> "GroupElement":
        return self.element((0,) * self.ambient_rank)

    def _torsion_diag(self) -> tuple:
        """Diagonal of the relation SNF, one entry per relation column."""
        return self.snf_form.divisors

    def canonical_coords(self, vector) -> tuple:
        """(torsion coords mod d_i for d_i >= 2, free coords).

        Display/summary coordinates in the basis diagonalizing the
        relations; semantic equality still goes through the lattice.
        """
        if len(vector) != self.ambient_rank:
            raise DimensionMismatch("vector does not live in the ambient space")
        w = self.snf_form.U.mul_vec(vector)
        diag = self._torsion_diag()
        torsion = tuple(w[i] % diag[i] for i in range(len(diag)) if diag[i] > 1)
        free = tuple(w[i] for i in range(len(diag), self.ambient_rank))
        return torsion, free

    def label(self) -> str:
        """Human-readable iso type, e.g. 'Z/2 + Z/4 + Z^2'."""
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    group: FgAbGroup
    vector: tuple

    def __post_init__(self):
        if len(self.vector) != self.group.ambient_rank:
            raise DimensionMismatch("element vector does not match ambient rank")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        _require_same_group(self, other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.vector, other.vector)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        _require_same_group(self, other)
        return GroupElement(self.group, tuple(a - b for a, b in zip(self.vector, other.vector)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.vector))

    def scale(self, n: int) -> "GroupElement":
        return GroupElement(self.group, tuple(n * a for a in self.vector))

    def is_zero(self) -> bool:
        return self.group.relations.contains_vector(self.vector)

    def canonical(self) -> tuple:
        return self.group.canonical_coords(self.vector)


def _require_same_group(g: GroupElement, h: GroupElement):
    if g.group is not h.group and g.group != h.group:
        raise GroupMismatch("elements belong to different groups")


def element_equal(g: GroupElement, h: GroupElement) -> bool:
    """True iff g - h lies in the relation lattice."""
    _require_same_group(g, h)
    diff = tuple(a - b for a, b in zip(g.vector, h.vector))
    return g.group.relations.contains_vector(diff)


def order(g: GroupElement) -> Optional[int]:
    """Least n >= 1 with n*g = 0, or None for infinite order."""
    torsion, free = g.canonical()
    if any(free):
        return None
    n = 1
    diag = [d for d in g.group._torsion_diag() if d > 1]
    for d, c in zip(diag, torsion):
        if c:
            n = lcm(n, d // gcd(d, c))
    return n


def reduced_presentation(G: FgAbGroup):
    """Canonical small presentation of G with coordinate maps.

    Returns (proj, lift, orders, reduced): proj (r x N) sends an ambient
    vector to its class in the reduced group, lift (N x r) is a section of
    proj modulo relations, orders lists the slot orders (0 for free slots),
    and reduced is the group Z^r / diag(orders).  Slots with order 1 are
    dropped, so r = #invariant factors + free rank.
    """
    u = G.snf_form.U
    uinv = _unimodular_inverse(u)
    diag = G.snf_form.divisors
    n = G.ambient_rank
    kept = [i for i in range(len(diag)) if diag[i] > 1]
    kept += list(range(len(diag), n))
    orders = tuple(diag[i] if i < len(diag) else 0 for i in kept)
    r = len(kept)
    proj = (IntMatrix.from_rows([u.row(i) for i in kept])
            if r else IntMatrix.zeros(0, n))
    lift = IntMatrix.from_rows([[uinv[t, i] for i in kept] for t in range(n)]) \
        if r else IntMatrix.zeros(n, 0)
    rel_cols = [(slot, d) for slot, d in enumerate(orders) if d]
    rel = IntMatrix.from_rows(
        [[d if i == slot else 0 for (slot, d) in rel_cols] for i in range(r)]) \
        if rel_cols else IntMatrix.zeros(r, 0)
    return proj, lift, orders, FgAbGroup.from_cokernel(rel)


def tensor(G: FgAbGroup, H: FgAbGroup):
    """Tensor product presentation plus the bilinear Kronecker embedding.

    Both factors are first put in reduced canonical form, so the ambient
    space of the product is Z^(rG*rH) with rG, rH the reduced ranks; the
    slot (i, j) carries the relation gcd(d_i, d_j) (gcd with 0 meaning the
    other order).  embed(v, w) takes ambient vectors of G and H.
    """
    n, m = G.ambient_rank, H.ambient_rank
    proj_g, _, orders_g, _ = reduced_presentation(G)
    proj_h, _, orders_h, _ = reduced_presentation(H)
    rg, rh = len(orders_g), len(orders_h)
    slot_orders = []
    for di in orders_g:
        for dj in orders_h:
            slot_orders.append(gcd(di, dj))
    rel_cols = [(slot, d) for slot, d in enumerate(slot_orders) if d]
    rel = IntMatrix.from_rows(
        [[d if i == slot else 0 for (slot, d) in rel_cols]
         for i in range(rg * rh)]) \
        if rel_cols else IntMatrix.zeros(rg * rh, 0)
    T = FgAbGroup.from_cokernel(rel)

    def embed(v, w) -> GroupElement:
        v = v.vector if isinstance(v, GroupElement) else tuple(v)
        w = w.vector if isinstance(w, GroupElement) else tuple(w)
        if len(v) != n or len(w) != m:
            raise DimensionMismatch("embed arguments do not match the factors")
        return T.element(kron_vec(proj_g.mul_vec(v), proj_h.mul_vec(w)))

    return T, embed


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism induced by an ambient integer matrix."""

    matrix: IntMatrix
    domain: FgAbGroup
    codomain: FgAbGroup
    well_defined: bool
    injective: bool
    surjective: bool

    @property
    def is_isomorphism(self) -> bool:
        return self.well_defined and self.injective and self.surjective

    def apply(self, g: GroupElement) -> GroupElement:
        if g.group != self.domain:
            raise GroupMismatch("element not in the domain")
        return self.codomain.element(self.matrix.mul_vec(g.vector))


def induced_hom(S: IntMatrix, G: FgAbGroup, H: FgAbGroup) -> GroupHom:
    """The map Z^N/L_G -> Z^M/L_H induced by left multiplication by S."""
    if S.cols != G.ambient_rank or S.rows != H.ambient_rank:
        raise DimensionMismatch("matrix does not map the ambient spaces")
    image_of_rel = S @ G.relations.basis
    well = all(H.relations.contains_vector(image_of_rel.col(j))
               for j in range(image_of_rel.cols))

    # preimage lattice {v : S v in L_H} = projection of ker [S | B_H]
    bh = H.relations.basis
    block = IntMatrix.from_rows(
        [list(S.row(i)) + list(bh.row(i)) for i in range(S.rows)])
    ker = kernel(block)
    proj = IntMatrix.from_rows([list(ker.basis.row(i)) for i in range(S.cols)]) \
        if ker.basis.cols else IntMatrix.zeros(S.cols, 0)
    preimage = Lattice.from_generators(S.cols, proj)
    inj = lattice_equal(preimage, G.relations)

    surj = FgAbGroup.from_cokernel(block).is_trivial
    return GroupHom(S, G, H, well, inj and well, surj)


def height_sequence(G: FgAbGroup, g: GroupElement, p: int) -> tuple:
    """Heights (h_p(g), h_p(p g), ...) of the p-part until it vanishes.

    h_p(x) = max k with x in p^k G, computed inside the p-component of the
    torsion part.  The element's free coordinates must vanish for the
    sequence to be the classical Ulm invariant; callers compare torsion
    images, so only the torsion coordinates are consulted here.
    """
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    diag = [d for d in G._torsion_diag() if d > 1]
    torsion, _ = g.canonical()
    return _height_sequence_coords(tuple(diag), tuple(torsion), p)


def _height_sequence_coords(diag: tuple, coords: tuple, p: int) -> tuple:
    """Ulm sequence of an element given in ⊕ Z/d_i coordinates."""
    exps = [_valuation(d, p) for d in diag]
    xs = [c % (p ** a) if a else 0 for c, a in zip(coords, exps)]
    max_a = max(exps, default=0)
    seq = []
    while any(xs):
        h = 0
        while h < max_a:
            k = h + 1
            if all(x % (p ** min(k, a)) == 0 for x, a in zip(xs, exps)):
                h = k
            else:
                break
        seq.append(h)
        xs = [(p * x) % (p ** a) if a else 0 for x, a in zip(xs, exps)]
    return tuple(seq)


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class Equivalence(Enum):
    EQUIVALENT = "Equivalent"
    INEQUIVALENT = "Inequivalent"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class PairSummary:
    """Isomorphism-invariant fingerprint of (group, element)."""

    invariant_factors: tuple
    free_rank: int
    element_order: Optional[int]
    heights: tuple  # ((p, ulm sequence), ...) for primes dividing the exponent
    free_content: int  # gcd of the free coordinates, 0 for zero image

    def as_dict(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
            "element_order": self.element_order,
            "heights": {str(p): list(seq) for p, seq in self.heights},
            "free_content": self.free_content,
        }


@dataclass(frozen=True)
class PairInvariant:
    """A group with a distinguished element and its canonical summary."""

    group: FgAbGroup
    element: GroupElement
    summary: PairSummary

    @staticmethod
    def of(group: FgAbGroup, element: GroupElement) -> "PairInvariant":
        torsion, free = element.canonical()
        diag = [d for d in group._torsion_diag() if d > 1]
        heights = tuple(
            (p, _height_sequence_coords(tuple(diag), tuple(torsion), p))
            for p in _prime_factors(group.exponent))
        content = 0
        for x in free:
            content = gcd(content, x)
        return PairInvariant(group, element, PairSummary(
            invariant_factors=group.invariant_factors,
            free_rank=group.free_rank,
            element_order=order(element),
            heights=heights,
            free_content=content,
        ))

    def label(self) -> str:
        return f"({self.group.label()}, order-{self.summary.element_order} element)"


@dataclass(frozen=True)
class PairVerdict:
    verdict: Equivalence
    certificate: str

    def __bool__(self):
        return self.verdict is Equivalence.EQUIVALENT


def pair_equiv(P: PairInvariant, Q: PairInvariant) -> PairVerdict:
    """Decide equivalence of (group, element) pairs from their summaries.

    Complete for finite groups (Ulm sequences classify Aut orbits), for
    free groups (content gcd classifies GL_n(Z) orbits) and for zero
    elements.  Mixed infinite groups with matching summaries come back
    Indeterminate rather than guessed.
    """
    s, t = P.summary, Q.summary
    if (s.invariant_factors, s.free_rank) != (t.invariant_factors, t.free_rank):
        return PairVerdict(Equivalence.INEQUIVALENT,
                           f"groups differ: {P.group.label()} vs {Q.group.label()}")
    if s.element_order != t.element_order:
        return PairVerdict(Equivalence.INEQUIVALENT,
                           f"element orders differ: {s.element_order} vs {t.element_order}")
    if s.heights != t.heights:
        return PairVerdict(Equivalence.INEQUIVALENT, "height sequences differ")
    if s.free_content != t.free_content:
        return PairVerdict(Equivalence.INEQUIVALENT,
                           f"free contents differ: {s.free_content} vs {t.free_content}")
    if s.element_order == 1 and t.element_order == 1 and s.free_content == 0:
        return PairVerdict(Equivalence.EQUIVALENT, "both elements are zero")
    if s.free_rank == 0:
        return PairVerdict(Equivalence.EQUIVALENT,
                           "finite groups with matching Ulm sequences")
    if not s.invariant_factors:
        return PairVerdict(Equivalence.EQUIVALENT,
                           "free groups with matching content gcd")
    return PairVerdict(Equivalence.INDETERMINATE,
                       "mixed infinite group; partial summaries agree")


# ---------------------------------------------------------------------------
# brute-force oracles (test support)
# ---------------------------------------------------------------------------

ENUMERATION_BOUND = 4096
ORBIT_BOUND = 256


def oracle_elements(G: FgAbGroup) -> list:
    """Every element of a finite group as a GroupElement, |G| bounded."""
    n = G.order()
    if n is None or n > ENUMERATION_BOUND:
        raise ValueError("group too large to enumerate")
    diag = G._torsion_diag()
    uinv = _unimodular_inverse(G.snf_form.U)
    out = []
    coords = [0] * len(diag)
    while True:
        full = list(coords) + [0] * (G.ambient_rank - len(diag))
        out.append(G.element(uinv.mul_vec(full)))
        for i in range(len(diag)):
            coords[i] += 1
            if coords[i] < diag[i]:
                break
            coords[i] = 0
        else:
            break
    return out


def _unimodular_inverse(U: IntMatrix) -> IntMatrix:
    n = U.rows
    cols = []
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        cols.append(solve(U, e))
    return IntMatrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)])


def _aut_generators(diag: tuple) -> list:
    """Generating automorphisms of ⊕ Z/d_i in coordinate form.

    Unit scalings of one coordinate plus the minimal quasi-transvections
    e_j -> e_j + c e_i; by Hillar-Rhea these generate the full automorphism
    group.  Each generator is returned as a k x k matrix (list of columns'
    action is via _apply_aut).
    """
    k = len(diag)
    gens = []
    for i in range(k):
        for u in range(2, diag[i]):
            if gcd(u, diag[i]) == 1:
                m = [[1 if a == b else 0 for b in range(k)] for a in range(k)]
                m[i][i] = u
                gens.append(m)
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            # e_j -> e_j + c e_i needs d_i | c d_j
            c = diag[i] // gcd(diag[i], diag[j])
            m = [[1 if a == b else 0 for b in range(k)] for a in range(k)]
            m[i][j] = c
            gens.append(m)
    return gens


def _apply_aut(m, coords, diag):
    k = len(diag)
    return tuple(sum(m[i][j] * coords[j] for j in range(k)) % diag[i] for i in range(k))


def oracle_aut_orbit(G: FgAbGroup, g: GroupElement) -> set:
    """Orbit of g's coordinates under Aut(G), finite groups only.

    Closure of the coordinate tuple under a generating set of Aut(G); the
    orbit is returned as a set of torsion coordinate tuples (the same shape
    canonical() produces).
    """
    n = G.order()
    if n is None or n > ORBIT_BOUND:
        raise ValueError("group too large for orbit search")
    diag = tuple(d for d in G._torsion_diag() if d > 1)
    start, free = g.canonical()
    if any(free):
        raise ValueError("orbit oracle requires a torsion group")
    gens = _aut_generators(diag)
    seen = {tuple(start)}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for m in gens:
            y = _apply_aut(m, x, diag)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen
