"""Perron-Frobenius data, entropy, Parry measure and KMS value identities.

Floating point (binary64) with explicit tolerances.  Power iteration starts
from the uniform vector and runs a fixed schedule, so results are
deterministic for a given matrix.  Periodic irreducible matrices get their
eigenvectors through A + I (same eigenvectors, spectrum shifted by one)
while the reported eigenvalue is still that of A.

The KMS identity checks mirror the cylinder-value laws a KMS state must
satisfy: p_n(i, j) = b_i a_j / beta^(n+1), the eigen-recursions in each
index, and the weighted sums over A^(n+1) equal to one.  The only
admissible inverse temperature is log(beta), which restricts to the Parry
measure on the underlying shift space.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log
from typing import Optional

import numpy as np

from .intlinalg import IntMatrix
from .shift_spaces import Word, analyze, is_admissible


class NotIrreducibleError(ValueError):
    """Perron data requires an irreducible matrix."""


class NotAperiodicError(ValueError):
    """KMS values require an aperiodic, non-permutation matrix."""


class ConvergenceError(RuntimeError):
    """Power iteration did not reach the tolerance within the cap."""


ITERATION_CAP = 10 ** 6


@dataclass(frozen=True)
class PerronData:
    """beta with right vector a, left vector b, sum(a_i b_i) = 1."""

    beta: float
    a: tuple
    b: tuple
    residual: float
    tol: float


def perron(A: IntMatrix, tol: float = 1e-12) -> PerronData:
    """Perron-Frobenius eigenvalue and positive left/right eigenvectors.

    Power iteration with a uniform start; beta is the Rayleigh quotient of
    the right vector.  Raises for reducible input or non-convergence.
    """
    spec = analyze(A)
    if not spec.irreducible:
        raise NotIrreducibleError("matrix is reducible")
    n = A.rows
    m = np.array(A.to_rows(), dtype=float)
    iterate = m if spec.aperiodic else m + np.eye(n)

    def right_vector(mat):
        x = np.full(n, 1.0 / n)
        for _ in range(ITERATION_CAP):
            y = mat @ x
            y /= y.sum()
            if np.max(np.abs(y - x)) < tol / 16:
                return y
            x = y
        raise ConvergenceError("power iteration hit the iteration cap")

    a = right_vector(iterate)
    b = right_vector(iterate.T)
    beta = float(a @ (m @ a) / (a @ a))
    b = b / float(a @ b)
    residual = max(
        float(np.max(np.abs(m @ a - beta * a))),
        float(np.max(np.abs(m.T @ b - beta * b))),
        abs(float(a @ b) - 1.0),
    )
    if residual > tol * max(beta, 1.0) * n:
        raise ConvergenceError(f"residual {residual} above tolerance")
    return PerronData(beta, tuple(map(float, a)), tuple(map(float, b)),
                      residual, tol)


def entropy(A: IntMatrix) -> float:
    """Topological entropy log(beta)."""
    return log(perron(A).beta)


@dataclass(frozen=True)
class CylinderMeasure:
    value: float
    empty: bool  # the word was inadmissible, so the cylinder is empty


def parry_cylinder(A: IntMatrix, w, perron_data: Optional[PerronData] = None) -> CylinderMeasure:
    """Parry measure of the cylinder of w: b_{w_1} a_{w_L} beta^-(L-1).

    Position-independent.  Inadmissible words give measure zero with the
    empty flag set instead of an error.
    """
    symbols = w.symbols if isinstance(w, Word) else tuple(w)
    if not symbols:
        raise ValueError("cylinder words must have length at least 1")
    if not is_admissible(A, symbols):
        return CylinderMeasure(0.0, True)
    pd = perron_data or perron(A)
    L = len(symbols)
    return CylinderMeasure(
        pd.b[symbols[0] - 1] * pd.a[symbols[-1] - 1] * pd.beta ** -(L - 1),
        False)


def _weighted_words(A: IntMatrix, length: int):
    """(word, path multiplicity) pairs; multiplicity is the product of entries."""
    out = [((s,), 1) for s in range(1, A.rows + 1)]
    for _ in range(length - 1):
        nxt = []
        for w, c in out:
            last = w[-1] - 1
            for s in range(1, A.rows + 1):
                mult = A[last, s - 1]
                if mult:
                    nxt.append((w + (s,), c * mult))
        out = nxt
    return out


@dataclass(frozen=True)
class ConsistencyReport:
    total_mass_error: float
    right_additivity_error: float
    left_additivity_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.total_mass_error, self.right_additivity_error,
                   self.left_additivity_error) <= self.tol


def parry_consistency(A: IntMatrix, L: int, tol: float = 1e-9) -> ConsistencyReport:
    """Check the measure axioms on cylinders up to length L.

    (1) total mass of length-L cylinders is 1 (paths weighted by entry
    multiplicities for integral matrices; weights are 1 in the 0-1 case);
    (2) mu(U_w) = sum_j A(w_L, j) mu(U_wj); (3) mu(U_w) = sum_i A(i, w_1)
    mu(U_iw).  (2) and (3) jointly express shift invariance.
    """
    if L < 1:
        raise ValueError("L must be at least 1")
    pd = perron(A)

    def mu(w):
        return pd.b[w[0] - 1] * pd.a[w[-1] - 1] * pd.beta ** -(len(w) - 1)

    total = sum(c * mu(w) for w, c in _weighted_words(A, L))
    err1 = abs(total - 1.0)
    err2 = 0.0
    err3 = 0.0
    for length in range(1, L):
        for w, _ in _weighted_words(A, length):
            right = sum(A[w[-1] - 1, j] * mu(w + (j + 1,))
                        for j in range(A.rows) if A[w[-1] - 1, j])
            err2 = max(err2, abs(mu(w) - right))
            left = sum(A[i, w[0] - 1] * mu((i + 1,) + w)
                       for i in range(A.rows) if A[i, w[0] - 1])
            err3 = max(err3, abs(mu(w) - left))
    return ConsistencyReport(err1, err2, err3, tol)


@dataclass(frozen=True)
class KmsTable:
    """Values p_n(i, j) = b_i a_j / beta^(n+1)."""

    n: int
    values: tuple  # N x N, row-major tuples
    perron_data: PerronData


def kms_values(A: IntMatrix, n: int, perron_data: Optional[PerronData] = None,
               gamma: Optional[float] = None) -> KmsTable:
    """The KMS cylinder values at level n.

    gamma overrides beta in the table construction; it exists as a negative
    control for kms_verify and is not part of the public contract.
    """
    spec = analyze(A)
    if not spec.aperiodic:
        raise NotAperiodicError("KMS values require an aperiodic matrix")
    if n < 0:
        raise ValueError("n must be nonnegative")
    pd = perron_data or perron(A)
    g = pd.beta if gamma is None else gamma
    vals = tuple(tuple(pd.b[i] * pd.a[j] / g ** (n + 1) for j in range(A.rows))
                 for i in range(A.rows))
    return KmsTable(n, vals, pd)


@dataclass(frozen=True)
class KmsReport:
    scaling_error: float        # p_n = beta * p_{n+1}
    recursion_error: float      # eigen-recursions in both indices
    normalization_error: float  # weighted sums over A^(n+1) equal 1
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.scaling_error, self.recursion_error,
                   self.normalization_error) <= self.tol


def kms_verify(A: IntMatrix, n_max: int, tol: float = 1e-9,
               gamma: Optional[float] = None) -> KmsReport:
    """Verify the KMS value identities for n0 <= n <= n_max.

    With the true beta every identity holds; the gamma hook rebuilds the
    tables at a wrong inverse temperature and must break the sum rules.
    """
    spec = analyze(A)
    if not spec.aperiodic:
        raise NotAperiodicError("KMS identities require an aperiodic matrix")
    if n_max < spec.n0:
        raise ValueError(f"n_max must be at least n0 = {spec.n0}")
    pd = perron(A)
    beta = pd.beta
    n_states = A.rows
    err_scale = err_rec = err_norm = 0.0
    for n in range(spec.n0, n_max + 1):
        p = kms_values(A, n, pd, gamma).values
        p1 = kms_values(A, n + 1, pd, gamma).values
        for i in range(n_states):
            for j in range(n_states):
                err_scale = max(err_scale, abs(p[i][j] - beta * p1[i][j]))
                right = sum(A[j, k] * p1[i][k] for k in range(n_states))
                left = sum(A[h, i] * p1[h][j] for h in range(n_states))
                err_rec = max(err_rec, abs(p[i][j] - right), abs(p[i][j] - left))
        an1 = A.pow(n + 1)
        s1 = sum(an1[i, j] * p[i][j] for i in range(n_states) for j in range(n_states))
        s2 = sum(an1[j, i] * p[i][j] for i in range(n_states) for j in range(n_states))
        err_norm = max(err_norm, abs(s1 - 1.0), abs(s2 - 1.0))
    return KmsReport(err_scale, err_rec, err_norm, tol)


def kms_temperature(A: IntMatrix) -> float:
    """The unique admissible inverse temperature log(beta).

    The matrix must be aperiodic and not a permutation; the KMS state at
    this temperature restricts to the Parry measure on the shift space.
    """
    spec = analyze(A)
    if not spec.aperiodic or spec.is_permutation:
        raise NotAperiodicError(
            "KMS temperature requires an aperiodic, non-permutation matrix")
    return log(perron(A).beta)
