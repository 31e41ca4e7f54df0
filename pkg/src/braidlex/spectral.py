"""Perron-Frobenius analysis of the recurrent incidence matrix.

The dominant eigenvalue of the recurrent matrix is the growth rate of the
monoid; the sum-normalized left eigenvector is the stationary distribution
over recurrent states, and summing it by final letter gives the limiting
proportion of long representatives ending with each generator.  Power
iteration suffices: the matrix is primitive, so the Perron root is simple
and strictly dominant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix

from .automaton import (
    Automaton,
    SparseBooleanMatrix,
    boolean_primitive,
    recurrent_matrix,
    recurrent_states,
)
from .configs import SegmentConfig
from .errors import (
    BoundViolationError,
    ConvergenceError,
    SpectralPreconditionError,
)

#: Every growth rate stays strictly below the limit of the sequence.
GROWTH_RATE_CEILING = 3.233637
#: Uniform lower bound for the proportion of representatives ending with a_1.
P1_FLOOR = 1 / 8
#: Uniform lower bound for the proportion ending at the state (1,1,1,{}).
P_STATE_FLOOR = 1 / 32

DEFAULT_TOL = 1e-13
DEFAULT_MAX_ITER = 100_000


@dataclass
class SpectralResult:
    lam: float                 # Perron-Frobenius eigenvalue (growth rate)
    v: np.ndarray              # left eigenvector, entries > 0, sum 1
    iterations: int
    residual: float            # sup norm of v R - lam v


@dataclass
class ProportionReport:
    n: int
    per_letter: tuple[float, ...]   # index r-1 <-> letter r; sums to 1
    p_state_t11: float              # mass of the state (1,1,1,{})


def _to_csr(m: SparseBooleanMatrix) -> csr_matrix:
    if not m.entries:
        return csr_matrix((m.dim, m.dim))
    rows, cols = zip(*m.entries)
    data = np.ones(len(rows))
    return csr_matrix((data, (rows, cols)), shape=(m.dim, m.dim))


def perron(
    R: SparseBooleanMatrix,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SpectralResult:
    """Left power iteration from the uniform vector, L1-normalized each step.

    Stops when consecutive eigenvalue estimates differ by less than tol and
    the residual sup norm drops below tol; raises ConvergenceError otherwise.
    """
    mat = _to_csr(R)
    v = np.full(R.dim, 1.0 / R.dim)
    lam_prev = 0.0
    for it in range(1, max_iter + 1):
        w = v @ mat
        lam = float(w.sum())  # = ||w||_1 since w >= 0 and ||v||_1 = 1
        if lam <= 0.0:
            raise ConvergenceError(f"iterate vanished at step {it}", residual=None)
        residual = float(np.max(np.abs(w - lam * v)))
        v = w / lam
        if abs(lam - lam_prev) < tol and residual < tol:
            return SpectralResult(lam, v, it, residual)
        lam_prev = lam
    raise ConvergenceError(
        f"no convergence after {max_iter} iterations (residual {residual:.3e})",
        residual=residual,
    )


def spectral_radius_estimate(R: SparseBooleanMatrix, iterations: int = 2000) -> float:
    """Crude power-iteration estimate; zero-safe for nilpotent matrices."""
    mat = _to_csr(R)
    v = np.full(R.dim, 1.0 / max(R.dim, 1))
    est = 0.0
    for _ in range(iterations):
        w = v @ mat
        s = float(w.sum())
        if s == 0.0:
            return 0.0
        est = s
        v = w / s
    return est


def proportions(a: Automaton, r: SpectralResult) -> ProportionReport:
    """Ending-letter proportions from a spectral result for recurrent_matrix(a)
    in its default (sorted-index) row order."""
    rec = recurrent_states(a)
    if len(rec) != len(r.v):
        raise ValueError("spectral result does not match the recurrent block")
    per = [0.0] * a.n
    t11 = None
    t11_config = SegmentConfig(1, 1, 1, ())
    for row, s in enumerate(rec):
        per[a.final_letters[s] - 1] += float(r.v[row])
        if a.states[s] == t11_config:
            t11 = float(r.v[row])
    if t11 is None:
        raise ValueError("state (1,1,1,{}) not found among recurrent states")
    return ProportionReport(a.n, tuple(per), t11)


def primitivity_check(R: SparseBooleanMatrix) -> bool:
    """Definitional check: some boolean power up to 2*dim is entrywise positive."""
    return boolean_primitive(R)


def resolvent_nonneg_check(R: SparseBooleanMatrix, lam: float, term_tol: float = 1e-14) -> bool:
    """Truncated Neumann expansion of (lam I - R)^{-1}:

        lam^{-1} I + lam^{-2} R + lam^{-3} R^2 + ...

    summed until the term sup norm falls below term_tol.  True iff every
    entry of the sum is nonnegative, and strictly positive when R is
    primitive.  Requires lam safely above the spectral radius.
    """
    est = spectral_radius_estimate(R)
    if lam <= est + 1e-6:
        raise SpectralPreconditionError(
            f"lambda={lam} is not safely above the spectral radius estimate {est}"
        )
    dense = np.array(R.to_dense(), dtype=float)
    term = np.eye(R.dim) / lam
    total = term.copy()
    while True:
        term = (term @ dense) / lam
        if float(np.max(np.abs(term))) < term_tol:
            break
        total += term
    if bool(np.any(total < 0.0)):
        return False
    if primitivity_check(R):
        return bool(np.all(total > 0.0))
    return True


# ---------------------------------------------------------------------------
# per-n summaries and the bound report
# ---------------------------------------------------------------------------

@dataclass
class GrowthRow:
    n: int
    lam: float
    p_a1: float    # proportion ending at state (1,1,1,{})
    p_1: float     # proportion ending with letter a_1


@dataclass
class SpectralAnalysis:
    n: int
    result: SpectralResult
    report: ProportionReport

    @property
    def row(self) -> GrowthRow:
        return GrowthRow(
            self.n, self.result.lam, self.report.p_state_t11, self.report.per_letter[0]
        )


def analyze(
    a: Automaton, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> SpectralAnalysis:
    res = perron(recurrent_matrix(a), tol=tol, max_iter=max_iter)
    return SpectralAnalysis(a.n, res, proportions(a, res))


@dataclass
class BoundReport:
    rows: list[GrowthRow]
    checks: list[tuple[str, bool]]

    @property
    def all_ok(self) -> bool:
        return all(ok for _, ok in self.checks)


def bound_report(rows: list[GrowthRow], product_tol: float = 1e-10) -> BoundReport:
    """Verify the proved bounds on consecutive growth rows; raise
    BoundViolationError naming the first failing bound."""
    rows = sorted(rows, key=lambda r: r.n)
    for row in rows:
        if not row.p_1 > P1_FLOOR:
            raise BoundViolationError("P_1 > 1/8", row.n, row.p_1)
        if not row.p_a1 > P_STATE_FLOOR:
            raise BoundViolationError("P_a1 > 1/32", row.n, row.p_a1)
        if not row.lam < GROWTH_RATE_CEILING:
            raise BoundViolationError(f"lambda < {GROWTH_RATE_CEILING}", row.n, row.lam)
        if abs(row.p_1 - row.lam * row.p_a1) > product_tol:
            raise BoundViolationError("P_1 = lambda * P_a1", row.n, row.p_1 - row.lam * row.p_a1)
    for prev, cur in zip(rows, rows[1:]):
        if cur.n == prev.n + 1:
            if not cur.lam > prev.lam:
                raise BoundViolationError("lambda strictly increasing", cur.n, cur.lam)
            if not cur.p_1 < prev.p_1:
                raise BoundViolationError("P_1 strictly decreasing", cur.n, cur.p_1)
    checks = [
        ("P_1 > 1/8", True),
        ("P_a1 > 1/32", True),
        (f"lambda < {GROWTH_RATE_CEILING}", True),
        ("P_1 = lambda * P_a1", True),
        ("lambda strictly increasing", True),
        ("P_1 strictly decreasing", True),
    ]
    return BoundReport(rows, checks)
