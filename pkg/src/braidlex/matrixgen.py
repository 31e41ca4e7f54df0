"""Direct recursive generator for the recurrent incidence matrix.

The recurrent subautomaton on states (1, j, k, S) has a self-similar block
structure, and its incidence matrix can be written down without building the
automaton at all: a recursive ``submatrix`` routine fills the arrows of each
block, helped by a precomputed vector H of horizontal-arrow source positions.
This module transcribes that recipe line by line (see FIDELITY.md for the
two places where the printed pseudocode needed repair) and also produces the
canonical state ordering that the recipe presupposes, so the result can be
diffed entrywise against the BFS-derived matrix.

Canonical ordering of the recurrent block of size m, recursively:

  1. (1,1,1,{}), ..., (1,1,m,{})                       (m states)
  2. the black-shifted copy of the block of size m-1    (s*_{m-1} states)
  3. for i = 1 .. m-1: the size-i block embedded under an outer segment
     [1, i+1], followed by (1, i+1, k, {[1, i+1]}) for k = i+2 .. m.

The full automaton ordering stacks the white-shifted full ordering of size
n-1 (the transient states) before the recurrent block.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .automaton import Automaton, SparseBooleanMatrix, StateCounts, state_counts
from .configs import SegmentConfig, shift, shift_black
from .errors import InternalConsistencyError


@dataclass(frozen=True)
class HVector:
    """Positions (0-based offsets from a block's anchor state) of the source
    states of the horizontal arrows between consecutive embedded blocks."""

    j: int
    values: tuple[int, ...]


def compute_H(j: int, counts: StateCounts | None = None) -> HVector:
    """H(1) = [0]; H(m) = H(m-1) concatenated with H(m-1) + x_m, where
    x_m = s*_m - s*_{m-1} - m.  Length 2^(j-1)."""
    if j < 1:
        raise ValueError("j must be positive")
    if counts is None or counts.n < j:
        counts = state_counts(j)
    ss = counts.s_star
    h = [0]
    for m in range(2, j + 1):
        x = ss[m] - ss[m - 1] - m
        h += [e + x for e in h]
    return HVector(j, tuple(h))


def submatrix(
    entries: set[tuple[int, int]],
    j: int,
    H: Sequence[int],
    s: int,
    closed: bool,
    counts: StateCounts,
) -> None:
    """Insert the 1-entries of the size-j block whose upper-left corner is at
    offset s, into ``entries`` (0-based coordinate pairs).

    ``closed`` selects between the block's own arrows (True) and the arrows
    of a black-shifted copy, whose would-be first-letter arrows leave the
    block into the enclosing one (False).  Matrix positions are 1-based in
    the arithmetic below, converted on insertion.
    """
    if j < 1:
        return
    ss = counts.s_star

    def put(p: int, q: int) -> None:
        entries.add((p - 1, q - 1))

    if closed:
        for i in range(1, j + 1):
            put(i + s, 1 + s)                       # t_{1,i} -> t_{1,1}
    else:
        for i in range(1, j + 1):
            put(i + s, 1 + ss[j] + s)               # shifted t_{1,i} -> outer first bar block
    if j > 1:
        put(1 + s, j + 1 + s)                       # t_{1,1} -> its black shift
    for i in range(3, j + 1):
        put(i + s, j + i - 1 + s)                   # t_{1,i} -> black shift of t_{1,i-1}
    submatrix(entries, j - 1, H, s + j, False, counts)
    sp = s + j + ss[j - 1]                          # sp + 1 = position of the first bar block
    for i in range(1, j):
        submatrix(entries, i, H, sp, True, counts)
        if i == 1:
            for k in range(1, j - 1):
                put(sp + 1 + k, sp + 1)             # chain states into the single bar-1 state
        else:
            for k in range(1, j - i):
                put(sp + ss[i] + k, sp + comb(i + 1, 2) + 1)
        for k in range(2, j - i):
            put(sp + ss[i] + k, sp + ss[i] + k + ss[i + 1] + j - i - 2)
        if closed:
            for k in range(sp + 1, sp + ss[i] + j - i):
                put(k, s + i + 1)                   # first-letter arrows -> t_{1,i+1}
        else:
            for k in range(sp + 1, sp + ss[i] + j - i):
                put(k, s + ss[j] + i + 1)
        if i < j - 1:
            for k in range(1, 2 ** (i - 1) + 1):
                put(
                    sp + comb(i + 1, 2) + H[k - 1],
                    sp + ss[i] + j - i - 1 + comb(i + 2, 2) + H[2 * k - 2],
                )
        sp += ss[i] + j - i - 1


def build_R_direct(n: int) -> SparseBooleanMatrix:
    """Recurrent incidence matrix generated without the automaton."""
    if n < 1:
        raise ValueError("n must be positive")
    counts = state_counts(n)
    H = compute_H(max(1, n - 1), counts)
    entries: set[tuple[int, int]] = set()
    submatrix(entries, n, H.values, 0, True, counts)
    return SparseBooleanMatrix(counts.s_star[n], frozenset(entries))


# ---------------------------------------------------------------------------
# canonical state orderings
# ---------------------------------------------------------------------------

def _bar_embed(c: SegmentConfig, i: int) -> SegmentConfig:
    """Shift a size-i recurrent config up by one and wrap it in an outer
    segment [1, i+1]."""
    return SegmentConfig(
        1,
        c.j + 1,
        c.k + 1,
        ((1, i + 1),) + tuple((p + 1, q + 1) for p, q in c.segments),
    )


def canonical_star_configs(m: int) -> list[SegmentConfig]:
    """Recurrent states of the size-m automaton in canonical order."""
    if m < 1:
        return []
    out = [SegmentConfig(1, 1, k, ()) for k in range(1, m + 1)]
    out.extend(shift_black(c, m) for c in canonical_star_configs(m - 1))
    for i in range(1, m):
        out.extend(_bar_embed(c, i) for c in canonical_star_configs(i))
        out.extend(
            SegmentConfig(1, i + 1, k, ((1, i + 1),)) for k in range(i + 2, m + 1)
        )
    return out


def canonical_full_configs(n: int) -> list[SegmentConfig]:
    """All states in canonical order: white-shifted size-(n-1) ordering (the
    transient copy) followed by the recurrent block."""
    if n < 1:
        return []
    out = [shift(c, n) for c in canonical_full_configs(n - 1)]
    out.extend(canonical_star_configs(n))
    return out


def canonical_ordering(a: Automaton) -> list[int]:
    """Map canonical recurrent positions to BFS state indices."""
    order = []
    for c in canonical_star_configs(a.n):
        idx = a.index.get(c)
        if idx is None:
            raise InternalConsistencyError(f"canonical config {c} missing from automaton")
        order.append(idx)
    return order


def canonical_full_ordering(a: Automaton) -> list[int]:
    """Map canonical full positions (transients first) to BFS state indices."""
    order = []
    for c in canonical_full_configs(a.n):
        idx = a.index.get(c)
        if idx is None:
            raise InternalConsistencyError(f"canonical config {c} missing from automaton")
        order.append(idx)
    return order


# ---------------------------------------------------------------------------
# comparisons and export
# ---------------------------------------------------------------------------

def diff_matrices(
    first: SparseBooleanMatrix, second: SparseBooleanMatrix
) -> list[tuple[int, int, str]]:
    """Coordinates present in exactly one matrix, sorted; empty means equal."""
    if first.dim != second.dim:
        raise ValueError(f"dimension mismatch: {first.dim} vs {second.dim}")
    out = [(p, q, "only-in-first") for p, q in first.entries - second.entries]
    out += [(p, q, "only-in-second") for p, q in second.entries - first.entries]
    return sorted(out)


def crosscheck_generated(a: Automaton) -> list[tuple[int, int, str]]:
    """Diff of the directly generated matrix against the BFS recurrent matrix
    under the canonical ordering (direct first, BFS second)."""
    from .automaton import recurrent_matrix

    direct = build_R_direct(a.n)
    bfs = recurrent_matrix(a, canonical_ordering(a))
    return diff_matrices(direct, bfs)


def to_matrix_market(m: SparseBooleanMatrix) -> str:
    lines = [
        "%%MatrixMarket matrix coordinate integer general",
        f"{m.dim} {m.dim} {len(m.entries)}",
    ]
    lines.extend(f"{p + 1} {q + 1} 1" for p, q in sorted(m.entries))
    return "\n".join(lines) + "\n"


def to_csv(m: SparseBooleanMatrix) -> str:
    return "\n".join(",".join(str(x) for x in row) for row in m.to_dense()) + "\n"
