"""Segment configurations: finite descriptors of forbidden-prefix sets.

A configuration (i, j, k, S) names one state of the automaton for the
positive braid monoid on n generators.  It encodes the set of minimal
forbidden prefixes after a braid as a marked diagram on n cells:

  * a square at position j (the final letter of any word reaching the state),
  * a black circle at r for every forbidden single letter a_r,
  * a segment [p, q] for every forbidden increasing run a_p a_{p+1} ... a_q,
  * white circles everywhere else.

S holds the segments whose left endpoint lies left of the square; k records
what sits immediately right of the square (black circle, segment end, or
nothing).  The two-letter element a_{j+1} a_j is implicit in (j, k) and is
never drawn.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterator

from .errors import (
    ConfigError,
    DiagramParseError,
    ForbiddenLetterError,
    ShiftRangeError,
)

Segment = tuple[int, int]
Word = tuple[int, ...]


@dataclass(frozen=True, order=True)
class SegmentConfig:
    i: int
    j: int
    k: int
    segments: tuple[Segment, ...] = ()

    def __str__(self) -> str:
        body = ";".join(f"[{p}-{q}]" for p, q in self.segments)
        return f"({self.i},{self.j},{self.k},{{{body}}})"


@dataclass(frozen=True)
class Diagram:
    """Explicit cell marks: 'o' white circle, '*' black circle, '#' square."""

    cells: tuple[str, ...]
    segments: tuple[Segment, ...] = ()

    @property
    def n(self) -> int:
        return len(self.cells)


def initial_config(n: int) -> SegmentConfig:
    return SegmentConfig(n, n, n, ())


def validate(c: SegmentConfig, n: int) -> bool:
    """True iff (i, j, k, S) satisfies the nesting constraints for size n."""
    if not 1 <= c.i <= c.j <= c.k <= n:
        return False
    t = len(c.segments)
    if t == 0:
        return True
    lefts = [p for p, _ in c.segments]
    rights = [q for _, q in c.segments]
    if lefts[0] < c.i or lefts[-1] >= c.j:
        return False
    if any(lefts[r] >= lefts[r + 1] for r in range(t - 1)):
        return False
    if rights[0] > n:
        return False
    if any(rights[r + 1] > rights[r] for r in range(t - 1)):
        return False
    # all but the innermost right endpoint must reach at least k
    if t >= 2 and rights[t - 2] < c.k:
        return False
    # innermost segment ends at the square or reaches at least k
    if rights[-1] != c.j and rights[-1] < c.k:
        return False
    return True


def psi(c: SegmentConfig, n: int) -> frozenset[Word]:
    """The set of braids (as canonical words) named by the configuration.

    Union of: one increasing run per segment of S; the forbidden single
    letters; and the part right of the square determined by (j, k).
    """
    if not validate(c, n):
        raise ConfigError(f"invalid segment configuration {c} for n={n}")
    out: set[Word] = {tuple(range(p, q + 1)) for p, q in c.segments}
    seg_starts = {p for p, _ in c.segments}
    j, k = c.j, c.k
    for r in range(c.i, n + 1):
        if r not in seg_starts and r != j and r != j + 1:
            out.add((r,))
    if k == j == n:
        pass
    elif k == j:  # j < n
        out.add((j + 1, j))
    elif k == j + 1:
        out.add((j + 1,))
    else:
        out.add((j + 1, j))
        out.add(tuple(range(j + 1, k + 1)))
    return frozenset(out)


def final_letter(c: SegmentConfig) -> int:
    """Common label of every arrow into this state: the square position."""
    return c.j


# ---------------------------------------------------------------------------
# diagram marks and the letter-transition rules
# ---------------------------------------------------------------------------

def _marks(c: SegmentConfig, n: int) -> tuple[set[int], list[Segment]]:
    """Black-circle positions and drawn segments of the diagram of ``c``."""
    seg_starts = {p for p, _ in c.segments}
    j, k = c.j, c.k
    blacks = {
        r
        for r in range(c.i, n + 1)
        if r not in seg_starts and r != j and r != j + 1
    }
    segs = list(c.segments)
    if k == j + 1:
        blacks.add(j + 1)
    elif k > j + 1:
        segs.append((j + 1, k))
    return blacks, segs


def _parse(n: int, square: int, blacks: set[int], segs: list[Segment]) -> SegmentConfig:
    """Recover (i, j, k, S) from diagram content with the square at ``square``."""
    s_sorted = sorted(segs)
    s_left = tuple(s for s in s_sorted if s[0] < square)
    if square == n:
        k = n
    elif square + 1 in blacks:
        k = square + 1
    else:
        k = square
        for p, q in s_sorted:
            if p == square + 1:
                k = q
                break
    starts = [p for p in blacks if p < square]
    starts.extend(p for p, _ in s_left)
    i = min(starts, default=square)
    return SegmentConfig(i, square, k, s_left)


def _apply(blacks: set[int], segs: list[Segment], square: int, r: int, n: int) -> SegmentConfig:
    """Read letter r from the diagram (square, blacks, segs); r must be permitted.

    A black circle at r-1 is the degenerate run [r-1, r-1] and extends to
    [r-1, r], exactly as a segment ending at r-1 does.
    """
    nb = {p for p in blacks if p < r - 1}
    ns: list[Segment] = []
    for p, q in segs:
        if q == r - 1:
            ns.append((p, r))
        elif p < r <= q:
            ns.append((p, q))
        elif p == r:
            if r + 1 < q:
                ns.append((r + 1, q))
            else:
                nb.add(q)
    if r - 1 in blacks:
        ns.append((r - 1, r))
    if square == r - 1:
        nb.add(r - 1)
    if r + 2 <= n:
        nb.update(range(r + 2, n + 1))
    return _parse(n, r, nb, ns)


def permitted_letters(c: SegmentConfig, n: int) -> set[int]:
    """Letters with no black circle, i.e. single letters not in psi(c, n)."""
    blacks, _ = _marks(c, n)
    return set(range(1, n + 1)) - blacks


def transition(c: SegmentConfig, r: int, n: int) -> SegmentConfig:
    """Target configuration after reading the permitted letter r."""
    if not 1 <= r <= n:
        raise ForbiddenLetterError(f"letter {r} outside alphabet 1..{n}")
    blacks, segs = _marks(c, n)
    if r in blacks:
        raise ForbiddenLetterError(f"letter {r} is forbidden at {c}")
    return _apply(blacks, segs, c.j, r, n)


# ---------------------------------------------------------------------------
# shifts
# ---------------------------------------------------------------------------

def _max_index(c: SegmentConfig) -> int:
    m = c.k
    if c.segments:
        m = max(m, c.segments[0][1])
    return m


def shift(c: SegmentConfig, n: int) -> SegmentConfig:
    """Raise every index by one: prepend a white circle to the diagram."""
    if _max_index(c) >= n:
        raise ShiftRangeError(f"{c} mentions {_max_index(c)}, cannot shift within n={n}")
    return SegmentConfig(
        c.i + 1, c.j + 1, c.k + 1, tuple((p + 1, q + 1) for p, q in c.segments)
    )


def shift_black(c: SegmentConfig, n: int) -> SegmentConfig:
    """Raise every index by one and set i = 1: prepend a black circle."""
    s = shift(c, n)
    return SegmentConfig(1, s.j, s.k, s.segments)


def unshift(c: SegmentConfig) -> SegmentConfig:
    """Inverse of shift; valid when no index equals 1."""
    if c.i <= 1:
        raise ShiftRangeError(f"{c} mentions index 1, cannot unshift")
    return SegmentConfig(
        c.i - 1, c.j - 1, c.k - 1, tuple((p - 1, q - 1) for p, q in c.segments)
    )


# ---------------------------------------------------------------------------
# diagrams as explicit cell marks
# ---------------------------------------------------------------------------

def to_diagram(c: SegmentConfig, n: int) -> Diagram:
    if not validate(c, n):
        raise ConfigError(f"invalid segment configuration {c} for n={n}")
    blacks, segs = _marks(c, n)
    cells = tuple(
        "#" if p == c.j else "*" if p in blacks else "o" for p in range(1, n + 1)
    )
    return Diagram(cells, tuple(sorted(segs)))


def from_diagram(d: Diagram) -> SegmentConfig:
    squares = [p for p, mark in enumerate(d.cells, start=1) if mark == "#"]
    if len(squares) != 1:
        raise DiagramParseError(f"diagram needs exactly one square, found {len(squares)}")
    for mark in d.cells:
        if mark not in "o*#":
            raise DiagramParseError(f"unknown cell mark {mark!r}")
    blacks = {p for p, mark in enumerate(d.cells, start=1) if mark == "*"}
    return _parse(d.n, squares[0], blacks, list(d.segments))


def render_diagram(d: Diagram) -> str:
    """Fixed-width text art: segment lines (outermost first) above the cell row.

    Position p occupies column 2(p-1); '-' marks segment body.
    """
    width = 2 * d.n - 1
    lines = []
    for p, q in sorted(d.segments, key=lambda s: (s[0], -s[1])):
        row = [" "] * width
        for col in range(2 * (p - 1), 2 * (q - 1) + 1):
            row[col] = "-"
        lines.append("".join(row))
    lines.append(" ".join(d.cells))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# exhaustive enumeration (test scale)
# ---------------------------------------------------------------------------

def all_configs(n: int) -> Iterator[SegmentConfig]:
    """Every valid configuration for size n, lexicographic on (i, j, k, S)."""
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                group = [SegmentConfig(i, j, k, ())]
                for t in range(1, j - i + 1):
                    for lefts in combinations(range(i, j), t):
                        for rights_inc in combinations_with_replacement(
                            range(j, n + 1), t
                        ):
                            rights = rights_inc[::-1]
                            c = SegmentConfig(i, j, k, tuple(zip(lefts, rights)))
                            if validate(c, n):
                                group.append(c)
                yield from sorted(group)
