"""BFS construction of the representative automaton, counting, matrices.

States are segment configurations discovered by breadth-first closure from
the initial configuration (n, n, n, {}); state 0 is the initial state and
indices follow insertion order.  All counting is done in exact arbitrary
precision integers.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from math import comb

from .configs import (
    SegmentConfig,
    _apply,
    _marks,
    final_letter,
    initial_config,
)
from .errors import BraidWordError, BuildLimitError, InternalConsistencyError

DEFAULT_BUILD_LIMIT = 14
BUILD_LIMIT_ENV = "BRAIDLEX_MAX_N"


# ---------------------------------------------------------------------------
# state counts
# ---------------------------------------------------------------------------

def state_count_recurrence(n: int) -> int:
    """s_0 = 0, s_1 = 1, s_n = 3 s_{n-1} - s_{n-2} + C(n, 2) + 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    s = [0, 1]
    for m in range(2, n + 1):
        s.append(3 * s[m - 1] - s[m - 2] + comb(m, 2) + 1)
    return s[n]


def fibonacci(m: int) -> int:
    a, b = 0, 1
    for _ in range(m):
        a, b = b, a + b
    return a


def state_count_formula(n: int) -> int:
    """Closed form through even-index Fibonacci numbers:
    s_n = sum_{i=1..n} (C(n+1-i, 2) + 1) * F_{2i}."""
    if n < 1:
        raise ValueError("n must be positive")
    fib = [0, 1]
    for _ in range(2 * n):
        fib.append(fib[-1] + fib[-2])
    return sum((comb(n + 1 - i, 2) + 1) * fib[2 * i] for i in range(1, n + 1))


@dataclass(frozen=True)
class StateCounts:
    """Precomputed s_i, s_i* = s_i - s_{i-1}, and Fibonacci numbers."""

    n: int
    s: tuple[int, ...]        # s[0..n]
    s_star: tuple[int, ...]   # s_star[0] = 0, s_star[i] = s[i] - s[i-1]
    fib: tuple[int, ...]      # F_0 .. F_{2n}


def state_counts(n: int) -> StateCounts:
    s = [state_count_recurrence(m) for m in range(n + 1)]
    s_star = [0] + [s[m] - s[m - 1] for m in range(1, n + 1)]
    fib = [0, 1]
    for _ in range(max(0, 2 * n - 1)):
        fib.append(fib[-1] + fib[-2])
    return StateCounts(n, tuple(s), tuple(s_star), tuple(fib[: 2 * n + 1]))


# ---------------------------------------------------------------------------
# the automaton
# ---------------------------------------------------------------------------

@dataclass
class Automaton:
    n: int
    states: list[SegmentConfig]
    index: dict[SegmentConfig, int] = field(repr=False)
    transitions: list[int] = field(repr=False)  # flat (state, letter) -> state, -1 if forbidden
    final_letters: list[int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.states)

    def target(self, state: int, letter: int) -> int:
        """Successor index, or -1 when the letter is forbidden."""
        return self.transitions[state * self.n + letter - 1]

    def out_letters(self, state: int):
        base = state * self.n
        return [
            r
            for r in range(1, self.n + 1)
            if self.transitions[base + r - 1] >= 0
        ]


def build(n: int, max_n: int | None = None) -> Automaton:
    """Breadth-first closure from the initial configuration.

    Raises BuildLimitError past the guard (default 14, env BRAIDLEX_MAX_N),
    and InternalConsistencyError if the discovered state count disagrees with
    the closed-form count.
    """
    if n < 1:
        raise ValueError("n must be positive")
    limit = max_n if max_n is not None else int(os.environ.get(BUILD_LIMIT_ENV, DEFAULT_BUILD_LIMIT))
    if n > limit:
        raise BuildLimitError(
            f"n={n} exceeds the build limit {limit}; set {BUILD_LIMIT_ENV} to override"
        )
    init = initial_config(n)
    states = [init]
    index = {init: 0}
    finals = [n]
    transitions: list[int] = []
    qi = 0
    while qi < len(states):
        c = states[qi]
        blacks, segs = _marks(c, n)
        square = c.j
        base = len(transitions)
        transitions.extend([-1] * n)
        for r in range(1, n + 1):
            if r in blacks:
                continue
            t = _apply(blacks, segs, square, r, n)
            ti = index.get(t)
            if ti is None:
                ti = len(states)
                index[t] = ti
                states.append(t)
                finals.append(t.j)
            transitions[base + r - 1] = ti
        qi += 1
    expected = state_count_formula(n)
    if len(states) != expected:
        raise InternalConsistencyError(
            f"BFS found {len(states)} states for n={n}, formula gives {expected}"
        )
    return Automaton(n, states, index, transitions, finals)


def state_after(a: Automaton, w) -> int | None:
    """Index of the state reached reading w from the start, None if rejected."""
    s = 0
    for r in w:
        if not 1 <= r <= a.n:
            raise BraidWordError(f"letter {r} outside alphabet 1..{a.n}")
        s = a.target(s, r)
        if s < 0:
            return None
    return s


def accepts(a: Automaton, w) -> bool:
    """True iff w never reads a forbidden letter, i.e. w is a representative."""
    return state_after(a, w) is not None


# ---------------------------------------------------------------------------
# incidence matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SparseBooleanMatrix:
    dim: int
    entries: frozenset[tuple[int, int]]

    def __post_init__(self):
        for p, q in self.entries:
            if not (0 <= p < self.dim and 0 <= q < self.dim):
                raise InternalConsistencyError(
                    f"entry ({p}, {q}) outside a {self.dim}x{self.dim} matrix"
                )

    def row_sums(self) -> list[int]:
        out = [0] * self.dim
        for p, _ in self.entries:
            out[p] += 1
        return out

    def col_sums(self) -> list[int]:
        out = [0] * self.dim
        for _, q in self.entries:
            out[q] += 1
        return out

    def to_dense(self) -> list[list[int]]:
        rows = [[0] * self.dim for _ in range(self.dim)]
        for p, q in self.entries:
            rows[p][q] = 1
        return rows


def incidence_matrix(a: Automaton, order: list[int] | None = None) -> SparseBooleanMatrix:
    """0/1 matrix with entry (p, q) = 1 iff some letter sends state p to q.

    ``order`` lists state indices row by row; default is BFS insertion order.
    """
    m = len(a.states)
    if order is None:
        pos = range(m)
    else:
        if sorted(order) != list(range(m)):
            raise ValueError("order must be a permutation of all state indices")
        pos = [0] * m
        for p, s in enumerate(order):
            pos[s] = p
    entries = set()
    for s in range(m):
        base = s * a.n
        for r in range(a.n):
            t = a.transitions[base + r]
            if t >= 0:
                entries.add((pos[s], pos[t]))
    return SparseBooleanMatrix(m, frozenset(entries))


# ---------------------------------------------------------------------------
# recurrent / transient split
# ---------------------------------------------------------------------------

def _strongly_connected_components(a: Automaton) -> list[list[int]]:
    """Tarjan, iterative."""
    m = len(a.states)
    n = a.n
    indexv = [-1] * m
    low = [0] * m
    onstack = [False] * m
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(m):
        if indexv[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                indexv[v] = low[v] = counter
                counter += 1
                stack.append(v)
                onstack[v] = True
            recurse = False
            base = v * n
            for i in range(pi, n):
                t = a.transitions[base + i]
                if t < 0:
                    continue
                if indexv[t] < 0:
                    work.append((v, i + 1))
                    work.append((t, 0))
                    recurse = True
                    break
                if onstack[t]:
                    low[v] = min(low[v], indexv[t])
            if recurse:
                continue
            if low[v] == indexv[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def recurrent_states(a: Automaton) -> list[int]:
    """Indices of states with i = 1, verified to be the unique closed SCC."""
    predicate = sorted(s for s, c in enumerate(a.states) if c.i == 1)
    comps = _strongly_connected_components(a)
    comp_of = [0] * len(a.states)
    for ci, comp in enumerate(comps):
        for s in comp:
            comp_of[s] = ci
    closed = []
    for ci, comp in enumerate(comps):
        if all(
            comp_of[t] == ci
            for s in comp
            for t in (a.target(s, r) for r in range(1, a.n + 1))
            if t >= 0
        ):
            closed.append(ci)
    if len(closed) != 1 or sorted(comps[closed[0]]) != predicate:
        raise InternalConsistencyError(
            f"i=1 predicate and closed SCC disagree for n={a.n}"
        )
    return predicate


def boolean_primitive(m: SparseBooleanMatrix, max_power: int | None = None) -> bool:
    """True iff some boolean power m^k, k <= max_power (default 2*dim), is
    entrywise positive."""
    dim = m.dim
    if dim == 0:
        return False
    if max_power is None:
        max_power = 2 * dim
    full = (1 << dim) - 1
    base = [0] * dim
    for p, q in m.entries:
        base[p] |= 1 << q
    rows = list(base)
    for _ in range(max_power):
        if all(r == full for r in rows):
            return True
        nxt = [0] * dim
        for p in range(dim):
            acc = 0
            b = base[p]
            while b:
                low = b & -b
                acc |= rows[low.bit_length() - 1]
                b ^= low
            nxt[p] = acc
        if nxt == rows:
            break
        rows = nxt
    return all(r == full for r in rows)


def recurrent_matrix(a: Automaton, order: list[int] | None = None) -> SparseBooleanMatrix:
    """Incidence matrix restricted to the recurrent states.

    Rows follow ``order`` (a list of recurrent state indices; default sorted
    ascending).  The result is checked to be primitive.
    """
    rec = recurrent_states(a)
    if order is None:
        order = rec
    elif sorted(order) != rec:
        raise ValueError("order must be a permutation of the recurrent states")
    pos = {s: p for p, s in enumerate(order)}
    entries = set()
    for s in order:
        base = s * a.n
        for r in range(a.n):
            t = a.transitions[base + r]
            if t >= 0:
                entries.add((pos[s], pos[t]))
    m = SparseBooleanMatrix(len(order), frozenset(entries))
    if not boolean_primitive(m):
        raise InternalConsistencyError(f"recurrent matrix for n={a.n} is not primitive")
    return m


# ---------------------------------------------------------------------------
# exact counting
# ---------------------------------------------------------------------------

def count_words(a: Automaton, k: int) -> tuple[list[int], int]:
    """First row of M^k as exact integers: per-state counts of length-k
    representatives ending at each state, plus their total."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    m = len(a.states)
    n = a.n
    counts = [0] * m
    counts[0] = 1
    for _ in range(k):
        nxt = [0] * m
        for s, c in enumerate(counts):
            if not c:
                continue
            base = s * n
            for r in range(n):
                t = a.transitions[base + r]
                if t >= 0:
                    nxt[t] += c
        counts = nxt
    return counts, sum(counts)


def ending_letter_counts(a: Automaton, k: int) -> dict[int, int]:
    """Exact count of length-k representatives ending with each letter."""
    counts, _ = count_words(a, k)
    out = {r: 0 for r in range(1, a.n + 1)}
    if k == 0:
        return out
    for s, c in enumerate(counts):
        out[a.final_letters[s]] += c
    return out


# ---------------------------------------------------------------------------
# exports
# ---------------------------------------------------------------------------

def to_json(a: Automaton) -> str:
    doc = {
        "n": a.n,
        "initial": 0,
        "states": [
            {
                "i": c.i,
                "j": c.j,
                "k": c.k,
                "S": [list(seg) for seg in c.segments],
                "final_letter": final_letter(c),
            }
            for c in a.states
        ],
        "transitions": [
            [s, r, a.target(s, r)]
            for s in range(len(a.states))
            for r in range(1, a.n + 1)
            if a.target(s, r) >= 0
        ],
    }
    return json.dumps(doc, indent=2)


def to_dot(a: Automaton) -> str:
    lines = ["digraph automaton {", "  rankdir=LR;"]
    for s, c in enumerate(a.states):
        shape = "doublecircle" if s == 0 else "circle"
        lines.append(f'  q{s} [label="{c}" shape={shape}];')
    for s in range(len(a.states)):
        for r in range(1, a.n + 1):
            t = a.target(s, r)
            if t >= 0:
                lines.append(f'  q{s} -> q{t} [label="a{r}"];')
    lines.append("}")
    return "\n".join(lines)
