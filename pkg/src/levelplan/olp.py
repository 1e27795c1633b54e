"""Exact ordered level planarity via sweeping sequences of separations.

A separation assigns one position index per level: index 0 is the gap left
of the first vertex, odd index 2r-1 is the r-th vertex in rank order, even
index 2r the gap right of it.  The solver fills a memo table T[s, U] where
U is the set of already-used edges joining vertices on s (or BOTTOM), by
stepping one coordinate back at a time.  A feasible instance yields an
exhaustive sweeping sequence from the all-zeros separation to the all-max
one that uses every edge; the drawing is read off that sequence.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .model import Item, LevelEmbedding, OrderedLevelGraph

BOTTOM = None  # explicit bottom state of the used-edge set

ON, LEFT, RIGHT = "on", "left", "right"


class SequenceInvalid(Exception):
    pass


class MemoLimitExceeded(Exception):
    pass


@dataclass(frozen=True)
class SweepingSequence:
    separations: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.separations)

    @property
    def nice(self) -> bool:
        for a, b in zip(self.separations, self.separations[1:]):
            diffs = [y - x for x, y in zip(a, b)]
            if sorted(diffs) != [0] * (len(a) - 1) + [1]:
                return False
        return True

    def exhaustive_for(self, widths: list[int]) -> bool:
        if not self.nice:
            return False
        first, last = self.separations[0], self.separations[-1]
        return (all(p == 0 for p in first)
                and all(p == 2 * w for p, w in zip(last, widths)))


class _Context:
    """Precomputed rank structure of one OLP instance."""

    def __init__(self, g: OrderedLevelGraph):
        self.g = g
        self.h = g.graph.height
        self.order = {i: g.level_order(i) for i in range(1, self.h + 1)}
        self.widths = [len(self.order[i]) for i in range(1, self.h + 1)]
        # odd position index of each vertex on its level
        self.vpos = {}
        for i in range(1, self.h + 1):
            for r, v in enumerate(self.order[i], start=1):
                self.vpos[v] = 2 * r - 1
        self.level_of = g.graph.level_of
        self.adj: dict[str, list[str]] = {v: [] for v in g.graph.level_of}
        for u, v in g.graph.edges:
            self.adj[u].append(v)
            self.adj[v].append(u)

    def vertex_at(self, level: int, p: int) -> str:
        """Vertex at odd position index p on the given level."""
        return self.order[level][(p - 1) // 2]

    def classify(self, v: str, s: tuple[int, ...]):
        p = s[self.level_of[v] - 1]
        mine = self.vpos[v]
        if mine == p:
            return ON
        return LEFT if mine < p else RIGHT

    def on_vertices(self, s: tuple[int, ...]) -> dict[int, str]:
        """level -> its on-separation vertex, for odd components of s."""
        out = {}
        for i in range(1, self.h + 1):
            p = s[i - 1]
            if p % 2 == 1:
                out[i] = self.vertex_at(i, p)
        return out

    def consecutive_pairs(self, s: tuple[int, ...]):
        """Pairs (u, v) consecutive on s: both on s, only gaps in between."""
        on = self.on_vertices(s)
        levels = sorted(on)
        pairs = []
        for a, b in zip(levels, levels[1:]):
            if all(s[i - 1] % 2 == 0 for i in range(a + 1, b)):
                pairs.append((on[a], on[b]))
        return pairs

    def neighbor_on(self, s, v, direction):
        """Predecessor (direction=-1) or successor (+1) of v along s."""
        lv = self.level_of[v]
        on = self.on_vertices(s)
        i = lv + direction
        while 1 <= i <= self.h:
            if s[i - 1] % 2 == 1:
                return on[i]
            i += direction
        return None

    def uses_edge(self, s, e) -> bool:
        u, v = e
        if self.classify(u, s) != ON or self.classify(v, s) != ON:
            return False
        a, b = self.level_of[u], self.level_of[v]
        return all(s[i - 1] % 2 == 0 for i in range(a + 1, b))

    def step_back(self, s: tuple[int, ...], used: frozenset | None, j: int):
        """One backward step of the recurrence at level j (1-based).

        Returns (s', U') where U' may be BOTTOM.  Precondition: s[j-1] >= 1
        and used is not BOTTOM.
        """
        p = s[j - 1]
        if p < 1:
            raise ValueError("separation component already at the left end")
        if used is BOTTOM:
            raise ValueError("cannot step back from the bottom state")
        s2 = s[:j - 1] + (p - 1,) + s[j:]
        if p % 2 == 1:
            # The vertex at position p leaves the separation.
            v = self.vertex_at(j, p)
            pred = self.neighbor_on(s, v, -1)
            succ = self.neighbor_on(s, v, +1)
            incident = {e for e in used if v in e}
            for e in incident:
                other = e[0] if e[1] == v else e[1]
                if other != pred and other != succ:
                    return s2, BOTTOM
            return s2, frozenset(used - incident)
        # p is a gap, so position p-1 is a vertex that re-enters on s'.
        v = self.vertex_at(j, p - 1)
        for w in self.adj[v]:
            if self.classify(w, s) == RIGHT:
                return s2, BOTTOM
        new_used = set(used)
        pred = self.neighbor_on(s2, v, -1)
        succ = self.neighbor_on(s2, v, +1)
        if pred is not None and succ is not None:
            bridging = (pred, succ) if self.level_of[pred] < self.level_of[succ] else (succ, pred)
            new_used.discard(bridging)
        on2 = set(self.on_vertices(s2).values())
        for w in self.adj[v]:
            if w in on2 and w != v:
                e = (v, w) if self.level_of[v] < self.level_of[w] else (w, v)
                new_used.add(e)
        return s2, frozenset(new_used)


def classify(g: OrderedLevelGraph, v: str, s: tuple[int, ...]) -> str:
    """One of "on", "left", "right" for vertex v against separation s."""
    return _Context(g).classify(v, s)


def uses_edge(g: OrderedLevelGraph, s: tuple[int, ...], e) -> bool:
    return _Context(g).uses_edge(s, e)


def step_back(g: OrderedLevelGraph, s: tuple[int, ...], used, j: int):
    return _Context(g).step_back(s, used, j)


def _memo_limit_from_env() -> int | None:
    raw = os.environ.get("LEVELPLAN_MEMO_LIMIT")
    return int(raw) if raw else None


def solve_detailed(g: OrderedLevelGraph, memo_limit: int | None = None):
    """Run the DP; returns (SweepingSequence | None, stats dict)."""
    ctx = _Context(g)
    h = ctx.h
    if memo_limit is None:
        memo_limit = _memo_limit_from_env()
    stats = {"memo_entries": 0, "visits": 0}
    if h == 0:
        if g.graph.edges:
            return None, stats
        return SweepingSequence(((),)), stats

    zeros = tuple(0 for _ in range(h))
    root = (tuple(2 * w for w in ctx.widths), frozenset())
    memo: dict = {(zeros, frozenset()): (True, 0)}

    # Iterative DFS with memoization; memo values are (True, backlink_level)
    # or False.
    stack = [(root, 1)]
    while stack:
        (s, used), j = stack.pop()
        if (s, used) in memo:
            continue
        stats["visits"] += 1
        found = None
        resume = None
        for jj in range(j, h + 1):
            if s[jj - 1] < 1:
                continue
            child = ctx.step_back(s, used, jj)
            if child[1] is BOTTOM:
                continue
            val = memo.get(child)
            if val is None:
                resume = jj
                break
            if val is not False:
                found = jj
                break
        if found is not None:
            memo[(s, used)] = (True, found)
        elif resume is not None:
            stack.append(((s, used), resume))
            stack.append((ctx.step_back(s, used, resume), 1))
        else:
            memo[(s, used)] = False
        if memo_limit is not None and len(memo) > memo_limit:
            raise MemoLimitExceeded(
                f"OLP memo exceeded {memo_limit} entries (LEVELPLAN_MEMO_LIMIT)")

    stats["memo_entries"] = len(memo)
    val = memo.get(root)
    if not val:
        return None, stats
    # Reconstruct the exhaustive sequence via the stored back-links.
    seps = [root[0]]
    state = root
    while state[0] != zeros:
        _, j = memo[state]
        state = ctx.step_back(state[0], state[1], j)
        seps.append(state[0])
    seps.reverse()
    return SweepingSequence(tuple(seps)), stats


def solve(g: OrderedLevelGraph, memo_limit: int | None = None):
    """SweepingSequence if g is ordered level planar, else None."""
    seq, _stats = solve_detailed(g, memo_limit)
    return seq


def realize(g: OrderedLevelGraph, seq: SweepingSequence) -> LevelEmbedding:
    """Build the drawing from a sweeping sequence that uses every edge.

    Vertices are placed in sweep order; an edge is drawn (its crossing
    markers emitted) at the first separation that uses it.
    """
    ctx = _Context(g)
    h = ctx.h
    seps = list(seq.separations)
    if not seps:
        raise SequenceInvalid("empty sweeping sequence")
    if any(len(s) != h for s in seps):
        raise SequenceInvalid("separation arity differs from the instance height")
    zeros = tuple(0 for _ in range(h))
    maxs = tuple(2 * w for w in ctx.widths)
    if seps[0] != zeros:
        seps.insert(0, zeros)
    if seps[-1] != maxs:
        # Sweep to the right end so trailing isolated vertices get placed;
        # the all-max separation has only gap components, so it uses no edge.
        seps.append(maxs)
    for a, b in zip(seps, seps[1:]):
        if any(y < x for x, y in zip(a, b)):
            raise SequenceInvalid("sweeping sequence is not componentwise non-decreasing")
    for s in seps:
        for i in range(1, h + 1):
            if not 0 <= s[i - 1] <= 2 * ctx.widths[i - 1]:
                raise SequenceInvalid(f"position index out of range on level {i}")

    levels: dict[int, list[Item]] = {i: [] for i in range(1, h + 1)}
    drawn: set = set()
    prev = seps[0]
    for s in seps[1:]:
        # Vertices passed or reached on each level, left to right.
        for i in range(1, h + 1):
            for p in range(prev[i - 1] + 1, s[i - 1] + 1):
                if p % 2 == 1:
                    levels[i].append(("v", ctx.vertex_at(i, p)))
        for u, v in ctx.consecutive_pairs(s):
            e = (u, v)
            if e in ctx.g.graph.edges and e not in drawn:
                drawn.add(e)
                for i in range(ctx.level_of[u] + 1, ctx.level_of[v]):
                    levels[i].append(("e", e))
        prev = s
    missing = set(ctx.g.graph.edges) - drawn
    if missing:
        raise SequenceInvalid(f"sequence does not use edges {sorted(missing)}")
    placed = sum(1 for i in levels for it in levels[i] if it[0] == "v")
    if placed != len(ctx.level_of):
        raise SequenceInvalid("sequence does not sweep past every vertex")
    return LevelEmbedding(h, {i: tuple(items) for i, items in levels.items()})


def solve_and_draw(g: OrderedLevelGraph, memo_limit: int | None = None):
    """LevelEmbedding if feasible, else None."""
    seq = solve(g, memo_limit)
    if seq is None:
        return None
    return realize(g, seq)
