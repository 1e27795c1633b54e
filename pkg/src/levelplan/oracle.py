"""Brute-force ground truth and the independent drawing verifier.

These are the trust anchors for the solver suites: the verifier checks the
defining conditions of a constrained/ordered level planar drawing directly
on the embedding, and the brute solvers enumerate per-level linear
extensions at desk scale.

The crossing predicate here is deliberately written independently of the
one used inside the solvers: two edges of one band cross iff their endpoint
positions strictly interleave, and edges sharing an endpoint never cross.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    ConstrainedLevelGraph,
    LevelEmbedding,
    OrderedLevelGraph,
    clg_of,
    embedding_from_orders,
    make_proper,
    unsubdivide_embedding,
)


class SearchSpaceExceeded(Exception):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str  # ConstraintViolated | EdgeCrossing | RankMismatch | StructureMismatch
    detail: str

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return f"{self.kind}: {self.detail}"


def crossing(pos_low_a, pos_high_a, pos_low_b, pos_high_b) -> bool:
    """Strict interleaving of two band segments given their positions."""
    return (pos_low_a - pos_low_b) * (pos_high_a - pos_high_b) < 0


def verify_drawing(instance, emb: LevelEmbedding) -> list[Violation]:
    """All violations of `emb` against `instance`; empty list means OK."""
    olp = isinstance(instance, OrderedLevelGraph)
    g = instance.graph
    out: list[Violation] = []

    if emb.height != g.height:
        out.append(Violation("StructureMismatch",
                             f"embedding height {emb.height} != instance height {g.height}"))

    # Vertex sets per level.
    for i in range(1, g.height + 1):
        seq = emb.sequence(i)
        vs = [it[1] for it in seq if it[0] == "v"]
        if len(set(vs)) != len(vs):
            out.append(Violation("StructureMismatch", f"duplicate vertex on level {i}"))
        expect = set(g.level(i))
        if set(vs) != expect:
            out.append(Violation(
                "StructureMismatch",
                f"level {i} vertices {sorted(set(vs))} != instance {sorted(expect)}"))

    # Marker placement: an edge crosses exactly the levels strictly between
    # its endpoints.
    marker_levels: dict[tuple, set[int]] = {}
    for i in range(1, g.height + 1):
        for it in emb.sequence(i):
            if it[0] == "e":
                e = it[1]
                if e not in g.edges:
                    out.append(Violation("StructureMismatch", f"marker for unknown edge {e}"))
                    continue
                marker_levels.setdefault(e, set()).add(i)
    for e in sorted(g.edges):
        u, v = e
        want = set(range(g.level_of[u] + 1, g.level_of[v]))
        got = marker_levels.get(e, set())
        if got != want:
            out.append(Violation(
                "StructureMismatch",
                f"edge {e} markers on levels {sorted(got)}, expected {sorted(want)}"))
    if out:
        return out

    # Order conditions.
    for i in range(1, g.height + 1):
        order = emb.vertex_order(i)
        pos = {v: p for p, v in enumerate(order)}
        if olp:
            want = instance.level_order(i)
            if order != want:
                out.append(Violation("RankMismatch",
                                     f"level {i} order {order} != prescribed {want}"))
        else:
            for u, v in sorted(instance.constraints_on(i)):
                if pos[u] > pos[v]:
                    out.append(Violation("ConstraintViolated",
                                         f"{u} should precede {v} on level {i}"))

    # Crossings, band by band.
    for i in range(1, g.height):
        positions = emb.positions(i)
        positions_up = emb.positions(i + 1)
        segs = []
        for e in sorted(g.edges):
            u, v = e
            if g.level_of[u] <= i and g.level_of[v] >= i + 1:
                lo = positions[("v", u)] if g.level_of[u] == i else positions[("e", e)]
                hi = positions_up[("v", v)] if g.level_of[v] == i + 1 else positions_up[("e", e)]
                segs.append((e, lo, hi))
        for a in range(len(segs)):
            for b in range(a + 1, len(segs)):
                ea, loa, hia = segs[a]
                eb, lob, hib = segs[b]
                if crossing(loa, hia, lob, hib):
                    out.append(Violation("EdgeCrossing",
                                         f"edges {ea} and {eb} cross between levels {i} and {i + 1}"))
    return out


# ---------------------------------------------------------------------------
# Brute-force solvers


def _linear_extensions(verts, pairs, cap, rng=None):
    """Yield all linear extensions of the given order pairs (backtracking).

    Enumeration is lexicographic by vertex id unless rng shuffles the
    candidate order (used to certify order independence).
    """
    succ = {v: set() for v in verts}
    indeg = {v: 0 for v in verts}
    for a, b in pairs:
        if b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1

    order: list[str] = []
    count = [0]

    def rec():
        if len(order) == len(verts):
            count[0] += 1
            if count[0] > cap:
                raise SearchSpaceExceeded(f"more than {cap} linear extensions")
            yield list(order)
            return
        ready = sorted(v for v in verts if indeg[v] == 0 and v not in placed)
        if rng is not None:
            rng.shuffle(ready)
        for v in ready:
            placed.add(v)
            order.append(v)
            for w in succ[v]:
                indeg[w] -= 1
            yield from rec()
            for w in succ[v]:
                indeg[w] += 1
            order.pop()
            placed.discard(v)

    placed: set[str] = set()
    yield from rec()


def _count_extensions(verts, pairs, cap):
    n = 0
    for _ in _linear_extensions(verts, pairs, cap):
        n += 1
    return n


def _band_crossing_free(low_order, high_order, band) -> bool:
    pos_lo = {v: p for p, v in enumerate(low_order)}
    pos_hi = {v: p for p, v in enumerate(high_order)}
    segs = sorted((pos_lo[u], pos_hi[v]) for u, v in band)
    for a in range(len(segs)):
        for b in range(a + 1, len(segs)):
            if crossing(segs[a][0], segs[a][1], segs[b][0], segs[b][1]):
                return False
    return True


def _brute_proper(proper: ConstrainedLevelGraph, cap, rng=None):
    """Search per-level orders of a proper instance.  Subdivision vertices
    are free simply because they carry no constraints."""
    g = proper.graph
    h = g.height
    bands = {}
    for i in range(1, h):
        bands[i] = sorted((u, v) for u, v in g.edges if g.level_of[u] == i)

    level_ext = []
    for i in range(1, h + 1):
        verts = g.level(i)
        pairs = [p for p in proper.constraints_on(i)]
        level_ext.append((verts, pairs))

    total = 1
    for verts, pairs in level_ext:
        total *= max(1, _count_extensions(verts, pairs, cap))
        if total > cap:
            raise SearchSpaceExceeded(f"search space beyond {cap}")

    def rec(i, chosen):
        if i > h:
            yield dict(chosen)
            return
        verts, pairs = level_ext[i - 1]
        for order in _linear_extensions(verts, pairs, cap, rng):
            if i > 1 and not _band_crossing_free(chosen[i - 1], order, bands[i - 1]):
                continue
            chosen[i] = order
            yield from rec(i + 1, chosen)
            del chosen[i]

    for orders in rec(1, {}):
        return orders
    return None


def brute_clp(instance: ConstrainedLevelGraph, cap: int = 10_000_000, rng=None):
    """Exhaustive CLP oracle; returns a LevelEmbedding or None (infeasible)."""
    proper, submap = make_proper(instance)
    orders = _brute_proper(proper, cap, rng)
    if orders is None:
        return None
    emb = embedding_from_orders(proper, orders)
    return unsubdivide_embedding(emb, submap)


def brute_olp(instance: OrderedLevelGraph, cap: int = 10_000_000, rng=None):
    """Exhaustive OLP oracle: ranked vertices fixed, only subdivision
    vertices introduced by properization are permuted."""
    clg = clg_of(instance)
    proper, submap = make_proper(clg)
    orders = _brute_proper(proper, cap, rng)
    if orders is None:
        return None
    emb = embedding_from_orders(proper, orders)
    return unsubdivide_embedding(emb, submap)


def brute_solve(instance, cap: int = 10_000_000, rng=None):
    if isinstance(instance, OrderedLevelGraph):
        return brute_olp(instance, cap, rng)
    return brute_clp(instance, cap, rng)
