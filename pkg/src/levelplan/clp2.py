"""Linear-time constrained level planarity for instances of height <= 2.

Connected 2-level graphs are exactly caterpillars.  A caterpillar has two
candidate zigzag layouts (the spine read forwards or backwards); a layout
is realizable iff the per-level constraint graphs, augmented with the spine
chain and the leaf pinning constraints, both admit a topological order.
Components are arranged left to right along a topological order of the
component-order multigraph built from cross-component constraints.
"""

from __future__ import annotations

from . import graphutil
from .model import (
    ConstrainedLevelGraph,
    components as split_components,
    concat_embeddings,
    constraints_acyclic,
    embedding_from_orders,
    reinsert_isolated,
    strip_isolated,
)


def _orientations(spine: list[str]):
    if len(spine) <= 1:
        return [spine]
    fwd, rev = spine, list(reversed(spine))
    return sorted([fwd, rev], key=lambda s: s[0])


def solve_component(c: ConstrainedLevelGraph):
    """Embedding of a connected height-<=2 instance, or None.

    Tries both spine orientations; the lexicographically smaller first
    spine vertex is attempted first, so the output is deterministic.
    """
    adj = c.graph.adjacency()
    members = sorted(c.graph.level_of)
    spine = graphutil.caterpillar_spine(adj, members)
    if spine is None:
        return None
    for orientation in _orientations(spine):
        layout = graphutil.caterpillar_layout_constraints(
            adj, members, orientation, c.graph.level_of)
        orders = {}
        ok = True
        for i in (1, 2):
            verts = [v for v in members if c.graph.level_of[v] == i]
            succ = {v: set() for v in verts}
            for u, v in c.constraints_on(i):
                succ[u].add(v)
            for lv, u, v in layout:
                if lv == i:
                    succ[u].add(v)
            order = graphutil.toposort(verts, lambda v: succ[v])
            if order is None:
                ok = False
                break
            orders[i] = order
        if ok:
            return embedding_from_orders(c, orders)
    return None


def solve(g: ConstrainedLevelGraph):
    """LevelEmbedding for a height-<=2 CLP instance, or None if infeasible."""
    h = g.graph.height
    if h > 2:
        raise ValueError("clp2 handles height <= 2 only")
    if not constraints_acyclic(g):
        return None
    stripped, removed = strip_isolated(g)
    subs, _membership, cross = split_components(stripped)

    embs = []
    order = list(range(len(subs)))
    if subs:
        succ = {i: set() for i in range(len(subs))}
        for _lv, _u, _v, ci, cj in cross:
            succ[ci].add(cj)
        order = graphutil.toposort(
            list(range(len(subs))), lambda i: succ[i],
            tie_key=lambda i: min(subs[i].graph.level_of))
        if order is None:
            return None
        for i in order:
            emb = solve_component(subs[i])
            if emb is None:
                return None
            embs.append(emb)
    combined = concat_embeddings(embs, h)
    return reinsert_isolated(g, removed, combined)
