"""Core data model: level graphs, constraints, embeddings and their file formats.

A level graph assigns every vertex to a horizontal level 1..h and directs
every edge strictly upward.  Constrained instances add a partial order per
level, ordered instances a total order encoded as integer ranks.  A level
embedding records, per level, the left-to-right sequence of vertices and
edge crossings; it is the canonical solver output and is what the verifier
checks.

All types are treated as immutable after construction; helpers return new
objects rather than mutating.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

Edge = tuple[str, str]
# Embedding items: ("v", vertex_id) or ("e", (u, v)).
Item = tuple[str, object]


class InstanceError(Exception):
    """Base class for instance validation failures."""


class UnknownVertex(InstanceError):
    pass


class EdgeNotUpward(InstanceError):
    pass


class SameLevelEdge(InstanceError):
    pass


class DuplicateRank(InstanceError):
    pass


class ConstraintAcrossLevels(InstanceError):
    pass


class EmptyLevel(InstanceError):
    pass


class OrderCycle(InstanceError):
    """A merged order (drawing + constraints) is cyclic; indicates a caller bug."""


@dataclass(frozen=True)
class LevelGraph:
    """Directed level graph: vertex -> level map, height, upward edges."""

    level_of: dict[str, int]
    height: int
    edges: frozenset[Edge]

    @property
    def vertices(self) -> set[str]:
        return set(self.level_of)

    def level(self, i: int) -> list[str]:
        """Vertices on level i, sorted by id (no drawing order implied)."""
        return sorted(v for v, lv in self.level_of.items() if lv == i)

    def width(self, i: int) -> int:
        return sum(1 for lv in self.level_of.values() if lv == i)

    def neighbors(self, v: str) -> list[str]:
        out = [b for a, b in self.edges if a == v]
        out += [a for a, b in self.edges if b == v]
        return sorted(out)

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.level_of}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_proper(self) -> bool:
        return all(self.level_of[b] == self.level_of[a] + 1 for a, b in self.edges)


@dataclass(frozen=True)
class ConstrainedLevelGraph:
    """Level graph plus, per level, a set of ordered pairs u < v (left of)."""

    graph: LevelGraph
    constraints: dict[int, frozenset[Edge]]

    def constraints_on(self, level: int) -> frozenset[Edge]:
        return self.constraints.get(level, frozenset())

    def all_constraints(self) -> list[tuple[int, str, str]]:
        out = []
        for lv in sorted(self.constraints):
            for u, v in sorted(self.constraints[lv]):
                out.append((lv, u, v))
        return out


@dataclass(frozen=True)
class OrderedLevelGraph:
    """Level graph plus a total order per level, given as 1-based ranks."""

    graph: LevelGraph
    rank_of: dict[str, int]

    def level_order(self, i: int) -> list[str]:
        """Vertices of level i in rank order."""
        vs = [v for v, lv in self.graph.level_of.items() if lv == i]
        return sorted(vs, key=lambda v: self.rank_of[v])


@dataclass(frozen=True)
class LevelEmbedding:
    """Per level, the left-to-right sequence of vertices and edge crossings.

    Coordinates are optional synthesis; the sequences are canonical.
    """

    height: int
    levels: dict[int, tuple[Item, ...]]

    def sequence(self, i: int) -> tuple[Item, ...]:
        return self.levels.get(i, ())

    def vertex_order(self, i: int) -> list[str]:
        return [it[1] for it in self.sequence(i) if it[0] == "v"]

    def positions(self, i: int) -> dict[Item, int]:
        return {it: p for p, it in enumerate(self.sequence(i))}

    def coordinates(self) -> dict[str, tuple[int, int]]:
        """x = index within the level sequence, y = level index."""
        coords = {}
        for i in sorted(self.levels):
            for x, it in enumerate(self.levels[i]):
                if it[0] == "v":
                    coords[it[1]] = (x, i)
        return coords

    def edge_polyline(self, e: Edge, level_of: dict[str, int]) -> list[tuple[int, int]]:
        """Points (x, y) for edge e, passing through its crossing markers."""
        u, v = e
        pts = []
        for i in range(level_of[u], level_of[v] + 1):
            seq = self.sequence(i)
            for x, it in enumerate(seq):
                if it == ("v", u) and i == level_of[u]:
                    pts.append((x, i))
                elif it == ("v", v) and i == level_of[v]:
                    pts.append((x, i))
                elif it == ("e", e):
                    pts.append((x, i))
        return pts


@dataclass(frozen=True)
class SubdivisionMap:
    """Original long edge -> ordered list of subdivision vertices (bottom-up)."""

    subdivided: dict[Edge, tuple[str, ...]]

    def is_empty(self) -> bool:
        return not self.subdivided

    def subdivision_vertices(self) -> set[str]:
        out: set[str] = set()
        for chain in self.subdivided.values():
            out.update(chain)
        return out


# ---------------------------------------------------------------------------
# Validation and parsing


def _build_level_graph(vertex_levels: dict[str, int], height: int,
                       edges, *, require_full_levels: bool = True) -> LevelGraph:
    known = set(vertex_levels)
    edge_set = set()
    for u, v in edges:
        if u not in known:
            raise UnknownVertex(f"edge endpoint {u!r} is not a declared vertex")
        if v not in known:
            raise UnknownVertex(f"edge endpoint {v!r} is not a declared vertex")
        lu, lv = vertex_levels[u], vertex_levels[v]
        if lu == lv:
            raise SameLevelEdge(f"edge ({u!r}, {v!r}) joins two level-{lu} vertices")
        if lu > lv:
            raise EdgeNotUpward(f"edge ({u!r}, {v!r}) points downward ({lu} -> {lv})")
        edge_set.add((u, v))
    for v, lv in vertex_levels.items():
        if not 1 <= lv <= height:
            raise UnknownVertex(f"vertex {v!r} has level {lv} outside 1..{height}")
    if require_full_levels:
        occupied = set(vertex_levels.values())
        for i in range(1, height + 1):
            if i not in occupied:
                raise EmptyLevel(f"level {i} has no vertices")
    return LevelGraph(dict(vertex_levels), height, frozenset(edge_set))


def validate_instance(raw: dict, *, require_full_levels: bool = True):
    """Type-check a parsed instance description.

    Returns an OrderedLevelGraph when every vertex carries a rank, otherwise
    a ConstrainedLevelGraph.
    """
    height = int(raw.get("height", 0))
    vertex_levels: dict[str, int] = {}
    ranks: dict[str, int] = {}
    for rec in raw.get("vertices", []):
        vid = str(rec["id"])
        if vid in vertex_levels:
            raise UnknownVertex(f"vertex {vid!r} declared twice")
        vertex_levels[vid] = int(rec["level"])
        if "rank" in rec and rec["rank"] is not None:
            ranks[vid] = int(rec["rank"])
    edges = [(str(u), str(v)) for u, v in raw.get("edges", [])]
    graph = _build_level_graph(vertex_levels, height, edges,
                               require_full_levels=require_full_levels)

    if ranks and len(ranks) == len(vertex_levels):
        # OLP mode: ranks must form a permutation of 1..width per level.
        for i in range(1, height + 1):
            lvl = [v for v, lv in vertex_levels.items() if lv == i]
            seen = sorted(ranks[v] for v in lvl)
            if seen != list(range(1, len(lvl) + 1)):
                raise DuplicateRank(f"ranks on level {i} are not a permutation of 1..{len(lvl)}")
        if raw.get("constraints"):
            raise ConstraintAcrossLevels("OLP instances carry ranks, not constraint pairs")
        return OrderedLevelGraph(graph, ranks)
    if ranks:
        raise DuplicateRank("either all vertices carry a rank (OLP) or none (CLP)")

    constraints: dict[int, set[Edge]] = {}
    for rec in raw.get("constraints", []):
        lv = int(rec["level"])
        u, v = str(rec["before"]), str(rec["after"])
        for w in (u, v):
            if w not in vertex_levels:
                raise UnknownVertex(f"constraint references unknown vertex {w!r}")
            if vertex_levels[w] != lv:
                raise ConstraintAcrossLevels(
                    f"constraint ({u!r}, {v!r}) declared on level {lv} but {w!r} is on level {vertex_levels[w]}")
        if u == v:
            raise ConstraintAcrossLevels(f"constraint on {u!r} is reflexive")
        constraints.setdefault(lv, set()).add((u, v))
    return ConstrainedLevelGraph(graph, {lv: frozenset(cs) for lv, cs in constraints.items()})


def instance_to_json(g) -> dict:
    if isinstance(g, OrderedLevelGraph):
        verts = [{"id": v, "level": g.graph.level_of[v], "rank": g.rank_of[v]}
                 for v in sorted(g.graph.level_of)]
        return {"height": g.graph.height, "vertices": verts,
                "edges": [list(e) for e in sorted(g.graph.edges)], "constraints": []}
    verts = [{"id": v, "level": g.graph.level_of[v]} for v in sorted(g.graph.level_of)]
    cons = [{"level": lv, "before": u, "after": v} for lv, u, v in g.all_constraints()]
    return {"height": g.graph.height, "vertices": verts,
            "edges": [list(e) for e in sorted(g.graph.edges)], "constraints": cons}


def instance_from_json(raw: dict):
    return validate_instance(raw)


def embedding_to_json(emb: LevelEmbedding) -> dict:
    levels = {}
    for i in sorted(emb.levels):
        seq = []
        for kind, payload in emb.levels[i]:
            if kind == "v":
                seq.append({"vertex": payload})
            else:
                seq.append({"edge": list(payload)})
        levels[str(i)] = seq
    return {"height": emb.height, "levels": levels}


def embedding_from_json(raw: dict) -> LevelEmbedding:
    levels: dict[int, tuple[Item, ...]] = {}
    for key, seq in raw.get("levels", {}).items():
        items: list[Item] = []
        for rec in seq:
            if "vertex" in rec:
                items.append(("v", str(rec["vertex"])))
            elif "edge" in rec:
                u, v = rec["edge"]
                items.append(("e", (str(u), str(v))))
            else:
                raise InstanceError(f"unrecognized embedding item {rec!r}")
        levels[int(key)] = tuple(items)
    return LevelEmbedding(int(raw.get("height", max(levels, default=0))), levels)


def dumps_canonical(obj: dict) -> str:
    """Canonical JSON text; identical inputs give byte-identical files."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# Instance transformations


def clg_of(g) -> ConstrainedLevelGraph:
    """View an OLP instance as a CLP instance (consecutive-rank constraints)."""
    if isinstance(g, ConstrainedLevelGraph):
        return g
    cons: dict[int, frozenset[Edge]] = {}
    for i in range(1, g.graph.height + 1):
        order = g.level_order(i)
        pairs = {(order[j], order[j + 1]) for j in range(len(order) - 1)}
        if pairs:
            cons[i] = frozenset(pairs)
    return ConstrainedLevelGraph(g.graph, cons)


def subdivision_id(u: str, v: str, k: int, taken: set[str]) -> str:
    base = f"sub:{u}>{v}:{k}"
    name = base
    tick = 0
    while name in taken:
        tick += 1
        name = f"{base}#{tick}"
    return name


def make_proper(g: ConstrainedLevelGraph) -> tuple[ConstrainedLevelGraph, SubdivisionMap]:
    """Subdivide every edge spanning more than one level.

    Subdivision vertices carry no constraints; the map records provenance so
    drawings can be translated back.
    """
    level_of = dict(g.graph.level_of)
    taken = set(level_of)
    edges = set()
    submap: dict[Edge, tuple[str, ...]] = {}
    for u, v in sorted(g.graph.edges):
        lu, lv = level_of[u], level_of[v]
        if lv == lu + 1:
            edges.add((u, v))
            continue
        chain = []
        prev = u
        for k, lvl in enumerate(range(lu + 1, lv)):
            w = subdivision_id(u, v, k, taken)
            taken.add(w)
            level_of[w] = lvl
            chain.append(w)
            edges.add((prev, w))
            prev = w
        edges.add((prev, v))
        submap[(u, v)] = tuple(chain)
    graph = LevelGraph(level_of, g.graph.height, frozenset(edges))
    return ConstrainedLevelGraph(graph, dict(g.constraints)), SubdivisionMap(submap)


def unsubdivide_embedding(emb: LevelEmbedding, submap: SubdivisionMap) -> LevelEmbedding:
    """Replace subdivision vertices by crossing markers of their original edge."""
    if submap.is_empty():
        return emb
    owner: dict[str, Edge] = {}
    for e, chain in submap.subdivided.items():
        for w in chain:
            owner[w] = e
    levels = {}
    for i, seq in emb.levels.items():
        out = []
        for it in seq:
            if it[0] == "v" and it[1] in owner:
                out.append(("e", owner[it[1]]))
            else:
                out.append(it)
        levels[i] = tuple(out)
    return LevelEmbedding(emb.height, levels)


def strip_isolated(g: ConstrainedLevelGraph) -> tuple[ConstrainedLevelGraph, frozenset[str]]:
    """Remove vertices with no incident edge; constraints restricted accordingly."""
    touched: set[str] = set()
    for u, v in g.graph.edges:
        touched.add(u)
        touched.add(v)
    removed = frozenset(set(g.graph.level_of) - touched)
    if not removed:
        return g, removed
    level_of = {v: lv for v, lv in g.graph.level_of.items() if v in touched}
    cons = {}
    for lv, pairs in g.constraints.items():
        kept = frozenset((a, b) for a, b in pairs if a in touched and b in touched)
        if kept:
            cons[lv] = kept
    graph = LevelGraph(level_of, g.graph.height, g.graph.edges)
    return ConstrainedLevelGraph(graph, cons), removed


def reinsert_isolated(g: ConstrainedLevelGraph, removed: frozenset[str],
                      emb: LevelEmbedding) -> LevelEmbedding:
    """Insert previously stripped isolated vertices into a drawing.

    The per-level order is a linear extension of the drawing order of the
    present vertices merged with the full constraint set.  Isolated vertices
    touch no edges, so any consistent slot is crossing-free; ties are broken
    by placing removed vertices as early (leftmost) as possible.
    """
    if not removed:
        return emb
    levels = {}
    for i in range(1, g.graph.height + 1):
        seq = list(emb.sequence(i))
        present = [it[1] for it in seq if it[0] == "v"]
        extra = sorted(v for v in removed if g.graph.level_of.get(v) == i)
        if not extra:
            levels[i] = tuple(seq)
            continue
        verts = present + extra
        succ: dict[str, set[str]] = {v: set() for v in verts}
        indeg = {v: 0 for v in verts}
        for a, b in zip(present, present[1:]):
            succ[a].add(b)
        for a, b in g.constraints_on(i):
            if a in succ and b not in succ[a]:
                succ[a].add(b)
        for a in succ:
            for b in succ[a]:
                indeg[b] += 1
        # Kahn; removed vertices first within the ready set, then smaller ids.
        order = []
        ready = sorted((v for v in verts if indeg[v] == 0),
                       key=lambda v: (v not in removed, v))
        while ready:
            v = ready.pop(0)
            order.append(v)
            changed = False
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
                    changed = True
            if changed:
                ready.sort(key=lambda v: (v not in removed, v))
        if len(order) != len(verts):
            raise OrderCycle(f"merged order on level {i} is cyclic")
        # Rebuild the sequence: markers stay glued in front of the present
        # vertex they preceded; isolated vertices are emitted at gap starts.
        pending: dict[str, list[Item]] = {}
        tail: list[Item] = []
        bucket: list[Item] = []
        for it in seq:
            if it[0] == "v":
                pending[it[1]] = bucket
                bucket = []
            else:
                bucket.append(it)
        tail = bucket
        out: list[Item] = []
        for v in order:
            out.extend(pending.get(v, []))
            out.append(("v", v))
        out.extend(tail)
        levels[i] = tuple(out)
    for i in emb.levels:
        levels.setdefault(i, emb.levels[i])
    return LevelEmbedding(emb.height, levels)


def constraints_acyclic(g: ConstrainedLevelGraph) -> bool:
    """True iff each level's constraint relation is acyclic."""
    for lv, pairs in g.constraints.items():
        verts = sorted({x for p in pairs for x in p})
        succ = {v: set() for v in verts}
        for a, b in pairs:
            succ[a].add(b)
        indeg = {v: 0 for v in verts}
        for a in succ:
            for b in succ[a]:
                indeg[b] += 1
        ready = [v for v in verts if indeg[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        if seen != len(verts):
            return False
    return True


def components(g: ConstrainedLevelGraph):
    """Connected components as induced sub-instances.

    Returns (subinstances, membership, cross_constraints) where membership
    maps vertex -> component index and cross_constraints lists constraints
    whose endpoints live in different components as (level, u, v, cu, cv).
    """
    adj = g.graph.adjacency()
    comp: dict[str, int] = {}
    comps: list[list[str]] = []
    for v in sorted(adj):
        if v in comp:
            continue
        idx = len(comps)
        stack = [v]
        comp[v] = idx
        members = []
        while stack:
            x = stack.pop()
            members.append(x)
            for y in adj[x]:
                if y not in comp:
                    comp[y] = idx
                    stack.append(y)
        comps.append(sorted(members))
    subs = []
    cross = []
    for lv, pairs in sorted(g.constraints.items()):
        for u, v in sorted(pairs):
            if comp[u] != comp[v]:
                cross.append((lv, u, v, comp[u], comp[v]))
    for members in comps:
        mset = set(members)
        level_of = {v: g.graph.level_of[v] for v in members}
        edges = frozenset(e for e in g.graph.edges if e[0] in mset)
        cons = {}
        for lv, pairs in g.constraints.items():
            kept = frozenset(p for p in pairs if p[0] in mset and p[1] in mset)
            if kept:
                cons[lv] = kept
        subs.append(ConstrainedLevelGraph(LevelGraph(level_of, g.graph.height, edges), cons))
    return subs, comp, cross


def compact_levels(g):
    """Renumber levels so that every level is occupied (generator post-pass)."""
    occupied = sorted(set(g.graph.level_of.values()))
    remap = {old: new for new, old in enumerate(occupied, start=1)}
    level_of = {v: remap[lv] for v, lv in g.graph.level_of.items()}
    graph = LevelGraph(level_of, len(occupied), g.graph.edges)
    if isinstance(g, OrderedLevelGraph):
        return OrderedLevelGraph(graph, dict(g.rank_of)), remap
    cons = {}
    for lv, pairs in g.constraints.items():
        if pairs:
            cons[remap[lv]] = pairs
    return ConstrainedLevelGraph(graph, cons), remap


def concat_embeddings(embs: list[LevelEmbedding], height: int) -> LevelEmbedding:
    levels: dict[int, tuple[Item, ...]] = {}
    for i in range(1, height + 1):
        seq: list[Item] = []
        for emb in embs:
            seq.extend(emb.sequence(i))
        levels[i] = tuple(seq)
    return LevelEmbedding(height, levels)


def embedding_from_orders(g: ConstrainedLevelGraph, orders: dict[int, list[str]]) -> LevelEmbedding:
    """Embedding of a PROPER instance given per-level vertex orders."""
    levels = {}
    for i in range(1, g.graph.height + 1):
        levels[i] = tuple(("v", v) for v in orders.get(i, []))
    return LevelEmbedding(g.graph.height, levels)
