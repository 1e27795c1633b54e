"""Small graph algorithms shared by the solvers.

Undirected graphs are adjacency dicts vertex -> set of neighbors.  All
iteration is over sorted keys so results are deterministic.
"""

from __future__ import annotations

from collections import deque


def toposort(nodes, succ, tie_key=None):
    """Kahn topological sort; returns None on a cycle.

    succ maps node -> iterable of successors (edges within `nodes` only are
    considered).  Ties are broken by tie_key (default: the node itself).
    """
    nodes = list(nodes)
    nodeset = set(nodes)
    key = tie_key or (lambda x: x)
    indeg = {v: 0 for v in nodes}
    out = {v: [] for v in nodes}
    for v in nodes:
        for w in succ(v):
            if w in nodeset:
                out[v].append(w)
                indeg[w] += 1
    ready = sorted((v for v in nodes if indeg[v] == 0), key=key)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        dirty = False
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
                dirty = True
        if dirty:
            ready.sort(key=key)
    if len(order) != len(nodes):
        return None
    return order


def connected_components(adj) -> list[list[str]]:
    seen = set()
    comps = []
    for v in sorted(adj):
        if v in seen:
            continue
        stack = [v]
        seen.add(v)
        members = []
        while stack:
            x = stack.pop()
            members.append(x)
            for y in sorted(adj[x]):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(members))
    return comps


def bfs_tree(adj, root):
    """Parent map of a BFS tree with sorted neighbor expansion."""
    parent = {root: None}
    dist = {root: 0}
    q = deque([root])
    while q:
        v = q.popleft()
        for w in sorted(adj[v]):
            if w not in parent:
                parent[w] = v
                dist[w] = dist[v] + 1
                q.append(w)
    return parent, dist


def deepest_subtree_containing(parent, targets):
    """In a rooted tree, the vertex farthest from the root whose subtree
    contains all targets (the targets' lowest common ancestor)."""
    targets = list(targets)
    if not targets:
        return None
    paths = []
    for t in targets:
        path = []
        x = t
        while x is not None:
            path.append(x)
            x = parent[x]
        paths.append(list(reversed(path)))
    lca = None
    for items in zip(*paths):
        first = items[0]
        if all(it == first for it in items):
            lca = first
        else:
            break
    return lca


def tarjan_scc(nodes, succ):
    """Strongly connected components, iterative Tarjan.

    Returns a list of components (each a sorted list) in reverse topological
    order of the condensation, and the node -> component-index map.
    """
    nodes = list(nodes)
    index: dict = {}
    low: dict = {}
    onstack: dict = {}
    stack: list = []
    comps: list[list] = []
    comp_of: dict = {}
    counter = [0]

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(sorted(succ(root))))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        onstack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append((w, iter(sorted(succ(w)))))
                    advanced = True
                    break
                if onstack.get(w):
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    members.append(w)
                    if w == v:
                        break
                ci = len(comps)
                for w in members:
                    comp_of[w] = ci
                comps.append(sorted(members))
    return comps, comp_of


def scc_condensation_order(nodes, succ):
    """SCCs sorted in a topological order of the condensation."""
    comps, comp_of = tarjan_scc(nodes, succ)
    csucc: dict[int, set[int]] = {i: set() for i in range(len(comps))}
    for v in nodes:
        for w in succ(v):
            if comp_of[v] != comp_of[w]:
                csucc[comp_of[v]].add(comp_of[w])
    order = toposort(range(len(comps)), lambda i: csucc[i],
                     tie_key=lambda i: comps[i][0])
    return [comps[i] for i in order], comp_of


def biconnected_components(adj):
    """Blocks (edge-wise biconnected components) and cut vertices.

    Returns (blocks, cut_vertices) where each block is a frozenset of
    undirected edges (a, b) with a < b.  Iterative Hopcroft-Tarjan.
    """
    disc: dict = {}
    low: dict = {}
    blocks: list[frozenset] = []
    cuts: set = set()
    counter = [0]
    for root in sorted(adj):
        if root in disc:
            continue
        estack: list[tuple] = []
        disc[root] = low[root] = counter[0]
        counter[0] += 1
        work = [(root, None, iter(sorted(adj[root])))]
        root_children = 0
        while work:
            v, parent, it = work[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    estack.append((v, w))
                    disc[w] = low[w] = counter[0]
                    counter[0] += 1
                    work.append((w, v, iter(sorted(adj[w]))))
                    if v == root:
                        root_children += 1
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            work.pop()
            if not work:
                continue
            pv = work[-1][0]
            low[pv] = min(low[pv], low[v])
            if low[v] >= disc[pv]:
                # (pv, v) closes a block; pop its edges.
                block = set()
                while estack:
                    a, b = estack.pop()
                    block.add((min(a, b), max(a, b)))
                    if (a, b) == (pv, v):
                        break
                if block:
                    blocks.append(frozenset(block))
                if pv != root:
                    cuts.add(pv)
        if root_children > 1:
            cuts.add(root)
    return blocks, cuts


def union_of_simple_paths(adj, s, t):
    """Vertices and edges lying on at least one simple s-t path.

    Equals the union of the biconnected blocks along the block-cut-tree path
    between s and t.
    """
    if s == t:
        return {s}, set()
    blocks, _cuts = biconnected_components(adj)
    # Block-cut tree: nodes = blocks + articulation vertices appearing in >1 block.
    vblocks: dict[str, list[int]] = {}
    for bi, block in enumerate(blocks):
        for a, b in block:
            vblocks.setdefault(a, []).append(bi)
            vblocks.setdefault(b, []).append(bi)
    for v in vblocks:
        vblocks[v] = sorted(set(vblocks[v]))
    # BFS over a bipartite graph: ("b", i) <-> ("v", x) for x in block i.
    def nbrs(node):
        kind, x = node
        if kind == "b":
            out = set()
            for a, b in blocks[x]:
                out.add(("v", a))
                out.add(("v", b))
            return sorted(out)
        return [("b", i) for i in vblocks.get(x, [])]

    start, goal = ("v", s), ("v", t)
    parent = {start: None}
    q = deque([start])
    while q:
        node = q.popleft()
        if node == goal:
            break
        for w in nbrs(node):
            if w not in parent:
                parent[w] = node
                q.append(w)
    if goal not in parent:
        return set(), set()
    path = []
    node = goal
    while node is not None:
        path.append(node)
        node = parent[node]
    verts = set()
    edges = set()
    for kind, x in path:
        if kind == "b":
            for a, b in blocks[x]:
                edges.add((a, b))
                verts.add(a)
                verts.add(b)
    verts.add(s)
    verts.add(t)
    return verts, edges


class PathLimitExceeded(Exception):
    pass


def all_simple_paths(adj, s, t, limit=200_000):
    """All simple s-t paths (sorted expansion).  Raises PathLimitExceeded."""
    if s == t:
        return [[s]]
    paths = []
    path = [s]
    onpath = {s}
    stack = [iter(sorted(adj[s]))]
    while stack:
        it = stack[-1]
        advanced = False
        for w in it:
            if w in onpath:
                continue
            if w == t:
                paths.append(path + [t])
                if len(paths) > limit:
                    raise PathLimitExceeded(f"more than {limit} simple paths")
                continue
            path.append(w)
            onpath.add(w)
            stack.append(iter(sorted(adj[w])))
            advanced = True
            break
        if not advanced:
            stack.pop()
            if path:
                onpath.discard(path.pop())
    return paths


def is_caterpillar(adj, members=None) -> bool:
    """True iff the induced graph is a tree whose non-leaves form a path."""
    verts = sorted(members) if members is not None else sorted(adj)
    vset = set(verts)
    edges = sum(1 for v in verts for w in adj[v] if w in vset) // 2
    if edges != len(verts) - 1:
        return False
    if len(verts) <= 1:
        return True
    # connectivity
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in vset and y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(verts):
        return False
    spine = [v for v in verts if sum(1 for w in adj[v] if w in vset) >= 2]
    if not spine:
        return True
    deg2 = {v: sum(1 for w in adj[v] if w in vset and w in set(spine)) for v in spine}
    if any(d > 2 for d in deg2.values()):
        return False
    ends = [v for v in spine if deg2[v] <= 1]
    if len(spine) == 1:
        return True
    if len(ends) != 2:
        return False
    # spine connectivity follows from the tree property
    return True


def caterpillar_spine(adj, members=None) -> list[str] | None:
    """Spine (degree >= 2 vertices) in path order; None if not a caterpillar.

    Returns [] for caterpillars with no degree-2 vertex (single vertex/edge).
    The orientation returned starts at the smaller end vertex id.
    """
    verts = sorted(members) if members is not None else sorted(adj)
    vset = set(verts)
    if not is_caterpillar(adj, verts):
        return None
    spine = [v for v in verts if sum(1 for w in adj[v] if w in vset) >= 2]
    if len(spine) <= 1:
        return spine
    sset = set(spine)
    sadj = {v: sorted(w for w in adj[v] if w in sset) for v in spine}
    ends = sorted(v for v in spine if len(sadj[v]) == 1)
    order = [ends[0]]
    prev = None
    while len(order) < len(spine):
        nxt = [w for w in sadj[order[-1]] if w != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def caterpillar_layout_constraints(adj, members, spine_order, level_of):
    """Per-level ordering pairs realizing a caterpillar zigzag left to right.

    Given the spine vertex sequence, emits the spine chain constraints on
    both levels plus the at-most-two constraints per leaf that pin it between
    the surrounding spine vertices.  Returns a list of (level, u, v) pairs.
    """
    vset = set(members)
    pairs: list[tuple[int, str, str]] = []
    spine = list(spine_order)
    for i in range(len(spine) - 2):
        pairs.append((level_of[spine[i]], spine[i], spine[i + 2]))
    sset = set(spine)
    for i, v in enumerate(spine):
        leaves = sorted(w for w in adj[v] if w in vset and w not in sset)
        for u in leaves:
            if i > 0:
                pairs.append((level_of[u], spine[i - 1], u))
            if i + 1 < len(spine):
                pairs.append((level_of[u], u, spine[i + 1]))
    return pairs


def solve_2sat(n_vars: int, clauses) -> list[bool] | None:
    """Standard implication-graph 2-SAT.

    Literals are integers: +i / -i for variable i in 1..n_vars.  Returns an
    assignment list (index 0 unused) or None if unsatisfiable.
    """
    def node(lit):
        # map literal to 0..2n-1
        v = abs(lit) - 1
        return 2 * v + (0 if lit > 0 else 1)

    succ: dict[int, list[int]] = {i: [] for i in range(2 * n_vars)}
    for a, b in clauses:
        # (a or b) => (-a -> b), (-b -> a)
        succ[node(-a)].append(node(b))
        succ[node(-b)].append(node(a))
    comps, comp_of = tarjan_scc(range(2 * n_vars), lambda v: succ[v])
    assign = [False] * (n_vars + 1)
    for v in range(n_vars):
        if comp_of[2 * v] == comp_of[2 * v + 1]:
            return None
        # Tarjan emits components in reverse topological order: a component
        # finished earlier is "later" in topological order, so the literal
        # whose component index is smaller is implied-by more and set true.
        assign[v + 1] = comp_of[2 * v] < comp_of[2 * v + 1]
    return assign
