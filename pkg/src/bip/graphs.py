"""Interval digraphs G_u, projected face graphs, partitions, and forests.

Nodes are blocks of a partition of {1, ..., n} (singletons for the u-graphs).
Arcs are stored as (tail_node, head_node, transposition, kind) with node
indices into ``nodes`` and kind "up", "down", or "chain".  Every arc a -> b of
a u-graph satisfies u(a) < u(b), so u-graphs are acyclic; projected graphs can
have cycles, including loop arcs when a transposition acts inside one block.
"""

from __future__ import annotations

from dataclasses import dataclass

from .permutations import (
    Perm,
    Transposition,
    bruhat_leq,
    covers_down,
    covers_up,
    fmt,
    length,
)

__all__ = [
    "IntervalDigraph",
    "Partition",
    "build_G_u",
    "build_G_xy",
    "is_acyclic",
    "is_face",
    "transitive_reduction",
    "partition_of",
    "chain_graph",
    "star",
    "bvw",
    "is_forest_at",
    "graph_to_dot",
]

Partition = tuple[tuple[int, ...], ...]
Arc = tuple[int, int, Transposition, str]


@dataclass(frozen=True)
class IntervalDigraph:
    n: int
    nodes: tuple[tuple[int, ...], ...]
    arcs: tuple[Arc, ...]


def _singleton_nodes(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple((i,) for i in range(1, n + 1))


def _canonical_partition(blocks) -> Partition:
    return tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))


def build_G_u(v: Perm, w: Perm, u: Perm) -> IntervalDigraph:
    """The digraph G_u^{v,w} on nodes 1..n.

    Arc i -> j for each transposition (i, j) with u lessdot u t <= w, and
    arc j -> i for each (i, j) with v <= u t lessdot u.
    """
    n = len(u)
    if not (bruhat_leq(v, u) and bruhat_leq(u, w)):
        raise ValueError(f"{fmt(u)} is not inside [{fmt(v)}, {fmt(w)}]")
    arcs: list[Arc] = []
    for t, _ in covers_up(u, w):
        arcs.append((t[0] - 1, t[1] - 1, t, "up"))
    for t, _ in covers_down(u, v):
        arcs.append((t[1] - 1, t[0] - 1, t, "down"))
    return IntervalDigraph(n, _singleton_nodes(n), tuple(sorted(arcs)))


def build_G_xy(v: Perm, w: Perm, x: Perm, y: Perm) -> IntervalDigraph:
    """The projected graph deciding whether the subinterval polytope of
    [x, y] is a face of the one of [v, w].

    Nodes are the blocks of B(G_x^{x,y}); the up arcs of y in [v, w] and the
    down arcs of x in [v, w] are projected onto blocks.  An arc interior to a
    block stays as a loop (it is a genuine directed cycle after the
    identification).
    """
    for lo, hi in ((v, x), (x, y), (y, w)):
        if not bruhat_leq(lo, hi):
            raise ValueError(
                f"need v <= x <= y <= w, got [{fmt(x)},{fmt(y)}] in [{fmt(v)},{fmt(w)}]"
            )
    blocks = bvw(x, y)
    node_of = {}
    for b, block in enumerate(blocks):
        for i in block:
            node_of[i] = b
    arcs: list[Arc] = []
    for t, _ in covers_up(y, w):
        arcs.append((node_of[t[0]], node_of[t[1]], t, "up"))
    for t, _ in covers_down(x, v):
        arcs.append((node_of[t[1]], node_of[t[0]], t, "down"))
    return IntervalDigraph(len(v), blocks, tuple(sorted(arcs)))


def is_acyclic(G: IntervalDigraph) -> bool:
    adj: list[list[int]] = [[] for _ in G.nodes]
    for tail, head, _, _ in G.arcs:
        if tail == head:
            return False
        adj[tail].append(head)
    # iterative three-color depth-first search
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * len(G.nodes)
    for start in range(len(G.nodes)):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(adj[start]))]
        color[start] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == GRAY:
                    return False
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return True


def is_face(v: Perm, w: Perm, x: Perm, y: Perm) -> bool:
    """Face criterion: the projected graph is acyclic."""
    return is_acyclic(build_G_xy(v, w, x, y))


def _reduced_pairs(nnodes: int, pairs: set[tuple[int, int]]) -> set[tuple[int, int]]:
    adj: list[set[int]] = [set() for _ in range(nnodes)]
    for a, b in pairs:
        adj[a].add(b)
    # reachability sets in reverse topological order
    order: list[int] = []
    seen = [0] * nnodes
    for start in range(nnodes):
        if seen[start]:
            continue
        stack = [(start, iter(adj[start]))]
        seen[start] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if not seen[nxt]:
                    seen[nxt] = 1
                    stack.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
            if not advanced:
                order.append(node)
                stack.pop()
    reach: list[set[int]] = [set() for _ in range(nnodes)]
    for node in order:  # children are finished before their parents
        r = {node}
        for child in adj[node]:
            r |= reach[child]
        reach[node] = r
    keep = set()
    for a, b in pairs:
        via_longer = any(c != b and b in reach[c] for c in adj[a])
        if not via_longer:
            keep.add((a, b))
    return keep


def transitive_reduction(G: IntervalDigraph) -> IntervalDigraph:
    """Unique transitive reduction; raises on cyclic input (loops included)."""
    if not is_acyclic(G):
        raise ValueError("transitive reduction needs an acyclic digraph")
    pairs = {(tail, head) for tail, head, _, _ in G.arcs}
    keep = _reduced_pairs(len(G.nodes), pairs)
    best: dict[tuple[int, int], Arc] = {}
    for arc in sorted(G.arcs):
        key = (arc[0], arc[1])
        if key in keep and key not in best:
            best[key] = arc
    return IntervalDigraph(G.n, G.nodes, tuple(sorted(best.values())))


def partition_of(G: IntervalDigraph) -> Partition:
    """Weak connected components, as a partition of {1, ..., n}."""
    parent = list(range(len(G.nodes)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for tail, head, _, _ in G.arcs:
        ra, rb = find(tail), find(head)
        if ra != rb:
            parent[rb] = ra
    comp: dict[int, list[int]] = {}
    for idx, block in enumerate(G.nodes):
        comp.setdefault(find(idx), []).extend(block)
    return _canonical_partition(comp.values())


def chain_graph(chain: tuple[Perm, ...]) -> IntervalDigraph:
    """Graph G^C of a saturated chain; edge {a, b} per step transposition."""
    if not chain:
        raise ValueError("empty chain")
    n = len(chain[0])
    arcs: list[Arc] = []
    for x, y in zip(chain, chain[1:]):
        diff = [i for i in range(n) if x[i] != y[i]]
        if len(diff) != 2 or length(y) != length(x) + 1 or not bruhat_leq(x, y):
            raise ValueError(f"chain not saturated at {fmt(x)} -> {fmt(y)}")
        t: Transposition = (diff[0] + 1, diff[1] + 1)
        arcs.append((diff[0], diff[1], t, "chain"))
    return IntervalDigraph(n, _singleton_nodes(n), tuple(sorted(arcs)))


def star(P: Partition, Q: Partition) -> Partition:
    """Finest common coarsening P * Q of two partitions of the same set."""
    ground = sorted(i for b in P for i in b)
    if ground != sorted(i for b in Q for i in b):
        raise ValueError("partitions have different ground sets")
    parent = {i: i for i in ground}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for part in (P, Q):
        for block in part:
            for i in block[1:]:
                ra, rb = find(block[0]), find(i)
                if ra != rb:
                    parent[rb] = ra
    comp: dict[int, list[int]] = {}
    for i in ground:
        comp.setdefault(find(i), []).append(i)
    return _canonical_partition(comp.values())


def bvw(v: Perm, w: Perm) -> Partition:
    """The chain-independent partition B_{v,w} (via the graph at v)."""
    return partition_of(build_G_u(v, w, v))


def is_forest_at(v: Perm, w: Perm, u: Perm) -> bool:
    """Whether the reduced graph at u is a forest (simple vertex test)."""
    red = transitive_reduction(build_G_u(v, w, u))
    ncomp = len(partition_of(red))
    return len(red.arcs) == red.n - ncomp


def graph_to_dot(G: IntervalDigraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for idx, block in enumerate(G.nodes):
        label = ",".join(str(i) for i in block)
        lines.append(f'  n{idx} [label="{label}"];')
    for tail, head, t, kind in G.arcs:
        style = ' style=dashed' if kind == "down" else ""
        lines.append(f'  n{tail} -> n{head} [label="({t[0]},{t[1]})"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
