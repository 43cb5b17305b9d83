"""Named graphs and small constructions used by tests, the generator and the CLI."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .graph import Graph


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least three vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph(n, [])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def triangular_prism() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def hole_with_hub(hole_len: int, spokes: Sequence[int]) -> Graph:
    """Cycle 0..hole_len-1 plus hub ``hole_len`` adjacent to the listed hole vertices."""
    hub = hole_len
    edges = [(i, (i + 1) % hole_len) for i in range(hole_len)]
    edges += [(hub, s) for s in spokes]
    return Graph(hole_len + 1, edges)


def three_path_graph(kind: str, lengths: Sequence[int]) -> Graph:
    """Theta, pyramid or prism with the given path lengths (in edges).

    Theta: apexes 0 and 1.  Pyramid: apex 0, triangle 1,2,3.  Prism: triangles
    0,1,2 and 3,4,5 with path i joining i and i+3.
    """
    if len(lengths) != 3:
        raise ValueError("three path lengths required")
    edges: list[tuple[int, int]] = []
    nxt = 0
    if kind == "theta":
        a, b = 0, 1
        nxt = 2
        ends = [(a, b)] * 3
    elif kind == "pyramid":
        a = 0
        tri = [1, 2, 3]
        edges += [(1, 2), (2, 3), (1, 3)]
        nxt = 4
        ends = [(a, t) for t in tri]
    elif kind == "prism":
        edges += [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
        nxt = 6
        ends = [(i, i + 3) for i in range(3)]
    else:
        raise ValueError(kind)
    for (s, t), length in zip(ends, lengths):
        if length < 1:
            raise ValueError("path lengths must be positive")
        prev = s
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, t))
    return Graph(nxt, edges)


def two_triangles_sharing_edge() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])


def two_gadget() -> Graph:
    """Triangle a,b,c with pendant d at c, a mirrored copy, and edges aa', dd'.

    Vertices: a=0, b=1, c=2, d=3, a'=4, b'=5, c'=6, d'=7.
    """
    side = [(0, 1), (1, 2), (0, 2), (2, 3)]
    mirror = [(u + 4, v + 4) for u, v in side]
    return Graph(8, side + mirror + [(0, 4), (3, 7)])


def line_graph_of_tree(tree_edges: Sequence[tuple[int, int]]) -> tuple[Graph, list[tuple[int, int]]]:
    """Line graph of a tree, with the tree edge behind each vertex."""
    tedges = [tuple(sorted(e)) for e in tree_edges]
    out = []
    for i, j in combinations(range(len(tedges)), 2):
        if set(tedges[i]) & set(tedges[j]):
            out.append((i, j))
    return Graph(len(tedges), out), tedges


def extended_basic(tree_edges: Sequence[tuple[int, int]], leaf_side: dict[int, int] | None = None) -> Graph:
    """Line graph of a tree plus an adjacent pair x, y joined to the leaf vertices.

    ``leaf_side`` maps the index of each leaf vertex of the line graph to 0 (x)
    or 1 (y); by default leaves alternate.
    """
    lg, tedges = line_graph_of_tree(tree_edges)
    deg: dict[int, int] = {}
    for u, v in tedges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    leaves = [i for i, (u, v) in enumerate(tedges) if deg[u] == 1 or deg[v] == 1]
    if leaf_side is None:
        leaf_side = {leaf: k % 2 for k, leaf in enumerate(leaves)}
    x, y = lg.n, lg.n + 1
    edges = lg.edges() + [(x, y)]
    for leaf in leaves:
        edges.append((leaf, x if leaf_side[leaf] == 0 else y))
    return Graph(lg.n + 2, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        offset += g.n
    return Graph(offset, edges)
