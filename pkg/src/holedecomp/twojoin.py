"""2-joins, blocks of decomposition, recognition of the basic class and 2-join decomposition trees."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .detect import DEFAULT_CAP, is_c4free_odd_signable
from .graph import Graph, GraphError, components, is_connected
from .separation import find_star_cutset

TWOJOIN_LIMIT = 22


@dataclass(frozen=True)
class TwoJoinSplit:
    x1: frozenset[int]
    x2: frozenset[int]
    a1: frozenset[int]
    b1: frozenset[int]
    a2: frozenset[int]
    b2: frozenset[int]

    def swapped(self) -> "TwoJoinSplit":
        return TwoJoinSplit(self.x2, self.x1, self.a2, self.b2, self.a1, self.b1)


def _is_path_graph(g: Graph, xs: frozenset[int]) -> bool:
    if not xs or not is_connected(g, xs):
        return False
    degs = [len(g.adj[v] & xs) for v in xs]
    edges = sum(degs) // 2
    return max(degs) <= 2 and edges == len(xs) - 1


def _has_connecting_path(g: Graph, xs: frozenset[int], a: frozenset[int], b: frozenset[int]) -> bool:
    """Path from ``a`` to ``b`` inside ``xs`` whose interior avoids ``a | b``."""
    interior = xs - a - b
    if any(g.adj[u] & b for u in a):
        return True
    reach = set()
    frontier = [v for v in interior if g.adj[v] & a]
    reach.update(frontier)
    while frontier:
        v = frontier.pop()
        if g.adj[v] & b:
            return True
        for u in g.adj[v] & interior:
            if u not in reach:
                reach.add(u)
                frontier.append(u)
    return False


def check_split(g: Graph, s: TwoJoinSplit, mask: Iterable[int] | None = None) -> bool:
    dom = frozenset(range(g.n) if mask is None else mask)
    if s.x1 & s.x2 or s.x1 | s.x2 != dom:
        return False
    for a, b, x in ((s.a1, s.b1, s.x1), (s.a2, s.b2, s.x2)):
        if not a or not b or a & b or not (a | b) <= x:
            return False
    for u in s.x1:
        cross = g.adj[u] & s.x2
        want = (s.a2 if u in s.a1 else frozenset()) | (s.b2 if u in s.b1 else frozenset())
        if cross != want:
            return False
    for a, b, x in ((s.a1, s.b1, s.x1), (s.a2, s.b2, s.x2)):
        if not _has_connecting_path(g, x, a, b) or _is_path_graph(g, x):
            return False
    return True


def _split_for(g: Graph, x1: frozenset[int], x2: frozenset[int]) -> TwoJoinSplit | None:
    d1 = [u for u in sorted(x1) if g.adj[u] & x2]
    if not d1:
        return None
    groups: list[tuple[frozenset[int], frozenset[int]]] = []
    for u in d1:
        nb = g.adj[u] & x2
        for i, (side1, side2) in enumerate(groups):
            if side2 == nb:
                groups[i] = (side1 | {u}, side2)
                break
        else:
            groups.append((frozenset({u}), nb))
    if len(groups) != 2:
        return None
    (a1, a2), (b1, b2) = groups
    if a2 & b2:
        return None
    s = TwoJoinSplit(x1, x2, a1, b1, a2, b2)
    return s if check_split(g, s, x1 | x2) else None


def iter_2joins(
    g: Graph, mask: Iterable[int] | None = None, protected: Sequence[Sequence[int]] = (), limit: int = TWOJOIN_LIMIT
):
    """Every split (one orientation per 2-join) that keeps each protected path on one side."""
    dom = sorted(range(g.n) if mask is None else set(mask))
    if len(dom) > limit:
        raise GraphError(f"exhaustive 2-join search capped at {limit} vertices")
    if len(dom) < 6:
        return
    first, rest = dom[0], dom[1:]
    paths = [frozenset(p) for p in protected]
    full = frozenset(dom)
    for bits in range(1 << len(rest)):
        x1 = frozenset([first] + [v for i, v in enumerate(rest) if bits >> i & 1])
        if len(x1) < 3 or len(x1) > len(dom) - 3:
            continue
        x2 = full - x1
        if any(p & x1 and p & x2 for p in paths):
            continue
        s = _split_for(g, x1, x2)
        if s is not None:
            yield s


def find_2join(
    g: Graph, mask: Iterable[int] | None = None, protected: Sequence[Sequence[int]] = (), limit: int = TWOJOIN_LIMIT
) -> TwoJoinSplit | None:
    """The most balanced split (largest smaller side, then lexicographic), or None."""
    best = None
    best_key = None
    for s in iter_2joins(g, mask, protected, limit):
        key = (-min(len(s.x1), len(s.x2)), sorted(s.x1))
        if best is None or key < best_key:
            best, best_key = s, key
    if best is not None and len(best.x2) > len(best.x1):
        best = best.swapped()
    return best


# ---------------------------------------------------------------------------
# blocks


@dataclass(frozen=True)
class Block:
    graph: Graph
    original: tuple[int | None, ...]  # block vertex -> vertex of the parent (None on the marker)
    marker: tuple[int, int, int, int]

    def index_of(self, v: int) -> int:
        return self.original.index(v)


@dataclass(frozen=True)
class BlockPair:
    g1: Block
    g2: Block


def _block(g: Graph, x: frozenset[int], a: frozenset[int], b: frozenset[int]) -> Block:
    order = sorted(x)
    idx = {v: i for i, v in enumerate(order)}
    k = len(order)
    pa, m1, m2, pb = k, k + 1, k + 2, k + 3
    edges = [(idx[u], idx[v]) for u, v in g.edges() if u in idx and v in idx]
    edges += [(pa, m1), (m1, m2), (m2, pb)]
    edges += [(idx[u], pa) for u in a] + [(idx[u], pb) for u in b]
    labels = None
    if g.labels is not None:
        labels = [g.labels[v] for v in order] + ["marker-a", "marker-1", "marker-2", "marker-b"]
    return Block(Graph(k + 4, edges, labels), tuple(order) + (None,) * 4, (pa, m1, m2, pb))


def blocks(g: Graph, s: TwoJoinSplit) -> BlockPair:
    return BlockPair(_block(g, s.x1, s.a1, s.b1), _block(g, s.x2, s.a2, s.b2))


def is_flat_path(g: Graph, path: Sequence[int]) -> bool:
    if len(path) < 3:
        return False
    if any(not g.has_edge(u, v) for u, v in zip(path, path[1:])):
        return False
    if any(g.degree(v) != 2 for v in path[1:-1]):
        return False
    common = (g.adj[path[0]] & g.adj[path[-1]]) - set(path)
    return not common


# ---------------------------------------------------------------------------
# the basic class


@dataclass(frozen=True)
class BstarTag:
    kind: str  # clique | hole | long_pyramid | extended_nontrivial_basic
    details: dict = field(default_factory=dict, compare=False)


def _line_graph_root(g: Graph, keep: frozenset[int]):
    """Tree T with L(T) = g[keep], as (blocks, edge ends per vertex), or None.

    A connected graph is the line graph of a tree exactly when every block is
    a clique and every vertex lies in at most two blocks.
    """
    if not keep or not is_connected(g, keep):
        return None
    h = nx.Graph()
    h.add_nodes_from(keep)
    h.add_edges_from((u, v) for u, v in g.edges() if u in keep and v in keep)
    blks = [frozenset(b) for b in nx.biconnected_components(h)]
    if any(not g.is_clique(b) for b in blks):
        return None
    member: dict[int, list[int]] = {v: [] for v in keep}
    for i, b in enumerate(blks):
        for v in b:
            member[v].append(i)
    if any(len(ix) > 2 for ix in member.values()):
        return None
    nodes = len(blks)
    ends = {}
    for v in sorted(keep):
        ix = list(member[v])
        while len(ix) < 2:
            ix.append(nodes)
            nodes += 1
        ends[v] = tuple(ix)
    return blks, ends, nodes


def _extended_basic(g: Graph) -> BstarTag | None:
    everything = frozenset(range(g.n))
    for x, y in g.edges():
        rest = everything - {x, y}
        root = _line_graph_root(g, rest)
        if root is None:
            continue
        blks, ends, nodes = root
        if sum(1 for b in blks if len(b) >= 3) < 2:
            continue
        tdeg = [0] * nodes
        for a, b in ends.values():
            tdeg[a] += 1
            tdeg[b] += 1
        leaves = {v for v, (a, b) in ends.items() if tdeg[a] == 1 or tdeg[b] == 1}
        nx_, ny_ = g.adj[x] - {y}, g.adj[y] - {x}
        if nx_ & ny_ or (nx_ | ny_) != leaves:
            continue
        tree_edges = sorted(tuple(sorted(e)) for e in ends.values())
        return BstarTag("extended_nontrivial_basic", {"x": x, "y": y, "tree": tree_edges, "leaves": sorted(leaves)})
    return None


def _long_pyramid(g: Graph) -> BstarTag | None:
    degs = [g.degree(v) for v in range(g.n)]
    if sorted(set(degs)) not in ([2, 3], [3]) or degs.count(3) != 4:
        return None
    threes = [v for v in range(g.n) if degs[v] == 3]
    for apex in threes:
        tri = [v for v in threes if v != apex]
        if not g.is_clique(tri) or any(g.has_edge(apex, t) for t in tri):
            continue
        tri_edges = {(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])}
        spider = Graph(g.n, [e for e in g.edges() if e not in tri_edges])
        if spider.m != g.n - 1 or not is_connected(spider, range(g.n)):
            continue
        if spider.degree(apex) != 3 or any(spider.degree(t) != 1 for t in tri):
            continue
        return BstarTag("long_pyramid", {"apex": apex, "triangle": tri})
    return None


def bstar_tag(g: Graph) -> BstarTag | None:
    if g.n == 0:
        return None
    if g.is_clique(range(g.n)):
        return BstarTag("clique")
    if g.n >= 4 and all(g.degree(v) == 2 for v in range(g.n)) and is_connected(g, range(g.n)):
        return BstarTag("hole")
    return _long_pyramid(g) or _extended_basic(g)


# ---------------------------------------------------------------------------
# decomposition tree


class TwoJoinTreeError(AssertionError):
    def __init__(self, message: str, graph: Graph, witness=None):
        super().__init__(message)
        self.graph = graph
        self.witness = witness


@dataclass
class TwoJoinNode:
    graph: Graph
    flat_paths: list[tuple[int, ...]]
    tag: BstarTag | None = None
    split: TwoJoinSplit | None = None
    children: list["TwoJoinNode"] = field(default_factory=list)

    def leaves(self) -> list["TwoJoinNode"]:
        if not self.children:
            return [self]
        return [leaf for ch in self.children for leaf in ch.leaves()]

    def depth(self) -> int:
        return 1 + max((ch.depth() for ch in self.children), default=0)

    def to_dict(self) -> dict:
        out = {"n": self.graph.n, "edges": [list(e) for e in self.graph.edges()],
               "flat_paths": [list(p) for p in self.flat_paths]}
        if self.tag is not None:
            out["tag"] = {"kind": self.tag.kind, **self.tag.details}
        if self.split is not None:
            out["split"] = {k: sorted(getattr(self.split, k)) for k in ("x1", "x2", "a1", "b1", "a2", "b2")}
        if self.children:
            out["children"] = [ch.to_dict() for ch in self.children]
        return out


@dataclass(frozen=True)
class BlockAudit:
    member: bool
    star_cutset_free: bool


def audit_block(g: Graph, cap=DEFAULT_CAP) -> BlockAudit:
    return BlockAudit(is_c4free_odd_signable(g, cap).member, find_star_cutset(g) is None)


def build_2join_tree(g: Graph, cap=DEFAULT_CAP, max_depth: int = 12, check_input: bool = True) -> TwoJoinNode:
    if check_input:
        res = is_c4free_odd_signable(g, cap)
        if not res.member:
            raise TwoJoinTreeError(f"input contains a {res.witness_kind}", g, res.witness)
        sc = find_star_cutset(g)
        if sc is not None:
            raise TwoJoinTreeError("input has a star cutset", g, sc)
    return _grow(TwoJoinNode(g, []), cap, max_depth)


def _grow(node: TwoJoinNode, cap, depth_left: int) -> TwoJoinNode:
    g = node.graph
    node.tag = bstar_tag(g)
    if node.tag is not None:
        return node
    if depth_left == 0:
        raise TwoJoinTreeError("decomposition tree exceeds the depth cap", g)
    split = find_2join(g, None, node.flat_paths)
    if split is None:
        raise TwoJoinTreeError("node is neither basic nor 2-join decomposable", g)
    node.split = split
    pair = blocks(g, split)
    for blk, x in ((pair.g1, split.x1), (pair.g2, split.x2)):
        audit = audit_block(blk.graph, cap)
        if not (audit.member and audit.star_cutset_free):
            raise TwoJoinTreeError("block loses membership or gains a star cutset", blk.graph, audit)
        inherited = [tuple(blk.index_of(v) for v in p) for p in node.flat_paths if set(p) <= x]
        child = TwoJoinNode(blk.graph, inherited + [blk.marker])
        node.children.append(_grow(child, cap, depth_left - 1))
    return node


# ---------------------------------------------------------------------------
# width formulas


@dataclass(frozen=True)
class WidthBounds:
    no_star_cutset_tw: int  # treewidth bound for star-cutset-free members of degree delta
    rankwidth_tw_plus_one: int  # tw + 1 bound from rankwidth without K_{r,r} subgraphs


def width_bounds(delta: int, r: int = 2, rw: int = 3) -> WidthBounds:
    return WidthBounds(45 * delta - 1, 3 * (r - 1) * (2 ** (rw + 1) - 1))


# ---------------------------------------------------------------------------
# composition (inverse of taking blocks)


def flat_paths_length3(g: Graph) -> list[tuple[int, int, int, int]]:
    """Induced flat paths u-a-b-v, listed once each with u < v."""
    out = []
    for u in range(g.n):
        for a in sorted(g.adj[u]):
            if g.degree(a) != 2:
                continue
            for b in sorted(g.adj[a] - {u}):
                if g.degree(b) != 2:
                    continue
                for v in sorted(g.adj[b] - {a, u}):
                    p = (u, a, b, v)
                    if u < v and not g.has_edge(u, v) and is_flat_path(g, p):
                        out.append(p)
    return out


def compose_2join(g1: Graph, p1: Sequence[int], g2: Graph, p2: Sequence[int]) -> tuple[Graph, TwoJoinSplit]:
    """Glue two graphs along flat paths: drop the paths, join the end attachments completely."""
    x1 = [v for v in range(g1.n) if v not in p1]
    x2 = [v for v in range(g2.n) if v not in p2]
    i1 = {v: i for i, v in enumerate(x1)}
    i2 = {v: len(x1) + i for i, v in enumerate(x2)}
    edges = [(i1[u], i1[v]) for u, v in g1.edges() if u in i1 and v in i1]
    edges += [(i2[u], i2[v]) for u, v in g2.edges() if u in i2 and v in i2]
    a1 = frozenset(i1[v] for v in g1.adj[p1[0]] if v in i1)
    b1 = frozenset(i1[v] for v in g1.adj[p1[-1]] if v in i1)
    a2 = frozenset(i2[v] for v in g2.adj[p2[0]] if v in i2)
    b2 = frozenset(i2[v] for v in g2.adj[p2[-1]] if v in i2)
    edges += [(a, b) for a in a1 for b in a2] + [(a, b) for a in b1 for b in b2]
    split = TwoJoinSplit(frozenset(i1.values()), frozenset(i2.values()), a1, b1, a2, b2)
    return Graph(len(x1) + len(x2), edges), split
