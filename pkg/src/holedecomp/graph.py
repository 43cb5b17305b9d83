"""Immutable simple graphs over dense integer vertices, plus the primitives
every other module builds on: components, balls, anticompleteness and
induced paths that avoid a forbidden set.

Induced subgraphs are never materialised; callers pass a ``within`` mask
(a frozenset of vertices) instead.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

VertexSet = frozenset


class GraphError(ValueError):
    """Raised when input violates a structural precondition."""


class Graph:
    __slots__ = ("n", "adj", "masks", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)
        self.masks: tuple[int, ...] = tuple(sum(1 << u for u in s) for s in nbrs)
        if labels is not None and len(labels) != n:
            raise GraphError("label count must equal n")
        self.labels = tuple(labels) if labels is not None else None

    # basic queries -------------------------------------------------------
    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int, within: frozenset[int] | None = None) -> int:
        if within is None:
            return len(self.adj[v])
        return len(self.adj[v] & within)

    def max_degree(self, within: frozenset[int] | None = None) -> int:
        verts = range(self.n) if within is None else within
        return max((self.degree(v, within) for v in verts), default=0)

    def neighborhood(self, xs: Iterable[int], within: frozenset[int] | None = None) -> frozenset[int]:
        """Open neighbourhood of a set: vertices outside it with a neighbour in it."""
        xs = frozenset(xs)
        out: set[int] = set()
        for x in xs:
            out |= self.adj[x]
        out -= xs
        return frozenset(out if within is None else out & within)

    def closed_neighborhood(self, xs: Iterable[int], within: frozenset[int] | None = None) -> frozenset[int]:
        xs = frozenset(xs)
        return self.neighborhood(xs, within) | (xs if within is None else xs & within)

    def is_clique(self, xs: Iterable[int]) -> bool:
        xs = list(xs)
        return all(xs[j] in self.adj[xs[i]] for i in range(len(xs)) for j in range(i + 1, len(xs)))

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return the induced subgraph relabelled to 0..k-1 and the old ids."""
        order = sorted(keep)
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u in order for v in self.adj[u] if v in index and u < v]
        labels = [self.labels[v] for v in order] if self.labels else None
        return Graph(len(order), edges, labels), order

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# weights


class WeightAssignment(Mapping[int, Fraction]):
    """Exact nonnegative rational weights over a vertex domain, summing to 1."""

    __slots__ = ("_w", "total", "max")

    def __init__(self, weights: Mapping[int, Fraction | int | str], require_unit: bool = True):
        w = {int(v): Fraction(x) for v, x in weights.items()}
        if any(x < 0 for x in w.values()):
            raise GraphError("weights must be nonnegative")
        self._w = w
        self.total = sum(w.values(), Fraction(0))
        self.max = max(w.values(), default=Fraction(0))
        if require_unit and self.total != 1:
            raise GraphError(f"weights total {self.total}, expected exactly 1")

    @classmethod
    def uniform(cls, domain: Iterable[int]) -> "WeightAssignment":
        domain = sorted(domain)
        if not domain:
            raise GraphError("uniform weights need a nonempty domain")
        share = Fraction(1, len(domain))
        return cls({v: share for v in domain})

    def __getitem__(self, v: int) -> Fraction:
        return self._w.get(v, Fraction(0))

    def __iter__(self):
        return iter(sorted(self._w))

    def __len__(self) -> int:
        return len(self._w)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self._w)

    def of(self, xs: Iterable[int]) -> Fraction:
        return sum((self[v] for v in xs), Fraction(0))

    def restricted_max(self, xs: Iterable[int]) -> Fraction:
        return max((self[v] for v in xs), default=Fraction(0))

    def __repr__(self) -> str:
        body = ", ".join(f"{v}: {self._w[v]}" for v in sorted(self._w))
        return f"WeightAssignment({{{body}}})"


# ---------------------------------------------------------------------------
# paths and holes


@dataclass(frozen=True)
class PathRecord:
    vertices: tuple[int, ...]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def is_induced_in(self, g: Graph) -> bool:
        vs = self.vertices
        if len(set(vs)) != len(vs):
            return False
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                if (vs[j] in g.adj[vs[i]]) != (j == i + 1):
                    return False
        return True


@dataclass(frozen=True)
class HoleRecord:
    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 4:
            raise GraphError("a hole has at least four vertices")

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def canonical(self) -> tuple[int, ...]:
        """Rotation/reflection normal form: least vertex first, smaller neighbour second."""
        vs = self.vertices
        k = len(vs)
        i = vs.index(min(vs))
        fwd = tuple(vs[(i + j) % k] for j in range(k))
        bwd = tuple(vs[(i - j) % k] for j in range(k))
        return min(fwd, bwd)

    def neighbours_on_hole(self, v: int) -> tuple[int, int]:
        k = len(self.vertices)
        i = self.vertices.index(v)
        return self.vertices[(i - 1) % k], self.vertices[(i + 1) % k]

    def is_induced_in(self, g: Graph) -> bool:
        vs = self.vertices
        k = len(vs)
        if len(set(vs)) != k:
            return False
        for i in range(k):
            for j in range(i + 1, k):
                consecutive = j == i + 1 or (i == 0 and j == k - 1)
                if (vs[j] in g.adj[vs[i]]) != consecutive:
                    return False
        return True


# ---------------------------------------------------------------------------
# primitives


def components(g: Graph, within: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of the subgraph induced on ``within``, ordered by least vertex."""
    todo = set(within)
    out: list[frozenset[int]] = []
    for start in sorted(todo):
        if start not in todo:
            continue
        todo.discard(start)
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if v in todo:
                    todo.discard(v)
                    comp.add(v)
                    queue.append(v)
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph, within: Iterable[int]) -> bool:
    within = frozenset(within)
    return len(within) > 0 and len(components(g, within)) == 1


def ball(g: Graph, seeds: Iterable[int], radius: int, within: Iterable[int] | None = None) -> frozenset[int]:
    """Vertices at distance at most ``radius`` from ``seeds``, distances taken inside ``within``."""
    if radius < 0:
        raise GraphError("radius must be nonnegative")
    allowed = None if within is None else frozenset(within)
    seen = set(seeds)
    frontier = list(seen)
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for v in g.adj[u]:
                if v not in seen and (allowed is None or v in allowed):
                    seen.add(v)
                    nxt.append(v)
        if not nxt:
            break
        frontier = nxt
    return frozenset(seen)


def distances_from(g: Graph, source: int, within: Iterable[int] | None = None) -> dict[int, int]:
    allowed = None if within is None else frozenset(within)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if v not in dist and (allowed is None or v in allowed):
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def is_anticomplete(g: Graph, x: Iterable[int], y: Iterable[int]) -> bool:
    x, y = frozenset(x), frozenset(y)
    if x & y:
        raise GraphError("is_anticomplete needs disjoint sets")
    return all(not (g.adj[u] & y) for u in x)


def path_avoiding(
    g: Graph,
    source: int,
    targets: Iterable[int],
    forbidden: Iterable[int] = (),
    within: Iterable[int] | None = None,
) -> PathRecord | None:
    """Shortest (hence induced) path from ``source`` to a target, avoiding ``forbidden``."""
    forbidden = frozenset(forbidden)
    if source in forbidden:
        raise GraphError("source may not be forbidden")
    targets = frozenset(targets) - forbidden
    allowed = None if within is None else frozenset(within)
    if source in targets:
        return PathRecord((source,))
    parent = {source: source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in sorted(g.adj[u]):
            if v in parent or v in forbidden or (allowed is not None and v not in allowed):
                continue
            parent[v] = u
            if v in targets:
                seq = [v]
                while seq[-1] != source:
                    seq.append(parent[seq[-1]])
                path = PathRecord(tuple(reversed(seq)))
                assert path.is_induced_in(g)
                return path
            queue.append(v)
    return None
