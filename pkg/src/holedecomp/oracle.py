"""Brute-force ground truth: induced-subgraph census by subset enumeration,
exact treewidth, separation number, exact balanced separators, and a
generator of class members.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

import numpy as np

from .balance import verify_balanced_separator
from .detect import is_c4free_odd_signable
from .graph import Graph, WeightAssignment, components
from . import families
from .separation import find_star_cutset


class OracleCapExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# subset census


@dataclass(frozen=True)
class Census:
    holes: frozenset[frozenset[int]]
    c4: bool
    theta: bool
    prism: bool
    pyramid: bool
    even_wheel: bool


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def _connected(adj: list[int], s: int) -> bool:
    if s == 0:
        return False
    seen = s & -s
    frontier = seen
    while frontier:
        nb = 0
        for v in _bits(frontier):
            nb |= adj[v]
        nb &= s & ~seen
        seen |= nb
        frontier = nb
    return seen == s


def subset_census(g: Graph, max_n: int = 20) -> Census:
    """Classify every vertex subset by the degree pattern of its induced subgraph."""
    n = g.n
    if n > max_n:
        raise OracleCapExceeded(f"census capped at n={max_n}")
    adj = list(g.masks)
    subsets = np.arange(1 << n, dtype=np.int64)
    size = np.bitwise_count(subsets)
    cnt3 = np.zeros(1 << n, dtype=np.int16)
    bad = np.zeros(1 << n, dtype=np.int16)
    for v in range(n):
        inside = (subsets >> v) & 1
        deg = np.bitwise_count(subsets & adj[v])
        cnt3 += (inside & (deg == 3)).astype(np.int16)
        bad += (inside & ((deg < 2) | (deg > 3))).astype(np.int16)
    ok = bad == 0
    holes = set()
    for s in np.nonzero(ok & (cnt3 == 0) & (size >= 4))[0]:
        s = int(s)
        if _connected(adj, s):
            holes.add(s)
    c4 = any(bin(s).count("1") == 4 for s in holes)
    even_wheel = False
    for s in holes:
        for x in range(n):
            if not (s >> x) & 1:
                k = bin(adj[x] & s).count("1")
                if k >= 4 and k % 2 == 0:
                    even_wheel = True
                    break
        if even_wheel:
            break
    theta = any(_is_theta(adj, int(s)) for s in np.nonzero(ok & (cnt3 == 2))[0])
    pyramid = any(_is_pyramid(adj, int(s)) for s in np.nonzero(ok & (cnt3 == 4))[0])
    prism = any(_is_prism(adj, int(s)) for s in np.nonzero(ok & (cnt3 == 6))[0])
    return Census(frozenset(frozenset(_bits(s)) for s in holes), c4, theta, prism, pyramid, even_wheel)


def _deg3(adj, s):
    return [v for v in _bits(s) if bin(adj[v] & s).count("1") == 3]


def _is_theta(adj, s) -> bool:
    a, b = _deg3(adj, s)
    if (adj[a] >> b) & 1:
        return False
    return _connected(adj, s) and _connected(adj, s & ~(1 << a))


def _without_edges(adj, edges):
    out = list(adj)
    for u, v in edges:
        out[u] &= ~(1 << v)
        out[v] &= ~(1 << u)
    return out


def _is_pyramid(adj, s) -> bool:
    d = _deg3(adj, s)
    for apex in d:
        tri = [v for v in d if v != apex]
        pairs = list(combinations(tri, 2))
        if not all((adj[u] >> v) & 1 for u, v in pairs):
            continue
        if sum((adj[apex] >> t) & 1 for t in tri) > 1:
            continue
        if _connected(_without_edges(adj, pairs), s):
            return True
    return False


def _is_prism(adj, s) -> bool:
    d = _deg3(adj, s)
    first = d[0]
    for rest in combinations(d[1:], 2):
        t1 = (first,) + rest
        t2 = tuple(v for v in d if v not in t1)
        e1, e2 = list(combinations(t1, 2)), list(combinations(t2, 2))
        if not all((adj[u] >> v) & 1 for u, v in e1 + e2):
            continue
        stripped = _without_edges(adj, e1 + e2)
        comps = []
        left = s
        while left:
            start = left & -left
            seen = start
            frontier = start
            while frontier:
                nb = 0
                for v in _bits(frontier):
                    nb |= stripped[v]
                nb &= s & ~seen
                seen |= nb
                frontier = nb
            comps.append(seen)
            left &= ~seen
        if len(comps) != 3:
            continue
        m1 = sum(1 << v for v in t1)
        m2 = sum(1 << v for v in t2)
        if all(bin(c & m1).count("1") == 1 and bin(c & m2).count("1") == 1 for c in comps):
            return True
    return False


# ---------------------------------------------------------------------------
# treewidth


@dataclass(frozen=True)
class TreeDecompositionResult:
    width: int
    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]


def treewidth_exact(g: Graph, within: Iterable[int] | None = None, max_n: int = 13) -> TreeDecompositionResult:
    """Exact treewidth via the subset recurrence over elimination orders."""
    verts = sorted(range(g.n) if within is None else set(within))
    k = len(verts)
    if k > max_n:
        raise OracleCapExceeded(f"treewidth oracle capped at n={max_n}")
    if k == 0:
        return TreeDecompositionResult(-1, (), ())
    index = {v: i for i, v in enumerate(verts)}
    adj = [sum(1 << index[u] for u in g.adj[v] if u in index) for v in verts]
    full = (1 << k) - 1

    def q_size(s: int, v: int) -> int:
        # vertices outside s | {v} reachable from v through s
        seen = 1 << v
        frontier = 1 << v
        reach_out = 0
        while frontier:
            nb = 0
            for u in _bits(frontier):
                nb |= adj[u]
            nb &= ~seen
            reach_out |= nb & ~s
            inner = nb & s
            seen |= nb
            frontier = inner
        return bin(reach_out & ~(1 << v)).count("1")

    tw = [0] * (1 << k)
    choice = [0] * (1 << k)
    tw[0] = -1
    for s in range(1, 1 << k):
        best = None
        for v in _bits(s):
            rest = s & ~(1 << v)
            val = max(tw[rest], q_size(rest, v))
            if best is None or val < best:
                best = val
                choice[s] = v
        tw[s] = best
    # the vertex chosen last for s is eliminated after everything in s \ {v}
    order: list[int] = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    bags, edges = _decomposition_from_order(adj, order)
    width = max(len(b) for b in bags) - 1
    assert width == tw[full], (width, tw[full])
    bags = tuple(frozenset(verts[i] for i in b) for b in bags)
    return TreeDecompositionResult(width, bags, edges)


def _decomposition_from_order(adj: list[int], order: list[int]):
    k = len(adj)
    pos = {v: i for i, v in enumerate(order)}
    fill = [set(_bits(adj[v])) for v in range(k)]
    bag_of: dict[int, frozenset[int]] = {}
    for v in order:
        later = {u for u in fill[v] if pos[u] > pos[v]}
        bag_of[v] = frozenset(later | {v})
        for a in later:
            fill[a] |= later - {a}
    bags = []
    node = {}
    for v in order:
        node[v] = len(bags)
        bags.append(bag_of[v])
    edges = []
    for v in order:
        later = bag_of[v] - {v}
        if later:
            parent = min(later, key=lambda u: pos[u])
            edges.append((node[v], node[parent]))
    # join separate trees (disconnected graphs) into one tree
    roots = [node[v] for v in order if not (bag_of[v] - {v})]
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return bags, tuple(edges)


def check_tree_decomposition(g: Graph, bags, edges, within: Iterable[int] | None = None) -> bool:
    verts = frozenset(range(g.n) if within is None else within)
    nb = len(bags)
    if nb == 0:
        return not verts
    if len(edges) != nb - 1:
        return False
    tadj = {i: set() for i in range(nb)}
    for a, b in edges:
        tadj[a].add(b)
        tadj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in tadj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    if len(seen) != nb:
        return False
    if frozenset().union(*bags) != verts:
        return False
    for u in verts:
        for v in g.adj[u]:
            if v in verts and u < v and not any(u in b and v in b for b in bags):
                return False
    for v in verts:
        nodes = {i for i, b in enumerate(bags) if v in b}
        start = next(iter(nodes))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for x in tadj[u]:
                if x in nodes and x not in seen:
                    seen.add(x)
                    stack.append(x)
        if seen != nodes:
            return False
    return True


# ---------------------------------------------------------------------------
# separation number


def sep_star_exact(g: Graph, c: Fraction = Fraction(1, 2), max_n: int = 10) -> int:
    """Least k such that every vertex subset S has a set X, |X| <= k, leaving at most c|S| of S per component."""
    n = g.n
    if n > max_n:
        raise OracleCapExceeded(f"separation-number oracle capped at n={max_n}")
    c = Fraction(c)
    adj = list(g.masks)
    full = (1 << n) - 1
    subsets = np.arange(1 << n, dtype=np.int64)
    ssize = np.bitwise_count(subsets).astype(np.int64)
    need = np.full(1 << n, n + 1, dtype=np.int64)
    for x in sorted(range(1 << n), key=lambda m: bin(m).count("1")):
        xs = bin(x).count("1")
        comps = []
        left = full & ~x
        while left:
            start = left & -left
            seen = start
            frontier = start
            while frontier:
                nb = 0
                for v in _bits(frontier):
                    nb |= adj[v]
                nb &= left & ~seen
                seen |= nb
                frontier = nb
            comps.append(seen)
            left &= ~seen
        worst = np.zeros(1 << n, dtype=np.int64)
        for comp in comps:
            np.maximum(worst, np.bitwise_count(subsets & comp).astype(np.int64), out=worst)
        ok = worst * c.denominator <= ssize * c.numerator
        np.minimum(need, np.where(ok, xs, n + 1), out=need)
    return int(need.max())


# ---------------------------------------------------------------------------
# balanced separators


def balanced_separator_exact(
    g: Graph, w: WeightAssignment, c: Fraction, d: int, within: Iterable[int] | None = None, max_n: int = 20
):
    """Smallest separator (by size, then lexicographically) that verifies, or None after exhaustion."""
    verts = sorted(range(g.n) if within is None else set(within))
    if len(verts) > max_n:
        raise OracleCapExceeded(f"balanced-separator oracle capped at n={max_n}")
    for size in range(len(verts) + 1):
        for ys in combinations(verts, size):
            audit = verify_balanced_separator(g, w, ys, c, d, verts)
            if audit.ok:
                return frozenset(ys), audit
    return None


# ---------------------------------------------------------------------------
# generation


class GenerationTimeout(RuntimeError):
    pass


def _is_member(g: Graph) -> bool:
    return is_c4free_odd_signable(g).member


def random_bounded_degree_graph(rng: random.Random, n: int, delta: int, extra: int) -> Graph:
    """Random connected graph: degree-bounded random tree plus ``extra`` attempted chords."""
    edges = set()
    deg = [0] * n
    for v in range(1, n):
        choices = [u for u in range(v) if deg[u] < delta]
        u = rng.choice(choices)
        edges.add((u, v))
        deg[u] += 1
        deg[v] += 1
    for _ in range(extra):
        u, v = rng.sample(range(n), 2)
        u, v = min(u, v), max(u, v)
        if (u, v) not in edges and deg[u] < delta and deg[v] < delta:
            edges.add((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, sorted(edges))


def generate_class_member(
    delta: int, n: int, seed: int, strategy: str = "constructive", max_tries: int = 2000
) -> Graph:
    if delta < 2:
        raise ValueError("delta must be at least 2")
    rng = random.Random(seed)
    if strategy == "rejection":
        for _ in range(max_tries):
            g = random_bounded_degree_graph(rng, n, delta, rng.randint(0, max(1, n // 3)))
            if _is_member(g):
                return g
        raise GenerationTimeout(f"no member found in {max_tries} samples")
    if strategy in ("twojoin", "glue"):
        for _ in range(max_tries):
            g = _twojoin_attempt(rng, delta, n, strict=strategy == "twojoin")
            if g is not None and g.max_degree() <= delta and _is_member(g) and find_star_cutset(g) is None:
                return g
        raise GenerationTimeout(f"2-join composition failed after {max_tries} attempts")
    if strategy != "constructive":
        raise ValueError(f"unknown strategy {strategy}")
    for _ in range(max_tries):
        g = _constructive_attempt(rng, delta, n)
        if g is not None and g.max_degree() <= delta and _is_member(g):
            return g
    raise GenerationTimeout(f"constructive generation failed after {max_tries} attempts")


def _seed_graph(rng: random.Random, delta: int, n: int) -> Graph:
    if delta == 2:
        # paths and holes are the only connected members
        if n != 4 and rng.random() < 0.5:
            return families.cycle(n) if n >= 5 else families.path(n)
        return families.path(n)
    options = ["hole"]
    if delta >= 3:
        options += ["pyramid", "wheel", "wheel", "extended"]
    kind = rng.choice(options)
    if kind == "hole":
        return families.cycle(rng.randint(5, max(5, min(n, 9))))
    if kind == "pyramid":
        return families.three_path_graph("pyramid", [rng.randint(2, 3) for _ in range(3)])
    if kind == "wheel":
        return _random_odd_wheel(rng, delta)
    tree = [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]
    return families.extended_basic(tree)


def _random_odd_wheel(rng: random.Random, delta: int) -> Graph:
    # spokes chosen so that gaps are 1 (adjacent spokes) or at least 3, odd count
    while True:
        k = rng.choice([3, 3, 5]) if delta >= 5 else 3
        gaps = [rng.choice([1, 3, 3, 4]) for _ in range(k)]
        if all(gap == 1 for gap in gaps):
            continue
        length = sum(gaps)
        if length < 5:
            continue
        spokes, pos = [], 0
        for gap in gaps:
            spokes.append(pos)
            pos += gap
        return families.hole_with_hub(length, spokes)


def _constructive_attempt(rng: random.Random, delta: int, n: int) -> Graph | None:
    g = _seed_graph(rng, delta, n)
    if g.n > n or g.max_degree() > delta:
        return None
    edges = set(g.edges())
    size = g.n
    stalls = 0
    while size < n and stalls < 60:
        deg = [0] * size
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        spare = [v for v in range(size) if deg[v] < delta]
        if not spare:
            return None
        op = rng.random()
        new_edges: list[tuple[int, int]] = []
        added = 0
        if op < 0.35 or len(spare) < 2:
            u = rng.choice(spare)
            new_edges = [(u, size)]
            added = 1
        elif op < 0.8:
            u, v = rng.sample(spare, 2)
            length = rng.randint(1, min(4, n - size))
            chain = [u] + [size + i for i in range(length)] + [v]
            new_edges = list(zip(chain, chain[1:]))
            added = length
        else:
            k = min(rng.choice([2, 3]), len(spare))
            picks = rng.sample(spare, k)
            new_edges = [(p, size) for p in picks]
            added = 1
        if size + added > n:
            stalls += 1
            continue
        trial = Graph(size + added, sorted(edges | {tuple(sorted(e)) for e in new_edges}))
        if trial.max_degree() <= delta and _is_member(trial):
            edges = set(trial.edges())
            size += added
            stalls = 0
        else:
            stalls += 1
    if size != n:
        return None
    return Graph(size, sorted(edges))


def _twojoin_attempt(rng: random.Random, delta: int, n: int, strict: bool = True) -> Graph | None:
    """Two or three long pyramids glued along flat paths; sized to exactly ``n`` vertices.

    Gluing along a flat path that touches the triangle or the apex can leave a side
    that is itself a path, so the result need not have a 2-join at the glue. With
    ``strict`` such attempts are discarded; the ``glue`` strategy keeps them, which
    makes it a source of star-cutset-free members that are not 2-join compositions.
    """
    from .twojoin import check_split, compose_2join, flat_paths_length3

    pieces = rng.choice([2, 2, 3])
    # every gluing removes 8 vertices; a pyramid with legs l1, l2, l3 has l1 + l2 + l3 + 1
    budget = n + 8 * (pieces - 1)
    legs_total = budget - pieces
    if legs_total < 6 * pieces:
        return None
    cuts = sorted(rng.sample(range(1, legs_total), 3 * pieces - 1))
    legs = [b - a for a, b in zip([0] + cuts, cuts + [legs_total])]
    if min(legs) < 2:
        return None
    g = families.three_path_graph("pyramid", legs[:3])
    for i in range(1, pieces):
        h = families.three_path_graph("pyramid", legs[3 * i: 3 * i + 3])
        fg, fh = flat_paths_length3(g), flat_paths_length3(h)
        if not fg or not fh:
            return None
        g, split = compose_2join(g, rng.choice(fg), h, rng.choice(fh))
        if strict and not check_split(g, split):
            return None
    return g if g.n == n else None
