"""Separations, clique stars, canonical star separations and minimal clique separations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .graph import Graph, GraphError, WeightAssignment, components


@dataclass(frozen=True)
class Separation:
    a: frozenset[int]
    c: frozenset[int]
    b: frozenset[int]

    def __post_init__(self):
        for name in ("a", "c", "b"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if self.a & self.c or self.a & self.b or self.c & self.b:
            raise GraphError("separation parts must be disjoint")

    @property
    def x(self) -> frozenset[int]:
        return self.a | self.c

    @property
    def y(self) -> frozenset[int]:
        return self.c | self.b

    @property
    def mask(self) -> frozenset[int]:
        return self.a | self.c | self.b

    @property
    def proper(self) -> bool:
        return bool(self.a) and bool(self.b)

    def flipped(self) -> "Separation":
        return Separation(self.b, self.c, self.a)

    def is_valid_in(self, g: Graph, mask: Iterable[int] | None = None) -> bool:
        dom = frozenset(range(g.n) if mask is None else mask)
        if self.mask != dom:
            return False
        return not any(g.adj[v] & self.b for v in self.a)


def crosses(s1: Separation, s2: Separation) -> bool:
    if s1.mask != s2.mask:
        raise GraphError("separations live on different vertex sets")
    for p, q in ((s1, s2), (s2, s1)):
        if p.x <= q.x and q.y <= p.y:
            return False
        if p.x <= q.y and q.x <= p.y:
            return False
    return True


def is_laminar(seps: Sequence[Separation]) -> bool:
    return not any(crosses(s, t) for s, t in combinations(seps, 2))


@dataclass(frozen=True)
class SkewResult:
    skewed: bool
    separation: Separation


def is_skewed(s: Separation, w: WeightAssignment, eps: Fraction) -> SkewResult:
    """Whether a side weighs less than ``eps``; when it does, that side is returned as ``a``."""
    wa, wb = w.of(s.a), w.of(s.b)
    light_a, light_b = wa < eps, wb < eps
    if light_a and light_b:
        key_a = (wa, min(s.a, default=-1))
        key_b = (wb, min(s.b, default=-1))
        return SkewResult(True, s if key_a <= key_b else s.flipped())
    if light_a:
        return SkewResult(True, s)
    if light_b:
        return SkewResult(True, s.flipped())
    return SkewResult(False, s)


def is_clique_star(g: Graph, xs: Iterable[int], center: Iterable[int]) -> bool:
    xs, k = frozenset(xs), frozenset(center)
    return bool(k) and g.is_clique(k) and k <= xs <= g.closed_neighborhood(k)


# ---------------------------------------------------------------------------
# heaviest component with a deterministic tie-break


def _component_key(w: WeightAssignment, comp: frozenset[int]):
    return (-w.of(comp), len(comp), min(comp))


def heaviest_component(g: Graph, rest: Iterable[int], w: WeightAssignment) -> tuple[frozenset[int], int]:
    """Heaviest component of ``rest`` and how many components tie with it on weight."""
    comps = components(g, rest)
    if not comps:
        return frozenset(), 0
    comps.sort(key=lambda z: _component_key(w, z))
    best = comps[0]
    ties = sum(1 for z in comps if w.of(z) == w.of(best))
    return best, ties


@dataclass(frozen=True)
class CanonicalStarSeparation:
    separation: Separation
    center: tuple[int, ...]
    tied_components: int

    @property
    def tie(self) -> bool:
        return self.tied_components > 1


def canonical_star_separation(
    g: Graph, mask: Iterable[int], w: WeightAssignment, center: Iterable[int]
) -> CanonicalStarSeparation:
    dom = frozenset(mask)
    k = frozenset(center)
    if not k or not k <= dom or not g.is_clique(k):
        raise GraphError("center must be a nonempty clique inside the mask")
    nk = g.closed_neighborhood(k, dom)
    b, ties = heaviest_component(g, dom - nk, w)
    c = k | frozenset(v for v in nk - k if g.adj[v] & b)
    a = dom - c - b
    return CanonicalStarSeparation(Separation(a, c, b), tuple(sorted(k)), ties)


# ---------------------------------------------------------------------------
# clique cutsets


def is_minimal_clique_cutset(g: Graph, mask: Iterable[int], cut: Iterable[int]) -> bool:
    dom = frozenset(mask)
    cut = frozenset(cut)
    if not cut or not cut <= dom or not g.is_clique(cut):
        return False
    comps = components(g, dom - cut)
    if len(comps) < 2:
        return False
    return all(g.adj[v] & z for v in cut for z in comps)


def iter_cliques(g: Graph, mask: Iterable[int], size: int):
    dom = frozenset(mask)

    def grow(clique: tuple[int, ...], cand: frozenset[int]):
        if len(clique) == size:
            yield frozenset(clique)
            return
        for v in sorted(cand):
            if clique and v < clique[-1]:
                continue
            yield from grow(clique + (v,), cand & g.adj[v])

    yield from grow((), dom)


def minimal_clique_cutsets(g: Graph, mask: Iterable[int], size_k: int) -> list[frozenset[int]]:
    if size_k < 1:
        raise ValueError("size_k must be positive")
    dom = frozenset(mask)
    found = [k for k in iter_cliques(g, dom, size_k) if is_minimal_clique_cutset(g, dom, k)]
    return sorted(found, key=lambda s: sorted(s))


def minimal_clique_separation(g: Graph, mask: Iterable[int], w: WeightAssignment, cut: Iterable[int]) -> Separation:
    dom = frozenset(mask)
    cut = frozenset(cut)
    if not is_minimal_clique_cutset(g, dom, cut):
        raise GraphError(f"{sorted(cut)} is not a minimal clique cutset")
    b, _ = heaviest_component(g, dom - cut, w)
    return Separation(dom - cut - b, cut, b)


# ---------------------------------------------------------------------------
# center partition


def f_bound(k: int, delta: int) -> int:
    return (k + delta * k) * sum(comb(delta, j) for j in range(k)) + 1


def partition_centers(
    g: Graph, centers: Sequence[Iterable[int]], k: int, delta: int, mask: Iterable[int] | None = None
) -> list[list[frozenset[int]]]:
    """Greedy colouring of centers so that each class is pairwise anticomplete."""
    dom = frozenset(range(g.n) if mask is None else mask)
    if g.max_degree(dom) > delta:
        raise GraphError(f"maximum degree exceeds {delta}")
    cs = [frozenset(c) for c in centers]
    if any(len(c) > k or not g.is_clique(c) for c in cs):
        raise GraphError(f"centers must be cliques of size at most {k}")
    reach = [g.closed_neighborhood(c, dom) for c in cs]
    classes: list[list[int]] = []
    for i in range(len(cs)):
        for cls in classes:
            if all(not (reach[i] & cs[j]) for j in cls):
                cls.append(i)
                break
        else:
            classes.append([i])
    out = [[cs[i] for i in cls] for cls in classes]
    assert len(out) <= f_bound(k, delta) or not cs
    return out


# ---------------------------------------------------------------------------
# star cutsets


def find_star_cutset(g: Graph, mask: Iterable[int] | None = None) -> tuple[int, frozenset[int]] | None:
    dom = frozenset(range(g.n) if mask is None else mask)
    closed = {x: g.closed_neighborhood([x], dom) for x in sorted(dom)}
    for x, nx in closed.items():
        if len(components(g, dom - nx)) >= 2:
            return x, nx
    for x, nx in closed.items():
        for d in components(g, dom - nx):
            cut = frozenset({x}) | (nx & g.neighborhood(d, dom))
            if dom - cut - d:
                return x, cut
    for x, nx in closed.items():
        if nx == dom:
            nbrs = sorted(nx - {x})
            for a, b in combinations(nbrs, 2):
                if not g.has_edge(a, b):
                    return x, dom - {a, b}
    return None
