"""Balanced separators: d-boundedness witnesses and component-weight checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graph import Graph, WeightAssignment, ball, components


@dataclass(frozen=True)
class BalancedSeparatorCertificate:
    separator: frozenset[int]
    centers: tuple[int, ...]
    radius: int
    component_weights: tuple[Fraction, ...]
    c: Fraction
    d: int
    domain: frozenset[int]


@dataclass(frozen=True)
class BalanceAudit:
    ok: bool
    centers: tuple[int, ...] | None
    component_weights: tuple[Fraction, ...]
    heavy_component: frozenset[int] | None = None
    reason: str = ""


def bounding_centers(
    g: Graph, ys: Iterable[int], d: int, within: Iterable[int] | None = None, exact_limit: int = 200_000
) -> tuple[int, ...] | None:
    """At most ``d`` centers whose radius-``d`` balls (inside ``within``) cover ``ys``, or None.

    Greedy set cover first; if greedy needs more than ``d`` balls an exact
    branching search decides (bounded by ``exact_limit`` nodes, after which
    the answer is None, i.e. not certified).
    """
    ys = frozenset(ys)
    if not ys:
        return ()
    if d <= 0:
        return None
    dom = frozenset(range(g.n)) if within is None else frozenset(within)
    if not ys <= dom:
        return None
    cover = {v: ball(g, [v], d, dom) & ys for v in sorted(dom)}
    cover = {v: s for v, s in cover.items() if s}
    chosen: list[int] = []
    left = set(ys)
    while left:
        v = max(cover, key=lambda u: (len(cover[u] & left), -u))
        chosen.append(v)
        left -= cover[v]
    if len(chosen) <= d:
        return tuple(chosen)
    if len(ys) <= d:
        return tuple(sorted(ys))
    # exact search: branch on the least uncovered vertex
    by_elem: dict[int, list[int]] = {y: [] for y in ys}
    for v, s in cover.items():
        for y in s:
            by_elem[y].append(v)
    for y in by_elem:
        by_elem[y].sort(key=lambda u: (-len(cover[u]), u))
    nodes = 0

    def search(left: frozenset[int], picked: tuple[int, ...]) -> tuple[int, ...] | None:
        nonlocal nodes
        nodes += 1
        if nodes > exact_limit:
            raise _Abort
        if not left:
            return picked
        if len(picked) == d:
            return None
        y = min(left)
        for v in by_elem[y]:
            got = search(left - cover[v], picked + (v,))
            if got is not None:
                return got
        return None

    try:
        return search(ys, ())
    except _Abort:
        return None


class _Abort(Exception):
    pass


def min_boundedness(g: Graph, ys: Iterable[int], within: Iterable[int] | None = None, limit: int | None = None) -> int:
    """Least d such that ``ys`` is d-bounded (0 for the empty set)."""
    ys = frozenset(ys)
    if not ys:
        return 0
    top = len(ys) if limit is None else min(limit, len(ys))
    for d in range(1, top + 1):
        if bounding_centers(g, ys, d, within) is not None:
            return d
    return len(ys)


def verify_balanced_separator(
    g: Graph,
    w: WeightAssignment,
    ys: Iterable[int],
    c: Fraction,
    d: int,
    within: Iterable[int] | None = None,
) -> BalanceAudit:
    dom = frozenset(range(g.n)) if within is None else frozenset(within)
    ys = frozenset(ys)
    if not ys <= dom:
        return BalanceAudit(False, None, (), reason="separator leaves the domain")
    comps = components(g, dom - ys)
    weights = tuple(w.of(z) for z in comps)
    for z, wz in zip(comps, weights):
        if wz > c:
            return BalanceAudit(False, None, weights, z, reason=f"component of weight {wz} exceeds {c}")
    centers = bounding_centers(g, ys, d, dom)
    if centers is None:
        return BalanceAudit(False, None, weights, reason=f"separator is not certified {d}-bounded")
    return BalanceAudit(True, centers, weights)


def certify(
    g: Graph, w: WeightAssignment, ys: Iterable[int], c: Fraction, d: int, within: Iterable[int] | None = None
) -> BalancedSeparatorCertificate | None:
    dom = frozenset(range(g.n)) if within is None else frozenset(within)
    audit = verify_balanced_separator(g, w, ys, c, d, dom)
    if not audit.ok:
        return None
    return BalancedSeparatorCertificate(frozenset(ys), audit.centers, d, audit.component_weights, Fraction(c), d, dom)
