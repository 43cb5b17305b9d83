"""Detection of C4, thetas, prisms, pyramids and even wheels, and hole enumeration.

Every three-path configuration contains a hole made of two of its paths;
the third path, minus its ends on that hole, is an induced path whose
interior sees nothing of the hole and whose two ends attach in a small
number of recognisable patterns.  The detectors therefore walk the holes
of the graph and, for each one, search for such a connecting path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .graph import Graph, HoleRecord, PathRecord

DEFAULT_CAP = 10**8

THETA, PRISM, PYRAMID = "theta", "prism", "pyramid"
ALL_KINDS = frozenset({THETA, PRISM, PYRAMID})


class CapExceeded(RuntimeError):
    """The work budget ran out before the search finished."""


class Budget:
    __slots__ = ("cap", "used")

    def __init__(self, cap: int | None = DEFAULT_CAP):
        self.cap = cap
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.cap is not None and self.used > self.cap:
            raise CapExceeded(f"work budget of {self.cap} steps exceeded")


def _budget(cap) -> Budget:
    return cap if isinstance(cap, Budget) else Budget(cap)


@dataclass(frozen=True)
class ThreePathConfig:
    kind: str
    paths: tuple[PathRecord, PathRecord, PathRecord]
    # theta: (a, b); pyramid: (apex, b1, b2, b3); prism: (a1, a2, a3, b1, b2, b3)
    anchors: tuple[int, ...]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p.vertices)


@dataclass(frozen=True)
class WheelRecord:
    hole: HoleRecord
    hub: int
    spokes: frozenset[int]

    def __post_init__(self):
        if self.hub in self.hole.vertex_set:
            raise ValueError("hub lies on the hole")
        if len(self.spokes) < 3:
            raise ValueError("a wheel hub needs at least three neighbours on the hole")


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    witness_kind: str | None = None
    witness: object = None


# ---------------------------------------------------------------------------
# holes


def iter_holes(
    g: Graph,
    max_len: int | None = None,
    within: Iterable[int] | None = None,
    cap: Budget | int | None = DEFAULT_CAP,
) -> Iterator[HoleRecord]:
    """Yield every hole once, in canonical form, least vertex first."""
    budget = _budget(cap)
    verts = sorted(range(g.n) if within is None else set(within))
    full = 0
    for v in verts:
        full |= 1 << v
    masks = g.masks
    limit = g.n + 1 if max_len is None else max_len
    if limit < 4:
        return
    for v in verts:
        above = full & ~((1 << (v + 1)) - 1)
        nv = masks[v] & above
        closed_v = masks[v] | (1 << v)
        interior_ok = above & ~closed_v
        nbrs = _bits(nv)
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                if masks[a] >> b & 1:
                    continue
                # induced paths a -> b with interior outside N[v]; ``forb`` holds the
                # closed neighbourhoods of all path vertices but the last, plus the last
                stack = [((a,), a, 1 << a)]
                while stack:
                    path, last, forb = stack.pop()
                    budget.spend()
                    if masks[last] >> b & 1:
                        if last != a and not (forb >> b & 1):
                            yield HoleRecord((v,) + path + (b,))
                        continue
                    if len(path) + 2 >= limit:
                        continue
                    base = forb | masks[last]
                    cand = masks[last] & interior_ok & ~forb & ~(1 << b)
                    for w in reversed(_bits(cand)):
                        stack.append((path + (w,), w, base | (1 << w)))


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def enumerate_holes(
    g: Graph,
    max_len: int,
    visitor: Callable[[HoleRecord], object] | None = None,
    within: Iterable[int] | None = None,
    cap: Budget | int | None = DEFAULT_CAP,
) -> list[HoleRecord]:
    if max_len < 4:
        raise ValueError("max_len must be at least 4")
    out = []
    for hole in iter_holes(g, max_len, within, cap):
        if visitor is not None:
            visitor(hole)
        out.append(hole)
    return out


# ---------------------------------------------------------------------------
# C4


def find_c4(g: Graph, within: Iterable[int] | None = None) -> frozenset[int] | None:
    """Lexicographically least (as a sorted tuple) vertex set of an induced 4-cycle."""
    allowed = frozenset(range(g.n) if within is None else within)
    best: tuple[int, ...] | None = None
    for u in sorted(allowed):
        for v in sorted(allowed):
            if v <= u or v in g.adj[u]:
                continue
            common = sorted(g.adj[u] & g.adj[v] & allowed)
            for i, a in enumerate(common):
                for b in common[i + 1:]:
                    if b not in g.adj[a]:
                        cand = tuple(sorted((u, v, a, b)))
                        if best is None or cand < best:
                            best = cand
    return frozenset(best) if best is not None else None


# ---------------------------------------------------------------------------
# three-path configurations


def _arc(hole: tuple[int, ...], start: int, end: int, avoid: int) -> tuple[int, ...]:
    """The subpath of the hole from ``start`` to ``end`` that does not pass ``avoid``."""
    k = len(hole)
    i, j = hole.index(start), hole.index(end)
    fwd = [hole[(i + s) % k] for s in range(((j - i) % k) + 1)]
    if avoid not in fwd:
        return tuple(fwd)
    bwd = [hole[(i - s) % k] for s in range(((i - j) % k) + 1)]
    assert avoid not in bwd
    return tuple(bwd)


def _other_arc(hole: tuple[int, ...], start: int, end: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    k = len(hole)
    i, j = hole.index(start), hole.index(end)
    fwd = tuple(hole[(i + s) % k] for s in range(((j - i) % k) + 1))
    bwd = tuple(hole[(i - s) % k] for s in range(((i - j) % k) + 1))
    return fwd, bwd


def _configs_on_hole(
    g: Graph, hole: HoleRecord, allowed: frozenset[int], kinds: frozenset[str], budget: Budget
) -> ThreePathConfig | None:
    hv = hole.vertices
    hs = hole.vertex_set
    att: dict[int, frozenset[int]] = {}
    free: set[int] = set()
    for r in sorted(allowed - hs):
        budget.spend()
        a = g.adj[r] & hs
        if a:
            att[r] = a
        else:
            free.add(r)

    def edge(s):
        return len(s) == 2 and g.has_edge(*s)

    # single connecting vertex
    for r, a in att.items():
        if THETA in kinds and len(a) == 2 and not edge(a):
            x, y = sorted(a)
            p1, p2 = _other_arc(hv, x, y)
            return ThreePathConfig(THETA, (PathRecord(p1), PathRecord(p2), PathRecord((x, r, y))), (x, y))
        if PYRAMID in kinds and len(a) == 3:
            cfg = _pyramid_single(g, hv, r, a)
            if cfg is not None:
                return cfg

    ends = sorted(att)
    for s in ends:
        pat_s = att[s]
        if not (len(pat_s) == 1 or edge(pat_s)):
            continue
        # BFS from s through free vertices, reaching other attached vertices
        parent = {s: None}
        queue = deque([s])
        reached: list[int] = []
        while queue:
            u = queue.popleft()
            for w in sorted(g.adj[u] & allowed):
                budget.spend()
                if w in parent or w in hs:
                    continue
                if w in free:
                    parent[w] = u
                    queue.append(w)
                elif w in att and w > s:
                    parent[w] = u
                    reached.append(w)
        for t in sorted(reached):
            pat_t = att[t]
            seq = [t]
            while seq[-1] != s:
                seq.append(parent[seq[-1]])
            q = tuple(reversed(seq))  # s ... t
            cfg = _classify_pair(g, hv, q, pat_s, pat_t, kinds)
            if cfg is not None:
                return cfg
    return None


def _pyramid_single(g, hv, r, a) -> ThreePathConfig | None:
    a = sorted(a)
    for i in range(3):
        apex = a[i]
        b1, b2 = [x for x in a if x != apex]
        if g.has_edge(b1, b2) and not g.has_edge(apex, b1) and not g.has_edge(apex, b2):
            p1 = _arc(hv, apex, b1, b2)
            p2 = _arc(hv, apex, b2, b1)
            return ThreePathConfig(PYRAMID, (PathRecord(p1), PathRecord(p2), PathRecord((apex, r))), (apex, b1, b2, r))
    return None


def _classify_pair(g, hv, q, pat_s, pat_t, kinds) -> ThreePathConfig | None:
    def edge(s):
        return len(s) == 2 and g.has_edge(*s)

    if len(pat_s) == 1 and len(pat_t) == 1:
        if THETA not in kinds:
            return None
        (x,), (y,) = tuple(pat_s), tuple(pat_t)
        if x == y or g.has_edge(x, y):
            return None
        p1, p2 = _other_arc(hv, x, y)
        return ThreePathConfig(THETA, (PathRecord(p1), PathRecord(p2), PathRecord((x,) + q + (y,))), (x, y))
    if edge(pat_s) and edge(pat_t):
        if PRISM not in kinds or (pat_s & pat_t):
            return None
        a1, a2 = sorted(pat_s)
        # pair each a-vertex with the b-vertex reached along the hole without crossing the other a
        arc1 = _arc_to_set(hv, a1, pat_t, a2)
        arc2 = _arc_to_set(hv, a2, pat_t, a1)
        b1, b2 = arc1[-1], arc2[-1]
        s, t = q[0], q[-1]
        return ThreePathConfig(PRISM, (PathRecord(arc1), PathRecord(arc2), PathRecord(q)), (a1, a2, s, b1, b2, t))
    if edge(pat_s) and len(pat_t) == 1 or edge(pat_t) and len(pat_s) == 1:
        if PYRAMID not in kinds:
            return None
        if len(pat_s) == 1:
            q = tuple(reversed(q))
            pat_s, pat_t = pat_t, pat_s
        (apex,) = tuple(pat_t)
        if apex in pat_s:
            return None
        b1, b2 = sorted(pat_s)
        p1 = _arc(hv, apex, b1, b2)
        p2 = _arc(hv, apex, b2, b1)
        p3 = (apex,) + tuple(reversed(q))
        return ThreePathConfig(PYRAMID, (PathRecord(p1), PathRecord(p2), PathRecord(p3)), (apex, b1, b2, q[0]))
    return None


def _arc_to_set(hv, start, targets, avoid) -> tuple[int, ...]:
    k = len(hv)
    i = hv.index(start)
    for step in (1, -1):
        seq = [start]
        j = i
        ok = True
        while seq[-1] not in targets:
            j = (j + step) % k
            if hv[j] == avoid:
                ok = False
                break
            seq.append(hv[j])
        if ok:
            return tuple(seq)
    raise AssertionError("hole arc not found")


def find_theta_prism_pyramid(
    g: Graph,
    kinds: Iterable[str] = ALL_KINDS,
    cap: Budget | int | None = DEFAULT_CAP,
    within: Iterable[int] | None = None,
) -> ThreePathConfig | None:
    kinds = frozenset(kinds)
    if not kinds <= ALL_KINDS:
        raise ValueError(f"unknown kinds {set(kinds - ALL_KINDS)}")
    budget = _budget(cap)
    allowed = frozenset(range(g.n) if within is None else within)
    for hole in iter_holes(g, None, allowed, budget):
        cfg = _configs_on_hole(g, hole, allowed, kinds, budget)
        if cfg is not None:
            return cfg
    return None


def find_even_wheel(
    g: Graph, cap: Budget | int | None = DEFAULT_CAP, within: Iterable[int] | None = None
) -> WheelRecord | None:
    budget = _budget(cap)
    allowed = frozenset(range(g.n) if within is None else within)
    for hole in iter_holes(g, None, allowed, budget):
        for w in iter_wheels_on_hole(g, hole, allowed):
            if len(w.spokes) % 2 == 0:
                return w
    return None


def iter_wheels_on_hole(g: Graph, hole: HoleRecord, allowed: frozenset[int]) -> Iterator[WheelRecord]:
    hs = hole.vertex_set
    for x in sorted(allowed - hs):
        spokes = g.adj[x] & hs
        if len(spokes) >= 3:
            yield WheelRecord(hole, x, spokes)


def iter_wheels(
    g: Graph, cap: Budget | int | None = DEFAULT_CAP, within: Iterable[int] | None = None
) -> Iterator[WheelRecord]:
    budget = _budget(cap)
    allowed = frozenset(range(g.n) if within is None else within)
    for hole in iter_holes(g, None, allowed, budget):
        yield from iter_wheels_on_hole(g, hole, allowed)


def is_c4free_odd_signable(
    g: Graph, cap: Budget | int | None = DEFAULT_CAP, within: Iterable[int] | None = None
) -> MembershipResult:
    """Class membership: no C4, theta, prism or even wheel.  Raises CapExceeded when capped."""
    budget = _budget(cap)
    c4 = find_c4(g, within)
    if c4 is not None:
        return MembershipResult(False, "c4", c4)
    cfg = find_theta_prism_pyramid(g, {THETA, PRISM}, budget, within)
    if cfg is not None:
        return MembershipResult(False, cfg.kind, cfg)
    wheel = find_even_wheel(g, budget, within)
    if wheel is not None:
        return MembershipResult(False, "even_wheel", wheel)
    return MembershipResult(True)


# ---------------------------------------------------------------------------
# witness validation (independent of the search above)


def validate_three_path(g: Graph, cfg: ThreePathConfig) -> bool:
    p1, p2, p3 = (p.vertices for p in cfg.paths)
    if not all(PathRecord(p).is_induced_in(g) for p in (p1, p2, p3)):
        return False
    if cfg.kind == THETA:
        a, b = cfg.anchors
        if g.has_edge(a, b):
            return False
        for p in (p1, p2, p3):
            if {p[0], p[-1]} != {a, b} or len(p) < 3:
                return False
        inner = [set(p[1:-1]) for p in (p1, p2, p3)]
        return _pairwise_disjoint_anticomplete(g, inner)
    if cfg.kind == PYRAMID:
        apex, b1, b2, b3 = cfg.anchors
        tri = (b1, b2, b3)
        if not g.is_clique(tri):
            return False
        if sorted((p[0], p[-1]) == (apex, t) for p, t in zip((p1, p2, p3), tri)) != [True] * 3:
            return False
        if sum(len(p) >= 3 for p in (p1, p2, p3)) < 2:
            return False
        rest = [set(p[1:]) for p in (p1, p2, p3)]
        if not _pairwise_disjoint(rest):
            return False
        # only the triangle edges may join the paths outside the apex
        for i in range(3):
            for j in range(i + 1, 3):
                for u in rest[i]:
                    for v in rest[j]:
                        if g.has_edge(u, v) and {u, v} != {tri[i], tri[j]}:
                            return False
        return True
    if cfg.kind == PRISM:
        a1, a2, a3, b1, b2, b3 = cfg.anchors
        if not (g.is_clique((a1, a2, a3)) and g.is_clique((b1, b2, b3))):
            return False
        ends = sorted(tuple(sorted((p[0], p[-1]))) for p in (p1, p2, p3))
        sets = [set(p) for p in (p1, p2, p3)]
        if not _pairwise_disjoint(sets):
            return False
        tri_a, tri_b = {a1, a2, a3}, {b1, b2, b3}
        for p in (p1, p2, p3):
            if len({p[0], p[-1]} & tri_a) != 1 or len({p[0], p[-1]} & tri_b) != 1:
                return False
        del ends
        for i in range(3):
            for j in range(i + 1, 3):
                for u in sets[i]:
                    for v in sets[j]:
                        if g.has_edge(u, v) and not ({u, v} <= tri_a or {u, v} <= tri_b):
                            return False
        return True
    return False


def validate_wheel(g: Graph, w: WheelRecord) -> bool:
    return w.hole.is_induced_in(g) and w.hub not in w.hole.vertex_set and (g.adj[w.hub] & w.hole.vertex_set) == w.spokes and len(w.spokes) >= 3


def _pairwise_disjoint(sets) -> bool:
    seen: set[int] = set()
    for s in sets:
        if seen & s:
            return False
        seen |= s
    return True


def _pairwise_disjoint_anticomplete(g: Graph, sets) -> bool:
    if not _pairwise_disjoint(sets):
        return False
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if any(g.adj[u] & sets[j] for u in sets[i]):
                return False
    return True
