"""Wheel taxonomy, twin-wheel richness, forcers and their cutset certificates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .detect import DEFAULT_CAP, Budget, WheelRecord, _budget, iter_holes, iter_wheels_on_hole
from .graph import Graph, HoleRecord, PathRecord, components, path_avoiding

UNIVERSAL, TWIN, SHORT_PYRAMID, PROPER = "universal", "twin", "short_pyramid", "proper"
PROPER_WHEEL_FORCER, SHORT_PYRAMID_FORCER, TWIN_WHEEL_FORCER = "proper_wheel", "short_pyramid", "twin_wheel"


@dataclass(frozen=True)
class WheelClass:
    kind: str
    sectors: tuple[PathRecord, ...]
    clone: int | None = None  # twin wheels
    triangle: tuple[int, int] | None = None  # short pyramids: the adjacent spoke pair
    apex: int | None = None  # short pyramids: the remaining spoke

    @property
    def is_proper(self) -> bool:
        return self.kind in (PROPER, UNIVERSAL)

    @property
    def long_sectors(self) -> tuple[PathRecord, ...]:
        return tuple(s for s in self.sectors if s.length >= 2)


def sectors(hole: HoleRecord, spokes: frozenset[int]) -> tuple[PathRecord, ...]:
    """Hole subpaths between cyclically consecutive spokes."""
    hv = hole.vertices
    k = len(hv)
    idx = [i for i, v in enumerate(hv) if v in spokes]
    out = []
    for j, i in enumerate(idx):
        nxt = idx[(j + 1) % len(idx)]
        span = (nxt - i) % k or k
        out.append(PathRecord(tuple(hv[(i + s) % k] for s in range(span + 1))))
    return tuple(out)


def classify_wheel(g: Graph, w: WheelRecord) -> WheelClass:
    hs = w.hole.vertex_set
    spokes = w.spokes
    secs = sectors(w.hole, spokes)
    if spokes == hs:
        return WheelClass(UNIVERSAL, secs)
    if len(spokes) == 3:
        s = sorted(spokes)
        adjacent = [(a, b) for i, a in enumerate(s) for b in s[i + 1:] if g.has_edge(a, b)]
        if len(adjacent) == 2:
            middle = next(v for v in s if sum(v in p for p in adjacent) == 2)
            return WheelClass(TWIN, secs, clone=middle)
        if len(adjacent) == 1:
            pair = adjacent[0]
            apex = next(v for v in s if v not in pair)
            return WheelClass(SHORT_PYRAMID, secs, triangle=pair, apex=apex)
    return WheelClass(PROPER, secs)


# ---------------------------------------------------------------------------
# twin wheels


@dataclass(frozen=True)
class Richness:
    x_rich: bool
    x2_rich: bool

    @property
    def terminal(self) -> bool:
        return not (self.x_rich and self.x2_rich)


def twin_richness(g: Graph, hole: HoleRecord, x: int, x2: int, within: Iterable[int] | None = None) -> Richness:
    dom = frozenset(range(g.n) if within is None else within)
    hs = hole.vertex_set
    targets = hs - g.adj[x] - {x}
    x_path = path_avoiding(g, x, targets, (g.adj[x2] - {x}) | {x2}, dom)
    x2_path = path_avoiding(g, x2, targets, (g.adj[x] - {x2}) | {x}, dom)
    return Richness(x_path is not None, x2_path is not None)


# ---------------------------------------------------------------------------
# forcers


@dataclass(frozen=True)
class ForcerRecord:
    hole: HoleRecord
    center: tuple[int, ...]
    kind: str
    hub: int
    clone: int | None = None

    @property
    def strong(self) -> bool:
        return self.kind != TWIN_WHEEL_FORCER

    @property
    def support(self) -> frozenset[int]:
        return self.hole.vertex_set | frozenset(self.center)

    def active_in(self, bag: Iterable[int]) -> bool:
        return self.support <= frozenset(bag)


@dataclass(frozen=True)
class CutsetCertificate:
    cutset: frozenset[int]
    side_a: frozenset[int]
    side_b: frozenset[int]
    domain: frozenset[int]

    def holds(self, g: Graph) -> bool:
        if not self.side_a or not self.side_b:
            return False
        if (self.side_a | self.side_b) & self.cutset or self.side_a & self.side_b:
            return False
        if not (self.side_a | self.side_b | self.cutset) <= self.domain:
            return False
        for comp in components(g, self.domain - self.cutset):
            if comp & self.side_a and comp & self.side_b:
                return False
        return True


class CutsetVerificationError(AssertionError):
    def __init__(self, message: str, certificate: CutsetCertificate | None):
        super().__init__(message)
        self.certificate = certificate


def forcer_cutset(g: Graph, f: ForcerRecord, within: Iterable[int] | None = None) -> CutsetCertificate:
    dom = frozenset(range(g.n) if within is None else within)
    x = f.hub
    hole = f.hole
    hs = hole.vertex_set
    nx = g.adj[x] & dom
    spokes = nx & hs
    if f.kind == PROPER_WHEEL_FORCER:
        if spokes == hs:
            cert = _universal_cutset(g, hole, x, dom)
        else:
            cert = _proper_cutset(g, hole, x, spokes, nx, dom)
    elif f.kind == SHORT_PYRAMID_FORCER:
        y = next(v for v in f.center if v != x)
        cut = nx | (g.adj[y] & dom)
        secs = [s for s in sectors(hole, spokes) if y in s.ends]
        h1, h2 = (frozenset(s.vertices) - cut for s in secs)
        cert = CutsetCertificate(frozenset(cut), h1, h2, dom)
    elif f.kind == TWIN_WHEEL_FORCER:
        x2 = f.clone
        cut = (nx | {x}) - {x2}
        cert = CutsetCertificate(frozenset(cut), frozenset({x2}), frozenset(hs - nx - {x}), dom)
    else:
        raise ValueError(f"unknown forcer kind {f.kind}")
    if not cert.holds(g):
        raise CutsetVerificationError(f"{f.kind} cutset failed the component check", cert)
    return cert


def _proper_cutset(g, hole, x, spokes, nx, dom) -> CutsetCertificate:
    secs = sectors(hole, spokes)
    q = next(s for s in secs if s.length >= 2)
    x1, x2 = q.ends
    # walk H \ {x1} starting at x2, away from the sector
    hv = hole.vertices
    k = len(hv)
    i1, i2 = hv.index(x1), hv.index(x2)
    step = 1 if hv[(i2 - 1) % k] == q.vertices[-2] else -1
    assert hv[(i2 - step) % k] == q.vertices[-2]
    walk = [hv[(i2 + step * t) % k] for t in range(k) if hv[(i2 + step * t) % k] != x1]
    walk = walk[: walk.index(x1) if x1 in walk else len(walk)]
    # stop before returning into the sector (the walk covers H \ Q*)
    walk = [v for v in walk if v not in q.interior]
    w_set = set()
    count = 0
    for h in walk:
        if h in spokes:
            count += 1
            if count % 2 == 0:
                w_set.add(h)
    del i1
    z = hole.vertex_set - frozenset(q.vertices) - nx
    n_prime = nx - w_set
    cut = frozenset(n_prime | {x})
    return CutsetCertificate(cut, frozenset(q.interior), frozenset(w_set) | z, dom)


def _universal_cutset(g, hole, x, dom) -> CutsetCertificate:
    closed = (g.adj[x] & dom) | {x}
    hv = hole.vertices
    if closed == dom:
        for i, a in enumerate(hv):
            for b in hv[i + 1:]:
                if not g.has_edge(a, b):
                    return CutsetCertificate(frozenset(closed - {a, b}), frozenset({a}), frozenset({b}), dom)
    comp = components(g, dom - closed)[0]
    for a in sorted(hole.vertex_set):
        if not (g.adj[a] & comp):
            return CutsetCertificate(frozenset(closed - {a}), frozenset({a}), comp, dom)
    raise CutsetVerificationError("no hole vertex avoids the component", None)


def universal_cutsets(g: Graph, hole: HoleRecord, x: int, within: Iterable[int] | None = None) -> list[CutsetCertificate]:
    """One certificate per component outside the closed neighbourhood of the hub."""
    dom = frozenset(range(g.n) if within is None else within)
    closed = (g.adj[x] & dom) | {x}
    out = []
    for comp in components(g, dom - closed):
        a = next((a for a in sorted(hole.vertex_set) if not (g.adj[a] & comp)), None)
        if a is None:
            raise CutsetVerificationError("no hole vertex avoids a component", None)
        out.append(CutsetCertificate(frozenset(closed - {a}), frozenset({a}), comp, dom))
    return out


def enumerate_forcers(
    g: Graph,
    kind: str = "strong",
    cap: Budget | int | None = DEFAULT_CAP,
    within: Iterable[int] | None = None,
) -> list[ForcerRecord]:
    """All forcers of the requested kind, ordered by hole then center."""
    if kind not in ("strong", "twin"):
        raise ValueError("kind must be 'strong' or 'twin'")
    budget = _budget(cap)
    dom = frozenset(range(g.n) if within is None else within)
    found: dict[tuple, ForcerRecord] = {}
    for hole in iter_holes(g, None, dom, budget):
        for w in iter_wheels_on_hole(g, hole, dom):
            budget.spend()
            cls = classify_wheel(g, w)
            if kind == "strong":
                if cls.is_proper:
                    rec = ForcerRecord(hole, (w.hub,), PROPER_WHEEL_FORCER, w.hub)
                elif cls.kind == SHORT_PYRAMID:
                    rec = ForcerRecord(hole, tuple(sorted((w.hub, cls.apex))), SHORT_PYRAMID_FORCER, w.hub)
                else:
                    continue
                found.setdefault((hole.canonical(), rec.center, rec.kind), rec)
            elif cls.kind == TWIN:
                rich = twin_richness(g, hole, w.hub, cls.clone, dom)
                if not rich.x2_rich:
                    rec = ForcerRecord(hole, (w.hub,), TWIN_WHEEL_FORCER, w.hub, cls.clone)
                    found.setdefault((hole.canonical(), rec.center, rec.kind), rec)
                elif not rich.x_rich:
                    swapped = _swap(hole, w.hub, cls.clone)
                    rec = ForcerRecord(swapped, (cls.clone,), TWIN_WHEEL_FORCER, cls.clone, w.hub)
                    found.setdefault((swapped.canonical(), rec.center, rec.kind), rec)
    return [found[k] for k in sorted(found, key=lambda t: (len(t[0]), t[0], t[1]))]


def _swap(hole: HoleRecord, x: int, x2: int) -> HoleRecord:
    vs = tuple(x if v == x2 else v for v in hole.vertices)
    return HoleRecord(HoleRecord(vs).canonical())


# ---------------------------------------------------------------------------
# twin-wheel properties as checkable predicates


@dataclass(frozen=True)
class ImplicationCheck:
    hypothesis: bool
    conclusion: bool

    @property
    def holds(self) -> bool:
        return (not self.hypothesis) or self.conclusion


def _twin_parts(g: Graph, hole: HoleRecord, x: int):
    spokes = g.adj[x] & hole.vertex_set
    cls = classify_wheel(g, WheelRecord(hole, x, spokes))
    if cls.kind != TWIN:
        raise ValueError("not a twin wheel")
    x2 = cls.clone
    x1, x3 = sorted(spokes - {x2})
    return x1, x2, x3


def check_u_x_poor_predicate(
    g: Graph, hole: HoleRecord, x: int, u: int, within: Iterable[int] | None = None
) -> ImplicationCheck:
    """If u sees exactly x, an end spoke and that spoke's other hole neighbour, the wheel is clone-poor."""
    x1, x2, x3 = _twin_parts(g, hole, x)
    seen = g.adj[u] & (hole.vertex_set | {x})
    hyp = False
    for end in (x1, x3):
        a, b = hole.neighbours_on_hole(end)
        outer = b if a == x2 else a
        if seen == frozenset({x, end, outer}):
            hyp = True
    concl = not twin_richness(g, hole, x, x2, within).x2_rich
    return ImplicationCheck(hyp, concl)


def check_paths_shapes_predicate(
    g: Graph, hole: HoleRecord, x: int, within: Iterable[int] | None = None
) -> tuple[PathRecord, PathRecord] | None:
    """For a non-terminal twin wheel, the two escape paths from hub and clone, if they exist."""
    dom = frozenset(range(g.n) if within is None else within)
    x1, x2, x3 = _twin_parts(g, hole, x)
    core = hole.vertex_set | {x}
    far = hole.vertex_set - {x1, x2, x3}
    p = _escape_path(g, dom, core, far, x)
    q = _escape_path(g, dom, core, far, x2)
    if p is None or q is None:
        return None
    return p, q


def _escape_path(g, dom, core, far, anchor) -> PathRecord | None:
    att = {v: g.adj[v] & core for v in dom - core}
    free = {v for v, a in att.items() if not a}
    starts = sorted(v for v, a in att.items() if a == frozenset({anchor}))

    def good_end(v):
        a = att[v]
        return len(a) == 2 and a <= far and g.has_edge(*a)

    for s in starts:
        parent = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in sorted(g.adj[u] & dom):
                if v in parent or v in core:
                    continue
                parent[v] = u
                if good_end(v):
                    seq = [v]
                    while parent[seq[-1]] is not None:
                        seq.append(parent[seq[-1]])
                    return PathRecord(tuple(reversed(seq)))
                if v in free:
                    queue.append(v)
    return None
