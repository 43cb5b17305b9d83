"""Tree decompositions of laminar separation families, skew orientation and central bags."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import Graph, WeightAssignment, ball, is_connected
from .separation import Separation, crosses


class LaminarityError(ValueError):
    def __init__(self, pair: tuple[Separation, Separation]):
        super().__init__("collection is not laminar")
        self.pair = pair


class TreeConstructionError(AssertionError):
    pass


class CentralBagError(AssertionError):
    def __init__(self, message: str, sinks: tuple[int, ...] = ()):
        super().__init__(message)
        self.sinks = sinks


def crossing_pair(seps: Sequence[Separation]) -> tuple[Separation, Separation] | None:
    for i, s in enumerate(seps):
        for t in seps[i + 1:]:
            if crosses(s, t):
                return s, t
    return None


def is_laminar(seps: Sequence[Separation]) -> tuple[bool, tuple[Separation, Separation] | None]:
    pair = crossing_pair(seps)
    return pair is None, pair


@dataclass(frozen=True)
class TreeDecomposition:
    """Node 0 is the root; node ``i + 1`` carries separation ``i`` on the edge to its parent."""

    bags: tuple[frozenset[int], ...]
    parent: tuple[int | None, ...]
    separations: tuple[Separation, ...]
    mask: frozenset[int]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(p, t) for t, p in enumerate(self.parent) if p is not None]

    def subtree(self, t: int) -> list[int]:
        kids: dict[int, list[int]] = {}
        for u, p in enumerate(self.parent):
            if p is not None:
                kids.setdefault(p, []).append(u)
        out, stack = [], [t]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(kids.get(u, ()))
        return out

    def edge_separation(self, child: int) -> Separation:
        """Separation of the edge above ``child``, with the child's shore first."""
        p = self.parent[child]
        ce = self.bags[child] & self.bags[p]
        below = set(self.subtree(child))
        d_child = frozenset().union(*(self.bags[u] for u in below)) - ce
        d_rest = frozenset().union(*(self.bags[u] for u in range(len(self.bags)) if u not in below)) - ce
        return Separation(d_child, ce, d_rest)

    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1


def check_axioms(g: Graph, td: TreeDecomposition) -> bool:
    mask = td.mask
    if frozenset().union(*td.bags) != mask:
        return False
    for u, v in g.edges():
        if u in mask and v in mask and not any(u in b and v in b for b in td.bags):
            return False
    for v in mask:
        nodes = {t for t, b in enumerate(td.bags) if v in b}
        # the nodes holding v form a subtree iff exactly one of them has its parent outside
        tops = [t for t in nodes if td.parent[t] is None or td.parent[t] not in nodes]
        if len(tops) != 1:
            return False
    return True


def build_tree_decomposition(g: Graph, mask: Iterable[int], seps: Sequence[Separation]) -> TreeDecomposition:
    """Tree decomposition whose edge separations are exactly ``seps`` (in the given orientation)."""
    dom = frozenset(mask)
    seps = list(seps)
    for s in seps:
        if s.mask != dom or not s.is_valid_in(g, dom):
            raise TreeConstructionError("separation does not live on the mask")
    if len(set(seps)) != len(seps):
        raise TreeConstructionError("separations must be pairwise distinct")
    pair = crossing_pair(seps)
    if pair is not None:
        raise LaminarityError(pair)
    m = len(seps)

    def below(i: int, j: int) -> bool:
        return seps[i].x <= seps[j].x and seps[j].y <= seps[i].y

    parent: list[int | None] = [None]
    for i in range(m):
        ups = [j for j in range(m) if j != i and below(i, j)]
        if ups:
            j = min(ups, key=lambda j: (len(seps[j].x), -len(seps[j].y), j))
            parent.append(j + 1)
        else:
            parent.append(0)
    children: dict[int, list[int]] = {}
    for t in range(1, m + 1):
        children.setdefault(parent[t], []).append(t)
    bags = []
    for t in range(m + 1):
        bag = dom if t == 0 else seps[t - 1].x
        for ch in children.get(t, ()):
            bag = bag & seps[ch - 1].y
        bags.append(frozenset(bag))
    td = TreeDecomposition(tuple(bags), tuple(parent), tuple(seps), dom)
    if not check_axioms(g, td):
        raise TreeConstructionError("tree decomposition axioms fail")
    for i, s in enumerate(seps):
        if td.edge_separation(i + 1) != s:
            raise TreeConstructionError(f"edge above node {i + 1} does not reproduce its separation")
    return td


# ---------------------------------------------------------------------------
# orientation and central bag


@dataclass(frozen=True)
class SkewOrientation:
    heads: tuple[tuple[int, int], ...]  # (tail, head) per tree edge
    sinks: tuple[int, ...]

    @property
    def root(self) -> int | None:
        return self.sinks[0] if len(self.sinks) == 1 else None


def orient(td: TreeDecomposition, w: WeightAssignment, eps: Fraction) -> SkewOrientation:
    """Point every tree edge away from its light shore."""
    arcs = []
    for child in range(1, len(td.bags)):
        p = td.parent[child]
        s = td.edge_separation(child)
        wc, wp = w.of(s.a), w.of(s.b)
        light_c, light_p = wc < eps, wp < eps
        if light_c and not light_p:
            arcs.append((child, p))
        elif light_p and not light_c:
            arcs.append((p, child))
        elif wc != wp:
            arcs.append((child, p) if wc < wp else (p, child))
        else:
            arcs.append((max(child, p), min(child, p)))
    tails = {t for t, _ in arcs}
    sinks = tuple(t for t in range(len(td.bags)) if t not in tails)
    return SkewOrientation(tuple(arcs), sinks)


@dataclass(frozen=True)
class IncidentSeparation:
    separation: Separation  # light shore first
    center: tuple[int, ...]
    anchor: int


@dataclass(frozen=True)
class CentralBag:
    bag: frozenset[int]
    weights: WeightAssignment
    incident: tuple[IncidentSeparation, ...]
    decomposition: TreeDecomposition
    orientation: SkewOrientation
    eps: Fraction
    eps0: Fraction
    arborescence_hypothesis: bool
    single_center_per_clique: bool
    audit: dict = field(default_factory=dict, compare=False)


def central_bag(
    g: Graph,
    mask: Iterable[int],
    w: WeightAssignment,
    seps: Sequence[Separation],
    eps: Fraction,
    centers: Sequence[Iterable[int]] | None = None,
) -> CentralBag:
    """Root bag of the skew orientation together with the anchor-folded weights.

    ``centers[i]`` is the center clique of ``seps[i]``; it defaults to the
    separator itself, which is right for clique separations.
    """
    dom = frozenset(mask)
    eps = Fraction(eps)
    seps = list(seps)
    cs = [tuple(sorted(s.c)) if centers is None else tuple(sorted(centers[i])) for i, s in enumerate(seps)]
    norm = []
    for s in seps:
        if w.of(s.a) >= eps and w.of(s.b) < eps:
            s = s.flipped()
        norm.append(s)
    for s, k in zip(norm, cs):
        if not set(k) <= s.c:
            raise CentralBagError("center must lie inside the separator")
    td = build_tree_decomposition(g, dom, norm)
    ori = orient(td, w, eps)
    if ori.root is None:
        raise CentralBagError("skew orientation is not an in-arborescence", ori.sinks)
    root = ori.root
    beta = td.bags[root]
    incident = []
    for child in range(1, len(td.bags)):
        p = td.parent[child]
        if root not in (child, p):
            continue
        s = td.edge_separation(child)
        if child == root:
            s = s.flipped()
        i = child - 1
        incident.append(IncidentSeparation(s, cs[i], min(cs[i])))
    for child in range(1, len(td.bags)):
        s = td.edge_separation(child)
        light = s.a if td.subtree(child).count(root) == 0 else s.b
        if beta & light:
            raise CentralBagError("central bag meets a light shore")
    if not beta or not is_connected(g, beta):
        raise CentralBagError("central bag is not connected")
    folded = {v: w[v] for v in beta}
    for inc in incident:
        folded[inc.anchor] += w.of(inc.separation.a)
    wx = WeightAssignment(folded)
    eps0 = max((w.of(s.c) for s in norm), default=Fraction(0))
    centers_seen = [frozenset(k) for k in cs]
    return CentralBag(
        bag=beta,
        weights=wx,
        incident=tuple(incident),
        decomposition=td,
        orientation=ori,
        eps=eps,
        eps0=eps0,
        arborescence_hypothesis=eps + eps0 < Fraction(1, 2),
        single_center_per_clique=len(set(centers_seen)) == len(centers_seen),
        audit={"perpendicular": all(not (beta & s.a) for s in norm)},
    )


def lift_separator(g: Graph, parent_mask: Iterable[int], beta: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
    """Radius-2 closed ball of ``ys`` measured inside ``beta``."""
    beta = frozenset(beta)
    ys = frozenset(ys)
    if not ys <= beta or not beta <= frozenset(parent_mask):
        raise ValueError("separator must sit inside the bag, and the bag inside the parent")
    return ball(g, ys, 2, beta)
