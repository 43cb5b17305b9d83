"""Balanced-separator extraction by nested central bags, plus the parameter calculator."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Iterable

import networkx as nx

from .balance import BalancedSeparatorCertificate, min_boundedness, verify_balanced_separator
from .detect import DEFAULT_CAP, find_theta_prism_pyramid, is_c4free_odd_signable, THETA
from .graph import Graph, GraphError, WeightAssignment, components, is_connected
from .laminar import CentralBagError, LaminarityError, central_bag, crossing_pair, lift_separator
from .oracle import OracleCapExceeded, sep_star_exact, treewidth_exact
from .separation import (
    Separation,
    canonical_star_separation,
    find_star_cutset,
    iter_cliques,
    minimal_clique_cutsets,
    minimal_clique_separation,
    partition_centers,
)
from .wheels import enumerate_forcers

LADDER = 2**32
EXACT_TW_LIMIT = 13


# ---------------------------------------------------------------------------
# parameters


def f2(delta: int) -> int:
    return 2 * (delta + 1) ** 2 + 1


def big_delta(d: int, delta: int) -> int:
    """d + d*delta + ... + d*delta**d."""
    return sum(d * delta**i for i in range(d + 1))


class UnsatisfiableParameters(ValueError):
    def __init__(self, message: str, wmax_ceiling: Fraction):
        super().__init__(message)
        self.wmax_ceiling = wmax_ceiling


@dataclass(frozen=True)
class PipelineParams:
    delta: int
    c: Fraction
    d: int
    d_clean: int
    f2: int
    wmax: Fraction
    wmax_below_inverse_delta: bool
    hypothesis_waived: bool = False

    @property
    def big_delta(self) -> int:
        return big_delta(self.d, self.delta)

    @property
    def tw_bound(self) -> Fraction:
        return Fraction(self.big_delta) / (1 - self.c)

    @property
    def strong_stage_budget(self) -> int:
        return 2 * self.f2 * self.delta + 2 * (self.delta - 1)


def params_for(delta: int, wmax: Fraction | int | str = 0) -> PipelineParams:
    """Smallest admissible d, then the smallest c on a 2**-32 ladder meeting the main inequality."""
    if delta < 1:
        raise ValueError("delta must be positive")
    wmax = Fraction(wmax)
    f = f2(delta)
    d = max(49 * delta + 4 * f * delta - 4, 2 * f * delta + 2 * delta + 1, 2 * delta - 1)
    d_clean = 47 * delta + 2 * f * delta - 2
    s = delta + delta**2
    k = 3 * f * delta * 2**delta + 2 * (delta - 1) * 2**delta
    room = Fraction(1, 2) - wmax * s
    if room <= 0:
        raise UnsatisfiableParameters(f"w^max must be below {Fraction(1, 2 * s)}", Fraction(1, 2 * s))
    t = room / (1 + k * s)
    r = Fraction(ceil(t * LADDER) - 1, LADDER)
    if r <= 0:
        raise UnsatisfiableParameters("no c on the ladder satisfies the inequality", Fraction(1, 2 * s))
    c = 1 - r
    assert (1 - c) * (1 + k * s) + wmax * s < Fraction(1, 2)
    return PipelineParams(delta, c, d, d_clean, f, wmax, wmax < Fraction(1, big_delta(d, delta)))


# ---------------------------------------------------------------------------
# trace records


@dataclass(frozen=True)
class Stage:
    kind: str
    bag: frozenset[int]
    weights: WeightAssignment
    collection: tuple[Separation, ...] = ()
    centers: tuple[tuple[int, ...], ...] = ()
    cost: int = 0


@dataclass(frozen=True)
class LiftStep:
    level: int
    separator: frozenset[int]
    boundedness: int
    fallback: bool


@dataclass
class DecompTrace:
    stages: list[Stage] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    lifts: list[LiftStep] = field(default_factory=list)
    found_at: int | None = None
    found_by: str = ""

    @property
    def budget_used(self) -> int:
        return sum(s.cost for s in self.stages)


@dataclass(frozen=True)
class PipelineResult:
    certificate: BalancedSeparatorCertificate
    trace: DecompTrace
    tight_d: int


class NotInClass(GraphError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class PipelineAssertionError(AssertionError):
    def __init__(self, message: str, trace: DecompTrace):
        super().__init__(message)
        self.trace = trace


class BudgetExhausted(RuntimeError):
    def __init__(self, message: str, trace: DecompTrace):
        super().__init__(message)
        self.trace = trace


class _Found(Exception):
    def __init__(self, separator: frozenset[int], how: str):
        self.separator = separator
        self.how = how


# ---------------------------------------------------------------------------
# separators straight from a tree decomposition


def _decomposition_bags(g: Graph, mask: frozenset[int]) -> tuple[list[frozenset[int]], int, bool]:
    if len(mask) <= EXACT_TW_LIMIT:
        res = treewidth_exact(g, mask)
        return list(res.bags), res.width, True
    h = nx.Graph()
    h.add_nodes_from(mask)
    h.add_edges_from((u, v) for u, v in g.edges() if u in mask and v in mask)
    width, tree = nx.algorithms.approximation.treewidth_min_fill_in(h)
    return [frozenset(b) for b in tree.nodes], width, False


def centroid_separator(g: Graph, mask: Iterable[int], w: WeightAssignment, c: Fraction) -> frozenset[int]:
    """Smallest decomposition bag whose removal leaves only components of weight at most ``c``."""
    dom = frozenset(mask)
    bags, _, _ = _decomposition_bags(g, dom)
    for bag in sorted(bags, key=lambda b: (len(b), sorted(b))):
        if all(w.of(z) <= c for z in components(g, dom - bag)):
            return bag
    raise GraphError(f"no decomposition bag is {c}-balanced")


def prune_separator(g: Graph, w: WeightAssignment, ys: Iterable[int], c: Fraction, mask: Iterable[int]) -> frozenset[int]:
    """Drop vertices (largest index first) while every component stays within ``c``."""
    dom = frozenset(mask)
    ys = set(ys)
    for v in sorted(ys, reverse=True):
        trial = ys - {v}
        if all(w.of(z) <= c for z in components(g, dom - trial)):
            ys = trial
    return frozenset(ys)


def _neighbourhood_separator(g: Graph, mask: frozenset[int], w: WeightAssignment, c: Fraction, max_k: int = 2):
    for size in range(1, max_k + 1):
        for k in iter_cliques(g, mask, size):
            cand = g.closed_neighborhood(k, mask)
            if all(w.of(z) <= c for z in components(g, mask - cand)):
                return cand
    return None


# ---------------------------------------------------------------------------
# the driver


class _Run:
    def __init__(self, g: Graph, c: Fraction, delta: int, cap, shortcircuit: bool = True):
        self.g = g
        self.shortcircuit = shortcircuit
        self.c = c
        self.eps = 1 - c
        self.delta = delta
        self.cap = cap
        self.trace = DecompTrace()
        self.levels: list[tuple[frozenset[int], WeightAssignment]] = []

    @property
    def current(self):
        return self.levels[-1]

    def push(self, kind, bag, weights, seps=(), centers=(), cost=2):
        self.levels.append((bag, weights))
        self.trace.stages.append(Stage(kind, bag, weights, tuple(seps), tuple(tuple(k) for k in centers), cost))

    def fail(self, message: str):
        raise PipelineAssertionError(message, self.trace)

    # clique-free bag -------------------------------------------------------

    def clique_free(self):
        last_k = 0
        rounds = 0
        while True:
            mask, w = self.current
            k, cuts = self._smallest_clique_cutsets(mask)
            if k is None:
                return
            if k <= last_k:
                self.fail(f"clique cutset of size {k} survived a round at size {last_k}")
            last_k = k
            rounds += 1
            seps = []
            for cut in cuts:
                s = minimal_clique_separation(self.g, mask, w, cut)
                if self.shortcircuit and w.of(s.b) <= self.c:
                    raise _Found(frozenset(cut), "balanced clique cutset")
                seps.append(s)
            pair = crossing_pair(seps)
            if pair is not None:
                self.fail(f"minimal clique separations of size {k} cross")
            cb = self._central(mask, w, seps, None)
            self.push("clique_free", cb.bag, cb.weights, seps, [sorted(s.c) for s in seps])
        # unreachable

    def _smallest_clique_cutsets(self, mask):
        for k in range(1, self.delta + 2):
            cuts = minimal_clique_cutsets(self.g, mask, k)
            if cuts:
                return k, cuts
        return None, []

    def _central(self, mask, w, seps, centers):
        try:
            return central_bag(self.g, mask, w, seps, self.eps, centers)
        except (CentralBagError, LaminarityError) as exc:
            self.trace.notes.append(f"central bag unavailable ({exc}); using a decomposition bag")
            raise _Found(centroid_separator(self.g, mask, w, self.c), "decomposition bag") from exc

    # forcer decompositions ----------------------------------------------------

    def forcer_decomposition(self, kind: str):
        base_mask, _ = self.current
        forcers = enumerate_forcers(self.g, kind, self.cap, base_mask)
        centers = sorted({f.center for f in forcers})
        k = 2 if kind == "strong" else 1
        classes = partition_centers(self.g, [list(c) for c in centers], k, self.delta, base_mask) if centers else []
        self.clique_free()
        done: set[int] = set()
        stage_kind = f"{kind}_forcer"
        while True:
            mask, w = self.current
            active = [f for f in forcers if f.active_in(mask)]
            if not active:
                return
            active_centers = {frozenset(f.center) for f in active}
            todo = [i for i, cls in enumerate(classes) if i not in done and active_centers & set(cls)]
            if not todo:
                self.fail(f"{len(active)} {kind} forcer(s) stay active after every class was processed")
            sigma = todo[0]
            done.add(sigma)
            seps, used = [], []
            for cen in classes[sigma]:
                if not cen <= mask:
                    continue
                cs = canonical_star_separation(self.g, mask, w, cen)
                s = cs.separation
                if w.of(s.b) <= self.c:
                    raise _Found(self.g.closed_neighborhood(cen, mask), "balanced clique-star neighbourhood")
                if not s.a or s in seps:
                    continue
                seps.append(s)
                used.append(sorted(cen))
            if not seps:
                continue
            if crossing_pair(seps) is not None:
                self.fail("canonical star separations of one center class cross")
            cb = self._central(mask, w, seps, used)
            self.push(stage_kind, cb.bag, cb.weights, seps, used)
            self.clique_free()

    # terminal bag -------------------------------------------------------------

    def terminal(self) -> frozenset[int]:
        mask, w = self.current
        self.trace.stages.append(Stage("terminal", mask, w, cost=0))
        for v in sorted(mask):
            cand = self.g.closed_neighborhood([v], mask)
            if all(w.of(z) <= self.c for z in components(self.g, mask - cand)):
                raise _Found(cand, "balanced vertex neighbourhood in the terminal bag")
        star = find_star_cutset(self.g, mask)
        if star is not None:
            if self._no_star_cutset_hypotheses(mask):
                self.fail(f"terminal bag has a star cutset centred at {star[0]} despite meeting every hypothesis")
            self.trace.notes.append(f"terminal bag has a star cutset centred at {star[0]}; hypotheses not all met")
        return centroid_separator(self.g, mask, w, self.c)

    def _no_star_cutset_hypotheses(self, mask) -> bool:
        if self._smallest_clique_cutsets(mask)[0] is not None:
            return False
        if find_theta_prism_pyramid(self.g, (THETA,), self.cap, mask) is not None:
            return False
        if enumerate_forcers(self.g, "strong", self.cap, mask):
            return False
        return not enumerate_forcers(self.g, "twin", self.cap, mask)

    # lifting ------------------------------------------------------------------

    def lift(self, level: int, ys: frozenset[int]) -> frozenset[int]:
        g, c = self.g, self.c
        mask, w = self.levels[level]
        self.trace.lifts.append(LiftStep(level, ys, min_boundedness(g, ys, mask), False))
        for i in range(level, 0, -1):
            parent_mask, parent_w = self.levels[i - 1]
            lifted = lift_separator(g, parent_mask, self.levels[i][0], ys)
            fallback = False
            if not all(parent_w.of(z) <= c for z in components(g, parent_mask - lifted)):
                self.trace.notes.append(f"lift into level {i - 1} is unbalanced; recomputed there")
                lifted = centroid_separator(g, parent_mask, parent_w, c)
                fallback = True
            ys = lifted
            self.trace.lifts.append(LiftStep(i - 1, ys, min_boundedness(g, ys, parent_mask), fallback))
        return ys


@dataclass(frozen=True)
class StageOutcome:
    """Bag reached by one phase of the pipeline, or the separator that cut it short."""

    bag: frozenset[int]
    weights: WeightAssignment
    stages: tuple[Stage, ...]
    found: frozenset[int] | None = None
    found_by: str = ""


def _phase(g, mask, w, c, delta, cap, body, shortcircuit=True) -> StageOutcome:
    run = _Run(g, Fraction(c), g.max_degree() if delta is None else delta, cap, shortcircuit)
    run.levels.append((frozenset(mask), w))
    try:
        body(run)
    except _Found as hit:
        bag, wx = run.current
        return StageOutcome(bag, wx, tuple(run.trace.stages), hit.separator, hit.how)
    bag, wx = run.current
    return StageOutcome(bag, wx, tuple(run.trace.stages))


def clique_free_bag(
    g: Graph, mask: Iterable[int], w: WeightAssignment, c: Fraction | str = Fraction(1, 2),
    delta: int | None = None, cap: int | None = DEFAULT_CAP, shortcircuit: bool = True,
) -> StageOutcome:
    """Contract ``mask`` until it has no clique cutset.

    With ``shortcircuit`` a clique cutset that is already balanced ends the
    phase early and is reported in ``found``; without it the phase always
    contracts.
    """
    return _phase(g, mask, w, c, delta, cap, lambda run: run.clique_free(), shortcircuit)


def forcer_decomposition(
    g: Graph, mask: Iterable[int], w: WeightAssignment, kind: str, c: Fraction | str = Fraction(1, 2),
    delta: int | None = None, cap: int | None = DEFAULT_CAP,
) -> StageOutcome:
    if kind not in ("strong", "twin"):
        raise ValueError("kind must be 'strong' or 'twin'")
    return _phase(g, mask, w, c, delta, cap, lambda run: run.forcer_decomposition(kind))


def compute_balanced_separator(
    g: Graph,
    w: WeightAssignment,
    c: Fraction | str | int = Fraction(1, 2),
    d: int | None = None,
    *,
    delta: int | None = None,
    shortcircuit: bool = True,
    waive_membership: bool = False,
    cap: int | None = DEFAULT_CAP,
) -> PipelineResult:
    """Certified (w, c, d)-balanced separator of a connected class member.

    With ``d=None`` (tight mode) the certificate carries the least d that
    verifies; otherwise it must verify at the given d.
    """
    c = Fraction(c)
    if not Fraction(1, 2) <= c < 1:
        raise ValueError("c must lie in [1/2, 1)")
    dom = frozenset(range(g.n))
    if not dom or not is_connected(g, dom):
        raise GraphError("graph must be nonempty and connected")
    if w.domain != dom:
        raise GraphError("weights must cover every vertex")
    if not waive_membership:
        res = is_c4free_odd_signable(g, cap)
        if not res.member:
            raise NotInClass(f"graph contains a {res.witness_kind}", res.witness)
    delta = g.max_degree() if delta is None else delta
    run = _Run(g, c, delta, cap)
    run.levels.append((dom, w))
    try:
        if shortcircuit:
            quick = _neighbourhood_separator(g, dom, w, c)
            if quick is not None:
                raise _Found(quick, "balanced clique neighbourhood")
        run.forcer_decomposition("strong")
        run.forcer_decomposition("twin")
        ys = run.terminal()
        run.trace.found_by = "terminal decomposition bag"
    except _Found as hit:
        ys = hit.separator
        run.trace.found_by = hit.how
    run.trace.found_at = len(run.levels) - 1
    if d is not None and run.trace.budget_used > d:
        raise BudgetExhausted(f"stages consumed {run.trace.budget_used} > d={d}", run.trace)
    top = prune_separator(g, w, run.lift(len(run.levels) - 1, frozenset(ys)), c, dom)
    tight = min_boundedness(g, top, dom)
    d_used = tight if d is None else d
    audit = verify_balanced_separator(g, w, top, c, d_used, dom)
    if not audit.ok:
        raise PipelineAssertionError(f"final separator fails verification: {audit.reason}", run.trace)
    cert = BalancedSeparatorCertificate(top, audit.centers, d_used, audit.component_weights, c, d_used, dom)
    return PipelineResult(cert, run.trace, tight)


def compute_with_paper_params(g: Graph, w: WeightAssignment, **kwargs) -> tuple[PipelineResult, PipelineParams]:
    delta = g.max_degree()
    try:
        params = params_for(delta, w.max)
    except UnsatisfiableParameters:
        base = params_for(delta, 0)
        params = PipelineParams(base.delta, base.c, base.d, base.d_clean, base.f2, w.max, False, True)
    return compute_balanced_separator(g, w, params.c, params.d, delta=delta, **kwargs), params


# ---------------------------------------------------------------------------
# separation number against treewidth


@dataclass(frozen=True)
class SandwichResult:
    sep_star: int
    tw: int
    ok: bool


def sep_tw_sandwich_check(g: Graph, c: Fraction | str = Fraction(1, 2), max_n: int = 10) -> SandwichResult:
    c = Fraction(c)
    if g.n > max_n:
        raise OracleCapExceeded(f"sandwich check capped at n={max_n}")
    s = sep_star_exact(g, c, max_n)
    tw = treewidth_exact(g, max_n=max_n).width
    ok = s <= tw + 1 and (tw + 1) * (1 - c) <= s
    return SandwichResult(s, tw, ok)
