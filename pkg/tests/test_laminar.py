import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holedecomp import families
from holedecomp.graph import Graph, WeightAssignment
from holedecomp.laminar import (
    LaminarityError,
    build_tree_decomposition,
    central_bag,
    check_axioms,
    is_laminar,
    lift_separator,
)
from holedecomp.oracle import treewidth_exact
from holedecomp.separation import Separation

P5 = families.path(5)
U5 = WeightAssignment.uniform(range(5))
LEFT = Separation(frozenset({0}), frozenset({1}), frozenset({2, 3, 4}))
RIGHT = Separation(frozenset({4}), frozenset({3}), frozenset({0, 1, 2}))


def test_laminarity_examples():
    assert is_laminar([LEFT]) == (True, None)
    assert is_laminar([LEFT, RIGHT])[0]
    s1 = Separation(frozenset({0}), frozenset({1, 5}), frozenset({2, 3, 4}))
    s2 = Separation(frozenset({1}), frozenset({0, 2}), frozenset({3, 4, 5}))
    ok, pair = is_laminar([s1, s2])
    assert not ok and pair == (s1, s2)


def test_empty_collection_gives_single_bag():
    td = build_tree_decomposition(P5, range(5), [])
    assert td.bags == (frozenset(range(5)),) and td.parent == (None,)


def test_p5_pair_gives_three_bag_path():
    td = build_tree_decomposition(P5, range(5), [LEFT, RIGHT])
    assert sorted(map(sorted, td.bags)) == [[0, 1], [1, 2, 3], [3, 4]]
    assert len(td.edges) == 2 and check_axioms(P5, td)
    assert td.edge_separation(1) == LEFT and td.edge_separation(2) == RIGHT


def test_crossing_collection_is_rejected():
    c6 = families.cycle(6)
    s1 = Separation(frozenset({0}), frozenset({1, 5}), frozenset({2, 3, 4}))
    s2 = Separation(frozenset({1}), frozenset({0, 2}), frozenset({3, 4, 5}))
    with pytest.raises(LaminarityError):
        build_tree_decomposition(c6, range(6), [s1, s2])


def test_single_separation_central_bag():
    cb = central_bag(P5, range(5), U5, [LEFT], Fraction(1, 2))
    assert cb.bag == {1, 2, 3, 4}
    assert cb.weights[1] == Fraction(2, 5)
    assert cb.weights.of(cb.bag) == 1
    assert not cb.arborescence_hypothesis  # 1/2 + w(C) is not below 1/2
    assert central_bag(P5, range(5), U5, [LEFT], Fraction(1, 4)).arborescence_hypothesis


def test_empty_collection_central_bag():
    cb = central_bag(P5, range(5), U5, [], Fraction(1, 2))
    assert cb.bag == frozenset(range(5)) and dict(cb.weights) == dict(U5)


def test_clique_separations_fold_onto_anchors():
    seps = [LEFT, RIGHT, Separation(frozenset({0, 1}), frozenset({2}), frozenset({3, 4}))]
    cb = central_bag(P5, range(5), U5, seps[:2], Fraction(1, 2))
    assert cb.bag == {1, 2, 3}
    assert cb.weights.of(cb.bag) == 1


def test_lift_examples():
    beta = frozenset({1, 2, 3, 4})
    assert lift_separator(P5, range(5), beta, set()) == frozenset()
    assert lift_separator(P5, range(5), beta, beta) == beta
    assert lift_separator(P5, range(5), beta, {2}) == {1, 2, 3, 4}
    with pytest.raises(ValueError):
        lift_separator(P5, range(5), beta, {0})


def edge_separations(g, bags, edges, rng):
    """Edge separations of a tree decomposition, each ``a`` side pointing away from a random root bag."""
    root = rng.randrange(len(bags))
    adj = {i: set() for i in range(len(bags))}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    out = []
    for a, b in edges:
        side, stack = {a}, [a]
        while stack:
            t = stack.pop()
            for u in adj[t]:
                if u not in side and {t, u} != {a, b}:
                    side.add(u)
                    stack.append(u)
        if root in side:
            side = set(range(len(bags))) - side
        c = bags[a] & bags[b]
        x = frozenset().union(*(bags[t] for t in side)) - c
        out.append(Separation(x, c, frozenset(range(g.n)) - c - x))
    return list(dict.fromkeys(out))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 9), st.floats(0.2, 0.7))
def test_tree_decomposition_separations_rebuild(seed, n, p):
    rng = random.Random(seed)
    g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
    res = treewidth_exact(g)
    seps = edge_separations(g, res.bags, res.edges, rng)
    td = build_tree_decomposition(g, range(n), seps)
    assert check_axioms(g, td)
    assert [td.edge_separation(i + 1) for i in range(len(seps))] == seps
