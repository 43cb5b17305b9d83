from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holedecomp import families
from holedecomp.graph import GraphError, WeightAssignment, is_anticomplete
from holedecomp.separation import (
    Separation,
    canonical_star_separation,
    crosses,
    f_bound,
    find_star_cutset,
    is_clique_star,
    is_laminar,
    is_skewed,
    minimal_clique_cutsets,
    minimal_clique_separation,
    partition_centers,
)

P5 = families.path(5)
U5 = WeightAssignment.uniform(range(5))


def sep(a, c, b):
    return Separation(frozenset(a), frozenset(c), frozenset(b))


def test_crossing_examples():
    s = sep({0}, {1}, {2, 3, 4})
    assert not crosses(s, s)
    assert not crosses(s, sep({4}, {3}, {0, 1, 2}))


def test_listed_c6_pair_is_laminar_and_a_real_crossing_pair_crosses():
    listed = (sep({0}, {1, 5}, {2, 3, 4}), sep({3}, {2, 4}, {5, 0, 1}))
    assert not crosses(*listed)
    assert crosses(sep({0}, {1, 5}, {2, 3, 4}), sep({1}, {0, 2}, {3, 4, 5}))


def test_separation_rejects_overlap():
    with pytest.raises(GraphError):
        sep({0}, {0, 1}, {2})


def test_skew_examples():
    s = sep({0}, {1}, {2, 3, 4})
    r = is_skewed(s, U5, Fraction(1, 2))
    assert r.skewed and r.separation.a == {0}
    assert not is_skewed(s, U5, Fraction(1, 10)).skewed
    r = is_skewed(s.flipped(), U5, Fraction(1))
    assert r.skewed and r.separation.a == {0}


def test_canonical_star_examples():
    cs = canonical_star_separation(P5, range(5), U5, {2})
    assert cs.separation == sep({3, 4}, {1, 2}, {0}) and cs.tie
    k13 = families.star(3)
    cs = canonical_star_separation(k13, range(4), WeightAssignment.uniform(range(4)), {0})
    assert cs.separation == sep({1, 2, 3}, {0}, set())
    c6 = families.cycle(6)
    cs = canonical_star_separation(c6, range(6), WeightAssignment.uniform(range(6)), {0})
    assert cs.separation == sep(set(), {0, 1, 5}, {2, 3, 4}) and not cs.tie


def test_minimal_clique_cutset_examples():
    assert minimal_clique_cutsets(P5, range(5), 1) == [{1}, {2}, {3}]
    assert minimal_clique_cutsets(families.two_triangles_sharing_edge(), range(4), 2) == [{0, 1}]
    c6 = families.cycle(6)
    assert all(minimal_clique_cutsets(c6, range(6), k) == [] for k in (1, 2))


def test_minimal_clique_separation_takes_heaviest_side():
    s = minimal_clique_separation(P5, range(5), U5, {1})
    assert s == sep({0}, {1}, {2, 3, 4})
    with pytest.raises(GraphError):
        minimal_clique_separation(P5, range(5), U5, {0})


def test_partition_examples():
    assert f_bound(2, 3) == 33
    assert len(partition_centers(families.cycle(9), [{0}, {3}, {6}], 1, 2)) == 1
    assert len(partition_centers(families.complete(3), [{0}, {1}, {2}], 1, 2)) == 3
    with pytest.raises(GraphError):
        partition_centers(families.star(4), [{0}], 1, 3)


def test_star_cutset_examples():
    center, cut = find_star_cutset(P5)
    assert center == 2 and cut == {1, 2, 3}
    assert find_star_cutset(families.cycle(6)) is None
    assert find_star_cutset(families.three_path_graph("pyramid", [2, 2, 2])) is None


def test_clique_star():
    assert is_clique_star(P5, {1, 2, 3}, {2})
    assert not is_clique_star(P5, {0, 2}, {2})


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 9), st.data())
def test_star_cutset_matches_brute_force_on_paths_and_cycles(n, data):
    from itertools import combinations

    from holedecomp.graph import components

    g = data.draw(st.sampled_from([families.path(n), families.cycle(n)]))
    brute = False
    for x in range(n):
        nb = sorted(g.adj[x])
        for k in range(len(nb) + 1):
            for s in combinations(nb, k):
                if len(components(g, set(range(n)) - {x} - set(s))) >= 2:
                    brute = True
    assert (find_star_cutset(g) is not None) == brute


def test_clique_separations_of_one_size_are_laminar(small_corpus):
    for delta, _, g in small_corpus:
        w = WeightAssignment.uniform(range(g.n))
        for k in range(1, delta + 2):
            cuts = minimal_clique_cutsets(g, range(g.n), k)
            seps = [minimal_clique_separation(g, range(g.n), w, c) for c in cuts]
            assert is_laminar(seps)


def test_partition_classes_are_anticomplete(small_corpus):
    for delta, _, g in small_corpus:
        centers = [{v} for v in range(g.n)] + [set(e) for e in g.edges()]
        classes = partition_centers(g, centers, 2, delta)
        assert len(classes) <= f_bound(2, delta)
        for cls in classes:
            for i, a in enumerate(cls):
                for b in cls[i + 1:]:
                    assert not (a & b) and is_anticomplete(g, a, b)


def test_star_separations_of_anticomplete_centers_do_not_cross():
    # class members are theta-free; keep those with no clique cutset
    from holedecomp.oracle import generate_class_member

    checked = 0
    for seed in range(1500):
        g = generate_class_member(3 + seed % 2, 8 + seed % 9, seed, ("constructive", "rejection")[seed % 2])
        dom = range(g.n)
        if any(minimal_clique_cutsets(g, dom, k) for k in range(1, 6)):
            continue
        w = WeightAssignment.uniform(dom)
        seps = {v: canonical_star_separation(g, dom, w, {v}).separation for v in dom}
        for u in dom:
            for v in dom:
                if u < v and v not in g.closed_neighborhood([u]) and seps[u].proper and seps[v].proper:
                    assert not crosses(seps[u], seps[v])
                    checked += 1
    assert checked > 0
