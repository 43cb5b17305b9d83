import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holedecomp import families
from holedecomp.detect import (
    PRISM,
    PYRAMID,
    THETA,
    CapExceeded,
    enumerate_holes,
    find_c4,
    find_even_wheel,
    find_theta_prism_pyramid,
    is_c4free_odd_signable,
    validate_three_path,
    validate_wheel,
)
from holedecomp.graph import Graph
from holedecomp.oracle import subset_census

ALL = {THETA, PRISM, PYRAMID}


def test_find_c4_examples():
    assert find_c4(families.cycle(4)) == {0, 1, 2, 3}
    assert find_c4(families.petersen()) is None
    assert find_c4(families.cycle(6)) is None


def test_three_path_examples():
    cfg = find_theta_prism_pyramid(families.complete_bipartite(2, 3), {THETA})
    assert cfg.kind == THETA and set(cfg.anchors) == {0, 1}
    assert find_theta_prism_pyramid(families.triangular_prism(), {PRISM}).kind == PRISM
    assert find_theta_prism_pyramid(families.cycle(7), ALL) is None


def test_even_wheel_examples():
    w = find_even_wheel(families.hole_with_hub(4, [0, 1, 2, 3]))
    assert w is not None and len(w.spokes) == 4
    assert find_even_wheel(families.hole_with_hub(5, range(5))) is None
    assert find_even_wheel(families.cycle(6)) is None


def test_membership_examples():
    assert is_c4free_odd_signable(families.cycle(6)).member
    pet = is_c4free_odd_signable(families.petersen())
    assert not pet.member and pet.witness_kind == THETA
    assert validate_three_path(families.petersen(), pet.witness)
    for n in range(1, 7):
        assert is_c4free_odd_signable(families.complete(n)).member


def test_hole_enumeration_examples():
    assert len(enumerate_holes(families.cycle(6), 6)) == 1
    assert len(enumerate_holes(families.petersen(), 5)) == 12
    tree = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    assert enumerate_holes(tree, 7) == []


def test_hole_enumeration_visitor_sees_each_hole():
    seen = []
    out = enumerate_holes(families.petersen(), 9, visitor=seen.append)
    assert seen == out
    assert len({h.canonical for h in out}) == len(out)


def test_cap_is_a_distinct_outcome():
    with pytest.raises(CapExceeded):
        is_c4free_odd_signable(families.petersen(), cap=3)


def test_long_pyramid_is_member_and_short_ones_are_not():
    assert is_c4free_odd_signable(families.three_path_graph("pyramid", [2, 2, 2])).member
    res = is_c4free_odd_signable(families.three_path_graph("theta", [2, 3, 3]))
    assert not res.member and res.witness_kind == THETA


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(4, 11), st.floats(0.15, 0.6))
def test_detectors_agree_with_census(seed, n, p):
    g = random_graph(random.Random(seed), n, p)
    cen = subset_census(g)
    assert (find_c4(g) is not None) == cen.c4
    for kind in ALL:
        cfg = find_theta_prism_pyramid(g, {kind}, None)
        assert (cfg is not None) == getattr(cen, kind)
        if cfg is not None:
            assert validate_three_path(g, cfg)
    w = find_even_wheel(g, None)
    assert (w is not None) == cen.even_wheel
    if w is not None:
        assert validate_wheel(g, w)
    holes = {h.vertex_set for h in enumerate_holes(g, g.n, cap=None)}
    assert holes == set(cen.holes)
