from fractions import Fraction
from itertools import combinations

import pytest

from holedecomp import families
from holedecomp.balance import verify_balanced_separator
from holedecomp.detect import is_c4free_odd_signable
from holedecomp.graph import Graph, WeightAssignment
from holedecomp.oracle import (
    OracleCapExceeded,
    balanced_separator_exact,
    check_tree_decomposition,
    generate_class_member,
    sep_star_exact,
    treewidth_exact,
)

HALF = Fraction(1, 2)


@pytest.mark.parametrize(
    "g,tw",
    [(families.cycle(6), 2), (families.complete(4), 3), (families.petersen(), 4),
     (families.path(6), 1), (families.complete(7), 6), (families.cycle(11), 2)],
)
def test_treewidth_values(g, tw):
    res = treewidth_exact(g)
    assert res.width == tw
    assert check_tree_decomposition(g, res.bags, res.edges)
    assert max(len(b) for b in res.bags) == tw + 1


def test_treewidth_cap():
    with pytest.raises(OracleCapExceeded):
        treewidth_exact(families.cycle(14))


def test_separation_number_values():
    assert sep_star_exact(families.path(2)) == 1
    assert sep_star_exact(families.complete(4)) <= 4
    # a singleton subset is only balanced once its vertex is removed
    assert sep_star_exact(families.empty(3)) == 1


def test_balanced_separator_oracle_on_c6():
    c6 = families.cycle(6)
    w = WeightAssignment.uniform(range(6))
    ys, audit = balanced_separator_exact(c6, w, HALF, 3)
    assert len(ys) == 2 and audit.ok
    assert all(not verify_balanced_separator(c6, w, {v}, HALF, 3).ok for v in range(6))


def test_concentrated_weight_is_cut_by_its_vertex():
    p4 = families.path(4)
    w = WeightAssignment({0: Fraction(0), 1: Fraction(1), 2: Fraction(0), 3: Fraction(0)})
    ys, _ = balanced_separator_exact(p4, w, Fraction(0), 1)
    assert ys == {1}


def test_two_balanced_components_need_no_separator():
    g = families.disjoint_union(families.path(2), families.path(2))
    ys, _ = balanced_separator_exact(g, WeightAssignment.uniform(range(4)), HALF, 1)
    assert ys == frozenset()


def test_oracle_separator_is_minimum():
    g = families.three_path_graph("pyramid", [2, 2, 2])
    w = WeightAssignment.uniform(range(g.n))
    ys, _ = balanced_separator_exact(g, w, HALF, 2)
    smaller = [s for s in combinations(range(g.n), len(ys) - 1)
               if verify_balanced_separator(g, w, s, HALF, 2).ok]
    assert smaller == []


def test_generated_members():
    assert generate_class_member(3, 12, 7, "rejection") == generate_class_member(3, 12, 7, "rejection")
    # compositions of two long pyramids need at least 14 vertices to succeed reliably
    for strategy in ("rejection", "constructive", "twojoin", "glue"):
        for seed in range(5):
            g = generate_class_member(3, 14, seed, strategy)
            assert g.n == 14 and g.max_degree() <= 3
            assert is_c4free_odd_signable(g, None).member


def test_named_members():
    assert is_c4free_odd_signable(families.cycle(9), None).member
    assert is_c4free_odd_signable(families.three_path_graph("pyramid", [2, 2, 2]), None).member


def test_unknown_strategy():
    with pytest.raises(ValueError):
        generate_class_member(3, 10, 0, "bogus")


def test_graph_with_no_edges_has_treewidth_zero():
    assert treewidth_exact(Graph(3, [])).width == 0
