import random
from fractions import Fraction
from itertools import combinations

import pytest

from holedecomp import families
from holedecomp.balance import verify_balanced_separator
from holedecomp.graph import Graph, WeightAssignment, components
from holedecomp.pipeline import (
    NotInClass,
    big_delta,
    clique_free_bag,
    compute_balanced_separator,
    f2,
    forcer_decomposition,
    params_for,
    sep_tw_sandwich_check,
)
from holedecomp.separation import minimal_clique_cutsets
from holedecomp.wheels import enumerate_forcers

HALF = Fraction(1, 2)


def uniform(g):
    return WeightAssignment.uniform(range(g.n))


def test_parameter_formulas():
    assert f2(3) == 33
    assert big_delta(3, 2) == 3 + 6 + 12 + 24 == 45
    p = params_for(3)
    assert p.d == 539 and p.f2 == 33
    assert HALF <= p.c < 1


def test_params_report_unsatisfiable_wmax():
    from holedecomp.pipeline import UnsatisfiableParameters

    with pytest.raises(UnsatisfiableParameters) as info:
        params_for(2, Fraction(1, 2))
    assert info.value.wmax_ceiling == Fraction(1, 12)


def test_clique_free_bag_leaves_c6_alone():
    c6 = families.cycle(6)
    out = clique_free_bag(c6, range(6), uniform(c6))
    assert out.bag == frozenset(range(6)) and out.stages == () and out.found is None


def test_clique_free_bag_on_p5():
    p5 = families.path(5)
    assert clique_free_bag(p5, range(5), uniform(p5)).found == {2}
    out = clique_free_bag(p5, range(5), uniform(p5), shortcircuit=False)
    assert out.found is None and len(out.bag) < 5
    assert not any(minimal_clique_cutsets(p5, out.bag, k) for k in (1, 2))
    assert out.weights.total == 1


def test_clique_free_bag_on_two_triangles():
    g = families.two_triangles_sharing_edge()
    out = clique_free_bag(g, range(4), uniform(g), shortcircuit=False)
    assert len(out.bag) == 3 and g.is_clique(out.bag)
    assert out.weights.total == 1 and max(out.weights.values()) == HALF


def test_clean_input_strong_phase_is_identity():
    c6 = families.cycle(6)
    out = forcer_decomposition(c6, range(6), uniform(c6), "strong")
    assert out.stages == () and out.bag == frozenset(range(6))


def test_strong_phase_deactivates_forcers(small_corpus):
    seen = 0
    for _, _, g in small_corpus:
        forcers = enumerate_forcers(g, "strong", None)
        if not forcers:
            continue
        seen += 1
        out = forcer_decomposition(g, range(g.n), uniform(g), "strong", cap=None)
        if out.found is not None:
            assert verify_balanced_separator(g, uniform(g), out.found, HALF, g.n).ok
            continue
        assert not any(f.active_in(out.bag) for f in forcers)
        assert enumerate_forcers(g, "strong", None, out.bag) == []
    assert seen > 0


def test_star_separator():
    k14 = families.star(4)
    cert = compute_balanced_separator(k14, uniform(k14), HALF, 1).certificate
    assert cert.separator == {0}
    assert cert.component_weights == (Fraction(1, 5),) * 4


def test_c6_separator_has_minimum_size():
    c6 = families.cycle(6)
    w = uniform(c6)
    cert = compute_balanced_separator(c6, w, HALF, 3).certificate
    brute = min(
        k for k in range(7)
        for ys in combinations(range(6), k)
        if all(w.of(z) <= HALF for z in components(c6, set(range(6)) - set(ys)))
    )
    assert len(cert.separator) == brute == 2
    audit = verify_balanced_separator(c6, w, cert.separator, HALF, 3)
    assert audit.ok and len(audit.centers) == 1


def test_verifier_examples():
    c6 = families.cycle(6)
    w = uniform(c6)
    assert not verify_balanced_separator(c6, w, set(), HALF, 3).ok
    assert verify_balanced_separator(c6, w, range(6), HALF, 3).centers == (0,)
    p7 = families.path(7)
    audit = verify_balanced_separator(p7, uniform(p7), range(7), HALF, 2)
    assert audit.ok and len(audit.centers) == 2
    audit = verify_balanced_separator(c6, w, {0, 3}, HALF, 3)
    assert audit.ok and audit.centers == (0,)


def test_non_member_is_rejected_with_witness():
    with pytest.raises(NotInClass):
        compute_balanced_separator(families.petersen(), uniform(families.petersen()))


def test_sandwich_examples():
    tree = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    r = sep_tw_sandwich_check(tree)
    assert r.tw == 1 and r.ok
    r = sep_tw_sandwich_check(families.complete(4))
    assert r.tw == 3 and r.sep_star <= 4 and r.ok


def test_sandwich_on_random_graphs():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(2, 9)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        assert sep_tw_sandwich_check(g, rng.choice([HALF, Fraction(2, 3)])).ok


def test_corpus_certificates_and_traces(small_corpus):
    for delta, _, g in small_corpus:
        w = uniform(g)
        for shortcircuit in (True, False):
            res = compute_balanced_separator(g, w, HALF, None, shortcircuit=shortcircuit, cap=None)
            cert = res.certificate
            assert verify_balanced_separator(g, w, cert.separator, HALF, cert.d).ok
            prev = frozenset(range(g.n))
            for st in res.trace.stages:
                assert st.weights.total == 1
                assert st.bag <= prev
                if st.kind != "terminal":
                    assert st.bag < prev
                prev = st.bag
