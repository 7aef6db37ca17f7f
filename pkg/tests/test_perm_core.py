import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dngroups import Permutation, PermutationGroup, build_chain, compose, inverse, is_transitive, orbit, point_stabilizer
from dngroups.chain import contains, elements
from dngroups.constructions import alternating_group, cyclic_group, general_linear_on_vectors, symmetric_group
from dngroups.catalog import builtin_catalog, find_entry
from dngroups.errors import DegreeMismatch, OrderExceedsCap, PointOutOfRange

from . import oracles


def P(cycles, n):
    return Permutation.from_cycles(cycles, n)


perms = st.integers(1, 9).flatmap(lambda n: st.permutations(range(n)).map(Permutation))


def same_degree_pair(n_max=9):
    return st.integers(1, n_max).flatmap(
        lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)))
    ).map(lambda t: (Permutation(t[0]), Permutation(t[1])))


# -- permutations ----------------------------------------------------------------


def test_involution_squares_to_identity():
    t = P([(0, 1)], 4)
    assert compose(t, t).is_identity()


def test_inverse_of_three_cycle():
    assert inverse(P([(0, 1, 2)], 3)) == P([(0, 2, 1)], 3)


def test_compose_applies_left_first():
    # i -> q(p(i)), checked on every point
    p, q = P([(0, 1, 2)], 3), P([(0, 1)], 3)
    r = compose(p, q)
    assert all(r[i] == q[p[i]] for i in range(3))
    assert r == P([(1, 2)], 3)


def test_compose_rejects_mixed_degrees():
    with pytest.raises(DegreeMismatch):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_constructor_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


@given(perms)
def test_inverse_cancels(p):
    assert compose(p, inverse(p)).is_identity()
    assert compose(inverse(p), p).is_identity()


@given(same_degree_pair())
def test_operator_matches_compose(pq):
    p, q = pq
    assert p * q == compose(p, q)
    assert ~(p * q) == (~q) * (~p)


@given(perms)
def test_order_is_lcm_of_cycle_lengths(p):
    k = p.order()
    assert (p**k).is_identity()
    assert all(not (p**j).is_identity() for j in range(1, k))


@given(perms)
def test_cycles_rebuild_the_permutation(p):
    assert Permutation.from_cycles(p.cycles(), len(p)) == p


# -- orbits ----------------------------------------------------------------------


def test_identity_orbit():
    assert orbit([Permutation.identity(3)], 0) == {0}


def test_full_cycle_orbit():
    assert orbit([P([(0, 1, 2, 3, 4)], 5)], 2) == {0, 1, 2, 3, 4}


def test_gl23_is_transitive_on_vectors():
    G = general_linear_on_vectors(2, 3)
    for x in range(8):
        assert G.orbit(x) == set(range(8))


def test_orbit_point_out_of_range():
    with pytest.raises(PointOutOfRange):
        orbit([P([(0, 1)], 3)], 3)


def test_orbit_witnesses_map_point():
    G = general_linear_on_vectors(2, 3)
    w = orbit(G.generators, 0, 8, witnesses=True)
    assert all(g[0] == x for x, g in w.items())


def test_is_transitive_examples():
    assert not is_transitive(PermutationGroup([P([(0, 1)], 3)]))
    assert is_transitive(cyclic_group(5))
    center = PermutationGroup([P([(0, 4), (1, 5), (2, 6), (3, 7)], 8)])
    assert not is_transitive(center)


# -- chains ----------------------------------------------------------------------


def test_chain_sym4_from_transposition_and_four_cycle():
    G = PermutationGroup([P([(0, 1)], 4), P([(0, 1, 2, 3)], 4)])
    assert G.order == 24
    assert len(oracles.closure(G.generators, 4)) == 24


def test_chain_gl23():
    assert general_linear_on_vectors(2, 3).order == 48


def test_chain_trivial_group():
    G = PermutationGroup([Permutation.identity(5)], 5)
    assert G.order == 1
    assert G.chain.base == ()


def test_chain_invariants_hold():
    for G in (symmetric_group(6), general_linear_on_vectors(2, 3), find_entry("M12").group()):
        c = G.chain
        assert c.order == math.prod(len(lv.transversal) for lv in c.levels)
        for g in G.generators:
            assert c.contains(g)
        for lv in c.levels:
            assert all(u[lv.base_point] == x for x, u in lv.transversal.items())


def test_mathieu_orders():
    orders = {e.name: e.group().order for e in builtin_catalog() if e.name.startswith("M2")}
    assert orders["M22"] == 443520
    assert orders["M23"] == 10200960
    assert orders["M24"] == 244823040


def test_contains_examples():
    C3 = cyclic_group(3)
    assert contains(C3.chain, Permutation.identity(3))
    assert not contains(C3.chain, P([(0, 1)], 3))
    A5 = alternating_group(5)
    odd = [g for g in elements(symmetric_group(5).chain, 120) if sum(len(c) - 1 for c in g.cycles()) % 2]
    assert len(odd) == 60
    assert not any(g in A5 for g in odd)


def test_contains_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        cyclic_group(3).chain.contains(Permutation.identity(4))


def test_elements_trivial_and_sym3():
    assert list(elements(PermutationGroup([], 3).chain, 10)) == [Permutation.identity(3)]
    assert len(set(elements(symmetric_group(3).chain, 10))) == 6


def test_elements_m11_degree_12():
    G = find_entry("M11 (degree 12)").group()
    elems = set(elements(G.chain, 10**4))
    assert len(elems) == 7920
    assert elems == {Permutation(g) for g in oracles.closure(G.generators, 12)}


def test_elements_cap():
    with pytest.raises(OrderExceedsCap):
        list(elements(symmetric_group(6).chain, 100))


def test_element_array_matches_stream():
    G = general_linear_on_vectors(2, 3)
    arr = {tuple(int(x) for x in r) for r in G.chain.element_array(10**3)}
    assert arr == set(elements(G.chain, 100))


def test_point_stabilizer_examples():
    assert point_stabilizer(cyclic_group(7), 3).order == 1
    S = point_stabilizer(symmetric_group(4), 3)
    assert S.order == 6 and all(g[3] == 3 for g in S.generators)
    assert point_stabilizer(general_linear_on_vectors(2, 3), 0).order == 6


def test_point_stabilizer_out_of_range():
    with pytest.raises(PointOutOfRange):
        point_stabilizer(symmetric_group(3), 5)


def test_shuffled_generators_same_order():
    rng = random.Random(3)
    for e in builtin_catalog():
        if e.degree > 17:
            continue
        G = e.group()
        gens = list(G.generators)
        rng.shuffle(gens)
        assert PermutationGroup(gens, G.degree).order == G.order
        assert build_chain(G, seed=11).order == G.order


def test_chains_match_closure_on_random_groups():
    from .corpus import random_corpus, as_group

    for n, gens, elems in random_corpus()[:120]:
        G = as_group(n, gens)
        assert G.order == len(elems)
        if G.order <= 10**4:
            assert set(G.chain.elements()) == {Permutation(g) for g in elems}


def test_orbit_stabilizer_random_pairs():
    from .corpus import random_corpus, as_group

    rng = random.Random(5)
    corpus = random_corpus()
    for _ in range(100):
        n, gens, elems = corpus[rng.randrange(len(corpus))]
        G = as_group(n, gens)
        w = rng.randrange(n)
        assert len(G.orbit(w)) * point_stabilizer(G, w).order == G.order


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7).flatmap(lambda n: st.lists(st.permutations(range(n)), min_size=1, max_size=3)), st.randoms())
def test_chain_order_equals_closure(gens, rnd):
    n = len(gens[0])
    G = PermutationGroup([Permutation(g) for g in gens], n)
    elems = oracles.closure(gens, n)
    assert G.order == len(elems)
    # products of members stay members
    a, b = rnd.choice(sorted(elems)), rnd.choice(sorted(elems))
    assert compose(Permutation(a), Permutation(b)) in G
