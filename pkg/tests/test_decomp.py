import random

import pytest
from hypothesis import given, settings, strategies as st

from kkcalc.decomp import (decompose, is_pure, is_summand, p_part, primary_decomposition,
                           purity_test_orders, realize, realize_torsion, torsion_subgroup,
                           torsionfree_quotient)
from kkcalc.errors import HypothesisViolation, IllFormedMap
from kkcalc.graded import GradedGroup, GradedSubgroup, direct_sum
from kkcalc.groups import FgaGroup, GroupMap, subgroup
from kkcalc.sequences import check_exact

from helpers import rand_fga, rand_finite, rand_graded, rand_subgroup_embedding
from oracles import prime_factors

seeds = st.integers(0, 2 ** 32 - 1)
F = FgaGroup.from_orders
G_ = GradedGroup


def test_torsion_and_free_parts():
    K = G_(F([0, 2]), F([3]))
    Kt, theta = torsion_subgroup(K)
    Kf, pi = torsionfree_quotient(K)
    assert Kt == G_(F([2]), F([3])) and Kf == G_(F([0]), FgaGroup())
    assert theta.is_injective() and pi.is_surjective()
    free = G_(F([0, 0]), FgaGroup())
    assert torsion_subgroup(free)[0].is_trivial
    assert torsionfree_quotient(free)[1].is_isomorphism()
    tors = G_(F([4]), F([9]))
    assert torsion_subgroup(tors)[1].is_isomorphism()
    assert torsionfree_quotient(tors)[0].is_trivial


def test_primary_examples():
    pd = primary_decomposition(G_(F([12]), FgaGroup()))
    assert pd.parts == {2: G_(F([4]), FgaGroup()), 3: G_(F([3]), FgaGroup())}
    assert primary_decomposition(G_(F([2]), F([2]))).parts == {2: G_(F([2]), F([2]))}
    assert primary_decomposition(G_()).parts == {}
    with pytest.raises(HypothesisViolation):
        primary_decomposition(G_(F([0]), FgaGroup()))


@given(seeds)
@settings(max_examples=100)
def test_primary_parts_sum_to_input(seed):
    rng = random.Random(seed)
    K = rand_graded(rng, max_free=0, max_cyclic=3, max_mod=30)
    pd = primary_decomposition(K)
    assert pd.iso.is_isomorphism() and pd.iso.target == K
    for p, P in pd.parts.items():
        for d in P.even.torsion + P.odd.torsion:
            assert prime_factors(d) == [p]
        for j in (0, 1):
            # independent route: the kernel of multiplication by a high power of p
            assert p_part(K[j], p)[0] == P[j]


def test_realize_examples():
    K = G_(F([0]), FgaGroup())
    rec = realize(K, GradedSubgroup(K, ((2,),)))
    assert rec.k_of_As == K and rec.k_of_Aq == G_(F([2]), FgaGroup())
    assert not rec.summand and rec.rows_exact

    K = G_(F([2, 3]), FgaGroup())          # canonical Z/6
    rec = realize(K, GradedSubgroup(K, ((3,),)))
    assert rec.summand and rec.k_of_Aq == G_(F([3]), FgaGroup())
    assert rec.retraction is not None

    K = G_(F([0, 4]), F([9]))
    rec = realize(K, GradedSubgroup(K))
    assert rec.k_of_As.is_trivial and rec.k_of_Aq == K


def test_decompose_example():
    Kt, Kf, rec = decompose(G_(F([0, 4]), F([9])))
    assert Kt == G_(F([4]), F([9])) and Kf == G_(F([0]), FgaGroup())
    assert rec.summand and rec.sum_iso.is_isomorphism()
    assert decompose(G_(F([2]), FgaGroup()))[1].is_trivial
    assert decompose(G_(F([0]), F([0])))[0].is_trivial


@given(seeds)
@settings(max_examples=60)
def test_realization_ladder(seed):
    rng = random.Random(seed)
    K = rand_graded(rng)
    gens = tuple(tuple(K[j].normalize(tuple(rng.randint(-4, 4) for _ in range(K[j].ngens)))
                       for _ in range(rng.randint(0, 2))) for j in (0, 1))
    rec = realize(K, GradedSubgroup(K, gens[0], gens[1]))
    assert rec.rows_exact and rec.verticals_iso
    assert check_exact(rec.six_term).exact
    # boundary is injective: the six-term sequence breaks into short exact pieces
    assert rec.boundary.is_injective()
    if rec.summand:
        assert rec.sum_iso.is_isomorphism()
        assert direct_sum(rec.k_of_As, rec.k_of_Aq) == K


@given(seeds)
@settings(max_examples=60)
def test_realize_torsion_always_splits(seed):
    rng = random.Random(seed)
    K = rand_graded(rng)
    rec = realize_torsion(K)
    assert rec.summand and rec.sum_iso.is_isomorphism()
    assert direct_sum(torsion_subgroup(K)[0], torsionfree_quotient(K)[0]) == K


def test_purity_examples():
    Z = F([0])
    assert not is_pure(subgroup(Z, [(2,)])[1])
    assert not is_pure(subgroup(F([4]), [(2,)])[1])
    Z6 = F([6])
    assert is_pure(subgroup(Z6, [(3,)])[1])
    assert purity_test_orders(subgroup(Z, [(2,)])[1]) == [2]


def test_summand_examples():
    Z = F([0])
    assert not is_summand(subgroup(Z, [(2,)])[1]).summand
    G = F([2, 4])
    rep = is_summand(subgroup(G, [(1, 0)])[1])
    assert rep.summand and rep.retraction.compose(subgroup(G, [(1, 0)])[1]) == GroupMap.identity(F([2]))
    assert is_summand(GroupMap.identity(G)).summand


def test_non_injective_embedding_rejected():
    with pytest.raises(IllFormedMap):
        is_pure(GroupMap.multiplication(F([4]), 2))


def _pure_by_enumeration(inc: GroupMap) -> bool:
    G = inc.codomain
    H = {inc(x) for x in inc.domain.elements()}
    for n in range(1, G.exponent + 1):
        nG = {G.scale(n, x) for x in G.elements()}
        nH = {G.scale(n, h) for h in H}
        if H & nG != nH:
            return False
    return True


@given(seeds)
@settings(max_examples=150)
def test_purity_matches_enumeration(seed):
    rng = random.Random(seed)
    G = rand_finite(rng, 64)
    inc = rand_subgroup_embedding(rng, G)
    assert is_pure(inc) == _pure_by_enumeration(inc)


@given(seeds)
@settings(max_examples=150)
def test_pure_iff_summand(seed):
    rng = random.Random(seed)
    G = rand_fga(rng)
    inc = rand_subgroup_embedding(rng, G)
    rep = is_summand(inc)
    assert is_pure(inc) == rep.summand
    if rep.summand:
        assert rep.retraction.compose(inc) == GroupMap.identity(inc.domain)
