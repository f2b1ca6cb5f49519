import math

import pytest

import multiholo as mh
from multiholo.errors import CapExceededError
from multiholo.groups import subgroup_as_group
from multiholo.oracle import (
    brute_automorphisms,
    brute_holomorph,
    brute_normalizer,
    oracle_T_order,
    oracle_regular_subgroups,
)


def test_normalizer_of_identity_is_everything():
    for n in (1, 2, 3, 4):
        slice_ = brute_normalizer(n, [tuple(range(n))])
        assert slice_.order == math.factorial(n)


def test_normalizer_degree_cap():
    with pytest.raises(CapExceededError):
        brute_normalizer(9, [tuple(range(9))])


def test_brute_holomorph_sizes():
    assert brute_holomorph(mh.cyclic(5)).order == 20
    assert brute_holomorph(mh.symmetric(3)).order == 36


def test_brute_holomorph_matches_built(pipeline):
    for name in ["C2", "C3", "C4", "C5", "C6", "C7", "C2xC2", "S3", "D3"]:
        G = mh.build_catalog_group(name)
        hol = mh.build_holomorph(G)
        built = sorted(hol.realized(i) for i in range(hol.order))
        assert built == sorted(brute_holomorph(G).elements), name


def test_oracle_t_orders():
    assert oracle_T_order(mh.cyclic(2)) == 1
    assert oracle_T_order(mh.cyclic(5)) == 1
    assert oracle_T_order(mh.symmetric(3)) == 2


def test_brute_automorphism_counts():
    assert len(brute_automorphisms(mh.cyclic(5))) == 4
    assert len(brute_automorphisms(mh.symmetric(3))) == 6
    assert len(brute_automorphisms(mh.build_catalog_group("C2xC2"))) == 6


def test_regular_subgroup_counts_match_triplets():
    for name in ["C2", "C3", "C4", "C5", "C6", "C2xC2", "S3"]:
        G = mh.build_catalog_group(name)
        aut = mh.automorphism_group(G)
        hol = mh.build_holomorph(G, aut)
        trips = mh.enumerate_regular_triplets(G, aut)
        m = hol.m
        distinct = {
            tuple(sorted(t.g.images[x] * m + t.f.images[x] for x in range(G.order)))
            for t in trips
        }
        oracle = oracle_regular_subgroups(hol)
        iso = [
            sub
            for sub in oracle
            if mh.are_isomorphic(G, subgroup_as_group(hol, sub)[0]) is not None
        ]
        assert sorted(distinct) == iso, name
        # sanity: every oracle subgroup really is regular
        for sub in oracle:
            assert len({i // m for i in sub}) == G.order


def test_regular_subgroups_see_non_isomorphic_copies():
    # the holomorph of S3 contains regular cyclic subgroups of order 6
    G = mh.symmetric(3)
    hol = mh.build_holomorph(G)
    oracle = oracle_regular_subgroups(hol)
    kinds = set()
    for sub in oracle:
        as_group, _ = subgroup_as_group(hol, sub)
        kinds.add(mh.are_isomorphic(G, as_group) is not None)
    assert kinds == {True, False}


def test_oracle_cap():
    G = mh.build_catalog_group("C2xC2xC2")
    hol = mh.build_holomorph(G)
    with pytest.raises(CapExceededError):
        oracle_regular_subgroups(hol)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["C8", "C2xC4", "C2xC2xC2", "D4", "Q8"])
def test_order8_oracle_agreement(pipeline, name):
    G = pipeline.group(name)
    hol = pipeline.hol(name)
    brute = brute_holomorph(G, cap=8)
    built = sorted(hol.realized(i) for i in range(hol.order))
    assert built == sorted(brute.elements)
    nhol = brute_normalizer(8, brute.elements, cap=8)
    assert nhol.order % brute.order == 0
    assert len(pipeline.entries(name)) == nhol.order // brute.order
