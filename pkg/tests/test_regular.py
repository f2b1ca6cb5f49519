import random

import pytest

import multiholo as mh
from multiholo.errors import InternalConsistencyError
from multiholo.holomorph import compose, identity_perm, inversion_perm, left_translation
from multiholo.oracle import oracle_T_order, oracle_regular_subgroups

SMALL = ["C2", "C3", "C4", "C5", "C6", "C2xC2", "S3"]
CENTERLESS = ["S3", "D5", "D7", "A4", "S4", "A5"]


def _triplet_laws_hold(G, aut, trip):
    n = G.order
    mul = G.mul_table
    cmul = aut.carrier.mul_table
    f, g, h = trip.f.images, trip.g.images, trip.h.images
    for x in range(n):
        if h[x] != cmul[aut.conj[g[x]]][f[x]]:
            return False
        rowf = aut.rows[f[x]]
        rowh = aut.rows[h[x]]
        for y in range(n):
            if g[mul[x][y]] != mul[g[x]][rowf[g[y]]]:
                return False
            if g[mul[x][y]] != mul[rowh[g[y]]][g[x]]:
                return False
    return True


@pytest.mark.parametrize("name", ["C5", "S3", "D5", "A4"])
def test_triplet_laws_exhaustive(pipeline, name):
    G, aut = pipeline.group(name), pipeline.aut(name)
    trips = pipeline.triplets(name)
    assert trips, name
    for trip in trips:
        assert trip.f.is_homomorphism()
        assert trip.h.is_homomorphism()
        assert trip.g.is_bijective() and trip.g.images[0] == 0
        assert _triplet_laws_hold(G, aut, trip)


def test_triplet_count_c2():
    trips = mh.enumerate_regular_triplets(mh.cyclic(2), mh.automorphism_group(mh.cyclic(2)))
    assert len(trips) == 1


def test_triplets_with_trivial_f_are_automorphisms(pipeline):
    G, aut = pipeline.group("S3"), pipeline.aut("S3")
    trivial = [t for t in pipeline.triplets("S3") if set(t.f.images) == {0}]
    assert len(trivial) == 6
    for t in trivial:
        assert t.g.is_homomorphism() and t.g.is_bijective()


def test_triplet_order_deterministic_and_partitionable(pipeline):
    G, aut = pipeline.group("S3"), pipeline.aut("S3")
    ref = pipeline.triplets("S3")
    f_maps = mh.enumerate_homomorphisms(G, aut.carrier)
    even = mh.enumerate_regular_triplets(G, aut, f_indices=range(0, len(f_maps), 2))
    odd = mh.enumerate_regular_triplets(G, aut, f_indices=range(1, len(f_maps), 2))
    merged = sorted(even + odd, key=lambda t: (t.f.images, t.g.images))
    assert [(t.f.images, t.g.images) for t in merged] == [
        (t.f.images, t.g.images) for t in ref
    ]


def test_triplet_subgroups_match_oracle_regular_subgroups():
    for name in ["C2", "C3", "C4", "C5", "C6", "C2xC2", "S3"]:
        G = mh.build_catalog_group(name)
        aut = mh.automorphism_group(G)
        hol = mh.build_holomorph(G, aut)
        trips = mh.enumerate_regular_triplets(G, aut)
        m = hol.m
        from_triplets = {
            tuple(sorted(t.g.images[x] * m + t.f.images[x] for x in range(G.order)))
            for t in trips
        }
        oracle_all = oracle_regular_subgroups(hol)
        oracle_iso = set()
        for sub in oracle_all:
            from multiholo.groups import subgroup_as_group

            as_group, _ = subgroup_as_group(hol, sub)
            if mh.are_isomorphic(G, as_group) is not None:
                oracle_iso.add(sub)
        assert from_triplets == oracle_iso, name


def test_entries_count_small(pipeline):
    for name, expected in [("C5", 1), ("C2", 1)]:
        assert len(pipeline.entries(name)) == expected


def test_entries_s3_contains_distinct_translation_subgroups(pipeline):
    hol = pipeline.hol("S3")
    entries = pipeline.entries("S3")
    subs = {e.subgroup for e in entries}
    assert hol.left_set() in subs and hol.right_set() in subs
    assert hol.left_set() != hol.right_set()


def test_entries_a5(pipeline):
    assert len(pipeline.entries("A5")) == 2


def test_entry_invariants(pipeline):
    for name in ["C5", "S3", "D5", "A4"]:
        G, hol = pipeline.group(name), pipeline.hol(name)
        for e in pipeline.entries(name):
            assert e.iso_witness.is_homomorphism() and e.iso_witness.is_bijective()
            # conjugator moves left translations onto the subgroup
            realized = {hol.realized(i) for i in e.subgroup}
            cinv = [0] * G.order
            for i, v in enumerate(e.conjugator):
                cinv[v] = i
            moved = {
                compose(compose(e.conjugator, left_translation(G, s)), tuple(cinv))
                for s in range(G.order)
            }
            assert moved == realized
            # normal in the holomorph
            for g in hol.generators:
                gi = hol.inv(g)
                assert all(
                    hol.mul(hol.mul(g, x), gi) in set(e.subgroup) for x in e.subgroup
                )


def test_oracle_t_order_agreement_small(pipeline):
    for name in SMALL:
        G = pipeline.group(name)
        assert len(pipeline.entries(name)) == oracle_T_order(G), name


def test_t_group_is_group_with_lambda_identity(pipeline):
    for name in ["C5", "S3", "D5", "S4", "A5"]:
        rep = pipeline.tgroup(name)
        k = rep.order
        assert rep.identity_id == 0
        assert all(rep.table[0][j] == j for j in range(k))
        assert all(rep.table[i][0] == i for i in range(k))
        assert len(rep.entries) == k


def test_t_group_iota_class(pipeline):
    for name in ["C4", "C6", "C2xC2", "S3", "D5", "S4", "A5"]:
        G = pipeline.group(name)
        rep = pipeline.tgroup(name)
        assert rep.table[rep.iota_id][rep.iota_id] == rep.identity_id
        assert (rep.iota_id != rep.identity_id) == (not G.is_abelian())


def test_simultaneous_normality(pipeline):
    from multiholo.conditions import check_conjugation_transport

    for name in ["S3", "D5", "A4"]:
        G, aut = pipeline.group(name), pipeline.aut(name)
        for e in pipeline.entries(name):
            for t in aut.carrier.generators:
                assert check_conjugation_transport(G, aut, e, t)


def test_coset_identify(pipeline):
    G = pipeline.group("S3")
    hol, entries = pipeline.hol("S3"), pipeline.entries("S3")
    assert mh.coset_identify(G, identity_perm(6), entries, hol) == 0
    rep = pipeline.tgroup("S3")
    assert mh.coset_identify(G, inversion_perm(G), entries, hol) == rep.iota_id
    rng = random.Random(7)
    hits = 0
    for _ in range(30):
        p = list(range(6))
        rng.shuffle(p)
        got = mh.coset_identify(G, tuple(p), entries, hol)
        if got is not None:
            hits += 1
            # verify by explicit conjugation
            pinv = [0] * 6
            for i, v in enumerate(p):
                pinv[v] = i
            moved = {
                compose(compose(tuple(p), left_translation(G, s)), tuple(pinv))
                for s in range(6)
            }
            assert moved == {hol.realized(i) for i in entries[got].subgroup}
    assert hits <= 30  # ordinarily almost all misses; equality not asserted


def test_square_criterion_consistency(pipeline):
    from multiholo.conditions import check_square

    for name in CENTERLESS:
        G, hol = pipeline.group(name), pipeline.hol(name)
        for e in pipeline.entries(name):
            direct, anti, hom, _, _ = check_square(G, hol, e)
            assert direct == (anti and hom)


@pytest.mark.slow
def test_t_group_order63_metacyclic(pipeline):
    rep = pipeline.tgroup("C7:C9")
    assert rep.order == 6
    assert rep.exponent % 3 == 0
    assert not rep.is_elementary_2_abelian


@pytest.mark.slow
def test_t_group_order63_split_product(pipeline):
    rep = pipeline.tgroup("C7:C3xC3")
    assert rep.order == 2
    assert rep.is_elementary_2_abelian
