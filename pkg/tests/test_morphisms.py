import pytest

import multiholo as mh
from multiholo.errors import BudgetExceededError, CapExceededError
from multiholo.morphisms import extend_generator_map
from multiholo.oracle import brute_automorphisms, brute_homomorphism_count


def test_hom_counts_tiny():
    C2, C3 = mh.cyclic(2), mh.cyclic(3)
    assert len(mh.enumerate_homomorphisms(C2, C3)) == 1  # trivial only
    homs = mh.enumerate_homomorphisms(C2, C2)
    assert [m.images for m in homs] == [(0, 0), (0, 1)]


def test_hom_count_s3_matches_brute():
    S3 = mh.symmetric(3)
    homs = mh.enumerate_homomorphisms(S3, S3)
    assert len(homs) == brute_homomorphism_count(S3, S3) == 10
    for m in homs:
        assert m.is_homomorphism()  # recomputed from scratch
    # 1 trivial + 3 onto an order-2 image + 6 bijective
    sizes = sorted(len(set(m.images)) for m in homs)
    assert sizes == [1, 2, 2, 2, 6, 6, 6, 6, 6, 6]


def test_hom_enumeration_deterministic_and_partitionable():
    S3, D4 = mh.symmetric(3), mh.dihedral(4)
    ref = [m.images for m in mh.enumerate_homomorphisms(S3, D4)]
    assert ref == sorted(ref)
    lo = [m.images for m in mh.enumerate_homomorphisms(S3, D4, first_image_range=(0, 4))]
    hi = [m.images for m in mh.enumerate_homomorphisms(S3, D4, first_image_range=(4, 8))]
    assert sorted(lo + hi) == ref


def test_hom_budget():
    S4 = mh.symmetric(4)
    with pytest.raises(BudgetExceededError):
        mh.enumerate_homomorphisms(S4, S4, budget=10)


def test_automorphism_group_sizes():
    cases = {
        "C2": 1,
        "C3": 2,
        "C5": 4,
        "C6": 2,
        "C2xC2": 6,
        "S3": 6,
        "D4": 8,
        "Q8": 24,
        "C2xC2xC2": 168,
    }
    for name, expected in cases.items():
        aut = mh.automorphism_group(mh.build_catalog_group(name))
        assert aut.order == expected, name


def test_automorphism_group_matches_brute_and_injective_count():
    for name in ["C4", "C6", "C2xC2", "S3", "D4", "Q8"]:
        G = mh.build_catalog_group(name)
        aut = mh.automorphism_group(G)
        assert sorted(aut.rows) == brute_automorphisms(G)
        injective = [
            m for m in mh.enumerate_homomorphisms(G, G) if m.is_bijective()
        ]
        assert len(injective) == aut.order


def test_aut_order63_regression():
    aut = mh.automorphism_group(mh.build_catalog_group("C7:C9"))
    assert aut.order == 126


def test_inner_index_equals_center_order():
    for name in ["C6", "S3", "D4", "Q8", "A4", "S4", "C2xC4"]:
        G = mh.build_catalog_group(name)
        aut = mh.automorphism_group(G)
        assert len(aut.inner) * mh.center(G).order == G.order


def test_complete_groups_have_no_outer():
    for name in ["S3", "S4"]:
        aut = mh.automorphism_group(mh.build_catalog_group(name))
        assert len(aut.inner) == aut.order
        assert mh.center(aut.base).order == 1


def test_conj_realization():
    G = mh.build_catalog_group("D4")
    aut = mh.automorphism_group(G)
    for s in range(G.order):
        row = aut.rows[aut.conj[s]]
        si = G.inv_table[s]
        assert all(row[x] == G.mul_table[G.mul_table[s][x]][si] for x in range(G.order))
    assert aut.conj_mapping().is_homomorphism()


def test_is_characteristic():
    S3 = mh.symmetric(3)
    aut = mh.automorphism_group(S3)
    assert mh.is_characteristic(aut, mh.center(S3))
    assert mh.is_characteristic(aut, mh.commutator_subgroup(S3))
    D4 = mh.dihedral(4)
    autD4 = mh.automorphism_group(D4)
    assert mh.is_characteristic(autD4, mh.center(D4))
    assert mh.is_characteristic(autD4, mh.commutator_subgroup(D4))
    # the two reflection Klein subgroups of D4 are normal but swapped by Aut
    refl = mh.subgroup_closure(D4, [4, 6])
    assert mh.is_normal(D4, refl)
    assert not mh.is_characteristic(autD4, refl)


def test_aut_cap():
    with pytest.raises(CapExceededError):
        mh.automorphism_group(mh.build_catalog_group("C2xC2xC2"), max_order=100)


def test_find_isomorphism_identity_first():
    G = mh.cyclic(5)
    iso = mh.find_isomorphism(G, G)
    assert iso.images == tuple(range(5))


def test_extend_generator_map():
    C6 = mh.cyclic(6)
    # images in C3 via x -> x mod 3 on the generator
    C3 = mh.cyclic(3)
    images = extend_generator_map(
        C6, [1], compose=lambda a, b: (a + b) % 3, identity=0
    )
    assert images == [x % 3 for x in range(6)]
    # inconsistent image: generator of order 6 sent to element of order 2 in C4
    C4 = mh.cyclic(4)
    bad = extend_generator_map(C6, [1], compose=lambda a, b: (a + b) % 4, identity=0)
    assert bad is None
