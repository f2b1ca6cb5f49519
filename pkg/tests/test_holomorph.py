import pytest

import multiholo as mh
from multiholo.errors import CapExceededError
from multiholo.holomorph import (
    compose,
    identity_perm,
    inverse_perm,
    inversion_perm,
    left_translation,
    right_translation,
)


def test_translation_examples():
    C3 = mh.cyclic(3)
    assert left_translation(C3, 0) == identity_perm(3)
    assert left_translation(C3, 1) == right_translation(C3, 2)
    S3 = mh.symmetric(3)
    for s in range(6):
        for t in range(6):
            l, r = left_translation(S3, s), right_translation(S3, t)
            assert compose(l, r) == compose(r, l)


def test_translations_are_homomorphisms():
    for name in ["C6", "S3", "D4"]:
        G = mh.build_catalog_group(name)
        for trans in (left_translation, right_translation):
            for x in range(G.order):
                for y in range(G.order):
                    assert compose(trans(G, x), trans(G, y)) == trans(
                        G, G.mul_table[x][y]
                    )


def test_build_sizes():
    assert mh.build_holomorph(mh.cyclic(2)).order == 2
    assert mh.build_holomorph(mh.symmetric(3)).order == 36
    assert mh.build_holomorph(mh.cyclic(5)).order == 20
    with pytest.raises(CapExceededError):
        mh.build_holomorph(mh.symmetric(4), max_order=100)


def test_membership_roundtrip_s3(pipeline):
    hol = pipeline.hol("S3")
    for i in range(hol.order):
        assert hol.membership(hol.realized(i)) == i


def test_membership_recovers_left_translations():
    G = mh.symmetric(3)
    hol = mh.build_holomorph(G)
    for s in range(G.order):
        idx = hol.membership(left_translation(G, s))
        a, phi = hol.decode(idx)
        assert a == G.inv_table[s]
        assert phi == hol.aut.conj[s]
        assert hol.realized(idx) == left_translation(G, s)


def test_membership_rejects_non_affine():
    C5 = mh.cyclic(5)
    hol = mh.build_holomorph(C5)
    swap = [0, 2, 1, 3, 4]  # transposition of two non-identity elements
    assert hol.membership(tuple(swap)) is None


def test_inversion_perm():
    assert inversion_perm(mh.build_catalog_group("C2xC2")) == identity_perm(4)
    assert inversion_perm(mh.cyclic(3)) == (0, 2, 1)


def test_inversion_membership_iff_abelian():
    # the inversion map is multiplication-preserving only on abelian groups
    for name, abelian in [("C6", True), ("C2xC4", True), ("S3", False), ("D4", False)]:
        G = mh.build_catalog_group(name)
        hol = mh.build_holomorph(G)
        iota = inversion_perm(G)
        got = hol.membership(iota)
        assert (got is not None) == abelian
        if not abelian:
            # composing with any left translation never lands in the holomorph either
            assert all(
                hol.membership(compose(iota, left_translation(G, s))) is None
                for s in range(G.order)
            )


def test_regularity_of_translation_sets():
    for name in ["C4", "S3", "D4", "A4"]:
        hol = mh.build_holomorph(mh.build_catalog_group(name))
        for indices in (hol.left_set(), hol.right_set()):
            images = {hol.realized(i)[0] for i in indices}
            assert len(images) == hol.base.order


def test_right_set_is_inversion_conjugate_of_left_set():
    for name in ["C5", "C6", "S3", "D4", "A4"]:
        G = mh.build_catalog_group(name)
        hol = mh.build_holomorph(G)
        iota = inversion_perm(G)
        conjugated = {
            compose(compose(iota, hol.realized(i)), inverse_perm(iota))
            for i in hol.left_set()
        }
        rights = {hol.realized(i) for i in hol.right_set()}
        assert conjugated == rights


def test_small_table_materialization():
    hol = mh.build_holomorph(mh.symmetric(3))
    table = hol.to_table_group()
    assert table.order == 36
    for i in range(36):
        for j in range(36):
            assert table.mul_table[i][j] == hol.mul(i, j)
