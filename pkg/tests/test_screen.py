import pytest

import multiholo as mh
from multiholo.screen import screen_group, verify_witness


def test_screen_skips_groups_with_center():
    for name in ["C6", "D4", "Q8", "D6"]:
        rep = screen_group(mh.build_catalog_group(name))
        assert not rep.centerless
        assert rep.passed and not rep.witnesses


def test_screen_simple_group_has_no_candidates(pipeline):
    rep = screen_group(pipeline.group("A5"), pipeline.aut("A5"))
    assert rep.centerless
    assert rep.counters["k_candidates"] == 0
    assert rep.passed


def test_screen_s4(pipeline):
    rep = screen_group(pipeline.group("S4"), pipeline.aut("S4"))
    assert rep.centerless
    # the Klein normal subgroup has centerless quotient, survives the
    # characteristic test (no outer generators), but no pair clears the rest
    assert rep.counters["k_candidates"] == 1
    assert rep.counters["k_characteristic"] == 1
    assert rep.counters["k_pairs"] == 0
    assert rep.passed and not rep.witnesses


@pytest.mark.parametrize("name", ["S3", "D5", "D7", "A4"])
def test_screen_small_centerless_pass(pipeline, name):
    rep = screen_group(pipeline.group(name), pipeline.aut(name))
    assert rep.centerless and rep.passed and not rep.witnesses


def test_outer_generator_test_agrees_with_strict_characteristic(pipeline):
    for name in ["S3", "S4", "A4", "D5", "D7"]:
        rep = screen_group(pipeline.group(name), pipeline.aut(name))
        assert rep.char_test_disagreements == []


@pytest.mark.slow
def test_screen_s5(pipeline):
    rep = screen_group(pipeline.group("S5"), pipeline.aut("S5"))
    assert rep.centerless and rep.passed and not rep.witnesses


@pytest.mark.slow
def test_screen_order_605_finds_witness():
    G = mh.build_catalog_group("C11xC11:C5")
    aut = mh.automorphism_group(G)
    rep = screen_group(G, aut)
    assert rep.centerless
    assert rep.witnesses, "the order-605 group must produce at least one witness"
    for w in rep.witnesses:
        assert len(w.k1) == len(w.k2) == 11
        assert len(w.q1) == len(w.q2) == 55
        assert verify_witness(G, aut, w)
    assert rep.char_test_disagreements == []
