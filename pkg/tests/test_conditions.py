import pytest

import multiholo as mh
from multiholo.conditions import (
    check_inner,
    check_square,
    check_structure,
    report_violations,
    run_condition_suite,
)
from multiholo.groups import set_product

CENTERLESS = ["S3", "D5", "A4", "S4"]


def _suite(pipeline, name):
    return run_condition_suite(
        pipeline.group(name), pipeline.aut(name), pipeline.hol(name), pipeline.entries(name)
    )


@pytest.mark.parametrize("name", CENTERLESS)
def test_all_structure_conditions_hold(pipeline, name):
    for report in _suite(pipeline, name):
        assert report.hypothesis_met
        assert report.structure_all(), (name, report.entry_id, report.witnesses)


@pytest.mark.parametrize("name", CENTERLESS)
def test_flag_implications(pipeline, name):
    for r in _suite(pipeline, name):
        assert r.square_in_hol == (r.square_anti and r.square_hom)
        if r.kernels_stable:
            assert r.square_anti and r.square_hom
        assert r.inner_coincide == r.quotient_two_torsion
        if r.inner_coincide:
            assert r.kernels_stable
        assert r.transport_ok
        assert not report_violations(r)


def test_translation_entries_are_degenerate(pipeline):
    # one entry has trivial f (the right translations), the other trivial h
    G, aut = pipeline.group("S3"), pipeline.aut("S3")
    entries = pipeline.entries("S3")
    f_kernels = {len([x for x in range(6) if e.triplet.f.images[x] == 0]) for e in entries}
    h_kernels = {len([x for x in range(6) if e.triplet.h.images[x] == 0]) for e in entries}
    assert f_kernels == {1, 6} and h_kernels == {1, 6}
    for e in entries:
        direct, anti, hom, stable, _ = check_square(G, pipeline.hol("S3"), e)
        assert direct and anti and hom and stable
        inner_match, two_torsion = check_inner(G, aut, e)
        assert inner_match and two_torsion


def test_kernel_product_identity(pipeline):
    # the product of the two g-images of the kernels equals the g-image of the
    # kernel product, elementwise
    for name in CENTERLESS:
        G = pipeline.group(name)
        for e in pipeline.entries(name):
            f, h, g = e.triplet.f.images, e.triplet.h.images, e.g_array
            ker_f = [x for x in range(G.order) if f[x] == 0]
            ker_h = [x for x in range(G.order) if h[x] == 0]
            lhs = set_product(
                G, [g[x] for x in ker_f], [g[x] for x in ker_h]
            )
            prod = set_product(G, ker_f, ker_h)
            rhs = tuple(sorted(g[x] for x in prod))
            assert lhs == rhs


def test_commutators_factor_through_kernels(pipeline):
    for name in ["S3", "D5"]:
        G = pipeline.group(name)
        mul, inv = G.mul_table, G.inv_table
        for e in pipeline.entries(name):
            f, h = e.triplet.f.images, e.triplet.h.images
            ker_f = {x for x in range(G.order) if f[x] == 0}
            ker_h = {x for x in range(G.order) if h[x] == 0}
            for x in range(G.order):
                for y in range(G.order):
                    c = mul[mul[x][y]][mul[inv[x]][inv[y]]]
                    assert any(
                        mul[inv[zf]][zh] == c for zf in ker_f for zh in ker_h
                    ), (name, x, y)


def test_non_centerless_group_is_flagged(pipeline):
    G = mh.build_catalog_group("C6")
    aut = mh.automorphism_group(G)
    hol = mh.build_holomorph(G, aut)
    entries = mh.normal_regular_subgroups(G, aut, hol)
    reports = run_condition_suite(G, aut, hol, entries)
    assert reports and all(not r.hypothesis_met for r in reports)
    assert all(report_violations(r) == [] for r in reports)  # nothing mandated


def test_structure_check_records_witnesses_for_mismatched_triplet(pipeline):
    # feed the checker an entry whose triplet was swapped with a wrong one:
    # conditions relying on the twisted rule must fail with witnesses
    import copy

    G, aut = pipeline.group("S3"), pipeline.aut("S3")
    entries = pipeline.entries("S3")
    broken = copy.deepcopy(entries[0])
    images = list(broken.triplet.g.images)
    images[3], images[5] = images[5], images[3]
    object.__setattr__(broken.triplet, "g", mh.GroupMapping(G, G, images))
    flags, witnesses = check_structure(G, aut, broken)
    assert not all(flags)
    assert witnesses
