"""Executable structural checks for normal regular subgroup entries.

For a centerless base group, every entry's triplet (f, h, g) must satisfy a
list of sixteen kernel/image conditions, a square criterion (the conjugator's
square lies in the holomorph exactly when g descends to an anti-homomorphism
mod ker f and a homomorphism mod ker h), and an equivalence between "the
pointwise products f(x)h(x) fill the inner automorphisms" and "the quotient
by ker(f)ker(h) has exponent at most 2".  Each condition is evaluated
literally and independently so that a defect in one check cannot mask
another; the first violating tuple is kept as a witness.

Entries of groups with non-trivial center run the same checks but the report
flags that the guarantees do not apply.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .groups import (
    FiniteGroup,
    SubgroupRef,
    are_isomorphic,
    commutator_subgroup,
    is_centerless,
    is_elementary_2_abelian,
    is_normal,
    is_subgroup_set,
    quotient,
    set_product,
    subgroup_as_group,
)
from .holomorph import HolGroup, compose
from .morphisms import AutomorphismGroup, is_characteristic
from .regular import NormalRegularEntry


@dataclass
class ConditionReport:
    entry_id: int
    hypothesis_met: bool                  # base group is centerless
    structure: tuple[bool, ...]           # the sixteen kernel/image conditions
    square_in_hol: bool                   # conjugator squared lies in the holomorph
    square_anti: bool                     # g anti-homomorphism mod ker(f)
    square_hom: bool                      # g homomorphism mod ker(h)
    kernels_stable: bool                  # g(ker f) within ker f and g(ker h) within ker h
    inner_coincide: bool                  # {f(x)h(x)} equals the inner automorphisms
    quotient_two_torsion: bool            # G/ker(f)ker(h) elementary 2-abelian
    transport_ok: bool                    # conjugation transport for all aut generators
    witnesses: dict[str, tuple] = field(default_factory=dict)

    def structure_all(self) -> bool:
        return all(self.structure)


def _kernel(group, images) -> SubgroupRef:
    return SubgroupRef(group, [x for x in range(group.order) if images[x] == 0])


def _image_set(images) -> tuple[int, ...]:
    return tuple(sorted(set(images)))


def _is_centerless_subset(carrier, elems) -> bool:
    mul = carrier.mul
    for z in elems:
        if z == 0:
            continue
        if all(mul(z, x) == mul(x, z) for x in elems):
            return False
    return True


def _is_normal_subset(carrier, elems) -> bool:
    sset = frozenset(elems)
    mul, inv = carrier.mul, carrier.inv
    for g in carrier.generators:
        gi = inv(g)
        for x in elems:
            if mul(mul(g, x), gi) not in sset:
                return False
    return True


def check_structure(
    group: FiniteGroup, aut: AutomorphismGroup, entry: NormalRegularEntry
) -> tuple[tuple[bool, ...], dict[str, tuple]]:
    """Evaluate the sixteen kernel/image conditions for one entry."""
    n = group.order
    mul, inv = group.mul_table, group.inv_table
    carrier = aut.carrier
    cmul = carrier.mul_table
    f_arr = entry.triplet.f.images
    h_arr = entry.triplet.h.images
    g_arr = entry.triplet.g.images
    ker_f = _kernel(group, f_arr)
    ker_h = _kernel(group, h_arr)
    f_img = _image_set(f_arr)
    h_img = _image_set(h_arr)
    inner = set(aut.inner)
    witnesses: dict[str, tuple] = {}
    flags = [False] * 16

    def fail(i: int, value: tuple):
        witnesses.setdefault(f"structure_{i + 1}", value)

    # 1: the kernels intersect trivially
    meet = ker_f._set & ker_h._set
    flags[0] = meet == {0}
    if not flags[0]:
        fail(0, tuple(sorted(meet)))

    # 2: commutators land in the kernel product
    kfkh = set_product(group, ker_f.elements, ker_h.elements)
    kfkh_set = frozenset(kfkh)
    comm = commutator_subgroup(group)
    flags[1] = all(c in kfkh_set for c in comm.elements)
    if not flags[1]:
        fail(1, (next(c for c in comm.elements if c not in kfkh_set),))

    # 3: the two images commute elementwise
    flags[2] = True
    for u in f_img:
        for v in h_img:
            if cmul[u][v] != cmul[v][u]:
                flags[2] = False
                fail(2, (u, v))
                break
        if not flags[2]:
            break

    # 4: inner automorphisms lie in the image product
    prod_fh = {cmul[u][v] for u in f_img for v in h_img}
    flags[3] = inner <= prod_fh
    if not flags[3]:
        fail(3, (next(i for i in sorted(inner) if i not in prod_fh),))

    # 5: the images intersect trivially
    img_meet = set(f_img) & set(h_img)
    flags[4] = img_meet == {0}
    if not flags[4]:
        fail(4, tuple(sorted(img_meet)))

    # 6: both images are centerless normal subgroups of the carrier
    flags[5] = (
        _is_centerless_subset(carrier, f_img)
        and _is_centerless_subset(carrier, h_img)
        and _is_normal_subset(carrier, f_img)
        and _is_normal_subset(carrier, h_img)
    )

    # 7/8: image ∩ inner equals the image of the kernel product
    f_of_kfkh = {f_arr[x] for x in kfkh}
    h_of_kfkh = {h_arr[x] for x in kfkh}
    flags[6] = set(f_img) & inner == f_of_kfkh
    flags[7] = set(h_img) & inner == h_of_kfkh

    # 9: pointwise products form a normal subgroup isomorphic to the base
    phi_set = tuple(sorted({cmul[f_arr[x]][h_arr[x]] for x in range(n)}))
    ok9 = is_subgroup_set(carrier, phi_set) and _is_normal_subset(carrier, phi_set)
    if ok9:
        phi_group, _ = subgroup_as_group(carrier, phi_set)
        ok9 = are_isomorphic(group, phi_group) is not None
    flags[8] = ok9

    # 10/11: kernel images under g are characteristic and isomorphic copies
    def _char_copy(ker: SubgroupRef, idx: int):
        image = tuple(sorted(g_arr[x] for x in ker.elements))
        if not is_subgroup_set(group, image):
            fail(idx, image)
            return False
        if not is_characteristic(aut, image):
            fail(idx, image)
            return False
        a, _ = subgroup_as_group(group, ker.elements)
        b, _ = subgroup_as_group(group, image)
        return are_isomorphic(a, b) is not None

    flags[9] = _char_copy(ker_f, 9)
    flags[10] = _char_copy(ker_h, 10)

    g_ker_f = tuple(sorted(g_arr[x] for x in ker_f.elements))
    g_ker_h = tuple(sorted(g_arr[x] for x in ker_h.elements))

    # 12/13: g descends to a surjective (anti)homomorphism on the quotient
    def _descends(image_elems, reverse: bool, idx: int) -> bool:
        if not (
            is_subgroup_set(group, image_elems)
            and is_normal(group, SubgroupRef(group, image_elems))
        ):
            fail(idx, image_elems)
            return False
        q, proj = quotient(group, SubgroupRef(group, image_elems))
        p = proj.images
        qt = q.mul_table
        for x in range(n):
            for y in range(n):
                lhs = p[g_arr[mul[x][y]]]
                rhs = (
                    qt[p[g_arr[y]]][p[g_arr[x]]]
                    if reverse
                    else qt[p[g_arr[x]]][p[g_arr[y]]]
                )
                if lhs != rhs:
                    fail(idx, (x, y))
                    return False
        return len({p[g_arr[x]] for x in range(n)}) == q.order

    flags[11] = _descends(g_ker_h, reverse=False, idx=11)
    flags[12] = _descends(g_ker_f, reverse=True, idx=12)

    # 14/15/16: matching quotients up to isomorphism
    def _iso_quotients(a_elems, b_elems, idx: int) -> bool:
        for elems in (a_elems, b_elems):
            if not (
                is_subgroup_set(group, elems)
                and is_normal(group, SubgroupRef(group, elems))
            ):
                fail(idx, tuple(elems))
                return False
        qa, _ = quotient(group, SubgroupRef(group, a_elems))
        qb, _ = quotient(group, SubgroupRef(group, b_elems))
        return are_isomorphic(qa, qb) is not None

    flags[13] = _iso_quotients(ker_h.elements, g_ker_h, 13)
    flags[14] = _iso_quotients(ker_f.elements, g_ker_f, 14)
    g_prod = set_product(group, g_ker_f, g_ker_h)
    flags[15] = _iso_quotients(kfkh, g_prod, 15)

    return tuple(flags), witnesses


def check_square(
    group: FiniteGroup, hol: HolGroup, entry: NormalRegularEntry
) -> tuple[bool, bool, bool, bool, dict[str, tuple]]:
    """Square criterion: direct membership test plus the three mod-kernel laws."""
    n = group.order
    mul, inv = group.mul_table, group.inv_table
    f_arr = entry.triplet.f.images
    h_arr = entry.triplet.h.images
    g_arr = entry.triplet.g.images
    ker_f = frozenset(x for x in range(n) if f_arr[x] == 0)
    ker_h = frozenset(x for x in range(n) if h_arr[x] == 0)
    witnesses: dict[str, tuple] = {}

    g0 = entry.conjugator
    direct = hol.membership(compose(g0, g0)) is not None

    anti = True
    for x in range(n):
        for y in range(n):
            d = mul[g_arr[mul[x][y]]][inv[mul[g_arr[y]][g_arr[x]]]]
            if d not in ker_f:
                anti = False
                witnesses["square_anti"] = (x, y)
                break
        if not anti:
            break

    hom = True
    for x in range(n):
        for y in range(n):
            d = mul[g_arr[mul[x][y]]][inv[mul[g_arr[x]][g_arr[y]]]]
            if d not in ker_h:
                hom = False
                witnesses["square_hom"] = (x, y)
                break
        if not hom:
            break

    stable = all(g_arr[x] in ker_f for x in ker_f) and all(
        g_arr[x] in ker_h for x in ker_h
    )
    return direct, anti, hom, stable, witnesses


def check_inner(
    group: FiniteGroup, aut: AutomorphismGroup, entry: NormalRegularEntry
) -> tuple[bool, bool]:
    """Inner coincidence and two-torsion quotient conditions."""
    n = group.order
    cmul = aut.carrier.mul_table
    f_arr = entry.triplet.f.images
    h_arr = entry.triplet.h.images
    phi_set = {cmul[f_arr[x]][h_arr[x]] for x in range(n)}
    inner_match = phi_set == set(aut.inner)

    ker_f = [x for x in range(n) if f_arr[x] == 0]
    ker_h = [x for x in range(n) if h_arr[x] == 0]
    kfkh = set_product(group, ker_f, ker_h)
    q, _ = quotient(group, SubgroupRef(group, kfkh))
    return inner_match, is_elementary_2_abelian(q)


def check_conjugation_transport(
    group: FiniteGroup,
    aut: AutomorphismGroup,
    entry: NormalRegularEntry,
    aut_index: int,
) -> bool:
    """Conjugating f and h by an automorphism permutes them along g.

    With sigma' defined by g(sigma') = phi(g(sigma)), both
    phi f(sigma) phi^{-1} = f(sigma') and phi h(sigma) phi^{-1} = h(sigma')
    must hold.
    """
    n = group.order
    cmul = aut.carrier.mul_table
    cinv = aut.carrier.inv_table
    row = aut.rows[aut_index]
    phi_inv = cinv[aut_index]
    f_arr = entry.triplet.f.images
    h_arr = entry.triplet.h.images
    g_arr = entry.triplet.g.images
    g_inv = [0] * n
    for x in range(n):
        g_inv[g_arr[x]] = x
    for x in range(n):
        moved = g_inv[row[g_arr[x]]]
        if cmul[cmul[aut_index][f_arr[x]]][phi_inv] != f_arr[moved]:
            return False
        if cmul[cmul[aut_index][h_arr[x]]][phi_inv] != h_arr[moved]:
            return False
    return True


def run_condition_suite(
    group: FiniteGroup,
    aut: AutomorphismGroup,
    hol: HolGroup,
    entries: list[NormalRegularEntry],
) -> list[ConditionReport]:
    centerless = is_centerless(group)
    reports = []
    for entry in entries:
        structure, wit = check_structure(group, aut, entry)
        direct, anti, hom, stable, wit2 = check_square(group, hol, entry)
        inner_match, two_torsion = check_inner(group, aut, entry)
        transport = all(
            check_conjugation_transport(group, aut, entry, t)
            for t in aut.carrier.generators
        )
        wit.update(wit2)
        reports.append(
            ConditionReport(
                entry_id=entry.entry_id,
                hypothesis_met=centerless,
                structure=structure,
                square_in_hol=direct,
                square_anti=anti,
                square_hom=hom,
                kernels_stable=stable,
                inner_coincide=inner_match,
                quotient_two_torsion=two_torsion,
                transport_ok=transport,
                witnesses=wit,
            )
        )
    return reports


def report_violations(report: ConditionReport) -> list[str]:
    """Mandated-failure labels for a centerless base group; empty iff clean."""
    out = []
    if not report.hypothesis_met:
        return out
    for i, ok in enumerate(report.structure):
        if not ok:
            out.append(f"structure_{i + 1}")
    if report.square_in_hol != (report.square_anti and report.square_hom):
        out.append("square_equivalence")
    if report.kernels_stable and not (report.square_anti and report.square_hom):
        out.append("stable_kernels_imply_square")
    if report.inner_coincide != report.quotient_two_torsion:
        out.append("inner_two_torsion_equivalence")
    if report.inner_coincide and not report.kernels_stable:
        out.append("inner_implies_stable_kernels")
    if not report.transport_ok:
        out.append("conjugation_transport")
    return out
