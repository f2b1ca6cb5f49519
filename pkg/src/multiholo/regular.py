"""Regular subgroups of the holomorph and the multiple-holomorph quotient.

Every regular subgroup N of Hol(G) that is isomorphic to G is the image of an
injective homomorphism ``beta(sigma) = (g(sigma), f(sigma))`` in pair form,
where ``f`` is a homomorphism into the automorphism carrier and ``g`` is a
bijection of the element set fixing the identity that satisfies the twisted
product rule

    g(sigma * tau) = g(sigma) * f(sigma)(g(tau)).

Enumerating pairs ``(f, g)`` therefore finds every such subgroup; distinct
pairs can hit the same subgroup (precomposing ``beta`` with an automorphism
changes the pair but not the image), so subgroups are deduplicated before the
normality filter.  The derived homomorphism ``h(sigma) = conj(g(sigma)) ∘
f(sigma)`` and the permutation ``g0 = inversion ∘ g`` (which conjugates the
left translations onto N) are carried along with each subgroup.

The classes of the normalizer of Hol(G) modulo Hol(G) act freely and
transitively on these subgroups by conjugation; multiplying two classes via
their ``g0`` representatives yields the quotient group computed by
:func:`t_group`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BudgetExceededError, InternalConsistencyError
from .groups import (
    FiniteGroup,
    GroupMapping,
    exponent,
    is_elementary_2_abelian,
    subgroup_as_group,
)
from .holomorph import (
    HolGroup,
    Perm,
    build_holomorph,
    compose,
    inverse_perm,
    left_translation,
)
from .morphisms import (
    DEFAULT_SEARCH_BUDGET,
    AutomorphismGroup,
    automorphism_group,
    enumerate_homomorphisms,
    generator_program,
)


@dataclass(frozen=True)
class Triplet:
    """One (f, h, g) datum: f, h map into the automorphism carrier, g is the
    twisted bijection on the group itself."""

    f: GroupMapping
    g: GroupMapping
    h: GroupMapping

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.g.images, self.f.images)


@dataclass
class NormalRegularEntry:
    """One normal regular subgroup of the holomorph, isomorphic to the base."""

    entry_id: int
    triplet: Triplet
    subgroup: tuple[int, ...]        # sorted pair indices inside the holomorph
    iso_witness: GroupMapping        # base -> subgroup reindexed as a group
    conjugator: Perm                 # sends left translations onto the subgroup

    @property
    def g_array(self) -> tuple[int, ...]:
        return self.triplet.g.images


@dataclass
class TGroupReport:
    """The quotient of the holomorph's normalizer by the holomorph, realized
    by its free transitive conjugation action on the entries."""

    group_name: str
    entries: list[NormalRegularEntry]
    table: list[list[int]]
    identity_id: int
    iota_id: int
    order: int
    is_abelian: bool
    exponent: int
    is_elementary_2_abelian: bool


def _cocycle_solutions(
    group: FiniteGroup,
    rows: Sequence[Sequence[int]],
    budget: list[int],
) -> list[tuple[int, ...]]:
    """All bijections g with g(0)=0 satisfying the twisted rule for fixed f.

    ``rows[x]`` is the automorphism array of f(x).  Tree edges assign new
    values, check edges reject inconsistent branches, and a used-value table
    rejects non-injective branches as early as possible.
    """
    levels = generator_program(group)
    n = group.order
    mul = group.mul_table
    g = [-1] * n
    g[0] = 0
    used = bytearray(n)
    used[0] = 1
    sols: list[tuple[int, ...]] = []

    def rollback(undo):
        for y in undo:
            used[g[y]] = 0
            g[y] = -1

    def run_ops(ops, skip_first):
        undo = []
        left = budget[0]
        for op in (ops[1:] if skip_first else ops):
            left -= 1
            if left < 0:
                budget[0] = left
                raise BudgetExceededError("twisted-bijection search budget exceeded")
            kind, x, s, y = op
            v = mul[g[x]][rows[x][g[s]]]
            if kind == 0:  # tree
                if used[v]:
                    budget[0] = left
                    rollback(undo)
                    return False, undo
                g[y] = v
                used[v] = 1
                undo.append(y)
            elif g[y] != v:
                budget[0] = left
                rollback(undo)
                return False, undo
        budget[0] = left
        return True, undo

    def descend(li):
        if li == len(levels):
            sols.append(tuple(g))
            return
        level = levels[li]
        if not level.assigns:
            ok, undo = run_ops(level.ops, False)
            if ok:
                descend(li + 1)
                rollback(undo)
            return
        s = level.gen
        for v in range(1, n):
            if used[v]:
                continue
            g[s] = v
            used[v] = 1
            ok, undo = run_ops(level.ops, True)
            if ok:
                descend(li + 1)
                rollback(undo)
            used[v] = 0
            g[s] = -1

    descend(0)
    sols.sort()
    return sols


def enumerate_regular_triplets(
    group: FiniteGroup,
    aut: AutomorphismGroup,
    *,
    f_maps: Optional[Sequence[GroupMapping]] = None,
    f_indices: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> list[Triplet]:
    """All (f, h, g) triplets, ordered lexicographically by (f, g) arrays.

    ``f_indices`` selects a slice of the homomorphism list, the partition
    hint for parallel callers; results from disjoint slices concatenate and
    re-sort to the full answer.
    """
    if f_maps is None:
        f_maps = enumerate_homomorphisms(group, aut.carrier, budget=budget)
    if f_indices is not None:
        f_maps = [f_maps[i] for i in f_indices]
    n = group.order
    mul_a = aut.carrier.mul_table
    conj = aut.conj
    remaining = [budget]
    out: list[Triplet] = []
    for f in f_maps:
        f_arr = f.images
        rows = [aut.rows[f_arr[x]] for x in range(n)]
        for g_arr in _cocycle_solutions(group, rows, remaining):
            h_arr = tuple(mul_a[conj[g_arr[x]]][f_arr[x]] for x in range(n))
            out.append(
                Triplet(
                    f=f,
                    g=GroupMapping(group, group, g_arr),
                    h=GroupMapping(group, aut.carrier, h_arr),
                )
            )
    out.sort(key=lambda t: (t.f.images, t.g.images))
    return out


def _subgroup_indices(hol: HolGroup, triplet: Triplet) -> tuple[int, ...]:
    m = hol.m
    f_arr, g_arr = triplet.f.images, triplet.g.images
    return tuple(sorted(g_arr[x] * m + f_arr[x] for x in range(hol.base.order)))


def normal_regular_subgroups(
    group: FiniteGroup,
    aut: Optional[AutomorphismGroup] = None,
    hol: Optional[HolGroup] = None,
    triplets: Optional[Sequence[Triplet]] = None,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> list[NormalRegularEntry]:
    """The normal regular subgroups of Hol(G) isomorphic to G, as entries.

    The left-translation subgroup comes first; the rest are ordered by the
    canonical (lexicographically smallest) g array of their triplets.
    """
    if aut is None:
        aut = automorphism_group(group)
    if hol is None:
        hol = build_holomorph(group, aut)
    if triplets is None:
        triplets = enumerate_regular_triplets(group, aut, budget=budget)
    n, m = group.order, hol.m

    by_subgroup: dict[tuple[int, ...], Triplet] = {}
    for t in triplets:
        key = _subgroup_indices(hol, t)
        best = by_subgroup.get(key)
        if best is None or t.key() < best.key():
            by_subgroup[key] = t

    left = hol.left_set()
    right = hol.right_set()
    if left not in by_subgroup or right not in by_subgroup:
        raise InternalConsistencyError(
            "translation subgroups missing from the enumeration"
        )

    entries: list[NormalRegularEntry] = []
    for key, trip in by_subgroup.items():
        if len({i // m for i in key}) != n:
            raise InternalConsistencyError("non-regular subgroup emitted")
        if not _is_normal(hol, key):
            continue
        entries.append(_build_entry(group, hol, trip, key))

    entries.sort(
        key=lambda e: (e.subgroup != left, e.triplet.g.images)
    )
    for i, e in enumerate(entries):
        e.entry_id = i
    return entries


def _is_normal(hol: HolGroup, indices: tuple[int, ...]) -> bool:
    elems = frozenset(indices)
    for gidx in hol.generators:
        gi = hol.inv(gidx)
        for x in indices:
            if hol.mul(hol.mul(gidx, x), gi) not in elems:
                return False
    return True


def _build_entry(
    group: FiniteGroup, hol: HolGroup, trip: Triplet, key: tuple[int, ...]
) -> NormalRegularEntry:
    m = hol.m
    pos = {idx: i for i, idx in enumerate(key)}
    sub_table = [[pos[hol.mul(a, b)] for b in key] for a in key]
    sub_group = FiniteGroup(sub_table, f"N<{hol.name}")
    f_arr, g_arr = trip.f.images, trip.g.images
    witness = GroupMapping(
        group, sub_group, [pos[g_arr[x] * m + f_arr[x]] for x in range(group.order)]
    )
    if not (witness.is_homomorphism() and witness.is_bijective()):
        raise InternalConsistencyError("triplet does not give an isomorphism")

    conjugator = tuple(group.inv_table[g_arr[x]] for x in range(group.order))
    conj_inv = inverse_perm(conjugator)
    realized = {hol.realized(i) for i in key}
    moved = {
        compose(compose(conjugator, left_translation(group, s)), conj_inv)
        for s in range(group.order)
    }
    if moved != realized:
        raise InternalConsistencyError(
            "conjugator fails to move left translations onto the subgroup"
        )
    return NormalRegularEntry(
        entry_id=-1,
        triplet=trip,
        subgroup=key,
        iso_witness=witness,
        conjugator=conjugator,
    )


def coset_identify(
    group: FiniteGroup,
    perm: Perm,
    entries: Sequence[NormalRegularEntry],
    hol: HolGroup,
) -> Optional[int]:
    """The entry whose subgroup is perm * left-translations * perm^{-1}, if any."""
    n = group.order
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of the group's elements")
    pinv = inverse_perm(perm)
    indices = []
    for s in range(n):
        moved = compose(compose(perm, left_translation(group, s)), pinv)
        idx = hol.membership(moved)
        if idx is None:
            return None
        indices.append(idx)
    key = tuple(sorted(indices))
    for e in entries:
        if e.subgroup == key:
            return e.entry_id
    return None


def t_group(
    group: FiniteGroup,
    aut: Optional[AutomorphismGroup] = None,
    hol: Optional[HolGroup] = None,
    entries: Optional[list[NormalRegularEntry]] = None,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> TGroupReport:
    """Multiply entry classes through their conjugator representatives."""
    if aut is None:
        aut = automorphism_group(group)
    if hol is None:
        hol = build_holomorph(group, aut)
    if entries is None:
        entries = normal_regular_subgroups(group, aut, hol, budget=budget)
    by_key = {e.subgroup: e.entry_id for e in entries}
    k = len(entries)
    table = [[0] * k for _ in range(k)]
    for i, ei in enumerate(entries):
        for j, ej in enumerate(entries):
            c = compose(ei.conjugator, ej.conjugator)
            target = coset_identify(group, c, entries, hol)
            if target is None:
                raise InternalConsistencyError(
                    "product of classes left the enumerated set"
                )
            table[i][j] = target

    identity_id = 0
    if entries[0].subgroup != hol.left_set():
        raise InternalConsistencyError("left-translation entry is not first")
    iota_id = by_key.get(hol.right_set())
    if iota_id is None:
        raise InternalConsistencyError("right-translation entry missing")

    carrier = FiniteGroup(table, f"T({group.name})")
    return TGroupReport(
        group_name=group.name,
        entries=entries,
        table=table,
        identity_id=identity_id,
        iota_id=iota_id,
        order=k,
        is_abelian=carrier.is_abelian(),
        exponent=exponent(carrier),
        is_elementary_2_abelian=is_elementary_2_abelian(carrier),
    )


def subgroup_of_entry(group: FiniteGroup, hol: HolGroup, entry: NormalRegularEntry):
    """The entry's subgroup reindexed as a standalone group (for inspection)."""
    return subgroup_as_group(hol, entry.subgroup, name=f"N{entry.entry_id}")
