"""Brute-force ground truth inside full symmetric groups, for tiny degrees.

Nothing here reuses the main enumeration machinery: normalizers are found by
scanning every permutation of the degree, automorphisms by filtering
permutations, regular subgroups by growing generated subgroups.  The point is
an independent second path, so the code stays deliberately plain.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional

from .errors import CapExceededError

Perm = tuple[int, ...]

SYM_DEGREE_CAP = 8


@dataclass
class SymGroupSlice:
    """A set of permutations of 0..degree-1, flagged when subgroup-closed."""

    degree: int
    elements: list[Perm]
    is_subgroup: bool = False

    @property
    def order(self) -> int:
        return len(self.elements)


def _check_degree(n: int, cap: int):
    if n > cap:
        raise CapExceededError(f"degree {n} exceeds brute-force cap {cap}")


def brute_normalizer(
    n: int, subset: Iterable[Perm], *, cap: int = SYM_DEGREE_CAP
) -> SymGroupSlice:
    """{ p in Sym(n) : p S p^{-1} = S } by scanning all n! permutations."""
    _check_degree(n, cap)
    target = frozenset(tuple(s) for s in subset)
    found: list[Perm] = []
    for p in permutations(range(n)):
        pinv = [0] * n
        for i, v in enumerate(p):
            pinv[v] = i
        ok = True
        for s in target:
            conj = tuple(p[s[pinv[x]]] for x in range(n))
            if conj not in target:
                ok = False
                break
        if ok:
            found.append(p)
    return SymGroupSlice(degree=n, elements=found, is_subgroup=True)


def brute_holomorph(group, *, cap: int = SYM_DEGREE_CAP) -> SymGroupSlice:
    """Normalizer of the left translations: the holomorph, by brute force."""
    n = group.order
    mul = group.mul_table
    lam = [tuple(mul[s]) for s in range(n)]
    return brute_normalizer(n, lam, cap=cap)


def oracle_T_order(group, *, cap: int = SYM_DEGREE_CAP) -> int:
    """|Norm(Norm(left translations))| / |Norm(left translations)|."""
    hol = brute_holomorph(group, cap=cap)
    nhol = brute_normalizer(group.order, hol.elements, cap=cap)
    if nhol.order % hol.order != 0:
        raise AssertionError("normalizer order does not divide")
    return nhol.order // hol.order


def brute_automorphisms(group, *, cap: int = SYM_DEGREE_CAP) -> list[Perm]:
    """All multiplication-preserving permutations, by filtering Sym(n)."""
    n = group.order
    _check_degree(n, cap)
    mul = group.mul_table
    out = []
    for p in permutations(range(n)):
        if p[0] != 0:
            continue
        if all(p[mul[x][y]] == mul[p[x]][p[y]] for x in range(n) for y in range(n)):
            out.append(p)
    return out


def brute_homomorphism_count(source, target) -> int:
    """Count homomorphisms by testing every total map; tiny sources only."""
    from itertools import product

    n, m = source.order, target.order
    if m ** (n - 1) > 2_000_000:
        raise CapExceededError("map space too large for brute enumeration")
    smul, tmul = source.mul_table, target.mul_table
    count = 0
    for tail in product(range(m), repeat=n - 1):
        img = (0,) + tail
        if all(
            img[smul[x][y]] == tmul[img[x]][img[y]]
            for x in range(n)
            for y in range(n)
        ):
            count += 1
    return count


def oracle_regular_subgroups(
    hol, *, max_hol_order: int = 400
) -> list[tuple[int, ...]]:
    """All regular subgroups of the holomorph, as sorted pair-index tuples.

    Grown from cyclic seeds by repeatedly adjoining one element; regularity
    for a subgroup of full base order means the translation components are
    pairwise distinct.
    """
    if hol.order > max_hol_order:
        raise CapExceededError(
            f"holomorph order {hol.order} exceeds oracle cap {max_hol_order}"
        )
    n = hol.base.order
    m = hol.m
    total = hol.order

    def close(seed: Iterable[int]) -> Optional[frozenset[int]]:
        elems = {0}
        elems.update(seed)
        queue = list(elems)
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for s in list(elems):
                for y in (hol.mul(x, s), hol.mul(s, x)):
                    if y not in elems:
                        elems.add(y)
                        queue.append(y)
                        if len(elems) > n:
                            return None
        return frozenset(elems)

    subgroups: set[frozenset[int]] = set()
    frontier: list[frozenset[int]] = []
    for x in range(total):
        c = close((x,))
        if c is not None and n % len(c) == 0 and c not in subgroups:
            subgroups.add(c)
            frontier.append(c)
    fi = 0
    while fi < len(frontier):
        current = frontier[fi]
        fi += 1
        if len(current) == n:
            continue
        for y in range(total):
            if y in current:
                continue
            c = close(current | {y})
            if c is not None and n % len(c) == 0 and c not in subgroups:
                subgroups.add(c)
                frontier.append(c)

    regular = []
    for sub in subgroups:
        if len(sub) != n:
            continue
        if len({i // m for i in sub}) == n:
            regular.append(tuple(sorted(sub)))
    regular.sort()
    return regular
