"""Finite groups as multiplication tables, with 0-based dense element indices.

Conventions used everywhere in this package:

* elements of a group of order ``n`` are the integers ``0..n-1`` and the
  identity is always index ``0``;
* a mapping between groups is a plain image array;
* "composition" of mappings/permutations applies the right factor first:
  ``(p * q)(x) = p(q(x))``.

Most algorithms only need ``order``, ``mul``, ``inv`` and ``generators`` and
accept any object providing them (see :class:`FiniteGroup` for the canonical
table-backed implementation).
"""

from __future__ import annotations

import random
from math import gcd
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import BudgetExceededError, GroupConstructionError

ASSOC_FULL_CAP = 512
NORMAL_SUBGROUP_BUDGET = 10_000_000

_ASSOC_SAMPLES = 50_000
_ASSOC_SEED = 0x5EED


def _greedy_generators(group) -> tuple[int, ...]:
    """Smallest-index-first generating set; deterministic."""
    n = group.order
    if n == 1:
        return (0,)
    gens: list[int] = []
    covered = {0}
    while len(covered) < n:
        nxt = next(x for x in range(n) if x not in covered)
        gens.append(nxt)
        covered = set(subgroup_closure(group, gens).elements)
    return tuple(gens)


class FiniteGroup:
    """A finite group given by its full multiplication table.

    The table is validated on construction: Latin square, identity at index
    0, two-sided inverses and associativity (full up to ``assoc_cap``
    elements, randomly sampled beyond).  Treat instances as immutable.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        name: str = "G",
        generators: Optional[Sequence[int]] = None,
        *,
        assoc_cap: int = ASSOC_FULL_CAP,
        check: bool = True,
    ):
        rows = tuple(tuple(int(v) for v in row) for row in table)
        n = len(rows)
        if n == 0:
            raise GroupConstructionError("empty multiplication table")
        self.name = name
        self.order = n
        self.mul_table = rows
        if check:
            self._validate_table(assoc_cap)
        inv = [-1] * n
        for x in range(n):
            row = rows[x]
            for y in range(n):
                if row[y] == 0:
                    inv[x] = y
                    break
            if inv[x] < 0:
                raise GroupConstructionError(f"element {x} has no inverse")
        self.inv_table = tuple(inv)
        self._orders: list[int] = [0] * n
        self._classes: Optional[list[tuple[int, ...]]] = None
        if generators is None:
            self.generators = _greedy_generators(self)
        else:
            gens = tuple(int(g) for g in generators)
            if not gens:
                raise GroupConstructionError("generator list must be nonempty")
            if any(g < 0 or g >= n for g in gens):
                raise GroupConstructionError("generator index out of range")
            if check and len(subgroup_closure(self, gens).elements) != n:
                raise GroupConstructionError(
                    f"generators {gens} do not generate the whole group"
                )
            self.generators = gens

    # -- construction checks ------------------------------------------------

    def _validate_table(self, assoc_cap: int):
        n = self.order
        arr = np.asarray(self.mul_table, dtype=np.int64)
        if arr.shape != (n, n):
            raise GroupConstructionError(f"table is not {n}x{n}")
        if arr.min() < 0 or arr.max() >= n:
            raise GroupConstructionError("table entry out of range")
        ref = np.arange(n)
        if not (np.sort(arr, axis=1) == ref).all():
            bad = next(
                i for i in range(n) if sorted(self.mul_table[i]) != list(range(n))
            )
            raise GroupConstructionError(f"row {bad} is not a permutation")
        if not (np.sort(arr, axis=0) == ref[:, None]).all():
            bad = next(
                j
                for j in range(n)
                if sorted(arr[:, j].tolist()) != list(range(n))
            )
            raise GroupConstructionError(f"column {bad} is not a permutation")
        if not ((arr[0] == ref).all() and (arr[:, 0] == ref).all()):
            raise GroupConstructionError("index 0 is not a two-sided identity")
        if n <= assoc_cap:
            for x in range(n):
                if not np.array_equal(arr[arr[x]], arr[x][arr]):
                    y, z = np.argwhere(arr[arr[x]] != arr[x][arr])[0]
                    raise GroupConstructionError(
                        f"associativity fails at triple ({x},{int(y)},{int(z)})"
                    )
            self.associativity_sampled = False
        else:
            rng = random.Random(_ASSOC_SEED)
            for _ in range(_ASSOC_SAMPLES):
                x, y, z = (rng.randrange(n) for _ in range(3))
                if arr[arr[x, y], z] != arr[x, arr[y, z]]:
                    raise GroupConstructionError(
                        f"associativity fails at triple ({x},{y},{z})"
                    )
            self.associativity_sampled = True

    # -- protocol -----------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    @property
    def identity(self) -> int:
        return 0

    def element_order(self, a: int) -> int:
        cached = self._orders[a]
        if cached:
            return cached
        k, x = 1, a
        while x != 0:
            x = self.mul_table[x][a]
            k += 1
        self._orders[a] = k
        return k

    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(x) for x in range(self.order))

    def is_abelian(self) -> bool:
        t = self.mul_table
        return all(
            t[x][y] == t[y][x] for x in range(self.order) for y in range(x)
        )

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


class SubgroupRef:
    """A subgroup of ``parent`` held as a strictly sorted element-index tuple."""

    __slots__ = ("parent", "elements", "_set")

    def __init__(self, parent, elements: Iterable[int]):
        elts = tuple(sorted(set(int(x) for x in elements)))
        if not elts or elts[0] != 0:
            raise ValueError("subgroup must contain the identity")
        self.parent = parent
        self.elements = elts
        self._set = frozenset(elts)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __eq__(self, other):
        return (
            isinstance(other, SubgroupRef)
            and self.parent is other.parent
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"SubgroupRef(order={self.order}, elements={self.elements})"


class GroupMapping:
    """A total map between two groups, stored as an image array."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source, target, images: Sequence[int]):
        imgs = tuple(int(v) for v in images)
        if len(imgs) != source.order:
            raise ValueError("image array length does not match source order")
        if any(v < 0 or v >= target.order for v in imgs):
            raise ValueError("image out of range")
        self.source = source
        self.target = target
        self.images = imgs

    def apply(self, x: int) -> int:
        return self.images[x]

    def is_homomorphism(self) -> bool:
        if self.images[0] != 0:
            return False
        src, imgs = self.source, self.images
        tmul = self.target.mul
        return all(
            imgs[src.mul(x, y)] == tmul(imgs[x], imgs[y])
            for x in range(src.order)
            for y in range(src.order)
        )

    def is_bijective(self) -> bool:
        return (
            self.source.order == self.target.order
            and len(set(self.images)) == self.source.order
        )

    @classmethod
    def homomorphism(cls, source, target, images: Sequence[int]) -> "GroupMapping":
        m = cls(source, target, images)
        if not m.is_homomorphism():
            raise ValueError("image array is not a homomorphism")
        return m

    def __repr__(self):
        return f"GroupMapping({self.source.name}->{self.target.name}, {self.images})"


# -- subgroup machinery ------------------------------------------------------


def subgroup_closure(group, seed: Iterable[int]) -> SubgroupRef:
    """Smallest subgroup containing ``seed``; sorted, deterministic."""
    n = group.order
    seeds = sorted(set(int(x) for x in seed))
    if any(x < 0 or x >= n for x in seeds):
        raise ValueError(f"seed index out of range 0..{n - 1}")
    elems = _closure(group, seeds)
    return SubgroupRef(group, elems)


def _closure(
    group,
    seeds: Sequence[int],
    cap: Optional[int] = None,
    budget: Optional[list[int]] = None,
) -> Optional[set[int]]:
    """Closure of {identity} ∪ seeds under multiplication.

    Returns None if a ``cap`` on the subgroup order is exceeded.  ``budget``
    is a single-element list of remaining multiplication steps, decremented
    in place.
    """
    mul = group.mul
    elems = {0}
    elems.update(seeds)
    gens = [s for s in seeds if s != 0]
    queue = list(elems)
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for s in gens:
            if budget is not None:
                budget[0] -= 1
                if budget[0] < 0:
                    raise BudgetExceededError(
                        "subgroup enumeration budget exceeded"
                    )
            y = mul(x, s)
            if y not in elems:
                elems.add(y)
                queue.append(y)
                if cap is not None and len(elems) > cap:
                    return None
    return elems


def set_product(group, left: Iterable[int], right: Iterable[int]) -> tuple[int, ...]:
    """Element-wise product set {a*b}; a subgroup when both factors are normal."""
    mul = group.mul
    out = {mul(a, b) for a in left for b in right}
    return tuple(sorted(out))


def is_subgroup_set(group, elements: Iterable[int]) -> bool:
    elts = set(elements)
    if 0 not in elts:
        return False
    mul = group.mul
    return all(mul(a, b) in elts for a in elts for b in elts)


def center(group) -> SubgroupRef:
    n = group.order
    mul = group.mul
    central = [
        x
        for x in range(n)
        if all(mul(x, y) == mul(y, x) for y in range(n))
    ]
    return SubgroupRef(group, central)


def is_centerless(group) -> bool:
    return center(group).order == 1


def commutator_subgroup(group) -> SubgroupRef:
    n = group.order
    mul, inv = group.mul, group.inv
    comms = {
        mul(mul(x, y), mul(inv(x), inv(y)))
        for x in range(n)
        for y in range(n)
    }
    return subgroup_closure(group, comms)


def is_normal(group, sub: SubgroupRef) -> bool:
    """True iff conjugation by every generator fixes the subgroup setwise."""
    mul, inv = group.mul, group.inv
    elts = sub._set
    for g in group.generators:
        gi = inv(g)
        for s in sub.elements:
            if mul(mul(g, s), gi) not in elts:
                return False
    return True


def conjugacy_classes(group) -> list[tuple[int, ...]]:
    """Classes as sorted tuples, ordered by smallest member; class of 0 first."""
    cached = getattr(group, "_classes", None)
    if cached is not None:
        return cached
    n = group.order
    mul, inv = group.mul, group.inv
    gens = group.generators
    seen = bytearray(n)
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = [x]
        seen[x] = 1
        qi = 0
        while qi < len(orbit):
            y = orbit[qi]
            qi += 1
            for g in gens:
                z = mul(mul(g, y), inv(g))
                if not seen[z]:
                    seen[z] = 1
                    orbit.append(z)
        classes.append(tuple(sorted(orbit)))
    try:
        group._classes = classes
    except AttributeError:
        pass
    return classes


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def normal_subgroups(
    group,
    order_filter: Optional[Callable[[int], bool]] = None,
    *,
    budget: int = NORMAL_SUBGROUP_BUDGET,
) -> list[SubgroupRef]:
    """All normal subgroups, as closures of unions of conjugacy classes.

    ``order_filter`` restricts the returned orders (and prunes the search to
    subgroups no larger than the largest admitted divisor).  Raises
    :class:`BudgetExceededError` when the closure-step budget runs out.
    """
    n = group.order
    classes = conjugacy_classes(group)
    if order_filter is not None:
        allowed = [d for d in divisors(n) if order_filter(d)]
        cap = max(allowed) if allowed else 0
    else:
        allowed = divisors(n)
        cap = n
    remaining = [budget]
    found: dict[frozenset[int], tuple[int, ...]] = {}
    trivial = frozenset((0,))
    found[trivial] = (0,)
    work = [trivial]
    qi = 0
    while qi < len(work):
        base = work[qi]
        qi += 1
        for cls in classes[1:]:
            if cls[0] in base:
                continue
            closed = _closure(group, sorted(base | set(cls)), cap=cap, budget=remaining)
            if closed is None:
                continue
            key = frozenset(closed)
            if key not in found:
                found[key] = tuple(sorted(closed))
                work.append(key)
    refs = [
        SubgroupRef(group, elts)
        for elts in found.values()
        if len(elts) in allowed
    ]
    refs.sort(key=lambda r: (r.order, r.elements))
    return refs


def quotient(group, normal: SubgroupRef) -> tuple[FiniteGroup, GroupMapping]:
    """Coset group with minimum-index coset representatives, plus the projection."""
    if not is_normal(group, normal):
        raise ValueError(f"subgroup {normal.elements} is not normal")
    n = group.order
    mul = group.mul
    coset_rep = [-1] * n
    reps: list[int] = []
    for x in range(n):
        if coset_rep[x] >= 0:
            continue
        reps.append(x)
        for u in normal.elements:
            coset_rep[mul(x, u)] = x
    rep_index = {r: i for i, r in enumerate(reps)}
    m = len(reps)
    table = [
        [rep_index[coset_rep[mul(a, b)]] for b in reps]
        for a in reps
    ]
    qname = f"{group.name}/N{normal.order}"
    gen_imgs = sorted({rep_index[coset_rep[g]] for g in group.generators} - {0})
    qgroup = FiniteGroup(table, qname, generators=gen_imgs or [0])
    proj = GroupMapping(group, qgroup, [rep_index[coset_rep[x]] for x in range(n)])
    if not proj.is_homomorphism():
        raise GroupConstructionError("quotient projection failed verification")
    return qgroup, proj


def subgroup_as_group(
    group, elements: Sequence[int], name: Optional[str] = None
) -> tuple[FiniteGroup, dict[int, int]]:
    """Reindex a subgroup (sorted element list) as a standalone FiniteGroup."""
    elts = tuple(sorted(elements))
    pos = {e: i for i, e in enumerate(elts)}
    mul = group.mul
    table = [[pos[mul(a, b)] for b in elts] for a in elts]
    sub = FiniteGroup(table, name or f"{group.name}|{len(elts)}")
    return sub, pos


def is_elementary_2_abelian(group) -> bool:
    mul = group.mul
    return all(mul(x, x) == 0 for x in range(group.order))


def exponent(group) -> int:
    out = 1
    for x in range(group.order):
        o = group.element_order(x)
        out = out * o // gcd(out, o)
    return out


def are_isomorphic(left, right) -> Optional[GroupMapping]:
    """An isomorphism if one exists, else None; first found in image-lex order."""
    from .morphisms import find_isomorphism

    return find_isomorphism(left, right)


def series_equivalent(group, k1: SubgroupRef, k2: SubgroupRef) -> bool:
    """True iff the subgroups are isomorphic and so are the two quotients."""
    if not (is_normal(group, k1) and is_normal(group, k2)):
        raise ValueError("series equivalence requires normal subgroups")
    if k1.order != k2.order:
        return False
    s1, _ = subgroup_as_group(group, k1.elements)
    s2, _ = subgroup_as_group(group, k2.elements)
    if are_isomorphic(s1, s2) is None:
        return False
    q1, _ = quotient(group, k1)
    q2, _ = quotient(group, k2)
    return are_isomorphic(q1, q2) is not None
