"""Homomorphism enumeration and automorphism groups.

The searches here all follow the same scheme: pick images for the source
group's generators one at a time, extend the partial map across the Cayley
graph of the subgroup generated so far, and reject on the first inconsistent
edge.  The per-generator "edge program" (which elements get assigned, which
edges only need checking) is computed once per group and reused.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import lcm
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import BudgetExceededError, CapExceededError, InternalConsistencyError
from .groups import FiniteGroup, GroupMapping, SubgroupRef, subgroup_closure

DEFAULT_SEARCH_BUDGET = 500_000_000
AUT_ORDER_CAP = 20_000
AUT_TABLE_CAP = 2_048

_TREE = 0
_CHECK = 1


@dataclass
class _Level:
    gen: int          # generator element index in the source group
    assigns: bool     # whether this level chooses a fresh image for `gen`
    ops: tuple        # (kind, x, s, y) with y == x*s in the source group


def _dedupe_generators(group) -> tuple[int, ...]:
    seen = set()
    out = []
    for g in group.generators:
        if g != 0 and g not in seen:
            seen.add(g)
            out.append(g)
    return tuple(out)


def generator_program(group, gens: Optional[Sequence[int]] = None) -> list[_Level]:
    """Edge program covering every (element, generator) pair exactly once."""
    use_default = gens is None
    if use_default:
        gens = _dedupe_generators(group)
        cached = getattr(group, "_edge_program", None)
        if cached is not None:
            return cached
    n = group.order
    mul = group.mul
    known = bytearray(n)
    known[0] = 1
    discovered = [0]
    levels: list[_Level] = []
    for j, s in enumerate(gens):
        ops = []
        assigns = not known[s]
        pending = [(x, j) for x in discovered]
        pi = 0
        while pi < len(pending):
            x, i = pending[pi]
            pi += 1
            si = gens[i]
            y = mul(x, si)
            if known[y]:
                ops.append((_CHECK, x, si, y))
            else:
                known[y] = 1
                discovered.append(y)
                ops.append((_TREE, x, si, y))
                for i2 in range(j + 1):
                    pending.append((y, i2))
        if assigns and ops[0] != (_TREE, 0, s, s):
            raise InternalConsistencyError("edge program seeding out of order")
        levels.append(_Level(gen=s, assigns=assigns, ops=tuple(ops)))
    if len(discovered) != n:
        raise InternalConsistencyError("generators do not reach every element")
    if use_default:
        try:
            group._edge_program = levels
        except AttributeError:
            pass
    return levels


def _map_search(
    source,
    target,
    *,
    same_order: bool,
    injective: bool,
    first_only: bool = False,
    budget: int = DEFAULT_SEARCH_BUDGET,
    first_image_range: Optional[tuple[int, int]] = None,
) -> list[tuple[int, ...]]:
    """Backtracking core shared by homomorphism / isomorphism enumeration.

    Candidate images are tried in increasing index order, so results come out
    in lexicographic order of the full image array.  ``first_image_range``
    restricts the candidates at the first level (a partition hint for
    parallel callers).
    """
    levels = generator_program(source)
    n, m = source.order, target.order
    tmul = target.mul
    img = [-1] * n
    img[0] = 0
    used = bytearray(m)
    used[0] = 1
    results: list[tuple[int, ...]] = []
    remaining = [budget]

    candidates: list[list[int]] = []
    for li, level in enumerate(levels):
        if not level.assigns:
            candidates.append([])
            continue
        so = source.element_order(level.gen)
        if same_order:
            cand = [y for y in range(m) if target.element_order(y) == so]
        else:
            cand = [y for y in range(m) if so % target.element_order(y) == 0]
        if li == 0 and first_image_range is not None:
            lo, hi = first_image_range
            cand = [y for y in cand if lo <= y < hi]
        candidates.append(cand)

    def rollback(undo: list[int]):
        for y in undo:
            if injective:
                used[img[y]] = 0
            img[y] = -1

    def run_ops(ops, skip_first: bool) -> tuple[bool, list[int]]:
        """Execute one level; on failure the partial work is already undone."""
        undo: list[int] = []
        left = remaining[0]
        for op in (ops[1:] if skip_first else ops):
            left -= 1
            if left < 0:
                remaining[0] = left
                raise BudgetExceededError("map search budget exceeded", steps=budget)
            kind, x, s, y = op
            v = tmul(img[x], img[s])
            if kind == _TREE:
                if injective and used[v]:
                    remaining[0] = left
                    rollback(undo)
                    return False, undo
                img[y] = v
                if injective:
                    used[v] = 1
                undo.append(y)
            elif img[y] != v:
                remaining[0] = left
                rollback(undo)
                return False, undo
        remaining[0] = left
        return True, undo

    def descend(li: int) -> bool:
        if li == len(levels):
            results.append(tuple(img))
            return first_only
        level = levels[li]
        if not level.assigns:
            ok, undo = run_ops(level.ops, skip_first=False)
            if ok:
                stop = descend(li + 1)
                rollback(undo)
                return stop
            return False
        s = level.gen
        for v in candidates[li]:
            if injective and used[v]:
                continue
            img[s] = v
            if injective:
                used[v] = 1
            ok, undo = run_ops(level.ops, skip_first=True)
            if ok:
                stop = descend(li + 1)
                rollback(undo)
                if stop:
                    if injective:
                        used[v] = 0
                    img[s] = -1
                    return True
            if injective:
                used[v] = 0
            img[s] = -1
        return False

    descend(0)
    return results


def enumerate_homomorphisms(
    source,
    target,
    accept: Optional[Callable[[GroupMapping], bool]] = None,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
    first_image_range: Optional[tuple[int, int]] = None,
) -> list[GroupMapping]:
    """All homomorphisms source -> target, in image-lexicographic order."""
    raw = _map_search(
        source,
        target,
        same_order=False,
        injective=False,
        budget=budget,
        first_image_range=first_image_range,
    )
    maps = [GroupMapping(source, target, arr) for arr in raw]
    if accept is not None:
        maps = [m for m in maps if accept(m)]
    return maps


def find_isomorphism(left, right, *, budget: int = DEFAULT_SEARCH_BUDGET):
    """First isomorphism in image-lex order, or None."""
    if left.order != right.order:
        return None
    left_profile = sorted(left.element_order(x) for x in range(left.order))
    right_profile = sorted(right.element_order(x) for x in range(right.order))
    if left_profile != right_profile:
        return None
    found = _map_search(
        left, right, same_order=True, injective=True, first_only=True, budget=budget
    )
    if not found:
        return None
    return GroupMapping(left, right, found[0])


class LazyMappedGroup:
    """Group of bijections (image rows), multiplied by composition on demand.

    Used as the automorphism carrier when the group is too large for a dense
    Cayley table.  Indices follow the lexicographic order of the rows, so the
    identity is index 0, matching the dense carrier convention.
    """

    def __init__(self, rows: np.ndarray, name: str):
        self._rows = rows
        self.name = name
        self.order = int(rows.shape[0])
        self.degree = int(rows.shape[1])
        self._index = {rows[i].tobytes(): i for i in range(self.order)}
        self._orders: dict[int, int] = {}
        self._gens: Optional[tuple[int, ...]] = None

    @property
    def identity(self) -> int:
        return 0

    def row(self, i: int) -> np.ndarray:
        return self._rows[i]

    def index_of_row(self, row: np.ndarray) -> Optional[int]:
        return self._index.get(np.ascontiguousarray(row, dtype=self._rows.dtype).tobytes())

    def mul(self, a: int, b: int) -> int:
        composed = self._rows[a][self._rows[b]]
        return self._index[composed.tobytes()]

    def inv(self, a: int) -> int:
        row = self._rows[a]
        out = np.empty_like(row)
        out[row] = np.arange(self.degree, dtype=row.dtype)
        return self._index[out.tobytes()]

    def element_order(self, a: int) -> int:
        cached = self._orders.get(a)
        if cached:
            return cached
        row = self._rows[a]
        seen = bytearray(self.degree)
        out = 1
        for start in range(self.degree):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = 1
                x = int(row[x])
                length += 1
            out = lcm(out, length)
        self._orders[a] = out
        return out

    @property
    def generators(self) -> tuple[int, ...]:
        if self._gens is None:
            gens: list[int] = []
            covered = {0}
            while len(covered) < self.order:
                nxt = next(i for i in range(self.order) if i not in covered)
                gens.append(nxt)
                covered = set(subgroup_closure(self, gens).elements)
            self._gens = tuple(gens) if gens else (0,)
        return self._gens

    def __repr__(self):
        return f"LazyMappedGroup({self.name!r}, order={self.order})"


class AutomorphismGroup:
    """The automorphism group of ``base``, with realization data.

    ``carrier`` is an abstract group whose index ``i`` realizes the bijection
    ``rows[i]`` on the base group; multiplication in the carrier matches
    composition of realized maps (right factor applied first).  ``conj`` maps
    each base element to the carrier index of conjugation by it, and ``inner``
    is the sorted image of ``conj``.
    """

    def __init__(self, base, carrier, rows, conj, inner, lookup):
        self.base = base
        self.carrier = carrier
        self.rows = rows
        self.conj = conj
        self.inner = inner
        self._lookup = lookup
        self._inner_set = frozenset(inner)

    @property
    def order(self) -> int:
        return self.carrier.order

    def apply(self, aut_index: int, x: int) -> int:
        return int(self.rows[aut_index][x])

    def realize(self, aut_index: int) -> GroupMapping:
        return GroupMapping(self.base, self.base, self.rows[aut_index])

    def index_of(self, images) -> Optional[int]:
        if self._lookup is not None:
            return self._lookup.get(tuple(images))
        return self.carrier.index_of_row(np.asarray(images))

    def is_inner(self, aut_index: int) -> bool:
        return aut_index in self._inner_set

    def conj_mapping(self) -> GroupMapping:
        return GroupMapping(self.base, self.carrier, self.conj)

    def inner_subgroup(self) -> SubgroupRef:
        return SubgroupRef(self.carrier, self.inner)

    def __repr__(self):
        return f"AutomorphismGroup(base={self.base.name}, order={self.order})"


def automorphism_group(
    base,
    *,
    max_order: int = AUT_ORDER_CAP,
    table_cap: int = AUT_TABLE_CAP,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> AutomorphismGroup:
    """Enumerate all automorphisms and package them with a carrier group."""
    raw = _map_search(base, base, same_order=True, injective=True, budget=budget)
    raw.sort()
    k = len(raw)
    if k > max_order:
        raise CapExceededError(f"automorphism count {k} exceeds cap {max_order}")
    if raw[0] != tuple(range(base.order)):
        raise InternalConsistencyError("identity map missing from enumeration")

    mul, inv = base.mul, base.inv
    n = base.order
    if k <= table_cap:
        lookup = {row: i for i, row in enumerate(raw)}
        table = [[0] * k for _ in range(k)]
        for i, ri in enumerate(raw):
            row_out = table[i]
            for j, rj in enumerate(raw):
                row_out[j] = lookup[tuple(ri[x] for x in rj)]
        carrier = FiniteGroup(table, f"Aut({base.name})")
        rows_store: object = tuple(raw)
        conj = []
        for s in range(n):
            si = inv(s)
            row = tuple(mul(mul(s, x), si) for x in range(n))
            idx = lookup.get(row)
            if idx is None:
                raise InternalConsistencyError("conjugation map is not an automorphism")
            conj.append(idx)
    else:
        arr = np.array(raw, dtype=np.uint32)
        del raw
        carrier = LazyMappedGroup(arr, f"Aut({base.name})")
        rows_store = arr
        lookup = None
        conj = []
        for s in range(n):
            si = inv(s)
            row = np.fromiter(
                (mul(mul(s, x), si) for x in range(n)), dtype=np.uint32, count=n
            )
            idx = carrier.index_of_row(row)
            if idx is None:
                raise InternalConsistencyError("conjugation map is not an automorphism")
            conj.append(idx)

    inner = tuple(sorted(set(conj)))
    aut = AutomorphismGroup(base, carrier, rows_store, tuple(conj), inner, lookup)
    _verify_aut(aut)
    return aut


def _verify_aut(aut: AutomorphismGroup):
    base, carrier = aut.base, aut.carrier
    n, k = base.order, carrier.order
    rows = aut.rows
    # realized conjugation matches the group's own conjugation
    for s in (0, *base.generators):
        row = rows[aut.conj[s]]
        si = base.inv(s)
        if any(int(row[x]) != base.mul(base.mul(s, x), si) for x in range(n)):
            raise InternalConsistencyError("conj realization mismatch")
    # conj is a homomorphism (full on small bases)
    if n <= 128:
        cm, conj = carrier.mul, aut.conj
        for x in range(n):
            for y in range(n):
                if conj[base.mul(x, y)] != cm(conj[x], conj[y]):
                    raise InternalConsistencyError("conj is not a homomorphism")
    # carrier multiplication matches composition of realized maps
    if k <= 256:
        pairs = ((a, b) for a in range(k) for b in range(k))
    else:
        rng = random.Random(0xCA11)
        pairs = ((rng.randrange(k), rng.randrange(k)) for _ in range(5_000))
    cmul = carrier.mul
    for a, b in pairs:
        ra, rb, rab = rows[a], rows[b], rows[cmul(a, b)]
        if any(int(ra[int(rb[x])]) != int(rab[x]) for x in range(n)):
            raise InternalConsistencyError(
                "carrier multiplication disagrees with composition"
            )


def is_characteristic(aut: AutomorphismGroup, sub: SubgroupRef | Sequence[int]) -> bool:
    """True iff every carrier generator fixes the subgroup setwise."""
    elems = sub.elements if isinstance(sub, SubgroupRef) else tuple(sub)
    target = frozenset(int(x) for x in elems)
    for t in aut.carrier.generators:
        row = aut.rows[t]
        if any(int(row[x]) not in target for x in elems):
            return False
    return True


def extend_generator_map(group, gen_images, compose, identity):
    """Extend generator images to a full map via words, or None if inconsistent.

    ``compose(a, b)`` multiplies two image values (right factor first).  Used
    for actions valued in automorphism arrays and similar.  Images supplied
    for redundant generators must agree with the extension.
    """
    gens = _dedupe_generators(group)
    if len(gen_images) != len(gens):
        raise ValueError(
            f"expected {len(gens)} generator images, got {len(gen_images)}"
        )
    levels = generator_program(group)
    out: list = [None] * group.order
    out[0] = identity
    for level, image in zip(levels, gen_images):
        ops = level.ops
        if level.assigns:
            out[level.gen] = image
            ops = ops[1:]
        elif out[level.gen] != image:
            return None
        for kind, x, s, y in ops:
            v = compose(out[x], out[s])
            if kind == _TREE:
                out[y] = v
            elif out[y] != v:
                return None
    return out
