"""The holomorph of a finite group as a concrete permutation group.

An element is a pair ``(a, phi)`` with ``a`` a group element and ``phi`` an
automorphism (carrier index), realized as the permutation

    x  ->  phi(x) * a^{-1}

i.e. the right-translation normal form.  Pairs multiply by

    (a1, phi1) * (a2, phi2)  =  (a1 * phi1(a2), phi1 ∘ phi2)

which matches composition of the realized permutations (right factor first).
Pair ``(a, phi)`` gets the stable carrier index ``a * |Aut| + phi``.

Left translations embed as ``sigma -> (sigma^{-1}, conj(sigma))`` and right
translations as ``sigma -> (sigma, id)``.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import CapExceededError, InternalConsistencyError
from .groups import FiniteGroup
from .morphisms import AutomorphismGroup

HOL_ORDER_CAP = 200_000

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """(p ∘ q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def inverse_perm(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def left_translation(group, sigma: int) -> Perm:
    """x -> sigma * x."""
    row = group.mul_table[sigma]
    return tuple(row)


def right_translation(group, sigma: int) -> Perm:
    """x -> x * sigma^{-1}."""
    si = group.inv_table[sigma]
    mul = group.mul_table
    return tuple(mul[x][si] for x in range(group.order))


def inversion_perm(group) -> Perm:
    """x -> x^{-1}."""
    return tuple(group.inv_table)


class HolGroup:
    """Semidirect product of right translations by automorphisms.

    Provides group-protocol methods over pair indices; the dense Cayley table
    is never materialized (pair multiplication is two table lookups).
    """

    def __init__(self, base: FiniteGroup, aut: AutomorphismGroup):
        self.base = base
        self.aut = aut
        self.m = aut.order
        self.order = base.order * aut.order
        self.name = f"Hol({base.name})"
        gens = [self.encode(s, 0) for s in base.generators]
        gens += [self.encode(0, t) for t in aut.carrier.generators]
        self.generators = tuple(dict.fromkeys(g for g in gens if g != 0)) or (0,)
        self._order_cache: dict[int, int] = {}

    # -- pair layout ---------------------------------------------------------

    def encode(self, a: int, phi: int) -> int:
        return a * self.m + phi

    def decode(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.m)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, i: int, j: int) -> int:
        m = self.m
        a1, p1 = divmod(i, m)
        a2, p2 = divmod(j, m)
        row = self.aut.rows[p1]
        return self.base.mul_table[a1][row[a2]] * m + self.aut.carrier.mul(p1, p2)

    def inv(self, i: int) -> int:
        a, p = divmod(i, self.m)
        pi = self.aut.carrier.inv(p)
        return self.aut.rows[pi][self.base.inv_table[a]] * self.m + pi

    def element_order(self, i: int) -> int:
        cached = self._order_cache.get(i)
        if cached:
            return cached
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        self._order_cache[i] = k
        return k

    # -- realization ----------------------------------------------------------

    def realized(self, idx: int) -> Perm:
        """The permutation x -> phi(x) * a^{-1} for pair index ``idx``."""
        a, p = divmod(idx, self.m)
        row = self.aut.rows[p]
        ai = self.base.inv_table[a]
        mul = self.base.mul_table
        return tuple(mul[row[x]][ai] for x in range(self.base.order))

    def membership(self, perm: Perm) -> Optional[int]:
        """Recover the pair realizing ``perm``, or None if it is not affine."""
        n = self.base.order
        if len(perm) != n or sorted(perm) != list(range(n)):
            raise ValueError("not a permutation of the base group's elements")
        a = self.base.inv_table[perm[0]]
        mul = self.base.mul_table
        phi_row = tuple(mul[perm[x]][a] for x in range(n))
        phi = self.aut.index_of(phi_row)
        if phi is None:
            return None
        return self.encode(a, phi)

    # -- distinguished subsets --------------------------------------------------

    def left_index(self, sigma: int) -> int:
        return self.encode(self.base.inv_table[sigma], self.aut.conj[sigma])

    def right_index(self, sigma: int) -> int:
        return self.encode(sigma, 0)

    def left_set(self) -> tuple[int, ...]:
        return tuple(sorted(self.left_index(s) for s in range(self.base.order)))

    def right_set(self) -> tuple[int, ...]:
        return tuple(sorted(self.right_index(s) for s in range(self.base.order)))

    def to_table_group(self, cap: int = 4096) -> FiniteGroup:
        """Materialize the Cayley table (small holomorphs only)."""
        if self.order > cap:
            raise CapExceededError(
                f"holomorph of order {self.order} exceeds table cap {cap}"
            )
        table = [
            [self.mul(i, j) for j in range(self.order)] for i in range(self.order)
        ]
        return FiniteGroup(table, self.name, generators=self.generators)

    def __repr__(self):
        return f"HolGroup({self.base.name}, order={self.order})"


def build_holomorph(
    base: FiniteGroup,
    aut: Optional[AutomorphismGroup] = None,
    *,
    max_order: int = HOL_ORDER_CAP,
    verify: bool = True,
) -> HolGroup:
    if aut is None:
        from .morphisms import automorphism_group

        aut = automorphism_group(base)
    if base.order * aut.order > max_order:
        raise CapExceededError(
            f"holomorph order {base.order * aut.order} exceeds cap {max_order}"
        )
    if not isinstance(aut.carrier, FiniteGroup):
        raise CapExceededError(
            "holomorph construction requires a dense automorphism carrier"
        )
    hol = HolGroup(base, aut)
    if verify:
        _verify_holomorph(hol)
    return hol


def _verify_holomorph(hol: HolGroup):
    base = hol.base
    n = base.order

    # the two embeddings are injective homomorphisms
    for embed, label in ((hol.left_index, "left"), (hol.right_index, "right")):
        images = [embed(s) for s in range(n)]
        if len(set(images)) != n:
            raise InternalConsistencyError(f"{label} embedding not injective")
        for x in range(n):
            for y in range(n):
                if hol.mul(images[x], images[y]) != images[base.mul_table[x][y]]:
                    raise InternalConsistencyError(
                        f"{label} embedding is not a homomorphism"
                    )

    # regularity: evaluation at the identity is a bijection onto the base
    for indices, label in ((hol.left_set(), "left"), (hol.right_set(), "right")):
        hits = {hol.realized(i)[0] for i in indices}
        if len(hits) != n:
            raise InternalConsistencyError(f"{label} translations are not regular")

    # left and right translations centralize each other
    lefts = [hol.left_index(s) for s in range(n)]
    rights = [hol.right_index(s) for s in range(n)]
    for i in lefts:
        for j in rights:
            if hol.mul(i, j) != hol.mul(j, i):
                raise InternalConsistencyError(
                    "left and right translations fail to commute"
                )

    # pair multiplication matches composition of realized permutations
    if hol.order <= 600:
        pairs = [(i, j) for i in range(hol.order) for j in range(hol.order)]
    else:
        import random

        rng = random.Random(0x601)
        pairs = [
            (rng.randrange(hol.order), rng.randrange(hol.order))
            for _ in range(20_000)
        ]
    for i, j in pairs:
        if compose(hol.realized(i), hol.realized(j)) != hol.realized(hol.mul(i, j)):
            raise InternalConsistencyError(
                "realized permutations do not compose like pairs"
            )


def conjugate_set(hol: HolGroup, indices: Iterable[int], by: int) -> frozenset[int]:
    """{ by * x * by^{-1} } over pair indices."""
    byi = hol.inv(by)
    return frozenset(hol.mul(hol.mul(by, x), byi) for x in indices)


def is_normal_in_holomorph(hol: HolGroup, indices: Iterable[int]) -> bool:
    elems = frozenset(indices)
    for g in hol.generators:
        gi = hol.inv(g)
        for x in elems:
            if hol.mul(hol.mul(g, x), gi) not in elems:
                return False
    return True
