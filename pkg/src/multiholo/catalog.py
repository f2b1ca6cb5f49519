"""Group construction: builtins, combinators, a curated corpus, and files.

Element indexing is deterministic per construction kind:

* ``cyclic(n)``: residues, addition mod n.
* ``dihedral(n)``: rotations 0..n-1 then reflections n..2n-1.
* ``symmetric(k)`` / ``alternating(k)``: permutations in lexicographic order.
* ``direct_product(A, B)``: pair (a, b) gets index a*|B| + b.
* ``semidirect_product(N, H, action)``: pair (x, h) gets index x*|H| + h,
  multiplication (x1,h1)(x2,h2) = (x1 * act(h1)(x2), h1 h2).

The group file format is one JSON header line followed by integer rows:
for ``kind=table`` the n multiplication rows, for ``kind=permgroup`` one
generator image-array per line.  Files are fully re-verified on load and the
identity is re-indexed to 0 if needed.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path
from typing import Callable, Optional, Sequence

from .errors import GroupConstructionError, GroupFileError
from .groups import FiniteGroup
from .morphisms import extend_generator_map


# -- builders -----------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupConstructionError("cyclic order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    gens = [1] if n > 1 else [0]
    return FiniteGroup(table, f"C{n}", generators=gens)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon; rotations first, order 2n."""
    if n < 1:
        raise GroupConstructionError("dihedral parameter must be positive")
    size = 2 * n
    table = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            table[i][j] = (i + j) % n                  # r^i r^j
            table[i][n + j] = n + (j - i) % n          # r^i (s r^j)
            table[n + i][j] = n + (i + j) % n          # (s r^i) r^j
            table[n + i][n + j] = (j - i) % n          # (s r^i)(s r^j)
    gens = [n] if n == 1 else [1, n]
    return FiniteGroup(table, f"D{n}", generators=gens)


def _perm_mul(p, q):
    return tuple(p[x] for x in q)


def _perm_parity(p) -> int:
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                inv += 1
    return inv % 2


def _perm_group(elements: list[tuple[int, ...]], name: str, gens_perms) -> FiniteGroup:
    index = {p: i for i, p in enumerate(elements)}
    table = [
        [index[_perm_mul(p, q)] for q in elements]
        for p in elements
    ]
    gens = [index[g] for g in gens_perms if index[g] != 0]
    return FiniteGroup(table, name, generators=gens or [0])


def symmetric(k: int) -> FiniteGroup:
    if k < 1:
        raise GroupConstructionError("symmetric degree must be positive")
    elements = sorted(permutations(range(k)))
    if k == 1:
        return _perm_group(elements, "S1", [elements[0]])
    swap = tuple([1, 0] + list(range(2, k)))
    cycle = tuple(list(range(1, k)) + [0])
    return _perm_group(elements, f"S{k}", [swap, cycle])


def alternating(k: int) -> FiniteGroup:
    if k < 1:
        raise GroupConstructionError("alternating degree must be positive")
    elements = sorted(p for p in permutations(range(k)) if _perm_parity(p) == 0)
    if k <= 2:
        return _perm_group(elements, f"A{k}", [elements[0]])
    three = tuple([1, 2, 0] + list(range(3, k)))
    if k == 3:
        gens = [three]
    elif k % 2 == 1:
        gens = [three, tuple(list(range(1, k)) + [0])]
    else:
        gens = [three, tuple([0] + list(range(2, k)) + [1])]
    return _perm_group(elements, f"A{k}", gens)


def quaternion8() -> FiniteGroup:
    """The order-8 group of unit quaternions 1, -1, ±i, ±j, ±k."""
    units = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    axis_mul = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }

    def split(u):
        return (-1, u[1:]) if u.startswith("-") else (1, u)

    def mul(u, v):
        su, au = split(u)
        sv, av = split(v)
        s, a = axis_mul[(au, av)]
        s *= su * sv
        return a if s == 1 else f"-{a}"

    index = {u: i for i, u in enumerate(units)}
    table = [[index[mul(u, v)] for v in units] for u in units]
    return FiniteGroup(table, "Q8", generators=[index["i"], index["j"]])


def direct_product(left: FiniteGroup, right: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    nl, nr = left.order, right.order
    lt, rt = left.mul_table, right.mul_table
    table = [
        [lt[a1][a2] * nr + rt[b1][b2] for a2 in range(nl) for b2 in range(nr)]
        for a1 in range(nl)
        for b1 in range(nr)
    ]
    gens = [g * nr for g in left.generators if g] + [
        g for g in right.generators if g
    ]
    return FiniteGroup(
        table, name or f"{left.name}x{right.name}", generators=gens or [0]
    )


def semidirect_product(
    normal: FiniteGroup,
    acting: FiniteGroup,
    action: Sequence[Sequence[int]],
    name: Optional[str] = None,
    generators: Optional[Sequence[int]] = None,
) -> FiniteGroup:
    """Split extension; ``action`` lists one automorphism image array of the
    normal factor per generator of the acting factor."""
    arrays = [tuple(int(v) for v in arr) for arr in action]
    for arr in arrays:
        if sorted(arr) != list(range(normal.order)):
            raise GroupConstructionError("action array is not a bijection")
        if any(
            arr[normal.mul_table[x][y]] != normal.mul_table[arr[x]][arr[y]]
            for x in range(normal.order)
            for y in range(normal.order)
        ):
            raise GroupConstructionError("action array is not an automorphism")
    identity = tuple(range(normal.order))
    act = extend_generator_map(
        acting, arrays, compose=lambda a, b: tuple(a[x] for x in b), identity=identity
    )
    if act is None:
        raise GroupConstructionError(
            "action arrays do not extend to a homomorphism of the acting group"
        )
    nn, nh = normal.order, acting.order
    nt, ht = normal.mul_table, acting.mul_table
    table = [[0] * (nn * nh) for _ in range(nn * nh)]
    for x1 in range(nn):
        for h1 in range(nh):
            row = table[x1 * nh + h1]
            a1 = act[h1]
            for x2 in range(nn):
                moved = nt[x1][a1[x2]]
                base = moved * nh
                hrow = ht[h1]
                for h2 in range(nh):
                    row[x2 * nh + h2] = base + hrow[h2]
    gens = generators
    if gens is None:
        gens = [x * nh for x in normal.generators if x] + [
            h for h in acting.generators if h
        ]
    return FiniteGroup(
        table, name or f"{normal.name}:{acting.name}", generators=gens or [0]
    )


def from_table(
    rows: Sequence[Sequence[int]], name: str = "table-group"
) -> FiniteGroup:
    return FiniteGroup(rows, name)


def perm_group(degree: int, generators: Sequence[Sequence[int]], name: str) -> FiniteGroup:
    """Closure of the given permutations; identity gets index 0, the rest
    follow in breadth-first discovery order."""
    gens = [tuple(int(v) for v in g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise GroupConstructionError(f"generator {g} is not a permutation")
    ident = tuple(range(degree))
    elements = [ident]
    seen = {ident}
    qi = 0
    while qi < len(elements):
        p = elements[qi]
        qi += 1
        for g in gens:
            q = _perm_mul(p, g)
            if q not in seen:
                seen.add(q)
                elements.append(q)
    index = {p: i for i, p in enumerate(elements)}
    table = [[index[_perm_mul(p, q)] for q in elements] for p in elements]
    gen_idx = [index[g] for g in gens if index[g] != 0]
    return FiniteGroup(table, name, generators=gen_idx or [0])


# -- spec elaboration ----------------------------------------------------------


def elaborate(spec: dict) -> FiniteGroup:
    """Build a group from a JSON-able description (deterministic)."""
    kind = spec.get("kind")
    if kind == "cyclic":
        return cyclic(int(spec["n"]))
    if kind == "dihedral":
        return dihedral(int(spec["n"]))
    if kind == "symmetric":
        return symmetric(int(spec["n"]))
    if kind == "alternating":
        return alternating(int(spec["n"]))
    if kind == "quaternion":
        return quaternion8()
    if kind == "product":
        return direct_product(
            elaborate(spec["left"]), elaborate(spec["right"]), spec.get("name")
        )
    if kind == "semidirect":
        return semidirect_product(
            elaborate(spec["normal"]),
            elaborate(spec["acting"]),
            spec["action"],
            spec.get("name"),
        )
    if kind == "table":
        return from_table(spec["rows"], spec.get("name", "table-group"))
    if kind == "permgroup":
        return perm_group(
            int(spec["degree"]), spec["generators"], spec.get("name", "perm-group")
        )
    raise GroupConstructionError(f"unknown construction kind {kind!r}")


# -- curated corpus -------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    order: int
    slow: bool
    description: str
    build: Callable[[], FiniteGroup]


def _scaled_cyclic_action(p: int, mult: int) -> list[int]:
    return [(mult * x) % p for x in range(p)]


def _order63_metacyclic() -> FiniteGroup:
    return semidirect_product(
        cyclic(7), cyclic(9), [_scaled_cyclic_action(7, 2)], name="C7:C9"
    )


def _order63_split() -> FiniteGroup:
    inner = semidirect_product(
        cyclic(7), cyclic(3), [_scaled_cyclic_action(7, 2)], name="C7:C3"
    )
    return direct_product(inner, cyclic(3), name="(C7:C3)xC3")


def _order605() -> FiniteGroup:
    base = direct_product(cyclic(11), cyclic(11), name="C11xC11")
    action = [(3 * a % 11) * 11 + (9 * b % 11) for a in range(11) for b in range(11)]
    # generated by the diagonal vector (1,1) and the acting generator; the
    # default factor-wise set would force a three-level automorphism search
    return semidirect_product(
        base, cyclic(5), [action], name="(C11xC11):C5", generators=[12 * 5, 1]
    )


def _entries() -> list[CatalogEntry]:
    out: list[CatalogEntry] = []

    def add(name, order, build, slow=False, description=""):
        out.append(CatalogEntry(name, order, slow, description, build))

    add("C1", 1, lambda: cyclic(1), description="trivial group")
    for k in range(2, 9):
        add(f"C{k}", k, lambda k=k: cyclic(k), description=f"cyclic of order {k}")
    add("C2xC2", 4, lambda: direct_product(cyclic(2), cyclic(2)))
    add("C2xC4", 8, lambda: direct_product(cyclic(2), cyclic(4)))
    add(
        "C2xC2xC2",
        8,
        lambda: direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2), name="C2xC2xC2"),
    )
    add("C3xC3", 9, lambda: direct_product(cyclic(3), cyclic(3)))
    for k in range(3, 8):
        add(
            f"D{k}",
            2 * k,
            lambda k=k: dihedral(k),
            description=f"dihedral of order {2 * k}",
        )
    add("Q8", 8, quaternion8, description="quaternion group")
    add("S3", 6, lambda: symmetric(3), description="symmetric, complete")
    add("S4", 24, lambda: symmetric(4), description="symmetric, complete")
    add("A4", 12, lambda: alternating(4), description="alternating, centerless")
    add("A5", 60, lambda: alternating(5), description="alternating, simple")
    add("S5", 120, lambda: symmetric(5), slow=True, description="symmetric, complete")
    add(
        "C7:C9",
        63,
        _order63_metacyclic,
        slow=True,
        description="metacyclic; the acting generator cubes to a central element",
    )
    add(
        "C7:C3xC3",
        63,
        _order63_split,
        slow=True,
        description="(C7:C3) x C3",
    )
    add(
        "C11xC11:C5",
        605,
        _order605,
        slow=True,
        description="(C11 x C11) : C5, eigenvalues 3 and 9 mod 11",
    )
    return out


CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _entries()}

CATALOG_DIR_ENV = "MULTIHOLO_CATALOG_DIR"

_BUILTIN_RE = re.compile(r"^([CDSA])(\d+)$")


def catalog_names(include_slow: bool = True) -> list[str]:
    return [n for n, e in CATALOG.items() if include_slow or not e.slow]


def build_catalog_group(name: str) -> FiniteGroup:
    entry = CATALOG.get(name)
    if entry is None:
        raise KeyError(f"unknown catalog group {name!r}")
    return entry.build()


def _file_catalog() -> dict[str, Path]:
    root = os.environ.get(CATALOG_DIR_ENV)
    if not root:
        return {}
    found = {}
    base = Path(root)
    if base.is_dir():
        for path in sorted(base.glob("*.group")):
            found[path.stem] = path
    return found


def resolve_group(source: str) -> FiniteGroup:
    """Catalog name, file path, or inline builtin expression like C2xD4."""
    files = _file_catalog()
    if source in files:
        return parse_group_file(files[source])
    if source in CATALOG:
        return build_catalog_group(source)
    if os.path.sep in source or source.endswith(".group") or os.path.exists(source):
        return parse_group_file(source)
    parts = source.split("x")
    built = []
    for part in parts:
        if part in CATALOG:
            built.append(build_catalog_group(part))
            continue
        if part == "Q8":
            built.append(quaternion8())
            continue
        m = _BUILTIN_RE.match(part)
        if not m:
            raise KeyError(f"cannot resolve group source {source!r}")
        kind, num = m.group(1), int(m.group(2))
        built.append(
            {"C": cyclic, "D": dihedral, "S": symmetric, "A": alternating}[kind](num)
        )
    group = built[0]
    for extra in built[1:]:
        group = direct_product(group, extra)
    if len(built) > 1:
        group.name = source
    return group


# -- group files ----------------------------------------------------------------


def write_group_file(group: FiniteGroup, path) -> None:
    header = {
        "name": group.name,
        "order": group.order,
        "kind": "table",
        "generators": list(group.generators),
    }
    lines = [json.dumps(header, sort_keys=True)]
    for row in group.mul_table:
        lines.append(" ".join(str(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _parse_int_row(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise GroupFileError(f"line {lineno}: non-integer field ({exc})") from None


def parse_group_file(path) -> FiniteGroup:
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GroupFileError(f"{path}: empty file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{path}: line 1: bad header ({exc.msg})") from None
    if not isinstance(header, dict) or "kind" not in header:
        raise GroupFileError(f"{path}: line 1: header must set 'kind'")
    kind = header["kind"]
    name = header.get("name", Path(path).stem)

    if kind == "table":
        order = header.get("order")
        rows = [_parse_int_row(ln, i + 2) for i, ln in enumerate(lines[1:])]
        if order is not None and len(rows) != order:
            raise GroupFileError(
                f"{path}: header order {order} but {len(rows)} table rows"
            )
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise GroupFileError(
                    f"{path}: line {i + 2}: expected {n} entries, got {len(row)}"
                )
        rows, moved = _reindex_identity_first(rows, path)
        try:
            group = FiniteGroup(rows, name)
        except GroupConstructionError as exc:
            raise GroupFileError(f"{path}: {exc}") from None
        group.reindexed_from = moved
        return group

    if kind == "permgroup":
        degree = header.get("degree")
        if not isinstance(degree, int) or degree < 1:
            raise GroupFileError(f"{path}: line 1: permgroup header needs 'degree'")
        gens = [_parse_int_row(ln, i + 2) for i, ln in enumerate(lines[1:])]
        for i, g in enumerate(gens):
            if sorted(g) != list(range(degree)):
                raise GroupFileError(
                    f"{path}: line {i + 2}: not a permutation of 0..{degree - 1}"
                )
        try:
            return perm_group(degree, gens, name)
        except GroupConstructionError as exc:
            raise GroupFileError(f"{path}: {exc}") from None

    raise GroupFileError(f"{path}: line 1: unsupported kind {kind!r}")


def _reindex_identity_first(rows: list[list[int]], path) -> tuple[list[list[int]], int]:
    """Move the two-sided identity to index 0 if it is elsewhere."""
    n = len(rows)
    ident = None
    for e in range(n):
        try:
            if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
                ident = e
                break
        except IndexError:
            raise GroupFileError(f"{path}: table entry out of range") from None
    if ident is None:
        raise GroupFileError(f"{path}: table has no two-sided identity")
    if ident == 0:
        return rows, 0
    swap = list(range(n))
    swap[0], swap[ident] = ident, 0
    new = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            new[swap[x]][swap[y]] = swap[rows[x][y]]
    return new, ident
