"""Named example structures, generic generators, and exhaustive enumeration.

Relation elements are encoded as k*k-bit masks (bit i*k+j set when the
pair (i, j) is in the relation) so composition stays bit-parallel;
partial transformations are tuples over 0..k with 0 meaning undefined.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

from .core import FiniteBiunarySemigroup, StructureError, TooLargeError
from .orders import OrderedSemigroup, PartialOrder


@dataclass(frozen=True)
class ZooEntry:
    """A catalogued structure with zero or more named orders attached."""

    name: str
    structure: FiniteBiunarySemigroup
    orders: tuple[tuple[str, PartialOrder], ...]
    provenance: str

    def order_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.orders)

    def get_order(self, name: str | None = None) -> PartialOrder:
        if not self.orders:
            raise StructureError(f"example {self.name} carries no order")
        if name is None:
            return self.orders[0][1]
        for oname, order in self.orders:
            if oname == name:
                return order
        raise StructureError(f"example {self.name} has no order named {name!r}")

    def ordered(self, name: str | None = None) -> OrderedSemigroup:
        return OrderedSemigroup(self.structure, self.get_order(name))


def example_two_element_monoid() -> ZooEntry:
    """The two-element monoid with zero, D = R = 1, and its two Ehresmann orders."""
    s = FiniteBiunarySemigroup(
        2, ((0, 0), (0, 1)), (1, 1), (1, 1), names=("0", "1")
    )
    leq1 = PartialOrder.from_pairs(2, [(1, 0)])
    leq2 = PartialOrder.equality(2)
    return ZooEntry(
        "two-element-monoid",
        s,
        (("leq1", leq1), ("leq2", leq2)),
        provenance="ehresmann-order",
    )


def example_orderless_band() -> ZooEntry:
    """A six-element band of transformations admitting no Ehresmann order."""
    # elements: c, d, Px, Py, Pz, 1 (indices 0..5)
    mul = (
        (0, 0, 2, 3, 4, 0),
        (1, 1, 2, 3, 4, 1),
        (2, 2, 2, 3, 4, 2),
        (3, 3, 2, 3, 4, 3),
        (2, 3, 2, 3, 4, 4),
        (0, 1, 2, 3, 4, 5),
    )
    dmap = (5, 5, 4, 4, 4, 5)
    rmap = (5, 5, 5, 5, 4, 5)
    s = FiniteBiunarySemigroup(6, mul, dmap, rmap, names=("c", "d", "Px", "Py", "Pz", "1"))
    return ZooEntry("orderless-band", s, (), provenance="ehresmann")


def example_zero_one_nabla() -> ZooEntry:
    """Empty, diagonal, and full relation on two points, under inclusion."""
    mul = ((0, 0, 0), (0, 1, 2), (0, 2, 2))
    s = FiniteBiunarySemigroup(3, mul, (0, 1, 1), (0, 1, 1), names=("0", "1", "nabla"))
    incl = PartialOrder.from_pairs(3, [(0, 1), (1, 2)])
    return ZooEntry("zero-one-nabla", s, (("inclusion", incl),), provenance="ehresmann-order")


def _rel_rows(mask: int, k: int) -> list[int]:
    return [(mask >> (i * k)) & ((1 << k) - 1) for i in range(k)]


def _rel_compose(a: int, b: int, k: int) -> int:
    rows_b = _rel_rows(b, k)
    res = 0
    for i in range(k):
        row = (a >> (i * k)) & ((1 << k) - 1)
        out = 0
        j = 0
        while row:
            if row & 1:
                out |= rows_b[j]
            row >>= 1
            j += 1
        res |= out << (i * k)
    return res


def _rel_name(mask: int, k: int) -> str:
    pairs = [
        f"({i + 1},{j + 1})"
        for i in range(k)
        for j in range(k)
        if mask & (1 << (i * k + j))
    ]
    return "{" + ",".join(pairs) + "}"


def gen_rel(k: int) -> ZooEntry:
    """All binary relations on k points with composition, D, R, and inclusion."""
    if not 1 <= k <= 3:
        raise TooLargeError("relation semigroups are generated for 1..3 points only")
    n = 1 << (k * k)
    mul = tuple(
        tuple(_rel_compose(a, b, k) for b in range(n)) for a in range(n)
    )
    dmap = []
    rmap = []
    for a in range(n):
        rows = _rel_rows(a, k)
        dom = 0
        ran = 0
        for i in range(k):
            if rows[i]:
                dom |= 1 << (i * k + i)
            for j in range(k):
                if rows[i] & (1 << j):
                    ran |= 1 << (j * k + j)
        dmap.append(dom)
        rmap.append(ran)
    names = tuple(_rel_name(a, k) for a in range(n))
    s = FiniteBiunarySemigroup(n, mul, tuple(dmap), tuple(rmap), names)
    incl = PartialOrder(
        n, tuple(tuple(a | b == b for b in range(n)) for a in range(n))
    )
    return ZooEntry(f"rel-{k}", s, (("inclusion", incl),), provenance="ehresmann-order")


def _pt_elements(k: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(k + 1), repeat=k))


def _pt_compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(0 if v == 0 else g[v - 1] for v in f)


def _pt_dom_identity(f: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + 1 if f[x] != 0 else 0 for x in range(len(f)))


def _pt_ran_identity(f: tuple[int, ...]) -> tuple[int, ...]:
    image = {v - 1 for v in f if v != 0}
    return tuple(x + 1 if x in image else 0 for x in range(len(f)))


def _pt_name(f: tuple[int, ...]) -> str:
    return "[" + ",".join(str(v) if v != 0 else "-" for v in f) + "]"


def _pt_entry(name: str, elements: list[tuple[int, ...]], provenance: str) -> ZooEntry:
    index = {f: i for i, f in enumerate(elements)}
    n = len(elements)
    mul = tuple(
        tuple(index[_pt_compose(f, g)] for g in elements) for f in elements
    )
    dmap = tuple(index[_pt_dom_identity(f)] for f in elements)
    rmap = tuple(index[_pt_ran_identity(f)] for f in elements)
    names = tuple(_pt_name(f) for f in elements)
    s = FiniteBiunarySemigroup(n, mul, dmap, rmap, names)
    rel = tuple(
        tuple(
            all(v == 0 or v == g[x] for x, v in enumerate(f)) for g in elements
        )
        for f in elements
    )
    return ZooEntry(name, s, (("inclusion", PartialOrder(n, rel)),), provenance)


def gen_pt(k: int) -> ZooEntry:
    """All partial transformations on k points, with inclusion."""
    if not 1 <= k <= 3:
        raise TooLargeError("partial transformation semigroups are generated for 1..3 points only")
    return _pt_entry(f"pt-{k}", _pt_elements(k), provenance="ehresmann-order")


def gen_partial_injections(k: int) -> ZooEntry:
    """The partial injections on k points; a restriction semigroup under inclusion."""
    if not 1 <= k <= 3:
        raise TooLargeError("partial injection semigroups are generated for 1..3 points only")
    elements = [
        f
        for f in _pt_elements(k)
        if len({v for v in f if v != 0}) == sum(1 for v in f if v != 0)
    ]
    return _pt_entry(f"inj-{k}", elements, provenance="restriction")


_REGISTRY: dict[str, Callable[[], ZooEntry]] = {
    "two-element-monoid": example_two_element_monoid,
    "orderless-band": example_orderless_band,
    "zero-one-nabla": example_zero_one_nabla,
    "rel-1": lambda: gen_rel(1),
    "rel-2": lambda: gen_rel(2),
    "rel-3": lambda: gen_rel(3),
    "pt-1": lambda: gen_pt(1),
    "pt-2": lambda: gen_pt(2),
    "pt-3": lambda: gen_pt(3),
    "inj-1": lambda: gen_partial_injections(1),
    "inj-2": lambda: gen_partial_injections(2),
}

# ordered entries small enough for the exhaustive theorem sweeps
SWEEP_NAMES = (
    "two-element-monoid",
    "zero-one-nabla",
    "rel-1",
    "rel-2",
    "pt-1",
    "pt-2",
    "inj-1",
    "inj-2",
)


def names() -> tuple[str, ...]:
    return tuple(_REGISTRY)


def get(name: str) -> ZooEntry:
    try:
        maker = _REGISTRY[name]
    except KeyError:
        raise StructureError(
            f"unknown example {name!r}; known: {', '.join(_REGISTRY)}"
        ) from None
    return maker()


def _assoc_consistent(t: list[list[int]], n: int) -> bool:
    for a in range(n):
        ta = t[a]
        for b in range(n):
            ab = ta[b]
            tb = t[b]
            for c in range(n):
                bc = tb[c]
                left = t[ab][c] if ab >= 0 else -1
                right = ta[bc] if bc >= 0 else -1
                if left >= 0 and right >= 0 and left != right:
                    return False
    return True


def _tables_with_first_row(n: int, row0: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    table = [list(row0)] + [[-1] * n for _ in range(n - 1)]
    if not _assoc_consistent(table, n):
        return []
    out: list[tuple[tuple[int, ...], ...]] = []

    def fill(idx: int) -> None:
        if idx == n * n:
            out.append(tuple(tuple(row) for row in table))
            return
        i, j = divmod(idx, n)
        for v in range(n):
            table[i][j] = v
            if _assoc_consistent(table, n):
                fill(idx + 1)
        table[i][j] = -1

    fill(n)
    return out


def _d_laws_ok(mul, dmap, n: int) -> bool:
    for x in range(n):
        dx = dmap[x]
        for y in range(n):
            if dmap[mul[x][y]] != dmap[mul[x][dmap[y]]]:
                return False
            p = mul[dx][dmap[y]]
            if dmap[p] != p:
                return False
            if p != mul[dmap[y]][dx]:
                return False
    return True


def _r_laws_ok(mul, dmap, rmap, n: int) -> bool:
    for x in range(n):
        if dmap[rmap[x]] != rmap[x] or rmap[dmap[x]] != dmap[x]:
            return False
    for x in range(n):
        rx = rmap[x]
        for y in range(n):
            if rmap[mul[x][y]] != rmap[mul[rx][y]]:
                return False
    return True


def _structures_for_table(
    n: int, mul: tuple[tuple[int, ...], ...]
) -> Iterator[FiniteBiunarySemigroup]:
    idem = [e for e in range(n) if mul[e][e] == e]
    cand_d = [[e for e in idem if mul[e][x] == x] for x in range(n)]
    cand_r = [[e for e in idem if mul[x][e] == x] for x in range(n)]
    if any(not c for c in cand_d) or any(not c for c in cand_r):
        return
    for dmap in itertools.product(*cand_d):
        if not _d_laws_ok(mul, dmap, n):
            continue
        for rmap in itertools.product(*cand_r):
            if not _r_laws_ok(mul, dmap, rmap, n):
                continue
            yield FiniteBiunarySemigroup(n, mul, dmap, rmap)


def _permuted_key(s: FiniteBiunarySemigroup, perm: tuple[int, ...]) -> tuple[int, ...]:
    n = s.n
    mul = [[0] * n for _ in range(n)]
    dmap = [0] * n
    rmap = [0] * n
    for a in range(n):
        dmap[perm[a]] = perm[s.dmap[a]]
        rmap[perm[a]] = perm[s.rmap[a]]
        for b in range(n):
            mul[perm[a]][perm[b]] = perm[s.mul[a][b]]
    flat = [n]
    for row in mul:
        flat.extend(row)
    flat.extend(dmap)
    flat.extend(rmap)
    return tuple(flat)


def _is_canonical_rep(s: FiniteBiunarySemigroup) -> bool:
    base = s.key()
    return all(
        _permuted_key(s, perm) >= base
        for perm in itertools.permutations(range(s.n))
    )


def enumerate_ehresmann_semigroups(
    n: int, up_to_iso: bool = False, *, allow_large: bool = False, jobs: int = 1
) -> Iterator[FiniteBiunarySemigroup]:
    """Stream every Ehresmann semigroup on the indexed carrier 0..n-1.

    Tables are found by backtracking with associativity pruning; the
    compatible (D, R) assignments are then filtered against the remaining
    laws.  Emission order is lexicographic in (mul, D, R) and therefore
    stable across runs and worker counts.  Size 4 is permitted only behind
    ``allow_large``; anything beyond is refused.
    """
    if n < 1 or n > 4:
        raise TooLargeError("exhaustive enumeration supports sizes 1..4")
    if n == 4 and not allow_large:
        raise TooLargeError("size 4 is long-running; pass allow_large=True to proceed")

    def for_first_row(row0: tuple[int, ...]) -> list[FiniteBiunarySemigroup]:
        found: list[FiniteBiunarySemigroup] = []
        for mul in _tables_with_first_row(n, row0):
            for s in _structures_for_table(n, mul):
                if not up_to_iso or _is_canonical_rep(s):
                    found.append(s)
        return found

    def stream() -> Iterator[FiniteBiunarySemigroup]:
        first_rows = list(itertools.product(range(n), repeat=n))
        if jobs <= 1:
            for row0 in first_rows:
                yield from for_first_row(row0)
        else:
            with ThreadPoolExecutor(max_workers=jobs) as ex:
                for chunk in ex.map(for_first_row, first_rows):
                    yield from chunk

    return stream()
