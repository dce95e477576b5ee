"""Countable index domains, canonical enumerations, and a closed catalog of self-maps.

The index side of a generalized shift system: a countable domain Gamma given by a
finite description, a fixed enumeration beta_1, beta_2, ... of its elements, and
self-maps phi drawn from a small closed catalog so that their dynamical properties
(injectivity, periodic points, orbit growth) remain decidable or at least honestly
reportable.  Coordinates are arbitrary-size integers; a bit-length budget guards
against runaway doubly-exponential orbits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

__all__ = [
    "Index",
    "IndexDomain",
    "SelfMap",
    "DomainMismatchError",
    "BudgetExceededError",
    "RankRangeError",
    "INTEGERS",
    "NATURALS",
    "finite_range",
    "disjoint_union",
    "domain_size",
    "contains",
    "enumerate_index",
    "rank_of",
    "region_indices",
    "table_map",
    "successor",
    "predecessor",
    "square",
    "square_plus_one",
    "parity_up",
    "parity_down",
    "compose_maps",
    "disjoint_union_maps",
    "evaluate",
    "iterate",
    "canonical_form",
    "preimage",
    "parse_map_spec",
    "map_spec",
    "format_index",
    "parse_index",
]

# Bit-length ceiling for coordinates.  Squaring-type rules grow doubly
# exponentially; beyond this the coordinate is refused rather than computed.
COORD_BIT_BUDGET = 1 << 20

# Step ceiling for explicit iteration when no closed form applies.
DEFAULT_STEP_BUDGET = 1 << 24


class DomainMismatchError(ValueError):
    """An index was fed to a domain or map it does not belong to."""


class BudgetExceededError(RuntimeError):
    """Coordinate magnitude or step count exceeded the configured budget."""


class RankRangeError(ValueError):
    """Enumeration rank outside a finite domain."""


@dataclass(frozen=True)
class Index:
    """A point of a domain: a tag path through disjoint unions plus an integer coordinate.

    ``path`` is a tuple of "L"/"R" tags, outermost first; plain domains use ``()``.
    """

    path: tuple[str, ...]
    coord: int

    def __repr__(self) -> str:  # compact: "L0", "-3", "RL2"
        return format_index(self)


def ix(coord: int, *path: str) -> Index:
    """Shorthand constructor used heavily in tests."""
    return Index(tuple(path), coord)


def format_index(index: Index) -> str:
    return "".join(index.path) + str(index.coord)


def parse_index(text: str) -> Index:
    i = 0
    while i < len(text) and text[i] in "LR":
        i += 1
    return Index(tuple(text[:i]), int(text[i:]))


@dataclass(frozen=True)
class IndexDomain:
    """Finite description of a countable set: finite range, naturals, integers, or a tagged union."""

    kind: str  # "finite_range" | "naturals" | "integers" | "disjoint_union"
    size: Optional[int] = None
    left: "Optional[IndexDomain]" = None
    right: "Optional[IndexDomain]" = None


INTEGERS = IndexDomain("integers")
NATURALS = IndexDomain("naturals")


def finite_range(size: int) -> IndexDomain:
    if size < 1:
        raise ValueError("finite_range needs size >= 1")
    return IndexDomain("finite_range", size=size)


def disjoint_union(left: IndexDomain, right: IndexDomain) -> IndexDomain:
    return IndexDomain("disjoint_union", left=left, right=right)


def domain_size(domain: IndexDomain) -> Optional[int]:
    """Number of elements, or None when countably infinite."""
    if domain.kind == "finite_range":
        return domain.size
    if domain.kind in ("naturals", "integers"):
        return None
    ls, rs = domain_size(domain.left), domain_size(domain.right)
    if ls is None or rs is None:
        return None
    return ls + rs


def contains(domain: IndexDomain, index: Index) -> bool:
    if domain.kind == "disjoint_union":
        if not index.path:
            return False
        side = domain.left if index.path[0] == "L" else domain.right
        return contains(side, Index(index.path[1:], index.coord))
    if index.path:
        return False
    if domain.kind == "finite_range":
        return 0 <= index.coord < domain.size
    if domain.kind == "naturals":
        return index.coord >= 1
    return True  # integers


# ---------------------------------------------------------------------------
# Enumeration.  Fixed conventions:
#   finite_range m: 0, 1, ..., m-1
#   naturals:       1, 2, 3, ...
#   integers:       0, 1, -1, 2, -2, ...
#   disjoint_union: interleave left/right ranks (L1, R1, L2, R2, ...),
#                   spilling into the longer side once the shorter runs out.
# Ranks are 1-based throughout.
# ---------------------------------------------------------------------------


def enumerate_index(domain: IndexDomain, rank: int) -> Index:
    """The rank-th element beta_rank of the domain (ranks start at 1)."""
    if rank < 1:
        raise RankRangeError(f"rank must be >= 1, got {rank}")
    if domain.kind == "finite_range":
        if rank > domain.size:
            raise RankRangeError(f"rank {rank} > domain size {domain.size}")
        return Index((), rank - 1)
    if domain.kind == "naturals":
        return Index((), rank)
    if domain.kind == "integers":
        if rank == 1:
            return Index((), 0)
        if rank % 2 == 0:
            return Index((), rank // 2)
        return Index((), -(rank // 2))
    # disjoint union: interleave, then spill
    ls, rs = domain_size(domain.left), domain_size(domain.right)
    total = None if (ls is None or rs is None) else ls + rs
    if total is not None and rank > total:
        raise RankRangeError(f"rank {rank} > domain size {total}")
    m = min(ls if ls is not None else rank, rs if rs is not None else rank)
    if rank <= 2 * m:
        side, sub = ("L", domain.left) if rank % 2 == 1 else ("R", domain.right)
        inner = enumerate_index(sub, (rank + 1) // 2)
    else:
        spill_left = rs is not None and (ls is None or ls > rs)
        side, sub = ("L", domain.left) if spill_left else ("R", domain.right)
        inner = enumerate_index(sub, rank - m)
    return Index((side,) + inner.path, inner.coord)


def rank_of(domain: IndexDomain, index: Index) -> int:
    """Inverse of enumerate_index."""
    if not contains(domain, index):
        raise DomainMismatchError(f"{index!r} not in domain")
    if domain.kind == "finite_range":
        return index.coord + 1
    if domain.kind == "naturals":
        return index.coord
    if domain.kind == "integers":
        if index.coord == 0:
            return 1
        if index.coord > 0:
            return 2 * index.coord
        return -2 * index.coord + 1
    ls, rs = domain_size(domain.left), domain_size(domain.right)
    side = index.path[0]
    sub = domain.left if side == "L" else domain.right
    r = rank_of(sub, Index(index.path[1:], index.coord))
    own, other = (ls, rs) if side == "L" else (rs, ls)
    if other is None or r <= other:
        return 2 * r - 1 if side == "L" else 2 * r
    return 2 * other + (r - other)


def region_indices(domain: IndexDomain, bound: int) -> Iterator[Index]:
    """All indices with |coordinate| <= bound, in enumeration-rank order."""
    rank, emitted_gap = 1, 0
    total = domain_size(domain)
    while True:
        if total is not None and rank > total:
            return
        index = enumerate_index(domain, rank)
        if abs(index.coord) <= bound:
            emitted_gap = 0
            yield index
        else:
            emitted_gap += 1
            # domains interleave finitely many monotone coordinate streams, so
            # a long run of out-of-region ranks means every stream has escaped
            if emitted_gap > 8 * bound + 64:
                return
        rank += 1


# ---------------------------------------------------------------------------
# Self-maps.
# ---------------------------------------------------------------------------

CATALOG_RULES = (
    "successor",
    "predecessor",
    "square",
    "square_plus_one",
    "parity_up",
    "parity_down",
)


@dataclass(frozen=True)
class SelfMap:
    """A total self-map of a domain, from the closed rule catalog.

    rule: "table" on a finite range, one of CATALOG_RULES on the integers,
    "compose" (outer after inner), or "disjoint_union" routing by tag.
    """

    domain: IndexDomain
    rule: str
    table: Optional[tuple[int, ...]] = None
    outer: "Optional[SelfMap]" = None
    inner: "Optional[SelfMap]" = None
    left: "Optional[SelfMap]" = None
    right: "Optional[SelfMap]" = None


def table_map(entries) -> SelfMap:
    entries = tuple(int(e) for e in entries)
    size = len(entries)
    if size < 1:
        raise ValueError("table_map needs at least one entry")
    for e in entries:
        if not 0 <= e < size:
            raise ValueError(f"table entry {e} outside range 0..{size - 1}")
    return SelfMap(finite_range(size), "table", table=entries)


def _catalog(rule: str) -> SelfMap:
    return SelfMap(INTEGERS, rule)


def successor() -> SelfMap:
    """n -> n + 1 on the integers."""
    return _catalog("successor")


def predecessor() -> SelfMap:
    """n -> n - 1 on the integers."""
    return _catalog("predecessor")


def square() -> SelfMap:
    """n -> n^2 on the integers."""
    return _catalog("square")


def square_plus_one() -> SelfMap:
    """n -> n^2 + 1 on the integers."""
    return _catalog("square_plus_one")


def parity_up() -> SelfMap:
    """even n -> n + 1, odd n -> n - 1; an involution pairing 2k with 2k+1."""
    return _catalog("parity_up")


def parity_down() -> SelfMap:
    """odd n -> n + 1, even n -> n - 1; an involution pairing 2k with 2k-1."""
    return _catalog("parity_down")


def compose_maps(outer: SelfMap, inner: SelfMap) -> SelfMap:
    """The map sending idx to outer(inner(idx)); both on the same domain."""
    if outer.domain != inner.domain:
        raise DomainMismatchError("composition requires a shared domain")
    return SelfMap(outer.domain, "compose", outer=outer, inner=inner)


def disjoint_union_maps(left: SelfMap, right: SelfMap) -> SelfMap:
    """Tag-routing union: L-tagged points move by `left`, R-tagged by `right`."""
    return SelfMap(
        disjoint_union(left.domain, right.domain),
        "disjoint_union",
        left=left,
        right=right,
    )


def _check_bits(value: int) -> int:
    if value.bit_length() > COORD_BIT_BUDGET:
        raise BudgetExceededError(
            f"coordinate needs {value.bit_length()} bits, budget {COORD_BIT_BUDGET}"
        )
    return value


def evaluate(m: SelfMap, index: Index) -> Index:
    """Apply the map once.  Raises DomainMismatchError off-domain."""
    if not contains(m.domain, index):
        raise DomainMismatchError(f"{index!r} not in map domain")
    return _eval(m, index)


def _eval(m: SelfMap, index: Index) -> Index:
    rule = m.rule
    if rule == "table":
        return Index((), m.table[index.coord])
    if rule == "successor":
        return Index((), index.coord + 1)
    if rule == "predecessor":
        return Index((), index.coord - 1)
    if rule == "square":
        return Index((), _check_bits(index.coord * index.coord))
    if rule == "square_plus_one":
        return Index((), _check_bits(index.coord * index.coord + 1))
    if rule == "parity_up":
        return Index((), index.coord + 1 if index.coord % 2 == 0 else index.coord - 1)
    if rule == "parity_down":
        return Index((), index.coord - 1 if index.coord % 2 == 0 else index.coord + 1)
    if rule == "compose":
        return _eval(m.outer, _eval(m.inner, index))
    # disjoint union
    side = index.path[0]
    sub = m.left if side == "L" else m.right
    out = _eval(sub, Index(index.path[1:], index.coord))
    return Index((side,) + out.path, out.coord)


def canonical_form(m: SelfMap) -> Optional[str]:
    """Recognize compositions that reduce to a certified closed form.

    Returns "identity", "shift2_odd_up" (odd +2 / even -2),
    "shift2_even_up" (even +2 / odd -2), or None.
    """
    if m.rule != "compose":
        return None
    o, i = m.outer.rule, m.inner.rule
    forms = {
        ("parity_up", "parity_down"): "shift2_odd_up",
        ("parity_down", "parity_up"): "shift2_even_up",
        ("predecessor", "successor"): "identity",
        ("successor", "predecessor"): "identity",
    }
    return forms.get((o, i))


def iterate(m: SelfMap, index: Index, steps: int, *, step_budget: int = DEFAULT_STEP_BUDGET) -> Index:
    """Apply the map `steps` times (steps >= 0), using closed forms where certified.

    Closed forms keep huge step counts (block-construction horizons) cheap for
    translation-like rules; everything else steps explicitly under a budget.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if not contains(m.domain, index):
        raise DomainMismatchError(f"{index!r} not in map domain")
    return _iterate(m, index, steps, step_budget)


def _iterate(m: SelfMap, index: Index, steps: int, step_budget: int) -> Index:
    if steps == 0:
        return index
    rule = m.rule
    if rule == "successor":
        return Index((), _check_bits(index.coord + steps))
    if rule == "predecessor":
        return Index((), _check_bits(index.coord - steps))
    if rule in ("parity_up", "parity_down"):
        return index if steps % 2 == 0 else _eval(m, index)
    if rule == "table":
        return Index((), _table_iterate(m.table, index.coord, steps))
    if rule == "disjoint_union":
        side = index.path[0]
        sub = m.left if side == "L" else m.right
        out = _iterate(sub, Index(index.path[1:], index.coord), steps, step_budget)
        return Index((side,) + out.path, out.coord)
    form = canonical_form(m)
    if form == "identity":
        return index
    if form in ("shift2_odd_up", "shift2_even_up"):
        up_parity = 1 if form == "shift2_odd_up" else 0
        delta = 2 * steps if index.coord % 2 == up_parity else -2 * steps
        return Index((), _check_bits(index.coord + delta))
    if steps > step_budget:
        raise BudgetExceededError(f"{steps} explicit steps exceed budget {step_budget}")
    for _ in range(steps):
        index = _eval(m, index)
    return index


def _table_iterate(table: tuple[int, ...], start: int, steps: int) -> int:
    # walk until the orbit repeats, then reduce the remaining steps modulo the cycle
    seen: dict[int, int] = {}
    cur, i = start, 0
    while i < steps:
        if cur in seen:
            cycle = i - seen[cur]
            rem = (steps - i) % cycle
            for _ in range(rem):
                cur = table[cur]
            return cur
        seen[cur] = i
        cur = table[cur]
        i += 1
    return cur


def preimage(m: SelfMap, index: Index) -> Optional[Index]:
    """The unique preimage under a certified-invertible map, or None when none exists.

    Raises ValueError for rules whose inverse is not certified (squaring rules,
    non-permutation tables, unrecognized compositions).
    """
    rule = m.rule
    if rule == "successor":
        return Index((), index.coord - 1)
    if rule == "predecessor":
        return Index((), index.coord + 1)
    if rule in ("parity_up", "parity_down"):
        return _eval(m, index)  # involution
    if rule == "table":
        hits = [i for i, e in enumerate(m.table) if e == index.coord]
        if len(hits) > 1:
            raise ValueError("table is not injective; preimage not certified")
        return Index((), hits[0]) if hits else None
    if rule == "compose":
        mid = preimage(m.outer, index)
        return None if mid is None else preimage(m.inner, mid)
    if rule == "disjoint_union":
        side = index.path[0]
        sub = m.left if side == "L" else m.right
        out = preimage(sub, Index(index.path[1:], index.coord))
        return None if out is None else Index((side,) + out.path, out.coord)
    raise ValueError(f"preimage not certified for rule {rule!r}")


# ---------------------------------------------------------------------------
# JSON map grammar.
# ---------------------------------------------------------------------------


def parse_map_spec(obj) -> SelfMap:
    """Parse the JSON map grammar into a SelfMap, validating structure."""
    if not isinstance(obj, dict) or "rule" not in obj:
        raise ValueError("map spec must be an object with a 'rule' field")
    rule = obj["rule"]
    if rule in CATALOG_RULES:
        if obj.get("domain", "integers") != "integers":
            raise ValueError(f"map.domain: rule {rule!r} lives on 'integers'")
        return _catalog(rule)
    if rule == "table":
        if "entries" not in obj:
            raise ValueError("map.entries: required for rule 'table'")
        return table_map(obj["entries"])
    if rule == "compose":
        return compose_maps(parse_map_spec(obj["outer"]), parse_map_spec(obj["inner"]))
    if rule == "disjoint_union":
        return disjoint_union_maps(parse_map_spec(obj["left"]), parse_map_spec(obj["right"]))
    raise ValueError(f"map.rule: unknown rule {rule!r}")


def map_spec(m: SelfMap) -> dict:
    """Inverse of parse_map_spec (round-trips)."""
    if m.rule in CATALOG_RULES:
        return {"rule": m.rule, "domain": "integers"}
    if m.rule == "table":
        return {"rule": "table", "entries": list(m.table)}
    if m.rule == "compose":
        return {"rule": "compose", "outer": map_spec(m.outer), "inner": map_spec(m.inner)}
    return {"rule": "disjoint_union", "left": map_spec(m.left), "right": map_spec(m.right)}
