"""Lazy configurations over a countable index domain, windows, and the dyadic metric.

A configuration is a total rule from the domain to a finite symbol alphabet,
represented lazily so block constructions with astronomically long segments can
still answer pointwise queries.  Closeness is measured two interchangeable ways:
agreement on a finite window of enumerated coordinates, or a dyadic metric
summing 2^-rank over disagreements; the two are bracketed exactly by the
threshold/window translations at the bottom of this module.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .indexspace import (
    Index,
    IndexDomain,
    SelfMap,
    contains,
    enumerate_index,
    iterate,
    rank_of,
)
from .orbits import UnresolvedOrbitError, orbit_position

__all__ = [
    "Alphabet",
    "Configuration",
    "Constant",
    "FinitePatch",
    "OrbitBlocks",
    "Embedded",
    "Shifted",
    "CylinderPattern",
    "MetricResolutionError",
    "default_alphabet",
    "make_window",
    "window_from_ranks",
    "pattern_from_ranks",
    "parse_pattern",
    "pattern_json",
    "shifted",
    "agree_on_window",
    "in_cylinder",
    "truncated_distance",
    "threshold_to_window",
    "window_to_threshold",
]


@dataclass(frozen=True)
class Alphabet:
    """Finite symbol set with two distinguished distinct marks p and q."""

    symbols: tuple[str, ...]
    p: str
    q: str

    def __post_init__(self):
        if len(self.symbols) < 2 or len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet needs at least two distinct symbols")
        if self.p == self.q or self.p not in self.symbols or self.q not in self.symbols:
            raise ValueError("marks p, q must be distinct alphabet members")


def default_alphabet() -> Alphabet:
    return Alphabet(("p", "q"), "p", "q")


class MetricResolutionError(RuntimeError):
    """A metric comparison stayed on a knife edge past the inspection depth."""


class Configuration:
    """Total lazy assignment of symbols to domain indices."""

    domain: IndexDomain

    def symbol_at(self, index: Index) -> str:
        raise NotImplementedError

    def symbols_along(self, m: SelfMap, start: Index, count: int) -> list[str]:
        """Symbols at phi^i(start) for i = 0..count-1; subclasses may bulk-fill."""
        out = []
        cur = start
        for _ in range(count):
            out.append(self.symbol_at(cur))
            cur = _step(m, cur)
        return out


def _step(m: SelfMap, index: Index) -> Index:
    from .indexspace import evaluate

    return evaluate(m, index)


class Constant(Configuration):
    def __init__(self, domain: IndexDomain, symbol: str):
        self.domain = domain
        self.symbol = symbol

    def symbol_at(self, index: Index) -> str:
        if not contains(self.domain, index):
            raise ValueError(f"{index!r} outside configuration domain")
        return self.symbol

    def symbols_along(self, m: SelfMap, start: Index, count: int) -> list[str]:
        return [self.symbol] * count


class FinitePatch(Configuration):
    """A base configuration overridden at finitely many explicit coordinates."""

    def __init__(self, base: Configuration, patch: dict[Index, str]):
        self.domain = base.domain
        self.base = base
        self.patch = dict(patch)

    def symbol_at(self, index: Index) -> str:
        hit = self.patch.get(index)
        return hit if hit is not None else self.base.symbol_at(index)

    def support(self) -> tuple[Index, ...]:
        return tuple(self.patch)


class OrbitBlocks(Configuration):
    """Block layout along the forward orbit(s) of anchor point(s).

    Plain variant: the orbit of the single anchor reads s_1 copies of the
    block-1 symbol, then s_2 copies of the block-2 symbol, and so on, where
    block r shows mark p exactly when r belongs to the member set; everything
    off the forward orbit shows q.

    Weave variant: after block r, r symbols of a supplied source configuration
    are spliced in, read along the anchor's own orbit prefix; the anchors form
    a family whose orbits never meet.
    """

    def __init__(self, m: SelfMap, anchors: Sequence[Index], lengths, members,
                 alphabet: Alphabet, weave_source: Optional[Configuration] = None):
        self.domain = m.domain
        self.map = m
        self.anchors = tuple(anchors)
        self.lengths = lengths  # BlockLengths-like: value(r), prefix_sum(r), variant
        self.members = members  # BlockSet-like: contains(r), describe()
        self.alphabet = alphabet
        self.weave_source = weave_source
        if (lengths.variant == "weave") != (weave_source is not None):
            raise ValueError("weave layout and weave source must come together")
        if not self.anchors:
            raise ValueError("at least one anchor required")
        if lengths.variant == "plain" and len(self.anchors) != 1:
            raise ValueError("plain layout takes a single anchor")
        # boundary cache: flat list of segment end positions, grown on demand
        self._ends: list[int] = []
        self._end_meta: list[tuple[str, int]] = []  # ("block"|"weave", r)
        self._source_cache: dict[tuple[int, int], str] = {}

    # -- layout arithmetic ---------------------------------------------------

    def _extend_boundaries(self, position: int) -> None:
        r = len(self._end_meta) and self._end_meta[-1][1]
        end = self._ends[-1] if self._ends else 0
        while end <= position:
            r += 1
            end += self.lengths.value(r)
            self._ends.append(end)
            self._end_meta.append(("block", r))
            if self.lengths.variant == "weave":
                end += r
                self._ends.append(end)
                self._end_meta.append(("weave", r))

    def _locate(self, position: int) -> tuple[str, int, int]:
        """(kind, block index r, offset inside the segment) for an orbit position."""
        self._extend_boundaries(position)
        seg = bisect_right(self._ends, position)
        kind, r = self._end_meta[seg]
        seg_start = self._ends[seg - 1] if seg > 0 else 0
        return kind, r, position - seg_start

    def orbit_position_of(self, index: Index) -> Optional[tuple[int, int]]:
        """(anchor number, forward-orbit position) or None when off every orbit."""
        for a, anchor in enumerate(self.anchors):
            pos = orbit_position(self.map, anchor, index)
            if pos is not None:
                return a, pos
        return None

    def _symbol_for(self, anchor_i: int, position: int) -> str:
        kind, r, offset = self._locate(position)
        if kind == "block":
            return self.alphabet.p if self.members.contains(r) else self.alphabet.q
        return self._source_symbol(anchor_i, offset)

    def _source_symbol(self, anchor_i: int, j: int) -> str:
        key = (anchor_i, j)
        hit = self._source_cache.get(key)
        if hit is None:
            coord = iterate(self.map, self.anchors[anchor_i], j)
            hit = self.weave_source.symbol_at(coord)
            self._source_cache[key] = hit
        return hit

    # -- configuration interface ----------------------------------------------

    def symbol_at(self, index: Index) -> str:
        hit = self.orbit_position_of(index)
        if hit is None:
            return self.alphabet.q
        return self._symbol_for(*hit)

    def symbols_along(self, m: SelfMap, start: Index, count: int) -> list[str]:
        if m != self.map:
            return super().symbols_along(m, start, count)
        out: list[str] = []
        cur = start
        hit = self.orbit_position_of(cur)
        while hit is None and len(out) < count:
            out.append(self.alphabet.q)
            cur = _step(m, cur)
            hit = self.orbit_position_of(cur)
        if len(out) < count:
            anchor_i, pos = hit
            out.extend(self._fill_positions(anchor_i, pos, count - len(out)))
        return out

    def _fill_positions(self, anchor_i: int, pos: int, count: int) -> list[str]:
        # once on an orbit, positions advance by one per shift; fill by segments
        out: list[str] = []
        while len(out) < count:
            kind, r, offset = self._locate(pos)
            if kind == "block":
                take = min(self.lengths.value(r) - offset, count - len(out))
                sym = self.alphabet.p if self.members.contains(r) else self.alphabet.q
                out.extend([sym] * take)
            else:
                take = min(r - offset, count - len(out))
                out.extend(self._source_symbol(anchor_i, offset + j) for j in range(take))
            pos += take
        return out


class Embedded(Configuration):
    """A one-sided sequence written along phi^n(anchor), n >= 1, filler elsewhere.

    Coordinate phi^n(anchor) carries the inner configuration's n-th symbol; every
    other coordinate (the anchor itself included) carries the filler mark.
    """

    def __init__(self, m: SelfMap, anchor: Index, inner: Configuration, fill: str):
        if inner.domain.kind != "naturals":
            raise ValueError("inner configuration must live on the naturals")
        self.domain = m.domain
        self.map = m
        self.anchor = anchor
        self.inner = inner
        self.fill = fill

    def symbol_at(self, index: Index) -> str:
        pos = orbit_position(self.map, self.anchor, index)
        if pos is None or pos == 0:
            return self.fill
        return self.inner.symbol_at(Index((), pos))


class Shifted(Configuration):
    """Lazy shift: reading coordinate i of the shifted configuration reads
    coordinate phi^power(i) of the base."""

    def __init__(self, base: Configuration, m: SelfMap, power: int):
        if power < 0:
            raise ValueError("shift power must be >= 0")
        self.domain = base.domain
        self.base = base
        self.map = m
        self.power = power

    def symbol_at(self, index: Index) -> str:
        return self.base.symbol_at(iterate(self.map, index, self.power))

    def symbols_along(self, m: SelfMap, start: Index, count: int) -> list[str]:
        if m == self.map:
            return self.base.symbols_along(m, iterate(m, start, self.power), count)
        return super().symbols_along(m, start, count)


def shifted(config: Configuration, m: SelfMap, power: int) -> Configuration:
    """Shift a configuration by the map, collapsing stacked shifts over the same map."""
    if isinstance(config, Shifted) and config.map == m:
        return Shifted(config.base, m, config.power + power)
    return Shifted(config, m, power)


# ---------------------------------------------------------------------------
# Windows and cylinder patterns.
# ---------------------------------------------------------------------------


def make_window(indices: Sequence[Index]) -> tuple[Index, ...]:
    out = tuple(indices)
    if not out:
        raise ValueError("window must be nonempty")
    if len(set(out)) != len(out):
        raise ValueError("window indices must be distinct")
    return out


def window_from_ranks(domain: IndexDomain, ranks: Sequence[int]) -> tuple[Index, ...]:
    return make_window([enumerate_index(domain, r) for r in ranks])


@dataclass(frozen=True)
class CylinderPattern:
    """Finite window plus a symbol prescription on it."""

    window: tuple[Index, ...]
    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.window) != len(self.symbols):
            raise ValueError("window and symbols must align")
        make_window(self.window)

    def items(self):
        return zip(self.window, self.symbols)


def pattern_from_ranks(domain: IndexDomain, ranks: Sequence[int],
                       symbols: Sequence[str]) -> CylinderPattern:
    return CylinderPattern(window_from_ranks(domain, ranks), tuple(symbols))


def parse_pattern(domain: IndexDomain, obj) -> CylinderPattern:
    if not isinstance(obj, dict) or "window" not in obj or "symbols" not in obj:
        raise ValueError("pattern must be an object with 'window' and 'symbols'")
    return pattern_from_ranks(domain, obj["window"], obj["symbols"])


def pattern_json(domain: IndexDomain, pattern: CylinderPattern) -> dict:
    return {
        "window": [rank_of(domain, i) for i in pattern.window],
        "symbols": list(pattern.symbols),
    }


def agree_on_window(x: Configuration, y: Configuration,
                    window: Sequence[Index]) -> bool:
    return all(x.symbol_at(i) == y.symbol_at(i) for i in window)


def in_cylinder(config: Configuration, pattern: CylinderPattern) -> bool:
    return all(config.symbol_at(i) == s for i, s in pattern.items())


# ---------------------------------------------------------------------------
# Dyadic metric: d(x, y) = sum over ranks i of [x(beta_i) != y(beta_i)] * 2^-i.
# All values are exact rationals.
# ---------------------------------------------------------------------------


def truncated_distance(x: Configuration, y: Configuration, depth: int) -> Fraction:
    """Partial metric sum through enumeration rank `depth` (a lower bound on d)."""
    domain = x.domain
    total = Fraction(0)
    for i in range(1, depth + 1):
        beta = enumerate_index(domain, i)
        if x.symbol_at(beta) != y.symbol_at(beta):
            total += Fraction(1, 2 ** i)
    return total


def metric_less_than(x: Configuration, y: Configuration, t: Fraction,
                     depth_cap: int = 512) -> bool:
    """Exact decision of d(x, y) < t, inspecting ranks until certified either way."""
    if t <= 0:
        return False
    t = Fraction(t)
    domain = x.domain
    partial = Fraction(0)
    for m in range(1, depth_cap + 1):
        beta = enumerate_index(domain, m)
        if x.symbol_at(beta) != y.symbol_at(beta):
            partial += Fraction(1, 2 ** m)
        if partial >= t:
            return False
        if partial + Fraction(1, 2 ** m) < t:
            return True
    raise MetricResolutionError(
        f"comparison with {t} unresolved after {depth_cap} ranks"
    )


def threshold_to_window(domain: IndexDomain, t: Fraction) -> tuple[Index, ...]:
    """Smallest initial window {beta_1..beta_m} with 2^-m < t.

    Agreement on the window forces metric distance below t via the tail bound.
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("threshold must be > 0")
    m = 1
    while Fraction(1, 2 ** m) >= t:
        m += 1
        if m > 4096:
            raise ValueError("threshold too small to bracket")
    return window_from_ranks(domain, range(1, m + 1))


def window_to_threshold(domain: IndexDomain, window: Sequence[Index]) -> Fraction:
    """2^-(max rank in the window): metric distance below it forces window agreement."""
    ranks = [rank_of(domain, i) for i in make_window(window)]
    return Fraction(1, 2 ** max(ranks))
