"""Constructions: block-length schedules, almost-disjoint families, scrambled
configuration families (plain and weave), densification by cylinder patterns,
the length-lex transitive word, and the one-sided embedding.

Everything here is desk-scale: families are finite samples of the uncountable
objects they imitate, but every emitted configuration is a total lazy rule and
every claim about one is either checked directly or derived from a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .indexspace import (
    INTEGERS,
    Index,
    IndexDomain,
    SelfMap,
    contains,
    enumerate_index,
    evaluate,
    iterate,
    rank_of,
)
from .orbits import (
    MapProfile,
    classify_point,
    map_profile,
    orbit_position,
    signed_orbit_index,
)
from .configspace import (
    Alphabet,
    Configuration,
    Constant,
    CylinderPattern,
    Embedded,
    FinitePatch,
    OrbitBlocks,
    default_alphabet,
    in_cylinder,
)

__all__ = [
    "BlockLengths",
    "PrimePowerSet",
    "ExplicitBlockSet",
    "AlmostDisjointFamily",
    "ScrambledFamilySpec",
    "PatternEnumeration",
    "PreconditionError",
    "block_lengths",
    "verify_length_inequalities",
    "almost_disjoint_family",
    "dc_family",
    "pattern_enumeration",
    "densify_family",
    "transitive_weave_family",
    "LengthLexWord",
    "full_shift_transitive_point",
    "weave_entry_exponent",
    "omega_embedding",
    "shift_inner",
]


class PreconditionError(ValueError):
    """A constructor precondition failed; the message names the offending verdict."""


# ---------------------------------------------------------------------------
# Block lengths.  Two growth disciplines:
#   plain: s_n / (s_1 + ... + s_n) > (n-1)/n,   minimal: s_n = (n-1)*S_{n-1} + 1
#   weave: s_n / (S_n + n(n-1)/2) > (n-1)/n,    minimal: s_n = (n-1)*(S_{n-1} + n(n-1)/2) + 1
# The weave discipline leaves room for the r-symbol splice after block r.
# ---------------------------------------------------------------------------


class BlockLengths:
    """Lazily extendable strictly increasing block lengths of one variant."""

    def __init__(self, variant: str, count: int):
        if variant not in ("plain", "weave"):
            raise ValueError(f"unknown variant {variant!r}")
        if count < 1:
            raise ValueError("count must be >= 1")
        self.variant = variant
        self.count = count
        self._values: list[int] = []
        self._prefix: list[int] = [0]
        self._extend_to(count)

    def _extend_to(self, r: int) -> None:
        while len(self._values) < r:
            n = len(self._values) + 1
            prev_sum = self._prefix[-1]
            if self.variant == "plain":
                s = (n - 1) * prev_sum + 1
            else:
                s = (n - 1) * (prev_sum + n * (n - 1) // 2) + 1
            self._values.append(s)
            self._prefix.append(prev_sum + s)

    def value(self, r: int) -> int:
        if r < 1:
            raise ValueError("block index must be >= 1")
        self._extend_to(r)
        return self._values[r - 1]

    def prefix_sum(self, r: int) -> int:
        """s_1 + ... + s_r (zero when r == 0)."""
        if r < 0:
            raise ValueError("block index must be >= 0")
        self._extend_to(r)
        return self._prefix[r]

    def horizon(self, r: int) -> int:
        """Orbit position just past block r (weave counts the splices too)."""
        extra = r * (r - 1) // 2 if self.variant == "weave" else 0
        return self.prefix_sum(r) + extra

    def values(self) -> tuple[int, ...]:
        return tuple(self._values[: self.count])


def block_lengths(count: int, variant: str = "plain") -> BlockLengths:
    bl = BlockLengths(variant, count)
    verify_length_inequalities(bl, count)
    return bl


def verify_length_inequalities(bl: BlockLengths, upto: int) -> None:
    """Direct integer check of the growth inequality for every n <= upto."""
    for n in range(1, upto + 1):
        s_n = bl.value(n)
        denom = bl.prefix_sum(n) + (n * (n - 1) // 2 if bl.variant == "weave" else 0)
        # s_n / denom > (n-1)/n, cross-multiplied to stay in integers
        if not n * s_n > (n - 1) * denom:
            raise AssertionError(f"length inequality fails at n={n}")
        if n >= 2 and not s_n > bl.value(n - 1):
            raise AssertionError(f"lengths not strictly increasing at n={n}")


# ---------------------------------------------------------------------------
# Almost-disjoint membership sets: powers of odd primes, optionally augmented
# by the even numbers so that any two members share an infinite set.
# ---------------------------------------------------------------------------


def _odd_primes(count: int) -> list[int]:
    out, n = [], 3
    while len(out) < count:
        if all(n % p for p in range(3, int(n ** 0.5) + 1, 2)):
            out.append(n)
        n += 2
    return out


@dataclass(frozen=True)
class PrimePowerSet:
    """{prime^e : e >= 1}, plus all even numbers when augmented."""

    prime: int
    augmented: bool

    def contains(self, n: int) -> bool:
        if n < 1:
            return False
        if self.augmented and n % 2 == 0:
            return True
        if n < self.prime:
            return False
        while n % self.prime == 0:
            n //= self.prime
        return n == 1

    def generate(self, limit: int) -> list[int]:
        out = set()
        if self.augmented:
            out.update(range(2, limit + 1, 2))
        v = self.prime
        while v <= limit:
            out.add(v)
            v *= self.prime
        return sorted(out)

    def describe(self) -> dict:
        return {"kind": "prime_powers", "prime": self.prime, "augmented": self.augmented}


@dataclass(frozen=True)
class ExplicitBlockSet:
    values: frozenset[int]

    def contains(self, n: int) -> bool:
        return n in self.values

    def describe(self) -> dict:
        return {"kind": "explicit", "values": sorted(self.values)}


@dataclass(frozen=True)
class AlmostDisjointFamily:
    """k raw prime-power sets (pairwise disjoint) and their augmented variants
    (pairwise intersections all equal to the evens, hence infinite)."""

    raw: tuple[PrimePowerSet, ...]
    members: tuple[PrimePowerSet, ...]


def almost_disjoint_family(k: int) -> AlmostDisjointFamily:
    primes = _odd_primes(k)
    raw = tuple(PrimePowerSet(p, False) for p in primes)
    members = tuple(PrimePowerSet(p, True) for p in primes)
    return AlmostDisjointFamily(raw, members)


# ---------------------------------------------------------------------------
# Scrambled families.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScrambledFamilySpec:
    """Everything needed to lay out one family of block configurations."""

    map: SelfMap
    anchors: tuple[Index, ...]
    alphabet: Alphabet
    lengths: BlockLengths
    family: AlmostDisjointFamily
    variant: str  # "plain" | "weave"


def _require_nqp_anchor(m: SelfMap, anchor: Index) -> None:
    cls = classify_point(m, anchor)
    if not cls.is_non_quasi_periodic:
        raise PreconditionError(
            f"anchor {anchor!r} must have a proven infinite orbit; classification "
            f"came back {cls.kind!r}"
        )


def dc_family(spec: ScrambledFamilySpec) -> list[OrbitBlocks]:
    """Plain block family: members differ on whole blocks indexed by their sets."""
    if spec.variant != "plain":
        raise ValueError("dc_family builds the plain variant")
    if len(spec.anchors) != 1:
        raise ValueError("plain families use a single anchor")
    _require_nqp_anchor(spec.map, spec.anchors[0])
    return [
        OrbitBlocks(spec.map, spec.anchors, spec.lengths, member, spec.alphabet)
        for member in spec.family.members
    ]


# ---------------------------------------------------------------------------
# Cylinder-pattern enumeration: a bijection from 1, 2, 3, ... onto all
# (finite window, symbol assignment) pairs.  Windows are grouped by their
# maximum rank M; within a group, the other ranks form a bitmask over
# 1..M-1 ordered numerically; assignments are ordered lexicographically by
# alphabet position along ascending ranks.  With g symbols the group for M
# holds g*(1+g)^(M-1) patterns, so ranks <= M cover (1+g)^M - 1 patterns.
# ---------------------------------------------------------------------------


class PatternEnumeration:
    def __init__(self, alphabet: Alphabet, domain: IndexDomain):
        self.alphabet = alphabet
        self.domain = domain
        self._g = len(alphabet.symbols)

    def _group_total(self, m: int) -> int:
        return (1 + self._g) ** m - 1

    def pattern(self, n: int) -> CylinderPattern:
        """The n-th cylinder pattern (n >= 1)."""
        if n < 1:
            raise ValueError("pattern index must be >= 1")
        g = self._g
        m = 1
        while self._group_total(m) < n:
            m += 1
            if m > 24:
                raise ValueError("pattern index too large to decode")
        offset = n - self._group_total(m - 1) - 1
        for mask in range(2 ** (m - 1)):
            width = bin(mask).count("1") + 1
            block = g ** width
            if offset < block:
                ranks = [r for r in range(1, m) if mask >> (r - 1) & 1] + [m]
                symbols = []
                rem = offset
                for _ in range(width):
                    rem, d = divmod(rem, g)
                    symbols.append(self.alphabet.symbols[d])
                symbols.reverse()  # lex order: earliest rank varies slowest
                window = tuple(enumerate_index(self.domain, r) for r in ranks)
                return CylinderPattern(window, tuple(symbols))
            offset -= block
        raise AssertionError("unreachable: group totals disagree with scan")

    def rank_of(self, pattern: CylinderPattern) -> int:
        g = self._g
        ranks = sorted(rank_of(self.domain, i) for i in pattern.window)
        by_rank = {rank_of(self.domain, i): s for i, s in pattern.items()}
        m = ranks[-1]
        mask = 0
        for r in ranks[:-1]:
            mask |= 1 << (r - 1)
        offset = 0
        for earlier in range(mask):
            offset += g ** (bin(earlier).count("1") + 1)
        digits = [self.alphabet.symbols.index(by_rank[r]) for r in ranks]
        value = 0
        for d in digits:
            value = value * g + d
        return self._group_total(m - 1) + offset + value + 1


def pattern_enumeration(alphabet: Alphabet, domain: IndexDomain) -> PatternEnumeration:
    return PatternEnumeration(alphabet, domain)


# ---------------------------------------------------------------------------
# Densification: patch the n-th family member with the n-th cylinder pattern.
# ---------------------------------------------------------------------------


def densify_family(m: SelfMap, members: Sequence[OrbitBlocks],
                   enumeration: PatternEnumeration, count: int) -> list[FinitePatch]:
    """Patch members in order so the n-th output realizes the n-th pattern.

    Preconditions: the map must be proven aperiodic (then every coordinate has
    an infinite orbit, so finite patches cannot disturb the scrambling
    statistics), and each patched coordinate is classified to confirm that.
    Members are consumed in order; a member is skipped when no distinctness
    witness against the previously accepted outputs can be certified.
    """
    profile = map_profile(m)
    if not profile.has_periodic_point.is_false:
        raise PreconditionError(
            "densification needs a proven absence of periodic points; verdict "
            f"came back {profile.has_periodic_point.truth!r}"
        )
    out: list[FinitePatch] = []
    supply = list(members)
    supply.reverse()  # pop from the front cheaply
    for n in range(1, count + 1):
        pattern = enumeration.pattern(n)
        for i, s in pattern.items():
            cls = classify_point(m, i)
            if not cls.is_non_quasi_periodic:
                raise PreconditionError(
                    f"patched coordinate {i!r} classified {cls.kind!r}; "
                    "densification patches only infinite-orbit coordinates"
                )
        while True:
            if not supply:
                raise PreconditionError("family exhausted before reaching the requested count")
            base = supply.pop()
            candidate = FinitePatch(base, dict(pattern.items()))
            if all(_distinctness_witness(candidate, prev) is not None for prev in out):
                out.append(candidate)
                break
        if not in_cylinder(out[-1], pattern):
            raise AssertionError("patched member missed its own pattern")
    return out


def _distinctness_witness(a: FinitePatch, b: FinitePatch):
    """A certified coordinate (or orbit position) where the two patched members differ.

    Patched block members over one anchor differ across whole blocks indexed by
    the symmetric difference of their member sets; the witness is reported as an
    orbit position inside the first such block that no patch touches, which
    stays checkable even when the coordinate itself is too large to materialize.
    """
    ba, bb = a.base, b.base
    if isinstance(ba, OrbitBlocks) and isinstance(bb, OrbitBlocks) and ba.map == bb.map \
            and ba.anchors == bb.anchors and ba.lengths is bb.lengths:
        sets_a, sets_b = ba.members, bb.members
        if sets_a != sets_b:
            block = _first_difference_block(sets_a, sets_b)
            if block is not None:
                lo = ba.lengths.prefix_sum(block - 1)
                hi = ba.lengths.prefix_sum(block)
                if ba.lengths.variant == "weave":
                    shim = block * (block - 1) // 2
                    lo, hi = lo + shim, hi + shim
                patched_positions = set()
                for patch in (a.patch, b.patch):
                    for coord in patch:
                        pos = ba.orbit_position_of(coord)
                        if pos is not None:
                            patched_positions.add(pos[1])
                for pos in range(lo, hi):
                    if pos not in patched_positions:
                        return ("orbit_position", ba.anchors[0], pos)
                return None
    # same base sets (or unrelated rules): look for a conflicting patch entry
    for coord, sym in a.patch.items():
        other = b.patch.get(coord)
        if other is not None and other != sym:
            return ("coordinate", coord)
        if other is None and b.symbol_at(coord) != sym:
            return ("coordinate", coord)
    for coord, sym in b.patch.items():
        if coord not in a.patch and a.symbol_at(coord) != sym:
            return ("coordinate", coord)
    return None


def _first_difference_block(sa, sb) -> Optional[int]:
    if isinstance(sa, PrimePowerSet) and isinstance(sb, PrimePowerSet):
        if sa.prime != sb.prime:
            return min(sa.prime, sb.prime)
        if sa.augmented != sb.augmented:
            return 2
        return None
    for r in range(1, 4096):
        if sa.contains(r) != sb.contains(r):
            return r
    return None


# ---------------------------------------------------------------------------
# Weave families and their transitivity entry bound.
# ---------------------------------------------------------------------------


def transitive_weave_family(spec: ScrambledFamilySpec,
                            source: Configuration) -> list[OrbitBlocks]:
    """Weave family: block layout with the source configuration spliced in.

    Requires a proven injective, aperiodic map (so the anchors' orbits can
    never meet) and a source the caller certifies transitive for the map.
    """
    if spec.variant != "weave":
        raise ValueError("transitive_weave_family builds the weave variant")
    profile = map_profile(spec.map)
    if not profile.injective.is_true:
        raise PreconditionError(
            f"weave construction needs proven injectivity; verdict came back "
            f"{profile.injective.truth!r}"
        )
    if not profile.has_periodic_point.is_false:
        raise PreconditionError(
            f"weave construction needs proven aperiodicity; verdict came back "
            f"{profile.has_periodic_point.truth!r}"
        )
    for anchor in spec.anchors:
        _require_nqp_anchor(spec.map, anchor)
    return [
        OrbitBlocks(spec.map, spec.anchors, spec.lengths, member, spec.alphabet,
                    weave_source=source)
        for member in spec.family.members
    ]


class LengthLexWord(Configuration):
    """Transitive point of the full shift on the integers under n -> n + 1.

    Nonnegative coordinates spell the concatenation of every finite word over
    the alphabet in length-then-lex order; negative coordinates repeat the
    first symbol.
    """

    def __init__(self, alphabet: Alphabet, domain: IndexDomain = INTEGERS):
        if domain.kind != "integers":
            raise ValueError("the length-lex word lives on the integers")
        self.domain = domain
        self.alphabet = alphabet

    def symbol_at(self, index: Index) -> str:
        c = index.coord
        if c < 0:
            return self.alphabet.symbols[0]
        g = len(self.alphabet.symbols)
        length, acc = 1, 0
        while True:
            block = length * g ** length
            if c < acc + block:
                word_i, offset = divmod(c - acc, length)
                digit = word_i // g ** (length - 1 - offset) % g
                return self.alphabet.symbols[digit]
            acc += block
            length += 1

    def word_start(self, symbols: Sequence[str]) -> int:
        """Coordinate where `symbols` begins as a whole catalog word."""
        g = len(self.alphabet.symbols)
        length = len(symbols)
        acc = sum(j * g ** j for j in range(1, length))
        word_i = 0
        for s in symbols:
            word_i = word_i * g + self.alphabet.symbols.index(s)
        return acc + word_i * length


def full_shift_transitive_point(alphabet: Alphabet,
                                domain: IndexDomain = INTEGERS) -> LengthLexWord:
    return LengthLexWord(alphabet, domain)


def weave_entry_exponent(spec: ScrambledFamilySpec, source: LengthLexWord,
                         pattern: CylinderPattern) -> int:
    """Constructive shift exponent at which every weave member enters the cylinder.

    Recipe: resolve each window coordinate as phi^i(anchor) with |i| <= N; find
    the shift h > N at which the source matches the pattern on the radius-N
    orbit window; the splice after block h+N+1 replays the source's first
    h+N+1 symbols, so the member enters the cylinder at exponent l + h where
    l is that splice's starting position.
    """
    if not isinstance(source, LengthLexWord):
        raise ValueError("entry bound needs the length-lex source")
    m = spec.map
    radius = 0
    for coord in pattern.window:
        offsets = [signed_orbit_index(m, a, coord, radius=64) for a in spec.anchors]
        hits = [o for o in offsets if o is not None]
        if not hits:
            raise ValueError(f"window coordinate {coord!r} not within reach of any anchor")
        radius = max(radius, abs(hits[0]))
    n_rad = radius
    # the source must realize the pattern on the full +-N orbit window of each
    # anchor; unconstrained coordinates there may read anything, so fill with q
    want: dict[int, str] = {}
    anchor = spec.anchors[0]
    if len(spec.anchors) != 1 or m.rule != "successor":
        raise ValueError("entry bound is implemented for single-anchor translation layouts")
    for coord, sym in pattern.items():
        want[coord.coord - anchor.coord] = sym
    word = [want.get(i, spec.alphabet.q) for i in range(-n_rad, n_rad + 1)]
    h = source.word_start(word) + n_rad
    if h <= n_rad:  # pad the word on the right until the occurrence lands deeper
        word = word + [spec.alphabet.symbols[0]]
        h = source.word_start(word) + n_rad
    splice_start = spec.lengths.prefix_sum(h + n_rad + 1) + (h + n_rad) * (h + n_rad + 1) // 2
    return splice_start + h


# ---------------------------------------------------------------------------
# One-sided embedding along an orbit.
# ---------------------------------------------------------------------------


def omega_embedding(m: SelfMap, anchor: Index, inner: Configuration,
                    fill: str) -> Embedded:
    """Write a one-sided sequence along phi^n(anchor), n >= 1, filler elsewhere.

    The anchor must have a proven infinite orbit so the carrier coordinates are
    pairwise distinct; then reading the embedded image along the orbit replays
    the inner sequence shifted, coordinate by coordinate.
    """
    _require_nqp_anchor(m, anchor)
    return Embedded(m, anchor, inner, fill)


def shift_inner(inner: Configuration, steps: int) -> Configuration:
    """One-sided shift of a naturals-domain configuration built from finite data."""
    if inner.domain.kind != "naturals":
        raise ValueError("shift_inner expects a naturals-domain configuration")
    if isinstance(inner, Constant):
        return inner
    if isinstance(inner, FinitePatch) and isinstance(inner.base, Constant):
        moved = {}
        for coord, sym in inner.patch.items():
            n = coord.coord - steps
            if n >= 1:
                moved[Index((), n)] = sym
        return FinitePatch(inner.base, moved)
    raise ValueError("shift_inner supports constants and finite patches over constants")
