"""Orbit analysis for catalog self-maps: classification, profiles, chains.

Every answer is a three-valued verdict (proven true / proven false / unknown)
carrying a witness or a named certificate plus a provenance tag, so bounded
searches can never silently masquerade as proofs.  Catalog rules ship
hand-certified analytic facts (periodic sets, growth of orbits, injectivity);
everything else falls back to exhaustive analysis on finite domains or
budgeted cycle detection elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .indexspace import (
    BudgetExceededError,
    DomainMismatchError,
    Index,
    SelfMap,
    canonical_form,
    contains,
    domain_size,
    enumerate_index,
    evaluate,
    preimage,
    rank_of,
    region_indices,
)

__all__ = [
    "Verdict",
    "PointClassification",
    "MapProfile",
    "ChainDecomposition",
    "UnresolvedOrbitError",
    "proven_true",
    "proven_false",
    "unknown",
    "v_not",
    "v_and",
    "v_or",
    "classify_point",
    "map_profile",
    "brute_force_profile",
    "injectivity_witness",
    "chain_decomposition",
    "orbit_position",
    "signed_orbit_index",
    "sanity_check_catalog_metadata",
]

PROVEN_TRUE = "proven_true"
PROVEN_FALSE = "proven_false"
UNKNOWN = "unknown"

DEFAULT_BUDGET = 4096


class UnresolvedOrbitError(RuntimeError):
    """Orbit membership could not be decided within the available certificates."""


@dataclass(frozen=True)
class Verdict:
    """Three-valued answer with evidence.

    provenance: "exhaustive" (finite domain fully checked),
    "analytic-metadata" (hand-certified catalog fact), or
    "bounded-search" (found by budgeted iteration; still a proof when definite).
    Unknown verdicts record the exhausted budget instead of evidence.
    """

    truth: str
    witness: Optional[tuple] = None
    certificate: Optional[str] = None
    provenance: str = "analytic-metadata"
    budget: Optional[int] = None

    @property
    def is_true(self) -> bool:
        return self.truth == PROVEN_TRUE

    @property
    def is_false(self) -> bool:
        return self.truth == PROVEN_FALSE

    @property
    def is_unknown(self) -> bool:
        return self.truth == UNKNOWN

    def to_json(self) -> dict:
        out: dict = {"truth": self.truth, "provenance": self.provenance}
        if self.witness is not None:
            out["witness"] = [repr(w) for w in self.witness]
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.budget is not None:
            out["budget"] = self.budget
        return out


def proven_true(witness=None, certificate=None, provenance="analytic-metadata") -> Verdict:
    if witness is None and certificate is None:
        raise ValueError("a definite verdict needs a witness or a certificate")
    return Verdict(PROVEN_TRUE, witness, certificate, provenance)


def proven_false(witness=None, certificate=None, provenance="analytic-metadata") -> Verdict:
    if witness is None and certificate is None:
        raise ValueError("a definite verdict needs a witness or a certificate")
    return Verdict(PROVEN_FALSE, witness, certificate, provenance)


def unknown(budget: int) -> Verdict:
    return Verdict(UNKNOWN, provenance="bounded-search", budget=budget)


def v_not(v: Verdict) -> Verdict:
    if v.is_unknown:
        return v
    return Verdict(
        PROVEN_FALSE if v.is_true else PROVEN_TRUE,
        v.witness,
        v.certificate,
        v.provenance,
    )


def _worst_provenance(a: Verdict, b: Verdict) -> str:
    order = {"exhaustive": 0, "analytic-metadata": 1, "bounded-search": 2}
    return a.provenance if order[a.provenance] >= order[b.provenance] else b.provenance


def v_and(a: Verdict, b: Verdict) -> Verdict:
    if a.is_false:
        return a
    if b.is_false:
        return b
    if a.is_true and b.is_true:
        return Verdict(
            PROVEN_TRUE,
            a.witness or b.witness,
            a.certificate or b.certificate,
            _worst_provenance(a, b),
        )
    return a if a.is_unknown else b


def v_or(a: Verdict, b: Verdict) -> Verdict:
    if a.is_true:
        return a
    if b.is_true:
        return b
    if a.is_false and b.is_false:
        return Verdict(
            PROVEN_FALSE,
            a.witness or b.witness,
            a.certificate or b.certificate,
            _worst_provenance(a, b),
        )
    return a if a.is_unknown else b


@dataclass(frozen=True)
class PointClassification:
    """Forward-orbit shape of a single point.

    kind: "periodic" (returns to itself; period recorded), "quasi_periodic"
    (finite orbit, never returns; preperiod and eventual period recorded),
    "non_quasi_periodic" (infinite orbit), or "unknown" (budget exhausted).
    """

    kind: str
    period: Optional[int] = None
    preperiod: Optional[int] = None
    certificate: Optional[str] = None
    provenance: str = "analytic-metadata"
    budget: Optional[int] = None

    @property
    def is_periodic(self) -> bool:
        return self.kind == "periodic"

    @property
    def is_non_quasi_periodic(self) -> bool:
        return self.kind == "non_quasi_periodic"


@dataclass(frozen=True)
class MapProfile:
    """The three dynamical facts that drive every chaos prediction."""

    injective: Verdict
    has_periodic_point: Verdict
    has_non_quasi_periodic_point: Verdict

    def truths(self) -> tuple[str, str, str]:
        return (
            self.injective.truth,
            self.has_periodic_point.truth,
            self.has_non_quasi_periodic_point.truth,
        )

    def to_json(self) -> dict:
        return {
            "injective": self.injective.to_json(),
            "has_periodic_point": self.has_periodic_point.to_json(),
            "has_non_quasi_periodic_point": self.has_non_quasi_periodic_point.to_json(),
        }


@dataclass(frozen=True)
class ChainDecomposition:
    representatives: tuple[Index, ...]
    region_bound: int
    residual: tuple[Index, ...]
    covered: int


# ---------------------------------------------------------------------------
# Certified analytic facts for catalog rules and recognized compositions.
#
# periodic: "none" | "all_period_1" | "all_period_2" | dict {coord: period}
# nqp: "all" | "none" | "all_except_periodic_region"
# Each entry is re-checkable by sanity_check_catalog_metadata below.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RuleFacts:
    injective: bool
    periodic: object
    nqp: str
    injective_witness: Optional[tuple[int, int]] = None  # collision pair when not injective
    growth_note: str = ""


_CATALOG_FACTS = {
    "successor": RuleFacts(
        True, "none", "all", growth_note="translation by +1 never revisits a coordinate"
    ),
    "predecessor": RuleFacts(
        True, "none", "all", growth_note="translation by -1 never revisits a coordinate"
    ),
    "square": RuleFacts(
        False,
        {0: 1, 1: 1},
        "all_except_periodic_region",
        injective_witness=(-1, 1),
        growth_note="|n| >= 2 gives |n^2| >= 2|n|, so magnitudes strictly increase",
    ),
    "square_plus_one": RuleFacts(
        False,
        "none",
        "all",
        injective_witness=(-1, 1),
        growth_note="n^2 + 1 > n for every integer, so orbits strictly increase",
    ),
    "parity_up": RuleFacts(True, "all_period_2", "none"),
    "parity_down": RuleFacts(True, "all_period_2", "none"),
}

_FORM_FACTS = {
    "identity": RuleFacts(True, "all_period_1", "none"),
    "shift2_odd_up": RuleFacts(
        True, "none", "all", growth_note="parity preserved; |n| drifts monotonically by 2"
    ),
    "shift2_even_up": RuleFacts(
        True, "none", "all", growth_note="parity preserved; |n| drifts monotonically by 2"
    ),
}

# square's quasi-periodic exception: -1 lands on the fixed point 1 after one step
_SQUARE_SPECIAL = {0: ("periodic", 1, 0), 1: ("periodic", 1, 0), -1: ("quasi_periodic", 1, 1)}


def _facts_for(m: SelfMap) -> Optional[RuleFacts]:
    if m.rule in _CATALOG_FACTS:
        return _CATALOG_FACTS[m.rule]
    form = canonical_form(m)
    if form is not None:
        return _FORM_FACTS[form]
    return None


# ---------------------------------------------------------------------------
# Point classification.
# ---------------------------------------------------------------------------


def classify_point(m: SelfMap, index: Index, budget: int = DEFAULT_BUDGET) -> PointClassification:
    """Classify the forward orbit of one point; Unknown rather than a guess."""
    if not contains(m.domain, index):
        raise DomainMismatchError(f"{index!r} not in map domain")
    if m.rule == "table":
        pre, per = _table_orbit_shape(m.table, index.coord)
        kind = "periodic" if pre == 0 else "quasi_periodic"
        return PointClassification(kind, per, pre, provenance="exhaustive")
    if m.rule == "disjoint_union":
        side = index.path[0]
        sub = m.left if side == "L" else m.right
        out = classify_point(sub, Index(index.path[1:], index.coord), budget)
        return out
    facts = _facts_for(m)
    if facts is not None:
        return _classify_by_facts(m, facts, index)
    return _classify_by_search(m, index, budget)


def _classify_by_facts(m: SelfMap, facts: RuleFacts, index: Index) -> PointClassification:
    if m.rule == "square":
        special = _SQUARE_SPECIAL.get(index.coord)
        if special is not None:
            kind, per, pre = special
            return PointClassification(kind, per, pre, certificate="squaring fixed points 0,1")
        return PointClassification(
            "non_quasi_periodic", certificate=facts.growth_note or "certified infinite orbit"
        )
    if facts.periodic == "all_period_1":
        return PointClassification("periodic", 1, 0, certificate="identity composition")
    if facts.periodic == "all_period_2":
        return PointClassification("periodic", 2, 0, certificate="involution pairing")
    # remaining certified rules have no finite orbits at all
    return PointClassification(
        "non_quasi_periodic", certificate=facts.growth_note or "certified infinite orbit"
    )


def _classify_by_search(m: SelfMap, index: Index, budget: int) -> PointClassification:
    try:
        shape = _detect_cycle(m, index, budget)
    except BudgetExceededError:
        shape = None
    if shape is None:
        return PointClassification("unknown", provenance="bounded-search", budget=budget)
    pre, per = shape
    kind = "periodic" if pre == 0 else "quasi_periodic"
    return PointClassification(kind, per, pre, provenance="bounded-search")


def _table_orbit_shape(table: tuple[int, ...], start: int) -> tuple[int, int]:
    seen: dict[int, int] = {}
    cur, i = start, 0
    while cur not in seen:
        seen[cur] = i
        cur = table[cur]
        i += 1
    return seen[cur], i - seen[cur]


def _detect_cycle(m: SelfMap, index: Index, budget: int) -> Optional[tuple[int, int]]:
    # plain visited-position walk; orbits that cycle within budget give exact shape
    seen: dict[Index, int] = {}
    cur, i = index, 0
    while i <= budget:
        if cur in seen:
            return seen[cur], i - seen[cur]
        seen[cur] = i
        cur = evaluate(m, cur)
        i += 1
    return None


# ---------------------------------------------------------------------------
# Map profiles.
# ---------------------------------------------------------------------------


def map_profile(m: SelfMap, budget: int = DEFAULT_BUDGET) -> MapProfile:
    """Injectivity, periodic-point existence, and infinite-orbit existence for the map."""
    if m.rule == "table":
        return _table_profile(m.table)
    if m.rule == "disjoint_union":
        lp = map_profile(m.left, budget)
        rp = map_profile(m.right, budget)
        return _union_profile(m, lp, rp)
    facts = _facts_for(m)
    if facts is not None:
        return _profile_by_facts(m, facts)
    return _profile_by_search(m, budget)


def _profile_by_facts(m: SelfMap, facts: RuleFacts) -> MapProfile:
    if facts.injective:
        inj = proven_true(certificate="certified injective rule")
    else:
        a, b = facts.injective_witness
        inj = proven_false(witness=(Index((), a), Index((), b)))
    if facts.periodic == "none":
        per = proven_false(certificate="certified aperiodic rule")
    elif facts.periodic in ("all_period_1", "all_period_2"):
        per = proven_true(witness=(Index((), 0),))
    else:  # explicit dict of periodic coordinates
        pt = next(iter(sorted(facts.periodic)))
        per = proven_true(witness=(Index((), pt),))
    if facts.nqp == "none":
        nqp = proven_false(certificate="every orbit is certified finite")
    elif facts.nqp == "all":
        nqp = proven_true(witness=(Index((), 0),), certificate=facts.growth_note)
    else:  # all_except_periodic_region: pick a point with certified growth
        nqp = proven_true(witness=(Index((), 2),), certificate=facts.growth_note)
    return MapProfile(inj, per, nqp)


def _table_profile(table: tuple[int, ...]) -> MapProfile:
    size = len(table)
    inj_pair = None
    first_source: dict[int, int] = {}
    for src in range(size):  # scan in coordinate order = rank order on finite ranges
        tgt = table[src]
        if tgt in first_source:
            inj_pair = (first_source[tgt], src)
            break
        first_source[tgt] = src
    if inj_pair is None:
        inj = proven_true(certificate="no collision among all entries", provenance="exhaustive")
    else:
        a, b = inj_pair
        inj = proven_false(witness=(Index((), a), Index((), b)), provenance="exhaustive")
    pre, per = _table_orbit_shape(table, 0)
    periodic_coord = 0
    for _ in range(pre):  # walk onto the cycle
        periodic_coord = table[periodic_coord]
    per_v = proven_true(witness=(Index((), periodic_coord),), provenance="exhaustive")
    nqp = proven_false(certificate="finite domain forces every orbit onto a cycle",
                       provenance="exhaustive")
    return MapProfile(inj, per_v, nqp)


def _union_profile(m: SelfMap, lp: MapProfile, rp: MapProfile) -> MapProfile:
    # tagged sides never interact, so the union facts combine exactly
    def lift(v: Verdict, side: str) -> Verdict:
        if v.witness is None:
            return v
        tagged = tuple(Index((side,) + w.path, w.coord) for w in v.witness)
        return Verdict(v.truth, tagged, v.certificate, v.provenance, v.budget)

    inj = v_and(lift(lp.injective, "L"), lift(rp.injective, "R"))
    per = v_or(lift(lp.has_periodic_point, "L"), lift(rp.has_periodic_point, "R"))
    nqp = v_or(
        lift(lp.has_non_quasi_periodic_point, "L"),
        lift(rp.has_non_quasi_periodic_point, "R"),
    )
    return MapProfile(inj, per, nqp)


def _profile_by_search(m: SelfMap, budget: int) -> MapProfile:
    # sound partial rules first: a collision inside the inner map survives composition
    inj: Verdict
    if m.rule == "compose":
        inner_prof = map_profile(m.inner, budget)
        if inner_prof.injective.is_false and inner_prof.injective.witness is not None:
            a, b = inner_prof.injective.witness
            inj = proven_false(witness=(a, b), certificate="inner collision survives composition")
        else:
            inj = _injectivity_by_scan(m, budget)
    else:
        inj = _injectivity_by_scan(m, budget)
    per = unknown(budget)
    sample_cap = 64
    for i, start in enumerate(region_indices(m.domain, 8)):
        if i >= sample_cap:
            break
        try:
            shape = _detect_cycle(m, start, budget // 8)
        except BudgetExceededError:
            continue
        if shape is not None:
            pre, cyc = shape
            pt = start
            for _ in range(pre):
                pt = evaluate(m, pt)
            per = proven_true(witness=(pt,), provenance="bounded-search")
            break
    nqp = unknown(budget)
    profile = MapProfile(inj, per, nqp)
    return _coherent(profile)


def _injectivity_by_scan(m: SelfMap, budget: int) -> Verdict:
    bound = max(4, budget // 64)
    seen: dict[Index, Index] = {}
    for src in region_indices(m.domain, bound):
        try:
            tgt = evaluate(m, src)
        except BudgetExceededError:
            continue
        if tgt in seen:
            return proven_false(witness=(seen[tgt], src), provenance="bounded-search")
        seen[tgt] = src
    return unknown(budget)


def _coherent(profile: MapProfile) -> MapProfile:
    # no periodic point forces every orbit infinite (finite orbits end on cycles)
    if profile.has_periodic_point.is_false and not profile.has_non_quasi_periodic_point.is_true:
        nqp = proven_true(
            certificate="aperiodicity forces every forward orbit to be infinite",
            provenance=profile.has_periodic_point.provenance,
        )
        return MapProfile(profile.injective, profile.has_periodic_point, nqp)
    return profile


def brute_force_profile(m: SelfMap) -> MapProfile:
    """Ground-truth profile for finite tables by enumerating every orbit explicitly."""
    if m.rule != "table":
        raise ValueError("brute_force_profile handles finite tables only")
    table = m.table
    size = len(table)
    # injectivity by counting in-degrees (a different route than map_profile's scan)
    indeg = [0] * size
    for tgt in table:
        indeg[tgt] += 1
    collision_target = next((t for t in range(size) if indeg[t] > 1), None)
    if collision_target is None:
        inj = proven_true(certificate="all in-degrees equal one", provenance="exhaustive")
    else:
        srcs = [s for s in range(size) if table[s] == collision_target][:2]
        inj = proven_false(witness=(Index((), srcs[0]), Index((), srcs[1])),
                           provenance="exhaustive")
    # walking any point `size` steps lands on a cycle, giving a periodic witness
    cur = 0
    for _ in range(size):
        cur = table[cur]
    per = proven_true(witness=(Index((), cur),), provenance="exhaustive")
    # enumerate every orbit explicitly; each must revisit, so none is infinite
    for start in range(size):
        seen = set()
        walker = start
        while walker not in seen:
            seen.add(walker)
            walker = table[walker]
    nqp = proven_false(certificate="every enumerated orbit repeated", provenance="exhaustive")
    return MapProfile(inj, per, nqp)


def injectivity_witness(m: SelfMap, bound: int) -> Optional[tuple[Index, Index]]:
    """First collision pair (by enumeration rank) among indices with |coord| <= bound."""
    seen: dict[Index, Index] = {}
    for src in region_indices(m.domain, bound):
        try:
            tgt = evaluate(m, src)
        except BudgetExceededError:
            continue
        if tgt in seen:
            a, b = seen[tgt], src
            return (a, b) if a.coord <= b.coord else (b, a)
        seen[tgt] = src
    return None


# ---------------------------------------------------------------------------
# Chain decomposition for injective aperiodic maps.
# ---------------------------------------------------------------------------


def chain_decomposition(m: SelfMap, bound: int, budget: int = DEFAULT_BUDGET) -> ChainDecomposition:
    """Split the region |coord| <= bound into forward/backward chains.

    Representatives are the minimal-rank member of each chain met while scanning
    ranks upward.  Requires a certified injective, aperiodic map; the profile is
    re-checked here so callers cannot feed a map whose chains could collide.
    """
    profile = map_profile(m, budget)
    if not profile.injective.is_true:
        raise ValueError(f"chain decomposition needs proven injectivity, got {profile.injective.truth}")
    if not profile.has_periodic_point.is_false:
        raise ValueError(
            f"chain decomposition needs proven aperiodicity, got {profile.has_periodic_point.truth}"
        )
    region = list(region_indices(m.domain, bound))
    in_region = set(region)
    visited: set[Index] = set()
    reps: list[Index] = []
    for start in region:
        if start in visited:
            continue
        reps.append(start)
        visited.add(start)
        # forward sweep
        cur, steps = start, 0
        while steps < budget:
            cur = evaluate(m, cur)
            steps += 1
            if cur in in_region:
                if cur in visited:
                    raise RuntimeError("chain collision: injectivity certificate violated")
                visited.add(cur)
            elif abs(cur.coord) > 4 * bound + 8:
                break
        # backward sweep
        cur, steps = start, 0
        while steps < budget:
            prev = preimage(m, cur)
            if prev is None:
                break
            cur = prev
            steps += 1
            if cur in in_region:
                if cur in visited:
                    raise RuntimeError("chain collision: injectivity certificate violated")
                visited.add(cur)
            elif abs(cur.coord) > 4 * bound + 8:
                break
    residual = tuple(i for i in region if i not in visited)
    return ChainDecomposition(tuple(reps), bound, residual, len(visited & in_region))


# ---------------------------------------------------------------------------
# Orbit-position resolution: is kappa on the forward orbit of theta, and where?
# Exact answers only; raises UnresolvedOrbitError when no certificate applies.
# ---------------------------------------------------------------------------


def orbit_position(m: SelfMap, anchor: Index, target: Index,
                   walk_budget: int = 512) -> Optional[int]:
    """Position n >= 0 with iterate(m, anchor, n) == target, or None when off-orbit."""
    if anchor.path != target.path:
        return None
    rule = m.rule
    if rule == "disjoint_union":
        side = anchor.path[0]
        sub = m.left if side == "L" else m.right
        return orbit_position(sub, Index(anchor.path[1:], anchor.coord),
                              Index(target.path[1:], target.coord), walk_budget)
    if rule == "successor":
        d = target.coord - anchor.coord
        return d if d >= 0 else None
    if rule == "predecessor":
        d = anchor.coord - target.coord
        return d if d >= 0 else None
    if rule in ("parity_up", "parity_down"):
        if target == anchor:
            return 0
        return 1 if target == evaluate(m, anchor) else None
    form = canonical_form(m)
    if form == "identity":
        return 0 if anchor == target else None
    if form in ("shift2_odd_up", "shift2_even_up"):
        if anchor.coord % 2 != target.coord % 2:
            return None
        up_parity = 1 if form == "shift2_odd_up" else 0
        step = 2 if anchor.coord % 2 == up_parity else -2
        d, rem = divmod(target.coord - anchor.coord, step)
        return d if rem == 0 and d >= 0 else None
    if rule == "table":
        cur = anchor
        for n in range(len(m.table) + 1):
            if cur == target:
                return n
            cur = evaluate(m, cur)
        return None
    if rule in ("square", "square_plus_one"):
        return _orbit_position_by_growth(m, anchor, target, walk_budget)
    # generic bounded walk; exact only when found, otherwise refuse to guess
    cur = anchor
    for n in range(walk_budget + 1):
        if cur == target:
            return n
        try:
            cur = evaluate(m, cur)
        except BudgetExceededError as exc:
            raise UnresolvedOrbitError(str(exc)) from exc
    raise UnresolvedOrbitError(
        f"orbit membership of {target!r} undecided within {walk_budget} steps"
    )


def _orbit_position_by_growth(m: SelfMap, anchor: Index, target: Index,
                              walk_budget: int) -> Optional[int]:
    # squaring rules: once |coordinate| >= 2 and at least one step was taken,
    # magnitudes strictly increase, so passing |target| settles membership
    cur = anchor
    n = 0
    while n <= walk_budget:
        if cur == target:
            return n
        if n >= 2 and abs(cur.coord) >= 2 and abs(cur.coord) > abs(target.coord):
            return None
        try:
            cur = evaluate(m, cur)
        except BudgetExceededError as exc:
            raise UnresolvedOrbitError(str(exc)) from exc
        n += 1
    raise UnresolvedOrbitError(f"growth walk exhausted after {walk_budget} steps")


def signed_orbit_index(m: SelfMap, anchor: Index, target: Index,
                       radius: int) -> Optional[int]:
    """Exponent i with |i| <= radius and phi^i(anchor) == target, preferring i >= 0.

    Negative exponents use certified preimages; None when target is not within
    the +-radius window of the anchor's two-sided orbit.
    """
    pos = orbit_position(m, anchor, target, walk_budget=max(radius + 2, 64))
    if pos is not None and pos <= radius:
        return pos
    cur = anchor
    for i in range(1, radius + 1):
        prev = preimage(m, cur)
        if prev is None:
            return None
        cur = prev
        if cur == target:
            return -i
    return None


# ---------------------------------------------------------------------------
# Metadata sanity scan, run at test-suite startup.
# ---------------------------------------------------------------------------


def sanity_check_catalog_metadata(bound: int = 64) -> None:
    """Bounded re-verification of every hand-certified fact; raises on mismatch."""
    from . import indexspace as ixs

    rules = {
        "successor": ixs.successor(),
        "predecessor": ixs.predecessor(),
        "square": ixs.square(),
        "square_plus_one": ixs.square_plus_one(),
        "parity_up": ixs.parity_up(),
        "parity_down": ixs.parity_down(),
    }
    for name, m in rules.items():
        facts = _CATALOG_FACTS[name]
        coords = range(-bound, bound + 1)
        # injectivity within the window (collisions may need both points inside)
        images: dict[int, int] = {}
        collision = None
        for c in coords:
            t = evaluate(m, Index((), c)).coord
            if t in images:
                collision = (images[t], c)
                break
            images[t] = c
        if facts.injective and collision is not None:
            raise AssertionError(f"{name}: certified injective but found collision {collision}")
        if not facts.injective:
            a, b = facts.injective_witness
            if evaluate(m, Index((), a)) != evaluate(m, Index((), b)):
                raise AssertionError(f"{name}: stored collision witness does not collide")
        # periodic structure
        for c in coords:
            shape = _detect_cycle(m, Index((), c), 8)
            if facts.periodic == "none" and shape is not None:
                raise AssertionError(f"{name}: certified aperiodic but {c} cycles {shape}")
            if facts.periodic == "all_period_2" and shape != (0, 2):
                raise AssertionError(f"{name}: expected period 2 at {c}, got {shape}")
            if isinstance(facts.periodic, dict):
                expected = facts.periodic.get(c)
                if expected is not None and shape != (0, expected):
                    raise AssertionError(f"{name}: expected period {expected} at {c}")
                if expected is None and shape is not None and shape[0] == 0 and abs(c) > 1:
                    raise AssertionError(f"{name}: unexpected periodic point {c}")
        # growth claims behind non-quasi-periodic certificates
        if name in ("successor", "predecessor"):
            pass  # translations trivially never revisit
        if name == "square":
            for c in coords:
                if abs(c) >= 2 and not abs(c * c) > abs(c):
                    raise AssertionError("square growth certificate broken")
        if name == "square_plus_one":
            for c in coords:
                if not c * c + 1 > c:
                    raise AssertionError("square_plus_one growth certificate broken")
    # recognized composition forms agree with explicit evaluation
    pairs = {
        "shift2_odd_up": ixs.compose_maps(ixs.parity_up(), ixs.parity_down()),
        "shift2_even_up": ixs.compose_maps(ixs.parity_down(), ixs.parity_up()),
        "identity": ixs.compose_maps(ixs.predecessor(), ixs.successor()),
    }
    for form, m in pairs.items():
        if canonical_form(m) != form:
            raise AssertionError(f"canonical_form missed {form}")
        for c in range(-bound, bound + 1):
            got = evaluate(m, Index((), c)).coord
            if form == "identity":
                want = c
            elif form == "shift2_odd_up":
                want = c + 2 if c % 2 == 1 else c - 2
            else:
                want = c + 2 if c % 2 == 0 else c - 2
            if got != want:
                raise AssertionError(f"{form}: evaluation mismatch at {c}: {got} != {want}")
