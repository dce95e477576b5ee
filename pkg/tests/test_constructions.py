"""Block-length recurrences, almost-disjoint families, and the three constructions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gshift.indexspace import (
    INTEGERS,
    Index,
    NATURALS,
    ix,
    iterate,
    parity_up,
    square,
    square_plus_one,
    successor,
)
from gshift.configspace import (
    Constant,
    FinitePatch,
    OrbitBlocks,
    default_alphabet,
    in_cylinder,
    pattern_from_ranks,
    shifted,
)
from gshift.constructions import (
    AlmostDisjointFamily,
    ExplicitBlockSet,
    PreconditionError,
    PrimePowerSet,
    ScrambledFamilySpec,
    almost_disjoint_family,
    block_lengths,
    dc_family,
    densify_family,
    full_shift_transitive_point,
    omega_embedding,
    pattern_enumeration,
    shift_inner,
    transitive_weave_family,
    verify_length_inequalities,
    weave_entry_exponent,
)
from gshift.orbits import classify_point

ALPHA = default_alphabet()
P, Q = ALPHA.p, ALPHA.q


# ---------------------------------------------------------------------------
# Block lengths.
# ---------------------------------------------------------------------------

PLAIN_PREFIX = (1, 2, 7, 31, 165, 1031, 7423, 60621)
PLAIN_HORIZONS = (1, 3, 10, 41, 206, 1237, 8660, 69281)
WEAVE_PREFIX = (1, 3, 15, 76, 421, 2656, 19159, 156514)
WEAVE_HORIZONS = (1, 5, 22, 101, 526, 3187, 22352, 178873)


def test_plain_lengths_frozen_prefix():
    bl = block_lengths(8, "plain")
    assert bl.values() == PLAIN_PREFIX
    assert tuple(bl.horizon(r) for r in range(1, 9)) == PLAIN_HORIZONS


def test_weave_lengths_frozen_prefix():
    bl = block_lengths(8, "weave")
    assert bl.values() == WEAVE_PREFIX
    assert tuple(bl.horizon(r) for r in range(1, 9)) == WEAVE_HORIZONS


def test_plain_small_case_inequality():
    bl = block_lengths(4, "plain")
    assert bl.values() == (1, 2, 7, 31)
    assert 31 * 4 > 3 * 41  # s_4/n_4 = 31/41 > 3/4
    assert 2 * 2 > 1 * 3    # s_2/n_2 = 2/3 > 1/2


def test_weave_small_case_inequality():
    bl = block_lengths(2, "weave")
    assert bl.value(2) == 3
    assert 3 * 2 > 1 * 5  # s_2/n_2 = 3/5 > 1/2


def test_length_inequalities_hold_and_are_checked_directly():
    for variant in ("plain", "weave"):
        verify_length_inequalities(block_lengths(32, variant), 32)


@given(st.integers(min_value=2, max_value=48),
       st.sampled_from(["plain", "weave"]))
@settings(max_examples=60, deadline=None)
def test_length_recurrence_oracle(n, variant):
    bl = block_lengths(n, variant)
    s = bl.values()
    partial = sum(s[: n - 1])
    if variant == "plain":
        assert s[n - 1] == (n - 1) * partial + 1
        denom = partial + s[n - 1]
    else:
        assert s[n - 1] == (n - 1) * (partial + n * (n - 1) // 2) + 1
        denom = partial + s[n - 1] + n * (n - 1) // 2
    assert n * s[n - 1] > (n - 1) * denom
    assert bl.horizon(n) == denom


def test_block_lengths_reject_unknown_variant():
    with pytest.raises(ValueError):
        block_lengths(4, "fancy")


# ---------------------------------------------------------------------------
# Almost-disjoint family.
# ---------------------------------------------------------------------------


def test_raw_prime_power_sets_are_disjoint():
    fam = almost_disjoint_family(2)
    a, b = fam.raw
    assert [n for n in range(1, 100) if a.contains(n)][:3] == [3, 9, 27]
    assert [n for n in range(1, 200) if b.contains(n)][:3] == [5, 25, 125]
    assert not any(a.contains(n) and b.contains(n) for n in range(1, 10 ** 6, 2))


def test_membership_examples():
    fam = almost_disjoint_family(2)
    assert fam.raw[0].contains(27)
    h1, h2 = fam.members
    assert h1.contains(4) and h2.contains(4)  # evens lie in every augmented set


def test_augmented_sets_intersect_exactly_in_evens_early_on():
    fam = almost_disjoint_family(3)
    for i in range(3):
        for j in range(i + 1, 3):
            both = [n for n in range(1, 1000)
                    if fam.members[i].contains(n) and fam.members[j].contains(n)]
            assert both == [n for n in range(2, 1000, 2)]


def test_family_members_differ_in_infinitely_many_odd_blocks():
    fam = almost_disjoint_family(2)
    h1, h2 = fam.members
    sym_diff = [n for n in range(1, 200) if h1.contains(n) != h2.contains(n)]
    assert sym_diff[:4] == [3, 5, 9, 25]


# ---------------------------------------------------------------------------
# Scrambled family construction (plain blocks).
# ---------------------------------------------------------------------------


def test_dc_family_members_differ_inside_symmetric_difference_blocks():
    m = successor()
    lengths = block_lengths(8, "plain")
    fam = almost_disjoint_family(2)
    spec = ScrambledFamilySpec(m, (ix(0),), ALPHA, lengths, fam, "plain")
    x, y = dc_family(spec)
    for r in (3, 5):  # 3 only in H1, 5 only in H2
        pos = lengths.prefix_sum(r - 1)
        assert x.symbol_at(ix(pos)) != y.symbol_at(ix(pos))
    for r in (2, 4):  # evens lie in both: whole blocks agree
        pos = lengths.prefix_sum(r - 1)
        assert x.symbol_at(ix(pos)) == y.symbol_at(ix(pos))


def test_dc_family_on_square_orbit_anchor():
    m = square()
    spec = ScrambledFamilySpec(m, (ix(2),), ALPHA, block_lengths(6, "plain"),
                               almost_disjoint_family(2), "plain")
    x = dc_family(spec)[0]
    # orbit 2, 4, 16, 256...: block 1 = {2} -> q; blocks 2,3 member -> p
    assert x.symbols_along(m, ix(2), 6) == [Q, P, P, P, P, P]
    assert x.symbol_at(ix(3)) == Q  # off the anchor orbit


def test_dc_family_rejects_quasi_periodic_anchor():
    spec = ScrambledFamilySpec(parity_up(), (ix(0),), ALPHA,
                               block_lengths(6, "plain"),
                               almost_disjoint_family(2), "plain")
    with pytest.raises(PreconditionError):
        dc_family(spec)


# ---------------------------------------------------------------------------
# Pattern enumeration.
# ---------------------------------------------------------------------------


def test_first_patterns_use_the_first_window():
    en = pattern_enumeration(ALPHA, INTEGERS)
    assert dict(en.pattern(1).items()) == {ix(0): P}
    assert dict(en.pattern(2).items()) == {ix(0): Q}


def test_twenty_six_patterns_within_rank_three():
    from gshift.indexspace import rank_of

    en = pattern_enumeration(ALPHA, INTEGERS)
    small = [n for n in range(1, 200)
             if max(rank_of(INTEGERS, i) for i in en.pattern(n).window) <= 3]
    assert small == list(range(1, 27))


@given(st.integers(min_value=1, max_value=3000))
def test_pattern_enumeration_round_trips(n):
    en = pattern_enumeration(ALPHA, INTEGERS)
    assert en.rank_of(en.pattern(n)) == n


def test_pattern_rank_of_window_pair():
    en = pattern_enumeration(ALPHA, INTEGERS)
    pat = pattern_from_ranks(INTEGERS, (1, 2), (P, P))
    assert en.rank_of(pat) >= 1
    assert en.pattern(en.rank_of(pat)) == pat


# ---------------------------------------------------------------------------
# Densification.
# ---------------------------------------------------------------------------


def _dense_family(count):
    m = square_plus_one()
    spec = ScrambledFamilySpec(m, (ix(0),), ALPHA, block_lengths(8, "plain"),
                               almost_disjoint_family(count), "plain")
    en = pattern_enumeration(ALPHA, m.domain)
    return m, en, densify_family(m, dc_family(spec), en, count)


def test_densified_members_hit_their_patterns():
    m, en, dense = _dense_family(8)
    for n in (1, 2, 5, 8):
        assert in_cylinder(dense[n - 1], en.pattern(n))


def test_densified_patch_support_is_non_quasi_periodic():
    m, en, dense = _dense_family(4)
    for member in dense:
        for coord in member.support():
            assert classify_point(m, coord).kind == "non_quasi_periodic"


def test_densify_rejects_maps_with_periodic_points():
    m = square()
    spec = ScrambledFamilySpec(m, (ix(2),), ALPHA, block_lengths(6, "plain"),
                               almost_disjoint_family(2), "plain")
    members = dc_family(spec)
    with pytest.raises(PreconditionError):
        densify_family(m, members, pattern_enumeration(ALPHA, m.domain), 2)


# ---------------------------------------------------------------------------
# Length-lex transitive word.
# ---------------------------------------------------------------------------


def test_word_prefix_is_length_lex_concatenation():
    w = full_shift_transitive_point(ALPHA)
    got = [w.symbol_at(ix(k)) for k in range(11)]
    assert got == [P, Q, P, P, P, Q, Q, P, Q, Q, P]
    assert w.symbol_at(ix(-4)) == P


def test_word_start_lands_on_the_word():
    w = full_shift_transitive_point(ALPHA)
    assert w.word_start((P,)) == 0
    assert w.word_start((Q,)) == 1
    assert w.word_start((Q, Q)) == 8
    for word in ((Q, Q), (P, Q, P), (Q, P, Q, Q)):
        start = w.word_start(word)
        assert tuple(w.symbol_at(ix(start + k)) for k in range(len(word))) == word


def test_single_q_pattern_entered_at_shift_one():
    w = full_shift_transitive_point(ALPHA)
    pat = pattern_from_ranks(INTEGERS, (1,), (Q,))
    assert in_cylinder(shifted(w, successor(), 1), pat)


# ---------------------------------------------------------------------------
# Weave construction and its entry bound.
# ---------------------------------------------------------------------------


def _weave_setup():
    m = successor()
    spec = ScrambledFamilySpec(m, (ix(0),), ALPHA, block_lengths(12, "weave"),
                               almost_disjoint_family(2), "weave")
    source = full_shift_transitive_point(ALPHA)
    members = transitive_weave_family(spec, source)
    return m, spec, source, members


def test_weave_family_requires_injective_aperiodic_map():
    spec = ScrambledFamilySpec(square_plus_one(), (ix(0),), ALPHA,
                               block_lengths(8, "weave"),
                               almost_disjoint_family(2), "weave")
    with pytest.raises(PreconditionError):
        transitive_weave_family(spec, full_shift_transitive_point(ALPHA))


def test_weave_hits_all_q_cylinder_within_bound():
    m, spec, source, members = _weave_setup()
    pat = pattern_from_ranks(INTEGERS, (1,), (Q,))
    bound = weave_entry_exponent(spec, source, pat)
    assert in_cylinder(shifted(members[0], m, bound), pat)


def test_weave_enters_every_small_cylinder_at_computed_exponent():
    m, spec, source, members = _weave_setup()
    en = pattern_enumeration(ALPHA, INTEGERS)
    for n in range(1, 27):
        pat = en.pattern(n)
        expo = weave_entry_exponent(spec, source, pat)
        assert in_cylinder(shifted(members[0], m, expo), pat), n


# ---------------------------------------------------------------------------
# Orbit embedding of the full one-sided shift.
# ---------------------------------------------------------------------------


def test_embedding_of_constant_inner_is_constant_on_samples():
    w = omega_embedding(successor(), ix(0), Constant(NATURALS, P), P)
    for c in (-3, 0, 1, 5, 40):
        assert w.symbol_at(ix(c)) == P


def test_embedding_places_inner_symbols_along_the_orbit():
    inner = FinitePatch(Constant(NATURALS, P), {Index((), 3): Q})
    w = omega_embedding(successor(), ix(0), inner, P)
    assert w.symbol_at(ix(3)) == Q
    assert [w.symbol_at(ix(c)) for c in (1, 2, 4)] == [P, P, P]


def test_embedding_requires_infinite_orbit_anchor():
    with pytest.raises(PreconditionError):
        omega_embedding(parity_up(), ix(0), Constant(NATURALS, P), P)


def test_shift_inner_drops_positions_below_one():
    inner = FinitePatch(Constant(NATURALS, Q), {Index((), 1): P, Index((), 5): P})
    moved = shift_inner(inner, 2)
    assert moved.symbol_at(Index((), 3)) == P   # was position 5
    assert moved.symbol_at(Index((), 1)) == Q   # old position 1 fell off
