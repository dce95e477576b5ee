"""Point classification, map profiles, and three-valued verdict algebra."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gshift.indexspace import (
    compose_maps,
    disjoint_union_maps,
    evaluate,
    format_index,
    ix,
    parity_down,
    parity_up,
    parse_index,
    predecessor,
    square,
    square_plus_one,
    successor,
    table_map,
)
from gshift.orbits import (
    brute_force_profile,
    chain_decomposition,
    classify_point,
    injectivity_witness,
    map_profile,
    orbit_position,
    proven_false,
    proven_true,
    signed_orbit_index,
    unknown,
    v_and,
    v_not,
    v_or,
)

tables = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.tuples(*[st.integers(min_value=0, max_value=n - 1)] * n)
)

verdicts = st.sampled_from([
    proven_true(witness=("w",), provenance="exhaustive"),
    proven_false(certificate="c", provenance="analytic-metadata"),
    unknown(budget=16),
])


def _truth(v):
    return v.truth


# ---------------------------------------------------------------------------
# Verdict algebra: Kleene three-valued logic with evidence threading.
# ---------------------------------------------------------------------------


def test_definite_verdicts_require_evidence():
    with pytest.raises(ValueError):
        proven_true()
    with pytest.raises(ValueError):
        proven_false()
    assert proven_true(witness=(ix(0),)).is_true
    assert proven_false(certificate="because").is_false
    assert unknown(budget=5).is_unknown


@given(verdicts)
def test_negation_involutes(v):
    assert _truth(v_not(v_not(v))) == _truth(v)


@given(verdicts, verdicts)
def test_conjunction_truth_table(a, b):
    r = v_and(a, b)
    if a.is_true and b.is_true:
        assert r.is_true
    elif a.is_false or b.is_false:
        assert r.is_false
    else:
        assert r.is_unknown


@given(verdicts, verdicts)
def test_disjunction_truth_table(a, b):
    r = v_or(a, b)
    if a.is_true or b.is_true:
        assert r.is_true
    elif a.is_false and b.is_false:
        assert r.is_false
    else:
        assert r.is_unknown


@given(verdicts, verdicts)
def test_de_morgan(a, b):
    assert _truth(v_not(v_and(a, b))) == _truth(v_or(v_not(a), v_not(b)))


def test_definite_results_carry_evidence_through_algebra():
    t = proven_true(witness=(ix(3),))
    f = proven_false(certificate="no such point")
    assert v_and(t, f).certificate == "no such point"
    assert v_or(t, f).witness == (ix(3),)
    flipped = v_not(t)  # the witness refuting the negation rides along
    assert flipped.witness is not None or flipped.certificate is not None


# ---------------------------------------------------------------------------
# Point classification.
# ---------------------------------------------------------------------------


def test_square_fixed_points_are_periodic():
    assert classify_point(square(), ix(0)).kind == "periodic"
    assert classify_point(square(), ix(0)).period == 1
    assert classify_point(square(), ix(1)).period == 1


def test_square_minus_one_is_quasi_periodic():
    cls = classify_point(square(), ix(-1))
    assert cls.kind == "quasi_periodic"
    assert (cls.preperiod, cls.period) == (1, 1)


def test_square_growth_point_is_non_quasi_periodic():
    cls = classify_point(square(), ix(2), 100)
    assert cls.kind == "non_quasi_periodic"
    # independent check of the certificate's inductive condition on early iterates
    cur = ix(2)
    for _ in range(10):
        nxt = evaluate(square(), cur)
        assert abs(nxt.coord) > abs(cur.coord)
        cur = nxt


def test_parity_swap_point_is_periodic_with_period_two():
    cls = classify_point(parity_up(), ix(4))
    assert (cls.kind, cls.period) == ("periodic", 2)


def test_table_classification_is_exact():
    cls = classify_point(table_map((1, 2, 0, 4, 3, 5)), ix(3))
    assert (cls.kind, cls.period, cls.preperiod) == ("periodic", 2, 0)
    cls2 = classify_point(table_map((1, 2, 2)), ix(0))
    assert (cls2.kind, cls2.preperiod, cls2.period) == ("quasi_periodic", 2, 1)


def test_union_classification_recurses_per_side():
    u = disjoint_union_maps(successor(), parity_up())
    assert classify_point(u, parse_index("L0")).kind == "non_quasi_periodic"
    assert classify_point(u, parse_index("R0")).kind == "periodic"


# ---------------------------------------------------------------------------
# Map profiles.
# ---------------------------------------------------------------------------


def test_three_point_table_profiles():
    assert map_profile(table_map((1, 2, 0))).truths() == (
        "proven_true", "proven_true", "proven_false")
    assert map_profile(table_map((0, 0))).truths() == (
        "proven_false", "proven_true", "proven_false")
    assert map_profile(table_map((0,))).truths() == (
        "proven_true", "proven_true", "proven_false")


def test_catalog_profiles():
    assert map_profile(successor()).truths() == (
        "proven_true", "proven_false", "proven_true")
    assert map_profile(square()).truths() == (
        "proven_false", "proven_true", "proven_true")
    assert map_profile(square_plus_one()).truths() == (
        "proven_false", "proven_false", "proven_true")
    assert map_profile(parity_up()).truths() == (
        "proven_true", "proven_true", "proven_false")


def test_profile_verdicts_carry_evidence():
    prof = map_profile(square_plus_one())
    assert prof.injective.is_false and prof.injective.witness is not None
    a, b = prof.injective.witness
    assert a != b
    assert evaluate(square_plus_one(), a) == evaluate(square_plus_one(), b)


@given(tables)
@settings(max_examples=300, deadline=None)
def test_table_profile_matches_brute_force(entries):
    m = table_map(entries)
    assert map_profile(m).truths() == brute_force_profile(m).truths()


def test_union_profile_combines_sides():
    u = disjoint_union_maps(successor(), parity_up())
    # injectivity survives (both sides injective); periodic point from the right
    assert u and map_profile(u).truths() == (
        "proven_true", "proven_true", "proven_true")
    witness = map_profile(u).has_periodic_point.witness
    assert witness is not None and witness[0].path == ("R",)


# ---------------------------------------------------------------------------
# Injectivity witnesses, chains, orbit positions.
# ---------------------------------------------------------------------------


def test_injectivity_witness_examples():
    assert injectivity_witness(square_plus_one(), 5) == (ix(-1), ix(1))
    assert injectivity_witness(square(), 5) == (ix(-1), ix(1))
    assert injectivity_witness(successor(), 100) is None


def test_chain_decomposition_examples():
    cd = chain_decomposition(successor(), 10)
    assert [format_index(r) for r in cd.representatives] == ["0"]
    assert cd.residual == ()

    cd2 = chain_decomposition(compose_maps(parity_up(), parity_down()), 10)
    assert sorted(format_index(r) for r in cd2.representatives) == ["0", "1"]

    cd3 = chain_decomposition(disjoint_union_maps(successor(), successor()), 5)
    assert sorted(format_index(r) for r in cd3.representatives) == ["L0", "R0"]


def test_chain_decomposition_rejects_non_injective_maps():
    with pytest.raises(ValueError):
        chain_decomposition(square_plus_one(), 10)


def test_chain_cover_reaches_every_small_coordinate():
    m = compose_maps(parity_up(), parity_down())
    cd = chain_decomposition(m, 8)
    # every |n| <= 8 sits on the forward/backward orbit of some representative
    for n in range(-8, 9):
        hit = any(
            signed_orbit_index(m, rep, ix(n), 16) is not None
            for rep in cd.representatives
        )
        assert hit, n


def test_orbit_position_arithmetic():
    assert orbit_position(successor(), ix(0), ix(41)) == 41
    assert orbit_position(successor(), ix(0), ix(-3)) is None
    assert signed_orbit_index(successor(), ix(0), ix(-3), 10) == -3


def test_orbit_position_by_growth():
    assert orbit_position(square(), ix(2), ix(65536)) == 4
    assert orbit_position(square(), ix(2), ix(65537)) is None
    assert orbit_position(square_plus_one(), ix(0), ix(26)) == 4  # 0,1,2,5,26


@given(st.integers(min_value=0, max_value=30))
def test_signed_orbit_index_round_trips_on_translation(k):
    from gshift.indexspace import iterate

    target = iterate(successor(), ix(-5), k)
    assert signed_orbit_index(successor(), ix(-5), target, 64) == k
