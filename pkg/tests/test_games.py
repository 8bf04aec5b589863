import json
import random
from fractions import Fraction

import pytest

from latnash import games
from latnash.errors import (
    DuplicateProfile,
    EmptyPlayerSet,
    InfeasibleProfile,
    MissingPayoff,
    NonSurjectiveProjection,
    NotALattice,
    ParseError,
    SpecOutOfRange,
    UnknownElement,
)
from latnash.order import build_poset, is_sublattice


def chain2():
    return {"elements": ["0", "1"], "order": [["0", "1"]]}


def doc(**overrides):
    base = {
        "players": ["p1", "p2"],
        "strategies": {"p1": chain2(), "p2": chain2()},
        "feasible": "product",
        "payoffs": {"p1": {"0|0": "1", "0|1": "0", "1|0": "0", "1|1": "1"},
                    "p2": {"0|0": "1", "0|1": "0", "1|0": "0", "1|1": "1"}},
    }
    base.update(overrides)
    return json.dumps(base)


def coordination():
    return games.load_game(doc(name="coordination"))


def diag2():
    return games.load_game(doc(
        name="diag2",
        feasible=[["0", "0"], ["1", "1"]],
        payoffs={"p1": {"0|0": "0", "1|1": "1"},
                 "p2": {"0|0": "0", "1|1": "1"}}))


# --------------------------------------------------------------------------
# rationals


def test_parse_rational_exact():
    assert games.parse_rational("1/3") == Fraction(1, 3)
    assert games.parse_rational("-2/4") == Fraction(-1, 2)
    assert games.parse_rational("0.1") == Fraction(1, 10)  # exact, not float
    assert games.parse_rational(7) == Fraction(7)
    assert games.parse_rational("-3.25") == Fraction(-13, 4)


def test_parse_rational_rejects_floats_and_junk():
    with pytest.raises(ParseError):
        games.parse_rational(0.1)
    with pytest.raises(ParseError):
        games.parse_rational("1/0")
    with pytest.raises(ParseError):
        games.parse_rational("abc")
    with pytest.raises(ParseError):
        games.parse_rational(True)


def test_distinct_rationals_never_compare_equal():
    a = games.parse_rational("1/3")
    b = games.parse_rational("0.3333333333333333")
    assert a != b


# --------------------------------------------------------------------------
# loading


def test_minimal_one_player_game():
    g = games.load_game(json.dumps({
        "players": ["solo"],
        "strategies": {"solo": {"elements": ["s"], "order": []}},
        "feasible": "product",
        "payoffs": {"solo": {"s": "0"}},
    }))
    assert g.feasible == (("s",),)


def test_non_surjective_projection_rejected():
    with pytest.raises(NonSurjectiveProjection):
        games.load_game(doc(
            feasible=[["0", "0"], ["0", "1"]],
            payoffs={"p1": {"0|0": "0", "0|1": "0"},
                     "p2": {"0|0": "0", "0|1": "0"}}))


def test_coordination_loads_with_four_profiles():
    g = coordination()
    assert len(g.feasible) == 4
    assert g.payoff("p1", ("1", "1")) == 1


def test_parse_errors():
    with pytest.raises(ParseError):
        games.load_game("{not json")
    with pytest.raises(ParseError):
        games.load_game(json.dumps({"players": ["a"]}))
    with pytest.raises(ParseError):
        games.load_game(doc(extra_key=1))
    with pytest.raises(ParseError):
        games.load_game(doc(feasible=42))


def test_strategy_poset_must_be_lattice():
    bad = {"elements": ["a", "b"], "order": []}
    with pytest.raises(NotALattice):
        games.load_game(json.dumps({
            "players": ["p1"],
            "strategies": {"p1": bad},
            "feasible": [["a"], ["b"]],
            "payoffs": {"p1": {"a": "0", "b": "0"}},
        }))


def test_duplicate_profile_rejected():
    with pytest.raises(DuplicateProfile):
        games.load_game(doc(
            feasible=[["0", "0"], ["0", "0"], ["1", "1"]],
            payoffs={"p1": {"0|0": "0", "1|1": "0"},
                     "p2": {"0|0": "0", "1|1": "0"}}))


def test_missing_payoff_rejected():
    with pytest.raises(MissingPayoff):
        games.load_game(doc(
            payoffs={"p1": {"0|0": "1", "0|1": "0", "1|0": "0", "1|1": "1"},
                     "p2": {"0|0": "1", "0|1": "0", "1|0": "0"}}))


def test_unknown_strategy_in_profile():
    with pytest.raises(UnknownElement):
        games.load_game(doc(feasible=[["0", "7"], ["0", "0"], ["1", "1"]]))


def test_float_payoff_rejected_at_boundary():
    with pytest.raises(ParseError):
        games.load_game(doc(
            payoffs={"p1": {"0|0": 0.5, "0|1": "0", "1|0": "0", "1|1": "1"},
                     "p2": {"0|0": "1", "0|1": "0", "1|0": "0", "1|1": "1"}}))


# --------------------------------------------------------------------------
# sections / boxes


def test_product_form_sections_are_full():
    g = coordination()
    for x in g.feasible:
        for p in g.players:
            assert games.section(g, p, x) == ("0", "1")
        assert games.feasible_box(g, x) == g.feasible


def test_section_contains_own_coordinate():
    for g in (coordination(), diag2()):
        for x in g.feasible:
            for i, p in enumerate(g.players):
                assert x[i] in games.section(g, p, x)
                assert x in games.feasible_box(g, x)


def test_diag2_sections_are_singletons():
    g = diag2()
    assert games.section(g, "p2", ("0", "0")) == ("0",)
    assert games.feasible_box(g, ("0", "0")) == ((("0", "0")),)


def test_section_rejects_infeasible_profile():
    g = diag2()
    with pytest.raises(InfeasibleProfile):
        games.section(g, "p1", ("0", "1"))
    with pytest.raises(InfeasibleProfile):
        games.feasible_box(g, ("0", "1"))


# --------------------------------------------------------------------------
# supermodularity checks


def _one_player_square(payoffs_by_name):
    square = build_poset(["00", "01", "10", "11"],
                         [("00", "01"), ("00", "10"),
                          ("01", "11"), ("10", "11")])
    return games.Game(
        ["solo"], {"solo": square},
        [(e,) for e in square.elements],
        {"solo": {(e,): games.parse_rational(v)
                  for e, v in payoffs_by_name.items()}},
        name="square")


def test_chain_strategies_make_sections_vacuously_supermodular():
    g = coordination()
    for p in g.players:
        assert games.check_supermodular_sections(g, p)


def test_product_payoff_on_square_is_supermodular():
    g = _one_player_square({"00": "0", "01": "0", "10": "0", "11": "1"})
    assert games.check_supermodular_sections(g, "solo")


def test_negated_min_on_square_fails_supermodularity():
    # f = -(min of the two coordinates): strictly submodular at the
    # incomparable pair
    g = _one_player_square({"00": "0", "01": "0", "10": "0", "11": "-1"})
    r = games.check_supermodular_sections(g, "solo")
    assert not r
    player, x, y, z = r.witness
    assert {y, z} == {"01", "10"}


def test_one_player_increasing_differences_vacuous():
    g = _one_player_square({"00": "0", "01": "3", "10": "-2", "11": "7"})
    assert games.check_increasing_differences(g, "solo")


def test_coordination_has_increasing_differences():
    g = coordination()
    for p in g.players:
        assert games.check_increasing_differences(g, p)


def test_anti_coordination_fails_increasing_differences():
    g = games.load_game(doc(
        name="anti",
        payoffs={"p1": {"0|0": "0", "0|1": "1", "1|0": "1", "1|1": "0"},
                 "p2": {"0|0": "0", "0|1": "1", "1|0": "1", "1|1": "0"}}))
    r = games.check_increasing_differences(g, "p1")
    assert not r
    player, a, b, t, t2 = r.witness
    assert (a, b) == ("0", "1") and (t, t2) == (("0",), ("1",))


def test_validate_supermodular_aggregates():
    assert games.validate_supermodular(coordination()).ok
    assert games.validate_supermodular(diag2()).ok
    g = games.load_game(doc(
        feasible=[["0", "1"], ["1", "0"]],
        payoffs={"p1": {"0|1": "0", "1|0": "0"},
                 "p2": {"0|1": "0", "1|0": "0"}}))
    rep = games.validate_supermodular(g)
    assert not rep.ok
    x, y, esc, kind = rep.sublattice.witness
    assert esc in ("(1,1)", "(0,0)")


# --------------------------------------------------------------------------
# responses


def test_best_response_examples():
    g = coordination()
    assert games.best_response(g, "p1", ("0", "0")) == ("0",)
    d = diag2()
    assert games.best_response(d, "p1", ("0", "0")) == ("0",)  # singleton section
    flat = games.load_game(doc(
        payoffs={"p1": {"0|0": "2", "0|1": "2", "1|0": "2", "1|1": "2"},
                 "p2": {"0|0": "0", "0|1": "0", "1|0": "0", "1|1": "0"}}))
    assert games.best_response(flat, "p1", ("0", "0")) == ("0", "1")  # all ties


def test_partial_response_examples():
    g = coordination()
    assert games.partial_response(g, g.players, ("0", "0")) == ((("0", "0")),)
    d = diag2()
    assert games.partial_response(d, ["p1"], ("0", "0")) == ((("0", "0")),)
    with pytest.raises(EmptyPlayerSet):
        games.partial_response(g, [], ("0", "0"))


def test_partial_response_singleton_player_identity():
    # for one player, the group argmax equals the individual best response
    # spread over the feasible box
    g = coordination()
    for x in g.feasible:
        for p in g.players:
            i = g.player_pos(p)
            br = set(games.best_response(g, p, x))
            box = games.feasible_box(g, x)
            want = tuple(y for y in box if y[i] in br)
            assert games.partial_response(g, [p], x) == want


def test_joint_response_examples():
    g = coordination()
    assert games.joint_response(g, ("1", "1")) == ((("1", "1")),)
    # product form keeps it nonempty everywhere
    for x in g.feasible:
        assert games.joint_response(g, x)


def test_joint_response_subset_of_group_response(small_corpus):
    rng = random.Random(9)
    for g in small_corpus[:15]:
        for x in g.feasible:
            R = set(games.joint_response(g, x))
            players = rng.sample(g.players, rng.randint(1, len(g.players)))
            assert R <= set(games.partial_response(g, players, x))


# --------------------------------------------------------------------------
# generator


def test_spec_bounds():
    with pytest.raises(SpecOutOfRange):
        games.RandomGameSpec(players=(2, 9))
    with pytest.raises(SpecOutOfRange):
        games.RandomGameSpec(chain_length=(0, 3))
    with pytest.raises(SpecOutOfRange):
        games.RandomGameSpec(feasibility="banana")
    with pytest.raises(SpecOutOfRange):
        games.RandomGameSpec(interaction_range=(-1, 2))


def test_one_player_spec():
    g = games.random_supermodular_game(
        games.RandomGameSpec(players=1, chain_length=3), 5)
    assert len(g.players) == 1
    assert games.validate_supermodular(g).ok


def test_generated_games_always_validate(small_corpus):
    for g in small_corpus:
        assert games.validate_supermodular(g).ok


def test_generator_deterministic():
    spec = games.RandomGameSpec()
    a = games.serialize_game(games.random_supermodular_game(spec, 42))
    b = games.serialize_game(games.random_supermodular_game(spec, 42))
    assert a == b


def test_generator_produces_sublattice_feasible_sets():
    spec = games.RandomGameSpec(feasibility="sublattice")
    seen_proper = False
    for seed in range(30):
        g = games.random_supermodular_game(spec, seed)
        names = [g.profile_label(x) for x in g.feasible]
        assert is_sublattice(g.product_lattice(), names)
        total = 1
        for p in g.players:
            total *= len(g.lattices[p])
        seen_proper |= len(g.feasible) < total
    assert seen_proper  # at least one genuinely constrained game


# --------------------------------------------------------------------------
# serialization


def test_round_trip_identity():
    for g in (coordination(), diag2()):
        text = games.serialize_game(g)
        g2 = games.load_game(text)
        assert g2 == g
        assert games.serialize_game(g2) == text


def test_canonical_profile_order_by_index_not_name():
    g = games.load_game(json.dumps({
        "players": ["p1"],
        "strategies": {"p1": {"elements": ["9", "10"], "order": [["9", "10"]]}},
        "feasible": [["10"], ["9"]],
        "payoffs": {"p1": {"10": "0", "9": "1"}},
    }))
    # "9" comes first because it is the smaller element index, despite
    # "10" < "9" lexicographically
    assert g.feasible == (("9",), ("10",))


def test_product_feasible_serializes_compactly():
    g = coordination()
    assert json.loads(games.serialize_game(g))["feasible"] == "product"
    d = diag2()
    assert json.loads(games.serialize_game(d))["feasible"] == [["0", "0"], ["1", "1"]]
