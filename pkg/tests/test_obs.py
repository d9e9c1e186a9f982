import itertools
import json

import pytest
from conftest import build, random_obs
from hypothesis import given, settings
from hypothesis import strategies as st

from online_bribery.elections import PLURALITY_SYSTEM
from online_bribery.errors import ValidationError
from online_bribery.obs import (
    Obs,
    desired_set,
    goal_met,
    instance_digest,
    instance_from_dict,
    instance_to_dict,
    parse_instance,
    remaining_resources,
    serialize_instance,
    target_set,
)

A, B, C = 0, 1, 2
ABC = (A, B, C)


def test_target_sets():
    assert target_set(ABC, B, "constructive") == {A, B}
    assert target_set(ABC, B, "destructive") == {B, C}
    assert desired_set(ABC, B, "destructive") == {A}
    assert target_set(ABC, A, "destructive") == {A, B, C}
    assert desired_set(ABC, A, "destructive") == set()


def test_goal_met_examples():
    assert goal_met({A}, ABC, B, "constructive")
    assert not goal_met({A, B}, ABC, B, "destructive")
    assert goal_met(set(), ABC, B, "destructive")
    assert not goal_met(set(), ABC, B, "constructive")


def test_remaining_resources_examples():
    unpriced = build("plurality", u="ab", past=[("ab", True)], k=2)
    assert remaining_resources(unpriced) == (None, 1)
    priced = build("plurality", u=("ab", 1, 1), past=[("ab", True, 1, 2)], k=5, priced=True)
    assert remaining_resources(priced) == (3, None)
    fixed = build("plurality", u=("ab", 1, 1), past=[("ab", True, 1, 2)], k=5, priced=True,
                  fixed_count=1)
    assert remaining_resources(fixed) == (3, 0)


def test_over_budget_snapshot_is_malformed():
    with pytest.raises(ValidationError):
        build("plurality", u="ab", past=[("ab", True), ("ba", True)], k=1)
    with pytest.raises(ValidationError):
        build("plurality", u=("ab", 1, 1), past=[("ab", True, 1, 4)], k=3, priced=True)
    with pytest.raises(ValidationError):
        build("plurality", u="ab", past=[("ab", True)], k=3, fixed_count=0)


def test_flag_consistency_is_enforced():
    with pytest.raises(ValidationError):
        build("plurality", u=("ab", 2), k=1)  # weight 2 without weighted
    with pytest.raises(ValidationError):
        build("plurality", u=("ab", 1, 1), k=1)  # price without priced
    with pytest.raises(ValidationError):
        build("plurality", u="ab", k=1, priced=True)  # priced but no price


def test_voter_names_must_be_unique():
    obs = build("plurality", u="ab", future=[(1, None)])
    with pytest.raises(ValidationError):
        obs.with_(future=(obs.future[0].__class__("u"),))


@given(st.integers(2, 4), st.data())
def test_target_set_duality(m, data):
    sigma = tuple(data.draw(st.permutations(range(m))))
    pos = data.draw(st.integers(0, m - 2))
    d, succ = sigma[pos], sigma[pos + 1]
    assert target_set(sigma, d, "constructive") == set(range(m)) - target_set(sigma, succ, "destructive")


def test_goal_met_closure_exhaustive():
    for m in range(1, 5):
        cands = range(m)
        for sigma in itertools.permutations(cands):
            for d in cands:
                D = target_set(sigma, d, "constructive")
                H = target_set(sigma, d, "destructive")
                for r in range(m + 1):
                    for winners in itertools.combinations(cands, r):
                        w = set(winners)
                        if goal_met(w, sigma, d, "constructive"):
                            assert all(goal_met(w | {c}, sigma, d, "constructive") for c in D)
                        assert all(not goal_met(w | {h}, sigma, d, "destructive") for h in H)


@settings(max_examples=100)
@given(st.randoms(use_true_random=False), st.sampled_from(["plurality", "veto", "approval"]))
def test_remaining_resources_ignores_past_order(rng, kind):
    obs = random_obs(rng, kind, 3)
    past = list(obs.past)
    rng.shuffle(past)
    assert remaining_resources(obs.with_(past=tuple(past))) == remaining_resources(obs)


# -- JSON ------------------------------------------------------------------------


MINIMAL = {
    "format_version": 1,
    "system": {"kind": "plurality"},
    "candidates": ["a", "b"],
    "goal": "constructive",
    "priced": False,
    "weighted": False,
    "k": 1,
    "sigma": ["a", "b"],
    "d": "a",
    "past": [],
    "current": {"name": "u", "ballot": ["b", "a"]},
    "future": [{"name": "v"}],
}


def test_minimal_instance_round_trips_byte_identically():
    text = json.dumps(MINIMAL, indent=2, sort_keys=True) + "\n"
    obs = parse_instance(text)
    assert serialize_instance(obs) == text
    assert parse_instance(serialize_instance(obs)) == obs


def test_wrong_length_approval_ballot_names_current_ballot():
    raw = dict(MINIMAL, system={"kind": "approval"}, current={"name": "u", "ballot": [1, 0, 1]})
    with pytest.raises(ValidationError) as err:
        instance_from_dict(raw)
    assert err.value.path == "current.ballot"


def test_missing_future_price_is_rejected():
    raw = dict(MINIMAL, priced=True, current={"name": "u", "ballot": ["b", "a"], "price": 1},
               future=[{"name": "v"}])
    with pytest.raises(ValidationError) as err:
        instance_from_dict(raw)
    assert err.value.path.startswith("future[0]")


@pytest.mark.parametrize(
    "patch, path",
    [
        ({"extra": 1}, "extra"),
        ({"d": "z"}, "d"),
        ({"sigma": ["a", "a"]}, "sigma"),
        ({"k": -1}, "k"),
        ({"goal": "both"}, "goal"),
        ({"system": {"kind": "borda"}}, "system"),
    ],
)
def test_parse_errors_carry_paths(patch, path):
    with pytest.raises(ValidationError) as err:
        instance_from_dict(dict(MINIMAL, **patch))
    assert err.value.path.startswith(path)


def test_parse_rejects_non_json():
    with pytest.raises(ValidationError):
        parse_instance("{not json")


def test_scoring_instance_round_trip():
    obs = build(PLURALITY_SYSTEM.__class__("scoring", (2, 1, 0)), "abc", u="cab", k=1)
    assert parse_instance(serialize_instance(obs)) == obs
    assert instance_to_dict(obs)["system"] == {"kind": "scoring", "alpha": [2, 1, 0]}


@settings(max_examples=150)
@given(st.randoms(use_true_random=False), st.sampled_from(["plurality", "veto", "approval"]),
       st.integers(1, 3))
def test_round_trip_property(rng, kind, m):
    if kind == "veto" and m < 2:
        m = 2
    obs = random_obs(rng, kind, m)
    text = serialize_instance(obs)
    again = parse_instance(text)
    assert again == obs
    assert serialize_instance(again) == text
    assert instance_digest(again) == instance_digest(obs)
    assert isinstance(again, Obs)
