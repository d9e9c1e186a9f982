import random

import pytest
from conftest import build, random_obs

from online_bribery.errors import NotApplicableError, ValidationError
from online_bribery.harness.family import FamilySpec, gen
from online_bribery.obs import remaining_resources, serialize_instance
from online_bribery.oracle import solve_exact, value_with_restriction
from online_bribery.transforms import (
    TRANSFORMS,
    apply_transform,
    last_k_variant,
    register_transform,
    to_priced,
    to_weighted,
)


def test_to_priced_unit_prices():
    obs = build("plurality", "abc", u="bac", past=[("abc", True)], future=[(1, None)] * 2, k=2)
    target = to_priced(obs)
    assert target.priced and target.k == 2
    assert {v.price for v in target.past} | {target.current.price} | {v.price for v in target.future} == {1}
    assert remaining_resources(target) == (1, None)
    assert solve_exact(target).answer == solve_exact(obs).answer


def test_to_priced_zero_budget():
    obs = build("plurality", "ab", u="ba", future=[(1, None)], k=0)
    assert to_priced(obs).k == 0
    assert solve_exact(to_priced(obs)).answer == solve_exact(obs).answer


def test_double_application_is_an_error():
    obs = build("veto", "abc", u="abc", k=1)
    with pytest.raises(ValidationError):
        to_priced(to_priced(obs))
    with pytest.raises(ValidationError):
        to_weighted(to_weighted(obs))


def test_to_weighted_unit_weights():
    obs = build("approval", "abc", u="011", future=[(1, None)], k=1, d="b")
    target = to_weighted(obs)
    assert target.weighted and target.current.weight == 1
    assert solve_exact(target).answer == solve_exact(obs).answer
    assert solve_exact(to_weighted(obs.with_(k=0))).answer == solve_exact(obs.with_(k=0)).answer


def test_registry_and_report():
    obs = build("plurality", "ab", u="ba", k=1)
    report = apply_transform("to_priced", obs)
    assert report.relation == "equal" and report.transform == "to_priced"
    assert report.target == to_priced(obs)
    assert set(TRANSFORMS) >= {"to_priced", "to_weighted"}
    with pytest.raises(ValidationError):
        apply_transform("no_such_transform", obs)


def test_registering_a_new_transform():
    @register_transform("identity_for_test", relation="implies")
    def identity(obs):
        return obs

    try:
        obs = build("plurality", "ab", u="ba")
        assert apply_transform("identity_for_test", obs).relation == "implies"
    finally:
        TRANSFORMS.pop("identity_for_test")


def test_transforms_are_injective_on_serializations():
    rng = random.Random(1)
    seen = {}
    for _ in range(300):
        obs = random_obs(rng, "plurality", 3, priced=False, weighted=False)
        for name in ("to_priced", "to_weighted"):
            text = serialize_instance(apply_transform(name, obs).target)
            key = (name, text)
            assert seen.setdefault(key, serialize_instance(obs)) == serialize_instance(obs)


def test_last_k_positions():
    obs = build("plurality", "ab", u="ab", future=[(1, None)] * 3, k=2)
    assert last_k_variant(obs) == {2, 3}
    assert last_k_variant(obs.with_(k=9)) == {0, 1, 2, 3}
    assert last_k_variant(obs.with_(k=0)) == set()
    with pytest.raises(NotApplicableError):
        last_k_variant(to_priced(obs))


def test_last_k_equivalence_small_family():
    family = FamilySpec(
        systems=[{"kind": "plurality"}, {"kind": "veto"}, {"kind": "approval"}], m=[3],
        past_len=[0, 1], past_order="multiset", future_len=[0, 1, 2, 3], k=[0, 1, 2],
        ballots="distinct",
    )
    for obs in gen(family):
        assert value_with_restriction(obs, last_k_variant(obs)) == solve_exact(obs).answer
