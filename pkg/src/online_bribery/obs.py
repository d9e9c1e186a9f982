"""The online bribery setting: instance model, goals, resources and JSON I/O.

An :class:`Obs` freezes the moment of decision at the current voter ``u``:
voters before ``u`` have cast (possibly bribed) ballots, ``u`` has revealed
the ballot it will cast unless bribed, and for later voters only price and
weight are known.  One type with ``priced``/``weighted`` flags and an
optional ``fixed_count`` covers all eight problems and their ``[k]`` forms.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from typing import Optional

from .elections import APPROVAL, SCORING, VotingSystem, WeightedVote
from .errors import ValidationError

CONSTRUCTIVE = "constructive"
DESTRUCTIVE = "destructive"
GOALS = (CONSTRUCTIVE, DESTRUCTIVE)

MAX_TOTAL = 2**48
FORMAT_VERSION = 1


@dataclass(frozen=True)
class PastVoter:
    name: str
    ballot: tuple
    bribed: bool = False
    weight: int = 1
    price: Optional[int] = None


@dataclass(frozen=True)
class CurrentVoter:
    name: str
    ballot: tuple
    weight: int = 1
    price: Optional[int] = None


@dataclass(frozen=True)
class FutureVoter:
    name: str
    weight: int = 1
    price: Optional[int] = None


def _is_nat(x):
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


@dataclass(frozen=True)
class Obs:
    system: VotingSystem
    candidates: tuple
    past: tuple
    current: CurrentVoter
    future: tuple
    sigma: tuple
    d: int
    goal: str = CONSTRUCTIVE
    priced: bool = False
    weighted: bool = False
    k: int = 0
    fixed_count: Optional[int] = None

    def __post_init__(self):
        for name in ("candidates", "past", "future", "sigma"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        validate(self)

    @property
    def m(self):
        return len(self.candidates)

    @property
    def suffix(self):
        """``u`` followed by the future voters, as ``(price, weight)`` pairs."""
        return ((self.current.price, self.current.weight),) + tuple(
            (v.price, v.weight) for v in self.future
        )

    def past_votes(self):
        return [WeightedVote(v.ballot, v.weight) for v in self.past]

    def with_(self, **changes) -> "Obs":
        return replace(self, **changes)


def validate(obs: Obs) -> None:
    """Raise :class:`ValidationError` naming the first bad field."""
    system = obs.system
    cands = obs.candidates
    m = len(cands)
    if m < 1:
        raise ValidationError("candidates", "need at least one candidate")
    for i, c in enumerate(cands):
        if not isinstance(c, str) or not c:
            raise ValidationError(f"candidates[{i}]", "names must be nonempty strings")
    if len(set(cands)) != m:
        raise ValidationError("candidates", "duplicate candidate names")
    system.check_m(m)
    if sorted(obs.sigma) != list(range(m)):
        raise ValidationError("sigma", "must be a permutation of the candidates")
    if not (isinstance(obs.d, int) and 0 <= obs.d < m):
        raise ValidationError("d", "not a candidate")
    if obs.goal not in GOALS:
        raise ValidationError("goal", f"must be one of {GOALS}")
    if not isinstance(obs.priced, bool):
        raise ValidationError("priced", "must be a boolean")
    if not isinstance(obs.weighted, bool):
        raise ValidationError("weighted", "must be a boolean")
    if not _is_nat(obs.k):
        raise ValidationError("k", "must be a nonnegative integer")
    if obs.fixed_count is not None and not _is_nat(obs.fixed_count):
        raise ValidationError("fixed_count", "must be a nonnegative integer")

    names = set()
    records = [(f"past[{i}]", v) for i, v in enumerate(obs.past)]
    records.append(("current", obs.current))
    records += [(f"future[{i}]", v) for i, v in enumerate(obs.future)]
    total_w = total_p = 0
    for path, v in records:
        if not isinstance(v.name, str) or not v.name:
            raise ValidationError(f"{path}.name", "voter names must be nonempty strings")
        if v.name in names:
            raise ValidationError(f"{path}.name", f"duplicate voter name {v.name!r}")
        names.add(v.name)
        if not _is_nat(v.weight):
            raise ValidationError(f"{path}.weight", "must be a nonnegative integer")
        if not obs.weighted and v.weight != 1:
            raise ValidationError(f"{path}.weight", "unweighted instance needs weight 1")
        if obs.priced:
            if v.price is None:
                raise ValidationError(f"{path}.price", "priced instance needs a price")
            if not _is_nat(v.price):
                raise ValidationError(f"{path}.price", "must be a nonnegative integer")
            total_p += v.price
        elif v.price is not None:
            raise ValidationError(f"{path}.price", "unpriced instance must omit prices")
        total_w += v.weight
        if hasattr(v, "ballot"):
            system.validate_ballot(v.ballot, m, path=f"{path}.ballot")
        if hasattr(v, "bribed") and not isinstance(v.bribed, bool):
            raise ValidationError(f"{path}.bribed", "must be a boolean")
    if total_w > MAX_TOTAL:
        raise ValidationError("weights", "total weight exceeds 2^48")
    if total_p > MAX_TOTAL or obs.k > MAX_TOTAL:
        raise ValidationError("prices", "total price or budget exceeds 2^48")
    # Over-budget snapshots are malformed rather than "no" instances.
    _resources(obs)


def _resources(obs):
    bribed = [v for v in obs.past if v.bribed]
    budget_left = count_left = None
    if obs.priced:
        budget_left = obs.k - sum(v.price for v in bribed)
        if budget_left < 0:
            raise ValidationError("k", "past bribes already exceed the budget")
        if obs.fixed_count is not None:
            count_left = obs.fixed_count - len(bribed)
    else:
        count_left = obs.k - len(bribed)
        if obs.fixed_count is not None:
            count_left = min(count_left, obs.fixed_count - len(bribed))
    if count_left is not None and count_left < 0:
        raise ValidationError("k", "past bribes already exceed the bribe limit")
    return budget_left, count_left


def remaining_resources(obs: Obs):
    """``(budget_left, count_left)``; ``None`` marks an absent limit."""
    return _resources(obs)


def can_bribe(price, budget_left, count_left):
    if count_left is not None and count_left < 1:
        return False
    if budget_left is not None and price > budget_left:
        return False
    return True


def spend(price, budget_left, count_left):
    return (
        None if budget_left is None else budget_left - price,
        None if count_left is None else count_left - 1,
    )


# -- goals ------------------------------------------------------------------


def target_set(sigma, d, goal) -> frozenset:
    """D = {c : c >=_sigma d} for constructive, H = {c : d >=_sigma c} for destructive."""
    pos = list(sigma).index(d)
    if goal == CONSTRUCTIVE:
        return frozenset(sigma[: pos + 1])
    if goal == DESTRUCTIVE:
        return frozenset(sigma[pos:])
    raise ValidationError("goal", f"must be one of {GOALS}")


def desired_set(sigma, d, goal) -> frozenset:
    """Candidates whose winning serves the briber: D, or N = C minus H."""
    pos = list(sigma).index(d)
    if goal == CONSTRUCTIVE:
        return frozenset(sigma[: pos + 1])
    return frozenset(sigma[:pos])


def goal_met(winners, sigma, d, goal) -> bool:
    targets = target_set(sigma, d, goal)
    if goal == CONSTRUCTIVE:
        return not targets.isdisjoint(winners)
    return targets.isdisjoint(winners)


# -- decisions ----------------------------------------------------------------


@dataclass(frozen=True)
class Action:
    bribe: bool
    ballot: Optional[tuple] = None


NO_BRIBE = Action(False, None)


@dataclass(frozen=True)
class Decision:
    answer: bool
    action: Optional[Action]
    algorithm: str
    stats: dict = field(default_factory=dict, compare=False, hash=False)


# -- JSON ---------------------------------------------------------------------


def _ballot_to_json(obs_system, candidates, ballot):
    if ballot is None:
        return None
    if obs_system.kind == APPROVAL:
        return list(ballot)
    return [candidates[c] for c in ballot]


def _ballot_from_json(system, candidates, index, raw, path):
    if not isinstance(raw, list):
        raise ValidationError(path, "ballot must be an array")
    if system.kind == APPROVAL:
        ballot = tuple(raw)
    else:
        try:
            ballot = tuple(index[name] for name in raw)
        except (KeyError, TypeError):
            raise ValidationError(path, "unknown candidate in ballot") from None
    system.validate_ballot(ballot, len(candidates), path=path)
    return ballot


def instance_to_dict(obs: Obs) -> dict:
    cands = list(obs.candidates)

    def voter(v, extra):
        out = {"name": v.name}
        if obs.priced:
            out["price"] = v.price
        if obs.weighted:
            out["weight"] = v.weight
        out.update(extra)
        return out

    system = {"kind": obs.system.kind}
    if obs.system.kind == SCORING:
        system["alpha"] = list(obs.system.alpha)
    out = {
        "format_version": FORMAT_VERSION,
        "system": system,
        "candidates": cands,
        "goal": obs.goal,
        "priced": obs.priced,
        "weighted": obs.weighted,
        "k": obs.k,
        "sigma": [cands[c] for c in obs.sigma],
        "d": cands[obs.d],
        "past": [
            voter(v, {"ballot": _ballot_to_json(obs.system, cands, v.ballot), "bribed": v.bribed})
            for v in obs.past
        ],
        "current": voter(
            obs.current, {"ballot": _ballot_to_json(obs.system, cands, obs.current.ballot)}
        ),
        "future": [voter(v, {}) for v in obs.future],
    }
    if obs.fixed_count is not None:
        out["fixed_count"] = obs.fixed_count
    return out


def serialize_instance(obs: Obs) -> str:
    return json.dumps(instance_to_dict(obs), indent=2, sort_keys=True) + "\n"


_TOP_KEYS = {
    "format_version", "system", "candidates", "goal", "priced", "weighted",
    "k", "fixed_count", "sigma", "d", "past", "current", "future",
}


def _require(obj, key, path):
    if key not in obj:
        raise ValidationError(f"{path}.{key}" if path else key, "missing field")
    return obj[key]


def _check_keys(obj, allowed, path):
    if not isinstance(obj, dict):
        raise ValidationError(path, "must be an object")
    for key in obj:
        if key not in allowed:
            raise ValidationError(f"{path}.{key}" if path else key, "unknown field")


def instance_from_dict(raw) -> Obs:
    _check_keys(raw, _TOP_KEYS, "")
    version = raw.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ValidationError("format_version", f"unsupported version {version!r}")
    sysraw = _require(raw, "system", "")
    _check_keys(sysraw, {"kind", "alpha"}, "system")
    kind = _require(sysraw, "kind", "system")
    alpha = sysraw.get("alpha")
    if alpha is not None and not isinstance(alpha, list):
        raise ValidationError("system.alpha", "must be an array")
    system = VotingSystem(kind, tuple(alpha) if alpha is not None else None)

    cands = _require(raw, "candidates", "")
    if not isinstance(cands, list):
        raise ValidationError("candidates", "must be an array")
    index = {}
    for i, c in enumerate(cands):
        if not isinstance(c, str) or not c:
            raise ValidationError(f"candidates[{i}]", "names must be nonempty strings")
        if c in index:
            raise ValidationError(f"candidates[{i}]", f"duplicate candidate {c!r}")
        index[c] = i
    system.check_m(len(cands))

    priced = _require(raw, "priced", "")
    weighted = _require(raw, "weighted", "")
    for key, val in (("priced", priced), ("weighted", weighted)):
        if not isinstance(val, bool):
            raise ValidationError(key, "must be a boolean")

    def common(v, path, allowed):
        _check_keys(v, allowed, path)
        name = _require(v, "name", path)
        if priced:
            price = _require(v, "price", path)
        else:
            if "price" in v:
                raise ValidationError(f"{path}.price", "unpriced instance must omit prices")
            price = None
        if weighted:
            weight = _require(v, "weight", path)
        else:
            if "weight" in v:
                raise ValidationError(f"{path}.weight", "unweighted instance must omit weights")
            weight = 1
        for key, val in (("price", price), ("weight", weight)):
            if val is not None and not _is_nat(val):
                raise ValidationError(f"{path}.{key}", "must be a nonnegative integer")
        return name, price, weight

    past = []
    past_raw = _require(raw, "past", "")
    if not isinstance(past_raw, list):
        raise ValidationError("past", "must be an array")
    for i, v in enumerate(past_raw):
        path = f"past[{i}]"
        name, price, weight = common(v, path, {"name", "price", "weight", "ballot", "bribed"})
        ballot = _ballot_from_json(system, cands, index, _require(v, "ballot", path), f"{path}.ballot")
        bribed = _require(v, "bribed", path)
        past.append(PastVoter(name, ballot, bribed, weight, price))
    cur = _require(raw, "current", "")
    name, price, weight = common(cur, "current", {"name", "price", "weight", "ballot"})
    ballot = _ballot_from_json(system, cands, index, _require(cur, "ballot", "current"), "current.ballot")
    current = CurrentVoter(name, ballot, weight, price)
    future = []
    future_raw = _require(raw, "future", "")
    if not isinstance(future_raw, list):
        raise ValidationError("future", "must be an array")
    for i, v in enumerate(future_raw):
        name, price, weight = common(v, f"future[{i}]", {"name", "price", "weight"})
        future.append(FutureVoter(name, weight, price))

    sigma_raw = _require(raw, "sigma", "")
    if not isinstance(sigma_raw, list) or any(s not in index for s in sigma_raw):
        raise ValidationError("sigma", "must list candidate names")
    d_raw = _require(raw, "d", "")
    if d_raw not in index:
        raise ValidationError("d", f"unknown candidate {d_raw!r}")
    return Obs(
        system=system,
        candidates=tuple(cands),
        past=tuple(past),
        current=current,
        future=tuple(future),
        sigma=tuple(index[s] for s in sigma_raw),
        d=index[d_raw],
        goal=_require(raw, "goal", ""),
        priced=priced,
        weighted=weighted,
        k=_require(raw, "k", ""),
        fixed_count=raw.get("fixed_count"),
    )


def parse_instance(text: str) -> Obs:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("", f"invalid JSON: {exc}") from None
    return instance_from_dict(raw)


def action_to_json(obs: Obs, action: Optional[Action]):
    if action is None:
        return None
    return {
        "bribe": action.bribe,
        "ballot": _ballot_to_json(obs.system, obs.candidates, action.ballot),
    }


def decision_to_dict(obs: Obs, decision: Decision) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "answer": decision.answer,
        "action": action_to_json(obs, decision.action),
        "algorithm": decision.algorithm,
        "stats": dict(sorted(decision.stats.items())),
    }


def serialize_decision(obs: Obs, decision: Decision) -> str:
    return json.dumps(decision_to_dict(obs, decision), indent=2, sort_keys=True) + "\n"


def instance_digest(obs: Obs) -> str:
    return hashlib.sha256(serialize_instance(obs).encode()).hexdigest()
