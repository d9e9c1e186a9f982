"""Instance families: exhaustive Cartesian enumeration or seeded sampling.

A family fixes value sets for every dimension of an instance.  Exhaustive
mode walks the Cartesian product in a fixed nested order; its size is known
up front (:meth:`FamilySpec.cardinality`) and snapshots that already
overspend the budget are skipped and counted as filtered.

Two reductions keep exhaustive families small without losing cases:

* ``ballots: "distinct"`` keeps one ballot per distinct point vector (the
  first in enumeration order); every built-in system decides winners from
  points alone.
* ``past_order: "multiset"`` enumerates past voters as multisets; the game
  only sees the past through its tally and its spend.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import random
import string
from dataclasses import asdict, dataclass, field
from typing import Iterator, Optional

from ..elections import SCORING, VotingSystem, enumerate_ballots
from ..errors import ResourceCapError, ValidationError
from ..obs import GOALS, CurrentVoter, FutureVoter, Obs, PastVoter

FORMAT_VERSION = 1
DEFAULT_MAX_INSTANCES = 10**7


@dataclass
class FamilySpec:
    systems: list
    m: list = field(default_factory=lambda: [3])
    sigma: str = "canonical"
    d: str = "all"
    goals: list = field(default_factory=lambda: list(GOALS))
    priced: list = field(default_factory=lambda: [False])
    weighted: list = field(default_factory=lambda: [False])
    past_len: list = field(default_factory=lambda: [0])
    past_order: str = "sequence"
    bribed: list = field(default_factory=lambda: [False, True])
    future_len: list = field(default_factory=lambda: [0])
    weights: list = field(default_factory=lambda: [1])
    prices: list = field(default_factory=lambda: [1])
    past_weights: Optional[list] = None
    past_prices: Optional[list] = None
    k: list = field(default_factory=lambda: [0])
    fixed_count: list = field(default_factory=lambda: [None])
    ballots: str = "all"
    mode: str = "exhaustive"
    seed: Optional[int] = None
    count: Optional[int] = None
    max_instances: int = DEFAULT_MAX_INSTANCES
    name: str = "family"
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        self.validate()

    # -- validation -------------------------------------------------------------

    def validate(self):
        if self.format_version != FORMAT_VERSION:
            raise ValidationError("format_version", f"unsupported version {self.format_version!r}")
        if not self.systems:
            raise ValidationError("systems", "need at least one system")
        for i, s in enumerate(self.systems):
            if not isinstance(s, dict) or "kind" not in s:
                raise ValidationError(f"systems[{i}]", "expected {kind, alpha?}")
            _system(s)
        for key in ("m", "goals", "priced", "weighted", "past_len", "bribed", "future_len",
                    "weights", "prices", "k", "fixed_count"):
            if not isinstance(getattr(self, key), list) or not getattr(self, key):
                raise ValidationError(key, "must be a nonempty list")
        for key in ("m", "past_len", "future_len", "weights", "prices", "k"):
            for v in getattr(self, key):
                if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                    raise ValidationError(key, "entries must be nonnegative integers")
        for v in self.fixed_count:
            if v is not None and (isinstance(v, bool) or not isinstance(v, int) or v < 0):
                raise ValidationError("fixed_count", "entries must be null or nonnegative integers")
        if any(m < 1 for m in self.m):
            raise ValidationError("m", "need at least one candidate")
        if any(g not in GOALS for g in self.goals):
            raise ValidationError("goals", f"entries must be in {GOALS}")
        if self.sigma not in ("canonical", "all"):
            raise ValidationError("sigma", "must be 'canonical' or 'all'")
        if self.d != "all":
            raise ValidationError("d", "only 'all' is supported")
        if self.ballots not in ("all", "distinct"):
            raise ValidationError("ballots", "must be 'all' or 'distinct'")
        if self.past_order not in ("sequence", "multiset"):
            raise ValidationError("past_order", "must be 'sequence' or 'multiset'")
        if not any(self.weighted):
            for key in ("weights", "past_weights"):
                vals = getattr(self, key)
                if vals is not None and set(vals) != {1}:
                    raise ValidationError(key, "weights other than 1 need weighted=true")
        if not any(self.priced):
            for key in ("prices", "past_prices"):
                vals = getattr(self, key)
                if vals is not None and set(vals) != {1}:
                    raise ValidationError(key, "prices other than 1 need priced=true")
        if self.mode not in ("exhaustive", "random"):
            raise ValidationError("mode", "must be 'exhaustive' or 'random'")
        if self.mode == "random":
            if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
                raise ValidationError("seed", "random mode needs a 64-bit seed")
            if not isinstance(self.count, int) or self.count < 0:
                raise ValidationError("count", "random mode needs an instance count")

    # -- serialisation ----------------------------------------------------------

    def to_dict(self):
        return asdict(self)

    def canonical_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def digest(self):
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()

    @classmethod
    def from_dict(cls, raw):
        if not isinstance(raw, dict):
            raise ValidationError("", "family spec must be a JSON object")
        known = set(cls.__dataclass_fields__)
        for key in raw:
            if key not in known:
                raise ValidationError(key, "unknown field")
        if "systems" not in raw:
            raise ValidationError("systems", "missing field")
        return cls(**raw)

    @classmethod
    def from_json(cls, text):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError("", f"invalid JSON: {exc}") from None
        return cls.from_dict(raw)

    # -- size -------------------------------------------------------------------

    def cells(self):
        """Yield one tuple per (system, m, priced, weighted) combination."""
        for s in self.systems:
            system = _system(s)
            ms = [len(system.alpha)] if system.kind == SCORING else self.m
            for m in ms:
                for priced in self.priced:
                    for weighted in self.weighted:
                        yield system, m, priced, weighted

    def value_sets(self, priced, weighted):
        weights = self.weights if weighted else [1]
        prices = self.prices if priced else [None]
        past_w = (self.past_weights or self.weights) if weighted else [1]
        past_p = (self.past_prices or self.prices) if priced else [None]
        return weights, prices, past_w, past_p

    def cardinality(self):
        if self.mode == "random":
            return self.count
        total = 0
        for system, m, priced, weighted in self.cells():
            nb = len(_ballot_choices(system, m, self.ballots))
            weights, prices, past_w, past_p = self.value_sets(priced, weighted)
            per_past = nb * len(past_w) * len(past_p) * len(self.bribed)
            if self.past_order == "multiset":
                pasts = sum(math.comb(per_past + n - 1, n) for n in self.past_len)
            else:
                pasts = sum(per_past**n for n in self.past_len)
            per_future = len(weights) * len(prices)
            futures = sum(per_future**n for n in self.future_len)
            sigmas = math.factorial(m) if self.sigma == "all" else 1
            total += (
                sigmas * m * len(self.goals) * pasts * nb * len(weights) * len(prices)
                * futures * len(self.k) * len(self.fixed_count)
            )
        return total


def _system(raw):
    alpha = raw.get("alpha")
    return VotingSystem(raw["kind"], tuple(alpha) if alpha is not None else None)


def _ballot_choices(system, m, mode):
    ballots = enumerate_ballots(system, m, cap=m)
    if mode == "all":
        return ballots
    seen, out = set(), []
    for b in ballots:
        c = system.contribution(b, m)
        if c not in seen:
            seen.add(c)
            out.append(b)
    return out


def _candidate_names(m):
    letters = string.ascii_lowercase
    if m <= len(letters):
        return tuple(letters[:m])
    return tuple(f"c{i}" for i in range(m))


def _build(system, m, priced, weighted, sigma, d, goal, past, u, future, k, fixed):
    return Obs(
        system=system,
        candidates=_candidate_names(m),
        past=tuple(PastVoter(f"p{i + 1}", b, br, w, p) for i, (b, w, p, br) in enumerate(past)),
        current=CurrentVoter("u", u[0], u[1], u[2]),
        future=tuple(FutureVoter(f"f{i + 1}", w, p) for i, (w, p) in enumerate(future)),
        sigma=sigma,
        d=d,
        goal=goal,
        priced=priced,
        weighted=weighted,
        k=k,
        fixed_count=fixed,
    )


def _spent(past, priced):
    return sum((p if priced else 1) for _, _, p, br in past if br), sum(1 for *_, br in past if br)


def _valid(past, priced, k, fixed):
    money, count = _spent(past, priced)
    if money > k:
        return False
    return fixed is None or count <= fixed


class Generation:
    """Iterator over a family that also counts filtered snapshots."""

    def __init__(self, family: FamilySpec):
        self.family = family
        self.filtered = 0
        self.generated = 0

    def __iter__(self) -> Iterator[Obs]:
        if self.family.mode == "random":
            yield from self._random()
        else:
            yield from self._exhaustive()

    def _exhaustive(self):
        fam = self.family
        size = fam.cardinality()
        if size > fam.max_instances:
            raise ResourceCapError(f"family has {size} instances, cap is {fam.max_instances}")
        for system, m, priced, weighted in fam.cells():
            ballots = _ballot_choices(system, m, fam.ballots)
            weights, prices, past_w, past_p = fam.value_sets(priced, weighted)
            sigmas = (list(itertools.permutations(range(m))) if fam.sigma == "all"
                      else [tuple(range(m))])
            past_opts = list(itertools.product(ballots, past_w, past_p, fam.bribed))
            future_opts = list(itertools.product(weights, prices))
            u_opts = list(itertools.product(ballots, weights, prices))
            for sigma in sigmas:
                for d in range(m):
                    for goal in fam.goals:
                        for n_past in fam.past_len:
                            if fam.past_order == "multiset":
                                pasts = itertools.combinations_with_replacement(past_opts, n_past)
                            else:
                                pasts = itertools.product(past_opts, repeat=n_past)
                            for past in pasts:
                                for u in u_opts:
                                    for n_fut in fam.future_len:
                                        for future in itertools.product(future_opts, repeat=n_fut):
                                            for k in fam.k:
                                                for fixed in fam.fixed_count:
                                                    if not _valid(past, priced, k, fixed):
                                                        self.filtered += 1
                                                        continue
                                                    self.generated += 1
                                                    yield _build(system, m, priced, weighted, sigma,
                                                                 d, goal, past, u, future, k, fixed)

    def _random(self):
        fam = self.family
        rng = random.Random(fam.seed)
        cells = list(fam.cells())
        while self.generated < fam.count:
            system, m, priced, weighted = rng.choice(cells)
            ballots = _ballot_choices(system, m, fam.ballots)
            weights, prices, past_w, past_p = fam.value_sets(priced, weighted)
            sigma = tuple(rng.sample(range(m), m)) if fam.sigma == "all" else tuple(range(m))
            d = rng.randrange(m)
            goal = rng.choice(fam.goals)
            past = tuple(
                (rng.choice(ballots), rng.choice(past_w), rng.choice(past_p), rng.choice(fam.bribed))
                for _ in range(rng.choice(fam.past_len))
            )
            u = (rng.choice(ballots), rng.choice(weights), rng.choice(prices))
            future = tuple(
                (rng.choice(weights), rng.choice(prices)) for _ in range(rng.choice(fam.future_len))
            )
            k = rng.choice(fam.k)
            fixed = rng.choice(fam.fixed_count)
            if not _valid(past, priced, k, fixed):
                self.filtered += 1
                continue
            self.generated += 1
            yield _build(system, m, priced, weighted, sigma, d, goal, past, u, future, k, fixed)


def gen(family: FamilySpec) -> Iterator[Obs]:
    return iter(Generation(family))
