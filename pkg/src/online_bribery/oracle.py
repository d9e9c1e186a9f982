"""Exact evaluation of the online bribery game.

The briber moves existentially at every voter from ``u`` on (leave the vote
alone, or bribe it to any ballot it can afford); every later voter's ballot
is revealed universally over all legal ballots.  The instance is a yes
instance iff the briber has a strategy that meets the goal on every final
profile.

Two evaluators are provided:

* the tally evaluator keys states by the (shift-normalised) score vector and
  collapses ballots with equal point vectors; it is the default for the
  built-in score-based systems;
* the generic evaluator keys states by the full cast profile and calls the
  system's winner function on every leaf.  It works for any pluggable system
  exposing ``winners``/``ballots``/``validate_ballot``/``check_m``.

Both are desk-scale only and guarded by explicit :class:`Caps`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .elections import winners_from_scores
from .errors import ResourceCapError, ValidationError
from .obs import (
    CONSTRUCTIVE,
    NO_BRIBE,
    Action,
    Decision,
    Obs,
    can_bribe,
    desired_set,
    goal_met,
    remaining_resources,
    spend,
)


@dataclass(frozen=True)
class Caps:
    max_candidates: int = 4
    max_suffix: int = 6
    max_budget: int = 10_000


DEFAULT_CAPS = Caps()


def check_caps(obs: Obs, caps: Caps = DEFAULT_CAPS):
    if obs.m > caps.max_candidates:
        raise ResourceCapError(f"{obs.m} candidates exceeds oracle cap {caps.max_candidates}")
    n = 1 + len(obs.future)
    if n > caps.max_suffix:
        raise ResourceCapError(f"{n} voters from u onward exceeds oracle cap {caps.max_suffix}")
    budget_left, count_left = remaining_resources(obs)
    for left in (budget_left, count_left):
        if left is not None and left > caps.max_budget:
            raise ResourceCapError(f"budget {left} exceeds oracle cap {caps.max_budget}")


class GameCache:
    """Memo table shareable across instances of one campaign.

    Entries are keyed by the remaining suffix, the normalised tally and the
    normalised resources, inside a per-context table (system, m, goal sets).
    """

    def __init__(self):
        self.tables = {}

    def table(self, context):
        return self.tables.setdefault(context, {})

    def __len__(self):
        return sum(len(t) for t in self.tables.values())


BallotFilter = Callable[[int, tuple], list]


class _TallyGame:
    def __init__(self, obs, *, allowed=None, briber_ballots=None, adversary_ballots=None,
                 memo=True, cache=None):
        system, m = obs.system, obs.m
        self.obs = obs
        self.m = m
        self.suffix = obs.suffix
        self.n = len(self.suffix)
        self.ballots = system.ballots(m, cap=m)
        moves, seen = [], set()
        for b in self.ballots:
            c = system.contribution(b, m)
            if c not in seen:
                seen.add(c)
                moves.append((b, c))
        self.moves = moves
        self.allowed = allowed
        self.briber_ballots = briber_ballots
        self.adversary_ballots = adversary_ballots
        restricted = not (allowed is None and briber_ballots is None and adversary_ballots is None)

        want = desired_set(obs.sigma, obs.d, obs.goal)
        self.want = tuple(sorted(want))
        self.other = tuple(c for c in range(m) if c not in want)
        self.strict = obs.goal != CONSTRUCTIVE

        self.tails = [tuple(self.suffix[p:]) for p in range(self.n + 1)]
        self.tail_price = [sum(pr or 0 for pr, _ in self.suffix[p:]) for p in range(self.n + 1)]
        if not memo:
            self.memo = None
        elif cache is not None and not restricted:
            context = (system, m, self.want, obs.goal)
            self.memo = cache.table(context)
        else:
            self.memo = {}
        self.nodes = 0
        self.hits = 0

    # -- helpers --------------------------------------------------------------

    def goal(self, t):
        want, other = self.want, self.other
        if not other:
            return bool(want)
        if not want:
            return False
        best_want = max(t[i] for i in want)
        best_other = max(t[i] for i in other)
        return best_want > best_other if self.strict else best_want >= best_other

    @staticmethod
    def add(t, c, w):
        if w == 0:
            return t
        return tuple(a + w * b for a, b in zip(t, c))

    @staticmethod
    def norm(t):
        lo = min(t)
        return tuple(a - lo for a in t) if lo else t

    def bribe_ok(self, p, bl, cl):
        if self.allowed is not None and p not in self.allowed:
            return False
        return can_bribe(self.suffix[p][0] or 0, bl, cl)

    def bribe_targets(self, p, t):
        if self.briber_ballots is None:
            return self.moves
        allowed = set(self.briber_ballots(p, t))
        return [(b, c) for b, c in self.moves_all() if b in allowed]

    def reveals(self, p, t):
        if self.adversary_ballots is None:
            return self.moves
        allowed = set(self.adversary_ballots(p, t))
        return [(b, c) for b, c in self.moves_all() if b in allowed]

    def moves_all(self):
        system, m = self.obs.system, self.m
        return [(b, system.contribution(b, m)) for b in self.ballots]

    # -- game value -------------------------------------------------------------

    def value(self, p, t, bl, cl):
        """Value before voter ``p`` (p >= 1) reveals, tally ``t`` of all cast votes."""
        if p == self.n:
            return self.goal(t)
        t = self.norm(t)
        if bl is not None:
            bl = min(bl, self.tail_price[p])
        if cl is not None:
            cl = min(cl, self.n - p)
        memo = self.memo
        if memo is not None:
            key = (self.tails[p], t, bl, cl)
            hit = memo.get(key)
            if hit is not None:
                self.hits += 1
                return hit
        self.nodes += 1
        price, w = self.suffix[p]
        result = None
        if self.bribe_ok(p, bl, cl):
            nbl, ncl = spend(price or 0, bl, cl)
            for _, c in self.bribe_targets(p, t):
                if self.value(p + 1, self.add(t, c, w), nbl, ncl):
                    result = True
                    break
        if result is None:
            result = all(
                self.value(p + 1, self.add(t, c, w), bl, cl) for _, c in self.reveals(p, t)
            )
        if memo is not None:
            memo[key] = result
        return result

    def winning_move(self, p, t, revealed, bl, cl) -> Optional[Action]:
        """First winning move at voter ``p`` after it revealed ``revealed``."""
        system, m = self.obs.system, self.m
        price, w = self.suffix[p]
        if self.value(p + 1, self.add(t, system.contribution(revealed, m), w), bl, cl):
            return NO_BRIBE
        if self.bribe_ok(p, bl, cl):
            nbl, ncl = spend(price or 0, bl, cl)
            for b, c in self.bribe_targets(p, t):
                if self.value(p + 1, self.add(t, c, w), nbl, ncl):
                    return Action(True, b)
        return None


class _ProfileGame:
    """Full-profile evaluator; makes no assumption beyond a winner function."""

    def __init__(self, obs, *, allowed=None, memo=True):
        self.obs = obs
        self.m = obs.m
        self.suffix = obs.suffix
        self.n = len(self.suffix)
        self.ballots = obs.system.ballots(obs.m, cap=obs.m)
        self.past = obs.past_votes()
        self.allowed = allowed
        self.memo = {} if memo else None
        self.nodes = 0
        self.hits = 0

    def goal(self, profile):
        obs = self.obs
        votes = self.past + [(b, w) for b, w in profile]
        winners = obs.system.winners(self.m, votes)
        return goal_met(winners, obs.sigma, obs.d, obs.goal)

    def bribe_ok(self, p, bl, cl):
        if self.allowed is not None and p not in self.allowed:
            return False
        return can_bribe(self.suffix[p][0] or 0, bl, cl)

    def value(self, p, profile, bl, cl):
        if p == self.n:
            return self.goal(profile)
        memo = self.memo
        if memo is not None:
            key = (p, profile, bl, cl)
            hit = memo.get(key)
            if hit is not None:
                self.hits += 1
                return hit
        self.nodes += 1
        price, w = self.suffix[p]
        result = False
        if self.bribe_ok(p, bl, cl):
            nbl, ncl = spend(price or 0, bl, cl)
            result = any(self.value(p + 1, profile + ((b, w),), nbl, ncl) for b in self.ballots)
        if not result:
            result = all(self.value(p + 1, profile + ((r, w),), bl, cl) for r in self.ballots)
        if memo is not None:
            memo[key] = result
        return result

    def winning_move(self, p, profile, revealed, bl, cl):
        price, w = self.suffix[p]
        if self.value(p + 1, profile + ((revealed, w),), bl, cl):
            return NO_BRIBE
        if self.bribe_ok(p, bl, cl):
            nbl, ncl = spend(price or 0, bl, cl)
            for b in self.ballots:
                if self.value(p + 1, profile + ((b, w),), nbl, ncl):
                    return Action(True, b)
        return None


def _uses_tally(obs, generic):
    return not generic and hasattr(obs.system, "contribution")


def _root(obs, game, generic_path):
    bl, cl = remaining_resources(obs)
    if generic_path:
        start = ()
    else:
        start = obs.system.scores(obs.m, obs.past_votes())
    return game.winning_move(0, start, obs.current.ballot, bl, cl)


def solve_exact(
    obs: Obs,
    caps: Caps = DEFAULT_CAPS,
    *,
    memo: bool = True,
    generic: bool = False,
    cache: Optional[GameCache] = None,
) -> Decision:
    """Decide the instance by full game-tree search.

    ``generic=True`` forces the full-profile evaluator; ``memo=False``
    disables memoisation; ``cache`` shares memo entries across calls.
    """
    check_caps(obs, caps)
    generic_path = not _uses_tally(obs, generic)
    if generic_path:
        game = _ProfileGame(obs, memo=memo)
        algorithm = "oracle-generic"
    else:
        game = _TallyGame(obs, memo=memo, cache=cache)
        algorithm = "oracle"
    if not memo:
        algorithm += "-nomemo"
    action = _root(obs, game, generic_path)
    return Decision(
        answer=action is not None,
        action=action,
        algorithm=algorithm,
        stats={"nodes": game.nodes, "memo_hits": game.hits},
    )


def value_with_restriction(
    obs: Obs,
    allowed_bribe_positions,
    caps: Caps = DEFAULT_CAPS,
    *,
    briber_ballots: Optional[BallotFilter] = None,
    adversary_ballots: Optional[BallotFilter] = None,
    memo: bool = True,
    generic: bool = False,
) -> bool:
    """Game value when the briber may only bribe at the listed suffix positions.

    Position 0 is ``u``.  ``None`` allows every position.  The optional
    ballot filters map ``(position, tally)`` to the ballots the briber may
    bribe to / the adversary may reveal at that position (tally evaluator
    only; position 0's revealed ballot is always ``u``'s own).
    """
    check_caps(obs, caps)
    allowed = None if allowed_bribe_positions is None else frozenset(allowed_bribe_positions)
    generic_path = not _uses_tally(obs, generic)
    if generic_path:
        if briber_ballots is not None or adversary_ballots is not None:
            raise ValueError("ballot filters need the tally evaluator")
        game = _ProfileGame(obs, allowed=allowed, memo=memo)
    else:
        game = _TallyGame(
            obs,
            allowed=allowed,
            briber_ballots=briber_ballots,
            adversary_ballots=adversary_ballots,
            memo=memo,
        )
    return _root(obs, game, generic_path) is not None


@dataclass
class PolicyNode:
    position: int
    voter: str
    revealed: tuple
    move: Action
    children: list = field(default_factory=list)
    winners: Optional[frozenset] = None

    def leaves(self):
        if not self.children:
            yield self
        for child in self.children:
            yield from child.leaves()

    def to_dict(self, candidates=None):
        out = {
            "position": self.position,
            "voter": self.voter,
            "revealed": list(self.revealed),
            "move": {"bribe": self.move.bribe,
                     "ballot": None if self.move.ballot is None else list(self.move.ballot)},
        }
        if self.winners is not None:
            out["winners"] = sorted(self.winners) if candidates is None else [
                candidates[c] for c in sorted(self.winners)
            ]
        if self.children:
            out["children"] = [c.to_dict(candidates) for c in self.children]
        return out


def extract_policy(obs: Obs, depth_cap: Optional[int] = None, caps: Caps = DEFAULT_CAPS) -> PolicyNode:
    """Winning strategy tree: briber's move at every reachable revelation."""
    check_caps(obs, caps)
    n = 1 + len(obs.future)
    if depth_cap is None:
        depth_cap = caps.max_suffix
    if n > depth_cap:
        raise ResourceCapError(f"policy depth {n} exceeds cap {depth_cap}")
    game = _TallyGame(obs) if _uses_tally(obs, False) else None
    if game is None:
        raise ValidationError("system", "policy extraction needs a score-based system")
    names = [obs.current.name] + [v.name for v in obs.future]
    system, m = obs.system, obs.m

    def build(p, t, revealed, bl, cl):
        move = game.winning_move(p, t, revealed, bl, cl)
        if move is None:
            raise ValueError("no policy for losing position")
        price, w = game.suffix[p]
        cast = move.ballot if move.bribe else revealed
        t2 = game.add(t, system.contribution(cast, m), w)
        if move.bribe:
            bl, cl = spend(price or 0, bl, cl)
        node = PolicyNode(p, names[p], revealed, move)
        if p + 1 == n:
            node.winners = winners_from_scores(t2)
        else:
            node.children = [build(p + 1, t2, r, bl, cl) for r in game.ballots]
        return node

    bl, cl = remaining_resources(obs)
    start = system.scores(m, obs.past_votes())
    return build(0, start, obs.current.ballot, bl, cl)
