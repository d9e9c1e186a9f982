"""Voting rules, ballots and (weighted) winner sets.

Candidates are dense indices ``0..m-1``.  A ballot is a plain tuple of ints:
for order-based systems it is a permutation of the candidate indices, best
first; for Approval it is a 0/1 vector of length ``m``.  Which reading
applies is decided by the system, never by the ballot itself.

Every built-in system is score based, so a ballot is fully described (for
winner determination) by its per-candidate point vector, see
:meth:`VotingSystem.contribution`.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import ResourceCapError, ValidationError

PLURALITY = "plurality"
VETO = "veto"
APPROVAL = "approval"
SCORING = "scoring"
KINDS = (PLURALITY, VETO, APPROVAL, SCORING)

DEFAULT_ORDER_CAP = 4
DEFAULT_APPROVAL_CAP = 4

Ballot = tuple


class WeightedVote(NamedTuple):
    ballot: Ballot
    weight: int = 1


@dataclass(frozen=True)
class DichotomyClass:
    trivial: bool
    plurality_like: bool
    general: bool
    top_bonus: Optional[int] = None

    @property
    def name(self):
        if self.trivial:
            return "trivial"
        return "plurality_like" if self.plurality_like else "general"


def _check_alpha(alpha, path="system.alpha"):
    if len(alpha) < 1:
        raise ValidationError(path, "scoring vector must be nonempty")
    for i, a in enumerate(alpha):
        if isinstance(a, bool) or not isinstance(a, int):
            raise ValidationError(f"{path}[{i}]", "entries must be integers")
        if a < 0:
            raise ValidationError(f"{path}[{i}]", "entries must be nonnegative")
    for i in range(1, len(alpha)):
        if alpha[i] > alpha[i - 1]:
            raise ValidationError(path, f"not nonincreasing at position {i}")


def classify_scoring_vector(alpha: Sequence[int]) -> DichotomyClass:
    alpha = tuple(alpha)
    _check_alpha(alpha)
    if alpha[0] == alpha[-1]:
        return DichotomyClass(True, False, False)
    if len(alpha) >= 2 and alpha[1] == alpha[-1]:
        return DichotomyClass(False, True, False, top_bonus=alpha[0] - alpha[-1])
    return DichotomyClass(False, False, True)


@dataclass(frozen=True)
class VotingSystem:
    """One of Plurality, Veto, Approval or Scoring(alpha).

    Scoring vectors are tied to a fixed candidate count ``len(alpha)``.
    """

    kind: str
    alpha: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError("system.kind", f"unknown voting system {self.kind!r}")
        if self.kind == SCORING:
            if self.alpha is None:
                raise ValidationError("system.alpha", "scoring system needs alpha")
            object.__setattr__(self, "alpha", tuple(self.alpha))
            _check_alpha(self.alpha)
        elif self.alpha is not None:
            raise ValidationError("system.alpha", f"alpha given for {self.kind}")

    @property
    def is_approval(self):
        return self.kind == APPROVAL

    def check_m(self, m, path="candidates"):
        if m < 1:
            raise ValidationError(path, "need at least one candidate")
        if self.kind == SCORING and len(self.alpha) != m:
            raise ValidationError(
                "system.alpha", f"length {len(self.alpha)} does not match {m} candidates"
            )

    def validate_ballot(self, ballot, m, path="ballot"):
        if not isinstance(ballot, tuple):
            raise ValidationError(path, "ballot must be a tuple")
        if len(ballot) != m:
            raise ValidationError(path, f"expected length {m}, got {len(ballot)}")
        if self.is_approval:
            if any(b not in (0, 1) or isinstance(b, bool) for b in ballot):
                raise ValidationError(path, "approval entries must be 0 or 1")
        elif sorted(ballot) != list(range(m)) or any(isinstance(b, bool) for b in ballot):
            raise ValidationError(path, "not a permutation of the candidates")

    def contribution(self, ballot, m) -> tuple:
        """Points that one unit of weight on ``ballot`` gives each candidate."""
        if m <= 6:
            return _contribution_table(self, m)[ballot]
        self.validate_ballot(ballot, m)
        return _points(self, ballot, m)

    def ballots(self, m, cap=None) -> list:
        return enumerate_ballots(self, m, cap)

    def scores(self, m, votes) -> tuple:
        return score_vector(self, m, votes)

    def winners(self, m, votes) -> frozenset:
        return winner_set(self, m, votes)


PLURALITY_SYSTEM = VotingSystem(PLURALITY)
VETO_SYSTEM = VotingSystem(VETO)
APPROVAL_SYSTEM = VotingSystem(APPROVAL)


def scoring(alpha) -> VotingSystem:
    return VotingSystem(SCORING, tuple(alpha))


def equivalent_scoring_vector(system: VotingSystem, m: int) -> tuple:
    """Plurality and Veto written as scoring vectors over ``m`` candidates."""
    if system.kind == PLURALITY:
        return (1,) + (0,) * (m - 1)
    if system.kind == VETO:
        return (1,) * (m - 1) + (0,)
    if system.kind == SCORING:
        return system.alpha
    raise ValueError("approval has no scoring vector")


def _points(system, ballot, m):
    if system.kind == APPROVAL:
        return tuple(ballot)
    alpha = equivalent_scoring_vector(system, m)
    pts = [0] * m
    for pos, c in enumerate(ballot):
        pts[c] = alpha[pos]
    return tuple(pts)


@functools.lru_cache(maxsize=None)
def _contribution_table(system, m):
    system.check_m(m)
    return {b: _points(system, b, m) for b in enumerate_ballots(system, m, cap=m)}


def enumerate_ballots(system: VotingSystem, m: int, cap: Optional[int] = None) -> list:
    """All legal ballots: orders lexicographically, approval vectors numerically."""
    if m < 1:
        raise ValidationError("candidates", "need at least one candidate")
    if cap is None:
        cap = DEFAULT_APPROVAL_CAP if system.is_approval else DEFAULT_ORDER_CAP
    if m > cap:
        raise ResourceCapError(f"ballot enumeration for m={m} exceeds cap {cap}")
    if system.is_approval:
        return list(itertools.product((0, 1), repeat=m))
    return list(itertools.permutations(range(m)))


def score_vector(system: VotingSystem, m: int, votes: Iterable[WeightedVote]) -> tuple:
    system.check_m(m)
    table = _contribution_table(system, m) if m <= 6 else None
    totals = [0] * m
    for i, (ballot, weight) in enumerate(votes):
        if table is None or not isinstance(ballot, tuple) or ballot not in table:
            system.validate_ballot(ballot, m, path=f"votes[{i}].ballot")
            pts = _points(system, ballot, m)
        else:
            pts = table[ballot]
        if isinstance(weight, bool) or not isinstance(weight, int) or weight < 0:
            raise ValidationError(f"votes[{i}].weight", "weight must be a nonnegative integer")
        if weight:
            for c in range(m):
                totals[c] += weight * pts[c]
    return tuple(totals)


def winners_from_scores(scores: Sequence[int]) -> frozenset:
    if not scores:
        return frozenset()
    top = max(scores)
    return frozenset(c for c, s in enumerate(scores) if s == top)


def winner_set(system: VotingSystem, m: int, votes: Iterable[WeightedVote]) -> frozenset:
    return winners_from_scores(score_vector(system, m, votes))
