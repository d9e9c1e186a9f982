"""Scoring rules: dispatch on the dichotomy class of the scoring vector."""

from __future__ import annotations

from ..elections import PLURALITY_SYSTEM, SCORING, classify_scoring_vector
from ..errors import NotApplicableError
from ..obs import CONSTRUCTIVE, NO_BRIBE, Decision, Obs
from .collapse import _oracle_fallback, _solve_collapse


def solve_scoring(obs: Obs) -> Decision:
    if obs.system.kind != SCORING:
        raise NotApplicableError(f"solve_scoring got a {obs.system.kind} instance")
    cls = classify_scoring_vector(obs.system.alpha)
    if cls.trivial:
        # Every candidate always ties, so d itself is always a co-winner.
        answer = obs.goal == CONSTRUCTIVE
        return Decision(answer, NO_BRIBE if answer else None, "scoring-trivial", {})
    if cls.plurality_like and obs.fixed_count is None:
        # alpha = (t + bonus, t, ..., t): same winners as Plurality on the same ballots.
        induced = obs.with_(system=PLURALITY_SYSTEM)
        decision = _solve_collapse(induced, "scoring-plurality-like")
        return decision
    return _oracle_fallback(obs)
