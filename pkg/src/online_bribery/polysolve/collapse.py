"""Plurality and Approval via score collapse.

Whatever happens, optimal play from ``u`` onward is concentrated: every
bribed vote goes to the best-placed desired candidate (Approval: approves
exactly the desired set) and every unbribed later vote goes to the
best-placed undesired candidate (Approval: approves exactly its
complement).  The game then reduces to one number, the largest total
weight the briber can still buy.
"""

from __future__ import annotations

from ..elections import APPROVAL, PLURALITY
from ..errors import NotApplicableError
from ..obs import (
    CONSTRUCTIVE,
    NO_BRIBE,
    Action,
    Decision,
    Obs,
    can_bribe,
    desired_set,
    remaining_resources,
    spend,
)
from .kernels import knapsack_max_weight


def max_bribed_weight(items, budget_left, count_left, weighted):
    """Largest total weight of a legal set of bribes among ``items``.

    ``items`` are ``(price, weight)`` pairs.  Returns ``(weight, indices)``.
    """
    n = len(items)
    if budget_left is None:
        # Unpriced: heaviest count_left voters (any count_left if unweighted).
        order = sorted(range(n), key=lambda i: (-items[i][1], i))
        chosen = tuple(sorted(order[: max(count_left, 0)]))
        return sum(items[i][1] for i in chosen), chosen
    if not weighted and count_left is None:
        # Priced, unit weights: as many as possible, cheapest first.
        order = sorted(range(n), key=lambda i: (items[i][0], i))
        chosen, spent = [], 0
        for i in order:
            if spent + items[i][0] > budget_left:
                break
            spent += items[i][0]
            chosen.append(i)
        chosen = tuple(sorted(chosen))
        return sum(items[i][1] for i in chosen), chosen
    return knapsack_max_weight(items, budget_left, count_left)


def _beats(lhs, rhs, goal):
    return lhs >= rhs if goal == CONSTRUCTIVE else lhs > rhs


def _best(scores, cands):
    # argmax, ties to the smallest candidate index
    return max(sorted(cands), key=lambda c: (scores[c], -c))


class _Collapse:
    def __init__(self, obs):
        self.obs = obs
        m = obs.m
        want = desired_set(obs.sigma, obs.d, obs.goal)
        self.want = sorted(want)
        self.other = [c for c in range(m) if c not in want]
        self.items = [(v.price, v.weight) for v in obs.future]
        self.future_weight = sum(w for _, w in self.items)
        self.cells = 0

    def after_u(self, fixed, budget_left, count_left):
        """Value once ``u``'s vote is cast and the tally is ``fixed``."""
        obs = self.obs
        if not self.other:
            return True
        if not self.want:
            return False
        bought, _ = max_bribed_weight(self.items, budget_left, count_left, obs.weighted)
        self.cells += len(self.items) + 1
        unbought = self.future_weight - bought
        best_want = max(fixed[c] for c in self.want)
        best_other = max(fixed[c] for c in self.other)
        return _beats(best_want + bought, best_other + unbought, obs.goal)

    def bribe_ballot(self, fixed):
        obs = self.obs
        if obs.system.kind == APPROVAL:
            return tuple(1 if c in self.want else 0 for c in range(obs.m))
        top = _best(fixed, self.want)
        return next(b for b in obs.system.ballots(obs.m, cap=obs.m) if b[0] == top)


def _solve_collapse(obs, algorithm):
    game = _Collapse(obs)
    system, m = obs.system, obs.m
    past = system.scores(m, obs.past_votes())
    budget_left, count_left = remaining_resources(obs)
    u = obs.current
    branches = 1

    def with_u(ballot):
        c = system.contribution(ballot, m)
        return tuple(s + u.weight * x for s, x in zip(past, c))

    if game.after_u(with_u(u.ballot), budget_left, count_left):
        action = NO_BRIBE
    else:
        action = None
        if game.want and can_bribe(u.price or 0, budget_left, count_left):
            branches += 1
            ballot = game.bribe_ballot(past)
            bl, cl = spend(u.price or 0, budget_left, count_left)
            if game.after_u(with_u(ballot), bl, cl):
                action = Action(True, ballot)
    return Decision(
        answer=action is not None,
        action=action,
        algorithm=algorithm,
        stats={"branches": branches, "dp_cells": game.cells},
    )


def _oracle_fallback(obs):
    from ..oracle import solve_exact

    decision = solve_exact(obs)
    return Decision(decision.answer, decision.action, "oracle-fallback", decision.stats)


def solve_plurality(obs: Obs) -> Decision:
    """Plurality (any of the four price/weight variants, both goals)."""
    if obs.system.kind != PLURALITY:
        raise NotApplicableError(f"solve_plurality got a {obs.system.kind} instance")
    if obs.fixed_count is not None:
        return _oracle_fallback(obs)
    return _solve_collapse(obs, "plurality-collapse")


def solve_approval(obs: Obs) -> Decision:
    """Approval (any of the four price/weight variants, both goals)."""
    if obs.system.kind != APPROVAL:
        raise NotApplicableError(f"solve_approval got a {obs.system.kind} instance")
    if obs.fixed_count is not None:
        return _oracle_fallback(obs)
    return _solve_collapse(obs, "approval-collapse")
