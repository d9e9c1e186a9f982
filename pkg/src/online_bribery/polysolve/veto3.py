"""Three-candidate Veto, by case on where ``d`` sits in the briber's order.

Relabel so the briber's order is ``a > b > c``.  Then

(i)   constructive ``d = c`` / destructive ``d = a``: the answer is fixed;
(ii)  constructive ``d = a`` / destructive ``d = b``: unbribed voters veto
      ``a`` in the worst case, bribed voters split their vetoes between
      ``b`` and ``c``; a DP over (resources, veto-b weight, veto-c weight)
      decides whether some legal bribed set and split works;
(iii) constructive ``d = b`` / destructive ``d = c``: bribed voters veto
      ``c``; the briber buys the most weight it can (heaviest voters,
      cheapest voters, or the earliest-index max-weight set), and the
      adversary then needs a subset-sum split of the unbribed weight
      between vetoes on ``a`` and ``b``.

Scores are handled as veto counts: a candidate's score is the total weight
minus the weight vetoing it, so fewer vetoes means a higher score.
"""

from __future__ import annotations

from ..elections import VETO
from ..errors import NotApplicableError, ResourceCapError
from ..obs import (
    CONSTRUCTIVE,
    NO_BRIBE,
    Action,
    Decision,
    Obs,
    can_bribe,
    remaining_resources,
    spend,
)
from .collapse import _oracle_fallback, max_bribed_weight
from .kernels import DEFAULT_CELL_CAP, any_in_window, subset_sum_bits


def _veto_ballot(obs, loser):
    return next(b for b in obs.system.ballots(3, cap=3) if b[-1] == loser)


class _Veto3:
    def __init__(self, obs, cell_cap=DEFAULT_CELL_CAP):
        self.obs = obs
        self.a, self.b, self.c = obs.sigma
        pos = obs.sigma.index(obs.d)
        constructive = obs.goal == CONSTRUCTIVE
        if (constructive and pos == 2) or (not constructive and pos == 0):
            self.case = 1
        elif (constructive and pos == 0) or (not constructive and pos == 1):
            self.case = 2
        else:
            self.case = 3
        self.strict = not constructive
        self.items = [(v.price, v.weight) for v in obs.future]
        self.future_weight = sum(w for _, w in self.items)
        self.cell_cap = cell_cap
        self.cells = 0

    def after_u(self, vetoes, budget_left, count_left):
        if self.case == 2:
            return self._split_dp(vetoes, budget_left, count_left)
        return self._heaviest_then_partition(vetoes, budget_left, count_left)

    def _split_dp(self, vetoes, budget_left, count_left):
        # Goal: a is a winner (or the unique winner) when unbribed voters veto a.
        obs = self.obs
        limit = budget_left if obs.priced else count_left
        best = {(0, 0): 0}  # (veto-b weight, veto-c weight) -> least resources used
        for price, w in self.items:
            cost = price if obs.priced else 1
            nxt = dict(best)
            for (y, x), used in best.items():
                if used + cost > limit:
                    continue
                for key in ((y + w, x), (y, x + w)):
                    if nxt.get(key, limit + 1) > used + cost:
                        nxt[key] = used + cost
            best = nxt
            self.cells += len(best)
            if len(best) > self.cell_cap:
                raise ResourceCapError("veto split DP exceeds cell cap")
        va0, vb0, vc0 = vetoes[self.a], vetoes[self.b], vetoes[self.c]
        for (y, x) in best:
            va = va0 + self.future_weight - y - x
            vb, vc = vb0 + y, vc0 + x
            if self.strict:
                if va < vb and va < vc:
                    return True
            elif va <= vb and va <= vc:
                return True
        return False

    def _heaviest_then_partition(self, vetoes, budget_left, count_left):
        # Goal: c does not win uniquely (constructive) / c does not win (destructive).
        bought, chosen = max_bribed_weight(
            self.items, budget_left, count_left, self.obs.weighted
        )
        chosen = set(chosen)
        rest = [w for i, (_, w) in enumerate(self.items) if i not in chosen]
        unbought = sum(rest)
        bits = subset_sum_bits(rest, self.cell_cap)
        self.cells += unbought + 1
        vc = vetoes[self.c] + bought
        va, vb = vetoes[self.a], vetoes[self.b]
        # x = unbought weight vetoing a, the rest vetoes b.
        if self.strict:
            lo, hi = vc - va, vb + unbought - vc
        else:
            lo, hi = vc - va + 1, vb + unbought - vc - 1
        return not any_in_window(bits, lo, hi)

    def bribe_targets(self):
        if self.case == 2:
            targets = [self.b, self.c]
        else:
            targets = [self.c]
        ballots = [_veto_ballot(self.obs, t) for t in targets]
        return sorted(ballots, key=self.obs.system.ballots(3, cap=3).index)


def solve_veto3(obs: Obs) -> Decision:
    if obs.system.kind != VETO or obs.m != 3:
        raise NotApplicableError("solve_veto3 needs a 3-candidate Veto instance")
    if obs.fixed_count is not None:
        return _oracle_fallback(obs)
    game = _Veto3(obs)
    if game.case == 1:
        answer = obs.goal == CONSTRUCTIVE
        return Decision(answer, NO_BRIBE if answer else None, "veto3-case1", {"dp_cells": 0})

    budget_left, count_left = remaining_resources(obs)
    u = obs.current
    past = [0, 0, 0]
    for v in obs.past:
        past[v.ballot[-1]] += v.weight

    def with_u(ballot):
        vetoes = list(past)
        vetoes[ballot[-1]] += u.weight
        return vetoes

    action = None
    if game.after_u(with_u(u.ballot), budget_left, count_left):
        action = NO_BRIBE
    elif can_bribe(u.price or 0, budget_left, count_left):
        bl, cl = spend(u.price or 0, budget_left, count_left)
        for ballot in game.bribe_targets():
            if game.after_u(with_u(ballot), bl, cl):
                action = Action(True, ballot)
                break
    return Decision(
        answer=action is not None,
        action=action,
        algorithm=f"veto3-case{game.case}",
        stats={"dp_cells": game.cells},
    )
