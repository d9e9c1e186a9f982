"""Dedicated solvers for Plurality, Approval, scoring rules and 3-candidate Veto."""

from ..elections import APPROVAL, PLURALITY, SCORING, VETO
from ..errors import NotApplicableError
from .collapse import max_bribed_weight, solve_approval, solve_plurality
from .kernels import knapsack_max_weight, subset_sums
from .scoring import solve_scoring
from .veto3 import solve_veto3


def fast_applicable(obs) -> bool:
    kind = getattr(obs.system, "kind", None)
    if kind == VETO:
        return obs.m == 3
    return kind in (PLURALITY, APPROVAL, SCORING)


def solve_fast(obs):
    """Route to the dedicated solver for the instance's system."""
    kind = getattr(obs.system, "kind", None)
    if kind == PLURALITY:
        return solve_plurality(obs)
    if kind == APPROVAL:
        return solve_approval(obs)
    if kind == SCORING:
        return solve_scoring(obs)
    if kind == VETO:
        return solve_veto3(obs)
    raise NotApplicableError(f"no dedicated solver for {kind!r}")


__all__ = [
    "fast_applicable",
    "knapsack_max_weight",
    "max_bribed_weight",
    "solve_approval",
    "solve_fast",
    "solve_plurality",
    "solve_scoring",
    "solve_veto3",
    "subset_sums",
]


def solve_auto(obs, caps=None):
    """Dedicated solver when one applies, otherwise the exact oracle."""
    from ..oracle import DEFAULT_CAPS, solve_exact

    if fast_applicable(obs):
        return solve_fast(obs)
    return solve_exact(obs, caps or DEFAULT_CAPS)
