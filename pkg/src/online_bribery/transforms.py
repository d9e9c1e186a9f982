"""Answer-preserving instance transforms.

``to_priced`` and ``to_weighted`` embed unpriced/unweighted instances into
the priced/weighted problems by filling in unit prices or weights.
``last_k_variant`` names the positions at which bribing suffices for
unpriced, unweighted instances: the last ``count_left`` voters from ``u`` on.

Transforms live in a registry so further reductions can be added under a
new name without touching callers.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .errors import NotApplicableError, ValidationError
from .obs import Obs, instance_digest, remaining_resources

EQUAL = "equal"
IMPLIES = "implies"


@dataclass(frozen=True)
class TransformReport:
    source_id: str
    transform: str
    target: Obs
    relation: str


TRANSFORMS: dict = {}


def register_transform(name: str, relation: str = EQUAL):
    def deco(fn: Callable[[Obs], Obs]):
        TRANSFORMS[name] = (fn, relation)
        return fn

    return deco


@register_transform("to_priced")
def to_priced(obs: Obs) -> Obs:
    """Every voter costs 1 and the bribe limit becomes the budget."""
    if obs.priced:
        raise ValidationError("priced", "instance is already priced")
    return replace(
        obs,
        priced=True,
        past=tuple(replace(v, price=1) for v in obs.past),
        current=replace(obs.current, price=1),
        future=tuple(replace(v, price=1) for v in obs.future),
    )


@register_transform("to_weighted")
def to_weighted(obs: Obs) -> Obs:
    if obs.weighted:
        raise ValidationError("weighted", "instance is already weighted")
    return replace(obs, weighted=True)


def apply_transform(name: str, obs: Obs) -> TransformReport:
    try:
        fn, relation = TRANSFORMS[name]
    except KeyError:
        raise ValidationError("name", f"unknown transform {name!r}") from None
    return TransformReport(instance_digest(obs), name, fn(obs), relation)


def last_k_variant(obs: Obs) -> frozenset:
    """Suffix positions (0 is ``u``) of the last ``count_left`` voters."""
    if obs.priced or obs.weighted:
        raise NotApplicableError("last-k bribing is only claimed for unpriced, unweighted instances")
    _, count_left = remaining_resources(obs)
    n = 1 + len(obs.future)
    return frozenset(range(max(n - count_left, 0), n))
