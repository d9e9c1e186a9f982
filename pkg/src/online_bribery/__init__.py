"""Online bribery in sequential elections: exact game oracle and fast solvers."""

from .elections import (
    APPROVAL_SYSTEM,
    PLURALITY_SYSTEM,
    VETO_SYSTEM,
    VotingSystem,
    WeightedVote,
    classify_scoring_vector,
    enumerate_ballots,
    score_vector,
    scoring,
    winner_set,
)
from .errors import NotApplicableError, ResourceCapError, ValidationError
from .obs import (
    CONSTRUCTIVE,
    DESTRUCTIVE,
    Action,
    CurrentVoter,
    Decision,
    FutureVoter,
    Obs,
    PastVoter,
    goal_met,
    parse_instance,
    remaining_resources,
    serialize_instance,
    target_set,
)
from .oracle import Caps, GameCache, extract_policy, solve_exact, value_with_restriction

__version__ = "0.1.0"
