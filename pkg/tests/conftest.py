"""Shared builders for small hand-written instances."""

from online_bribery.elections import APPROVAL, VotingSystem
from online_bribery.obs import CurrentVoter, FutureVoter, Obs, PastVoter


def ballot(system, cands, text):
    """``"bac"`` -> order ballot (1, 0, 2); ``"101"`` -> approval ballot."""
    if system.kind == APPROVAL:
        return tuple(int(ch) for ch in text)
    return tuple(cands.index(ch) for ch in text)


def build(system, cands="ab", *, u, past=(), future=(), sigma=None, d="a",
          goal="constructive", priced=False, weighted=False, k=0, fixed_count=None):
    """Build an :class:`Obs` from compact notation.

    ``past`` entries are ``(ballot, bribed, weight, price)`` with trailing
    items optional; ``u`` is ``ballot`` or ``(ballot, weight, price)``;
    ``future`` entries are ``(weight, price)``.
    """
    if isinstance(system, str):
        system = VotingSystem(system)
    cands = tuple(cands)
    sigma = tuple(sigma or cands)
    if isinstance(u, str):
        u = (u,)
    ub, uw, up = tuple(u) + (None, 1, None)[len(u):]
    past_voters = []
    for i, entry in enumerate(past):
        b, bribed, w, p = tuple(entry) + (None, False, 1, None)[len(entry):]
        past_voters.append(PastVoter(f"p{i + 1}", ballot(system, cands, b), bribed, w, p))
    future_voters = [FutureVoter(f"f{i + 1}", *entry) for i, entry in enumerate(future)]
    return Obs(
        system=system,
        candidates=cands,
        past=past_voters,
        current=CurrentVoter("u", ballot(system, cands, ub), uw, up),
        future=future_voters,
        sigma=tuple(cands.index(c) for c in sigma),
        d=cands.index(d),
        goal=goal,
        priced=priced,
        weighted=weighted,
        k=k,
        fixed_count=fixed_count,
    )


def random_obs(rng, system, m, *, priced=None, weighted=None, max_past=2, max_future=3,
               max_value=3, max_k=7, goal=None, fixed_count=None):
    """Draw a valid instance from ``rng`` (a ``random.Random``-like object)."""
    from online_bribery.elections import enumerate_ballots

    if isinstance(system, str):
        system = VotingSystem(system)
    priced = rng.choice([False, True]) if priced is None else priced
    weighted = rng.choice([False, True]) if weighted is None else weighted
    ballots = enumerate_ballots(system, m)
    price = (lambda: rng.randint(0, max_value)) if priced else (lambda: None)
    weight = (lambda: rng.randint(0, max_value)) if weighted else (lambda: 1)
    k = rng.randint(0, max_k)
    past, spent, count = [], 0, 0
    for i in range(rng.randint(0, max_past)):
        p = price()
        bribed = rng.random() < 0.4
        cost = (p if priced else 1) if bribed else 0
        if spent + cost > k or (bribed and fixed_count is not None and count >= fixed_count):
            bribed, cost = False, 0
        spent += cost
        count += bribed
        past.append(PastVoter(f"p{i + 1}", rng.choice(ballots), bribed, weight(), p))
    cands = tuple("abcdefgh"[:m])
    sigma = list(range(m))
    rng.shuffle(sigma)
    return Obs(
        system=system,
        candidates=cands,
        past=past,
        current=CurrentVoter("u", rng.choice(ballots), weight(), price()),
        future=[FutureVoter(f"f{i + 1}", weight(), price()) for i in range(rng.randint(0, max_future))],
        sigma=tuple(sigma),
        d=rng.randrange(m),
        goal=goal or rng.choice(["constructive", "destructive"]),
        priced=priced,
        weighted=weighted,
        k=k,
        fixed_count=fixed_count,
    )


# -- acceptance summary ------------------------------------------------------------

ACCEPTANCE_RESULTS = {}


def record(number, passed, detail):
    ACCEPTANCE_RESULTS[number] = (passed, detail)
    print(f"ACCEPTANCE {number}: {'PASS' if passed else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")
