"""Time the exact oracle against the fast solvers as the suffix grows.

For each system and suffix length, draws seeded random priced+weighted
instances and reports mean microseconds per instance as CSV.  The oracle's
cost grows exponentially with the number of remaining voters; the fast
solvers stay flat (pseudo-polynomial in weights and prices).

    python3 scripts/bench_scaling.py --samples 200 --max-future 4
"""

import argparse
import csv
import random
import sys
import time

from online_bribery.elections import VotingSystem, enumerate_ballots
from online_bribery.obs import CurrentVoter, FutureVoter, Obs
from online_bribery.oracle import Caps, solve_exact
from online_bribery.polysolve import solve_fast


def draw(rng, kind, m, n_future):
    system = VotingSystem(kind)
    ballots = enumerate_ballots(system, m)
    return Obs(
        system=system,
        candidates=tuple("abcd"[:m]),
        past=(),
        current=CurrentVoter("u", rng.choice(ballots), rng.randint(1, 3), rng.randint(1, 3)),
        future=tuple(FutureVoter(f"f{i}", rng.randint(1, 3), rng.randint(1, 3))
                     for i in range(n_future)),
        sigma=tuple(range(m)),
        d=rng.randrange(m),
        goal=rng.choice(["constructive", "destructive"]),
        priced=True,
        weighted=True,
        k=rng.randint(0, 2 * n_future + 2),
    )


def timed(fn, instances):
    started = time.perf_counter()
    answers = [fn(obs).answer for obs in instances]
    return answers, 1e6 * (time.perf_counter() - started) / max(len(instances), 1)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--max-future", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    caps = Caps(max_suffix=args.max_future + 1)
    writer = csv.writer(sys.stdout)
    writer.writerow(["system", "m", "future", "oracle_us", "fast_us", "agree"])
    for kind, m in [("plurality", 3), ("approval", 3), ("veto", 3)]:
        for n in range(args.max_future + 1):
            rng = random.Random(f"{args.seed}-{kind}-{n}")
            instances = [draw(rng, kind, m, n) for _ in range(args.samples)]
            exact, oracle_us = timed(lambda o: solve_exact(o, caps), instances)
            fast, fast_us = timed(solve_fast, instances)
            writer.writerow([kind, m, n, f"{oracle_us:.0f}", f"{fast_us:.0f}", exact == fast])
            sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
