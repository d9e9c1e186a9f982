"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line, printed together at the end of the
pytest run (see ``conftest.pytest_terminal_summary``).  Running this file
directly prints the same lines without pytest.

The equivalence criteria (1-3) use the family files under
``families/acceptance``; see the README for why each is split into an
exhaustive unit-price/unit-weight family, an exhaustive empty-past slice
over all four price/weight variants, and a seeded random sample of the full
shape.
"""

import itertools
import random
import sys
import time
from collections import Counter
from pathlib import Path

import pytest
from conftest import random_obs, record

from online_bribery.elections import PLURALITY_SYSTEM, scoring
from online_bribery.harness import cli
from online_bribery.harness.check import cross_check
from online_bribery.harness.family import FamilySpec, Generation
from online_bribery.obs import Decision
from online_bribery.oracle import GameCache, solve_exact, value_with_restriction
from online_bribery.polysolve import solve_auto, solve_scoring, solve_veto3
from online_bribery.polysolve.kernels import knapsack_max_weight, subset_sums
from online_bribery.transforms import last_k_variant, to_priced, to_weighted

ACCEPTANCE = Path(__file__).resolve().parent.parent / "families" / "acceptance"


def load(name):
    return FamilySpec.from_json((ACCEPTANCE / f"{name}.json").read_text())


def check_families(names, a="oracle", b="fast"):
    """Cross-check over several family files; returns (summary, reports)."""
    started = time.perf_counter()
    reports = [cross_check(load(n), a, b) for n in names]
    instances = sum(r.instances for r in reports)
    mismatches = sum(len(r.mismatches) for r in reports)
    errors = sum(len(r.errors) for r in reports)
    filtered = sum(r.filtered for r in reports)
    summary = (f"{instances} instances ({filtered} filtered), {mismatches} mismatches, "
               f"{errors} errors, {time.perf_counter() - started:.0f}s")
    return summary, mismatches == 0 and errors == 0, reports


def equivalence(number, system):
    names = [f"{system}_unit", f"{system}_suffix", f"{system}_random"]
    summary, ok, reports = check_families(names)
    record(number, ok, f"oracle == fast, {system}: {summary}")
    return ok, reports


def test_criterion_1_plurality_equivalence():
    ok, _ = equivalence(1, "plurality")
    assert ok


def test_criterion_2_approval_equivalence():
    ok, _ = equivalence(2, "approval")
    assert ok


def test_criterion_3_veto_equivalence():
    summary, ok, _ = check_families(["veto_unit", "veto_suffix", "veto_random"])
    cases = Counter(solve_veto3(obs).algorithm for obs in Generation(load("veto_unit")))
    all_cases = {f"veto3-case{i}" for i in (1, 2, 3)} <= set(cases)
    record(3, ok and all_cases,
           f"oracle == fast, veto m=3: {summary}; cases {dict(sorted(cases.items()))}")
    assert ok and all_cases


def test_criterion_4_scoring_dichotomy():
    # (a) alpha_1 = alpha_m: constant answers.
    rng = random.Random(4)
    trivial = [((1, 1, 1), 3), ((2, 2), 2), ((0, 0, 0), 3), ((3,), 1), ((4, 4, 4), 3)]
    bad_a = 0
    for i in range(10_000):
        alpha, m = trivial[i % len(trivial)]
        obs = random_obs(rng, scoring(alpha), m, max_future=2)
        expected = obs.goal == "constructive"
        bad_a += solve_scoring(obs).answer != expected
        if i % 10 == 0:
            bad_a += solve_exact(obs).answer != expected
    # (b) alpha_2 = alpha_m: same answer as the induced Plurality instance.
    cache = GameCache()

    def induced_plurality(obs):
        return solve_exact(obs.with_(system=PLURALITY_SYSTEM), cache=cache)

    sum_b, ok_b, _ = check_families(["scoring_plurality_like"], "scoring", induced_plurality)
    # (c) general vectors: dispatcher against the independent full-profile oracle.
    sum_c, ok_c, _ = check_families(["scoring_general"], "scoring", "oracle-generic")
    ok = bad_a == 0 and ok_b and ok_c
    record(4, ok, f"(a) 10000 trivial-vector instances, {bad_a} wrong; "
                  f"(b) {sum_b}; (c) {sum_c}")
    assert ok


def test_criterion_5_last_k_bribing():
    def restricted(obs):
        return Decision(value_with_restriction(obs, last_k_variant(obs)), None, "last-k")

    summary, ok, _ = check_families(
        ["plurality_unit", "veto_unit", "approval_unit"], "oracle", restricted)
    record(5, ok, f"last count_left positions == unrestricted: {summary}")
    assert ok


def test_criterion_6_embeddings():
    cache = GameCache()

    def priced(obs):
        return solve_exact(to_priced(obs), cache=cache)

    def weighted(obs):
        return solve_exact(to_weighted(obs), cache=cache)

    units = ["plurality_unit", "veto_unit", "approval_unit"]
    sum_p, ok_p, _ = check_families(units, "oracle", priced)
    sum_w, ok_w, _ = check_families(units, "oracle", weighted)
    record(6, ok_p and ok_w, f"to_priced: {sum_p}; to_weighted: {sum_w}")
    assert ok_p and ok_w


def test_criterion_7_monotonicity():
    cache = GameCache()
    flips = checked = 0
    seen_goals = set()
    for obs in Generation(load("monotonicity")):
        more = obs.with_(k=obs.k + 1)
        for solve in (lambda o: solve_exact(o, cache=cache), solve_auto):
            if solve(obs).answer and not solve(more).answer:
                flips += 1
        seen_goals.add(obs.goal)
        checked += 1
    ok = flips == 0 and checked == 10_000 and len(seen_goals) == 2
    record(7, ok, f"{checked} sampled instances (oracle and auto), {flips} yes->no flips")
    assert ok


def test_criterion_8_trivial_anchors():
    bad = checked = 0
    for obs in Generation(load("anchors")):
        low = obs.with_(goal="constructive", d=obs.sigma[-1])
        high = obs.with_(goal="destructive", d=obs.sigma[0])
        for solve in (solve_exact, solve_auto):
            bad += not solve(low).answer
            bad += solve(high).answer
        checked += 2
    ok = bad == 0
    record(8, ok, f"{checked} anchored instances (oracle and auto), {bad} wrong")
    assert ok


def _brute_knapsack(items, budget, count_cap):
    best, witness = 0, ()
    for r in range(len(items) + 1):
        if count_cap is not None and r > count_cap:
            break
        for subset in itertools.combinations(range(len(items)), r):
            if sum(items[i][0] for i in subset) <= budget:
                w = sum(items[i][1] for i in subset)
                if w > best or (w == best and subset < witness):
                    best, witness = w, subset
    return best, witness


def _brute_sums_from_counts(counts):
    """Subset sums of the multiset with ``counts[v]`` copies of value v."""
    ranges = [range(c + 1) for c in counts]
    return {sum(v * n for v, n in enumerate(pick)) for pick in itertools.product(*ranges)}


def test_criterion_9_kernels():
    values = range(7)
    # subset_sums: every multiset of at most 12 values in 0..6.
    bad_sums = multisets = 0
    for size in range(13):
        for combo in itertools.combinations_with_replacement(values, size):
            counts = [combo.count(v) for v in values]
            bad_sums += subset_sums(list(combo)) != _brute_sums_from_counts(counts)
            multisets += 1
    # knapsack: every list of up to 2 items, all budgets and count caps ...
    pairs = list(itertools.product(values, values))
    bad_knap = lists = 0
    for n in range(3):
        for items in itertools.product(pairs, repeat=n):
            for budget in range(0, 13):
                for cap in (None, 0, 1):
                    bad_knap += knapsack_max_weight(items, budget, cap) != _brute_knapsack(items, budget, cap)
            lists += 1
    # ... and 3000 seeded random lists of length up to 12.
    rng = random.Random(9)
    for _ in range(3000):
        items = [(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(rng.randint(3, 12))]
        budget = rng.randint(0, 40)
        cap = rng.choice([None, rng.randint(0, 12)])
        bad_knap += knapsack_max_weight(items, budget, cap) != _brute_knapsack(items, budget, cap)
        lists += 1
    ok = bad_sums == 0 and bad_knap == 0
    record(9, ok, f"subset_sums: {multisets} multisets, {bad_sums} wrong; "
                  f"knapsack: {lists} item lists, {bad_knap} wrong")
    assert ok


def test_criterion_10_determinism(tmp_path):
    family = str(ACCEPTANCE / "determinism.json")
    outs = []
    for i, extra in enumerate([[], [], ["--workers", "2"]]):
        out = tmp_path / f"report{i}.json"
        code = cli.main(["check", "--family", family, "--out", str(out)] + extra)
        outs.append((code, out.read_bytes()))
    ok = all(code == 0 for code, _ in outs) and len({data for _, data in outs}) == 1
    record(10, ok, f"3 check runs (1, 1, 2 workers) on a 20000-instance family, "
                   f"{len({data for _, data in outs})} distinct report(s)")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
