"""Cross-validation of two solvers over an instance family."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import islice

from ..errors import NotApplicableError, ResourceCapError
from ..obs import decision_to_dict, instance_digest, instance_to_dict
from ..oracle import GameCache, solve_exact
from ..polysolve import (
    solve_approval,
    solve_auto,
    solve_fast,
    solve_plurality,
    solve_scoring,
    solve_veto3,
)
from .family import FamilySpec, Generation

FORMAT_VERSION = 1
CACHE_LIMIT = 2_000_000


def _cached_oracle():
    cache = GameCache()

    def run(obs):
        if len(cache) > CACHE_LIMIT:
            cache.tables.clear()
        decision = solve_exact(obs, cache=cache)
        # Node counts depend on what earlier instances left in the cache,
        # so they are dropped to keep reports independent of chunking.
        return replace(decision, stats={})

    return run


ALGORITHMS = {
    "oracle": _cached_oracle,
    "oracle-nocache": lambda: solve_exact,
    "oracle-nomemo": lambda: (lambda obs: solve_exact(obs, memo=False)),
    "oracle-generic": lambda: (lambda obs: solve_exact(obs, generic=True)),
    "fast": lambda: solve_fast,
    "auto": lambda: solve_auto,
    "plurality": lambda: solve_plurality,
    "approval": lambda: solve_approval,
    "scoring": lambda: solve_scoring,
    "veto3": lambda: solve_veto3,
}


def make_algorithm(name_or_fn):
    if callable(name_or_fn):
        return getattr(name_or_fn, "__name__", "custom"), name_or_fn
    try:
        return name_or_fn, ALGORITHMS[name_or_fn]()
    except KeyError:
        raise ValueError(f"unknown algorithm {name_or_fn!r}") from None


@dataclass
class CheckReport:
    family_name: str
    family_digest: str
    algorithms: tuple
    instances: int = 0
    filtered: int = 0
    mismatches: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self):
        return not self.mismatches

    def to_dict(self, timing=False):
        out = {
            "format_version": FORMAT_VERSION,
            "family": {"name": self.family_name, "digest": self.family_digest},
            "algorithms": list(self.algorithms),
            "instances": self.instances,
            "filtered": self.filtered,
            "passed": self.passed,
            "mismatch_count": len(self.mismatches),
            "mismatches": sorted(self.mismatches, key=lambda r: r["digest"]),
            "errors": sorted(self.errors, key=lambda r: (r["digest"], r["algorithm"])),
            "stats": {k: dict(sorted(v.items())) for k, v in sorted(self.stats.items())},
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing=False):
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"


def _tally(stats, decision):
    stats["yes" if decision.answer else "no"] += 1
    for key, val in decision.stats.items():
        if isinstance(val, int):
            stats[key] = stats.get(key, 0) + val


def _run_chunk(instances, algos, names):
    """Compare both algorithms on ``instances``; returns partial results."""
    stats = {n: {"yes": 0, "no": 0, "errors": 0} for n in names}
    mismatches, errors, count = [], [], 0
    for obs in instances:
        count += 1
        decisions = []
        for name, fn in zip(names, algos):
            try:
                decisions.append(fn(obs))
            except (ResourceCapError, NotApplicableError) as exc:
                stats[name]["errors"] += 1
                errors.append({"digest": instance_digest(obs), "algorithm": name,
                               "error": f"{type(exc).__name__}: {exc}"})
                decisions.append(None)
                continue
            _tally(stats[name], decisions[-1])
        a, b = decisions
        if a is not None and b is not None and a.answer != b.answer:
            mismatches.append({
                "digest": instance_digest(obs),
                "instance": instance_to_dict(obs),
                "a": decision_to_dict(obs, a),
                "b": decision_to_dict(obs, b),
            })
    return count, mismatches, errors, stats


def _worker(args):
    instances, algorithm_names, labels = args
    algos = [make_algorithm(n)[1] for n in algorithm_names]
    return _run_chunk(instances, algos, labels)


def _merge(report, part):
    count, mismatches, errors, stats = part
    report.instances += count
    report.mismatches.extend(mismatches)
    report.errors.extend(errors)
    for name, s in stats.items():
        agg = report.stats.setdefault(name, {})
        for key, val in s.items():
            agg[key] = agg.get(key, 0) + val


def cross_check(family: FamilySpec, algorithm_a="oracle", algorithm_b="fast",
                workers: int = 1, chunk: int = 2000) -> CheckReport:
    """Run both algorithms on every family member and collect disagreements.

    Solver cap errors are recorded per instance.  ``workers > 1`` needs
    algorithms given by name (they are rebuilt in each worker process).
    """
    started = time.perf_counter()
    name_a, fn_a = make_algorithm(algorithm_a)
    name_b, fn_b = make_algorithm(algorithm_b)
    if name_a == name_b:
        name_b += "#2"
    report = CheckReport(family.name, family.digest(), (name_a, name_b))
    generation = Generation(family)
    stream = iter(generation)
    if workers <= 1:
        _merge(report, _run_chunk(stream, [fn_a, fn_b], [name_a, name_b]))
    else:
        if callable(algorithm_a) or callable(algorithm_b):
            raise ValueError("parallel checks need algorithms given by name")
        jobs = iter(lambda: list(islice(stream, chunk)), [])
        with ProcessPoolExecutor(workers) as pool:
            args = ((c, (algorithm_a, algorithm_b), (name_a, name_b)) for c in jobs)
            for part in pool.map(_worker, args):
                _merge(report, part)
    report.filtered = generation.filtered
    report.wall_time = time.perf_counter() - started
    return report
