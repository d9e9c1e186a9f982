"""Pseudo-polynomial knapsack and subset-sum kernels."""

from __future__ import annotations

from typing import Optional, Sequence

from ..errors import ResourceCapError

DEFAULT_CELL_CAP = 10**6


def knapsack_max_weight(
    items: Sequence[tuple],
    budget: int,
    count_cap: Optional[int] = None,
    cell_cap: int = DEFAULT_CELL_CAP,
):
    """Best total weight of a subset with total price <= budget.

    ``items`` are ``(price, weight)`` pairs.  Returns ``(weight, indices)``
    where ``indices`` is the lexicographically smallest maximising subset
    (sorted index tuple).  Picking the earliest item that still admits a
    maximising completion, one item at a time, yields exactly that subset.
    """
    n = len(items)
    budget = min(budget, sum(p for p, _ in items))
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    counts = n if count_cap is None else min(count_cap, n)
    cells = (n + 1) * (budget + 1) * (counts + 1)
    if cells > cell_cap:
        raise ResourceCapError(f"knapsack table of {cells} cells exceeds cap {cell_cap}")

    # best[i][c][b]: max weight from items i.. using at most c items and price b.
    zero = [[0] * (budget + 1) for _ in range(counts + 1)]
    best = [None] * (n + 1)
    best[n] = zero
    for i in range(n - 1, -1, -1):
        price, weight = items[i]
        nxt = best[i + 1]
        cur = [row[:] for row in nxt]
        for c in range(1, counts + 1):
            prev = nxt[c - 1]
            row = cur[c]
            for b in range(price, budget + 1):
                cand = prev[b - price] + weight
                if cand > row[b]:
                    row[b] = cand
        best[i] = cur

    target = best[0][counts][budget]
    chosen = []
    c, b, need = counts, budget, target
    for i in range(n):
        if need == 0:
            break
        price, weight = items[i]
        if c >= 1 and price <= b and weight + best[i + 1][c - 1][b - price] == need:
            chosen.append(i)
            c, b, need = c - 1, b - price, need - weight
    return target, tuple(chosen)


def subset_sum_bits(weights: Sequence[int], cap: int = DEFAULT_CELL_CAP) -> int:
    """Reachable subset sums as an int bitset (bit s set iff s is reachable)."""
    total = sum(weights)
    if total > cap:
        raise ResourceCapError(f"subset-sum range {total} exceeds cap {cap}")
    bits = 1
    for w in weights:
        bits |= bits << w
    return bits


def subset_sums(weights: Sequence[int], cap: int = DEFAULT_CELL_CAP) -> frozenset:
    bits = subset_sum_bits(weights, cap)
    return frozenset(s for s in range(bits.bit_length()) if bits >> s & 1)


def any_in_window(bits: int, lo: int, hi: int) -> bool:
    """True iff some reachable sum lies in ``[lo, hi]``."""
    lo = max(lo, 0)
    if hi < lo:
        return False
    width = hi - lo + 1
    return bool((bits >> lo) & ((1 << width) - 1))
