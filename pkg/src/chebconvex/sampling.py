"""Deterministic enumeration of ordered index tuples under a budget.

Contiguous windows catch local sign changes of continuous determinants
first, so they are always included; the rest of the budget is spent on the
exhaustive enumeration when it fits, otherwise on a seeded random sample.
"""

from __future__ import annotations

import itertools
import math
import random

DEFAULT_BUDGET = 50_000
DEFAULT_SEED = 0


def ordered_index_tuples(m: int, k: int, budget: int = DEFAULT_BUDGET,
                         seed: int = DEFAULT_SEED,
                         windows_only: bool = False) -> list[tuple[int, ...]]:
    """Strictly increasing k-tuples of indices drawn from range(m).

    Exhaustive (lexicographic) when C(m, k) <= budget; otherwise all
    contiguous windows followed by distinct seeded random tuples up to the
    budget. The result is deterministic for fixed (m, k, budget, seed).
    """
    if k < 1 or k > m:
        return []
    windows = [tuple(range(i, i + k)) for i in range(m - k + 1)]
    if windows_only:
        return windows
    total = math.comb(m, k)
    if total <= budget:
        return list(itertools.combinations(range(m), k))
    rng = random.Random(seed)
    seen = set(windows)
    out = list(windows)
    attempts = 0
    max_attempts = 20 * budget
    while len(out) < budget and attempts < max_attempts:
        attempts += 1
        t = tuple(sorted(rng.sample(range(m), k)))
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out
