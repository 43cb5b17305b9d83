"""Deterministic corpus of generated class members shared by the acceptance and pipeline tests."""

from __future__ import annotations

from functools import lru_cache

from holedecomp.graph import Graph
from holedecomp.oracle import GenerationTimeout, generate_class_member

STRATEGIES = ("constructive", "constructive", "twojoin", "glue", "rejection")


def _spec(seed: int) -> tuple[int, int, str]:
    delta = 2 + seed % 3
    n = 6 + (seed * 7) % 25
    strategy = STRATEGIES[seed % len(STRATEGIES)]
    if strategy == "rejection" and n > 14:
        strategy = "constructive"
    if strategy in ("twojoin", "glue") and delta < 3:
        delta = 3
    return delta, n, strategy


@lru_cache(maxsize=None)
def corpus(size: int = 200) -> tuple[tuple[int, str, Graph], ...]:
    """``size`` members as (delta, strategy, graph); strategies that time out fall back to constructive."""
    out = []
    for seed in range(size):
        delta, n, strategy = _spec(seed)
        try:
            g = generate_class_member(delta, n, seed, strategy, max_tries=400)
        except GenerationTimeout:
            strategy = "constructive"
            g = generate_class_member(delta, n, seed, strategy)
        out.append((delta, strategy, g))
    return tuple(out)
