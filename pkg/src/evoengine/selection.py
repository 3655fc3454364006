"""Parent selection: pools, fertile truncation, and the selector family.

Selection works on (ref, fitness) pairs so it never touches genomes.
Repetition is allowed: the same member may be drawn any number of times.
All ties break toward the lower pool index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import EngineError
from .model import ObjectiveSense, SelectorSpec

_WEIGHT_KINDS = ("roulette-wheel", "linear-ranking", "random")


@dataclass(frozen=True)
class PoolMember:
    ref: Any
    fitness: float
    origin: str = "parent"


@dataclass(frozen=True)
class SelectionPool:
    members: tuple[PoolMember, ...]
    sense: ObjectiveSense

    def __len__(self) -> int:
        return len(self.members)


def make_pool(
    entries: Iterable[tuple[Any, float]],
    sense: ObjectiveSense,
    origin: str = "parent",
) -> SelectionPool:
    members = tuple(PoolMember(ref, fitness, origin) for ref, fitness in entries)
    return SelectionPool(members=members, sense=sense)


def best_first(pool: SelectionPool) -> list[int]:
    """Member indices ordered best to worst, ties toward the lower index."""
    return sorted(
        range(len(pool.members)),
        key=lambda i: (pool.sense.sort_key(pool.members[i].fitness), i),
    )


def fertile_subset(pool: SelectionPool, fertile_count: int) -> SelectionPool:
    """Truncate a population pool to its fertile_count best members.

    The result is ordered best to worst; selectors see only this subset.
    """
    if not pool.members:
        raise EngineError("EMPTY_POPULATION", "cannot take fertile subset of nothing")
    if not 1 <= fertile_count <= len(pool.members):
        raise ValueError(
            f"fertile count {fertile_count} outside [1, {len(pool.members)}]"
        )
    order = best_first(pool)[:fertile_count]
    return SelectionPool(
        members=tuple(pool.members[i] for i in order), sense=pool.sense
    )


def selection_weights(pool: SelectionPool, selector: SelectorSpec) -> list[float]:
    """Per-member selection probabilities for the weight-based selectors.

    Defined for roulette-wheel, linear-ranking, and random only; tournament
    and sequential selectors have no standalone weight vector.
    """
    if selector.kind not in _WEIGHT_KINDS:
        raise EngineError(
            "NOT_A_WEIGHT_SELECTOR",
            f"{selector.kind} selection has no per-member weight vector",
        )
    if not pool.members:
        raise EngineError("EMPTY_POOL", "cannot weight an empty pool")
    n = len(pool.members)
    if selector.kind == "random":
        return [1.0 / n] * n
    if selector.kind == "roulette-wheel":
        return _roulette_weights(pool, selector.pressure)
    return _ranking_weights(pool, selector.pressure)


def _roulette_weights(pool: SelectionPool, pressure: float) -> list[float]:
    # Shift raw fitness so best/worst weights sit at the exact ratio
    # `pressure`: score_i = gain_i - gain_min + delta with
    # delta = (gain_max - gain_min) / (pressure - 1).
    maximize = pool.sense is ObjectiveSense.MAXIMIZE
    gains = [m.fitness if maximize else -m.fitness for m in pool.members]
    g_min, g_max = min(gains), max(gains)
    n = len(gains)
    if g_max == g_min:
        return [1.0 / n] * n
    delta = (g_max - g_min) / (pressure - 1.0)
    scores = [g - g_min + delta for g in gains]
    total = sum(scores)
    return [s / total for s in scores]


def _ranking_weights(pool: SelectionPool, pressure: float) -> list[float]:
    # p(rank r) = (s - (2s - 2) * r / (n - 1)) / n with rank 0 the best;
    # at s = 2 the worst member gets exactly zero.
    n = len(pool.members)
    if n == 1:
        return [1.0]
    s = pressure
    weights = [0.0] * n
    for rank, idx in enumerate(best_first(pool)):
        weights[idx] = (s - (2.0 * s - 2.0) * rank / (n - 1)) / n
    return weights


def select_parents(
    pool: SelectionPool,
    selector: SelectorSpec,
    count: int,
    rng,
) -> list[Any]:
    """Draw count member refs from the pool, repetition allowed.

    Assumes selector parameters already passed feasibility validation.
    """
    if not pool.members:
        raise EngineError("EMPTY_POOL", "cannot select from an empty pool")
    if count < 0:
        raise ValueError(f"selection count must be >= 0, got {count}")
    if count == 0:
        return []

    members = pool.members
    n = len(members)

    if selector.kind in _WEIGHT_KINDS:
        weights = selection_weights(pool, selector)
        picks = rng.choices(range(n), weights=weights, k=count)
        return [members[i].ref for i in picks]

    if selector.kind == "sequential":
        order = best_first(pool)
        return [members[order[i % n]].ref for i in range(count)]

    key = lambda i: (pool.sense.sort_key(members[i].fitness), i)

    if selector.kind == "deterministic-tournament":
        size = selector.tournament_size
        picks = []
        for _ in range(count):
            entrants = [rng.randrange(n) for _ in range(size)]
            picks.append(min(entrants, key=key))
        return [members[i].ref for i in picks]

    if selector.kind == "stochastic-tournament":
        p = selector.probability
        picks = []
        for _ in range(count):
            a, b = rng.randrange(n), rng.randrange(n)
            better, worse = (a, b) if key(a) <= key(b) else (b, a)
            picks.append(better if rng.random() < p else worse)
        return [members[i].ref for i in picks]

    raise EngineError("UNKNOWN_SELECTOR", f"unhandled selector kind {selector.kind}")
