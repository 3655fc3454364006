"""Pool reduction and merging: the replacement side of the engine.

Reduction never repeats a member: each pool member survives at most once.
Elimination ties break by eliminating the higher-index member, so the
lower index is always the one favored to survive.

Randomness notes: reducing to the full pool size returns the pool
unchanged without consuming the rng, except for the sequential reducer,
which always sorts (its output order is part of its contract).
"""

from __future__ import annotations

from .errors import EngineError
from .model import ObjectiveSense, ReducerSpec
from .selection import SelectionPool, best_first


def reduce(
    pool: SelectionPool,
    reducer: ReducerSpec,
    target_size: int,
    rng,
) -> SelectionPool:
    """Shrink a pool to target_size members without repetition.

    The sequential reducer returns survivors ordered best to worst; every
    other reducer preserves the original pool order among survivors.
    """
    n = len(pool.members)
    if target_size < 0:
        raise ValueError(f"target size must be >= 0, got {target_size}")
    if target_size > n:
        raise EngineError(
            "TARGET_EXCEEDS_POOL",
            f"cannot keep {target_size} members of a pool of {n}",
        )

    if reducer.kind == "sequential":
        order = best_first(pool)[:target_size]
        return SelectionPool(
            members=tuple(pool.members[i] for i in order), sense=pool.sense
        )

    if target_size == n:
        return pool

    if reducer.kind == "random":
        keep = sorted(rng.sample(range(n), target_size))
        return _subset(pool, keep)

    if reducer.kind == "deterministic-tournament":
        return _eliminate(
            pool,
            target_size,
            lambda alive: rng.sample(alive, min(reducer.tournament_size, len(alive))),
            rng,
            certain=True,
            probability=1.0,
        )

    if reducer.kind == "stochastic-tournament":
        return _eliminate(
            pool,
            target_size,
            lambda alive: rng.sample(alive, min(2, len(alive))),
            rng,
            certain=False,
            probability=reducer.probability,
        )

    if reducer.kind == "ep-tournament":
        if target_size == 0:
            return SelectionPool(members=(), sense=pool.sense)
        scores = ep_scores(pool, reducer.tournament_size, rng)
        ranked = sorted(
            range(n),
            key=lambda i: (
                -scores[i],
                pool.sense.sort_key(pool.members[i].fitness),
                i,
            ),
        )
        return _subset(pool, sorted(ranked[:target_size]))

    raise EngineError("UNKNOWN_REDUCER", f"unhandled reducer kind {reducer.kind}")


def _subset(pool: SelectionPool, indices: list[int]) -> SelectionPool:
    return SelectionPool(
        members=tuple(pool.members[i] for i in indices), sense=pool.sense
    )


def _eliminate(
    pool: SelectionPool,
    target_size: int,
    draw,
    rng,
    certain: bool,
    probability: float,
) -> SelectionPool:
    """Run elimination tournaments until only target_size members remain."""
    key = lambda i: (pool.sense.sort_key(pool.members[i].fitness), i)
    alive = list(range(len(pool.members)))
    while len(alive) > target_size:
        entrants = draw(alive)
        if len(entrants) == 1:
            alive.remove(entrants[0])
            continue
        worst = max(entrants, key=key)
        if certain or rng.random() < probability:
            alive.remove(worst)
        else:
            alive.remove(min(entrants, key=key))
    return _subset(pool, alive)


def ep_scores(pool: SelectionPool, tournament_size: int, rng) -> list[int]:
    """Round-robin win counts: each member meets tournament_size opponents
    drawn uniformly from the other members (with replacement) and scores a
    point for every opponent it is not worse than."""
    n = len(pool.members)
    if n < 2:
        raise EngineError(
            "POOL_TOO_SMALL", f"scoring needs at least 2 members, got {n}"
        )
    if tournament_size < 1:
        raise ValueError(f"tournament size must be >= 1, got {tournament_size}")
    sense = pool.sense
    scores = []
    for i, member in enumerate(pool.members):
        wins = 0
        for _ in range(tournament_size):
            j = rng.randrange(n - 1)
            if j >= i:
                j += 1
            if sense.not_worse(member.fitness, pool.members[j].fitness):
                wins += 1
        scores.append(wins)
    return scores


def merge(parents: SelectionPool, offspring: SelectionPool) -> SelectionPool:
    """Concatenate reduced parents and reduced offspring, parents first.

    Member origin tags pass through untouched.
    """
    if parents.sense is not offspring.sense:
        raise ValueError("cannot merge pools with different objective senses")
    return SelectionPool(
        members=parents.members + offspring.members, sense=parents.sense
    )
