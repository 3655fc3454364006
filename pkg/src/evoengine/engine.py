"""The generation loop: initialize, step, stopping rules, full runs.

A step is selection (repetition allowed), variation, then three-stage
replacement: reduce the non-elite parents, reduce the offspring, merge
(parents first), and reduce the merged pool onto the seats left after
strong elitism. Weak elitism repairs the result afterwards.
"""

from __future__ import annotations

import random as random_module
from dataclasses import dataclass
from enum import Enum
from statistics import fmean
from typing import Callable, Optional

from pydantic import Field

from .errors import EngineError
from .model import (
    ElitismMode,
    EngineConfig,
    ObjectiveSense,
    WireModel,
    resolved_sizes,
    validate,
)
from .problems import Genome, Problem
from .replacement import merge, reduce
from .selection import best_first, fertile_subset, make_pool, select_parents


@dataclass(frozen=True)
class Individual:
    genome: Genome
    fitness: float
    birth_generation: int


@dataclass(frozen=True)
class Population:
    members: tuple[Individual, ...]
    generation: int

    def __len__(self) -> int:
        return len(self.members)


class RunConfig(WireModel):
    """Run-level knobs; the engine config stays purely structural."""

    seed: int
    max_generations: int = Field(ge=1)
    crossover_probability: float = Field(ge=0, le=1)
    mutation_probability: float = Field(ge=0, le=1)
    target_fitness: Optional[float] = None
    stagnation_generations: Optional[int] = Field(default=None, ge=1)


class StopReason(str, Enum):
    TARGET_REACHED = "target-reached"
    MAX_GENERATIONS = "max-generations"
    STAGNATION = "stagnation"


class GenerationStats(WireModel):
    generation: int
    best_fitness: float
    mean_fitness: float
    worst_fitness: float
    evaluations: int  # cumulative across the run


@dataclass(frozen=True)
class RunRecord:
    config: EngineConfig
    run_config: RunConfig
    history: tuple[GenerationStats, ...]
    stop_reason: StopReason
    best: Individual


def compute_stats(
    population: Population, sense: ObjectiveSense, evaluations: int
) -> GenerationStats:
    fits = [ind.fitness for ind in population.members]
    best, worst = (max(fits), min(fits))
    if sense is ObjectiveSense.MINIMIZE:
        best, worst = worst, best
    return GenerationStats(
        generation=population.generation,
        best_fitness=best,
        mean_fitness=fmean(fits),
        worst_fitness=worst,
        evaluations=evaluations,
    )


def best_member(population: Population, sense: ObjectiveSense) -> Individual:
    idx = min(
        range(len(population.members)),
        key=lambda i: (sense.sort_key(population.members[i].fitness), i),
    )
    return population.members[idx]


def initialize(config: EngineConfig, problem: Problem, rng) -> Population:
    members = []
    for _ in range(config.pop_size):
        genome = problem.init_genome(rng)
        members.append(Individual(genome, problem.evaluate(genome), 0))
    return Population(members=tuple(members), generation=0)


def step(
    parents: Population,
    config: EngineConfig,
    run_config: RunConfig,
    problem: Problem,
    rng,
    prior_evaluations: int = 0,
) -> tuple[Population, GenerationStats]:
    """Advance one generation; |result| always equals popSize."""
    report = validate(config)
    if not report.feasible:
        raise EngineError(
            "INFEASIBLE_CONFIG",
            "; ".join(v.message for v in report.violations),
        )
    if len(parents.members) != config.pop_size:
        raise ValueError(
            f"population size {len(parents.members)} does not match "
            f"configured {config.pop_size}"
        )

    sense = config.sense
    sizes = resolved_sizes(config)
    members = parents.members
    all_parents = make_pool(((ind, ind.fitness) for ind in members), sense, "parent")

    # strong elitism reserves seats before replacement; the elite still
    # takes part in selection below
    elite: list[Individual] = []
    nep_members = members
    if sizes.elite_seats:
        order = best_first(all_parents)
        elite_idx = set(order[: sizes.elite_seats])
        elite = [members[i] for i in order[: sizes.elite_seats]]
        nep_members = tuple(m for i, m in enumerate(members) if i not in elite_idx)

    fertile = fertile_subset(all_parents, sizes.fertile)
    selected = select_parents(fertile, config.parent_selector, sizes.offspring, rng)

    # sliding pairs: child i mixes selected[i] with its successor, so any
    # offspring count works, including one
    next_generation = parents.generation + 1
    count = len(selected)
    offspring = []
    for i, first in enumerate(selected):
        partner = selected[(i + 1) % count]
        if rng.random() < run_config.crossover_probability:
            genome = problem.crossover(first.genome, partner.genome, rng)
        else:
            genome = first.genome
        if rng.random() < run_config.mutation_probability:
            genome = problem.mutate(genome, rng)
        offspring.append(Individual(genome, problem.evaluate(genome), next_generation))

    reduced_parents = reduce(
        make_pool(((ind, ind.fitness) for ind in nep_members), sense, "parent"),
        config.nep_reducer,
        sizes.reduced_nep,
        rng,
    )
    reduced_offspring = reduce(
        make_pool(((ind, ind.fitness) for ind in offspring), sense, "offspring"),
        config.offspring_reducer,
        sizes.reduced_offspring,
        rng,
    )
    intermediate = merge(reduced_parents, reduced_offspring)
    survivors = reduce(
        intermediate, config.final_reducer, config.pop_size - sizes.elite_seats, rng
    )

    new_members = elite + [m.ref for m in survivors.members]
    if config.elitism.mode is ElitismMode.WEAK and config.elitism.elite_size > 0:
        new_members = _weak_repair(
            new_members, members, config.elitism.elite_size, sense
        )

    population = Population(members=tuple(new_members), generation=next_generation)
    stats = compute_stats(population, sense, prior_evaluations + len(offspring))
    return population, stats


def _weak_repair(
    new_members: list[Individual],
    parents: tuple[Individual, ...],
    elite_size: int,
    sense: ObjectiveSense,
) -> list[Individual]:
    """If replacement lost ground, put the qualifying best parents back.

    Fires only when the best newcomer is strictly worse than the best
    parent; then the elite_size best parents that strictly beat the
    (pre-repair) best newcomer replace the worst newcomers one for one.
    """
    best_new = min(ind.fitness for ind in new_members) \
        if sense is ObjectiveSense.MINIMIZE \
        else max(ind.fitness for ind in new_members)
    best_parent = min(ind.fitness for ind in parents) \
        if sense is ObjectiveSense.MINIMIZE \
        else max(ind.fitness for ind in parents)
    if not sense.better(best_parent, best_new):
        return new_members

    parent_order = sorted(
        range(len(parents)), key=lambda i: (sense.sort_key(parents[i].fitness), i)
    )
    injected = [
        parents[i]
        for i in parent_order[:elite_size]
        if sense.better(parents[i].fitness, best_new)
    ]
    worst_first = sorted(
        range(len(new_members)),
        key=lambda i: (sense.sort_key(new_members[i].fitness), i),
        reverse=True,
    )
    out = list(new_members)
    for slot, incoming in zip(worst_first, injected):
        out[slot] = incoming
    return out


def should_stop(
    history: list[GenerationStats],
    run_config: RunConfig,
    sense: ObjectiveSense,
) -> Optional[StopReason]:
    """First matching rule wins: target, then max generations, then
    stagnation (no strict improvement of the best-so-far for the
    configured number of generations)."""
    last = history[-1]
    target = run_config.target_fitness
    if target is not None and sense.not_worse(last.best_fitness, target):
        return StopReason.TARGET_REACHED
    if last.generation >= run_config.max_generations:
        return StopReason.MAX_GENERATIONS
    window = run_config.stagnation_generations
    if window is not None:
        best = history[0].best_fitness
        last_improvement = history[0].generation
        for entry in history[1:]:
            if sense.better(entry.best_fitness, best):
                best = entry.best_fitness
                last_improvement = entry.generation
        if last.generation - last_improvement >= window:
            return StopReason.STAGNATION
    return None


def run(
    config: EngineConfig,
    run_config: RunConfig,
    problem: Problem,
    on_generation: Optional[Callable[[GenerationStats], None]] = None,
) -> RunRecord:
    """Execute a full run from a single seed; fully deterministic."""
    report = validate(config)
    if not report.feasible:
        raise EngineError(
            "INFEASIBLE_CONFIG",
            "; ".join(v.message for v in report.violations),
        )
    rng = random_module.Random(run_config.seed)
    population = initialize(config, problem, rng)
    history = [compute_stats(population, config.sense, len(population.members))]
    best = best_member(population, config.sense)
    if on_generation is not None:
        on_generation(history[-1])

    while (reason := should_stop(history, run_config, config.sense)) is None:
        population, stats = step(
            population,
            config,
            run_config,
            problem,
            rng,
            prior_evaluations=history[-1].evaluations,
        )
        history.append(stats)
        candidate = best_member(population, config.sense)
        if config.sense.better(candidate.fitness, best.fitness):
            best = candidate
        if on_generation is not None:
            on_generation(stats)

    return RunRecord(
        config=config,
        run_config=run_config,
        history=tuple(history),
        stop_reason=reason,
        best=best,
    )
