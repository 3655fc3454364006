"""Generation step semantics, elitism, stopping rules, and full runs."""

import random
from collections import Counter

import pytest

from evoengine.engine import (
    GenerationStats,
    Individual,
    Population,
    RunConfig,
    StopReason,
    best_member,
    compute_stats,
    initialize,
    run,
    should_stop,
    step,
)
from evoengine.errors import EngineError
from evoengine.model import (
    ElitismMode,
    ElitismSpec,
    ObjectiveSense,
    SequentialSelector,
    SizeParam,
    to_wire,
)
from evoengine.problems import OneMaxSpec, SphereSpec, make_problem

from helpers import make_config

MAX = ObjectiveSense.MAXIMIZE
MIN = ObjectiveSense.MINIMIZE


def onemax_problem(dim=8, rate=0.1):
    return make_problem(OneMaxSpec(dimension=dim, bit_flip_rate=rate))


def sphere_problem(dim=3, sigma=0.3):
    return make_problem(SphereSpec(dimension=dim, bounds=(-5.0, 5.0), mutation_sigma=sigma))


def run_config(**overrides):
    fields = dict(
        seed=0,
        max_generations=10,
        crossover_probability=0.9,
        mutation_probability=1.0,
    )
    fields.update(overrides)
    return RunConfig(**fields)


def bit_population(bit_counts, dim=8, generation=0):
    """Population of OneMax genomes with the given numbers of ones."""
    problem = onemax_problem(dim)
    members = []
    for ones in bit_counts:
        genome = tuple([1] * ones + [0] * (dim - ones))
        members.append(Individual(genome, problem.evaluate(genome), generation))
    return Population(members=tuple(members), generation=generation)


# --- initialization ---------------------------------------------------------


def test_initialize_evaluates_generation_zero():
    config = make_config(pop_size=7)
    problem = onemax_problem()
    pop = initialize(config, problem, random.Random(1))
    assert len(pop) == 7 and pop.generation == 0
    for ind in pop.members:
        assert ind.birth_generation == 0
        assert ind.fitness == problem.evaluate(ind.genome)


# --- step -------------------------------------------------------------------


def test_step_size_generation_and_evaluations():
    config = make_config(pop_size=6, fertile=SizeParam.absolute(6),
                         offspring_size=SizeParam.absolute(9),
                         reduced_offspring_size=SizeParam.absolute(6))
    problem = onemax_problem()
    rng = random.Random(2)
    pop = initialize(config, problem, rng)
    new_pop, stats = step(pop, config, run_config(), problem, rng, prior_evaluations=6)
    assert len(new_pop) == 6
    assert new_pop.generation == 1
    assert stats.generation == 1
    assert stats.evaluations == 6 + 9
    for ind in new_pop.members:
        assert ind.birth_generation in (0, 1)


def test_step_without_variation_is_deterministic_truncation():
    # plus-style config, sequential everything, no crossover or mutation:
    # offspring duplicate the parents, the next population is the best
    # pop_size of the doubled multiset
    config = make_config(
        pop_size=3,
        fertile=SizeParam.absolute(3),
        offspring_size=SizeParam.absolute(3),
        parent_selector=SequentialSelector(),
        reduced_nep_size=SizeParam.absolute(3),
        reduced_offspring_size=SizeParam.absolute(3),
    )
    pop = bit_population([5, 2, 7])
    new_pop, _ = step(
        pop,
        config,
        run_config(crossover_probability=0.0, mutation_probability=0.0),
        onemax_problem(),
        random.Random(3),
    )
    assert sorted(ind.fitness for ind in new_pop.members) == [5.0, 7.0, 7.0]


def test_step_offspring_get_birth_generation():
    config = make_config(
        pop_size=4,
        fertile=SizeParam.absolute(4),
        offspring_size=SizeParam.absolute(4),
        reduced_offspring_size=SizeParam.absolute(4),
    )
    pop = bit_population([1, 2, 3, 4], generation=5)
    new_pop, stats = step(pop, config, run_config(), onemax_problem(), random.Random(4))
    assert new_pop.generation == 6 and stats.generation == 6
    # GGA: everyone is a fresh offspring
    assert all(ind.birth_generation == 6 for ind in new_pop.members)


def test_step_rejects_infeasible_config():
    config = make_config(reduced_offspring_size=SizeParam.absolute(3))
    pop = bit_population([1, 2, 3, 4, 5, 6, 7, 8, 1, 2])
    with pytest.raises(EngineError) as err:
        step(pop, config, run_config(), onemax_problem(), random.Random(5))
    assert err.value.code == "INFEASIBLE_CONFIG"


def test_step_rejects_wrong_population_size():
    config = make_config(pop_size=10)
    with pytest.raises(ValueError):
        step(bit_population([1, 2, 3]), config, run_config(), onemax_problem(), random.Random(6))


# --- elitism ----------------------------------------------------------------


def test_strong_elitism_copies_best_parents_first():
    # mutation always flips every bit, so offspring of good parents are bad
    # and only the reserved seats can carry the best genomes over
    problem = onemax_problem(dim=8, rate=1.0)
    config = make_config(
        pop_size=5,
        fertile=SizeParam.absolute(5),
        offspring_size=SizeParam.absolute(5),
        reduced_offspring_size=SizeParam.absolute(5),
        elitism=ElitismSpec(mode=ElitismMode.STRONG, elite_size=2),
    )
    pop = bit_population([6, 8, 3, 7, 1])
    new_pop, _ = step(
        pop,
        config,
        run_config(crossover_probability=0.0, mutation_probability=1.0),
        problem,
        random.Random(7),
    )
    assert [ind.fitness for ind in new_pop.members[:2]] == [8.0, 7.0]
    assert len(new_pop) == 5


def test_strong_elitism_keeps_elite_in_selection_pool():
    # fertile = 1 with sequential selection: every offspring descends from
    # the single best parent, which is also the elite member
    problem = onemax_problem(dim=4, rate=0.01)
    config = make_config(
        pop_size=3,
        fertile=SizeParam.absolute(1),
        offspring_size=SizeParam.absolute(3),
        parent_selector=SequentialSelector(),
        reduced_offspring_size=SizeParam.absolute(3),
        elitism=ElitismSpec(mode=ElitismMode.STRONG, elite_size=1),
    )
    pop = bit_population([4, 0, 0], dim=4)
    new_pop, _ = step(
        pop,
        config,
        run_config(crossover_probability=0.0, mutation_probability=0.0),
        problem,
        random.Random(8),
    )
    assert all(ind.fitness == 4.0 for ind in new_pop.members)


def test_weak_elitism_repairs_lost_ground():
    # all-flipping mutation makes every offspring strictly worse than the
    # best parent, so the repair must reinstate it
    problem = onemax_problem(dim=8, rate=1.0)
    config = make_config(
        pop_size=4,
        fertile=SizeParam.absolute(4),
        offspring_size=SizeParam.absolute(4),
        reduced_offspring_size=SizeParam.absolute(4),
        elitism=ElitismSpec(mode=ElitismMode.WEAK, elite_size=1),
    )
    pop = bit_population([7, 6, 5, 4])
    new_pop, _ = step(
        pop,
        config,
        run_config(crossover_probability=0.0, mutation_probability=1.0),
        problem,
        random.Random(9),
    )
    fits = [ind.fitness for ind in new_pop.members]
    assert max(fits) == 7.0
    assert fits.count(7.0) == 1  # one-for-one injection, elite_size = 1


def test_weak_elitism_stays_out_when_no_ground_lost():
    problem = onemax_problem(dim=8, rate=0.05)
    config = make_config(
        pop_size=4,
        fertile=SizeParam.absolute(4),
        offspring_size=SizeParam.absolute(4),
        parent_selector=SequentialSelector(),
        reduced_nep_size=SizeParam.absolute(4),
        reduced_offspring_size=SizeParam.absolute(4),
        elitism=ElitismSpec(mode=ElitismMode.WEAK, elite_size=2),
    )
    pop = bit_population([7, 6, 5, 4])
    # no variation: parents and copies compete, nothing is ever lost,
    # so the population is exactly the truncation of the doubled pool
    new_pop, _ = step(
        pop,
        config,
        run_config(crossover_probability=0.0, mutation_probability=0.0),
        problem,
        random.Random(10),
    )
    assert sorted(ind.fitness for ind in new_pop.members) == [6.0, 6.0, 7.0, 7.0]


def test_weak_repair_injects_each_qualifying_parent_once():
    # parents 7,7,6,5 flip to offspring 1,1,2,3: the three best parents all
    # beat the best newcomer (3) and fill the worst slots one for one
    problem = onemax_problem(dim=8, rate=1.0)
    config = make_config(
        pop_size=4,
        fertile=SizeParam.absolute(4),
        offspring_size=SizeParam.absolute(4),
        parent_selector=SequentialSelector(),
        reduced_offspring_size=SizeParam.absolute(4),
        elitism=ElitismSpec(mode=ElitismMode.WEAK, elite_size=3),
    )
    pop = bit_population([7, 7, 6, 5])
    new_pop, _ = step(
        pop,
        config,
        run_config(crossover_probability=0.0, mutation_probability=1.0),
        problem,
        random.Random(11),
    )
    fits = sorted((ind.fitness for ind in new_pop.members), reverse=True)
    assert fits == [7.0, 7.0, 6.0, 3.0]


# --- stopping rules ----------------------------------------------------------


def stats_list(bests, evaluations_step=10):
    return [
        GenerationStats(
            generation=i,
            best_fitness=b,
            mean_fitness=b,
            worst_fitness=b,
            evaluations=(i + 1) * evaluations_step,
        )
        for i, b in enumerate(bests)
    ]


def test_stop_target_reached():
    rc = run_config(target_fitness=50.0, max_generations=100)
    assert should_stop(stats_list([10.0, 50.0]), rc, MAX) is StopReason.TARGET_REACHED
    assert should_stop(stats_list([10.0, 49.9]), rc, MAX) is None
    rc_min = run_config(target_fitness=0.01, max_generations=100)
    assert should_stop(stats_list([1.0, 0.005]), rc_min, MIN) is StopReason.TARGET_REACHED


def test_stop_max_generations():
    rc = run_config(max_generations=3)
    assert should_stop(stats_list([1.0, 2.0, 3.0]), rc, MAX) is None  # gen 2 < 3
    assert should_stop(stats_list([1.0, 2.0, 3.0, 4.0]), rc, MAX) is StopReason.MAX_GENERATIONS


def test_stop_target_beats_max_generations():
    rc = run_config(target_fitness=4.0, max_generations=3)
    assert (
        should_stop(stats_list([1.0, 2.0, 3.0, 4.0]), rc, MAX)
        is StopReason.TARGET_REACHED
    )


def test_stop_stagnation_counts_from_last_improvement():
    rc = run_config(max_generations=100, stagnation_generations=2)
    assert should_stop(stats_list([5.0, 5.0]), rc, MAX) is None
    assert should_stop(stats_list([5.0, 5.0, 5.0]), rc, MAX) is StopReason.STAGNATION
    # an improvement resets the window
    assert should_stop(stats_list([5.0, 5.0, 6.0, 6.0]), rc, MAX) is None
    # falling below the best-so-far is not an improvement
    assert should_stop(stats_list([5.0, 6.0, 4.0, 4.0]), rc, MAX) is StopReason.STAGNATION


# --- full runs ---------------------------------------------------------------


def test_run_reaches_onemax_target():
    config = make_config(
        pop_size=20,
        fertile=SizeParam.absolute(20),
        offspring_size=SizeParam.absolute(20),
        reduced_offspring_size=SizeParam.absolute(20),
        elitism=ElitismSpec(mode=ElitismMode.WEAK, elite_size=1),
    )
    record = run(
        config,
        run_config(seed=5, max_generations=300, target_fitness=16.0,
                   crossover_probability=0.9, mutation_probability=1.0),
        onemax_problem(dim=16, rate=0.05),
    )
    assert record.stop_reason is StopReason.TARGET_REACHED
    assert record.best.fitness >= 16.0
    assert record.history[0].generation == 0
    assert record.history[-1].best_fitness >= 16.0


def test_run_stops_at_max_generations():
    record = run(
        make_config(),
        run_config(seed=1, max_generations=4),
        onemax_problem(),
    )
    assert record.stop_reason is StopReason.MAX_GENERATIONS
    assert [s.generation for s in record.history] == [0, 1, 2, 3, 4]
    assert record.history[-1].evaluations == 10 + 4 * 10


def test_run_stagnation_without_variation():
    config = make_config(
        pop_size=4,
        fertile=SizeParam.absolute(4),
        offspring_size=SizeParam.absolute(4),
        reduced_offspring_size=SizeParam.absolute(4),
    )
    record = run(
        config,
        run_config(seed=2, max_generations=50, stagnation_generations=5,
                   crossover_probability=0.0, mutation_probability=0.0),
        onemax_problem(),
    )
    assert record.stop_reason is StopReason.STAGNATION
    assert record.history[-1].generation == 5


def test_run_best_tracks_history_best():
    record = run(
        make_config(pop_size=12, fertile=SizeParam.absolute(12),
                    offspring_size=SizeParam.absolute(12),
                    reduced_offspring_size=SizeParam.absolute(12)),
        run_config(seed=3, max_generations=30),
        onemax_problem(dim=10, rate=0.1),
    )
    assert record.best.fitness == max(s.best_fitness for s in record.history)


def test_run_is_deterministic_per_seed():
    config = make_config()
    problem = onemax_problem()
    a = run(config, run_config(seed=77, max_generations=20), problem)
    b = run(config, run_config(seed=77, max_generations=20), problem)
    assert a.history == b.history
    assert a.best == b.best
    c = run(config, run_config(seed=78, max_generations=20), problem)
    assert c.history != a.history


def test_run_rejects_infeasible_config():
    config = make_config(fertile=SizeParam.absolute(0))
    with pytest.raises(EngineError) as err:
        run(config, run_config(), onemax_problem())
    assert err.value.code == "INFEASIBLE_CONFIG"


def test_run_on_generation_callback_sees_whole_history():
    seen = []
    record = run(
        make_config(),
        run_config(seed=4, max_generations=6),
        onemax_problem(),
        on_generation=seen.append,
    )
    assert seen == list(record.history)


# --- plus-selection oracle -----------------------------------------------


class RecordingProblem:
    """Wraps a problem and logs every fitness it hands out."""

    def __init__(self, inner):
        self.inner = inner
        self.log = []

    def init_genome(self, rng):
        return self.inner.init_genome(rng)

    def crossover(self, a, b, rng):
        return self.inner.crossover(a, b, rng)

    def mutate(self, genome, rng):
        return self.inner.mutate(genome, rng)

    def evaluate(self, genome):
        fitness = self.inner.evaluate(genome)
        self.log.append(fitness)
        return fitness


def plus_config(mu, lam):
    return make_config(
        pop_size=mu,
        sense=MIN,
        fertile=SizeParam.absolute(mu),
        offspring_size=SizeParam.absolute(lam),
        parent_selector=SequentialSelector(),
        reduced_nep_size=SizeParam.absolute(mu),
        reduced_offspring_size=SizeParam.absolute(lam),
    )


def test_plus_step_keeps_best_of_parents_and_offspring():
    rng_outer = random.Random(500)
    for trial in range(60):
        mu = rng_outer.randrange(1, 9)
        lam = rng_outer.randrange(1, 9)
        problem = RecordingProblem(sphere_problem())
        rng = random.Random(1000 + trial)
        pop = initialize(plus_config(mu, lam), problem, rng)
        parent_fits = [ind.fitness for ind in pop.members]
        problem.log.clear()
        new_pop, _ = step(
            pop, plus_config(mu, lam),
            run_config(crossover_probability=0.4, mutation_probability=0.9),
            problem, rng,
        )
        offspring_fits = list(problem.log)
        assert len(offspring_fits) == lam
        expected = sorted(parent_fits + offspring_fits)[:mu]
        got = sorted(ind.fitness for ind in new_pop.members)
        assert Counter(got) == Counter(expected), (mu, lam, trial)


# --- stats wire shape ---------------------------------------------------------


def test_stats_serialize_camel_case():
    pop = bit_population([3, 1, 2], dim=4)
    stats = compute_stats(pop, MAX, 42)
    assert to_wire(stats) == {
        "generation": 0,
        "bestFitness": 3.0,
        "meanFitness": 2.0,
        "worstFitness": 1.0,
        "evaluations": 42,
    }
    assert best_member(pop, MAX).fitness == 3.0
    assert best_member(pop, MIN).fitness == 1.0
