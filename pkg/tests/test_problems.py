"""Problem operators: encodings, variation statistics, evaluation oracles."""

import math
import random

import pytest
from pydantic import TypeAdapter, ValidationError

from evoengine.problems import (
    OneMaxSpec,
    ProblemSpec,
    RastriginSpec,
    SphereSpec,
    make_problem,
)

adapter = TypeAdapter(ProblemSpec)


def sphere(dim=3, bounds=(-5.0, 5.0), sigma=0.3):
    return make_problem(SphereSpec(dimension=dim, bounds=bounds, mutation_sigma=sigma))


def onemax(dim=8, rate=0.1):
    return make_problem(OneMaxSpec(dimension=dim, bit_flip_rate=rate))


# --- schema ------------------------------------------------------------------


def test_specs_parse_from_camel_case_json():
    spec = adapter.validate_python(
        {"kind": "onemax", "dimension": 50, "bitFlipRate": 0.02}
    )
    assert spec == OneMaxSpec(dimension=50, bit_flip_rate=0.02)
    spec = adapter.validate_python(
        {"kind": "sphere", "dimension": 10, "bounds": [-5, 5], "mutationSigma": 0.3}
    )
    assert isinstance(spec, SphereSpec) and spec.bounds == (-5.0, 5.0)


def test_spec_domains():
    with pytest.raises(ValidationError):
        OneMaxSpec(dimension=0, bit_flip_rate=0.1)
    with pytest.raises(ValidationError):
        OneMaxSpec(dimension=5, bit_flip_rate=0.0)
    with pytest.raises(ValidationError):
        SphereSpec(dimension=5, bounds=(5.0, -5.0), mutation_sigma=0.3)
    with pytest.raises(ValidationError):
        SphereSpec(dimension=5, bounds=(-5.0, 5.0), mutation_sigma=0.0)
    with pytest.raises(ValidationError):
        adapter.validate_python({"kind": "knapsack", "dimension": 3})


# --- initialization ----------------------------------------------------------


def test_onemax_init_bits():
    genome = onemax(dim=64).init_genome(random.Random(1))
    assert len(genome) == 64
    assert set(genome) <= {0, 1}


def test_vector_init_within_bounds():
    problem = sphere(dim=40, bounds=(-2.0, 3.0))
    genome = problem.init_genome(random.Random(2))
    assert len(genome) == 40
    assert all(-2.0 <= x <= 3.0 for x in genome)


def test_init_deterministic_under_seed():
    assert onemax().init_genome(random.Random(3)) == onemax().init_genome(random.Random(3))
    assert sphere().init_genome(random.Random(3)) == sphere().init_genome(random.Random(3))


# --- evaluation oracles --------------------------------------------------------


def test_onemax_counts_ones():
    p = onemax(dim=4)
    assert p.evaluate((1, 0, 1, 1)) == 3.0
    assert p.evaluate((0, 0, 0, 0)) == 0.0


def test_sphere_sum_of_squares():
    assert sphere().evaluate((1.0, 2.0, 3.0)) == pytest.approx(14.0)
    assert sphere().evaluate((0.0, 0.0, 0.0)) == 0.0


def test_rastrigin_known_points():
    p = make_problem(RastriginSpec(dimension=2, bounds=(-5.12, 5.12), mutation_sigma=0.3))
    assert p.evaluate((0.0, 0.0)) == pytest.approx(0.0)
    # cos(2*pi*0.5) = -1: 10*2 + (0.25 + 10) + (0 - 10) = 20.25
    assert p.evaluate((0.5, 0.0)) == pytest.approx(20.25)
    assert p.evaluate((1.0, 0.0)) == pytest.approx(1.0)


# --- mutation ----------------------------------------------------------------


def test_onemax_mutation_flip_count_matches_rate():
    dim, rate, trials = 100, 0.1, 400
    p = onemax(dim=dim, rate=rate)
    rng = random.Random(5)
    base = tuple([0] * dim)
    flips = sum(sum(p.mutate(base, rng)) for _ in range(trials))
    mean = flips / trials
    sigma = math.sqrt(dim * rate * (1 - rate) / trials)
    assert abs(mean - dim * rate) <= 4 * sigma


def test_onemax_mutation_rate_one_flips_everything():
    p = onemax(dim=6, rate=1.0)
    assert p.mutate((0, 1, 0, 1, 0, 1), random.Random(6)) == (1, 0, 1, 0, 1, 0)


def test_vector_mutation_touches_one_coordinate_on_average():
    dim, trials = 10, 600
    p = sphere(dim=dim)
    rng = random.Random(7)
    base = tuple([0.0] * dim)
    touched = 0
    for _ in range(trials):
        touched += sum(1 for x in p.mutate(base, rng) if x != 0.0)
    mean = touched / trials
    sigma = math.sqrt(dim * (1 / dim) * (1 - 1 / dim) / trials)
    assert abs(mean - 1.0) <= 4 * sigma


def test_vector_mutation_is_centered():
    p = sphere(dim=5, sigma=0.5)
    rng = random.Random(8)
    base = tuple([1.0] * 5)
    moved = []
    for _ in range(4000):
        moved += [x - 1.0 for x in p.mutate(base, rng) if x != 1.0]
    mean = sum(moved) / len(moved)
    assert abs(mean) <= 4 * 0.5 / math.sqrt(len(moved))


def test_vector_mutation_respects_bounds():
    p = sphere(dim=4, bounds=(-1.0, 1.0), sigma=50.0)
    rng = random.Random(9)
    genome = tuple([0.9, -0.9, 0.0, 1.0])
    for _ in range(200):
        genome = p.mutate(genome, rng)
        assert all(-1.0 <= x <= 1.0 for x in genome)


# --- crossover ---------------------------------------------------------------


def test_onemax_crossover_is_one_point():
    p = onemax(dim=6)
    rng = random.Random(10)
    a, b = (0, 0, 0, 0, 0, 0), (1, 1, 1, 1, 1, 1)
    for _ in range(100):
        child = p.crossover(a, b, rng)
        ones = sum(child)
        assert 1 <= ones <= 5  # cut strictly inside the string
        assert child == (0,) * (6 - ones) + (1,) * ones


def test_onemax_crossover_single_bit_copies_first():
    p = onemax(dim=1)
    assert p.crossover((0,), (1,), random.Random(11)) == (0,)


def test_vector_crossover_mixes_coordinates_uniformly():
    p = sphere(dim=8)
    rng = random.Random(12)
    a, b = tuple([1.0] * 8), tuple([2.0] * 8)
    from_a = 0
    trials = 500
    for _ in range(trials):
        child = p.crossover(a, b, rng)
        assert set(child) <= {1.0, 2.0}
        from_a += sum(1 for x in child if x == 1.0)
    mean = from_a / (trials * 8)
    sigma = math.sqrt(0.25 / (trials * 8))
    assert abs(mean - 0.5) <= 4 * sigma
