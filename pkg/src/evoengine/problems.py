"""Benchmark problems: genome initialization, variation, and evaluation.

Genomes are immutable tuples (ints 0/1 for bitstrings, floats for
vectors), so sharing them between individuals is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Annotated, Literal, Union

from pydantic import Field, model_validator

from .model import WireModel

Genome = tuple


class OneMaxSpec(WireModel):
    """Count-the-ones bitstring problem; fitness = number of set bits."""

    kind: Literal["onemax"] = "onemax"
    dimension: int = Field(ge=1)
    bit_flip_rate: float = Field(gt=0, le=1)


class _VectorSpec(WireModel):
    dimension: int = Field(ge=1)
    bounds: tuple[float, float]
    mutation_sigma: float = Field(gt=0)

    @model_validator(mode="after")
    def _ordered_bounds(self):
        low, high = self.bounds
        if not low < high:
            raise ValueError(f"bounds must satisfy low < high, got {self.bounds}")
        return self


class SphereSpec(_VectorSpec):
    """Sum of squares; global minimum 0 at the origin."""

    kind: Literal["sphere"] = "sphere"


class RastriginSpec(_VectorSpec):
    """Multimodal benchmark 10*d + sum(x_i^2 - 10*cos(2*pi*x_i))."""

    kind: Literal["rastrigin"] = "rastrigin"


ProblemSpec = Annotated[
    Union[OneMaxSpec, SphereSpec, RastriginSpec],
    Field(discriminator="kind"),
]


@dataclass(frozen=True)
class Problem:
    """Bundles a problem spec with its operators for the engine."""

    spec: ProblemSpec

    def init_genome(self, rng) -> Genome:
        spec = self.spec
        if spec.kind == "onemax":
            return tuple(rng.randrange(2) for _ in range(spec.dimension))
        low, high = spec.bounds
        return tuple(rng.uniform(low, high) for _ in range(spec.dimension))

    def crossover(self, a: Genome, b: Genome, rng) -> Genome:
        spec = self.spec
        if spec.kind == "onemax":
            # one-point: a cut strictly inside the string
            if spec.dimension < 2:
                return a
            cut = rng.randrange(1, spec.dimension)
            return a[:cut] + b[cut:]
        # uniform: each coordinate from either parent with equal chance
        return tuple(x if rng.random() < 0.5 else y for x, y in zip(a, b))

    def mutate(self, genome: Genome, rng) -> Genome:
        spec = self.spec
        if spec.kind == "onemax":
            rate = spec.bit_flip_rate
            return tuple(bit ^ 1 if rng.random() < rate else bit for bit in genome)
        # perturb each coordinate with probability 1/dimension, clamped
        low, high = spec.bounds
        rate = 1.0 / spec.dimension
        out = []
        for x in genome:
            if rng.random() < rate:
                x = min(max(x + spec.mutation_sigma * rng.gauss(0.0, 1.0), low), high)
            out.append(x)
        return tuple(out)

    def evaluate(self, genome: Genome) -> float:
        spec = self.spec
        if spec.kind == "onemax":
            return float(sum(genome))
        if spec.kind == "sphere":
            return float(sum(x * x for x in genome))
        return 10.0 * spec.dimension + sum(
            x * x - 10.0 * math.cos(2.0 * math.pi * x) for x in genome
        )


def make_problem(spec: ProblemSpec) -> Problem:
    return Problem(spec)
