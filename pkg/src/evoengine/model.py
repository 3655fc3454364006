"""Engine configuration model, canonical JSON shape, and feasibility checks.

Every wire-facing model serializes with camelCase field names and rejects
unknown fields, so CLI files, the HTTP API, and the panel share one schema.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.alias_generators import to_camel


class WireModel(BaseModel):
    """Base for all JSON-facing models: camelCase aliases, strict fields."""

    model_config = ConfigDict(
        alias_generator=to_camel,
        populate_by_name=True,
        extra="forbid",
        frozen=True,
    )


def to_wire(model: BaseModel) -> dict:
    """Dump a model in its canonical JSON form (camelCase, plain values)."""
    return model.model_dump(by_alias=True, exclude_none=True, mode="json")


class ObjectiveSense(str, Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"

    def better(self, a: float, b: float) -> bool:
        """True when fitness a is strictly better than b under this sense."""
        return a > b if self is ObjectiveSense.MAXIMIZE else a < b

    def not_worse(self, a: float, b: float) -> bool:
        """True when fitness a is at least as good as b (ties count)."""
        return a >= b if self is ObjectiveSense.MAXIMIZE else a <= b

    def sort_key(self, fitness: float) -> float:
        """Key under which ascending order runs best to worst."""
        return -fitness if self is ObjectiveSense.MAXIMIZE else fitness


class SizeParam(WireModel):
    """A population size given either absolutely or as a percent of an
    upstream size. Percent values resolve with round-half-up."""

    mode: Literal["absolute", "percent"]
    value: Union[int, float] = Field(ge=0)

    @model_validator(mode="after")
    def _check_domain(self) -> "SizeParam":
        if self.mode == "absolute":
            if self.value != int(self.value):
                raise ValueError("absolute size must be a whole number")
        elif self.value > 100:
            raise ValueError("percent size must be at most 100")
        return self

    @classmethod
    def absolute(cls, count: int) -> "SizeParam":
        return cls(mode="absolute", value=count)

    @classmethod
    def percent(cls, share: float) -> "SizeParam":
        return cls(mode="percent", value=share)


def resolve_size(param: SizeParam, upstream: int) -> int:
    """Resolve a SizeParam against the size of the pool it draws from.

    Percent resolves to floor(value * upstream / 100 + 0.5), i.e. exact
    halves round up: 33% of 10 is 3, 25% of 2 is 1.
    """
    if upstream < 0:
        raise ValueError(f"upstream size must be >= 0, got {upstream}")
    if param.mode == "absolute":
        return int(param.value)
    return math.floor(param.value * upstream / 100.0 + 0.5)


# --- selector specs -------------------------------------------------------


class RouletteWheelSelector(WireModel):
    """Fitness-proportional selection with exact selection pressure.

    Raw fitness is shifted so that the best member's weight is exactly
    ``pressure`` times the worst member's. Requires pressure > 1.
    """

    kind: Literal["roulette-wheel"] = "roulette-wheel"
    pressure: float


class LinearRankingSelector(WireModel):
    """Rank-based weights p_i = (1/n) * (s - (2s-2) * rank_i / (n-1)).

    ``pressure`` is s in (1, 2]; at s=2 the worst member's weight is zero.
    """

    kind: Literal["linear-ranking"] = "linear-ranking"
    pressure: float


class TournamentSelector(WireModel):
    """Best of tournament_size members sampled with replacement."""

    kind: Literal["deterministic-tournament"] = "deterministic-tournament"
    tournament_size: int


class StochasticTournamentSelector(WireModel):
    """Two members sampled with replacement; the better wins with
    probability in (0.5, 1]."""

    kind: Literal["stochastic-tournament"] = "stochastic-tournament"
    probability: float


class RandomSelector(WireModel):
    kind: Literal["random"] = "random"


class SequentialSelector(WireModel):
    """Draw i returns the pool's i-th best, wrapping around."""

    kind: Literal["sequential"] = "sequential"


SelectorSpec = Annotated[
    Union[
        RouletteWheelSelector,
        LinearRankingSelector,
        TournamentSelector,
        StochasticTournamentSelector,
        RandomSelector,
        SequentialSelector,
    ],
    Field(discriminator="kind"),
]


# --- reducer specs --------------------------------------------------------


class SequentialReducer(WireModel):
    """Keep the target-size best members (sort and truncate)."""

    kind: Literal["sequential"] = "sequential"


class RandomReducer(WireModel):
    """Keep a uniformly random subset of the target size."""

    kind: Literal["random"] = "random"


class TournamentReducer(WireModel):
    """Repeatedly sample tournament_size distinct members and eliminate
    the worst until the target size remains."""

    kind: Literal["deterministic-tournament"] = "deterministic-tournament"
    tournament_size: int


class StochasticTournamentReducer(WireModel):
    """Repeatedly sample two distinct members and eliminate the worse
    with the given probability, otherwise the better."""

    kind: Literal["stochastic-tournament"] = "stochastic-tournament"
    probability: float


class EpTournamentReducer(WireModel):
    """Round-robin scoring: each member meets tournament_size uniformly
    chosen opponents and scores one point per opponent it is not worse
    than; the members with the best scores survive."""

    kind: Literal["ep-tournament"] = "ep-tournament"
    tournament_size: int


ReducerSpec = Annotated[
    Union[
        SequentialReducer,
        RandomReducer,
        TournamentReducer,
        StochasticTournamentReducer,
        EpTournamentReducer,
    ],
    Field(discriminator="kind"),
]


# --- elitism and the engine config ----------------------------------------


class ElitismMode(str, Enum):
    STRONG = "strong"
    WEAK = "weak"


class ElitismSpec(WireModel):
    """eliteSize = 0 disables elitism regardless of mode.

    Strong: the eliteSize best parents are copied into the next population
    before replacement and only the rest compete in the parent reduction.
    Weak: after replacement, if the new population's best is strictly worse
    than the best parent, the eliteSize best parents that beat it replace
    the worst newcomers one for one.
    """

    mode: ElitismMode
    elite_size: int = Field(ge=0)


class EngineConfig(WireModel):
    """Complete parameterization of one evolution engine."""

    pop_size: int = Field(ge=1)
    sense: ObjectiveSense
    fertile: SizeParam
    offspring_size: SizeParam
    parent_selector: SelectorSpec
    nep_reducer: ReducerSpec
    reduced_nep_size: SizeParam
    offspring_reducer: ReducerSpec
    reduced_offspring_size: SizeParam
    final_reducer: ReducerSpec
    elitism: ElitismSpec


def nep_size(config: EngineConfig) -> int:
    """Size of the non-elite parent slice that competes in replacement.

    Only active strong elitism withholds seats; weak elitism repairs after
    replacement, so every parent competes.
    """
    elite = config.elitism
    if elite.mode is ElitismMode.STRONG and elite.elite_size > 0:
        return config.pop_size - elite.elite_size
    return config.pop_size


@dataclass(frozen=True)
class ResolvedSizes:
    """All SizeParams of a config resolved to concrete counts."""

    fertile: int
    offspring: int
    elite_seats: int
    nep: int
    reduced_nep: int
    reduced_offspring: int

    @property
    def intermediate(self) -> int:
        return self.reduced_nep + self.reduced_offspring


def resolved_sizes(config: EngineConfig) -> ResolvedSizes:
    pop = config.pop_size
    elite = config.elitism
    seats = (
        elite.elite_size
        if elite.mode is ElitismMode.STRONG and elite.elite_size > 0
        else 0
    )
    nep = max(nep_size(config), 0)
    offspring = resolve_size(config.offspring_size, pop)
    return ResolvedSizes(
        fertile=resolve_size(config.fertile, pop),
        offspring=offspring,
        elite_seats=seats,
        nep=nep,
        reduced_nep=resolve_size(config.reduced_nep_size, nep),
        reduced_offspring=resolve_size(config.reduced_offspring_size, offspring),
    )


# --- feasibility ----------------------------------------------------------

FERTILE_OUT_OF_RANGE = "FERTILE_OUT_OF_RANGE"
OFFSPRING_TOO_SMALL = "OFFSPRING_TOO_SMALL"
ELITE_TOO_LARGE = "ELITE_TOO_LARGE"
REDUCED_NEP_OUT_OF_RANGE = "REDUCED_NEP_OUT_OF_RANGE"
REDUCED_OFFSPRING_OUT_OF_RANGE = "REDUCED_OFFSPRING_OUT_OF_RANGE"
INTERMED_TOO_SMALL = "INTERMED_TOO_SMALL"
PARAM_OUT_OF_RANGE = "PARAM_OUT_OF_RANGE"


class Violation(WireModel):
    code: str
    message: str
    offending_field: str


class ValidationReport(WireModel):
    feasible: bool
    violations: list[Violation] = Field(default_factory=list)


def _operator_violations(
    spec: Union[SelectorSpec, ReducerSpec], field: str
) -> list[Violation]:
    """Range checks for operator parameters, reported per config field."""
    kind = spec.kind
    found: list[Violation] = []
    if kind == "roulette-wheel" and not spec.pressure > 1:
        found.append(
            Violation(
                code=PARAM_OUT_OF_RANGE,
                message=f"roulette pressure must be > 1, got {spec.pressure}",
                offending_field=f"{field}.pressure",
            )
        )
    elif kind == "linear-ranking" and not 1 < spec.pressure <= 2:
        found.append(
            Violation(
                code=PARAM_OUT_OF_RANGE,
                message=f"ranking pressure must be in (1, 2], got {spec.pressure}",
                offending_field=f"{field}.pressure",
            )
        )
    elif kind in ("deterministic-tournament", "ep-tournament"):
        if spec.tournament_size < 2:
            found.append(
                Violation(
                    code=PARAM_OUT_OF_RANGE,
                    message=f"tournament size must be >= 2, got {spec.tournament_size}",
                    offending_field=f"{field}.tournamentSize",
                )
            )
    elif kind == "stochastic-tournament" and not 0.5 < spec.probability <= 1:
        found.append(
            Violation(
                code=PARAM_OUT_OF_RANGE,
                message=f"win probability must be in (0.5, 1], got {spec.probability}",
                offending_field=f"{field}.probability",
            )
        )
    return found


def validate(config: EngineConfig) -> ValidationReport:
    """Check a structurally well-formed config for feasibility.

    Reports every violated rule, not just the first. A feasible config is
    one the engine can step without arithmetic impossibilities: resolved
    sizes stay within their pools and the intermediate population can fill
    the seats replacement must hand back.
    """
    pop = config.pop_size
    sizes = resolved_sizes(config)
    violations: list[Violation] = []

    if not 1 <= sizes.fertile <= pop:
        violations.append(
            Violation(
                code=FERTILE_OUT_OF_RANGE,
                message=f"fertile size {sizes.fertile} outside [1, {pop}]",
                offending_field="fertile",
            )
        )
    if sizes.offspring < 1:
        violations.append(
            Violation(
                code=OFFSPRING_TOO_SMALL,
                message=f"offspring size {sizes.offspring} must be >= 1",
                offending_field="offspringSize",
            )
        )
    if config.elitism.elite_size > pop:
        violations.append(
            Violation(
                code=ELITE_TOO_LARGE,
                message=(
                    f"elite size {config.elitism.elite_size} exceeds "
                    f"population size {pop}"
                ),
                offending_field="elitism.eliteSize",
            )
        )
    if not 0 <= sizes.reduced_nep <= sizes.nep:
        violations.append(
            Violation(
                code=REDUCED_NEP_OUT_OF_RANGE,
                message=(
                    f"reduced non-elite parent size {sizes.reduced_nep} "
                    f"outside [0, {sizes.nep}]"
                ),
                offending_field="reducedNepSize",
            )
        )
    if not 0 <= sizes.reduced_offspring <= sizes.offspring:
        violations.append(
            Violation(
                code=REDUCED_OFFSPRING_OUT_OF_RANGE,
                message=(
                    f"reduced offspring size {sizes.reduced_offspring} "
                    f"outside [0, {sizes.offspring}]"
                ),
                offending_field="reducedOffspringSize",
            )
        )
    needed = pop - sizes.elite_seats
    if sizes.intermediate < needed:
        violations.append(
            Violation(
                code=INTERMED_TOO_SMALL,
                message=(
                    f"intermediate population {sizes.intermediate} cannot fill "
                    f"{needed} seats"
                ),
                offending_field="reducedOffspringSize",
            )
        )

    violations += _operator_violations(config.parent_selector, "parentSelector")
    violations += _operator_violations(config.nep_reducer, "nepReducer")
    violations += _operator_violations(config.offspring_reducer, "offspringReducer")
    violations += _operator_violations(config.final_reducer, "finalReducer")

    return ValidationReport(feasible=not violations, violations=violations)
