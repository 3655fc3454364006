"""Paradigm presets and classification of configs back to paradigms.

A preset expands a handful of parameters into a full engine config; the
classifier inverts that, recognizing a config's paradigm from its
resolved sizes regardless of how the sizes were written (absolute or
percent). Anything that fits no paradigm is custom.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional

from pydantic import Field

from .errors import EngineError
from .model import (
    ElitismMode,
    ElitismSpec,
    EngineConfig,
    EpTournamentReducer,
    ObjectiveSense,
    SelectorSpec,
    SequentialReducer,
    SequentialSelector,
    SizeParam,
    TournamentReducer,
    TournamentSelector,
    WireModel,
    resolved_sizes,
    validate,
)


class Paradigm(str, Enum):
    GGA = "gga"
    SSGA = "ssga"
    ES_COMMA = "es-comma"
    ES_PLUS = "es-plus"
    EP = "ep"
    CUSTOM = "custom"


class PresetParams(WireModel):
    """Parameters a preset expands; unused fields are ignored.

    lambda applies to the evolution strategies, offspringCount to the
    steady-state GA, weakElite to the generational GA. The selector
    override applies to the GAs only; the strategies and EP define
    sequential selection as part of the paradigm.
    """

    pop_size: int = Field(ge=1)
    lambda_: Optional[int] = Field(default=None, alias="lambda", ge=1)
    offspring_count: int = Field(default=1, ge=1)
    selector: Optional[SelectorSpec] = None
    weak_elite: int = Field(default=0, ge=0)


class PresetRequest(WireModel):
    paradigm: Paradigm
    params: PresetParams


DEFAULT_SELECTOR = TournamentSelector(tournament_size=2)
EP_TOURNAMENT_SIZE = 6

_ELITISM_OFF = ElitismSpec(mode=ElitismMode.WEAK, elite_size=0)


def apply_preset(paradigm: Paradigm, params: PresetParams) -> EngineConfig:
    """Expand a paradigm into a full, feasible engine config.

    Presets emit maximize; flip the sense afterwards if needed (paradigm
    membership does not depend on it).
    """
    if paradigm is Paradigm.CUSTOM:
        raise EngineError("NOT_A_PRESET", "custom is not a preset")

    pop = params.pop_size
    base = dict(
        pop_size=pop,
        sense=ObjectiveSense.MAXIMIZE,
        fertile=SizeParam.absolute(pop),
        nep_reducer=SequentialReducer(),
        offspring_reducer=SequentialReducer(),
        final_reducer=SequentialReducer(),
        elitism=_ELITISM_OFF,
    )

    if paradigm is Paradigm.GGA:
        if params.weak_elite > pop:
            raise EngineError(
                "INFEASIBLE_PRESET",
                f"weak elite {params.weak_elite} exceeds population {pop}",
            )
        return EngineConfig(
            **base | dict(
                offspring_size=SizeParam.absolute(pop),
                parent_selector=params.selector or DEFAULT_SELECTOR,
                reduced_nep_size=SizeParam.absolute(0),
                reduced_offspring_size=SizeParam.absolute(pop),
                elitism=ElitismSpec(
                    mode=ElitismMode.WEAK, elite_size=params.weak_elite
                ),
            )
        )

    if paradigm is Paradigm.SSGA:
        count = params.offspring_count
        if not 1 <= count < pop:
            raise EngineError(
                "INFEASIBLE_PRESET",
                f"steady state needs 1 <= offspring < population, "
                f"got {count} of {pop}",
            )
        return EngineConfig(
            **base | dict(
                offspring_size=SizeParam.absolute(count),
                parent_selector=params.selector or DEFAULT_SELECTOR,
                nep_reducer=TournamentReducer(tournament_size=2),
                reduced_nep_size=SizeParam.absolute(pop - count),
                reduced_offspring_size=SizeParam.absolute(count),
            )
        )

    if paradigm in (Paradigm.ES_COMMA, Paradigm.ES_PLUS):
        lam = params.lambda_
        if lam is None:
            raise EngineError("INFEASIBLE_PRESET", "strategies need lambda")
        if paradigm is Paradigm.ES_COMMA and lam < pop:
            raise EngineError(
                "INFEASIBLE_PRESET",
                f"comma strategy needs lambda >= population, got {lam} < {pop}",
            )
        kept_parents = pop if paradigm is Paradigm.ES_PLUS else 0
        return EngineConfig(
            **base | dict(
                offspring_size=SizeParam.absolute(lam),
                parent_selector=SequentialSelector(),
                reduced_nep_size=SizeParam.absolute(kept_parents),
                reduced_offspring_size=SizeParam.absolute(lam),
            )
        )

    # EP: everyone breeds once, parents and offspring meet in one
    # round-robin tournament over the doubled population
    return EngineConfig(
        **base | dict(
            offspring_size=SizeParam.absolute(pop),
            parent_selector=SequentialSelector(),
            reduced_nep_size=SizeParam.absolute(pop),
            reduced_offspring_size=SizeParam.absolute(pop),
            final_reducer=EpTournamentReducer(tournament_size=EP_TOURNAMENT_SIZE),
        )
    )


_TOURNAMENT_KINDS = frozenset(
    ("deterministic-tournament", "stochastic-tournament", "ep-tournament")
)


def classify(config: EngineConfig) -> Paradigm:
    """Name the paradigm a feasible config implements, else custom.

    Matching works on resolved sizes. The strategy shapes are checked
    first: a (P,P) comma strategy also satisfies the generational GA
    sizes, and the more specific shape (sequential selection and final
    reduction over the full population) wins the tie.
    """
    report = validate(config)
    if not report.feasible:
        raise EngineError(
            "INFEASIBLE_CONFIG",
            "; ".join(v.message for v in report.violations),
        )

    sizes = resolved_sizes(config)
    pop = config.pop_size
    elitism_off = config.elitism.elite_size == 0

    strategy_shape = (
        config.parent_selector.kind == "sequential"
        and sizes.fertile == pop
        and sizes.reduced_offspring == sizes.offspring
        and config.final_reducer.kind == "sequential"
        and elitism_off
    )
    if strategy_shape and sizes.reduced_nep == pop:
        return Paradigm.ES_PLUS
    if strategy_shape and sizes.reduced_nep == 0:
        return Paradigm.ES_COMMA

    if (
        sizes.offspring == pop
        and sizes.reduced_nep == 0
        and sizes.reduced_offspring == pop
        and (elitism_off or config.elitism.mode is ElitismMode.WEAK)
    ):
        return Paradigm.GGA

    if (
        sizes.offspring < pop
        and config.nep_reducer.kind in _TOURNAMENT_KINDS
        and sizes.reduced_nep == pop - sizes.offspring
        and sizes.reduced_offspring == sizes.offspring
        and elitism_off
    ):
        return Paradigm.SSGA

    if (
        sizes.offspring == pop
        and sizes.reduced_nep == pop
        and sizes.reduced_offspring == pop
        and config.final_reducer.kind == "ep-tournament"
        and elitism_off
    ):
        return Paradigm.EP

    return Paradigm.CUSTOM
