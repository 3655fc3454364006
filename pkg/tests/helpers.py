"""Shared builders for engine configs used across the test suite."""

from evoengine.model import (
    ElitismMode,
    ElitismSpec,
    EngineConfig,
    ObjectiveSense,
    SequentialReducer,
    SizeParam,
    TournamentSelector,
)


def make_config(**overrides) -> EngineConfig:
    """A small feasible generational config; override any field by name."""
    fields = dict(
        pop_size=10,
        sense=ObjectiveSense.MAXIMIZE,
        fertile=SizeParam.absolute(10),
        offspring_size=SizeParam.absolute(10),
        parent_selector=TournamentSelector(tournament_size=2),
        nep_reducer=SequentialReducer(),
        reduced_nep_size=SizeParam.absolute(0),
        offspring_reducer=SequentialReducer(),
        reduced_offspring_size=SizeParam.absolute(10),
        final_reducer=SequentialReducer(),
        elitism=ElitismSpec(mode=ElitismMode.WEAK, elite_size=0),
    )
    fields.update(overrides)
    return EngineConfig(**fields)
