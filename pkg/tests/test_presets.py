"""Preset expansion and paradigm recognition."""

import pytest

from evoengine.errors import EngineError
from evoengine.model import (
    ElitismMode,
    ElitismSpec,
    EngineConfig,
    EpTournamentReducer,
    RouletteWheelSelector,
    SequentialReducer,
    SequentialSelector,
    SizeParam,
    StochasticTournamentReducer,
    TournamentReducer,
    TournamentSelector,
    to_wire,
    validate,
)
from evoengine.presets import (
    Paradigm,
    PresetParams,
    apply_preset,
    classify,
)

from helpers import make_config
from test_model import fig1_config


def params(**kwargs):
    return PresetParams(**kwargs)


# --- expansion ----------------------------------------------------------------


def test_gga_preset_shape():
    config = apply_preset(Paradigm.GGA, params(pop_size=10))
    assert config.offspring_size == SizeParam.absolute(10)
    assert config.reduced_nep_size == SizeParam.absolute(0)
    assert config.reduced_offspring_size == SizeParam.absolute(10)
    assert config.parent_selector == TournamentSelector(tournament_size=2)
    assert config.final_reducer == SequentialReducer()
    assert config.elitism.elite_size == 0
    assert validate(config).feasible


def test_gga_preset_selector_and_weak_elite():
    config = apply_preset(
        Paradigm.GGA,
        params(pop_size=10, selector=RouletteWheelSelector(pressure=1.5), weak_elite=2),
    )
    assert config.parent_selector == RouletteWheelSelector(pressure=1.5)
    assert config.elitism == ElitismSpec(mode=ElitismMode.WEAK, elite_size=2)
    assert classify(config) is Paradigm.GGA


def test_ssga_preset_shape():
    config = apply_preset(Paradigm.SSGA, params(pop_size=10, offspring_count=2))
    assert config.offspring_size == SizeParam.absolute(2)
    assert config.nep_reducer == TournamentReducer(tournament_size=2)
    assert config.reduced_nep_size == SizeParam.absolute(8)
    assert config.reduced_offspring_size == SizeParam.absolute(2)
    assert validate(config).feasible


def test_es_presets_shape():
    comma = apply_preset(Paradigm.ES_COMMA, params(pop_size=5, lambda_=35))
    assert comma.parent_selector == SequentialSelector()
    assert comma.offspring_size == SizeParam.absolute(35)
    assert comma.reduced_nep_size == SizeParam.absolute(0)
    assert comma.reduced_offspring_size == SizeParam.absolute(35)
    assert validate(comma).feasible

    plus = apply_preset(Paradigm.ES_PLUS, params(pop_size=5, lambda_=35))
    assert plus.reduced_nep_size == SizeParam.absolute(5)
    assert validate(plus).feasible


def test_ep_preset_shape():
    config = apply_preset(Paradigm.EP, params(pop_size=8))
    assert config.offspring_size == SizeParam.absolute(8)
    assert config.reduced_nep_size == SizeParam.absolute(8)
    assert config.reduced_offspring_size == SizeParam.absolute(8)
    assert config.final_reducer == EpTournamentReducer(tournament_size=6)
    assert validate(config).feasible


def test_preset_errors():
    with pytest.raises(EngineError) as err:
        apply_preset(Paradigm.CUSTOM, params(pop_size=5))
    assert err.value.code == "NOT_A_PRESET"

    for bad in (
        lambda: apply_preset(Paradigm.ES_COMMA, params(pop_size=5)),
        lambda: apply_preset(Paradigm.ES_COMMA, params(pop_size=5, lambda_=4)),
        lambda: apply_preset(Paradigm.SSGA, params(pop_size=5, offspring_count=5)),
        lambda: apply_preset(Paradigm.GGA, params(pop_size=5, weak_elite=6)),
    ):
        with pytest.raises(EngineError) as err:
            bad()
        assert err.value.code == "INFEASIBLE_PRESET"


def test_params_parse_with_lambda_alias():
    parsed = PresetParams.model_validate({"popSize": 5, "lambda": 35})
    assert parsed.lambda_ == 35
    assert to_wire(parsed)["lambda"] == 35


# --- classification ------------------------------------------------------------


def test_round_trip_over_paradigm_domains():
    cases = []
    for pop in (2, 10, 100):
        cases.append((Paradigm.GGA, params(pop_size=pop)))
        cases.append((Paradigm.EP, params(pop_size=pop)))
        for lam in (pop, 2 * pop, 7 * pop):
            cases.append((Paradigm.ES_COMMA, params(pop_size=pop, lambda_=lam)))
            cases.append((Paradigm.ES_PLUS, params(pop_size=pop, lambda_=lam)))
        for count in (1, 2, pop - 1):
            if 1 <= count < pop:
                cases.append((Paradigm.SSGA, params(pop_size=pop, offspring_count=count)))
    for paradigm, preset_params in cases:
        config = apply_preset(paradigm, preset_params)
        assert validate(config).feasible, (paradigm, preset_params)
        assert classify(config) is paradigm, (paradigm, preset_params)


def test_classification_uses_resolved_sizes():
    config = apply_preset(Paradigm.GGA, params(pop_size=10)).model_copy(
        update={
            "offspring_size": SizeParam.percent(100),
            "reduced_offspring_size": SizeParam.percent(100),
        }
    )
    assert classify(config) is Paradigm.GGA


def test_worked_example_is_custom():
    assert classify(fig1_config()) is Paradigm.CUSTOM


def test_ep_with_sequential_final_reduction_is_plus_strategy():
    config = apply_preset(Paradigm.EP, params(pop_size=6)).model_copy(
        update={"final_reducer": SequentialReducer()}
    )
    assert classify(config) is Paradigm.ES_PLUS


def test_comma_strategy_outranks_generational_shape():
    # a (P,P) strategy has exactly the generational sizes
    config = apply_preset(Paradigm.ES_COMMA, params(pop_size=10, lambda_=10))
    assert classify(config) is Paradigm.ES_COMMA


def test_single_field_edits_leave_the_paradigm():
    gga = apply_preset(Paradigm.GGA, params(pop_size=10))
    assert classify(gga.model_copy(update={"offspring_size": SizeParam.absolute(15)})) \
        is Paradigm.CUSTOM
    assert classify(
        gga.model_copy(
            update={"elitism": ElitismSpec(mode=ElitismMode.STRONG, elite_size=2),
                    "reduced_nep_size": SizeParam.absolute(2)}
        )
    ) is Paradigm.CUSTOM

    ssga = apply_preset(Paradigm.SSGA, params(pop_size=10, offspring_count=1))
    assert classify(ssga.model_copy(update={"nep_reducer": SequentialReducer()})) \
        is Paradigm.CUSTOM
    assert classify(
        ssga.model_copy(
            update={"elitism": ElitismSpec(mode=ElitismMode.WEAK, elite_size=1)}
        )
    ) is Paradigm.CUSTOM

    plus = apply_preset(Paradigm.ES_PLUS, params(pop_size=5, lambda_=20))
    assert classify(
        plus.model_copy(update={"parent_selector": TournamentSelector(tournament_size=2)})
    ) is Paradigm.CUSTOM
    assert classify(plus.model_copy(update={"fertile": SizeParam.absolute(4)})) \
        is Paradigm.CUSTOM


def test_reducer_kind_of_inactive_stage_does_not_matter_for_gga():
    # reducing to the full size is a no-op, so the kind stays cosmetic
    config = apply_preset(Paradigm.GGA, params(pop_size=10)).model_copy(
        update={"offspring_reducer": StochasticTournamentReducer(probability=0.8)}
    )
    assert classify(config) is Paradigm.GGA


def test_classify_rejects_infeasible():
    config = make_config(fertile=SizeParam.absolute(0))
    with pytest.raises(EngineError) as err:
        classify(config)
    assert err.value.code == "INFEASIBLE_CONFIG"


def test_default_generational_base_config_classifies_gga():
    assert classify(make_config()) is Paradigm.GGA
