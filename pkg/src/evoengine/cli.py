"""Command line front end.

Exit codes: validate and classify return 0 on success and 1 on
infeasible configs or schema/IO errors; run returns 0 when the target
was reached, 2 when it finished without one, 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys

from pydantic import ValidationError

from .engine import StopReason, run
from .errors import EngineError
from .experiment import load_engine_config, load_experiment
from .model import (
    LinearRankingSelector,
    RandomSelector,
    RouletteWheelSelector,
    SequentialSelector,
    StochasticTournamentSelector,
    TournamentSelector,
    to_wire,
    validate,
)
from .presets import Paradigm, PresetParams, apply_preset, classify
from .problems import make_problem

SELECTOR_KINDS = (
    "roulette-wheel",
    "linear-ranking",
    "deterministic-tournament",
    "stochastic-tournament",
    "random",
    "sequential",
)


def cmd_validate(args) -> int:
    report = validate(load_engine_config(args.path))
    print(json.dumps(to_wire(report), indent=2))
    return 0 if report.feasible else 1


def cmd_classify(args) -> int:
    print(classify(load_engine_config(args.path)).value)
    return 0


def cmd_run(args) -> int:
    experiment = load_experiment(args.path)
    run_config = experiment.run
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.max_gen is not None:
        overrides["max_generations"] = args.max_gen
    if args.target is not None:
        overrides["target_fitness"] = args.target
    if args.stagnation is not None:
        overrides["stagnation_generations"] = args.stagnation
    if overrides:
        run_config = run_config.model_copy(update=overrides)

    report = validate(experiment.engine)
    if not report.feasible:
        for v in report.violations:
            print(f"infeasible[{v.code}] {v.offending_field}: {v.message}",
                  file=sys.stderr)
        return 1

    record = run(experiment.engine, run_config, make_problem(experiment.problem))
    print("generation,best,mean,worst,evaluations")
    for s in record.history:
        print(f"{s.generation},{s.best_fitness},{s.mean_fitness},"
              f"{s.worst_fitness},{s.evaluations}")
    last = record.history[-1]
    print(
        f"stop={record.stop_reason.value} generations={last.generation} "
        f"best={record.best.fitness} evaluations={last.evaluations}",
        file=sys.stderr,
    )
    return 0 if record.stop_reason is StopReason.TARGET_REACHED else 2


def _build_selector(args):
    kind = args.selector
    if kind is None:
        return None
    if kind == "roulette-wheel":
        return RouletteWheelSelector(pressure=args.pressure)
    if kind == "linear-ranking":
        return LinearRankingSelector(pressure=args.pressure)
    if kind == "deterministic-tournament":
        return TournamentSelector(tournament_size=args.tournament_size)
    if kind == "stochastic-tournament":
        return StochasticTournamentSelector(probability=args.probability)
    if kind == "random":
        return RandomSelector()
    return SequentialSelector()


def cmd_preset(args) -> int:
    params = PresetParams(
        pop_size=args.pop_size,
        lambda_=args.lam,
        offspring_count=args.offspring_count,
        selector=_build_selector(args),
        weak_elite=args.weak_elite,
    )
    config = apply_preset(Paradigm(args.paradigm), params)
    print(json.dumps(to_wire(config), indent=2))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(static_dir=args.static_dir),
                host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoengine",
        description="Configurable evolution engine runner",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a config file for feasibility")
    p.add_argument("path", help="engine config or experiment JSON file")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("classify", help="name the paradigm a config implements")
    p.add_argument("path", help="engine config or experiment JSON file")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("run", help="execute an experiment, CSV history on stdout")
    p.add_argument("path", help="experiment JSON file")
    p.add_argument("--seed", type=int, help="override the run seed")
    p.add_argument("--max-gen", type=int, dest="max_gen",
                   help="override the generation limit")
    p.add_argument("--target", type=float, help="override the target fitness")
    p.add_argument("--stagnation", type=int,
                   help="override the stagnation window")
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("preset", help="print the config a paradigm expands to")
    p.add_argument("paradigm",
                   choices=[x.value for x in Paradigm if x is not Paradigm.CUSTOM])
    p.add_argument("--pop-size", type=int, required=True)
    p.add_argument("--lambda", type=int, dest="lam",
                   help="offspring count for the strategies")
    p.add_argument("--offspring-count", type=int, default=1,
                   help="steady-state offspring per generation")
    p.add_argument("--weak-elite", type=int, default=0,
                   help="weak elite size for the generational GA")
    p.add_argument("--selector", choices=SELECTOR_KINDS,
                   help="parent selector for the GA presets")
    p.add_argument("--pressure", type=float, default=2.0)
    p.add_argument("--tournament-size", type=int, default=2)
    p.add_argument("--probability", type=float, default=0.75)
    p.set_defaults(handler=cmd_preset)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8571)
    p.add_argument("--static-dir", default=None,
                   help="directory of panel assets to serve at /")
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except EngineError as err:
        print(f"error[{err.code}]: {err}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, ValidationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
