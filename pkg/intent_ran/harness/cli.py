# SPDX-License-Identifier: MIT

"""
intent_ran.harness.cli

Command line of intent_ran:

    intent-ran decompose [--intent PATH] [--sig PATH] [--no-conflict]
    intent-ran bench     [--num-bs 5 10 20 40] [--repetitions N] [--mode MODE]
    intent-ran simulate  [--steps N]
    intent-ran train     [--scheme NAME] [--episodes N]
    intent-ran evaluate

Every subcommand accepts --config, --paper-scale, --seed, --out,
--log-level and --log-file. `decompose` exits 0 when the intent is
satisfied and 1 when it is not; any subcommand exits 2 when an input
fails to parse or validate.
"""

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from intent_ran.exceptions import IntentRanError
from intent_ran.harness import ExperimentConfig, Scheme, load_experiment_config
from intent_ran.harness.bench import bench_decomposition
from intent_ran.harness.experiment import (
    build_pipeline,
    evaluate,
    resolve_output_dir,
    run_experiment,
    simulate,
)
from intent_ran.util import Utility

EXIT_SATISFIED = 0
EXIT_UNSATISFIED = 1
EXIT_INVALID = 2

REPORT_FILE = "decomposition_report.json"
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(pathname)s:%(lineno)d - %(message)s"
BENCH_MODES = {"both": None, "with_conflict": True, "no_conflict": False}


def setup_logging(level: str = "INFO", log_file: str | None = None) -> logging.Logger:
    """The `intent_ran` logger, writing to stderr and optionally to a file"""
    logger = logging.getLogger("intent_ran")
    logger.setLevel(level.upper())
    for stale in logger.handlers:
        stale.close()
    logger.handlers.clear()
    formatter = logging.Formatter(LOG_FORMAT)

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        os.makedirs(os.path.dirname(os.path.abspath(log_file)), exist_ok=True)
        handlers.append(logging.FileHandler(log_file, mode="w"))
    for handler in handlers:
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    return logger


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-parser per subcommand"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="experiment configuration (TOML)")
    common.add_argument(
        "--paper-scale",
        action="store_true",
        help="use the 40 BS / 320 UE profile instead of the desk profile",
    )
    common.add_argument("--seed", type=int, help="run a single seed")
    common.add_argument("--intent", help="intent document (.yaml, .yml or .json)")
    common.add_argument("--sig", help="SIG model (JSON)")
    common.add_argument("--out", help="output directory")
    common.add_argument(
        "--log-level",
        default="INFO",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="logging level (default: INFO)",
    )
    common.add_argument("--log-file", help="also write the log to this file")

    parser = argparse.ArgumentParser(
        prog="intent-ran",
        description="Energy-aware intent decomposition and DQN energy saving for a RAN",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    decompose = commands.add_parser(
        "decompose", parents=[common], help="decompose an intent into operations"
    )
    decompose.add_argument(
        "--no-conflict", action="store_true", help="skip the conflict analysis"
    )
    decompose.add_argument("--threshold", type=float, help="satisfaction threshold")

    bench = commands.add_parser(
        "bench", parents=[common], help="time the decomposition against the number of BSs"
    )
    bench.add_argument("--num-bs", type=int, nargs="+", help="BS counts to sweep")
    bench.add_argument("--repetitions", type=int, help="timed repetitions per count")
    bench.add_argument(
        "--mode", choices=tuple(BENCH_MODES), default="both", help="conflict analysis mode"
    )
    bench.add_argument(
        "--no-conflict", action="store_true", help="same as --mode no_conflict"
    )

    sim = commands.add_parser(
        "simulate", parents=[common], help="run the network without any agent"
    )
    sim.add_argument("--steps", type=int, help="number of decision steps")

    train = commands.add_parser("train", parents=[common], help="run one scheme")
    train.add_argument(
        "--scheme",
        choices=[scheme.value for scheme in Scheme],
        default=Scheme.DQN.value,
        help="scheme to run (default: dqn)",
    )
    train.add_argument(
        "--no-conflict", action="store_true", help="same as --scheme dqn_no_conflict"
    )
    train.add_argument("--episodes", type=int, help="number of episodes")

    ev = commands.add_parser(
        "evaluate", parents=[common], help="run every scheme over every seed"
    )
    ev.add_argument("--episodes", type=int, help="number of episodes")
    return parser


def configure(args: argparse.Namespace) -> ExperimentConfig:
    """The configuration file (or profile) with the command line overrides applied"""
    config = load_experiment_config(args.config, args.paper_scale)
    experiment = {}
    if args.intent:
        experiment["intent_path"] = args.intent
    if args.sig:
        experiment["sig_model_path"] = args.sig
    if args.seed is not None:
        experiment["seeds"] = (args.seed,)
    if getattr(args, "episodes", None) is not None:
        experiment["episodes"] = args.episodes

    data = config.model_dump()
    data["experiment"].update(experiment)
    if getattr(args, "threshold", None) is not None:
        data["decomposition"]["threshold"] = args.threshold
    if getattr(args, "no_conflict", False) and args.command == "decompose":
        data["decomposition"]["conflict_analysis"] = False
    return ExperimentConfig.from_dict(data)


def _print_json(data: dict):
    print(json.dumps(data, sort_keys=True, indent=2))


def cmd_decompose(args, config: ExperimentConfig, log: logging.Logger) -> int:
    pipeline = build_pipeline(config, log)
    outcome = pipeline.run(num_agents=config.scenario.num_bs)
    result = outcome.result
    output_dir = resolve_output_dir(config, args.out)
    Utility.write_text(os.path.join(output_dir, REPORT_FILE), result.to_json())
    print(result.to_json(), end="")
    print(result.render_text())
    return EXIT_SATISFIED if result.satisfied else EXIT_UNSATISFIED


def cmd_bench(args, config: ExperimentConfig, log: logging.Logger) -> int:
    settings = config.experiment
    mode = "no_conflict" if args.no_conflict else args.mode
    rows = bench_decomposition(
        args.num_bs or settings.bench_num_bs,
        args.repetitions or settings.bench_repetitions,
        with_conflict=BENCH_MODES[mode],
        warmup=settings.bench_warmup,
        config=config,
        output_dir=resolve_output_dir(config, args.out),
        log=log,
    )
    for num_bs, name, repetitions, median_ms in rows:
        print(f"{num_bs:>4} {name:<14} {repetitions:>3} {median_ms:10.3f} ms")
    return 0


def cmd_simulate(args, config: ExperimentConfig, log: logging.Logger) -> int:
    history = simulate(config, args.steps, output_dir=args.out, log=log)
    print(f"simulated {len(history)} steps")
    return 0


def cmd_train(args, config: ExperimentConfig, log: logging.Logger) -> int:
    scheme = Scheme.DQN_NO_CONFLICT if args.no_conflict else Scheme(args.scheme)
    summaries = [
        run_experiment(config, scheme, seed, args.out, log)
        for seed in config.experiment.seeds
    ]
    for summary in summaries:
        _print_json(summary.to_dict())
    return 0


def cmd_evaluate(args, config: ExperimentConfig, log: logging.Logger) -> int:
    comparison = evaluate(config, args.out, log)
    _print_json(
        {
            scheme: {key: value for key, value in entry.items() if key != "runs"}
            for scheme, entry in comparison.items()
        }
    )
    return 0


COMMANDS = {
    "decompose": cmd_decompose,
    "bench": cmd_bench,
    "simulate": cmd_simulate,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the exit code"""
    args = build_parser().parse_args(argv)
    log = setup_logging(args.log_level, args.log_file)
    try:
        config = configure(args)
        return COMMANDS[args.command](args, config, log)
    except IntentRanError as exc:
        log.error(f"[CLI] {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
