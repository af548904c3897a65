# SPDX-License-Identifier: MIT

"""
intent_ran.harness.experiment

Runs of one scheme on one seed, the evaluation of every scheme over every
seed, and plain simulation of the untouched network. Each run writes its
files under the output directory:

    <scheme>_seed<n>_trace.csv      step,episode,reward,loss,epsilon,action
    <scheme>_seed<n>_metrics.csv    tick,bs_id,load,energy_w,avg_thpt_bps,...
    <scheme>_seed<n>_summary.json   the RunSummary
"""

import json
import logging
import math
import os
from dataclasses import asdict, dataclass, field

import numpy as np

from intent_ran.constants import METRICS_CSV_HEADER, TRACE_CSV_HEADER
from intent_ran.harness import ExperimentConfig, Scheme
from intent_ran.harness.pipeline import DecompositionPipeline, PipelineOutcome
from intent_ran.intent import check_constraints
from intent_ran.optimizer.reward import RewardWeights
from intent_ran.optimizer.schemes import (
    TrainingTraces,
    q_learning_baseline,
    run_training,
    static_baseline,
)
from intent_ran.ransim.exceptions import ConfigError
from intent_ran.ransim.simulator import TickMetrics, step
from intent_ran.ransim.state import init_scenario
from intent_ran.util import Utility, write_csv

EVALUATION_FILE = "evaluation.json"
# share of the steps compared at the start and the end of a run
REWARD_WINDOW = 0.1


@dataclass(frozen=True)
class RunSummary:
    """
    Aggregates of one (scheme, seed) run. Energy and throughput are per-BS
    means over every step; latency is None when no packet completed.
    """

    scheme: str
    seed: int
    episodes: int
    steps: int
    mean_energy_w: float
    mean_thpt_bps: float
    mean_latency_ms: float | None
    total_reward: float
    first_window_reward: float
    last_window_reward: float
    satisfied: bool
    constraints: dict[str, bool]
    actions: tuple[str, ...]
    decomposition_ms: float = field(compare=False)

    def __post_init__(self):
        for name in (
            "mean_energy_w",
            "mean_thpt_bps",
            "total_reward",
            "first_window_reward",
            "last_window_reward",
        ):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"RunSummary.{name} is not finite")

    def to_dict(self) -> dict:
        """The summary as plain JSON-ready values"""
        data = asdict(self)
        data["actions"] = list(self.actions)
        return data

    def to_json(self) -> str:
        """The summary as JSON text"""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def resolve_output_dir(config: ExperimentConfig, override: str | None = None) -> str:
    """`override` when given, else $INTENT_RAN_OUT, else the configured directory"""
    if override:
        path = os.path.normpath(os.path.abspath(override))
        os.makedirs(path, exist_ok=True)
        return path
    return Utility.get_output_dir(config.experiment.output_dir)


def run_prefix(scheme: Scheme | str, seed: int) -> str:
    """File name prefix of a run"""
    name = scheme.value if isinstance(scheme, Scheme) else scheme
    return f"{name}_seed{seed}"


def build_pipeline(
    config: ExperimentConfig, log: logging.Logger | None = None
) -> DecompositionPipeline:
    """A decomposition pipeline over the configured intent and SIG model"""
    config.check_paths()
    return DecompositionPipeline(
        config.experiment.intent,
        config.experiment.sig_model,
        config.rules(),
        config.decomposition,
        log,
    )


def _network_constraints(
    outcome: PipelineOutcome,
    config: ExperimentConfig,
    traces: TrainingTraces,
) -> dict[str, bool]:
    # per-BS averages scaled back to network totals over the energy window
    scenario = config.scenario
    energy_kwh = (
        traces.mean_energy_w * scenario.num_bs * config.reward.energy_window_s / 3.6e6
    )
    throughput_gbps = traces.mean_thpt_bps * scenario.num_ue / 1e9
    latency = traces.mean_latency_ms
    checks = check_constraints(
        outcome.bounds, energy_kwh, throughput_gbps, 0.0 if latency is None else latency
    )
    if latency is None:
        checks["latency"] = False
    return checks


def _train(
    scheme: Scheme,
    config: ExperimentConfig,
    pipeline: DecompositionPipeline,
    seed: int,
    output_dir: str,
    log: logging.Logger,
) -> tuple[TrainingTraces, PipelineOutcome, tuple[str, ...]]:
    scenario = config.scenario
    hp = config.hyperparams
    episodes = config.experiment.episodes
    outcome = pipeline.run(
        num_agents=scenario.num_bs,
        conflict_analysis=scheme is not Scheme.DQN_NO_CONFLICT,
    )
    weights = RewardWeights.from_bounds(outcome.bounds, scenario, config.reward)
    labels = outcome.result.pruned_labels

    match scheme:
        case Scheme.DQN | Scheme.DQN_NO_CONFLICT:
            traces, trained = run_training(
                scenario, outcome.result, hp, episodes, weights, seed, log, scheme.value
            )
            trained.save_checkpoints(output_dir, run_prefix(scheme, seed))
        case Scheme.Q_LEARNING:
            traces = q_learning_baseline(
                scenario, outcome.result.actions, hp, episodes, weights, seed, log
            )
        case Scheme.STATIC:
            traces = static_baseline(scenario, hp, episodes, weights, seed, log)
            labels = ()
        case _:
            raise ConfigError(f"Unknown scheme '{scheme}'")
    return traces, outcome, labels


def run_experiment(
    config: ExperimentConfig,
    scheme: Scheme | str,
    seed: int | None = None,
    output_dir: str | None = None,
    log: logging.Logger | None = None,
) -> RunSummary:
    """
    Run one scheme on one seed (the first configured seed by default) and
    write its trace, metrics and summary files. Runs are deterministic for a
    given configuration and seed.
    """
    log = log or logging.getLogger(__name__)
    try:
        scheme = Scheme(scheme)
    except ValueError as exc:
        raise ConfigError(f"Unknown scheme '{scheme}'", "scheme") from exc
    seed = config.experiment.seeds[0] if seed is None else seed
    config = config.with_seed(seed)
    output_dir = resolve_output_dir(config, output_dir)
    prefix = run_prefix(scheme, seed)

    pipeline = build_pipeline(config, log)
    traces, outcome, labels = _train(scheme, config, pipeline, seed, output_dir, log)

    write_csv(os.path.join(output_dir, f"{prefix}_trace.csv"), TRACE_CSV_HEADER, traces.trace_rows)
    write_csv(
        os.path.join(output_dir, f"{prefix}_metrics.csv"),
        METRICS_CSV_HEADER,
        traces.metric_rows,
    )

    steps = traces.steps
    summary = RunSummary(
        scheme=scheme.value,
        seed=seed,
        episodes=config.experiment.episodes,
        steps=steps,
        mean_energy_w=traces.mean_energy_w,
        mean_thpt_bps=traces.mean_thpt_bps,
        mean_latency_ms=traces.mean_latency_ms,
        total_reward=traces.total_reward,
        first_window_reward=traces.window_mean(REWARD_WINDOW) if steps else 0.0,
        last_window_reward=traces.window_mean(REWARD_WINDOW, tail=True) if steps else 0.0,
        satisfied=outcome.result.satisfied,
        constraints=_network_constraints(outcome, config, traces),
        actions=labels,
        decomposition_ms=outcome.elapsed_ms,
    )
    Utility.write_text(os.path.join(output_dir, f"{prefix}_summary.json"), summary.to_json())
    log.info(
        f"[RUN] {prefix}: {steps} steps, mean energy {summary.mean_energy_w:.1f} W, "
        f"total reward {summary.total_reward:.3f}"
    )
    return summary


def _mean(values: list[float | None]) -> float | None:
    defined = [v for v in values if v is not None]
    return float(np.mean(defined)) if defined else None


def evaluate(
    config: ExperimentConfig,
    output_dir: str | None = None,
    log: logging.Logger | None = None,
) -> dict:
    """
    Run every configured scheme over every configured seed and write the
    comparison to `evaluation.json`. Returns the comparison.
    """
    log = log or logging.getLogger(__name__)
    output_dir = resolve_output_dir(config, output_dir)
    comparison = {}
    for scheme in config.experiment.schemes:
        runs = [
            run_experiment(config, scheme, seed, output_dir, log)
            for seed in config.experiment.seeds
        ]
        comparison[scheme.value] = {
            "seeds": [run.seed for run in runs],
            "mean_energy_w": _mean([run.mean_energy_w for run in runs]),
            "mean_thpt_bps": _mean([run.mean_thpt_bps for run in runs]),
            "mean_latency_ms": _mean([run.mean_latency_ms for run in runs]),
            "mean_total_reward": _mean([run.total_reward for run in runs]),
            "runs": [run.to_dict() for run in runs],
        }
    Utility.write_text(
        os.path.join(output_dir, EVALUATION_FILE),
        json.dumps(comparison, sort_keys=True, indent=2) + "\n",
    )
    return comparison


def simulate(
    config: ExperimentConfig,
    steps: int | None = None,
    seed: int | None = None,
    output_dir: str | None = None,
    log: logging.Logger | None = None,
) -> list[TickMetrics]:
    """
    Run the untouched network for `steps` decision steps and write the
    metrics CSV plus a snapshot of the final state.
    """
    log = log or logging.getLogger(__name__)
    seed = config.experiment.seeds[0] if seed is None else seed
    config = config.with_seed(seed)
    steps = config.experiment.simulate_steps if steps is None else steps
    if steps < 1:
        raise ConfigError(f"Cannot simulate {steps} steps", "steps")
    output_dir = resolve_output_dir(config, output_dir)
    prefix = run_prefix("simulate", seed)

    state = init_scenario(config.scenario, log)
    history = [step(state, config.hyperparams.step_duration_ms) for _ in range(steps)]

    write_csv(
        os.path.join(output_dir, f"{prefix}_metrics.csv"),
        METRICS_CSV_HEADER,
        [row for metrics in history for row in metrics.csv_rows()],
    )
    Utility.write_text(os.path.join(output_dir, f"{prefix}_snapshot.json"), state.snapshot_json())
    log.info(
        f"[SIMULATE] {steps} steps of {config.hyperparams.step_duration_ms} ms, "
        f"mean energy {np.mean([m.mean_energy_w for m in history]):.1f} W"
    )
    return history
