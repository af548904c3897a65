# SPDX-License-Identifier: MIT

"""
harness_experiment.py

Tests for experiment configuration, the decomposition pipeline and the
experiment runners: single scheme runs, evaluation over every scheme and
plain simulation.
"""

import json
import os

import pytest

from intent_ran.constants import METRICS_CSV_HEADER, OUTPUT_DIR_ENV, TRACE_CSV_HEADER
from intent_ran.harness import (
    ExperimentConfig,
    Scheme,
    load_experiment_config,
)
from intent_ran.harness.experiment import (
    EVALUATION_FILE,
    RunSummary,
    evaluate,
    resolve_output_dir,
    run_experiment,
    simulate,
)
from intent_ran.harness.pipeline import DecompositionPipeline, intent_format
from intent_ran.intent.exceptions import IntentSchemaError
from intent_ran.ontology.model import default_conflict_rules
from intent_ran.ransim.exceptions import ConfigError
from intent_ran.sig import DecompositionConfig
from intent_ran.util import read_csv


class TestExperimentConfig:
    """Loading and validating experiment configurations."""

    @pytest.mark.harness
    def test_desk_profile(self):
        """The desk profile is a four-site network."""
        config = load_experiment_config()
        assert config.scenario.num_bs == 4
        assert config.scenario.num_ue == 32
        assert config.hyperparams.steps_per_episode == 100
        assert config.experiment.bench_num_bs == (5, 10, 20, 40)
        assert len(config.rules()) == 2

    @pytest.mark.harness
    def test_paper_profile(self):
        """The full-scale profile matches the urban-macro evaluation setup."""
        config = load_experiment_config(paper_scale=True)
        assert (config.scenario.num_bs, config.scenario.num_ue) == (40, 320)
        assert config.hyperparams.steps_per_episode == 1000
        assert config.hyperparams.discount == 0.7
        assert config.hyperparams.exploit_probability == 0.7
        assert config.hyperparams.target_sync_period == 100

    @pytest.mark.harness
    def test_defaults_and_rules(self):
        """Missing sections take their defaults; no rule section means the default rules."""
        config = ExperimentConfig.from_dict({})
        assert config.rules() == default_conflict_rules()
        assert config.experiment.schemes == tuple(Scheme)
        empty = ExperimentConfig.from_dict({"conflict_rules": {"rule": []}})
        assert empty.rules() == ()

    @pytest.mark.harness
    def test_invalid(self, tmp_path):
        """Unknown keys, bad values, bad rules and malformed files raise ConfigError."""
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict({"scenario": {"num_towers": 3}})
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict({"hyperparams": {"discount": 1.5}})
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict({"experiment": {"schemes": ["random"]}})
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict(
                {"conflict_rules": {"rule": [{"objective_a": "TotalEnergyConsumption"}]}}
            )
        broken = tmp_path / "broken.toml"
        broken.write_text("[scenario\nnum_bs = 2\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            ExperimentConfig.from_toml(str(broken))
        with pytest.raises(ConfigError):
            ExperimentConfig.from_toml(str(tmp_path / "missing.toml"))

    @pytest.mark.harness
    def test_with_seed(self, tiny_config):
        """with_seed changes the scenario seed only."""
        other = tiny_config.with_seed(9)
        assert other.scenario.rng_seed == 9
        assert other.scenario.num_bs == tiny_config.scenario.num_bs
        assert tiny_config.scenario.rng_seed == 7

    @pytest.mark.harness
    def test_missing_inputs(self, tmp_path):
        """check_paths names the missing file."""
        config = ExperimentConfig.from_dict(
            {"experiment": {"sig_model_path": str(tmp_path / "nowhere.json")}}
        )
        with pytest.raises(ConfigError) as excinfo:
            config.check_paths()
        assert excinfo.value.location.endswith("nowhere.json")

    @pytest.mark.harness
    def test_output_dir_override(self, tiny_config, tmp_path):
        """An explicit directory wins and is created."""
        target = tmp_path / "explicit"
        assert resolve_output_dir(tiny_config, str(target)) == str(target)
        assert target.is_dir()

    @pytest.mark.harness
    def test_output_dir_environment(self, tiny_config, tmp_path, monkeypatch):
        """$INTENT_RAN_OUT is read when the directory is resolved, not at import."""
        target = tmp_path / "from-env"
        monkeypatch.setenv(OUTPUT_DIR_ENV, str(target))
        assert resolve_output_dir(tiny_config) == str(target)
        assert target.is_dir()


class TestPipeline:
    """The file-level decomposition pipeline."""

    @pytest.mark.harness
    def test_formats(self):
        """The format follows the extension."""
        assert intent_format("a.yaml") == "yaml"
        assert intent_format("a.YML") == "yaml"
        assert intent_format("a.json") == "json"
        with pytest.raises(IntentSchemaError):
            intent_format("a.txt")

    @pytest.mark.harness
    def test_run(self, intent_path, sig_path, setup_logging):
        """One knowledge-base agent per BS and the reference outcome."""
        pipeline = DecompositionPipeline(
            intent_path, sig_path, default_conflict_rules(), DecompositionConfig(), setup_logging
        )
        outcome = pipeline.run(num_agents=3)
        assert len(outcome.ontology.bs_agents) == 3
        assert outcome.result.satisfied
        assert (outcome.bounds.energy_max, outcome.bounds.latency_max) == (0.6, 1.0)
        assert outcome.elapsed_ms >= 0
        assert json.loads(outcome.canonical_json)["userLabel"] == "Energy Saving"

    @pytest.mark.harness
    def test_error_location(self, tmp_path, sig_path):
        """Schema errors carry the intent path."""
        intent = tmp_path / "empty.json"
        intent.write_text("{}", encoding="utf-8")
        pipeline = DecompositionPipeline(
            str(intent), sig_path, default_conflict_rules(), DecompositionConfig()
        )
        with pytest.raises(IntentSchemaError) as excinfo:
            pipeline.run()
        assert str(intent) in excinfo.value.location


class TestRuns:
    """Scheme runs, evaluation and simulation on the tiny configuration."""

    @pytest.mark.harness
    def test_dqn_run(self, tiny_config, output_dir, setup_logging):
        """A DQN run writes its trace, metrics, summary and checkpoint."""
        summary = run_experiment(tiny_config, Scheme.DQN, output_dir=output_dir, log=setup_logging)
        assert summary.scheme == "dqn"
        assert summary.seed == 3
        assert summary.steps == 2 * tiny_config.hyperparams.steps_per_episode
        assert len(summary.actions) == 4
        assert set(summary.constraints) == {"energy", "throughput", "latency"}

        trace = read_csv(os.path.join(output_dir, "dqn_seed3_trace.csv"))
        assert tuple(trace[0]) == TRACE_CSV_HEADER
        assert len(trace) == summary.steps
        metrics = read_csv(os.path.join(output_dir, "dqn_seed3_metrics.csv"))
        assert tuple(metrics[0]) == METRICS_CSV_HEADER
        assert len(metrics) == summary.steps * tiny_config.scenario.num_bs
        assert os.path.isfile(os.path.join(output_dir, "dqn_seed3_agent0.npz"))

        with open(os.path.join(output_dir, "dqn_seed3_summary.json"), encoding="utf-8") as f:
            assert json.load(f) == summary.to_dict()

    @pytest.mark.harness
    def test_static_loss_blank(self, tiny_config, output_dir):
        """The static run has nothing to train, so the loss column stays empty."""
        run_experiment(tiny_config, "static", output_dir=output_dir)
        trace = read_csv(os.path.join(output_dir, "static_seed3_trace.csv"))
        assert all(row["loss"] == "" and row["action"] == "" for row in trace)

    @pytest.mark.harness
    def test_deterministic(self, tiny_config, output_dir, tmp_path):
        """A configuration and a seed determine the run."""
        first = run_experiment(tiny_config, Scheme.Q_LEARNING, output_dir=output_dir)
        other_dir = str(tmp_path / "again")
        second = run_experiment(tiny_config, Scheme.Q_LEARNING, output_dir=other_dir)
        assert first == second
        for name in ("q_learning_seed3_trace.csv", "q_learning_seed3_metrics.csv"):
            with open(os.path.join(output_dir, name), "rb") as a, open(
                os.path.join(other_dir, name), "rb"
            ) as b:
                assert a.read() == b.read()

    @pytest.mark.harness
    def test_unknown_scheme(self, tiny_config, output_dir):
        """Scheme names are checked."""
        with pytest.raises(ConfigError):
            run_experiment(tiny_config, "random", output_dir=output_dir)

    @pytest.mark.harness
    def test_summary_rejects_nan(self):
        """Aggregates must be finite."""
        with pytest.raises(ValueError):
            RunSummary(
                scheme="static",
                seed=0,
                episodes=1,
                steps=1,
                mean_energy_w=float("nan"),
                mean_thpt_bps=0.0,
                mean_latency_ms=None,
                total_reward=0.0,
                first_window_reward=0.0,
                last_window_reward=0.0,
                satisfied=True,
                constraints={},
                actions=(),
                decomposition_ms=0.0,
            )

    @pytest.mark.harness
    def test_evaluate(self, tiny_config, output_dir):
        """Every scheme appears in evaluation.json, with its runs."""
        config = tiny_config.model_copy(
            update={
                "experiment": tiny_config.experiment.model_copy(
                    update={"schemes": (Scheme.STATIC, Scheme.Q_LEARNING)}
                )
            }
        )
        comparison = evaluate(config, output_dir)
        with open(os.path.join(output_dir, EVALUATION_FILE), encoding="utf-8") as f:
            assert json.load(f) == comparison
        assert set(comparison) == {"static", "q_learning"}
        for entry in comparison.values():
            assert entry["seeds"] == [3]
            assert len(entry["runs"]) == 1
            assert entry["mean_total_reward"] == entry["runs"][0]["total_reward"]

    @pytest.mark.harness
    def test_simulate(self, tiny_config, output_dir):
        """simulate returns one metrics record per step and writes them."""
        history = simulate(tiny_config, output_dir=output_dir)
        assert len(history) == 5
        assert [m.tick for m in history] == list(range(5))
        rows = read_csv(os.path.join(output_dir, "simulate_seed3_metrics.csv"))
        assert len(rows) == 5 * tiny_config.scenario.num_bs
        with open(os.path.join(output_dir, "simulate_seed3_snapshot.json"), encoding="utf-8") as f:
            snapshot = json.load(f)
        assert snapshot

    @pytest.mark.harness
    def test_simulate_rejects_zero_steps(self, tiny_config, output_dir):
        """At least one step."""
        with pytest.raises(ConfigError):
            simulate(tiny_config, steps=0, output_dir=output_dir)
