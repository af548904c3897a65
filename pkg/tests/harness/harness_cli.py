# SPDX-License-Identifier: MIT

"""
harness_cli.py

Tests for the `intent-ran` command line: exit codes of `decompose`, the
report it writes, and short `simulate`, `train` and `bench` runs driven by
a small configuration file.
"""

import json
import os

import pytest

from intent_ran.harness.bench import BENCH_FILE
from intent_ran.harness.cli import (
    EXIT_INVALID,
    EXIT_SATISFIED,
    EXIT_UNSATISFIED,
    REPORT_FILE,
    build_parser,
    main,
)
from intent_ran.util import read_csv

SMALL_TOML = """
[scenario]
num_bs = 2
num_ue = 8
min_rx_power_dbm = -70.0
rng_seed = 1

[hyperparams]
steps_per_episode = 5
step_duration_ms = 20
hidden_layers = [8]
batch_size = 4

[experiment]
seeds = [4]
episodes = 1
simulate_steps = 3
bench_num_bs = [1, 2]
bench_repetitions = 1
"""


def _report(output_dir: str) -> dict:
    with open(os.path.join(output_dir, REPORT_FILE), encoding="utf-8") as f:
        return json.load(f)


class TestDecomposeCommand:
    """`intent-ran decompose` on the packaged and on broken inputs."""

    @pytest.mark.harness
    def test_reference_intent(self, output_dir, capsys):
        """The reference intent is satisfied; Sleep is pruned."""
        assert main(["decompose", "--out", output_dir]) == EXIT_SATISFIED
        report = _report(output_dir)
        assert report["satisfied"] is True
        assert "Sleep" not in report["pruned_operations"]
        assert len(report["pruned_operations"]) == 4
        assert len(report["conflicts"]) == 2
        out = capsys.readouterr().out
        assert "Softgoal EnergySavingIntent" in out
        assert "satisfied" in out

    @pytest.mark.harness
    def test_no_conflict(self, output_dir):
        """Without the conflict analysis all five operations are kept."""
        assert main(["decompose", "--no-conflict", "--out", output_dir]) == EXIT_SATISFIED
        report = _report(output_dir)
        assert report["conflict_analysis"] is False
        assert len(report["pruned_operations"]) == 5
        assert report["conflicts"] == []

    @pytest.mark.harness
    def test_unsatisfied(self, output_dir):
        """A threshold above the softgoal score exits 1."""
        assert main(["decompose", "--threshold", "0.9", "--out", output_dir]) == EXIT_UNSATISFIED
        assert _report(output_dir)["satisfied"] is False

    @pytest.mark.harness
    def test_json_intent(self, intent_json_path, output_dir):
        """A JSON intent decomposes like its YAML twin."""
        assert main(["decompose", "--out", output_dir]) == EXIT_SATISFIED
        yaml_report = _report(output_dir)
        assert (
            main(["decompose", "--intent", intent_json_path, "--out", output_dir])
            == EXIT_SATISFIED
        )
        assert _report(output_dir) == yaml_report

    @pytest.mark.harness
    def test_malformed_yaml(self, tmp_path, output_dir, capsys):
        """Unparseable YAML exits 2 with a message on stderr."""
        broken = tmp_path / "broken.yaml"
        broken.write_text("userLabel: [unclosed\nintentExpectation: {\n", encoding="utf-8")
        assert main(["decompose", "--intent", str(broken), "--out", output_dir]) == EXIT_INVALID
        assert "error:" in capsys.readouterr().err
        assert not os.path.exists(os.path.join(output_dir, REPORT_FILE))

    @pytest.mark.harness
    def test_missing_target(self, tmp_path, intent_yaml_text, output_dir):
        """An intent without its latency target is rejected."""
        lines = intent_yaml_text.splitlines()
        start = next(i for i, line in enumerate(lines) if "DLFirstPacketLatency" in line)
        trimmed = tmp_path / "trimmed.yaml"
        trimmed.write_text("\n".join(lines[:start] + lines[start + 3 :]) + "\n", encoding="utf-8")
        assert main(["decompose", "--intent", str(trimmed), "--out", output_dir]) == EXIT_INVALID

    @pytest.mark.harness
    def test_missing_file(self, tmp_path, output_dir):
        """A SIG model that does not exist exits 2."""
        missing = str(tmp_path / "nowhere.json")
        assert main(["decompose", "--sig", missing, "--out", output_dir]) == EXIT_INVALID

    @pytest.mark.harness
    def test_bad_config(self, tmp_path, output_dir):
        """Unknown configuration keys exit 2."""
        config = tmp_path / "bad.toml"
        config.write_text("[scenario]\nnum_towers = 3\n", encoding="utf-8")
        assert main(["decompose", "--config", str(config), "--out", output_dir]) == EXIT_INVALID


class TestOtherCommands:
    """Short runs of the remaining subcommands."""

    @pytest.mark.harness
    def test_parser(self):
        """Every subcommand accepts the common options."""
        parser = build_parser()
        for command in ("decompose", "bench", "simulate", "train", "evaluate"):
            args = parser.parse_args([command, "--seed", "3", "--log-level", "DEBUG"])
            assert args.command == command
            assert args.seed == 3
        with pytest.raises(SystemExit):
            parser.parse_args(["train", "--scheme", "random"])

    @pytest.mark.harness
    def test_simulate(self, tmp_path, output_dir):
        """`simulate` writes the metrics stream and a snapshot."""
        config = tmp_path / "small.toml"
        config.write_text(SMALL_TOML, encoding="utf-8")
        assert main(["simulate", "--config", str(config), "--out", output_dir]) == 0
        rows = read_csv(os.path.join(output_dir, "simulate_seed4_metrics.csv"))
        assert len(rows) == 3 * 2
        assert os.path.isfile(os.path.join(output_dir, "simulate_seed4_snapshot.json"))

    @pytest.mark.harness
    def test_simulate_ignores_decomposition_inputs(self, tmp_path, output_dir):
        """`simulate` never reads the intent or the SIG model, so missing ones are fine."""
        config = tmp_path / "small.toml"
        config.write_text(SMALL_TOML, encoding="utf-8")
        argv = [
            "simulate",
            "--config",
            str(config),
            "--intent",
            str(tmp_path / "nowhere.yaml"),
            "--sig",
            str(tmp_path / "nowhere.json"),
            "--out",
            output_dir,
        ]
        assert main(argv) == 0
        assert os.path.isfile(os.path.join(output_dir, "simulate_seed4_metrics.csv"))

    @pytest.mark.harness
    def test_log_file(self, tmp_path, output_dir):
        """--log-file gets the same records as stderr; without it no file is written."""
        log_file = tmp_path / "run" / "intent-ran.log"
        argv = ["decompose", "--out", output_dir, "--log-file", str(log_file)]
        assert main(argv) == EXIT_SATISFIED
        text = log_file.read_text(encoding="utf-8")
        assert "[DECOMPOSITIONPIPELINE] decomposed 'Energy Saving'" in text

        assert main(["decompose", "--out", output_dir]) == EXIT_SATISFIED
        assert not os.path.exists(os.path.join(output_dir, "logs", "intent-ran.log"))

    @pytest.mark.harness
    def test_train(self, tmp_path, output_dir, capsys):
        """`train --scheme static` prints the run summary."""
        config = tmp_path / "small.toml"
        config.write_text(SMALL_TOML, encoding="utf-8")
        argv = ["train", "--config", str(config), "--scheme", "static", "--out", output_dir]
        assert main(argv) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["scheme"] == "static"
        assert summary["seed"] == 4
        assert summary["steps"] == 5
        assert os.path.isfile(os.path.join(output_dir, "static_seed4_trace.csv"))

    @pytest.mark.harness
    def test_bench(self, tmp_path, output_dir):
        """`bench --mode no_conflict` times one mode only."""
        config = tmp_path / "small.toml"
        config.write_text(SMALL_TOML, encoding="utf-8")
        argv = ["bench", "--config", str(config), "--mode", "no_conflict", "--out", output_dir]
        assert main(argv) == 0
        rows = read_csv(os.path.join(output_dir, BENCH_FILE))
        assert [(row["num_bs"], row["mode"]) for row in rows] == [
            ("1", "no_conflict"),
            ("2", "no_conflict"),
        ]
