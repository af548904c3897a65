# SPDX-License-Identifier: MIT

"""
intent_ran.harness.bench

Decomposition time against the number of BSs. Every BS gets its own pass
through the pipeline (intent representation, knowledge base, SIG scoring
and, in `with_conflict` mode, the conflict analysis), so one repetition
over M BSs runs the pipeline M times.
"""

import logging
import os
import statistics
from typing import Iterable, Sequence

from intent_ran.constants import BENCH_CSV_HEADER
from intent_ran.harness import ExperimentConfig
from intent_ran.harness.pipeline import decompose_text, intent_format
from intent_ran.ontology.model import ConflictRule
from intent_ran.ransim.exceptions import ConfigError
from intent_ran.sig import DecompositionConfig
from intent_ran.sig.model import SigModel, load_sig_json
from intent_ran.util import Utility, timed, write_csv

BENCH_FILE = "bench_decomposition.csv"
MODES = {"with_conflict": True, "no_conflict": False}


def decompose_all_bs(
    intent_text: str,
    fmt: str,
    model: SigModel,
    rules: Sequence[ConflictRule],
    settings: DecompositionConfig,
    num_bs: int,
    with_conflict: bool,
):
    """One repetition: the whole pipeline once for each of `num_bs` BSs"""
    for _ in range(num_bs):
        decompose_text(intent_text, fmt, model, rules, settings, num_bs, with_conflict)


def bench_decomposition(
    m_values: Iterable[int],
    repetitions: int,
    with_conflict: bool | None = None,
    warmup: int = 1,
    config: ExperimentConfig | None = None,
    output_dir: str | None = None,
    log: logging.Logger | None = None,
) -> list[tuple[int, str, int, float]]:
    """
    Median wall time of a repetition for each M, in both modes unless
    `with_conflict` picks one. Warm-up repetitions are run and discarded.
    Writes `bench_decomposition.csv` when `output_dir` is given and returns
    the rows `(num_bs, mode, repetitions, median_ms)`.
    """
    log = log or logging.getLogger(__name__)
    m_values = list(m_values)
    if not m_values:
        raise ConfigError("No BS counts to benchmark", "bench_num_bs")
    for m in m_values:
        if m < 1:
            raise ConfigError(f"Number of BSs must be at least 1, got {m}", "bench_num_bs")
    if repetitions < 1:
        raise ConfigError(f"Need at least one repetition, got {repetitions}", "repetitions")

    config = config or ExperimentConfig()
    config.check_paths()
    intent_path = config.experiment.intent
    intent_text = Utility.read_text(intent_path)
    fmt = intent_format(intent_path)
    model = load_sig_json(Utility.read_text(config.experiment.sig_model))
    rules = config.rules()
    modes = (
        MODES
        if with_conflict is None
        else {name: flag for name, flag in MODES.items() if flag == with_conflict}
    )

    rows = []
    for mode, flag in modes.items():
        for m in m_values:

            def repetition(m=m, flag=flag):
                decompose_all_bs(
                    intent_text, fmt, model, rules, config.decomposition, m, flag
                )

            for _ in range(warmup):
                repetition()
            median_ms = statistics.median([timed(repetition) for _ in range(repetitions)])
            rows.append((m, mode, repetitions, median_ms))
            log.info(f"[BENCH] {mode} M={m}: median {median_ms:.3f} ms over {repetitions}")

    if output_dir is not None:
        write_csv(os.path.join(output_dir, BENCH_FILE), BENCH_CSV_HEADER, rows)
    return rows
