# SPDX-License-Identifier: MIT

"""
intent_ran.harness.pipeline

The whole decomposition of an intent: read the intent, canonicalize it to
JSON, model it as a network ontology, score the SIG and prune the
operations with the conflict analysis.
"""

import logging
import os
import time
from dataclasses import dataclass
from typing import Sequence

from intent_ran.intent import ObjectiveBounds
from intent_ran.intent.codec import (
    extract_bounds,
    intent_to_json,
    parse_intent_json,
    parse_intent_yaml,
)
from intent_ran.intent.exceptions import IntentSchemaError
from intent_ran.intent.models import IntentDocument
from intent_ran.ontology.knowledge import build_knowledge_base
from intent_ran.ontology.model import ConflictRule, NetworkOntology
from intent_ran.sig import DecompositionConfig
from intent_ran.sig.decompose import DecompositionResult, decompose
from intent_ran.sig.model import SigModel, load_sig_json
from intent_ran.util import Utility


@dataclass(frozen=True)
class PipelineOutcome:
    """Everything one decomposition produced."""

    doc: IntentDocument
    canonical_json: str
    bounds: ObjectiveBounds
    ontology: NetworkOntology
    result: DecompositionResult
    elapsed_ms: float


def parse_intent_text(text: str, fmt: str) -> IntentDocument:
    """Parse intent text in `yaml` or `json` format"""
    match fmt:
        case "yaml":
            return parse_intent_yaml(text)
        case "json":
            return parse_intent_json(text)
        case _:
            raise IntentSchemaError(f"Unknown intent format '{fmt}'")


def intent_format(path: str) -> str:
    """`yaml` or `json`, from the file extension"""
    extension = os.path.splitext(path)[1].lower()
    if extension in (".yaml", ".yml"):
        return "yaml"
    if extension == ".json":
        return "json"
    raise IntentSchemaError(
        f"Cannot tell the intent format from extension '{extension}'", path
    )


def decompose_text(
    intent_text: str,
    fmt: str,
    model: SigModel,
    rules: Sequence[ConflictRule],
    settings: DecompositionConfig,
    num_agents: int = 1,
    conflict_analysis: bool | None = None,
) -> PipelineOutcome:
    """
    Run the pipeline on intent text. The intent goes through its canonical
    JSON form before it is modelled, as a stored intent would.
    """
    start = time.perf_counter()
    doc = parse_intent_json(intent_to_json(parse_intent_text(intent_text, fmt)))
    canonical = intent_to_json(doc)
    bounds = extract_bounds(doc)
    ontology = build_knowledge_base(doc, rules, num_agents)
    analysis = settings.conflict_analysis if conflict_analysis is None else conflict_analysis
    result = decompose(
        doc,
        ontology,
        model,
        threshold=settings.threshold,
        conflict_analysis=analysis,
        harm_threshold=settings.harm_threshold,
    )
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return PipelineOutcome(doc, canonical, bounds, ontology, result, elapsed_ms)


class DecompositionPipeline:
    """
    Decomposes the intent and SIG model files of an experiment. Files are
    read once; `run` can be called repeatedly.
    """

    def __init__(
        self,
        intent_path: str,
        sig_path: str,
        rules: Sequence[ConflictRule],
        settings: DecompositionConfig,
        log: logging.Logger | None = None,
    ):
        self._log = log or logging.getLogger(__name__)
        self._intent_path = intent_path
        self._format = intent_format(intent_path)
        self._intent_text = Utility.read_text(intent_path)
        self._model = load_sig_json(Utility.read_text(sig_path))
        self._rules = tuple(rules)
        self._settings = settings

    @property
    def log(self) -> logging.Logger:
        """Getter for `log` property"""
        return self._log

    def log_msg(self, message: str) -> str:
        """Tag a log message with the class name"""
        return f"[{self.__class__.__name__.upper()}] {message}"

    @property
    def model(self) -> SigModel:
        """Getter for `model` property"""
        return self._model

    def run(self, num_agents: int = 1, conflict_analysis: bool | None = None) -> PipelineOutcome:
        """Decompose the intent for `num_agents` BS agents"""
        try:
            outcome = decompose_text(
                self._intent_text,
                self._format,
                self._model,
                self._rules,
                self._settings,
                num_agents,
                conflict_analysis,
            )
        except IntentSchemaError as exc:
            location = f"{self._intent_path}: {exc.location}" if exc.location else self._intent_path
            raise type(exc)(exc.message, location) from exc
        self.log.info(
            self.log_msg(
                f"decomposed '{outcome.doc.user_label}' in {outcome.elapsed_ms:.3f} ms: "
                f"{len(outcome.result.pruned_ops)} operations kept, "
                f"{len(outcome.result.conflicts)} conflicts, "
                + ("satisfied" if outcome.result.satisfied else "not satisfied")
            )
        )
        return outcome
