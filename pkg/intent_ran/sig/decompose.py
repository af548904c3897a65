# SPDX-License-Identifier: MIT

"""
intent_ran.sig.decompose

Intent decomposition: score the SIG, find the conflicting targets of the
intent, prune the operation set and decide whether the intent is satisfied.
"""

import json
from dataclasses import dataclass
from typing import Sequence

from intent_ran.constants import DEFAULT_SATISFACTION_THRESHOLD, REPORT_DECIMALS
from intent_ran.intent.models import IntentDocument
from intent_ran.ontology.conflicts import detect_target_conflicts
from intent_ran.ontology.model import (
    TARGET_OBJECTIVES,
    ConflictRule,
    ConflictSet,
    EnergySavingOp,
    NetworkOntology,
)
from intent_ran.sig.exceptions import InconsistentModelError
from intent_ran.sig.model import SigModel
from intent_ran.sig.scoring import SigScores, check_satisfaction, score_model


@dataclass(frozen=True)
class ScoredOperation:
    """An operation kept by the decomposition, with its score."""

    label: str
    op: EnergySavingOp
    score: float


def _dominant_objective(
    model: SigModel, first: str, second: str, rules: Sequence[ConflictRule]
) -> str | None:
    """
    The objective label that wins the conflict between two target names:
    the first matching rule decides, otherwise the higher softgoal weight.
    """
    if first not in TARGET_OBJECTIVES or second not in TARGET_OBJECTIVES:
        return None
    kind_a = TARGET_OBJECTIVES[first][0]
    kind_b = TARGET_OBJECTIVES[second][0]
    for rule in rules:
        if rule.involves(kind_a, kind_b):
            return rule.dominant().value

    candidates = [
        kind.value for kind in (kind_a, kind_b) if kind.value in model.objectives
    ]
    if not candidates:
        return None
    return max(
        candidates,
        key=lambda label: model.sg_weights[model.objectives.index(label)],
    )


def prune_conflicting_ops(
    model: SigModel,
    conflicts: ConflictSet,
    rules: Sequence[ConflictRule],
    harm_threshold: float | None = None,
    scores: SigScores | None = None,
) -> tuple[ScoredOperation, ...]:
    """
    Drop every operation with a negative score. With a harm threshold,
    also drop the operations whose weight toward the dominant objective of
    a conflicting pair is at or below it.
    """
    scores = scores or score_model(model)
    harmful_columns = set()
    if harm_threshold is not None:
        for pair in conflicts:
            label = _dominant_objective(model, pair.first, pair.second, rules)
            if label is not None and label in model.objectives:
                harmful_columns.add(model.objectives.index(label))

    kept = []
    for i, (label, op) in enumerate(zip(model.operations, model.energy_saving_ops)):
        score = scores.op_scores[i]
        if score < 0:
            continue
        if any(model.op_weights[i][j] <= harm_threshold for j in harmful_columns):
            continue
        kept.append(ScoredOperation(label, op, score))
    return tuple(kept)


@dataclass(frozen=True)
class DecompositionResult:
    """Outcome of decomposing an intent with a SIG model."""

    softgoal: str
    objectives: tuple[str, ...]
    operations: tuple[str, ...]
    pruned_ops: tuple[ScoredOperation, ...]
    scores: SigScores
    conflicts: ConflictSet
    satisfied: bool
    threshold: float
    conflict_analysis: bool = True

    @property
    def pruned_labels(self) -> tuple[str, ...]:
        """Labels of the kept operations"""
        return tuple(scored.label for scored in self.pruned_ops)

    @property
    def actions(self) -> tuple[EnergySavingOp, ...]:
        """The kept operations, in SIG order"""
        return tuple(scored.op for scored in self.pruned_ops)

    def to_report(self) -> dict:
        """JSON report, scores rounded for presentation"""

        def rounded(value: float) -> float:
            return round(value, REPORT_DECIMALS)

        return {
            "softgoal": self.softgoal,
            "conflict_analysis": self.conflict_analysis,
            "scores": {
                "operations": {
                    label: rounded(score)
                    for label, score in zip(self.operations, self.scores.op_scores)
                },
                "objectives": {
                    label: rounded(score)
                    for label, score in zip(
                        self.objectives, self.scores.objective_scores
                    )
                },
                "softgoal": rounded(self.scores.softgoal_score),
            },
            "conflicts": self.conflicts.to_list(),
            "pruned_operations": list(self.pruned_labels),
            "threshold": self.threshold,
            "satisfied": self.satisfied,
        }

    def to_json(self) -> str:
        """The report as JSON text"""
        return json.dumps(self.to_report(), indent=2) + "\n"

    def render_text(self) -> str:
        """Human-readable summary of the report"""
        lines = [f"Softgoal {self.softgoal}"]
        lines.append(
            f"  score {self.scores.softgoal_score:.{REPORT_DECIMALS}f} "
            f"(threshold {self.threshold:g}): "
            + ("satisfied" if self.satisfied else "NOT satisfied")
        )
        lines.append("Objectives")
        for label, score in zip(self.objectives, self.scores.objective_scores):
            lines.append(f"  {label:<24} {score:+.{REPORT_DECIMALS}f}")
        lines.append("Operations")
        kept = set(self.pruned_labels)
        for label, score in zip(self.operations, self.scores.op_scores):
            mark = "kept" if label in kept else "pruned"
            lines.append(f"  {label:<24} {score:+.{REPORT_DECIMALS}f}  {mark}")
        if self.conflict_analysis:
            lines.append(f"Conflicts ({len(self.conflicts)})")
            for pair in self.conflicts:
                lines.append(f"  {pair.first} <-> {pair.second}")
        else:
            lines.append("Conflicts: analysis disabled")
        return "\n".join(lines) + "\n"


def check_consistency(ontology: NetworkOntology, model: SigModel):
    """Raise InconsistentModelError if model and ontology disagree"""
    if sorted(model.objectives) != sorted(ontology.objective_labels):
        raise InconsistentModelError(
            "SIG objectives "
            + ", ".join(model.objectives)
            + " do not match the ontology objectives "
            + ", ".join(ontology.objective_labels)
        )
    known = set(ontology.energy_saving_ops)
    for label, op in zip(model.operations, model.energy_saving_ops):
        if op not in known:
            raise InconsistentModelError(
                f"SIG operation {label} is not an energy-saving operation of the ontology"
            )


def decompose(
    doc: IntentDocument,
    ontology: NetworkOntology,
    model: SigModel,
    threshold: float = DEFAULT_SATISFACTION_THRESHOLD,
    conflict_analysis: bool = True,
    harm_threshold: float | None = None,
) -> DecompositionResult:
    """
    Decompose an intent into the operations worth trying. Without conflict
    analysis every operation is retained and no conflicts are reported.
    """
    check_consistency(ontology, model)
    scores = score_model(model)

    if conflict_analysis:
        conflicts = detect_target_conflicts(doc)
        pruned = prune_conflicting_ops(
            model, conflicts, ontology.conflict_rules, harm_threshold, scores
        )
    else:
        conflicts = ConflictSet()
        pruned = tuple(
            ScoredOperation(label, op, score)
            for label, op, score in zip(
                model.operations, model.energy_saving_ops, scores.op_scores
            )
        )

    return DecompositionResult(
        softgoal=model.softgoal,
        objectives=model.objectives,
        operations=model.operations,
        pruned_ops=pruned,
        scores=scores,
        conflicts=conflicts,
        satisfied=check_satisfaction(scores.softgoal_score, threshold),
        threshold=threshold,
        conflict_analysis=conflict_analysis,
    )
