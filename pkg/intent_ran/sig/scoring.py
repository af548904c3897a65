# SPDX-License-Identifier: MIT

"""
intent_ran.sig.scoring

Weight propagation through the SIG. An operation scores the sum of its
weights toward each objective times that objective's softgoal weight; an
objective scores the sum of the weights its operations give it; the
softgoal scores the mean of its objective scores.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from intent_ran.sig.exceptions import EmptyInputError
from intent_ran.sig.model import SigModel


@dataclass(frozen=True)
class SigScores:
    """Scores of the operations, the objectives and the softgoal."""

    op_scores: tuple[float, ...]
    objective_scores: tuple[float, ...]
    softgoal_score: float


def score_operations(model: SigModel) -> np.ndarray:
    """opWeights . sgWeights, one score per operation"""
    return model.op_matrix @ model.sg_vector


def score_objectives(model: SigModel) -> np.ndarray:
    """Column sums of opWeights, one score per objective"""
    return model.op_matrix.sum(axis=0)


def score_softgoal(objective_scores: Sequence[float]) -> float:
    """Mean of the objective scores. Raises EmptyInputError on an empty vector."""
    scores = np.asarray(objective_scores, dtype=float)
    if scores.size == 0:
        raise EmptyInputError("Cannot score a softgoal without objective scores")
    return float(scores.mean())


def check_satisfaction(softgoal_score: float, threshold: float) -> bool:
    """The intent is satisfied when its softgoal score reaches the threshold"""
    return softgoal_score >= threshold


def score_model(model: SigModel) -> SigScores:
    """All three score levels of a model"""
    objective_scores = score_objectives(model)
    return SigScores(
        op_scores=tuple(float(s) for s in score_operations(model)),
        objective_scores=tuple(float(s) for s in objective_scores),
        softgoal_score=score_softgoal(objective_scores),
    )
