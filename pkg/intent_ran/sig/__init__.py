# SPDX-License-Identifier: MIT

"""
SIG package: softgoal interdependency graph model, weight propagation and
the conflict-aware decomposition of an intent into energy-saving operations.
"""

from pydantic import BaseModel, ConfigDict, Field

from intent_ran.constants import DEFAULT_SATISFACTION_THRESHOLD


class DecompositionConfig(BaseModel):
    """
    A class for the decomposition settings: the satisfaction threshold, the
    conflict analysis switch and the optional harm threshold.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    threshold: float = DEFAULT_SATISFACTION_THRESHOLD
    conflict_analysis: bool = True
    harm_threshold: float | None = Field(default=None, ge=-1.0, le=1.0)
