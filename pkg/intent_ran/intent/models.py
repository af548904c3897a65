# SPDX-License-Identifier: MIT

"""
intent_ran.intent.models

Pydantic models of the intent template subset we accept. The schema is
closed: unknown keys are rejected, and the wire names are the camelCase
names of the template (`userLabel`, `intentExpectation`, ...).
"""

import math
from enum import Enum
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic.alias_generators import to_camel


class ExpectationVerb(str, Enum):
    """Verbs an intent expectation may carry."""

    ENSURE = "ENSURE"


class ContextCondition(str, Enum):
    """Conditions an object context may carry."""

    IS_ALL_OF = "IS_ALL_OF"


class TargetCondition(str, Enum):
    """Conditions an expectation target may carry."""

    IS_LESS_THAN = "IS_LESS_THAN"
    IS_GREATER_THAN = "IS_GREATER_THAN"


class _IntentModel(BaseModel):
    """Shared configuration: frozen, closed, camelCase on the wire."""

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        alias_generator=to_camel,
        populate_by_name=False,
        str_strip_whitespace=True,
    )


NonEmptyText = Annotated[str, Field(min_length=1)]


class ObjectContext(_IntentModel):
    """Scope of an expectation object, e.g. `RAT IS_ALL_OF [NR]`."""

    context_attribute: NonEmptyText
    context_condition: ContextCondition
    context_value_range: tuple[NonEmptyText, ...] = Field(min_length=1)


class ExpectationObject(_IntentModel):
    """The managed entity an expectation talks about."""

    object_instance: NonEmptyText
    object_contexts: tuple[ObjectContext, ...] = ()


class ExpectationTarget(_IntentModel):
    """A measurable target, e.g. `PowerConsumer(KWh) IS_LESS_THAN 0.6`."""

    target_name: NonEmptyText
    target_condition: TargetCondition
    target_value_range: float

    @field_validator("target_value_range", mode="before")
    @classmethod
    def reject_non_numbers(cls, value):
        """Booleans and strings are not target values, even if pydantic could coerce them."""
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError("targetValueRange must be a number")
        return value

    @field_validator("target_value_range")
    @classmethod
    def require_finite(cls, value: float) -> float:
        """Reject NaN and infinities."""
        if not math.isfinite(value):
            raise ValueError("targetValueRange must be finite")
        return value


class IntentExpectation(_IntentModel):
    """The single expectation of an intent: what to ensure, on what, up to which targets."""

    expectation_id: NonEmptyText
    expectation_verb: ExpectationVerb
    expectation_objects: tuple[ExpectationObject, ...] = ()
    expectation_targets: tuple[ExpectationTarget, ...] = Field(min_length=1)

    @field_validator("expectation_id", mode="before")
    @classmethod
    def id_as_text(cls, value):
        """YAML reads `expectationId: 1` as an integer; the id is text."""
        if isinstance(value, int) and not isinstance(value, bool):
            return str(value)
        return value

    @model_validator(mode="after")
    def unique_target_names(self) -> "IntentExpectation":
        """Each targetName appears once."""
        names = [target.target_name for target in self.expectation_targets]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ValueError(f"duplicate targetName: {', '.join(duplicates)}")
        return self

    def target(self, name: str) -> ExpectationTarget | None:
        """Look a target up by name"""
        for target in self.expectation_targets:
            if target.target_name == name:
                return target
        return None


class IntentDocument(_IntentModel):
    """An intent: a user label and exactly one expectation."""

    user_label: NonEmptyText
    intent_expectation: IntentExpectation

    @property
    def targets(self) -> tuple[ExpectationTarget, ...]:
        """Shortcut to the expectation targets"""
        return self.intent_expectation.expectation_targets
