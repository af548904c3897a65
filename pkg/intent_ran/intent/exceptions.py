# SPDX-License-Identifier: MIT

"""
intent_ran.intent.exceptions

Errors raised while reading an intent document or deriving its objective bounds.
"""

from intent_ran.exceptions import IntentRanError


class IntentSyntaxError(IntentRanError):
    """The document is not well-formed YAML or JSON"""


class IntentSchemaError(IntentRanError):
    """The document parsed but violates the intent schema"""


class MissingTargetError(IntentRanError):
    """A target required to derive the objective bounds is absent"""

    def __init__(self, target_name: str):
        super().__init__(f"Intent has no expectation target '{target_name}'")
        self.target_name = target_name


class ConditionMismatchError(IntentRanError):
    """A target uses the wrong condition for the bound it feeds"""

    def __init__(self, target_name: str, expected: str, actual: str):
        super().__init__(
            f"Target '{target_name}' must use {expected}, found {actual}"
        )
        self.target_name = target_name
        self.expected = expected
        self.actual = actual
