# SPDX-License-Identifier: MIT

"""
intent_ran.sig.exceptions

Errors raised while loading a softgoal interdependency graph or decomposing
an intent with it.
"""

from intent_ran.exceptions import IntentRanError


class SigFormatError(IntentRanError):
    """The SIG document is not valid JSON or lacks a member"""


class DimensionError(IntentRanError):
    """Weight vector or matrix shape does not match the objectives and operations"""

    def __init__(self, message: str, expected: tuple, actual: tuple):
        super().__init__(f"{message}: expected shape {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class WeightRangeError(IntentRanError):
    """A weight lies outside [-1, 1]"""

    def __init__(self, member: str, index: tuple, value: float):
        super().__init__(
            f"Weight {member}{list(index)} = {value} is outside [-1, 1]", member
        )
        self.member = member
        self.index = index
        self.value = value


class EmptyInputError(IntentRanError):
    """A score was requested over an empty vector"""


class InconsistentModelError(IntentRanError):
    """The SIG model and the network ontology disagree on objectives or operations"""
