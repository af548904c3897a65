# SPDX-License-Identifier: MIT

"""
intent_ran.ransim.exceptions

Errors raised by the RAN simulator.
"""

from intent_ran.exceptions import IntentRanError
from intent_ran.ontology.exceptions import InvalidOpError

__all__ = [
    "CapacityError",
    "ConfigError",
    "DomainError",
    "InvalidOpError",
    "SchedulingError",
]


class ConfigError(IntentRanError):
    """The scenario or experiment configuration violates an invariant"""


class DomainError(IntentRanError):
    """A channel formula was evaluated outside its domain"""

    def __init__(self, message: str, value: float | None = None):
        super().__init__(message)
        self.value = value


class CapacityError(IntentRanError):
    """More RBs were allocated than the BS owns"""

    def __init__(self, bs_id: int, allocated: int, total: int):
        super().__init__(
            f"BS {bs_id} allocated {allocated} RBs but only owns {total}"
        )
        self.bs_id = bs_id
        self.allocated = allocated
        self.total = total


class SchedulingError(IntentRanError):
    """A latency was requested for a link whose coding rate exceeds the maximum"""
