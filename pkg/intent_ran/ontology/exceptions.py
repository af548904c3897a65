# SPDX-License-Identifier: MIT

"""
intent_ran.ontology.exceptions

Errors raised while building the network ontology.
"""

from intent_ran.exceptions import IntentRanError


class ConflictRuleError(IntentRanError):
    """A conflict rule references unknown objectives or has an invalid priority order"""


class InvalidOpError(IntentRanError):
    """An energy-saving operation is unknown or carries an invalid parameter"""

    def __init__(self, message: str, op=None):
        super().__init__(message)
        self.op = op
