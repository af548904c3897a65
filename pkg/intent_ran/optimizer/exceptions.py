# SPDX-License-Identifier: MIT

"""
intent_ran.optimizer.exceptions

Errors raised while training or evaluating BS agents.
"""

from intent_ran.exceptions import IntentRanError


class BoundsError(IntentRanError):
    """A reward normalization range is empty or a weight is negative"""

    def __init__(self, name: str, low: float, high: float):
        super().__init__(f"Reward bound {name}: min {low} must be below max {high}")
        self.name = name
        self.low = low
        self.high = high


class InsufficientDataError(IntentRanError):
    """The replay memory holds fewer transitions than a minibatch"""

    def __init__(self, size: int, batch_size: int):
        super().__init__(
            f"Replay memory holds {size} transitions, need {batch_size}"
        )
        self.size = size
        self.batch_size = batch_size


class EmptyActionSetError(IntentRanError):
    """There is no operation for the agents to choose from"""
