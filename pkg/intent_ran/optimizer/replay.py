# SPDX-License-Identifier: MIT

"""
intent_ran.optimizer.replay

Experience replay: a bounded FIFO of transitions sampled uniformly.
"""

from collections import deque
from typing import NamedTuple

import numpy as np


class Transition(NamedTuple):
    """One step of one agent."""

    obs: np.ndarray
    action: int
    reward: float
    next_obs: np.ndarray


class ReplayMemory:
    """Ring buffer of transitions; the oldest are evicted first."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError(f"replay capacity must be >= 1, got {capacity}")
        self._buffer: deque[Transition] = deque(maxlen=capacity)

    @property
    def capacity(self) -> int:
        """Getter for `capacity` property"""
        return self._buffer.maxlen

    def __len__(self):
        return len(self._buffer)

    def __iter__(self):
        return iter(self._buffer)

    def push(self, transition: Transition):
        """Store a transition"""
        self._buffer.append(transition)

    def sample(self, batch_size: int, rng: np.random.Generator):
        """
        A uniform minibatch without replacement, as stacked arrays
        (obs, actions, rewards, next_obs).
        """
        indices = rng.choice(len(self._buffer), size=batch_size, replace=False)
        batch = [self._buffer[i] for i in indices]
        return (
            np.stack([t.obs for t in batch]),
            np.asarray([t.action for t in batch], dtype=int),
            np.asarray([t.reward for t in batch], dtype=float),
            np.stack([t.next_obs for t in batch]),
        )
