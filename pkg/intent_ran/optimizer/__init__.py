# SPDX-License-Identifier: MIT

"""
Optimizer package: BS agents that pick energy-saving operations. A DQN
agent is trained against the reward of the network objectives, next to a
tabular Q-learning baseline and a static baseline that never acts.
"""

from pydantic import BaseModel, ConfigDict, Field

from intent_ran.constants import (
    DISCOUNT,
    EXPLOIT_PROBABILITY,
    LEARNING_RATES,
    REPLAY_CAPACITY,
    REWARD_DELTAS,
    STEP_DURATION_MS,
    STEPS_PER_EPISODE,
    TARGET_SYNC_PERIOD,
)


class Hyperparams(BaseModel):
    """
    A class for the training hyperparameters. `exploit_probability` is the
    chance of acting greedily; the rest of the time the action is uniform.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    discount: float = Field(DISCOUNT, ge=0, lt=1)
    exploit_probability: float = Field(EXPLOIT_PROBABILITY, ge=0, le=1)
    target_sync_period: int = Field(TARGET_SYNC_PERIOD, ge=1)
    learning_rate: float = Field(LEARNING_RATES[0], gt=0)
    batch_size: int = Field(32, ge=1)
    steps_per_episode: int = Field(STEPS_PER_EPISODE, ge=1)
    step_duration_ms: int = Field(STEP_DURATION_MS, ge=1)
    hidden_layers: tuple[int, ...] = (64, 64)
    replay_capacity: int = Field(REPLAY_CAPACITY, ge=1)
    shared_agent: bool = True
    include_noop: bool = True
    tabular_learning_rate: float = Field(0.1, gt=0, le=1)
    bins: int = Field(4, ge=1)

    @property
    def epsilon(self) -> float:
        """Exploration probability"""
        return 1.0 - self.exploit_probability


class RewardConfig(BaseModel):
    """
    A class for the reward settings: the weights of the throughput, energy
    and latency terms, the window E^max is spread over, and optional
    overrides of the bounds the intent does not fix.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    deltas: tuple[float, float, float] = REWARD_DELTAS
    energy_window_s: float = Field(600.0, gt=0)
    r_max_bps: float | None = Field(default=None, gt=0)
    e_min_w: float | None = Field(default=None, ge=0)
    t_min_ms: float | None = Field(default=None, ge=0)
