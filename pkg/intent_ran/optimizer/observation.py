# SPDX-License-Identifier: MIT

"""
intent_ran.optimizer.observation

What a BS agent sees before acting: its load, its normalized energy,
throughput and latency from the last step, the positions of its transmit
power and antenna angle among the configured settings, and whether it
sleeps. Every entry lies in [0, 1].
"""

import numpy as np

from intent_ran.optimizer.reward import RewardWeights, reward_inputs
from intent_ran.ransim.simulator import TickMetrics
from intent_ran.ransim.state import NetworkState

OBSERVATION_SIZE = 7

# load, energy, throughput, latency
METRIC_FEATURES = 4


def _fraction(index: int, count: int) -> float:
    return index / (count - 1) if count > 1 else 0.0


def build_observation(
    state: NetworkState, metrics: TickMetrics, bs_id: int, w: RewardWeights
) -> np.ndarray:
    """Observation vector of one BS"""
    thpt, energy, latency = reward_inputs(metrics, bs_id, w)
    norm_thpt, norm_energy, norm_latency = w.normalized(thpt, energy, latency)
    config = state.config
    return np.array(
        [
            float(np.clip(metrics.load[bs_id], 0.0, 1.0)),
            norm_energy,
            norm_thpt,
            norm_latency,
            _fraction(state.power_index(bs_id), len(config.tx_power_levels_dbm)),
            _fraction(state.angle_index(bs_id), len(config.antenna_angles_deg)),
            1.0 if state.asleep[bs_id] else 0.0,
        ],
        dtype=float,
    )


def observe_all(
    state: NetworkState, metrics: TickMetrics, w: RewardWeights
) -> np.ndarray:
    """Observations of every BS, one row each"""
    return np.stack(
        [build_observation(state, metrics, i, w) for i in range(state.num_bs)]
    )


def discretize(observation: np.ndarray, bins: int) -> int:
    """
    Index of the tabular state: each of load, energy, throughput and
    latency is cut into `bins` equal levels, giving bins**4 states.
    """
    levels = np.minimum((observation[:METRIC_FEATURES] * bins).astype(int), bins - 1)
    index = 0
    for level in levels:
        index = index * bins + int(level)
    return index
