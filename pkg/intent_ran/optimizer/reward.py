# SPDX-License-Identifier: MIT

"""
intent_ran.optimizer.reward

Reward of a BS agent: the normalized throughput it delivers, minus the
normalized energy it spends and the normalized latency of its packets,

    r = d1 (R - Rmin) / (Rmax - Rmin)
      - d2 (E - Emin) / (Emax - Emin)
      - d3 (T - Tmin) / (Tmax - Tmin)

with every metric clipped into its range first, so r lies in
[-(d2 + d3), d1].
"""

import math
from dataclasses import dataclass

import numpy as np

from intent_ran.intent import ObjectiveBounds
from intent_ran.optimizer import RewardConfig
from intent_ran.optimizer.exceptions import BoundsError
from intent_ran.ransim import ScenarioConfig
from intent_ran.ransim.cqi import CqiTable
from intent_ran.ransim.simulator import TickMetrics


@dataclass(frozen=True)
class RewardWeights:
    """Weights d1..d3 and the normalization ranges of the three metrics."""

    delta_thpt: float
    delta_energy: float
    delta_latency: float
    r_min: float
    r_max: float
    e_min: float
    e_max: float
    t_min: float
    t_max: float

    def __post_init__(self):
        for name in ("delta_thpt", "delta_energy", "delta_latency"):
            value = getattr(self, name)
            if not (value >= 0 and math.isfinite(value)):
                raise BoundsError(name, 0.0, value)
        for name, low, high in (
            ("R", self.r_min, self.r_max),
            ("E", self.e_min, self.e_max),
            ("T", self.t_min, self.t_max),
        ):
            if not low < high:
                raise BoundsError(name, low, high)

    @classmethod
    def from_bounds(
        cls,
        bounds: ObjectiveBounds,
        scenario: ScenarioConfig,
        config: RewardConfig | None = None,
    ) -> "RewardWeights":
        """
        Derive the ranges from the intent and the scenario: R^min is the
        network throughput bound shared among the K UEs, R^max the full
        carrier at the top CQI SINR, E^max the energy bound spread over the
        energy window as watts, E^min the standby power, T^max the latency
        bound and T^min one packet over a full carrier at the top CQI.
        """
        config = config or RewardConfig()
        table = CqiTable.from_config(scenario.cqi_table)
        r_max = config.r_max_bps or scenario.num_rbs * scenario.rb_bandwidth_hz * math.log2(
            1.0 + 10.0 ** (table.top_sinr_db / 10.0)
        )
        t_min = config.t_min_ms
        if t_min is None:
            t_min = (
                scenario.packet_bits
                / (table.top_tti_bits_per_rb * scenario.num_rbs)
                * scenario.tti_ms
            )
        e_min = scenario.standby_power_w if config.e_min_w is None else config.e_min_w
        d1, d2, d3 = config.deltas
        return cls(
            delta_thpt=d1,
            delta_energy=d2,
            delta_latency=d3,
            r_min=bounds.throughput_bps / scenario.num_ue,
            r_max=r_max,
            e_min=e_min,
            e_max=bounds.energy_joules / config.energy_window_s,
            t_min=t_min,
            t_max=bounds.latency_max,
        )

    @property
    def bounds(self) -> tuple[float, float]:
        """Lowest and highest reward reachable"""
        return -(self.delta_energy + self.delta_latency), self.delta_thpt

    def normalized(self, thpt_bps: float, energy_w: float, latency_ms: float):
        """The three metrics clipped and scaled into [0, 1]"""
        return (
            _scale(thpt_bps, self.r_min, self.r_max),
            _scale(energy_w, self.e_min, self.e_max),
            _scale(latency_ms, self.t_min, self.t_max),
        )


def _scale(value: float, low: float, high: float) -> float:
    return (float(np.clip(value, low, high)) - low) / (high - low)


def reward(thpt_bps: float, energy_w: float, latency_ms: float, w: RewardWeights) -> float:
    """Reward of one agent for one step"""
    thpt, energy, latency = w.normalized(thpt_bps, energy_w, latency_ms)
    return w.delta_thpt * thpt - w.delta_energy * energy - w.delta_latency * latency


def reward_inputs(
    metrics: TickMetrics, bs_id: int, w: RewardWeights
) -> tuple[float, float, float]:
    """
    Throughput, energy and latency of one BS for the reward. A sleeping BS
    serves nothing, so its latency is the worst allowed; an awake BS that
    completed no packet has nothing waiting and gets the best latency.
    """
    energy = metrics.energy_w[bs_id]
    if metrics.asleep[bs_id]:
        return 0.0, energy, w.t_max
    latency = metrics.avg_latency_ms[bs_id]
    return metrics.avg_thpt_bps[bs_id], energy, w.t_min if latency is None else latency
