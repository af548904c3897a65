# SPDX-License-Identifier: MIT

"""
intent_ran.ransim.energy

BS load and power consumption. The maximum power of a BS is affine in its
transmit power in watts, p_max = g p + h. A BS consumes the share `eta` of
p_max regardless of load and the rest in proportion to its load.
"""

from typing import Sequence

import numpy as np

from intent_ran.ransim import ScenarioConfig
from intent_ran.ransim.channel import dbm_to_watts
from intent_ran.ransim.exceptions import CapacityError
from intent_ran.ransim.state import BsState


def max_power_w(tx_power_dbm, g: float, h: float):
    """p_max = g * p_lin + h, with p_lin the transmit power in W"""
    return g * dbm_to_watts(tx_power_dbm) + h


def energy_from_load(load, p_max, energy_mix: float):
    """E = (1 - eta) theta p_max + eta p_max"""
    return (1.0 - energy_mix) * np.asarray(load, dtype=float) * p_max + energy_mix * p_max


def compute_load(bs_id: int, total_rbs: int, allocations: Sequence[int]) -> float:
    """
    theta_i = sum_j r_ij / r_i over the UEs attached to the BS. Raises
    CapacityError when the allocations exceed the RBs the BS owns.
    """
    allocated = int(np.sum(np.asarray(allocations, dtype=int))) if len(allocations) else 0
    if allocated > total_rbs or any(int(rbs) < 0 for rbs in allocations):
        raise CapacityError(bs_id, allocated, total_rbs)
    return allocated / total_rbs


def bs_energy_w(
    load,
    tx_power_dbm,
    asleep,
    g: float,
    h: float,
    energy_mix: float,
    standby_w: float,
):
    """Energy of one or many BSs; sleeping BSs draw the standby power"""
    energy = energy_from_load(load, max_power_w(tx_power_dbm, g, h), energy_mix)
    return np.where(np.asarray(asleep, dtype=bool), standby_w, energy)


def compute_energy(bs: BsState, config: ScenarioConfig) -> float:
    """Energy in W of one BS at its current load and transmit power"""
    return float(
        bs_energy_w(
            bs.load,
            bs.tx_power_dbm,
            bs.asleep,
            config.power_model_g,
            config.power_model_h,
            config.energy_mix,
            config.standby_power_w,
        )
    )
