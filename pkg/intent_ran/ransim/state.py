# SPDX-License-Identifier: MIT

"""
intent_ran.ransim.state

Mutable state of one simulated network: BS configuration and placement,
UE positions, mobility and traffic, per-UE FIFO queues, attachments and
the random streams that drive them.

All randomness flows through four generators spawned from the scenario
seed (placement, mobility, traffic, shadowing), so two states built from
the same configuration evolve identically.
"""

import json
import logging
import math
from collections import deque
from dataclasses import asdict, dataclass, field

import numpy as np

from intent_ran.ransim import ScenarioConfig
from intent_ran.ransim.cqi import CqiTable

NO_BS = -1


@dataclass(slots=True)
class Packet:
    """A downlink packet; arrival and departure are stamped in ms at TTI granularity."""

    size_bits: int
    arrival_ms: float
    depart_ms: float | None = None
    remaining_bits: float = field(default=-1.0)

    def __post_init__(self):
        if self.remaining_bits < 0:
            self.remaining_bits = float(self.size_bits)

    @property
    def departed(self) -> bool:
        """True once the last bit has been sent"""
        return self.depart_ms is not None

    @property
    def queue_ms(self) -> float:
        """T^out - T^in"""
        if self.depart_ms is None:
            raise ValueError("packet has not departed")
        return self.depart_ms - self.arrival_ms


@dataclass(frozen=True)
class BsState:
    """Read-only view of one BS."""

    bs_id: int
    x: float
    y: float
    tx_power_dbm: float
    antenna_angle_deg: float
    asleep: bool
    total_rbs: int
    load: float
    energy_w: float
    attached_ues: tuple[int, ...]
    buffer: tuple[Packet, ...]


@dataclass(frozen=True)
class UeState:
    """Read-only view of one UE."""

    ue_id: int
    x: float
    y: float
    speed_ms: float
    heading_rad: float
    serving_bs: int | None
    cqi: int
    arrival_rate_pps: float
    allocated_rbs: int
    queue: tuple[Packet, ...]


def grid_positions(num_bs: int, inter_site_distance_m: float) -> np.ndarray:
    """
    BS sites on a hexagonal-style grid: rows of `ceil(sqrt(M))` sites,
    odd rows shifted by half a site.
    """
    cols = math.ceil(math.sqrt(num_bs))
    row_pitch = inter_site_distance_m * math.sqrt(3.0) / 2.0
    positions = []
    for index in range(num_bs):
        row, col = divmod(index, cols)
        x = col * inter_site_distance_m + (row % 2) * inter_site_distance_m / 2.0
        positions.append((x, row * row_pitch))
    return np.asarray(positions, dtype=float)


class NetworkState:
    """
    Full simulator state. Arrays are indexed by BS id (length M), UE id
    (length K) or both (M x K).
    """

    def __init__(self, config: ScenarioConfig, log: logging.Logger | None = None):
        self._config = config
        self._log = log or logging.getLogger(__name__)
        self._cqi = CqiTable.from_config(config.cqi_table)

        placement, mobility, traffic, shadow = (
            np.random.default_rng(seq)
            for seq in np.random.SeedSequence(config.rng_seed).spawn(4)
        )
        self.rng_mobility = mobility
        self.rng_traffic = traffic
        self.rng_shadow = shadow

        m, k = config.num_bs, config.num_ue
        self.bs_xy = grid_positions(m, config.inter_site_distance_m)
        margin = config.inter_site_distance_m / 2.0
        self.area_min = self.bs_xy.min(axis=0) - margin
        self.area_max = self.bs_xy.max(axis=0) + margin

        self.tx_power_dbm = np.full(m, config.initial_tx_power_dbm, dtype=float)
        self.antenna_angle_deg = np.full(m, config.initial_antenna_angle_deg, dtype=float)
        self.asleep = np.zeros(m, dtype=bool)
        self.total_rbs = config.num_rbs
        self.load = np.zeros(m, dtype=float)
        self.energy_w = np.zeros(m, dtype=float)
        self.rr_pointer = np.zeros(m, dtype=int)

        self.ue_xy = placement.uniform(self.area_min, self.area_max, size=(k, 2))
        self.speed_ms = np.abs(
            placement.normal(
                config.ue_speed_mean_ms, math.sqrt(config.ue_speed_var), size=k
            )
        )
        self.heading_rad = mobility.uniform(0.0, 2.0 * math.pi, size=k)
        self.arrival_rate_pps = traffic.choice(
            np.asarray(config.arrival_rates_pps, dtype=float), size=k
        )
        self.next_arrival_ms = traffic.exponential(1000.0 / self.arrival_rate_pps)
        self.arrivals = np.zeros(k, dtype=int)
        self.queues: list[deque[Packet]] = [deque() for _ in range(k)]
        self.queued_bits = np.zeros(k, dtype=float)

        low, high = config.shadow_range_db
        self.shadow_db = shadow.uniform(low, high, size=(m, k))

        self.serving = np.full(k, NO_BS, dtype=int)
        self.cqi = np.zeros(k, dtype=int)
        self.allocated_rbs = np.zeros(k, dtype=int)
        self.gain_db = np.zeros((m, k), dtype=float)
        self.rx_power_dbm = np.zeros((m, k), dtype=float)

        self.now_ms = 0
        self.tick = 0
        self.last_mobility_ms = 0
        self.next_heading_ms = config.heading_interval_ms
        self.next_shadow_ms = config.shadow_coherence_ms
        self.radio_dirty = True

        self.log.debug(
            self.log_msg(
                f"initialized {m} BSs, {k} UEs, {self.total_rbs} RBs per BS, "
                f"area {self.area_max - self.area_min} m"
            )
        )

    @property
    def log(self) -> logging.Logger:
        """Getter for `log` property"""
        return self._log

    def log_msg(self, message: str) -> str:
        """Tag a log message with the class name"""
        return f"[{self.__class__.__name__.upper()}] {message}"

    @property
    def config(self) -> ScenarioConfig:
        """Getter for `config` property"""
        return self._config

    @property
    def cqi_table(self) -> CqiTable:
        """Getter for `cqi_table` property"""
        return self._cqi

    @property
    def num_bs(self) -> int:
        """M"""
        return self._config.num_bs

    @property
    def num_ue(self) -> int:
        """K"""
        return self._config.num_ue

    def attached(self, bs_id: int) -> np.ndarray:
        """Ids of the UEs served by a BS"""
        return np.flatnonzero(self.serving == bs_id)

    def power_index(self, bs_id: int) -> int:
        """Position of the BS transmit power among the configured levels"""
        return self._config.tx_power_levels_dbm.index(float(self.tx_power_dbm[bs_id]))

    def angle_index(self, bs_id: int) -> int:
        """Position of the BS antenna angle among the configured angles"""
        return self._config.antenna_angles_deg.index(
            float(self.antenna_angle_deg[bs_id])
        )

    def bs_state(self, bs_id: int) -> BsState:
        """Snapshot record of one BS"""
        ues = self.attached(bs_id)
        buffer = sorted(
            (packet for ue in ues for packet in self.queues[ue]),
            key=lambda packet: packet.arrival_ms,
        )
        return BsState(
            bs_id=bs_id,
            x=float(self.bs_xy[bs_id, 0]),
            y=float(self.bs_xy[bs_id, 1]),
            tx_power_dbm=float(self.tx_power_dbm[bs_id]),
            antenna_angle_deg=float(self.antenna_angle_deg[bs_id]),
            asleep=bool(self.asleep[bs_id]),
            total_rbs=self.total_rbs,
            load=float(self.load[bs_id]),
            energy_w=float(self.energy_w[bs_id]),
            attached_ues=tuple(int(ue) for ue in ues),
            buffer=tuple(buffer),
        )

    def ue_state(self, ue_id: int) -> UeState:
        """Snapshot record of one UE"""
        serving = int(self.serving[ue_id])
        return UeState(
            ue_id=ue_id,
            x=float(self.ue_xy[ue_id, 0]),
            y=float(self.ue_xy[ue_id, 1]),
            speed_ms=float(self.speed_ms[ue_id]),
            heading_rad=float(self.heading_rad[ue_id]),
            serving_bs=None if serving == NO_BS else serving,
            cqi=int(self.cqi[ue_id]),
            arrival_rate_pps=float(self.arrival_rate_pps[ue_id]),
            allocated_rbs=int(self.allocated_rbs[ue_id]),
            queue=tuple(self.queues[ue_id]),
        )

    def snapshot(self) -> dict:
        """Debugging dump of the whole state"""
        return {
            "now_ms": self.now_ms,
            "tick": self.tick,
            "bs": [asdict(self.bs_state(i)) for i in range(self.num_bs)],
            "ue": [asdict(self.ue_state(j)) for j in range(self.num_ue)],
            "rr_pointer": [int(p) for p in self.rr_pointer],
            "next_arrival_ms": [float(t) for t in self.next_arrival_ms],
            "shadow_db": self.shadow_db.round(9).tolist(),
        }

    def snapshot_json(self) -> str:
        """`snapshot()` as JSON text"""
        return json.dumps(self.snapshot(), sort_keys=True, indent=2) + "\n"


def init_scenario(
    config: ScenarioConfig | dict, log: logging.Logger | None = None
) -> NetworkState:
    """
    Build the initial state of a scenario: BSs on the grid at the initial
    power and angle, UEs uniformly placed, all random streams seeded.
    Raises ConfigError on an invalid configuration.
    """
    if not isinstance(config, ScenarioConfig):
        config = ScenarioConfig.load(config)
    return NetworkState(config, log)
