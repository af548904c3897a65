# SPDX-License-Identifier: MIT

"""
RAN simulator package: scenario configuration, BS/UE state, channel and
energy models, RB scheduling and the per-step metrics of the network.

Default values are those of the urban-macro evaluation setup: 40 BSs,
320 UEs, 40 MHz carriers of 180 kHz RBs at 3.5 GHz, transmit power levels
of 50 to 53 dBm.
"""

import math

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from intent_ran.constants import (
    ANTENNA_ANGLES_DEG,
    ARRIVAL_RATES_PPS,
    BANDWIDTH_CHOICES_MHZ,
    BS_ALTITUDE_M,
    CARRIER_FREQUENCY_GHZ,
    INTER_SITE_DISTANCE_M,
    MIN_RX_POWER_DBM,
    NOISE_DENSITY_DBM_HZ,
    PACKET_BITS,
    PAPER_NUM_BS,
    PAPER_NUM_UE,
    POWER_MODEL_G,
    POWER_MODEL_H,
    RB_BANDWIDTH_KHZ,
    SHADOW_RANGE_DB,
    TX_POWER_LEVELS_DBM,
    UE_SPEED_MEAN_MS,
    UE_SPEED_VAR,
)
from intent_ran.ransim.exceptions import ConfigError


class _ConfigModel(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class CqiTableConfig(_ConfigModel):
    """
    A replacement CQI table: one SINR threshold, coding rate and per-RB
    bit count per CQI level, plus the maximum coding rate.
    """

    sinr_thresholds_db: tuple[float, ...] = Field(min_length=1)
    coding_rates: tuple[float, ...] = Field(min_length=1)
    rb_bits: tuple[int, ...] = Field(min_length=1)
    max_coding_rate: float = Field(gt=0)

    @model_validator(mode="after")
    def same_lengths(self) -> "CqiTableConfig":
        """One entry per level in every column"""
        sizes = {len(self.sinr_thresholds_db), len(self.coding_rates), len(self.rb_bits)}
        if len(sizes) != 1:
            raise ValueError("CQI table columns must have the same length")
        return self


class ScenarioConfig(_ConfigModel):
    """
    A class for the scenario configuration. Unknown keys and out-of-range
    values are rejected; build it with `ScenarioConfig.load` to get a
    ConfigError instead of a pydantic ValidationError.
    """

    num_bs: int = Field(PAPER_NUM_BS, ge=1)
    num_ue: int = Field(PAPER_NUM_UE, ge=1)
    bs_altitude_m: float = Field(BS_ALTITUDE_M, gt=0)
    bandwidth_mhz: float = 40.0
    rb_bandwidth_khz: float = Field(RB_BANDWIDTH_KHZ, gt=0)
    tx_power_levels_dbm: tuple[float, ...] = Field(TX_POWER_LEVELS_DBM, min_length=1)
    initial_tx_power_dbm: float = TX_POWER_LEVELS_DBM[-1]
    power_model_g: float = Field(POWER_MODEL_G, ge=0)
    power_model_h: float = Field(POWER_MODEL_H, ge=0)
    energy_mix: float = Field(0.5, ge=0, le=1)
    carrier_frequency_ghz: float = Field(CARRIER_FREQUENCY_GHZ, gt=0)
    antenna_angles_deg: tuple[float, ...] = Field(ANTENNA_ANGLES_DEG, min_length=1)
    initial_antenna_angle_deg: float = ANTENNA_ANGLES_DEG[0]
    shadow_range_db: tuple[float, float] = SHADOW_RANGE_DB
    shadow_coherence_ms: int = Field(1000, ge=1)
    noise_density_dbm_hz: float = NOISE_DENSITY_DBM_HZ
    min_rx_power_dbm: float = MIN_RX_POWER_DBM
    arrival_rates_pps: tuple[float, ...] = Field(ARRIVAL_RATES_PPS, min_length=1)
    packet_bits: int = Field(PACKET_BITS, gt=0)
    ue_speed_mean_ms: float = Field(UE_SPEED_MEAN_MS, ge=0)
    ue_speed_var: float = Field(UE_SPEED_VAR, ge=0)
    heading_interval_ms: int = Field(1000, ge=1)
    mobility_update_ms: int = Field(100, ge=1)
    tti_ms: int = Field(1, ge=1)
    inter_site_distance_m: float = Field(INTER_SITE_DISTANCE_M, gt=0)
    standby_power_w: float = Field(0.0, ge=0)
    rng_seed: int = Field(0, ge=0)
    cqi_table: CqiTableConfig | None = None

    @model_validator(mode="after")
    def check_invariants(self) -> "ScenarioConfig":
        """Cross-field invariants"""
        if self.bandwidth_mhz not in BANDWIDTH_CHOICES_MHZ:
            raise ValueError(
                f"bandwidth_mhz must be one of {BANDWIDTH_CHOICES_MHZ}, "
                f"got {self.bandwidth_mhz:g}"
            )
        if self.num_rbs < 1:
            raise ValueError("the carrier holds no complete RB")
        if list(self.tx_power_levels_dbm) != sorted(set(self.tx_power_levels_dbm)):
            raise ValueError("tx_power_levels_dbm must be strictly increasing")
        if self.initial_tx_power_dbm not in self.tx_power_levels_dbm:
            raise ValueError("initial_tx_power_dbm must be one of tx_power_levels_dbm")
        if any(not 0 <= angle < 90 for angle in self.antenna_angles_deg):
            raise ValueError("antenna angles must lie in [0, 90) degrees")
        if self.initial_antenna_angle_deg not in self.antenna_angles_deg:
            raise ValueError(
                "initial_antenna_angle_deg must be one of antenna_angles_deg"
            )
        low, high = self.shadow_range_db
        if low > high:
            raise ValueError("shadow_range_db must be (low, high) with low <= high")
        if any(not (rate > 0 and math.isfinite(rate)) for rate in self.arrival_rates_pps):
            raise ValueError("arrival rates must be positive")
        if self.mobility_update_ms % self.tti_ms:
            raise ValueError("mobility_update_ms must be a multiple of tti_ms")
        return self

    @classmethod
    def load(cls, data: dict | None = None, **overrides) -> "ScenarioConfig":
        """Validate a `[scenario]` table, raising ConfigError on failure"""
        values = {**(data or {}), **overrides}
        try:
            return cls.model_validate(values)
        except ValidationError as exc:
            details = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or 'scenario'}: {err['msg']}"
                for err in exc.errors()
            )
            raise ConfigError(f"Invalid scenario: {details}", "scenario") from exc

    def replace(self, **overrides) -> "ScenarioConfig":
        """A validated copy with some fields changed"""
        return ScenarioConfig.load(self.model_dump(), **overrides)

    @property
    def num_rbs(self) -> int:
        """r_i = floor(B_i / B^RB)"""
        return int((self.bandwidth_mhz * 1000.0) // self.rb_bandwidth_khz)

    @property
    def rb_bandwidth_hz(self) -> float:
        """B^RB in Hz"""
        return self.rb_bandwidth_khz * 1e3

    @property
    def carrier_bandwidth_hz(self) -> float:
        """B_i in Hz"""
        return self.bandwidth_mhz * 1e6
