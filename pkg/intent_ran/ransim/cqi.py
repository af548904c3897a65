# SPDX-License-Identifier: MIT

"""
intent_ran.ransim.cqi

Mapping from SINR to CQI level, coding rate and the bits one RB carries in
one TTI. The default table has 15 levels with SINR thresholds evenly spaced
from -6.7 dB to 22.7 dB, coding rates rising from 0.076 to 0.926 and QPSK,
16QAM and 64QAM for levels 1-6, 7-9 and 10-15. An RB carries
12 subcarriers x 14 symbols x modulation order raw bits per TTI.
"""

from dataclasses import dataclass

import numpy as np

from intent_ran.constants import SUBCARRIERS_PER_RB, SYMBOLS_PER_TTI
from intent_ran.ransim import CqiTableConfig
from intent_ran.ransim.exceptions import ConfigError

DEFAULT_LEVELS = 15
DEFAULT_MIN_SINR_DB = -6.7
DEFAULT_MAX_SINR_DB = 22.7
DEFAULT_MIN_CODING_RATE = 0.076
DEFAULT_MAX_CODING_RATE = 0.926


@dataclass(frozen=True)
class CqiTable:
    """
    Per CQI level n = 1..N: SINR threshold, coding rate and raw bits per RB
    per TTI. Level 0 means out of range and is never schedulable.
    """

    sinr_thresholds_db: tuple[float, ...]
    coding_rates: tuple[float, ...]
    rb_bits: tuple[int, ...]
    max_coding_rate: float

    def __post_init__(self):
        if not (
            len(self.sinr_thresholds_db) == len(self.coding_rates) == len(self.rb_bits)
        ) or not self.coding_rates:
            raise ConfigError("CQI table columns must be non-empty and equally long")
        for column in (self.sinr_thresholds_db, self.coding_rates, self.rb_bits):
            if any(b < a for a, b in zip(column, column[1:])):
                raise ConfigError("CQI table must be monotonically increasing")

    @classmethod
    def from_config(cls, config: CqiTableConfig | None) -> "CqiTable":
        """The configured table, or the default one"""
        if config is None:
            return default_cqi_table()
        return cls(
            config.sinr_thresholds_db,
            config.coding_rates,
            config.rb_bits,
            config.max_coding_rate,
        )

    @property
    def levels(self) -> int:
        """N"""
        return len(self.coding_rates)

    def level(self, sinr_db):
        """Highest level whose threshold the SINR reaches (0 if none)"""
        levels = np.searchsorted(
            np.asarray(self.sinr_thresholds_db), np.asarray(sinr_db, dtype=float), side="right"
        )
        return int(levels) if np.ndim(levels) == 0 else levels

    def coding_rate(self, level: int) -> float:
        """varpi of a level, 0 for level 0"""
        return self.coding_rates[level - 1] if level >= 1 else 0.0

    def bits_per_rb(self, level: int) -> int:
        """R^RB of a level, 0 for level 0"""
        return self.rb_bits[level - 1] if level >= 1 else 0

    def schedulable(self, level: int) -> bool:
        """zeta = 1: a valid level whose coding rate does not exceed the maximum"""
        return level >= 1 and self.coding_rate(level) <= self.max_coding_rate

    def schedulable_mask(self, levels) -> np.ndarray:
        """Vectorized `schedulable`"""
        levels = np.asarray(levels, dtype=int)
        rates = np.concatenate(([0.0], np.asarray(self.coding_rates)))[levels]
        return (levels >= 1) & (rates <= self.max_coding_rate)

    def tti_bits(self, level: int, num_rbs: int) -> float:
        """Bits delivered in one TTI: varpi r R^RB"""
        return self.coding_rate(level) * num_rbs * self.bits_per_rb(level)

    @property
    def top_sinr_db(self) -> float:
        """Threshold of the highest level"""
        return self.sinr_thresholds_db[-1]

    @property
    def top_tti_bits_per_rb(self) -> float:
        """varpi R^RB at the highest level"""
        return self.coding_rates[-1] * self.rb_bits[-1]


def default_cqi_table() -> CqiTable:
    """The 15-level table described in the module docstring"""
    thresholds = np.linspace(DEFAULT_MIN_SINR_DB, DEFAULT_MAX_SINR_DB, DEFAULT_LEVELS)
    rates = np.linspace(DEFAULT_MIN_CODING_RATE, DEFAULT_MAX_CODING_RATE, DEFAULT_LEVELS)
    orders = [2] * 6 + [4] * 3 + [6] * 6
    return CqiTable(
        sinr_thresholds_db=tuple(round(float(t), 6) for t in thresholds),
        coding_rates=tuple(round(float(r), 6) for r in rates),
        rb_bits=tuple(SUBCARRIERS_PER_RB * SYMBOLS_PER_TTI * q for q in orders),
        max_coding_rate=DEFAULT_MAX_CODING_RATE,
    )
