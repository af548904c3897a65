# SPDX-License-Identifier: MIT

"""
This module contains constants used throughout intent_ran.
"""

# Expectation target names, as they appear in the intent template
TARGET_ENERGY = "PowerConsumer(KWh)"
TARGET_THROUGHPUT = "aveDLRANUEThpt(Gbps)"
TARGET_LATENCY = "DLFirstPacketLatency(ms)"

# Softgoal interdependency graph defaults
DEFAULT_SATISFACTION_THRESHOLD = 0.5
REPORT_DECIMALS = 2

# Scenario values of the urban-macro evaluation setup
PAPER_NUM_BS = 40
PAPER_NUM_UE = 320
BS_ALTITUDE_M = 25.0
BANDWIDTH_CHOICES_MHZ = (10, 20, 40, 100)
RB_BANDWIDTH_KHZ = 180.0
TX_POWER_LEVELS_DBM = (50.0, 51.0, 52.0, 53.0)
POWER_MODEL_G = 21.45
POWER_MODEL_H = 354.44
CARRIER_FREQUENCY_GHZ = 3.5
ANTENNA_ANGLES_DEG = (0.0, 5.0, 15.0)
SHADOW_RANGE_DB = (-15.0, 15.0)
NOISE_DENSITY_DBM_HZ = -174.0
MIN_RX_POWER_DBM = -5.1
ARRIVAL_RATES_PPS = (1.0, 2.0, 4.0, 8.0)
PACKET_BITS = 320
UE_SPEED_MEAN_MS = 3.0
UE_SPEED_VAR = 1.0
INTER_SITE_DISTANCE_M = 500.0

# Resource grid of one RB during one TTI
SUBCARRIERS_PER_RB = 12
SYMBOLS_PER_TTI = 14

# DQN setup
REWARD_DELTAS = (0.8, 0.6, 0.2)
DISCOUNT = 0.7
EXPLOIT_PROBABILITY = 0.7
TARGET_SYNC_PERIOD = 100
LEARNING_RATES = (0.01, 0.005, 0.001)
REPLAY_CAPACITY = 3000
STEPS_PER_EPISODE = 1000
STEP_DURATION_MS = 100

# CSV headers
METRICS_CSV_HEADER = (
    "tick",
    "bs_id",
    "load",
    "energy_w",
    "avg_thpt_bps",
    "avg_latency_ms",
    "attached_ues",
)
TRACE_CSV_HEADER = ("step", "episode", "reward", "loss", "epsilon", "action")
BENCH_CSV_HEADER = ("num_bs", "mode", "repetitions", "median_ms")

# Output directory override
OUTPUT_DIR_ENV = "INTENT_RAN_OUT"
