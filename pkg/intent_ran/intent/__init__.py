# SPDX-License-Identifier: MIT

"""
Intent package: the intent document models, the YAML/JSON codec and the
objective bounds an intent imposes on the network.
"""

from dataclasses import dataclass

from intent_ran.intent.exceptions import IntentSchemaError


@dataclass(frozen=True)
class ObjectiveBounds:
    """
    Bounds the intent puts on the network: the maximum energy E^max (kWh),
    the minimum downlink throughput R^min (Gbps) and the maximum first packet
    latency T^max (ms).
    """

    energy_max: float
    throughput_min: float
    latency_max: float

    def __post_init__(self):
        for name in ("energy_max", "throughput_min", "latency_max"):
            if not getattr(self, name) > 0:
                raise IntentSchemaError(
                    f"Objective bound {name} must be strictly positive, "
                    f"got {getattr(self, name)}"
                )

    @property
    def energy_joules(self) -> float:
        """E^max in joules"""
        return self.energy_max * 3.6e6

    @property
    def throughput_bps(self) -> float:
        """R^min in bits per second"""
        return self.throughput_min * 1e9

    def check(
        self, energy_kwh: float, throughput_gbps: float, latency_ms: float
    ) -> dict[str, bool]:
        """Evaluate the energy, throughput and latency constraints against measured totals"""
        return {
            "energy": energy_kwh <= self.energy_max,
            "throughput": throughput_gbps >= self.throughput_min,
            "latency": latency_ms <= self.latency_max,
        }


def check_constraints(
    bounds: ObjectiveBounds,
    energy_kwh: float,
    throughput_gbps: float,
    latency_ms: float,
) -> dict[str, bool]:
    """
    Check measured network totals against the bounds of an intent: total
    energy at most E^max, summed downlink throughput at least R^min and
    first packet latency at most T^max.
    """
    return bounds.check(energy_kwh, throughput_gbps, latency_ms)
