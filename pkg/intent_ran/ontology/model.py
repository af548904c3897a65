# SPDX-License-Identifier: MIT

"""
intent_ran.ontology.model

Records of the network knowledge base: objectives, energy-saving
operations, conflict rules and the conflicts found between intent targets.
"""

import re
from dataclasses import dataclass, field
from enum import Enum

from intent_ran.constants import TARGET_ENERGY, TARGET_LATENCY, TARGET_THROUGHPUT
from intent_ran.ontology.exceptions import ConflictRuleError, InvalidOpError


class ObjectiveKind(str, Enum):
    """The three network objectives an energy-saving intent refines into."""

    TOTAL_ENERGY_CONSUMPTION = "TotalEnergyConsumption"
    DOWNLINK_THROUGHPUT = "DownlinkThroughput"
    FIRST_PACKET_LATENCY = "FirstPacketLatency"


class Direction(str, Enum):
    """Optimization direction of an objective."""

    MINIMIZE = "Minimize"
    MAXIMIZE = "Maximize"


OBJECTIVE_DIRECTIONS = {
    ObjectiveKind.TOTAL_ENERGY_CONSUMPTION: Direction.MINIMIZE,
    ObjectiveKind.DOWNLINK_THROUGHPUT: Direction.MAXIMIZE,
    ObjectiveKind.FIRST_PACKET_LATENCY: Direction.MINIMIZE,
}

# target name -> (objective, unit)
TARGET_OBJECTIVES = {
    TARGET_ENERGY: (ObjectiveKind.TOTAL_ENERGY_CONSUMPTION, "kWh"),
    TARGET_THROUGHPUT: (ObjectiveKind.DOWNLINK_THROUGHPUT, "Gbps"),
    TARGET_LATENCY: (ObjectiveKind.FIRST_PACKET_LATENCY, "ms"),
}


@dataclass(frozen=True)
class Objective:
    """A network objective with the bound the intent gives it."""

    kind: ObjectiveKind
    direction: Direction
    bound: float
    unit: str

    def __post_init__(self):
        if OBJECTIVE_DIRECTIONS[self.kind] != self.direction:
            raise ConflictRuleError(
                f"{self.kind.value} must be {OBJECTIVE_DIRECTIONS[self.kind].value}"
            )


class EnergySavingOpKind(str, Enum):
    """Actuations a BS agent can perform."""

    POWER_DELTA = "PowerDelta"
    ANTENNA_ANGLE_SET = "AntennaAngleSet"
    SLEEP = "Sleep"


POWER_DELTAS_DBM = (-1.0, 1.0)
ANTENNA_ANGLE_SETTINGS_DEG = (5.0, 15.0)

_LABEL_RE = re.compile(r"^(PowerDelta|AntennaAngleSet)\(([+-]?\d+(?:\.\d+)?)\)$")


@dataclass(frozen=True)
class EnergySavingOp:
    """
    One energy-saving operation: a transmit power step of +/-1 dBm, an
    antenna angle of 5 or 15 degrees, or sleep (parameter unused).
    """

    kind: EnergySavingOpKind
    parameter: float = 0.0

    def __post_init__(self):
        if not isinstance(self.kind, EnergySavingOpKind):
            raise InvalidOpError(f"Unknown operation kind {self.kind!r}", self)
        if (
            self.kind == EnergySavingOpKind.POWER_DELTA
            and self.parameter not in POWER_DELTAS_DBM
        ):
            raise InvalidOpError(
                f"PowerDelta must be -1 or +1 dBm, got {self.parameter}", self
            )
        if (
            self.kind == EnergySavingOpKind.ANTENNA_ANGLE_SET
            and self.parameter not in ANTENNA_ANGLE_SETTINGS_DEG
        ):
            raise InvalidOpError(
                f"AntennaAngleSet must be 5 or 15 degrees, got {self.parameter}", self
            )

    @property
    def label(self) -> str:
        """Canonical label, e.g. `PowerDelta(+1)` or `Sleep`"""
        match self.kind:
            case EnergySavingOpKind.POWER_DELTA:
                return f"PowerDelta({int(self.parameter):+d})"
            case EnergySavingOpKind.ANTENNA_ANGLE_SET:
                return f"AntennaAngleSet({int(self.parameter)})"
            case _:
                return "Sleep"

    @classmethod
    def from_label(cls, label: str) -> "EnergySavingOp":
        """Parse a canonical label back into an operation."""
        label = label.strip()
        if label == "Sleep":
            return cls(EnergySavingOpKind.SLEEP)
        match = _LABEL_RE.match(label)
        if not match:
            raise InvalidOpError(f"Unknown energy-saving operation '{label}'")
        return cls(EnergySavingOpKind(match.group(1)), float(match.group(2)))

    def __str__(self):
        return self.label


def standard_operations() -> tuple[EnergySavingOp, ...]:
    """The five parameterized operations of the three operation kinds"""
    return (
        EnergySavingOp(EnergySavingOpKind.POWER_DELTA, 1.0),
        EnergySavingOp(EnergySavingOpKind.POWER_DELTA, -1.0),
        EnergySavingOp(EnergySavingOpKind.ANTENNA_ANGLE_SET, 5.0),
        EnergySavingOp(EnergySavingOpKind.ANTENNA_ANGLE_SET, 15.0),
        EnergySavingOp(EnergySavingOpKind.SLEEP),
    )


@dataclass(frozen=True)
class ConflictRule:
    """
    Predefined conflict between two objectives, with the priority order that
    settles it and a conflict level (1 is the mildest).
    """

    objective_a: ObjectiveKind
    objective_b: ObjectiveKind
    priority_order: tuple[ObjectiveKind, ...]
    level: int = 1

    def __post_init__(self):
        if self.objective_a == self.objective_b:
            raise ConflictRuleError(
                f"Conflict rule needs two distinct objectives, got {self.objective_a.value} twice"
            )
        if sorted(self.priority_order) != sorted(ObjectiveKind):
            raise ConflictRuleError(
                "priority_order must list every objective exactly once, got "
                + ", ".join(kind.value for kind in self.priority_order)
            )
        if self.level < 1:
            raise ConflictRuleError(f"Conflict level must be >= 1, got {self.level}")

    def involves(self, first: ObjectiveKind, second: ObjectiveKind) -> bool:
        """True if the rule is about this (unordered) pair of objectives"""
        return {self.objective_a, self.objective_b} == {first, second}

    def dominant(self) -> ObjectiveKind:
        """The objective of the pair that ranks higher in the priority order"""
        for kind in self.priority_order:
            if kind in (self.objective_a, self.objective_b):
                return kind
        raise ConflictRuleError("priority_order does not cover the rule's objectives")

    @classmethod
    def from_dict(cls, data: dict) -> "ConflictRule":
        """Build a rule from a `[[conflict_rules.rule]]` config table."""
        try:
            return cls(
                objective_a=ObjectiveKind(data["objective_a"]),
                objective_b=ObjectiveKind(data["objective_b"]),
                priority_order=tuple(
                    ObjectiveKind(kind) for kind in data["priority_order"]
                ),
                level=int(data.get("level", 1)),
            )
        except KeyError as exc:
            raise ConflictRuleError(f"Conflict rule is missing {exc.args[0]}") from exc
        except ValueError as exc:
            raise ConflictRuleError(f"Invalid conflict rule: {exc}") from exc


# energy 0.80 > latency 0.60 > throughput 0.50, following the softgoal edge weights
DEFAULT_PRIORITY = (
    ObjectiveKind.TOTAL_ENERGY_CONSUMPTION,
    ObjectiveKind.FIRST_PACKET_LATENCY,
    ObjectiveKind.DOWNLINK_THROUGHPUT,
)


def default_conflict_rules() -> tuple[ConflictRule, ...]:
    """Energy vs throughput and throughput vs latency, level 1, default priority"""
    return (
        ConflictRule(
            ObjectiveKind.TOTAL_ENERGY_CONSUMPTION,
            ObjectiveKind.DOWNLINK_THROUGHPUT,
            DEFAULT_PRIORITY,
        ),
        ConflictRule(
            ObjectiveKind.DOWNLINK_THROUGHPUT,
            ObjectiveKind.FIRST_PACKET_LATENCY,
            DEFAULT_PRIORITY,
        ),
    )


@dataclass(frozen=True)
class ConflictPair:
    """Two targets whose conditions pull in opposite directions."""

    first: str
    second: str
    reason: str

    def key(self) -> frozenset[str]:
        """Order-free identity of the pair"""
        return frozenset((self.first, self.second))


@dataclass(frozen=True)
class ConflictSet:
    """The conflicts found between the targets of an intent."""

    pairs: tuple[ConflictPair, ...] = ()

    def __post_init__(self):
        keys = [pair.key() for pair in self.pairs]
        if any(len(key) != 2 for key in keys):
            raise ConflictRuleError("A conflict pair needs two distinct targets")
        if len(set(keys)) != len(keys):
            raise ConflictRuleError("Duplicate conflict pair")

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def as_set(self) -> frozenset[frozenset[str]]:
        """The pairs as an unordered set of unordered name pairs"""
        return frozenset(pair.key() for pair in self.pairs)

    def to_list(self) -> list[dict[str, str]]:
        """JSON-friendly rendering"""
        return [
            {"first": pair.first, "second": pair.second, "reason": pair.reason}
            for pair in self.pairs
        ]


@dataclass(frozen=True)
class NetworkOntology:
    """
    The knowledge base of an energy-saving intent: objectives with their
    bounds, domain properties, RAN requirements, energy-saving operations,
    BS agents and conflict rules.
    """

    objectives: tuple[Objective, ...]
    domain_properties: tuple[str, ...]
    ran_requirements: tuple[str, ...]
    energy_saving_ops: tuple[EnergySavingOp, ...]
    bs_agents: tuple[str, ...]
    conflict_rules: tuple[ConflictRule, ...] = field(default=())

    def __post_init__(self):
        kinds = sorted(objective.kind for objective in self.objectives)
        if kinds != sorted(ObjectiveKind):
            raise ConflictRuleError(
                "The ontology needs exactly the energy, throughput and latency objectives"
            )
        for rule in self.conflict_rules:
            for kind in (rule.objective_a, rule.objective_b):
                if kind not in kinds:
                    raise ConflictRuleError(
                        f"Conflict rule references unknown objective {kind.value}"
                    )

    def objective(self, kind: ObjectiveKind) -> Objective:
        """Look an objective up by kind"""
        for objective in self.objectives:
            if objective.kind == kind:
                return objective
        raise KeyError(kind)

    @property
    def objective_labels(self) -> tuple[str, ...]:
        """Objective kinds as labels, in ontology order"""
        return tuple(objective.kind.value for objective in self.objectives)

    @property
    def operation_kinds(self) -> tuple[EnergySavingOpKind, ...]:
        """Distinct operation kinds, in first-seen order"""
        return tuple(dict.fromkeys(op.kind for op in self.energy_saving_ops))
