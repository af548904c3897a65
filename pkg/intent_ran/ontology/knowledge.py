# SPDX-License-Identifier: MIT

"""
intent_ran.ontology.knowledge

Build the network knowledge base of an energy-saving intent: the three
objectives with the bounds the intent sets, the fixed domain properties and
RAN requirements, the energy-saving operations, the BS agents and the
conflict rules.
"""

from typing import Iterable, Sequence

from intent_ran.intent.codec import extract_bounds
from intent_ran.intent.models import IntentDocument
from intent_ran.ontology.exceptions import ConflictRuleError
from intent_ran.ontology.model import (
    OBJECTIVE_DIRECTIONS,
    ConflictRule,
    NetworkOntology,
    Objective,
    ObjectiveKind,
    default_conflict_rules,
    standard_operations,
)

DOMAIN_PROPERTIES = (
    "The maximum transmit power of BSs p_i^max is fixed",
    "The location of BSs (x_i, y_i) is fixed",
)


def ran_requirements(throughput_min_gbps: float) -> tuple[str, ...]:
    """The RAN requirements of the energy, throughput and latency constraints"""
    return (
        "BSs utilize the lowest energy consumption and first packet latency "
        "to meet communication requirements",
        f"The downlink throughput is not less than {throughput_min_gbps:g}Gbps",
    )


def agent_names(num_agents: int) -> tuple[str, ...]:
    """`BSAgent-0`, `BSAgent-1`, ..."""
    if num_agents < 1:
        raise ConflictRuleError(f"Need at least one BS agent, got {num_agents}")
    return tuple(f"BSAgent-{i}" for i in range(num_agents))


def build_knowledge_base(
    doc: IntentDocument, rules: Sequence[ConflictRule], num_agents: int = 1
) -> NetworkOntology:
    """
    Model the intent as a network ontology. Raises MissingTargetError or
    ConditionMismatchError when the intent lacks a usable bound.
    """
    bounds = extract_bounds(doc)
    objectives = (
        Objective(
            ObjectiveKind.TOTAL_ENERGY_CONSUMPTION,
            OBJECTIVE_DIRECTIONS[ObjectiveKind.TOTAL_ENERGY_CONSUMPTION],
            bounds.energy_max,
            "kWh",
        ),
        Objective(
            ObjectiveKind.DOWNLINK_THROUGHPUT,
            OBJECTIVE_DIRECTIONS[ObjectiveKind.DOWNLINK_THROUGHPUT],
            bounds.throughput_min,
            "Gbps",
        ),
        Objective(
            ObjectiveKind.FIRST_PACKET_LATENCY,
            OBJECTIVE_DIRECTIONS[ObjectiveKind.FIRST_PACKET_LATENCY],
            bounds.latency_max,
            "ms",
        ),
    )
    return NetworkOntology(
        objectives=objectives,
        domain_properties=DOMAIN_PROPERTIES,
        ran_requirements=ran_requirements(bounds.throughput_min),
        energy_saving_ops=standard_operations(),
        bs_agents=agent_names(num_agents),
        conflict_rules=tuple(rules),
    )


def load_conflict_rules(tables: Iterable[dict] | None) -> tuple[ConflictRule, ...]:
    """
    Read the `[[conflict_rules.rule]]` tables of an experiment config. No
    tables at all means the default rules; an explicit empty list means none.
    """
    if tables is None:
        return default_conflict_rules()
    return tuple(ConflictRule.from_dict(table) for table in tables)
