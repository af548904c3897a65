# SPDX-License-Identifier: MIT

"""
Ontology package: the network knowledge base an intent is modelled into
(objectives, domain properties, RAN requirements, energy-saving operations,
BS agents, conflict rules) and the detection of conflicting targets.
"""

from intent_ran.ontology.conflicts import detect_target_conflicts
from intent_ran.ontology.knowledge import build_knowledge_base, load_conflict_rules
from intent_ran.ontology.model import (
    ConflictPair,
    ConflictRule,
    ConflictSet,
    Direction,
    EnergySavingOp,
    EnergySavingOpKind,
    NetworkOntology,
    Objective,
    ObjectiveKind,
    default_conflict_rules,
    standard_operations,
)

__all__ = [
    "ConflictPair",
    "ConflictRule",
    "ConflictSet",
    "Direction",
    "EnergySavingOp",
    "EnergySavingOpKind",
    "NetworkOntology",
    "Objective",
    "ObjectiveKind",
    "build_knowledge_base",
    "default_conflict_rules",
    "detect_target_conflicts",
    "load_conflict_rules",
    "standard_operations",
]
