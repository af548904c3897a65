# SPDX-License-Identifier: MIT

"""
intent_ran.ontology.conflicts

Conflicts between the targets of an intent. Two targets conflict when
their conditions oppose each other: one must stay below its value while the
other must stay above it.
"""

from intent_ran.intent.models import IntentDocument, TargetCondition
from intent_ran.ontology.model import ConflictPair, ConflictSet


def opposing(first: TargetCondition, second: TargetCondition) -> bool:
    """True for an IS_LESS_THAN / IS_GREATER_THAN pair, in either order"""
    return {first, second} == {
        TargetCondition.IS_LESS_THAN,
        TargetCondition.IS_GREATER_THAN,
    }


def detect_target_conflicts(doc: IntentDocument) -> ConflictSet:
    """
    Scan every pair of targets and keep those with opposing conditions.
    Pairs are listed in document order of their first member.
    """
    targets = doc.targets
    pairs = []
    for i, first in enumerate(targets):
        for second in targets[i + 1 :]:
            if opposing(first.target_condition, second.target_condition):
                pairs.append(
                    ConflictPair(
                        first.target_name,
                        second.target_name,
                        f"{first.target_name} {first.target_condition.value} opposes "
                        f"{second.target_name} {second.target_condition.value}",
                    )
                )
    return ConflictSet(tuple(pairs))
