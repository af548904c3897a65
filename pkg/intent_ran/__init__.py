# SPDX-License-Identifier: MIT

"""
intent_ran

Energy-saving network intents, from a 3GPP-style YAML document down to the
operations a base station agent applies inside a RAN simulator:

- `intent_ran.intent`: parse, validate and canonicalize intent documents.
- `intent_ran.ontology`: the network knowledge base and target conflicts.
- `intent_ran.sig`: softgoal interdependency graph scoring and pruning.
- `intent_ran.ransim`: the deterministic multi-BS / multi-UE simulator.
- `intent_ran.optimizer`: reward, DQN agent and the Q-learning / static baselines.
- `intent_ran.harness`: CLI, configuration profiles, benchmarks and experiments.
"""

__version__ = "0.1.0"
