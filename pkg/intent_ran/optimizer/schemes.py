# SPDX-License-Identifier: MIT

"""
intent_ran.optimizer.schemes

The three ways of running the BSs that get compared: a DQN agent choosing
among the decomposed operations, tabular Q-learning over binned metrics,
and a static network that never acts. All of them share one episode loop:

    observe -> choose -> apply -> advance the network one step
            -> reward -> learn

Each episode restarts the scenario with seed `rng_seed + episode`; a
warm-up step before the first decision provides the first observation.
"""

import logging
import os
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from intent_ran.ontology.model import EnergySavingOp
from intent_ran.optimizer import Hyperparams
from intent_ran.optimizer.agent import (
    TabularQ,
    greedy_or_random,
    sync_target,
    train_step,
)
from intent_ran.optimizer.exceptions import EmptyActionSetError
from intent_ran.optimizer.observation import (
    METRIC_FEATURES,
    OBSERVATION_SIZE,
    discretize,
    observe_all,
)
from intent_ran.optimizer.qnet import QFunction
from intent_ran.optimizer.replay import ReplayMemory, Transition
from intent_ran.optimizer.reward import RewardWeights, reward, reward_inputs
from intent_ran.ransim import ScenarioConfig
from intent_ran.ransim.simulator import TickMetrics, apply_operation, step
from intent_ran.ransim.state import init_scenario
from intent_ran.sig.decompose import DecompositionResult

Action = EnergySavingOp | None


def build_action_set(
    ops: Sequence[EnergySavingOp], include_noop: bool = True
) -> tuple[Action, ...]:
    """The operations an agent may pick, plus a trailing no-op if asked"""
    if not ops:
        raise EmptyActionSetError("The decomposition kept no energy-saving operation")
    return tuple(ops) + ((None,) if include_noop else ())


@dataclass
class TrainingTraces:
    """Per-step traces of one scheme run."""

    scheme: str
    trace_rows: list[tuple] = field(default_factory=list)
    metric_rows: list[tuple] = field(default_factory=list)
    rewards: list[float] = field(default_factory=list)
    losses: list[float | None] = field(default_factory=list)
    energy_w: list[float] = field(default_factory=list)
    thpt_bps: list[float] = field(default_factory=list)
    latency_ms: list[float | None] = field(default_factory=list)
    episode_returns: list[float] = field(default_factory=list)

    def record(
        self,
        global_step: int,
        episode: int,
        rewards: np.ndarray,
        loss: float | None,
        epsilon: float,
        choices: Sequence[int | None],
        metrics: TickMetrics,
    ):
        """Append one step"""
        mean_reward = float(np.mean(rewards))
        action = " ".join(str(choice) for choice in choices if choice is not None)
        self.trace_rows.append((global_step, episode, mean_reward, loss, epsilon, action))
        for row in metrics.csv_rows():
            self.metric_rows.append((global_step, *row[1:]))
        self.rewards.append(mean_reward)
        self.losses.append(loss)
        self.energy_w.append(metrics.mean_energy_w)
        self.thpt_bps.append(metrics.mean_thpt_bps)
        self.latency_ms.append(metrics.mean_latency_ms)

    @property
    def steps(self) -> int:
        """Number of recorded steps"""
        return len(self.rewards)

    @property
    def mean_energy_w(self) -> float:
        """Mean per-BS energy over the run"""
        return float(np.mean(self.energy_w)) if self.energy_w else 0.0

    @property
    def mean_thpt_bps(self) -> float:
        """Mean per-BS throughput over the run"""
        return float(np.mean(self.thpt_bps)) if self.thpt_bps else 0.0

    @property
    def mean_latency_ms(self) -> float | None:
        """Mean latency over the steps in which packets completed"""
        values = [v for v in self.latency_ms if v is not None]
        return float(np.mean(values)) if values else None

    @property
    def total_reward(self) -> float:
        """Sum of the per-step rewards"""
        return float(np.sum(self.rewards))

    def window_mean(self, fraction: float, tail: bool = False) -> float:
        """Mean reward over the first (or last) `fraction` of the steps"""
        count = max(1, int(round(self.steps * fraction)))
        window = self.rewards[-count:] if tail else self.rewards[:count]
        return float(np.mean(window))


class BaseScheme(ABC):
    """
    Base class for the schemes. Subclasses decide which action each BS
    takes and how they learn from the outcome.
    """

    def __init__(
        self,
        name: str,
        scenario: ScenarioConfig,
        hp: Hyperparams,
        weights: RewardWeights,
        actions: tuple[Action, ...],
        seed: int = 0,
        log: logging.Logger | None = None,
    ):
        self._name = name
        self._scenario = scenario
        self._hp = hp
        self._weights = weights
        self._actions = actions
        self._rng = np.random.default_rng(seed)
        self._log = log or logging.getLogger(__name__)

    @property
    def name(self) -> str:
        """Getter for `name` property"""
        return self._name

    @property
    def log(self) -> logging.Logger:
        """Getter for `log` property"""
        return self._log

    @property
    def actions(self) -> tuple[Action, ...]:
        """Getter for `actions` property"""
        return self._actions

    @property
    def epsilon(self) -> float:
        """Exploration probability written to the trace"""
        return self._hp.epsilon

    def log_msg(self, message: str) -> str:
        """Tag a log message with the class name"""
        return f"[{self.__class__.__name__.upper()}] {message}"

    @property
    def num_agents(self) -> int:
        """One shared agent, or one per BS"""
        return 1 if self._hp.shared_agent else self._scenario.num_bs

    def agent_of(self, bs_id: int) -> int:
        """Index of the agent that drives a BS"""
        return 0 if self._hp.shared_agent else bs_id

    @abstractmethod
    def choose(self, observations: np.ndarray) -> list[int | None]:
        """Action index for every BS, None for no decision"""

    @abstractmethod
    def learn(
        self,
        observations: np.ndarray,
        choices: list[int | None],
        rewards: np.ndarray,
        next_observations: np.ndarray,
    ) -> float | None:
        """Learn from one step; returns the loss, or None when nothing was trained"""

    def run(self, episodes: int) -> TrainingTraces:
        """Run `episodes` episodes and collect the traces"""
        hp = self._hp
        weights = self._weights
        traces = TrainingTraces(self._name)
        global_step = 0

        for episode in range(episodes):
            scenario = self._scenario.replace(rng_seed=self._scenario.rng_seed + episode)
            state = init_scenario(scenario, self._log)
            metrics = step(state, hp.step_duration_ms)
            observations = observe_all(state, metrics, weights)
            start = traces.steps

            for _ in range(hp.steps_per_episode):
                choices = self.choose(observations)
                for bs_id, choice in enumerate(choices):
                    if choice is not None and self._actions[choice] is not None:
                        apply_operation(state, bs_id, self._actions[choice])

                metrics = step(state, hp.step_duration_ms)
                rewards = np.array(
                    [
                        reward(*reward_inputs(metrics, bs_id, weights), weights)
                        for bs_id in range(state.num_bs)
                    ]
                )
                next_observations = observe_all(state, metrics, weights)
                loss = self.learn(observations, choices, rewards, next_observations)
                traces.record(
                    global_step, episode, rewards, loss, self.epsilon, choices, metrics
                )
                self.log.debug(
                    self.log_msg(
                        f"step {global_step}: reward {float(np.mean(rewards)):.4f} "
                        f"actions {choices}"
                    )
                )
                observations = next_observations
                global_step += 1

            episode_return = float(np.sum(traces.rewards[start:]))
            traces.episode_returns.append(episode_return)
            self.log.info(
                self.log_msg(
                    f"episode {episode + 1}/{episodes}: return {episode_return:.3f}, "
                    f"mean energy {np.mean(traces.energy_w[start:]):.1f} W"
                )
            )
        return traces


class DqnScheme(BaseScheme):
    """
    DQN agents: an online and a target Q network per agent, experience
    replay, one minibatch step per environment step and a target sync
    every `target_sync_period` training steps.
    """

    def __init__(
        self,
        scenario: ScenarioConfig,
        hp: Hyperparams,
        weights: RewardWeights,
        actions: tuple[Action, ...],
        seed: int = 0,
        log: logging.Logger | None = None,
        name: str = "dqn",
    ):
        super().__init__(name, scenario, hp, weights, actions, seed, log)
        layers = (OBSERVATION_SIZE, *hp.hidden_layers, len(actions))
        self._online = [
            QFunction(layers, seed=seed + 1 + agent) for agent in range(self.num_agents)
        ]
        self._target = [q.clone() for q in self._online]
        self._memory = [ReplayMemory(hp.replay_capacity) for _ in range(self.num_agents)]
        self._train_steps = [0] * self.num_agents

    @property
    def online(self) -> list[QFunction]:
        """Getter for `online` property"""
        return self._online

    @property
    def target(self) -> list[QFunction]:
        """Getter for `target` property"""
        return self._target

    @property
    def memory(self) -> list[ReplayMemory]:
        """Getter for `memory` property"""
        return self._memory

    def choose(self, observations: np.ndarray) -> list[int | None]:
        if self._hp.shared_agent:
            q_values = self._online[0].forward(observations)
        else:
            q_values = np.vstack(
                [q.forward(obs) for q, obs in zip(self._online, observations)]
            )
        return [
            greedy_or_random(row, self._hp.exploit_probability, self._rng)
            for row in q_values
        ]

    def learn(self, observations, choices, rewards, next_observations):
        for bs_id, choice in enumerate(choices):
            self._memory[self.agent_of(bs_id)].push(
                Transition(
                    observations[bs_id], choice, float(rewards[bs_id]), next_observations[bs_id]
                )
            )

        losses = []
        for agent in range(self.num_agents):
            if len(self._memory[agent]) < self._hp.batch_size:
                continue
            losses.append(
                train_step(
                    self._online[agent],
                    self._target[agent],
                    self._memory[agent],
                    self._hp,
                    self._rng,
                )
            )
            self._train_steps[agent] += 1
            if self._train_steps[agent] % self._hp.target_sync_period == 0:
                sync_target(self._online[agent], self._target[agent])
                self.log.debug(
                    self.log_msg(f"agent {agent}: target synced at {self._train_steps[agent]}")
                )
        return float(np.mean(losses)) if losses else None

    def save_checkpoints(self, directory: str, prefix: str) -> list[str]:
        """Write one `.npz` per online network; returns the paths"""
        os.makedirs(directory, exist_ok=True)
        paths = []
        for agent, q in enumerate(self._online):
            path = os.path.join(directory, f"{prefix}_agent{agent}.npz")
            q.save(path)
            paths.append(path)
        return paths


class QLearningScheme(BaseScheme):
    """Tabular Q-learning over (load, energy, throughput, latency) cut into bins."""

    def __init__(
        self,
        scenario: ScenarioConfig,
        hp: Hyperparams,
        weights: RewardWeights,
        actions: tuple[Action, ...],
        seed: int = 0,
        log: logging.Logger | None = None,
    ):
        super().__init__("q_learning", scenario, hp, weights, actions, seed, log)
        num_states = hp.bins**METRIC_FEATURES
        self._tables = [
            TabularQ(num_states, len(actions), hp.tabular_learning_rate, hp.discount)
            for _ in range(self.num_agents)
        ]

    @property
    def tables(self) -> list[TabularQ]:
        """Getter for `tables` property"""
        return self._tables

    def choose(self, observations: np.ndarray) -> list[int | None]:
        choices = []
        for bs_id, obs in enumerate(observations):
            table = self._tables[self.agent_of(bs_id)].table
            row = table[discretize(obs, self._hp.bins)]
            choices.append(greedy_or_random(row, self._hp.exploit_probability, self._rng))
        return choices

    def learn(self, observations, choices, rewards, next_observations):
        errors = []
        for bs_id, choice in enumerate(choices):
            errors.append(
                self._tables[self.agent_of(bs_id)].update(
                    discretize(observations[bs_id], self._hp.bins),
                    choice,
                    float(rewards[bs_id]),
                    discretize(next_observations[bs_id], self._hp.bins),
                )
            )
        return float(np.mean(np.square(errors)))


class StaticScheme(BaseScheme):
    """The network as configured: no operation is ever applied."""

    def __init__(
        self,
        scenario: ScenarioConfig,
        hp: Hyperparams,
        weights: RewardWeights,
        seed: int = 0,
        log: logging.Logger | None = None,
    ):
        super().__init__("static", scenario, hp, weights, (None,), seed, log)

    @property
    def epsilon(self) -> float:
        return 0.0

    def choose(self, observations: np.ndarray) -> list[int | None]:
        return [None] * len(observations)

    def learn(self, observations, choices, rewards, next_observations):
        return None


def run_training(
    scenario: ScenarioConfig,
    result: DecompositionResult,
    hp: Hyperparams,
    episodes: int,
    weights: RewardWeights,
    seed: int = 0,
    log: logging.Logger | None = None,
    name: str = "dqn",
) -> tuple[TrainingTraces, DqnScheme]:
    """Train DQN agents over the operations kept by a decomposition"""
    actions = build_action_set(result.actions, hp.include_noop)
    scheme = DqnScheme(scenario, hp, weights, actions, seed, log, name)
    return scheme.run(episodes), scheme


def q_learning_baseline(
    scenario: ScenarioConfig,
    ops: Sequence[EnergySavingOp],
    hp: Hyperparams,
    episodes: int,
    weights: RewardWeights,
    seed: int = 0,
    log: logging.Logger | None = None,
) -> TrainingTraces:
    """Tabular Q-learning over the same action set as the DQN"""
    actions = build_action_set(ops, hp.include_noop)
    return QLearningScheme(scenario, hp, weights, actions, seed, log).run(episodes)


def static_baseline(
    scenario: ScenarioConfig,
    hp: Hyperparams,
    episodes: int,
    weights: RewardWeights,
    seed: int = 0,
    log: logging.Logger | None = None,
) -> TrainingTraces:
    """Metrics of the untouched network"""
    return StaticScheme(scenario, hp, weights, seed, log).run(episodes)
