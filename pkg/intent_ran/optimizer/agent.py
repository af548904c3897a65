# SPDX-License-Identifier: MIT

"""
intent_ran.optimizer.agent

Action selection and learning updates: epsilon-greedy choice over Q
values, the DQN minibatch step against a target network, target syncing
and the tabular Q-learning table of the baseline.
"""

import numpy as np

from intent_ran.optimizer import Hyperparams
from intent_ran.optimizer.exceptions import InsufficientDataError
from intent_ran.optimizer.qnet import QFunction
from intent_ran.optimizer.replay import ReplayMemory


def greedy_or_random(
    q_values: np.ndarray, exploit_probability: float, rng: np.random.Generator
) -> int:
    """
    With probability `exploit_probability` the index of the largest Q value
    (lowest index on ties), otherwise a uniformly random index.
    """
    if rng.random() < exploit_probability:
        return int(np.argmax(q_values))
    return int(rng.integers(len(q_values)))


def select_action(
    q: QFunction, obs: np.ndarray, exploit_probability: float, rng: np.random.Generator
) -> int:
    """Epsilon-greedy action of a Q network for one observation"""
    return greedy_or_random(q.forward(obs)[0], exploit_probability, rng)


def bellman_targets(
    target: QFunction, rewards: np.ndarray, next_obs: np.ndarray, discount: float
) -> np.ndarray:
    """y = r + gamma max_a' Q_target(s', a')"""
    return rewards + discount * target.forward(next_obs).max(axis=1)


def train_step(
    q: QFunction,
    target: QFunction,
    memory: ReplayMemory,
    hp: Hyperparams,
    rng: np.random.Generator,
) -> float:
    """
    One gradient descent step on the mean squared Bellman error of a
    uniform minibatch. Returns the loss before the step.
    """
    if len(memory) < hp.batch_size:
        raise InsufficientDataError(len(memory), hp.batch_size)
    obs, actions, rewards, next_obs = memory.sample(hp.batch_size, rng)
    targets = bellman_targets(target, rewards, next_obs, hp.discount)
    loss, grad = q.loss_and_grad(obs, actions, targets)
    q.apply_gradient(grad, hp.learning_rate)
    return loss


def sync_target(q: QFunction, target: QFunction):
    """Copy the online parameters into the target network"""
    target.copy_from(q)


class TabularQ:
    """Q table over discrete states and actions, updated one transition at a time."""

    def __init__(self, num_states: int, num_actions: int, learning_rate: float, discount: float):
        self.table = np.zeros((num_states, num_actions), dtype=float)
        self.learning_rate = learning_rate
        self.discount = discount

    @property
    def shape(self) -> tuple[int, int]:
        """(states, actions)"""
        return self.table.shape

    def update(self, state: int, action: int, reward: float, next_state: int) -> float:
        """Q(s,a) += alpha (r + gamma max Q(s') - Q(s,a)); returns the TD error"""
        td_error = (
            reward
            + self.discount * float(self.table[next_state].max())
            - self.table[state, action]
        )
        self.table[state, action] += self.learning_rate * td_error
        return float(td_error)
