# SPDX-License-Identifier: MIT

"""
intent_ran.optimizer.qnet

Feed-forward Q-function on numpy: fully connected layers with rectifier
activations between them and a linear output, one Q value per action.
All weights and biases live in one flat parameter vector, layer by layer,
each layer's weight matrix (row-major, inputs x outputs) before its bias.

Checkpoints are `.npz` files holding `layer_sizes` and `params`.
"""

from typing import Sequence

import numpy as np


class QFunction:
    """Q(s, .) approximator with analytic gradients of the squared Bellman error."""

    def __init__(self, layer_sizes: Sequence[int], seed: int | None = None, params=None):
        sizes = tuple(int(size) for size in layer_sizes)
        if len(sizes) < 2 or any(size < 1 for size in sizes):
            raise ValueError(f"invalid layer sizes {sizes}")
        self._sizes = sizes
        if params is None:
            params = self._init_params(np.random.default_rng(seed))
        params = np.asarray(params, dtype=float).copy()
        if params.shape != (self.num_params,):
            raise ValueError(
                f"expected {self.num_params} parameters, got {params.shape}"
            )
        if not np.all(np.isfinite(params)):
            raise ValueError("parameters must be finite")
        self.params = params

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        """Getter for `layer_sizes` property"""
        return self._sizes

    @property
    def num_actions(self) -> int:
        """Size of the output layer"""
        return self._sizes[-1]

    @property
    def num_params(self) -> int:
        """Length of the flat parameter vector"""
        return sum((a + 1) * b for a, b in zip(self._sizes, self._sizes[1:]))

    def _init_params(self, rng: np.random.Generator) -> np.ndarray:
        """He-normal weights, zero biases"""
        chunks = []
        for fan_in, fan_out in zip(self._sizes, self._sizes[1:]):
            chunks.append(rng.normal(0.0, np.sqrt(2.0 / fan_in), size=fan_in * fan_out))
            chunks.append(np.zeros(fan_out))
        return np.concatenate(chunks)

    def _layers(self, params: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
        """Views (W, b) into a flat vector"""
        layers = []
        offset = 0
        for fan_in, fan_out in zip(self._sizes, self._sizes[1:]):
            weights = params[offset : offset + fan_in * fan_out].reshape(fan_in, fan_out)
            offset += fan_in * fan_out
            bias = params[offset : offset + fan_out]
            offset += fan_out
            layers.append((weights, bias))
        return layers

    def forward(self, observations) -> np.ndarray:
        """Q values, shape (batch, actions); a single observation gives (1, actions)"""
        activation = np.atleast_2d(np.asarray(observations, dtype=float))
        layers = self._layers(self.params)
        for i, (weights, bias) in enumerate(layers):
            activation = activation @ weights + bias
            if i < len(layers) - 1:
                activation = np.maximum(activation, 0.0)
        return activation

    def loss(self, observations, actions, targets) -> float:
        """Mean squared error between Q(s, a) and the targets"""
        q_values = self.forward(observations)
        chosen = q_values[np.arange(len(q_values)), np.asarray(actions, dtype=int)]
        return float(np.mean((chosen - np.asarray(targets, dtype=float)) ** 2))

    def loss_and_grad(self, observations, actions, targets) -> tuple[float, np.ndarray]:
        """Loss and its gradient with respect to the flat parameters"""
        inputs = np.atleast_2d(np.asarray(observations, dtype=float))
        actions = np.asarray(actions, dtype=int)
        targets = np.asarray(targets, dtype=float)
        layers = self._layers(self.params)

        activations = [inputs]
        pre_activations = []
        activation = inputs
        for i, (weights, bias) in enumerate(layers):
            z = activation @ weights + bias
            pre_activations.append(z)
            activation = np.maximum(z, 0.0) if i < len(layers) - 1 else z
            activations.append(activation)

        batch = len(inputs)
        rows = np.arange(batch)
        error = activations[-1][rows, actions] - targets
        loss = float(np.mean(error**2))

        delta = np.zeros_like(activations[-1])
        delta[rows, actions] = 2.0 * error / batch
        grads = []
        for i in range(len(layers) - 1, -1, -1):
            weights, _ = layers[i]
            grads.append((activations[i].T @ delta, delta.sum(axis=0)))
            if i > 0:
                delta = (delta @ weights.T) * (pre_activations[i - 1] > 0)

        flat = []
        for grad_w, grad_b in reversed(grads):
            flat.append(grad_w.ravel())
            flat.append(grad_b)
        return loss, np.concatenate(flat)

    def apply_gradient(self, grad: np.ndarray, learning_rate: float):
        """One step of gradient descent"""
        self.params -= learning_rate * grad

    def copy_from(self, other: "QFunction"):
        """Take the parameters of a network of the same shape"""
        if other.layer_sizes != self._sizes:
            raise ValueError(
                f"cannot copy a {other.layer_sizes} network into a {self._sizes} one"
            )
        self.params = other.params.copy()

    def clone(self) -> "QFunction":
        """Independent copy"""
        return QFunction(self._sizes, params=self.params)

    def save(self, path: str):
        """Write the `.npz` checkpoint"""
        with open(path, "wb") as f:
            np.savez(f, layer_sizes=np.asarray(self._sizes, dtype=int), params=self.params)

    @classmethod
    def load(cls, path: str) -> "QFunction":
        """Read a `.npz` checkpoint"""
        with np.load(path) as data:
            return cls(tuple(int(s) for s in data["layer_sizes"]), params=data["params"])
