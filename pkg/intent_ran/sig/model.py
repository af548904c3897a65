# SPDX-License-Identifier: MIT

"""
intent_ran.sig.model

The softgoal interdependency graph: one softgoal, the objectives it refines
into, the operations that realize them, and the weights of both edge levels.

On disk the model is JSON with the members `softgoal`, `objectives`,
`operations`, `sg_weights` and `op_weights` (rows are operations, columns
are objectives).
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from intent_ran.ontology.exceptions import InvalidOpError
from intent_ran.ontology.model import EnergySavingOp
from intent_ran.sig.exceptions import DimensionError, SigFormatError, WeightRangeError

SIG_MEMBERS = ("softgoal", "objectives", "operations", "sg_weights", "op_weights")


@dataclass(frozen=True)
class SigModel:
    """A two-level SIG: softgoal -> objectives -> operations."""

    softgoal: str
    objectives: tuple[str, ...]
    operations: tuple[str, ...]
    sg_weights: tuple[float, ...]
    op_weights: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(self.sg_weights) != len(self.objectives):
            raise DimensionError(
                "sg_weights needs one weight per objective",
                (len(self.objectives),),
                (len(self.sg_weights),),
            )
        if len(self.op_weights) != len(self.operations):
            raise DimensionError(
                "op_weights needs one row per operation",
                (len(self.operations), len(self.objectives)),
                (len(self.op_weights),),
            )
        for i, row in enumerate(self.op_weights):
            if len(row) != len(self.objectives):
                raise DimensionError(
                    f"op_weights row {i} needs one weight per objective",
                    (len(self.objectives),),
                    (len(row),),
                )

        for j, weight in enumerate(self.sg_weights):
            _check_weight("sg_weights", (j,), weight)
        for i, row in enumerate(self.op_weights):
            for j, weight in enumerate(row):
                _check_weight("op_weights", (i, j), weight)

    @property
    def sg_vector(self) -> np.ndarray:
        """sgWeights as a float vector"""
        return np.asarray(self.sg_weights, dtype=float)

    @property
    def op_matrix(self) -> np.ndarray:
        """opWeights as an |operations| x |objectives| matrix"""
        return np.asarray(self.op_weights, dtype=float).reshape(
            len(self.operations), len(self.objectives)
        )

    @property
    def energy_saving_ops(self) -> tuple[EnergySavingOp, ...]:
        """The operations, resolved from their labels"""
        return tuple(EnergySavingOp.from_label(label) for label in self.operations)

    def scaled(self, factor: float) -> "SigModel":
        """Copy with every op weight multiplied by `factor`"""
        return SigModel(
            self.softgoal,
            self.objectives,
            self.operations,
            self.sg_weights,
            tuple(tuple(w * factor for w in row) for row in self.op_weights),
        )


def _check_weight(member: str, index: tuple, weight: float):
    if not math.isfinite(weight) or not -1.0 <= weight <= 1.0:
        raise WeightRangeError(member, index, weight)


def _text(data: dict, member: str) -> str:
    value = data[member]
    if not isinstance(value, str) or not value.strip():
        raise SigFormatError(f"'{member}' must be a non-empty string", member)
    return value.strip()


def _labels(data: dict, member: str) -> tuple[str, ...]:
    value = data[member]
    if not isinstance(value, list) or not all(
        isinstance(item, str) and item.strip() for item in value
    ):
        raise SigFormatError(f"'{member}' must be a list of non-empty strings", member)
    labels = tuple(item.strip() for item in value)
    if len(set(labels)) != len(labels):
        raise SigFormatError(f"'{member}' contains duplicates", member)
    return labels


def _number(value, member: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SigFormatError(f"'{member}' must contain only numbers", member)
    return float(value)


def load_sig_json(text: str) -> SigModel:
    """
    Parse and dimension-check a SIG document. Raises SigFormatError,
    DimensionError or WeightRangeError.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SigFormatError(
            f"Malformed JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}"
        ) from exc
    if not isinstance(data, dict):
        raise SigFormatError("SIG document must be a JSON object")

    missing = [member for member in SIG_MEMBERS if member not in data]
    if missing:
        raise SigFormatError(f"SIG document lacks {', '.join(missing)}")
    unknown = sorted(set(data) - set(SIG_MEMBERS))
    if unknown:
        raise SigFormatError(f"Unknown SIG members: {', '.join(unknown)}")

    operations = _labels(data, "operations")
    for label in operations:
        try:
            EnergySavingOp.from_label(label)
        except InvalidOpError as exc:
            raise SigFormatError(exc.message, "operations") from exc

    if not isinstance(data["sg_weights"], list):
        raise SigFormatError("'sg_weights' must be a list", "sg_weights")
    rows = data["op_weights"]
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise SigFormatError("'op_weights' must be a list of rows", "op_weights")

    return SigModel(
        softgoal=_text(data, "softgoal"),
        objectives=_labels(data, "objectives"),
        operations=operations,
        sg_weights=tuple(_number(w, "sg_weights") for w in data["sg_weights"]),
        op_weights=tuple(
            tuple(_number(w, "op_weights") for w in row) for row in rows
        ),
    )


def dump_sig_json(model: SigModel) -> str:
    """Serialize a model in the on-disk layout"""
    data = {
        "softgoal": model.softgoal,
        "objectives": list(model.objectives),
        "operations": list(model.operations),
        "sg_weights": list(model.sg_weights),
        "op_weights": [list(row) for row in model.op_weights],
    }
    return json.dumps(data, indent=2) + "\n"
