# SPDX-License-Identifier: MIT

"""
intent_ran.intent.codec

Read intent documents from YAML or JSON, emit them as canonical JSON and
derive the objective bounds (E^max, R^min, T^max) from their targets.

Canonical JSON sorts keys, indents by two spaces, prints integral numbers
without a fractional part and ends with a single LF, so equal documents
always produce the same bytes.
"""

import json
import math
import os
from typing import Any

import yaml
from pydantic import ValidationError

from intent_ran.constants import TARGET_ENERGY, TARGET_LATENCY, TARGET_THROUGHPUT
from intent_ran.intent import ObjectiveBounds
from intent_ran.intent.exceptions import (
    ConditionMismatchError,
    IntentSchemaError,
    IntentSyntaxError,
    MissingTargetError,
)
from intent_ran.intent.models import IntentDocument, TargetCondition
from intent_ran.util import Utility

# target -> (bound field, condition it must use)
BOUND_TARGETS = {
    TARGET_ENERGY: ("energy_max", TargetCondition.IS_LESS_THAN),
    TARGET_THROUGHPUT: ("throughput_min", TargetCondition.IS_GREATER_THAN),
    TARGET_LATENCY: ("latency_max", TargetCondition.IS_LESS_THAN),
}


def _validate(data: Any) -> IntentDocument:
    """Turn a decoded mapping into an IntentDocument, or raise IntentSchemaError."""
    if data is None:
        raise IntentSchemaError("Intent document is empty")
    if not isinstance(data, dict):
        raise IntentSchemaError(
            f"Intent document must be a mapping, got {type(data).__name__}"
        )
    try:
        return IntentDocument.model_validate(data)
    except ValidationError as exc:
        errors = exc.errors()
        first = errors[0]
        location = ".".join(str(part) for part in first["loc"]) or "<root>"
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
            for err in errors
        )
        raise IntentSchemaError(f"Invalid intent: {details}", location) from exc


def parse_intent_yaml(text: str) -> IntentDocument:
    """
    Parse a YAML intent document into a validated IntentDocument.

    Raises IntentSyntaxError on malformed YAML (with line and column) and
    IntentSchemaError on missing, unknown or badly typed fields.
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        location = f"line {mark.line + 1}, column {mark.column + 1}" if mark else None
        problem = getattr(exc, "problem", None) or str(exc)
        raise IntentSyntaxError(f"Malformed YAML: {problem}", location) from exc
    return _validate(data)


def _reject_constant(name: str):
    raise ValueError(f"non-finite number {name}")


def parse_intent_json(text: str) -> IntentDocument:
    """Parse a JSON intent document; mirrors `parse_intent_yaml`."""
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise IntentSyntaxError(
            f"Malformed JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}"
        ) from exc
    except ValueError as exc:
        raise IntentSchemaError(f"Invalid intent: {exc}") from exc
    return _validate(data)


def _canonical_numbers(value: Any) -> Any:
    """Integral floats become ints so `1.0` and `1` print the same way."""
    if isinstance(value, dict):
        return {key: _canonical_numbers(item) for key, item in value.items()}
    if isinstance(value, list):
        return [_canonical_numbers(item) for item in value]
    if isinstance(value, float) and math.isfinite(value) and value.is_integer():
        return int(value)
    return value


def intent_to_json(doc: IntentDocument) -> str:
    """Render a document as canonical JSON text."""
    data = _canonical_numbers(doc.model_dump(mode="json", by_alias=True))
    return (
        json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False)
        + "\n"
    )


def yaml_to_json(text: str) -> str:
    """The one-way transformation: YAML intent in, canonical JSON out."""
    return intent_to_json(parse_intent_yaml(text))


def load_intent(path: str) -> IntentDocument:
    """Read an intent file, picking the parser from the extension (.yaml/.yml/.json)."""
    extension = os.path.splitext(path)[1].lower()
    text = Utility.read_text(path)
    if extension in (".yaml", ".yml"):
        parser = parse_intent_yaml
    elif extension == ".json":
        parser = parse_intent_json
    else:
        raise IntentSchemaError(
            f"Cannot tell the intent format from extension '{extension}'", path
        )

    try:
        return parser(text)
    except (IntentSyntaxError, IntentSchemaError) as exc:
        location = f"{path}: {exc.location}" if exc.location else path
        raise type(exc)(exc.message, location) from exc


def extract_bounds(doc: IntentDocument) -> ObjectiveBounds:
    """
    Map the energy, throughput and latency targets to E^max, R^min and T^max.

    IS_LESS_THAN targets give upper bounds and IS_GREATER_THAN targets give
    lower bounds; any other pairing is a ConditionMismatchError.
    """
    values = {}
    for name, (field, condition) in BOUND_TARGETS.items():
        target = doc.intent_expectation.target(name)
        if target is None:
            raise MissingTargetError(name)
        if target.target_condition != condition:
            raise ConditionMismatchError(
                name, condition.value, target.target_condition.value
            )
        values[field] = target.target_value_range

    return ObjectiveBounds(**values)
