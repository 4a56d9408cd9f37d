"""
JSON codec for 2×2 operators.

Schema: ``{"ee": [re, im], "eg": [re, im], "ge": [re, im], "gg": [re, im]}`` where
``"eg"`` is ⟨e|Â|g⟩.
"""

import json
from typing import Any

import numpy as np

from src.exceptions import InvalidParameterError

from .algebra import BASIS_LABELS, Operator2, as_operator

ELEMENT_KEYS = tuple(f"{bra}{ket}" for bra in BASIS_LABELS for ket in BASIS_LABELS)


def operator_from_json(obj: Any) -> Operator2:
    """Decode an operator from a parsed JSON object or a JSON string."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InvalidParameterError("operator", "json", obj, f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InvalidParameterError("operator", "json", obj, "expected an object")
    keys = set(obj)
    if keys != set(ELEMENT_KEYS):
        raise InvalidParameterError(
            "operator", "keys", sorted(keys), f"expected exactly {list(ELEMENT_KEYS)}"
        )

    entries = []
    for key in ELEMENT_KEYS:
        pair = obj[key]
        if (
            not isinstance(pair, list | tuple)
            or len(pair) != 2
            or not all(isinstance(x, int | float) and not isinstance(x, bool) for x in pair)
        ):
            raise InvalidParameterError("operator", key, pair, "expected [re, im] numbers")
        entries.append(complex(pair[0], pair[1]))
    return as_operator(np.array(entries).reshape(2, 2))


def operator_to_json(op: Operator2) -> dict[str, list[float]]:
    """Encode an operator using the labelled-element schema."""
    flat = np.asarray(op).reshape(4)
    return {
        key: [_clean(value.real), _clean(value.imag)]
        for key, value in zip(ELEMENT_KEYS, flat, strict=True)
    }


def _clean(x: float) -> float:
    # -0.0 + 0.0 == +0.0
    return float(x) + 0.0
