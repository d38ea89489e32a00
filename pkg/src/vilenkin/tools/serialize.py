"""JSON documents for grid functions and spectra.

``{"spec": "m=...;L=...", "kind": "grid"|"spectrum", "re": [...], "im": [...]}``
with values in rank order.
"""

import json
from typing import Any, Dict, Optional, Union

import numpy as np

from vilenkin.analysis.spectral import GridFunction, Spectrum
from vilenkin.analysis.vgroup import group_from_string
from vilenkin.errors import ConfigError
from vilenkin.tools.report import write_atomic

Document = Dict[str, Any]


def to_document(obj: Union[GridFunction, Spectrum]) -> Document:
    if isinstance(obj, GridFunction):
        kind, values = "grid", obj.values
    elif isinstance(obj, Spectrum):
        kind, values = "spectrum", obj.coeffs
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return {
        "spec": obj.spec.label(),
        "kind": kind,
        "re": [float(v) for v in values.real],
        "im": [float(v) for v in values.imag],
    }


def from_document(
    doc: Document, max_grid: Optional[int] = None
) -> Union[GridFunction, Spectrum]:
    try:
        spec = group_from_string(doc["spec"], max_grid=max_grid)
        kind = doc["kind"]
        values = np.asarray(doc["re"], dtype=np.float64) + 1j * np.asarray(
            doc["im"], dtype=np.float64
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed document: {e}") from e
    if kind not in ("grid", "spectrum"):
        raise ConfigError(f"document kind must be grid or spectrum, got {kind!r}")
    try:
        if kind == "grid":
            return GridFunction(spec, values)
        return Spectrum(spec, values)
    except ValueError as e:
        raise ConfigError(f"malformed document: {e}") from e


def dumps(obj: Union[GridFunction, Spectrum]) -> str:
    return json.dumps(to_document(obj)) + "\n"


def loads(text: str, max_grid: Optional[int] = None) -> Union[GridFunction, Spectrum]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"not a JSON document: {e}") from e
    if not isinstance(doc, dict):
        raise ConfigError("document must be a JSON object")
    return from_document(doc, max_grid=max_grid)


def load(path: str, max_grid: Optional[int] = None) -> Union[GridFunction, Spectrum]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except UnicodeDecodeError as e:
        raise ConfigError(f"{path} is not UTF-8 text: {e}") from e
    return loads(text, max_grid=max_grid)


def dump(obj: Union[GridFunction, Spectrum], path: str) -> None:
    write_atomic(path, dumps(obj))
