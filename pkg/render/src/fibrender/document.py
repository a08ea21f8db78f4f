"""Export-document loading and schema validation.

The renderer is a pure consumer of the JSON contract: a document carries a
`space` tag, a `fibration` parameter record, and a list of `fibers`, each
with an integer `id`, a `params` record, and a polyline of `points`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

SPACES = ("E3", "H3-halfspace", "H3-ball")


class DocumentError(ValueError):
    """The input file does not satisfy the export-document schema."""


def validate_document(doc: Any) -> dict:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("space", "fibration", "fibers"):
        if key not in doc:
            raise DocumentError(f"document is missing the {key!r} field")
    space = doc["space"]
    if space not in SPACES:
        raise DocumentError(f"unknown space {space!r}; expected one of {SPACES}")
    if not isinstance(doc["fibration"], dict):
        raise DocumentError("the fibration record must be an object")
    if not isinstance(doc["fibers"], list):
        raise DocumentError("fibers must be a list")
    for fiber in doc["fibers"]:
        if not isinstance(fiber, dict):
            raise DocumentError("each fiber must be an object")
        for key in ("id", "params", "points"):
            if key not in fiber:
                raise DocumentError(f"fiber is missing the {key!r} field")
        if not isinstance(fiber["id"], int):
            raise DocumentError("fiber id must be an integer")
        if not isinstance(fiber["params"], dict):
            raise DocumentError("fiber params must be an object")
        points = fiber["points"]
        if not isinstance(points, list) or len(points) < 2:
            raise DocumentError(f"fiber {fiber['id']} needs at least 2 points")
        for p in points:
            if not isinstance(p, list) or len(p) != 3:
                raise DocumentError(f"fiber {fiber['id']} has a non-triple point")
            if not all(isinstance(c, (int, float)) and math.isfinite(c) for c in p):
                raise DocumentError(f"fiber {fiber['id']} has a non-finite point")
            if space == "H3-halfspace" and p[2] <= 0:
                raise DocumentError(
                    f"fiber {fiber['id']} has a half-space point with height <= 0"
                )
            if space == "H3-ball" and sum(c * c for c in p) >= 1.0:
                raise DocumentError(
                    f"fiber {fiber['id']} has a ball point with norm >= 1"
                )
    return doc


def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    return validate_document(doc)


COLOR_KEYS = ("fiber-id", "z-level", "lambda")


@dataclass(frozen=True)
class RenderSpec:
    """One rendering job: where to read, where to write, how to look at it."""

    input_path: str
    output_path: str
    elev: float = 22.0
    azim: float = -60.0
    color_by: str = "fiber-id"
    space_hint: str = "E3"

    def __post_init__(self) -> None:
        if self.color_by not in COLOR_KEYS:
            raise DocumentError(
                f"unknown color key {self.color_by!r}; expected one of {COLOR_KEYS}"
            )


def color_value(fiber: dict, color_by: str) -> float:
    if color_by == "fiber-id":
        return float(fiber["id"])
    if color_by == "z-level":
        return float(fiber["points"][0][2])
    if "lambda" not in fiber["params"]:
        raise DocumentError(
            "color-by lambda needs a 'lambda' entry in the fiber params"
        )
    return float(fiber["params"]["lambda"])
