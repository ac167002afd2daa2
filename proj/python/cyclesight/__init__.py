"""Python access to the cyclesight core."""

import json

from ._core import (
    CyclesightError,
    Session,
    figure,
    lr_step,
    preset_matrix,
    preset_names,
    qr_step,
    scene_json,
    scene_svg,
    trajectory,
)
from ._core import classify_json as _classify_json

__all__ = [
    "CyclesightError",
    "Session",
    "classify",
    "figure",
    "lr_step",
    "preset_matrix",
    "preset_names",
    "qr_step",
    "request",
    "scene",
    "scene_json",
    "scene_svg",
    "trajectory",
]


def classify(matrix, model="disk"):
    """Classification report as a dict."""
    return json.loads(_classify_json(list(matrix), model))


def scene(matrix, steps=30, model="disk"):
    """Scene JSON v1 as a dict."""
    return json.loads(scene_json(list(matrix), steps, model))


def request(session, payload):
    """Send a protocol request (dict) to a Session and decode the response."""
    return json.loads(session.handle(json.dumps(payload)))
