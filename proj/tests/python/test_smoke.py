import json
import math
import os
import subprocess

import numpy as np
import pytest

import cyclesight as cs

SCENE_SCHEMA = {
    "type": "object",
    "required": ["version", "primitives"],
    "properties": {
        "version": {"const": 1},
        "primitives": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind", "geometry", "color", "width", "layer", "label"],
                "properties": {
                    "kind": {"enum": ["circle", "line", "point", "ellipse", "arrowhead"]},
                    "geometry": {"type": "object"},
                    "color": {
                        "type": "array",
                        "items": {"type": "integer", "minimum": 0, "maximum": 255},
                        "minItems": 3,
                        "maxItems": 3,
                    },
                    "width": {"type": "number"},
                    "layer": {"type": "integer"},
                    "label": {"type": "string"},
                },
            },
        },
    },
}


def test_classify_identity():
    r = cs.classify([1, 0, 0, 1])
    assert r["jordan"] == "Scalar"
    assert r["orthogonal"] is True
    assert r["base_coincident"] is True


def test_qr_step_matches_numpy():
    rng = np.random.default_rng(7)
    for _ in range(50):
        m = rng.uniform(-3, 3, size=(2, 2))
        q, r = np.linalg.qr(m)
        s = np.diag(np.sign(np.diag(r)))
        want = (s @ r) @ (q @ s)
        got = np.array(cs.qr_step(m.ravel().tolist())).reshape(2, 2)
        assert np.allclose(got, want, atol=1e-12)


def test_errors_carry_codes():
    with pytest.raises(cs.CyclesightError) as info:
        cs.classify([0, 0, 0, 0])
    assert info.value.code == "zero_matrix"
    with pytest.raises(cs.CyclesightError) as info:
        cs.lr_step([1, 0, 0, -1])
    assert info.value.code == "not_psd"


def test_figure_kinds():
    assert cs.figure([2, 0, 1, 1])["kind"] == "cycle_pair"
    line = cs.figure([1, 0, 0, -1])
    assert line["kind"] == "theta_line"
    assert math.isclose(line["theta"], 0.0, abs_tol=1e-12)


def test_scene_schema():
    jsonschema = pytest.importorskip("jsonschema")
    for name in cs.preset_names():
        jsonschema.validate(cs.scene(cs.preset_matrix(name)), SCENE_SCHEMA)
    assert cs.scene_svg([2, 0, 1, 1]).startswith("<?xml")


def test_trajectory_periodic_quarter_turn():
    it = cs.trajectory([0, -1, 1, 0], steps=8)
    assert len(it) == 9
    assert np.allclose(it[4], it[0])


def test_session_protocol():
    s = cs.Session()
    r = cs.request(s, {"op": "init", "matrix": [1, 0, 0, -1]})
    assert r["ok"] and r["state"]["mode"] == "theta_line"
    r = cs.request(s, {"op": "gesture", "gesture": {"kind": "set_theta", "theta": 0.25}})
    assert r["ok"]
    assert math.isclose(r["report"]["theta_oracle"], 0.25, abs_tol=1e-8)
    r = cs.request(s, {"op": "gesture", "gesture": {"kind": "scale", "factor": 2}})
    assert not r["ok"] and r["code"] == "invalid_gesture_for_mode"


def test_presets_listed():
    names = cs.preset_names()
    assert names == [f"case{i:02d}" for i in range(1, 13)]


@pytest.mark.skipif(not os.environ.get("CYCLESIGHT_CLI"), reason="CLI path not given")
def test_cli_classify():
    out = subprocess.run(
        [os.environ["CYCLESIGHT_CLI"], "classify", "--matrix", "2 0 1 1"],
        check=True, capture_output=True, text=True,
    ).stdout
    assert json.loads(out) == cs.classify([2, 0, 1, 1])
