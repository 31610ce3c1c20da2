import json
import math
import os
import pathlib
import subprocess

import jsonschema
import pytest

import kscolour

SCHEMAS = pathlib.Path(os.environ.get("KSCOLOUR_SCHEMA_DIR", pathlib.Path(__file__).parents[2] / "docs" / "schemas"))
BIN = os.environ.get("KSCOLOUR_BIN")


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def validate(report):
    jsonschema.validate(report, schema("report"))
    specific = SCHEMAS / f"{report['report_type']}.schema.json"
    if specific.exists():
        jsonschema.validate(report["result"], json.loads(specific.read_text()))


def test_exact_helpers():
    assert kscolour.rational_ray("-4,4,-2,6") == [2, -2, 1, 3]
    assert kscolour.parity_class("1,2,2,3") == "X"
    assert kscolour.meyer_colour("2,-2,1,3") == 0
    assert kscolour.meyer_colour("1,2,2,3", "X") == 0
    triad = kscolour.quaternion_triad(1, 2, 3, 4)
    assert sum(kscolour.meyer_colour(",".join(map(str, r))) for r in triad) == 2
    with pytest.raises(kscolour.NotOnRationalSphere):
        kscolour.rational_ray("1,1,1,2")
    assert kscolour.cap_measure(0.3) == pytest.approx(math.sin(0.15) ** 2)
    assert len(kscolour.fibonacci_grid(100)) == 100


def test_colouring_queries():
    assert "polar-cap" in kscolour.colourings()
    assert kscolour.query("polar-cap", 0, 0, 1) == 0
    assert kscolour.query("polar-cap", 1, 0, 0) == 1
    assert kscolour.query("polar-cap", 1, 2, 2) is None


def test_ray_set_text():
    text = json.dumps({"name": "triad", "source": "test", "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    assert kscolour.verify_set_text(text) == "COLOURABLE"
    assert kscolour.min_angle_deg(text) == pytest.approx(90.0)
    with pytest.raises(kscolour.RaySetError):
        kscolour.verify_set_text(json.dumps({"name": "x", "source": "t", "rays": [[1, 0, 0], [2, 0, 0]]}))


@pytest.mark.parametrize(
    "args",
    [
        ["verify-set", "--set", "conway-kochen"],
        ["check-colouring", "--colouring", "polar-cap", "--triads", "2000", "--measure-samples", "2000", "--seed", "1"],
        ["classify", "--colouring", "hybrid", "--grid", "200", "--samples", "20", "--theorem1-triads", "10",
         "--seed", "1"],
        ["density", "--colouring", "meyer", "--center", "1,2,2,3", "--samples", "50", "--seed", "1"],
        ["deficit", "--set", "conway-kochen", "--samples", "10000", "--seed", "1"],
        ["measure", "--colouring", "meyer", "--random-targets", "2", "--trials", "100", "--seed", "1"],
    ],
)
def test_reports_match_schemas(args):
    validate(kscolour.run(*args))


def test_conway_kochen_verdict():
    r = kscolour.run("verify-set", "--set", "conway-kochen")["result"]
    assert r["status"] == "UNCOLOURABLE"
    assert r["min_angle_deg"] == pytest.approx(18.4349488, abs=1e-6)


def test_errors():
    with pytest.raises(kscolour.CommandError) as e:
        kscolour.run("verify-set", "--set", "no-such-set")
    assert e.value.code == 2
    jsonschema.validate(e.value.payload, schema("error"))
    with pytest.raises(kscolour.CommandError) as e:
        kscolour.run("classify", "--colouring", "polar-cap")
    assert e.value.code == 1


@pytest.mark.skipif(not BIN, reason="binary path not provided")
def test_binary_matches_module():
    args = ["measure", "--colouring", "polar-cap", "--target", "0,3,4,5", "--trials", "100", "--seed", "3"]
    from_binary = json.loads(subprocess.run([BIN, *args], check=True, capture_output=True, text=True).stdout)
    from_module = kscolour.run(*args)
    validate(from_binary)
    for r in (from_binary, from_module):
        r.pop("timestamp")
        r.pop("timing")
    assert from_binary == from_module
    bad = subprocess.run([BIN, "frobnicate"], capture_output=True, text=True)
    assert bad.returncode == 1
    jsonschema.validate(json.loads(bad.stderr), schema("error"))
