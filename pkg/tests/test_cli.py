import json
import os
import xml.etree.ElementTree as ET

import pytest

from slowfast_darboux import export as ex
from slowfast_darboux.cli import load_config, main
from slowfast_darboux.errors import ConfigError

DATA = os.path.join(os.path.dirname(__file__), "data")

SMALL = """
eps: [0.5]
delta: []
dulac: {n_real: 10, n_modulus: 3, n_theta: 4}
portrait: {n_orbits: 2, turns: 1}
cycles: {n_grid: 8}
isoclines: {thetas: [-1.0, 1.0]}
blowup: {eps: [0.1, 0.05], n: 41}
"""


def write(tmp_path, text, name="c.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


@pytest.mark.parametrize("text,msg", [
    ("eps: [-1]", "positive"),
    ("eps: []", "empty"),
    ("delta: [-1e-3]", "positive"),
    ("foo: 1", "unknown"),
    ("eps: [0.5\n", "YAML"),
    ("tolerances: {cycle: 0}", "positive"),
    ("direction: {P: [[a]]}", "numbers"),
    ("output: {dir: out, formats: [png]}", "formats"),
    ("r_max: 0.5", "r_max"),
    ("[1, 2]", "mapping"),
])
def test_config_validation(text, msg):
    with pytest.raises(ConfigError, match=msg):
        load_config(text)


def test_config_defaults_and_hash():
    a = load_config("eps: [0.3]")
    b = load_config({"eps": [0.3]})
    assert a.hash == b.hash
    assert a.hash != load_config("eps: [0.4]").hash
    assert a.Pcoef == [[0.0, 1.0, -0.5]]


def test_ragged_direction_is_padded():
    c = load_config("direction: {P: [[0, 1], [2]]}")
    assert c.Pcoef == [[0.0, 1.0], [2.0, 0.0]]


def test_exit_code_config_error(tmp_path, capsys):
    assert main(["dulac", write(tmp_path, "eps: [0]")]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["status"] == "config_error"
    assert main(["dulac", str(tmp_path / "missing.yaml")]) == 2


def test_exit_code_numeric_failure(tmp_path, capsys):
    cfg = write(tmp_path, f"eps: [1.5]\noutput: {{dir: {tmp_path}/o}}")
    assert main(["isoclines", cfg]) == 3
    assert json.loads(capsys.readouterr().err)["status"] == "numeric_failure"


@pytest.mark.parametrize("cmd", ["isoclines", "dulac", "portrait", "cycles",
                                 "bound", "blowup"])
def test_commands_reproducible(tmp_path, capsys, cmd):
    cfg = write(tmp_path, SMALL)
    outs = []
    for k in range(2):
        d = str(tmp_path / f"run{k}")
        assert main([cmd, cfg, "--out", d]) == 0
        outs.append(d)
    files = sorted(os.listdir(outs[0]))
    assert files
    chash = load_config(cfg).hash
    for f in files:
        a = open(os.path.join(outs[0], f), "rb").read()
        b = open(os.path.join(outs[1], f), "rb").read()
        if not f.endswith(".svg"):
            assert a == b, f
        assert chash.encode() in a
        if f.endswith(".json"):
            assert json.loads(a)["schema"] == ex.SCHEMA
        if f.endswith(".svg"):
            root = ET.fromstring(a)
            assert root.get("version") == "1.1"


def test_empty_delta_baseline(tmp_path, capsys):
    cfg = write(tmp_path, SMALL)
    assert main(["bound", cfg, "--out", str(tmp_path / "b")]) == 0
    doc = ex.read_json(str(tmp_path / "b" / "bound_table.json"))
    rows = doc["data"]["rows"]
    assert rows and all(r["real_cycles"] == 0 and r["delta"] == 0 for r in rows)
    hdr, body = ex.read_csv(str(tmp_path / "b" / "bound_table.csv"))
    assert hdr[:3] == ["eps", "delta", "bound"]


def test_bound_regression(tmp_path, capsys):
    cfg = os.path.join(DATA, "bound_reference.yaml")
    assert main(["bound", cfg, "--out", str(tmp_path)]) == 0
    new = ex.read_json(str(tmp_path / "bound_table.json"))
    ref = ex.read_json(os.path.join(DATA, "bound_reference_table.json"))
    assert new["config_hash"] == ref["config_hash"]
    for a, b in zip(new["data"]["rows"], ref["data"]["rows"]):
        for k in ("eps", "delta", "bound", "real_cycles", "melnikov_zeros",
                  "violation", "error"):
            assert a[k] == b[k], k
        assert a["total_variation"] == pytest.approx(b["total_variation"], abs=1e-8)
    for a, b in zip(new["data"]["reports"], ref["data"]["reports"]):
        assert a["petrov_zero_counts"] == b["petrov_zero_counts"]
        for k, v in b["piece_variation"].items():
            assert a["piece_variation"][k] == pytest.approx(v, abs=1e-6)


def test_json_plain_types(tmp_path):
    import numpy as np
    p = ex.write_json(str(tmp_path / "x.json"),
                      {"a": np.float64(1.5), "z": 1 + 2j, "n": np.int64(3),
                       "arr": np.arange(2), "bad": float("nan")}, "h", "t")
    d = ex.read_json(p)["data"]
    assert d == {"a": 1.5, "z": {"re": 1.0, "im": 2.0}, "n": 3, "arr": [0, 1],
                 "bad": None}


def test_svg_canvas_rejects_empty_box():
    with pytest.raises(ValueError):
        ex.SvgCanvas((0, 0, 0, 1))
