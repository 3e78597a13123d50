from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from stranded.cli import run_subcommand
from stranded.catalog import catalog_text


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_subcommand(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return json.loads(out)


def test_check_planar_tadpole():
    rep = run_json("check", "catalog:planar_tadpole")
    assert rep["checks"]["multi_orientable"] is True
    assert rep["checks"]["colorable"] is False
    assert set(rep) == {"graph", "checks"}
    for key in ("multi_orientable", "colorable", "tadfaces", "generalized_tadpoles", "B", "irregular"):
        assert key in rep["checks"]


def test_check_from_file(tmp_path):
    p = tmp_path / "g.graph"
    p.write_text(catalog_text("nonplanar_tadpole"))
    rep = run_json("check", str(p))
    assert rep["checks"]["multi_orientable"] is False
    assert rep["graph"]["model"] == "boulatov3d"


def test_faces_schema():
    rep = run_json("faces", "catalog:tadpole_chain")
    for f in rep["faces"]:
        assert {"closed", "slot_class", "word", "breaking_legs"} <= set(f)


def test_amplitude_colored_four_point():
    amp = run_json("amplitude", "catalog:colored_four_point")["amplitude"]
    assert amp["degree"] == 0 and len(amp["crossing_residual"]) == 3
    assert {"degree", "residual", "stuck", "log"} <= set(amp)


def test_eval_reports_identity():
    ev = run_json("eval", "catalog:mo_four_point", "--group", "symmetric:3", "--externals", "random:7")["eval"]
    assert ev["N"] == ev["predicted_N"] and ev["identity_of_G2_holds"] is True
    assert ev["externals"] == {"seed": 7}


def test_eval_fit_divergent():
    rep = run_json("eval", "catalog:divergent_four_point", "--group", "cyclic:2", "--group", "cyclic:3")
    assert [e["N"] for e in rep["eval"]] == [16, 81]
    assert rep["fit"]["kappa"] == 4


def test_enumerate_and_census():
    rep = run_json("enumerate", "--model", "boulatov3d", "--vertices", "2", "--legs", "0", "--count-only")
    assert rep["enumerate"]["count"] == 105
    rep = run_json("enumerate", "--model", "mo3d", "--vertices", "1", "--legs", "2", "--dedupe")
    assert rep["enumerate"]["count"] == 1 and len(rep["enumerate"]["graphs"]) == 1
    rows = run_json("census", "--model", "boulatov3d", "--max-vertices", "1", "--legs", "2")["census"]["rows"]
    assert rows == [{"order": 1, "total": 2, "colorable": 0, "mo_only": 1, "neither": 1}]


def test_verify_inclusion():
    rep = run_json("verify", "--suite", "inclusion", "--max-vertices", "2")["verify"]
    assert rep["examined"] > 0 and rep["counterexamples"] == []
    assert "wall_time" not in rep


def test_text_format():
    code, out, _ = run("check", "catalog:planar_tadpole", "--format", "text")
    assert code == 0 and "multi_orientable: yes" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "catalog:nope"),
        ("check", "/nonexistent/file"),
        ("eval", "catalog:planar_tadpole", "--group", "bogus:2"),
        ("eval", "catalog:planar_tadpole", "--group", "cyclic:2", "--externals", "random:x"),
        ("enumerate", "--model", "boulatov3d", "--vertices", "1", "--legs", "1"),
        ("verify", "--suite", "nope"),
        ("frobnicate",),
        (),
    ],
)
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == ""


def test_parse_error_mentions_position(tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("model boulatov3d\nvertex 0\nedge 0.0 0.9\n")
    code, _, err = run("check", str(p))
    assert code == 2 and "line 3" in err


def test_module_entry_point_reads_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "stranded", "check", "-"],
        input=catalog_text("planar_tadpole"),
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["checks"]["multi_orientable"] is True
