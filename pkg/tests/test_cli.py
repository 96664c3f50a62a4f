import csv
import io
import json
import subprocess
import sys

import pytest

from doublet.cli import SCHEMA_VERSION, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    rc = run(list(argv), out, err)
    return rc, out.getvalue(), err.getvalue()


def test_json_envelope():
    rc, out, _ = call("simples", "S3")
    assert rc == 0
    doc = json.loads(out)
    assert doc["schemaVersion"] == SCHEMA_VERSION and doc["command"] == "simples"


def test_byte_identical_reruns():
    for argv in (("smatrix", "S3"), ("algebras", "S3", "--format", "md"), ("graph", "S3", "S3", "--format", "csv")):
        assert call(*argv)[1] == call(*argv)[1]


def test_smatrix_values():
    doc = json.loads(call("smatrix", "S3")[1])
    S = doc["payload"]["S"]
    assert len(S) == 8 and S[0][0]["display"] == "1/6"
    assert S[6][6]["display"] == "1/2"


def test_markdown_and_csv():
    rc, md, _ = call("tmatrix", "S3", "--format", "md")
    assert rc == 0 and "| label | T |" in md
    rc, text, _ = call("simples", "S3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["index", "label", "dimension"] and len(rows) == 9


def test_dw_command():
    doc = json.loads(call("dw", "S3", "L(2)")[1])
    assert "2/3" in json.dumps(doc["payload"], ensure_ascii=False)


def test_verify_exit_codes():
    assert call("verify", "S3")[0] == 0
    assert call("algebras", "C4", "--verify")[0] == 0


@pytest.mark.parametrize("argv", [("simples", "Q7"), ("dw", "S3", "nowhere"), ("frobnicate",), ("simples",)])
def test_usage_errors(argv):
    rc, _, err = call(*argv)
    assert rc == 2
    assert err


def test_cap_is_a_usage_error(monkeypatch):
    monkeypatch.setenv("DOUBLET_SIZE_CAP", "10")
    assert call("invariants", "S3", "S3")[0] == 2


def test_console_script():
    p = subprocess.run([sys.executable, "-m", "doublet.cli", "equivalences", "C2", "C2"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    labels = json.dumps(json.loads(p.stdout)["payload"], ensure_ascii=False)
    assert "δ(C2)" in labels and "(C2×C2,γ)" in labels
