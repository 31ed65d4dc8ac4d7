import io
import json
import sys

from weilinv.cli import main


def run_cli(args):
    buf = io.StringIO()
    old = sys.stdout
    sys.stdout = buf
    try:
        status = main(args)
    finally:
        sys.stdout = old
    return status, buf.getvalue()


def test_dim_command():
    status, out = run_cli(["dim", "--symbol", "2_II^-4"])
    assert status == 0
    doc = json.loads(out)
    assert doc["dim"] == 1
    assert doc["closed_form_dim"] == 1
    for key in ("form", "order", "level", "signature", "square_class"):
        assert key in doc


def test_dim_check_flag():
    status, out = run_cli(["dim", "--symbol", "3^-2", "--check"])
    assert status == 0
    doc = json.loads(out)
    assert all(c["pass"] for c in doc["check"])


def test_induced_basis_example():
    status, out = run_cli(["induced-basis", "--symbol", "3^-4"])
    assert status == 0
    doc = json.loads(out)
    assert doc["dim"] == doc["rank"] == 1
    (gen,) = doc["generators"]
    coeffs = {tuple(e["element"]): e["coeff"] for e in gen["vector"]}
    assert coeffs[(0, 0, 0, 0)] == "2"
    assert sum(1 for v in coeffs.values() if v == "-1") == 20


def test_invariants_command():
    status, out = run_cli(["invariants", "--symbol", "5^+2"])
    assert status == 0
    doc = json.loads(out)
    assert doc["dim"] == 2
    assert len(doc["basis"]) == 2


def test_parse_error_exit_code():
    status, out = run_cli(["dim", "--symbol", "bogus^^"])
    assert status == 2
    doc = json.loads(out)
    assert doc["error"]["code"] == "parse-error"


def test_gram_input(tmp_path):
    path = tmp_path / "gram.json"
    path.write_text("[[2,1],[1,2]]")
    status, out = run_cli(["dim", "--gram", str(path)])
    assert status == 0
    doc = json.loads(out)
    assert doc["order"] == 3 and doc["level"] == 3


def test_gram_io_error(tmp_path):
    status, out = run_cli(["dim", "--gram", str(tmp_path / "missing.json")])
    assert status == 5
    assert json.loads(out)["error"]["code"] == "io-error"


def test_jacobi_command(tmp_path):
    path = tmp_path / "gram.json"
    path.write_text("[[2,0],[0,2]]")
    status, out = run_cli(["jacobi", "--gram", str(path)])
    assert status == 0
    doc = json.loads(out)
    assert doc["rank"] == doc["dim"] == 0


def test_s2dim_command():
    status, out = run_cli(["s2dim", "--symbol", "7^+2", "--check"])
    assert status == 0
    doc = json.loads(out)
    assert doc["dim_s2"] == 1
    assert doc["oracle"]["dim_s2"] == 1


def test_verify_command_passes():
    status, out = run_cli(["verify", "--symbol", "2_0^+2"])
    assert status == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    assert {c["property"] for c in doc["checks"]} >= {
        "polarization-identity",
        "milgram-gauss-sum",
        "cusp-partition",
    }


def test_output_is_deterministic():
    outs = {run_cli(["invariants", "--symbol", "2_II^+2"])[1] for _ in range(3)}
    assert len(outs) == 1
    outs = {run_cli(["induced-basis", "--symbol", "5^+2"])[1] for _ in range(2)}
    assert len(outs) == 1


def test_text_format():
    status, out = run_cli(["dim", "--symbol", "2_II^+2", "--format", "text"])
    assert status == 0
    assert "dim = 2" in out
