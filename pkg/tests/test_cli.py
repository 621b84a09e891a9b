import json
import subprocess
import sys

from sklyanin.cli import run
from sklyanin.cpoly import CPoly
from sklyanin.strata import YPoint


def call(*argv):
    text, code = run(list(argv))
    return text, code


def test_sigma_order():
    text, code = call("sigma-order", "--params", "1,1,2")
    assert code == 0 and json.loads(text)["order"] == 2


def test_sigma_order_beyond_cap():
    text, code = call("sigma-order", "--params", "1,2,3", "--order-cap", "8")
    assert code == 1 and json.loads(text)["order"] is None


def test_forbidden_params_exit_code():
    text, code = call("hilbert", "--params", "1,1,1")
    assert code == 2 and json.loads(text)["error"] == "ForbiddenParameters"


def test_hilbert():
    text, code = call("hilbert", "--params", "1,-1,-1", "--degree-cap", "5")
    assert code == 0 and json.loads(text)["dims"] == [1, 3, 6, 10, 15, 21]


def test_center_document(cp6):
    text, code = call("center", "--params", "1,-1,-1")
    doc = json.loads(text)
    assert code == 0
    assert CPoly.from_json(doc["F"]) == cp6.F
    assert doc["mu"] == "1331/373248" and doc["alpha"] == "1/108"


def test_deterministic_bytes():
    a = call("jacobi", "--params", "1,1,2")
    b = call("jacobi", "--params", "1,1,2")
    assert a == b and a[1] == 0


def test_classify_and_slices():
    doc = json.loads(call("classify", "--params", "1,1,2", "--point", "1,-1,0,0")[0])
    assert doc["stratum"] == "Y3" and doc["azumaya"] and doc["expected_dims"] == [2]
    doc = json.loads(call("slice-singulars", "--params", "1,-1,-1", "--gamma", "4")[0])
    pts = {YPoint(*map(int, p)) for p in doc["points"]}
    assert YPoint(-1728, 0, 0, 4) in pts and doc["count"] == 3


def test_discriminant():
    doc = json.loads(call("discriminant", "--params", "1,-1,-1", "--k", "13")[0])
    assert doc["zero_sets"] == {"13": "C1 u C2 u C3"}


def test_specialize_direction():
    text, code = call("specialize", "--params", "1,1,2", "--direction", "1,0,0")
    doc = json.loads(text)
    assert code == 0 and doc["level"] == 1 and doc["eta"] == "1/7"


def test_verify_rep_bundled_reports_sign_of_g():
    doc = json.loads(call("verify-rep")[0])
    assert doc["relations_ok"] and doc["irreducible"] and doc["stratum"] == "Y2"
    assert doc["central_character"] == ["-1728", "0", "0", "-4"]


def test_figure_and_out_file(tmp_path):
    out = tmp_path / "fig.svg"
    text, code = call("figure1", "--params", "1,-1,-1", "--out", str(out))
    assert code == 0 and out.read_text().strip() == text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sklyanin", "sigma-order", "--params", "1,-1,-1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["order"] == 6
