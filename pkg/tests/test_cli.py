import io
import json
import subprocess
import sys

import pytest

from poissonfield.cli import main, run
from poissonfield.parse import parse


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        code = run(list(argv), out, err)
    except SystemExit as e:
        code = e.code
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call(*argv, "--json")
    data = json.loads(out)
    assert data["exit_code"] == code
    return code, data


GOLDEN = [
    (("bracket", "x", "y", "--flag", "x*y"), 0, "x*y\n"),
    (("bracket", "x", "1/y", "--flag", "1"), 0, "-1/y^2\n"),
    (("classify", "--flag", "x*y*(y-1)"), 0, "K_q(q=1) verified=true generators=(-1/2*x*y, 1/2*x*y - 1/2*x)\n"),
    (("flag-height", "--flag", "x^5*y"), 0, "fht=6 vht1=6 witness=(-1,-1)@w=4\n"),
    (("valuation", "--nu=-1,-1", "x^2*y", "--flag", "1"), 0, "w=-2 nu=-3\n"),
    (("logderiv", "--roots", "0,1,-1", "--gamma", "1/2"), 0, "t^(-2)*(t - 1)*(t + 1)\n"),
    (("iso", "--flag", "x*y", "--other", "2*x*y"), 1, "isomorphic=false (canonical types)\n"),
]


@pytest.mark.parametrize("argv, code, text", GOLDEN)
def test_golden(argv, code, text):
    got, out, _ = call(*argv)
    assert (got, out) == (code, text)


def test_exit_codes():
    assert call("jacobi", "x", "y", "x*y", "--flag", "x^2+y")[0] == 0
    assert call("iso", "--flag", "x*y", "--other", "x*y*(x+y)")[0] == 1
    assert call("embed", "--flag", "x*y", "--other", "x^3*y")[0] == 1
    code, _, err = call("classify", "--flag", "x^2+y^3")
    assert code == 2 and "outside" in err
    code, _, err = call("bracket", "x", "2x", "--flag", "1")
    assert code == 3 and err.startswith("input error")
    assert call("bracket", "x", "--flag", "1")[0] == 3
    assert call("nonsense")[0] == 3
    assert call("bracket", "x", "y", "--flag", "x/(y-y)")[0] == 3
    assert call("aut", "--flag", "x^2+y^3")[0] == 2


def test_dixmier_codes():
    assert call("dixmier", "--flag", "x*y")[0] == 1
    assert call("dixmier", "--flag", "x*y*(x+y)*(x+2*y)")[0] == 0


def test_json_expressions_reparse():
    code, data = call_json("classify", "--flag", "(3*x+2)*x*y")
    assert code == 0 and data["type"] == "Kq" and data["q"] == "2" and data["verified"]
    u, v = (parse(g) for g in data["generators"])
    _, b = call_json("bracket", str(u), str(v), "--flag", "(3*x+2)*x*y")
    assert parse(b["bracket"]) == 2 * u * v


def test_json_aut_and_error_payload():
    code, data = call_json("aut", "--flag", "x*y*(x^2-1)*(y^2-1)")
    assert code == 0 and data["order"] == 4
    code, data = call_json("bracket", "x", "2x", "--flag", "1")
    assert code == 3 and data["error"] and data["message"]


def test_qt_mode():
    code, out, _ = call("bracket", "x", "y", "--flag", "t*x*y", "--mode", "qt")
    assert code == 0 and parse(out, "qt") == parse("t*x*y", "qt")
    assert call("bracket", "x", "y", "--flag", "t*x*y")[0] == 3


def test_witness_and_build():
    code, out, _ = call("subfield-witness", "cubic-log", "alpha1=1", "alpha2=-1")
    assert code == 0 and "verified=true" in out
    assert call("subfield-witness", "cubic-log", "alpha1=1")[0] == 3
    code, data = call_json("build-infinite-flag", "--u", "x", "--a", "1", "--b", "0,2", "--f", "t^2")
    assert code == 0 and parse(data["flag"]) == parse("x*y*(x-1)^2/(x^2*(x-2)^2)")


def test_stdin_and_entry_point():
    proc = subprocess.run([sys.executable, "-m", "poissonfield", "classify", "--flag", "-"],
                          input="x^3*y\n", capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0 and proc.stdout.startswith("K_1n0(n=2")
    assert main(["bracket", "x"]) == 3


def test_deterministic_output():
    argv = ("aut", "--flag", "x*y*(x+y)*(x+2*y)", "--json")
    assert len({call(*argv)[1] for _ in range(3)}) == 1
