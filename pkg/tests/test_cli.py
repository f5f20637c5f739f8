import io
import json
import subprocess
import sys

import pytest

from overschur.claims import claims_to_json, instantiate_family
from overschur.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_expand_json():
    code, out, _ = call("expand", "--spec", "schur_over(3)", "--trunc", "10", "--json")
    assert code == 0
    assert json.loads(out)["coefficients"] == ["1", "2", "2", "2", "2", "4", "6", "8", "10", "10"]


def test_expand_csv_and_modulus():
    code, out, _ = call("expand", "--spec", "f1^4", "--trunc", "7", "--modulus", "3", "--csv")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "index,coefficient"
    assert [int(r.split(",")[1]) for r in rows[1:]] == [1, 2, 2, 2, 1, 2, 2]


def test_expand_prefix_consistent():
    _, short, _ = call("expand", "--spec", "f2^3 / (f1^2 * f4)", "--trunc", "40", "--json")
    _, long, _ = call("expand", "--spec", "f2^3 / (f1^2 * f4)", "--trunc", "90", "--json")
    assert json.loads(long)["coefficients"][:40] == json.loads(short)["coefficients"]


def test_dissect():
    code, out, _ = call("dissect", "--spec", "f1", "--p", "5", "--j", "4", "--trunc", "20", "--json")
    assert code == 0
    assert set(json.loads(out)["components"]["4"]) == {"0"}


def test_oracle():
    code, out, _ = call("oracle", "--t", "3", "--n", "5", "--json")
    assert code == 0 and json.loads(out) == {"enum": 4, "series": 4, "agree": True}
    code, out, _ = call("oracle", "--kind", "i_t", "--t", "3", "--n", "5", "--json")
    assert json.loads(out)["enum"] == 4
    code, out, _ = call("oracle", "--kind", "i_t", "--reading", "literal", "--t", "3", "--n", "5", "--json")
    assert code == 1 and not json.loads(out)["agree"]
    code, out, _ = call("oracle", "--kind", "podbar", "--n", "6", "--csv")
    assert code == 0 and out.splitlines()[1] == "12,12,true"


def test_verify_identity_and_claim_ids():
    code, out, _ = call("verify", "--id", "d2_f3cube_over_f1", "--json", "--no-timing")
    assert code == 0 and json.loads(out)["verdict"] == "verified" and "ms" not in json.loads(out)
    code, out, _ = call("verify", "--id", "d2_f3cube_over_f1_sign_flipped", "--json")
    assert code == 1 and json.loads(out)["counterexample"]["n"] == 1
    code, out, _ = call("verify", "--id", "s3_6n5_mod4", "--nmax", "100", "--csv")
    assert code == 0 and out.startswith("s3_6n5_mod4,verified,100")


def test_verify_suites():
    code, out, _ = call("verify", "--suite", "dissections", "--trunc", "150")
    assert code == 0 and len(out.splitlines()) == 6
    code, out, _ = call("verify", "--suite", "modforms", "--json")
    assert code == 0
    code, out, _ = call("verify", "--suite", "misprints", "--nmax", "200")
    assert code == 1
    assert all(line.startswith("COUNTEREXAMPLE") for line in out.splitlines())


def test_verify_all_is_deterministic():
    code, a, _ = call("verify", "--suite", "all", "--trunc", "300", "--nmax", "500", "--json", "--no-timing")
    assert code == 0
    _, b, _ = call("verify", "--suite", "all", "--trunc", "300", "--nmax", "500", "--json", "--no-timing")
    assert a == b
    assert all(json.loads(x)["verdict"] == "verified" for x in a.splitlines())


def test_verify_suite_file(tmp_path):
    good = instantiate_family("s3_padic_mod3", 50, p=5, alpha=0, i=1)
    bad = instantiate_family("s3_scaling_mod8_printed", 20, p=5, j=1)
    f = tmp_path / "suite.json"
    f.write_text(claims_to_json([good]))
    assert call("verify", "--suite-file", str(f))[0] == 0
    f.write_text(claims_to_json([good, bad]))
    assert call("verify", "--suite-file", str(f))[0] == 1
    f.write_text("[{\"id\": 1, \"oops\": 2}]")
    assert call("verify", "--suite-file", str(f))[0] == 2


def test_scan():
    code, out, _ = call("scan", "--t", "3", "--amax", "12", "--moduli", "4,8,16", "--json")
    assert code == 0
    found = {(d["a"], d["b"], d["m"]) for d in map(json.loads, out.splitlines())}
    assert {(6, 5, 4), (12, 7, 8), (12, 11, 16)} <= found


def test_modform():
    code, out, _ = call("modform", "--eta", "6:4", "--level", "36", "--primes", "5,7", "--trunc", "600", "--json")
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    assert lines[0]["params"]["weight"] == "2"
    assert lines[-1]["params"]["lambda"] == -4


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["expand", "--trunc", "10"],
    ["expand", "--spec", "f1^", "--trunc", "10"],
    ["expand", "--spec", "f1", "--trunc", "0"],
    ["dissect", "--spec", "f1", "--p", "3", "--j", "5", "--trunc", "10"],
    ["verify", "--suite", "nope"],
    ["verify", "--id", "no_such_thing"],
    ["verify", "--suite", "all", "--id", "phi_eta"],
    ["scan", "--t", "3", "--amax", "4", "--moduli", "x"],
    ["scan", "--t", "3", "--amax", "4", "--moduli", "1"],
    ["modform", "--eta", "5:1", "--level", "36"],
    ["modform", "--eta", "6:4", "--level", "36", "--check", "magic"],
    ["oracle", "--t", "4", "--n", "3"],
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert "usage" in err


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "overschur", "oracle", "--t", "9", "--n", "3", "--json"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["enum"] == 4
