import io
import json
import subprocess
import sys

import pytest

from smoothsum.cli import EXIT_ABSENT, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main
from smoothsum.repr_exact import read_table


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_f_prints_23():
    assert run("f", "--primes", "2,3", "--k", "2", "--limit", "1000") == (EXIT_OK, "23\n")


def test_lambda_prints_4():
    assert run("lambda", "--m", "15") == (EXIT_OK, "4\n")


def test_enumerate_text():
    assert run("enumerate", "--primes", "2,3", "--limit", "10") == (EXIT_OK, "1 2 3 4 6 8 9\n")


def test_less_than_convention():
    assert run("f", "--k", "3", "--convention", "less-than")[1] == "23\n"
    assert run("f", "--k", "1", "--convention", "less-than")[1] == "1\n"


def test_exit_codes():
    assert run("f", "--k", "5", "--limit", "1000")[0] == EXIT_ABSENT
    with pytest.raises(SystemExit) as e:
        main(["f", "--primes", "2,4", "--k", "1"])
    assert e.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == EXIT_USAGE
    assert run("f-signed", "--k", "6", "--limit", "10000", "--frontier-cap", "1000")[0] \
        in (EXIT_RESOURCE, EXIT_ABSENT)
    assert run("f-signed", "--k", "4", "--limit", "700000", "--bound", "10**12",
               "--frontier-cap", "1000")[0] == EXIT_RESOURCE
    assert run("--workers", "0", "lambda", "--m", "5")[0] == EXIT_USAGE
    assert run("lambda-window", "--i", "16", "--C3", "1", "--C4", "0.01", "--budget", "5")[0] \
        == EXIT_ABSENT


@pytest.mark.parametrize("argv,schema", [
    (["enumerate", "--limit", "100"], "smoothsum/enumerate/v1"),
    (["min-terms", "--limit", "1000", "--n", "23"], "smoothsum/min-terms/v1"),
    (["f", "--k", "2"], "smoothsum/f/v1"),
    (["f-signed", "--k", "2", "--limit", "1000"], "smoothsum/f-signed/v1"),
    (["signed-search", "--n", "23", "--bound", "100"], "smoothsum/signed-search/v1"),
    (["greedy", "--n", "23"], "smoothsum/greedy/v1"),
    (["gaps", "--lo", "10", "--hi", "100", "--records"], "smoothsum/gaps/v1"),
    (["lambda", "--m", "27720"], "smoothsum/lambda/v1"),
    (["eps-construct", "--y", "10"], "smoothsum/eps-construct/v1"),
    (["lambda-window", "--i", "1000"], "smoothsum/lambda-window/v1"),
    (["coverage", "--k", "2", "--m", "252", "--signed", "--bound-check"], "smoothsum/coverage/v1"),
    (["certify", "--k", "2", "--budget", "100", "--verify"], "smoothsum/certificate/v1"),
    (["bounds", "--k", "3"], "smoothsum/bounds-report/v1"),
    (["bounds", "--k", "3", "--empirical", "--limit", "1000"], "smoothsum/empirical-report/v1"),
    (["sieve-count", "--N", "10000"], "smoothsum/sieve-count/v1"),
    (["evertse-check", "--entries=-5,2,3"], "smoothsum/evertse-verdict/v1"),
])
def test_json_roundtrip(argv, schema):
    code, out = run("--format", "json", *argv)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["schema"] == schema
    assert json.dumps(payload, sort_keys=True) + "\n" == out


def test_json_values():
    _, out = run("--format", "json", "min-terms", "--limit", "1000", "--n", "23")
    p = json.loads(out)
    assert p["min_terms"] == 3 and p["F"]["1"] == 5 and p["F"]["3"] == 431
    _, out = run("--format", "json", "certify", "--k", "2", "--budget", "100", "--verify")
    p = json.loads(out)
    assert p["witness_n"] == 103 and p["checked_by_search"]
    _, out = run("--format", "json", "evertse-check", "--entries=-5,2,3")
    p = json.loads(out)
    assert (p["zero_sum"], p["no_vanishing_subsum"], p["coprime"], p["height_bound"]) == \
        (True, True, True, False)
    _, out = run("--format", "json", "signed-search", "--n", "23", "--bound", "100")
    p = json.loads(out)
    assert p["length"] == 2 and sum(t["sign"] * t["value"] for t in p["terms"]) == 23


def test_bounds_text_mentions_limitation():
    _, out = run("bounds", "--k", "3")
    assert "cannot verify" in out


def test_csv_output():
    _, out = run("--format", "csv", "enumerate", "--limit", "10")
    assert out.splitlines()[0] == "value,e2,e3"
    assert out.splitlines()[-1] == "9,0,2"


def test_table_export(tmp_path):
    code, _ = run("min-terms", "--limit", "5000", "--term-cap", "6",
                  "--out", str(tmp_path / "t.bin"), "--summary", str(tmp_path / "t.json"))
    assert code == EXIT_OK
    t = read_table(tmp_path / "t.bin")
    assert t[23] == 3
    assert json.loads((tmp_path / "t.json").read_text())["F"]["2"] == 23


def test_deterministic_across_workers():
    a = run("--format", "json", "--workers", "1", "gaps", "--lo", "1000", "--hi", "50000")
    b = run("--format", "json", "--workers", "3", "gaps", "--lo", "1000", "--hi", "50000")
    assert a == b


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "smoothsum", "lambda", "--m", "8"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "2\n"


def test_memory_env_cap(monkeypatch):
    monkeypatch.setenv("SMOOTHSUM_MAX_MEM", "1K")
    assert run("min-terms", "--limit", "100000")[0] == EXIT_RESOURCE
