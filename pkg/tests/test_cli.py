import json
import subprocess
import sys

import pytest

from qcalc.cli import main
from qcalc.suites import DEFAULT_SEED, SUITES, seed_from_env


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_normalize(capsys):
    assert run(capsys, "normalize", "D*theta − q*theta*D") == (0, "1", "")
    assert run(capsys, "normalize", "[D, be(theta,2)]")[:2] == (0, "theta")
    assert run(capsys, "normalize", "-n", "3", "D^3")[:2] == (0, "dz")


def test_normalize_parse_error(capsys):
    code, out, err = run(capsys, "normalize", "qnum(3")
    assert code == 2
    assert "syntax error at offset 7" in err


def test_parse_error_json(capsys):
    code, out, _ = run(capsys, "normalize", "qnum(3", "--json")
    rec = json.loads(out)
    assert code == 2 and rec["error"] == "ParseError" and rec["offset"] == 7


def test_generic_mode_rejects_z(capsys):
    assert run(capsys, "normalize", "z")[0] == 2


def test_bracket(capsys):
    assert run(capsys, "bracket", "D", "theta")[:2] == (0, "1")
    code, out, _ = run(capsys, "bracket", "D", "z", "-n", "5", "--json")
    assert code == 0 and json.loads(out)["mode"] == "n=5"


def test_limit(capsys):
    code, out, _ = run(capsys, "limit", "-n", "3", "qfact(6)/(qfact(3)^2)")
    assert code == 0
    value, order = out.split(", cancelled_order = ")
    assert value == "2" and int(order) >= 1


def test_limit_pole(capsys):
    code, out, _ = run(capsys, "limit", "-n", "3", "1/qnum(3)", "--json")
    rec = json.loads(out)
    assert code == 1 and rec["error"] == "PoleAtRoot" and rec["n"] == 3


def test_limit_needs_odd_n(capsys):
    with pytest.raises(SystemExit) as info:
        main(["limit", "-n", "4", "q"])
    assert info.value.code == 2
    capsys.readouterr()


def test_rep_numeric(capsys):
    code, out, _ = run(capsys, "rep", "-n", "3", "--op", "a", "--numeric")
    payload = json.loads(out)
    assert code == 0
    assert len(payload["entries"]) == 3 and all(len(row) == 3 for row in payload["entries"])


def test_rep_usage_error(capsys):
    assert run(capsys, "rep", "--op", "a")[0] == 2


def test_rep_exact(capsys):
    code, out, _ = run(capsys, "rep", "--op", "theta", "--cutoff", "3")
    assert code == 0 and json.loads(out)["entries"][1][0] == "1"


def test_verify_number_identity_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "eq15", "--rmax", "12")
    assert code == 0 and out.startswith("PASS")


def test_verify_json_lines(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "defcr", "--json")
    records = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and records and all(r["passed"] for r in records)


def test_all_suites_listed():
    for name in ("lemmas", "eq15", "defcr", "fsusy"):
        assert name in SUITES


def test_seed_from_env(monkeypatch):
    monkeypatch.delenv("QCALC_SEED", raising=False)
    assert seed_from_env() == DEFAULT_SEED
    monkeypatch.setenv("QCALC_SEED", "42")
    assert seed_from_env() == 42


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qcalc.cli", "normalize", "eps*theta"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "(1 / q)*theta*eps"
