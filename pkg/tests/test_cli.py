import json
import re
import subprocess
import sys

import pytest

from etaq.cli import run
from etaq.core import parse_eta_quotient

F24 = "1^-1 2^1 4^2 8^1 16^-1"


def test_holo():
    r = run(["holo", "--level", "16", F24])
    assert r.exit_code == 0
    assert r.render() == "holomorphic, orders/24 = 1,13,10,13,1"
    r = run(["holo", "1^-1"])
    assert r.exit_code == 3 and r.render().startswith("not holomorphic")


def test_holo_json():
    r = run(["holo", "--json", "--level", "16", F24])
    assert json.loads(r.render()) == {"holomorphic": True, "level": 16, "orders_24": [1, 13, 10, 13, 1]}


def test_orders_display_over_24():
    text = run(["orders", "1^1 @4"]).render()
    assert "ord at 1/1 = 4/24" in text and text.endswith("orders/24 = 4,1,1")


def test_verify_prop1():
    assert run(["verify", "prop1", "--p", "3", "--n", "6"]).exit_code == 0


def test_qexp():
    assert run(["qexp", "--terms", "3", "1^24"]).render() == "q * (1 - 24q + 252q^2 + …)"


def test_valence():
    r = run(["valence", "--json", "--level", "16", F24])
    assert json.loads(r.render())["left"] == 48 and r.exit_code == 0


def test_usage_and_parse_errors():
    r = run(["frobnicate"])
    assert r.exit_code == 64 and "usage" in r.render()
    assert run([]).exit_code == 64
    assert run(["holo"]).exit_code == 64
    r = run(["holo", "1^1 2^x"])
    assert r.exit_code == 65 and "position 5" in r.render()
    assert run(["holo", "--level", "4", "3^1"]).exit_code == 65


def test_matrix_json():
    B = json.loads(run(["matrix", "--level", "6", "B"]).render())
    assert B == [["6", "-3", "-2", "1"], ["-3", "6", "1", "-2"], ["-2", "1", "6", "-3"], ["1", "-2", "-3", "6"]]
    inv = json.loads(run(["matrix", "--level", "4", "Ainv"]).render())
    assert inv[0][0] == "1/3"
    s = json.loads(run(["matrix", "--level", "9", "smith"]).render())
    assert s["D"] == [["1", "0", "0"], ["0", "3", "0"], ["0", "0", "24"]]
    s6 = json.loads(run(["matrix", "--level", "6", "smith"]).render())
    assert set(s6) == {"D", "U", "V", "Uprime", "Vprime"}


def test_enum_and_bound(monkeypatch):
    r = run(["enum", "--level", "4", "--weight-num", "1"])
    assert r.exit_code == 0 and len(r.render().splitlines()) == 10
    assert run(["enum", "--level", "16", "--weight-num", "4", "--limit", "10"]).exit_code == 4
    monkeypatch.setenv("ETAQ_MAX_BOX", "10")
    assert run(["enum", "--level", "16", "--weight-num", "4"]).exit_code == 4


def test_family_and_bigF():
    assert run(["family", "--p", "2", "--n", "4"]).render() == F24
    r = run(["family", "--p", "3", "--n", "4", "--verify"])
    assert r.exit_code == 0 and "ord_inf = 1/24, ord_0 = 1/24" in r.render()
    assert run(["family", "--p", "2", "--n", "5"]).exit_code == 65
    assert run(["bigF", "--level", "16"]).render() == "2^2 4^1 8^2 @16"


def test_zn():
    r = run(["zn", "--level", "81", run(["family", "--p", "3", "--n", "4"]).render()])
    assert r.exit_code == 0 and r.render().startswith("C = 1/216, 145/216")
    assert run(["zn", "1^48 @16"]).exit_code == 3


def test_simplicity_commands():
    assert run(["simple", "--level", "16", F24]).exit_code == 0
    r = run(["simple", "1^1 2^1 4^1"])
    assert r.exit_code == 3 and "witness" in r.render()
    assert run(["factor", "--level", "16", F24]).render() == "no factorization on Gamma0(16)"
    assert run(["certify", "--p", "3", "--n", "4"]).exit_code == 0
    assert run(["certify", "--p", "3", "--n", "5"]).exit_code == 4
    assert run(["scan", "--p", "2", "--n", "4", "--max-weight-num", "2"]).exit_code == 0
    assert run(["scan", "--p", "3", "--n", "4", "--max-weight-num", "6"]).exit_code == 4
    assert run(["factor", "--bound", "5", "--level", "16", F24]).exit_code == 4


def test_selftest():
    r = run(["selftest", "--json"])
    data = json.loads(r.render())
    assert r.exit_code == 0 and data["failed"] == [] and data["passed"] == data["total"]


TOKEN = re.compile(r"(?:\d+\^-?\d+\s*)+(?:@\d+)?")


@pytest.mark.parametrize(
    "argv",
    [
        ["enum", "--level", "8", "--weight-num", "2"],
        ["factor", "1^1 2^1 4^1"],
        ["factor", "--level", "16", "2^2 4^1 8^2"],
        ["scan", "--p", "2", "--n", "4", "--max-weight-num", "2"],
        ["family", "--p", "5", "--n", "5"],
        ["bigF", "--level", "36"],
    ],
)
def test_printed_quotients_round_trip(argv):
    out = run(argv).render()
    seen = 0
    for line in out.splitlines():
        for chunk in line.split("  *  "):
            chunk = chunk.split("   (")[0].strip()
            if TOKEN.fullmatch(chunk):
                X = parse_eta_quotient(chunk)
                from etaq.core import format_eta_quotient
                assert format_eta_quotient(X) == chunk
                seen += 1
    assert seen > 0


def test_threads_do_not_change_output():
    a = run(["enum", "--level", "18", "--weight-num", "1"]).render()
    b = run(["enum", "--threads", "3", "--level", "18", "--weight-num", "1"]).render()
    assert a == b
    c = run(["factor", "--threads", "2", "1^1 2^1 4^1"]).render()
    assert c == run(["factor", "1^1 2^1 4^1"]).render()


def test_entry_point():
    proc = subprocess.run([sys.executable, "-m", "etaq.cli", "holo", "--level", "16", F24], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "holomorphic, orders/24 = 1,13,10,13,1"
    proc = subprocess.run([sys.executable, "-m", "etaq.cli", "nope"], capture_output=True, text=True)
    assert proc.returncode == 64 and "usage" in proc.stderr
