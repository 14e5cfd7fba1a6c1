import io
import json
import subprocess
import sys

import pytest

from elusive.cli import run


def call(*argv):
    buf = io.StringIO()
    status = run(list(argv), out=buf)
    return status, buf.getvalue()


def test_decide_example():
    status, out = call("decide", "--family", "OmegaOdd", "-n", "15", "-p", "19",
                       "--case", "A:d=16", "-r", "7")
    doc = json.loads(out)
    assert status == 0 and doc["elusive"] is True and doc["rule"] == "thm1.ii.c"


def test_fuse_example():
    status, out = call("fuse", "--cycle", "3^2,1^2", "-d", "8", "-p", "3")
    assert status == 0 and json.loads(out)["jordan"] == [3, 3, 1]


def test_kappa_and_classes():
    status, out = call("kappa", "--family", "OmegaOdd", "-n", "15", "-p", "19", "-r", "7")
    doc = json.loads(out)
    assert status == 0 and doc["exact"] == 2 and doc["report"]["lower"] == 2
    status, out = call("kappa", "--family", "PSL", "-n", "5", "-p", "7", "-r", "3")
    doc = json.loads(out)
    assert status == 0 and doc["report"] is None and doc["exact"] == 4
    status, out = call("classes", "--family", "PSL", "-n", "2", "-p", "11", "-r", "5")
    assert json.loads(out)["count"] == 2


def test_precondition_exit_code():
    status, out = call("decide", "--family", "PSL", "-n", "2", "-p", "11",
                       "--case", "lowdim:L2-A5", "-r", "2")
    doc = json.loads(out)
    assert status == 2 and doc["kind"] == "precondition" and doc["degree_divisible"] is False
    status, _ = call("decide", "--family", "PSL", "-n", "2", "-p", "11", "--case", "Q:1", "-r", "2")
    assert status == 2


def test_bad_table_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"rows": [{"case": "B3", "r": 2, "condition": "p ==", "source": 4}]}))
    status, out = call("--data", str(path), "tables", "--validate")
    assert status == 2 and "row 0" in json.loads(out)["row"]


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        call("frobnicate")
    assert exc.value.code == 2


def test_internal_error_exit_code(monkeypatch):
    import elusive.cli as cli

    def boom(args):
        raise RuntimeError("boom")

    monkeypatch.setitem(cli.SUITES, "forms", boom)
    status, out = call("verify", "--suite", "forms")
    assert status == 1 and json.loads(out)["kind"] == "internal"


@pytest.mark.parametrize("argv", [
    ["tables"],
    ["coverage", "--dmax", "10", "--rmax", "7"],
    ["verify", "--suite", "forms", "--dmax", "12"],
    ["verify", "--suite", "jordan", "--sample", "20", "--seed", "3", "--verbose"],
    ["classes", "--family", "PSp", "-n", "6", "-p", "3", "-r", "5", "--subgroups"],
])
def test_byte_identical_and_round_trip(argv):
    s1, out1 = call(*argv)
    s2, out2 = call(*argv)
    assert s1 == s2 == 0 and out1 == out2
    doc = json.loads(out1)
    assert json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n" == out1


def test_human_flag():
    status, out = call("--human", "fuse", "--cycle", "3^2,1^2", "-d", "8", "-p", "3")
    assert status == 0 and "jordan: [3, 3, 1]" in out


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "elusive.cli", "verify", "--suite", "lowdim-psl2",
                           "--qmax", "19"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["passed"] is True
