import hashlib
import io
import json
import subprocess
import sys
from contextlib import redirect_stdout

import pytest

from quartic_monoid.cli import main


def run_cli(*argv):
    """In-process invocation; returns (exit code, stdout text)."""
    buf = io.StringIO()
    with redirect_stdout(buf):
        try:
            rc = main(list(argv))
        except SystemExit as ex:
            rc = ex.code
    return rc, buf.getvalue()


def run_json(*argv):
    rc, out = run_cli(*argv, "--json")
    return rc, json.loads(out)


def rerun_hash(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class TestCertificateShape:
    def test_schema_fields(self):
        rc, doc = run_json("config", "--a", "3")
        assert rc == 0
        assert doc["schema"] == 1 and doc["tool"] == "quartic-monoid"
        assert doc["command"] == "config" and doc["ok"] is True
        assert doc["inputs"] == {"a": "3", "flavor": "original"}
        assert all(set(iv) == {"name", "passed"} for iv in doc["invariants"])
        assert doc["payload_sha256"] == rerun_hash(doc["payload"])

    def test_inputs_exclude_presentation_flags(self):
        rc, doc = run_json("lines", "--a", "3", "--threads", "2")
        assert rc == 0
        assert set(doc["inputs"]) == {"a"}

    def test_error_certificate(self):
        rc, doc = run_json("config", "--a", "1")
        assert rc == 1
        assert doc["ok"] is False
        assert doc["error"]["type"] == "DegenerateParameterError"
        assert "extra collinearity" in doc["error"]["message"]

    def test_human_mode(self):
        rc, out = run_cli("surface", "--flavor", "qa", "--a", "3")
        assert rc == 0
        assert out.startswith("quartic-monoid surface")
        assert "[pass]" in out and out.rstrip().endswith("result: ok")

    def test_out_file(self, tmp_path):
        target = tmp_path / "cert.json"
        rc, out = run_cli("jinv", "--a", "3", "--json", "--out", str(target))
        assert rc == 0 and out == ""
        doc = json.loads(target.read_text())
        assert doc["command"] == "jinv" and doc["ok"]


class TestExitCodes:
    def test_usage_errors(self):
        for argv in (("config", "--a", "zebra"),
                     ("sextuple", "--a", "3", "--triple", "0,1,2"),
                     ("sextuple", "--a", "3", "--triple", "1,2"),
                     ("surface", "--flavor", "qab", "--a", "3"),
                     ("equiv", "--a", "symbolic", "--b2", "3"),
                     ("nonsense",)):
            buf = io.StringIO()
            with redirect_stdout(buf), pytest.raises(SystemExit) as ex:
                main(list(argv))
            assert ex.value.code == 2, argv

    def test_degenerate_values(self):
        assert run_cli("config", "--a", "-1")[0] == 1
        assert run_cli("jinv", "--a", "0")[0] == 1
        assert run_cli("surface", "--flavor", "qa", "--a", "2")[0] == 1


class TestCommandPayloads:
    def test_config(self):
        rc, doc = run_json("config", "--a", "3", "--flavor", "normalized")
        assert rc == 0 and doc["ok"]
        assert len(doc["payload"]["points"]) == 12

    def test_surface_rohn(self):
        rc, doc = run_json("surface", "--flavor", "rohn")
        assert rc == 0 and doc["ok"]
        assert doc["payload"]["flavor"] == "rohn"
        assert doc["payload"]["a"] is None

    def test_lines(self):
        rc, doc = run_json("lines", "--a", "3")
        assert rc == 0 and doc["ok"]
        assert len(doc["payload"]["lines"]) == 31
        counts = doc["payload"]["meeting_counts"]
        assert {int(k) for k, v in counts.items() if v == 4} == {2, 9, 11}

    def test_smooth_symbolic(self):
        rc, doc = run_json("smooth", "--symbolic")
        assert rc == 0 and doc["ok"]
        assert doc["payload"]["singular_parameter_values"] == []

    def test_smooth_two_parameter_family(self):
        rc, doc = run_json("smooth", "--symbolic", "--b", "symbolic")
        assert rc == 0
        assert not doc["ok"]
        assert doc["payload"]["singular_parameter_values"] == ["-2", "-1/2"]

    def test_sextuple(self):
        rc, doc = run_json("sextuple", "--a", "3", "--triple", "11,10,9")
        assert rc == 0 and doc["ok"]
        assert doc["payload"]["points"][0] == ["1", "0", "0", "1"]
        assert set(doc["payload"]["aux"]) == {"R1", "R2", "R3", "A1", "A2"}

    def test_jinv(self):
        rc, doc = run_json("jinv", "--a", "3")
        assert rc == 0 and doc["ok"]
        assert doc["payload"]["j"] == "21952/9"
        assert sorted(doc["payload"]["orbit"]) == sorted(
            ["3", "1/3", "-1/2", "3/2", "-2", "2/3"])

    def test_equiv_positive_and_negative(self):
        rc, doc = run_json("equiv", "--a", "3", "--b2", "1/3")
        assert rc == 0 and doc["ok"] and doc["payload"]["equivalent"]
        assert doc["payload"]["witness"] is not None
        rc, doc = run_json("equiv", "--a", "3", "--b2", "5")
        assert rc == 0 and doc["ok"] and not doc["payload"]["equivalent"]
        assert doc["payload"]["witness"] is None
        assert doc["payload"]["j_a"] == "21952/9"
        assert doc["payload"]["j_b"] == "148176/25"


def run_subprocess(*argv):
    proc = subprocess.run([sys.executable, "-m", "quartic_monoid", *argv],
                          capture_output=True, timeout=900)
    return proc.returncode, proc.stdout


class TestDeterminism:
    FAST = (
        ("config", "--a", "3"),
        ("lines", "--a", "3"),
        ("smooth", "--symbolic"),
        ("sextuple", "--a", "3", "--triple", "11,10,9"),
        ("jinv", "--a", "symbolic"),
    )

    def test_fast_commands_byte_identical(self):
        for argv in self.FAST:
            rc1, out1 = run_subprocess(*argv, "--json")
            rc2, out2 = run_subprocess(*argv, "--json")
            assert rc1 == rc2 == 0, argv
            assert out1 == out2, argv

    def test_sweep_byte_identical_across_thread_counts(self):
        runs = [run_subprocess("stab", "--a", "3", "--json",
                               "--threads", str(n)) for n in (1, 2, 1)]
        assert all(rc == 0 for rc, _ in runs)
        assert runs[0][1] == runs[1][1] == runs[2][1]
