import io
import json
import subprocess
import sys

import pytest

from nilfit import cli
from nilfit.errors import InternalInconsistencyError

EXAMPLE = {"field": "Q", "ambient": "affine", "points": [[1, 0], [1, 1], [3, -1], [-3, 2]]}


def run(argv, job=None):
    stdin = io.StringIO(json.dumps(job) if isinstance(job, dict) else (job or ""))
    return cli.run(argv, stdin=stdin)


def test_lines_on_example():
    code, out = run(["lines"], EXAMPLE)
    assert code == 0
    assert out["schema"] == "nilfit/1"
    assert (out["hyp"], out["nil"], out["d"]) == (3, 2, 1)
    assert out["hyperplanes"] == [{"projective": "-x-2*y+z", "affine": "x+2*y=1", "witnesses": [1, 3, 4]}]


def test_rational_strings_and_projective_input():
    job = {"ambient": "projective", "points": [["1", "0", "1"], [1, 1, 1], [3, -1, 1], ["-3/2", "1", "1/2"]]}
    code, out = run(["hyp"], job)
    assert code == 0 and out["hyp"] == 3


def test_nil_chain_output():
    code, out = run(["nil"], EXAMPLE)
    assert code == 0
    assert out["chain"] == [["y+2*z", "x+z"], ["1"]]


def test_check_non_generic():
    job = {"ambient": "projective", "points": [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}
    code, out = run(["check"], job)
    assert code == 2
    assert out["error"]["type"] == "NotGeneric"
    assert out["error"]["witness"] == [1, 2, 3]


@pytest.mark.parametrize(
    "job,kind",
    [
        ('{"points": [[1, 2]', "ParseError"),
        ({"points": [[1.5, 2], [1, 1]]}, "SchemaError"),
        ({"points": [[1, 2]], "colour": "red"}, "SchemaError"),
        ({"points": [[1, 2], [3]]}, "DegeneratePointSet"),
        ({"points": [[1, 2], [1, 2], [0, 0]]}, "DuplicatePoints"),
        ({"points": []}, "EmptyInput"),
        ({"field": {"Fp": 4}, "points": [[1, 2]]}, "BadField"),
        ({"points": [[1, 2]], "options": {"order": "weird"}}, "BadOrder"),
        ({"points": [[1, 0], [0, 1], [1, 1], [2, 5]], "options": {"max_points": 3}}, "CapExceeded"),
    ],
)
def test_input_errors_exit_two(job, kind):
    code, out = run(["lines"], job)
    assert code == 2
    assert out["error"]["type"] == kind


def test_field_override_and_mindist():
    job = {"points": [[1, 0], [0, 1], [1, 1], [2, 3], [4, 1]]}
    code, out = run(["mindist", "--field", "GF(5)", "--oracle"], job)
    assert code == 0
    assert out["d"] == 2 and out["oracle"] == {"d": 2, "agree": True}
    assert all(sum(1 for c in w if c != "0") == 2 for w in out["codewords"])


def test_fatpoints():
    job = {"ambient": "projective", "points": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "multiplicities": [1, 2, 3]}
    code, out = run(["fatpoints", "--oracle"], job)
    assert code == 0 and out["nil"] == 3 and out["oracle"]["agree"]
    code, out = run(["fatpoints"], {"points": [[1, 0]]})
    assert code == 2


def test_decomp():
    code, out = run(["decomp"], EXAMPLE)
    assert code == 0 and out["holds"]


def test_oracle_flag():
    code, out = run(["lines", "--oracle"], EXAMPLE)
    assert code == 0
    assert all(c["agree"] for c in out["oracle"])


def test_internal_inconsistency_exit_one(monkeypatch):
    def broken(*args, **kwargs):
        raise InternalInconsistencyError("routes disagree")

    monkeypatch.setattr(cli, "hyp_via_nil", broken)
    code, out = run(["hyp"], EXAMPLE)
    assert code == 1 and out["error"]["type"] == "InternalInconsistency"


def test_verify_is_deterministic():
    a = run(["verify", "--seed", "3", "--trials", "4"])
    b = run(["verify", "--seed", "3", "--trials", "4"])
    assert a == b
    code, out = a
    assert code == 0 and out["agreements"] == 4
    assert cli.dumps(a[1]) == cli.dumps(b[1])


def test_console_entry_point(tmp_path):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(EXAMPLE))
    proc = subprocess.run([sys.executable, "-m", "nilfit", "lines", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["hyp"] == 3
    proc = subprocess.run([sys.executable, "-m", "nilfit", "lines", str(tmp_path / "missing.json")], capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["error"]["type"] == "ReadError"
