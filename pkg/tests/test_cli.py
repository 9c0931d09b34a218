import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from symsig import cli
from symsig.errors import InternalConsistencyError
from symsig.report import SCHEMA_VERSION, canonical_json, stable_view

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("SYMSIG_REGEN_GOLDEN") == "1"


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code, report = cli.run(argv, stdout=out, stderr=err)
    return code, report, out.getvalue(), err.getvalue()


def _data(data_dir, rel):
    return str(Path(data_dir) / rel)


# (name, argv relative to the data dir)
CASES = [
    ("hypersurface_xy_zw", ["hypersurface", "--ring", "rings/xyzw.ring", "--poly", "x*y - z*w", "--assume-domain"]),
    ("hypersurface_cone", ["hypersurface", "--ring", "rings/xyz.ring", "--poly", "x^2 - y*z", "--assume-domain"]),
    ("ci_minors", ["ci-freerank", "--ideal", "ideals/minors.ideal", "--assume-domain", "--max-q", "2"]),
    ("quotient_neg2", ["quotient", "--group", "groups/neg2.grp", "--max-degree", "50"]),
    ("quotient_swap", ["quotient", "--group", "groups/swap.grp"]),
    ("groebner_minors", ["groebner", "--ideal", "ideals/minors.ideal"]),
    ("nf_xy_zw", ["nf", "--ideal", "ideals/xy-zw.ideal", "--poly", "x^2*y - x*z*w + y"]),
    ("dim_minors", ["dim", "--ideal", "ideals/minors.ideal"]),
    ("hilbert_minors", ["hilbert", "--ideal", "ideals/minors.ideal", "--max-degree", "6"]),
]
FILE_FLAGS = {"--ring", "--ideal", "--group"}


def _resolve(argv, data_dir):
    return [_data(data_dir, a) if prev in FILE_FLAGS else a for prev, a in zip([None] + argv, argv)]


@pytest.mark.parametrize("name, argv", CASES, ids=[c[0] for c in CASES])
def test_golden_reports(name, argv, data_dir):
    code, report, _, _ = _run(_resolve(argv, data_dir))
    assert code == 0
    text = canonical_json(stable_view(report))
    path = GOLDEN / f"{name}.json"
    if REGEN:
        path.write_text(text)
    assert path.read_text() == text


def test_reports_are_reproducible(data_dir):
    argv = _resolve(CASES[0][1], data_dir)
    a, b = _run(argv)[1], _run(argv)[1]
    assert canonical_json(stable_view(a)) == canonical_json(stable_view(b))


def test_report_schema(data_dir, tmp_path):
    path = tmp_path / "r.json"
    code, _, _, _ = _run(_resolve(CASES[0][1], data_dir) + ["--json", str(path)])
    assert code == 0
    rep = json.loads(path.read_text())
    for key in ("schema_version", "tool", "version", "command", "inputs", "seed", "wall_time_s",
                "verdict", "certificate", "warnings"):
        assert key in rep
    assert rep["schema_version"] == SCHEMA_VERSION
    assert len(rep["inputs"]["ring"]["sha256"]) == 64
    assert set(rep["verdict"]["hypotheses"]) == {"verified", "asserted", "failed"}
    assert "domain" in rep["verdict"]["hypotheses"]["asserted"]


def test_json_to_stdout(data_dir):
    code, _, out, _ = _run(["dim", "--ideal", _data(data_dir, "ideals/minors.ideal"), "--json", "-"])
    assert code == 0 and json.loads(out)["verdict"]["dimension"] == 4


def test_text_output(data_dir):
    _, _, out, _ = _run(_resolve(CASES[3][1], data_dir))
    assert "signature: 1/2" in out and "Molien series: (1 + t^2) / (1 - 2*t^2 + t^4)" in out


# --- verify -----------------------------------------------------------------


@pytest.mark.parametrize("name, argv", [c for c in CASES if c[1][0] not in ("dim", "hilbert")],
                         ids=[c[0] for c in CASES if c[1][0] not in ("dim", "hilbert")])
def test_verify_roundtrip(name, argv, data_dir, tmp_path):
    path = tmp_path / f"{name}.json"
    assert _run(_resolve(argv, data_dir) + ["--json", str(path)])[0] == 0
    code, report, out, _ = _run(["verify", str(path)])
    assert code == 0 and report["verdict"]["ok"], out
    assert "result: verified" in out


def _tamper_and_verify(tmp_path, report, edit):
    edit(report)
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(report))
    return _run(["verify", str(path)])


def test_verify_detects_tampering(data_dir, tmp_path):
    _, rep, _, _ = _run(_resolve(CASES[3][1], data_dir))
    code, _, out, _ = _tamper_and_verify(tmp_path, rep, lambda r: r["verdict"].update(signature="1/3"))
    assert code == 1 and "FAIL" in out

    _, rep, _, _ = _run(_resolve(CASES[3][1], data_dir))
    def bump(r):
        r["certificate"]["molien"]["coefficients"] = [c + 1 for c in r["certificate"]["molien"]["coefficients"]]
    assert _tamper_and_verify(tmp_path, rep, bump)[0] == 1

    _, rep, _, _ = _run(_resolve(CASES[0][1], data_dir))
    def flip(r):
        r["certificate"]["freerank_omega"]["column_test"]["columns"][0]["member"] = True
        r["certificate"]["freerank_omega"]["column_test"]["columns"][0].update(cofactors=["0"] * 3,
                                                                                  ideal_cofactors=[])
    assert _tamper_and_verify(tmp_path, rep, flip)[0] == 1

    _, rep, _, _ = _run(_resolve(CASES[5][1], data_dir))
    assert _tamper_and_verify(tmp_path, rep, lambda r: r["verdict"]["basis"].pop())[0] == 1


def test_verify_rejects_non_reports(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run(["verify", str(bad)])[0] == 2
    bad.write_text("[1, 2]")
    assert _run(["verify", str(bad)])[0] == 2
    assert _run(["verify", str(tmp_path / "missing.json")])[0] == 2


# --- exit codes -----------------------------------------------------------------


def test_input_errors(data_dir):
    ring = _data(data_dir, "rings/xyzw.ring")
    code, _, _, err = _run(["hypersurface", "--ring", ring, "--poly", "x*y - q"])
    assert code == 2 and "input error" in err
    code, _, _, err = _run(["hypersurface", "--ring", ring, "--poly", "x + "])
    assert code == 2
    assert _run(["hypersurface", "--ring", ring, "--poly", "x^2 + y"])[0] == 2
    assert _run(["dim", "--ideal", _data(data_dir, "nope.ideal")])[0] == 2
    assert _run(["quotient", "--group", _data(data_dir, "groups/neg2.grp"), "--char", "-3"])[0] == 2
    assert _run(["quotient", "--group", _data(data_dir, "groups/neg2.grp"), "--char", "4"])[0] == 2


def test_malformed_files(tmp_path):
    bad = tmp_path / "bad.grp"
    bad.write_text("n: 2\ngenerators:\n  - [[1, 0], [0, 0]]\n")
    assert _run(["quotient", "--group", str(bad)])[0] == 2
    bad.write_text("n: 2\ngenerators: [[[1, 1], [0, 1]]]\n")
    assert _run(["quotient", "--group", str(bad), "--cap", "20"])[0] == 3
    bad = tmp_path / "bad.ring"
    bad.write_text("variables: [x, x]\n")
    assert _run(["hypersurface", "--ring", str(bad), "--poly", "x"])[0] == 2


def test_resource_limit(data_dir, monkeypatch):
    monkeypatch.delenv("SYMSIG_LIMIT_PAIRS", raising=False)
    code, _, _, err = _run(["ci-freerank", "--ideal", _data(data_dir, "ideals/minors.ideal"),
                            "--limit-pairs", "1"])
    os.environ.pop("SYMSIG_LIMIT_PAIRS", None)
    assert code == 3 and "resource limit" in err


def test_internal_error_exit_code(data_dir, monkeypatch):
    def boom(args):
        raise InternalConsistencyError("methods disagree")
    monkeypatch.setitem(cli.COMMANDS, "dim", boom)
    code, _, _, err = _run(["dim", "--ideal", _data(data_dir, "ideals/minors.ideal")])
    assert code == 4 and "internal consistency" in err


def test_undecided_is_exit_zero(data_dir):
    code, rep, _, _ = _run(["quotient", "--group", _data(data_dir, "groups/neg2.grp"), "--char", "2"])
    assert code == 0 and rep["verdict"]["status"] == "undecided"


def test_console_script(data_dir):
    out = subprocess.run([sys.executable, "-m", "symsig.cli", "dim", "--ideal",
                          _data(data_dir, "ideals/xy-zw.ideal")], capture_output=True, text=True)
    assert out.returncode == 0 and "dimension: 3" in out.stdout
