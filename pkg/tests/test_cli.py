import json
import math
import shutil
import subprocess
import sys

import pytest

from arithnull import cli


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = cli.run([str(a) for a in argv])
        out = capsys.readouterr()
        return code, (json.loads(out.out) if out.out.strip() else None), out.err
    return _run


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text + "\n")
    return p


def test_height(run, tmp_path):
    f = write(tmp_path, "f.txt", "3*x1 + 7")
    code, out, _ = run("height", f)
    assert code == 0
    assert out["place"] == "inf" and out["value"] == pytest.approx(math.log(7))
    code, out, _ = run("height", write(tmp_path, "q.txt", "3/2"), "--all-places")
    assert code == 0
    assert out["value"] == pytest.approx(math.log(3))


def test_mahler(run, tmp_path):
    code, out, _ = run("mahler", write(tmp_path, "f.txt", "x1 - 2"))
    assert code == 0 and out["value"] == pytest.approx(math.log(2))
    code, out, _ = run("mahler", write(tmp_path, "g.txt", "x1 + x2 + 1"), "--samples", 20000, "--seed", 1)
    assert code == 0 and out["stderr"] > 0
    code, out, _ = run("mahler", write(tmp_path, "h.txt", "x1*x2"), "--spherical", "1:2", "--samples", 1000)
    assert code == 0


def test_bound(run):
    code, out, _ = run("bound", "theorem1", "--n", 2, "--d", 3)
    assert code == 0 and out["degree_bound"] == "72"
    code, _, err = run("bound", "theorem1", "--n", 2)
    assert code == 2 and err
    code, _, _ = run("bound", "no-such-statement", "--n", 2)
    assert code == 2


def test_bound_height_key_not_taken_as_help(run):
    # 256 = 2^(2r+2) Vol with r = 2, Vol = 4
    code, out, _ = run("bound", "toric", "--n", 2, "--d", 3, "--h", 1, "--r", 2, "--card", 5, "--vol", 4)
    assert code == 0
    assert out["inputs"]["h"] == "1"
    assert out["height_bound"]["exact"] == "256*log(5)"


def test_volume(run, tmp_path):
    f = write(tmp_path, "f.txt", "1 + x1 + x2 + 7*x1^2*x2^2")
    code, out, _ = run("volume", f)
    assert code == 0 and out["volume"] == "4"


def test_ce_matrix(run, tmp_path):
    supp = write(tmp_path, "s.json", json.dumps({"n": 1, "points": [[0], [1], [2]]}))
    code, out, _ = run("ce-matrix", "--support", supp)
    assert code == 0 and out["order"] == 4
    values = {"U0_0": "1", "U0_1": "-3", "U0_2": "2", "U1_0": "5", "U1_1": "0", "U1_2": "1"}
    spec = write(tmp_path, "v.json", json.dumps({"values": values}))
    code, out, _ = run("ce-matrix", "--support", supp, "--specialize", spec)
    assert code == 0
    # Res(2x^2 - 3x + 1, x^2 + 5) = 4 * g(1/2) * g(1) = 126
    assert abs(int(out["det"])) == 126
    assert out["resultant_check"]["resultant"] == "126"


def test_divide(run, tmp_path):
    ideal = write(tmp_path, "F.txt", "x1^2 - 2")
    f = write(tmp_path, "f.txt", "x1")
    g = write(tmp_path, "g.txt", "x1*(x1 + 1)")
    code, out, _ = run("divide", "--ideal", ideal, "--divisor", f, "--dividend", g)
    assert code == 0
    assert out["q_reduced"] == "x1 + 1"
    assert out["checks"]["identity"] is True


def test_certify_verify_roundtrip(run, tmp_path):
    f1 = write(tmp_path, "f1.txt", "x1^2")
    f2 = write(tmp_path, "f2.txt", "x1*x2 - 3")
    cert = tmp_path / "cert.json"
    code, _, _ = run("certify", f1, f2, "-o", cert)
    assert code == 0
    data = json.loads(cert.read_text())
    assert int(data["a"]) % 9 == 0 and isinstance(data["a"], str)
    code, out, _ = run("verify", cert, f1, f2)
    assert code == 0 and out["identity"] is True
    data["a"] = str(int(data["a"]) + 1)
    cert.write_text(json.dumps(data))
    code, out, _ = run("verify", cert, f1, f2)
    assert code == 1 and out["identity"] is False
    code, _, _ = run("verify", cert, f1)
    assert code == 2


def test_certify_infeasible(run, tmp_path):
    f1 = write(tmp_path, "f1.txt", "x1 - 1")
    f2 = write(tmp_path, "f2.txt", "x1^2 - 1")
    code, _, err = run("certify", f1, f2)
    assert code == 3 and "common zero" in err
    g2 = write(tmp_path, "g2.txt", "x1^2 - 2")
    code, _, _ = run("certify", f1, g2, "--deg-bound", 0)
    assert code == 3


def test_parse_error(run, tmp_path):
    code, _, err = run("height", write(tmp_path, "bad.txt", "x1 +* 2"))
    assert code == 2 and "parse" in err


def test_fixture_then_verify(run, tmp_path):
    out_dir = tmp_path / "fx"
    code, out, _ = run("fixture", "geo", "--n", 2, "--d", 2, "--H", 3, "-o", out_dir)
    assert code == 0
    files = sorted(str(p) for p in out_dir.glob("f*.txt"))
    code, rep, _ = run("verify", out_dir / "cert.json", *files)
    assert code == 0 and rep["identity"]
    code, rep, _ = run("bound-report", *files, "--cert", out_dir / "cert.json")
    assert code == 0 and "theorem1" in rep["bounds"]


def test_seeded_certify_is_deterministic(run, tmp_path):
    f1 = write(tmp_path, "f1.txt", "x1 - 3")
    f2 = write(tmp_path, "f2.txt", "x2 - x1^2")
    f3 = write(tmp_path, "f3.txt", "x2^2")
    outs = []
    for _ in range(2):
        code, _, _ = run("certify", f1, f2, f3, "--seed", 2, "-o", tmp_path / "c.json")
        outs.append((tmp_path / "c.json").read_bytes())
    assert outs[0] == outs[1]


def test_help_lists_statement_ids(capsys):
    for name, ids in cli.STATEMENT_IDS.items():
        assert cli.run([name, "--help"]) == 0
        text = capsys.readouterr().out
        assert ids[0] in text


def test_console_script():
    exe = shutil.which("arithnull")
    cmd = [exe] if exe else [sys.executable, "-m", "arithnull.cli"]
    res = subprocess.run(cmd + ["bound", "cor3", "--n", "2", "--d", "2", "--vol", "4"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["degree_bound"] == "64"
