"""The ten acceptance criteria, one test each, at their stated tolerances.

Each test records a line ``criterion k: PASS|FAIL  <name>``; the lines are
printed in the terminal summary and again when the file is run directly.
"""

import json
import shutil
import subprocess
import sys

import pytest

from arithnull import acceptance

from conftest import ACCEPTANCE_LINES


def record(number, name, passed, note=""):
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {name}" + (f"  ({note})" if note else "")
    ACCEPTANCE_LINES[number] = line
    print(line)
    return passed


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    (c,) = acceptance.run([number])
    note = f"{c.seconds:.1f}s" + (f" of {c.budget:.0f}s budget" if c.budget else "")
    assert record(number, c.name, c.passed, note), json.dumps(c.details, indent=1, default=str)[:4000]


def selftest_command():
    exe = shutil.which("arithnull")
    return [exe, "selftest"] if exe else [sys.executable, "-m", "arithnull.cli", "selftest"]


def test_criterion_10_determinism():
    runs = [subprocess.run(selftest_command(), capture_output=True, timeout=900) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and bool(runs[0].stdout)
    ok = same and all(r.returncode == 0 for r in runs)
    record(10, "selftest determinism (byte-identical JSON)", ok)
    assert same, "selftest output differs between runs"
    assert all(r.returncode == 0 for r in runs), runs[0].stderr.decode()[-2000:]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
