"""Acceptance criteria 1-12; one PASS/FAIL line per criterion is printed in the summary."""

import json
import time

import pytest

from spinorforms import verify
from spinorforms.cli import run

RESULTS = {}


def _record(n, passed, seconds, detail=""):
    RESULTS[n] = (passed, seconds, detail)
    print(f"criterion {n}: {'PASS' if passed else 'FAIL'} ({seconds:.1f}s) {detail}".rstrip())


@pytest.mark.parametrize("n", range(1, 12))
def test_criterion(n):
    start = time.perf_counter()
    result = verify.CRITERIA[n]()
    failed = sorted(k for k, v in result["checks"].items() if not v)
    _record(n, result["passed"], time.perf_counter() - start,
            f"failed: {', '.join(failed)}" if failed else "")
    assert result["passed"], failed


def test_criterion_12_verify_all(capsys):
    start = time.perf_counter()
    code = run(["--json", "paper", "verify-all"])
    elapsed = time.perf_counter() - start
    rep = json.loads(capsys.readouterr().out)
    ok = code == 0 and len(rep["verdicts"]) == 11 and all(rep["verdicts"].values()) and elapsed < 300
    _record(12, ok, elapsed, f"exit {code}")
    assert ok
