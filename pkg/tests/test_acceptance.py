"""Acceptance suite: every numbered criterion, one reported line each.

Each test runs one criterion exactly as `starweyl verify` does and prints

    ACCEPTANCE <n> <name>: PASS|FAIL

so the full verdict table survives in captured output. Criteria with a
stated runtime budget assert it. The final test drives the command line
the way a release check would: byte-identical reruns and `verify all`.
"""

import subprocess
import sys
import time

import pytest

from starweyl.verify import CRITERIA


def _banner(number, name, ok):
    print(f"ACCEPTANCE {number} {name}: {'PASS' if ok else 'FAIL'}")


@pytest.mark.parametrize(
    "criterion", CRITERIA, ids=[f"{c.number:02d}_{c.name}" for c in CRITERIA]
)
def test_criterion(criterion):
    t0 = time.perf_counter()
    ok, detail = criterion.fn(seed=0)
    elapsed = time.perf_counter() - t0
    _banner(criterion.number, criterion.name, ok)
    assert ok, f"criterion {criterion.number} ({criterion.name}): {detail}"
    if criterion.budget is not None:
        assert elapsed < criterion.budget, (
            f"criterion {criterion.number} took {elapsed:.1f}s, "
            f"budget {criterion.budget:.0f}s"
        )


def _cli(*args, timeout=600):
    return subprocess.run(
        [sys.executable, "-m", "starweyl.cli", *args],
        capture_output=True,
        text=True,
        timeout=timeout,
    )


def test_cli_end_to_end():
    # byte-identical reruns under a fixed seed
    first = _cli("verify", "roundtrip", "--seed", "3")
    second = _cli("verify", "roundtrip", "--seed", "3")
    rerun_ok = (
        first.returncode == second.returncode == 0
        and first.stdout == second.stdout
    )
    # the full verification suite exits 0
    full = _cli("verify", "all")
    all_ok = full.returncode == 0 and "[FAIL]" not in full.stdout
    _banner(11, "cli_verify_all", rerun_ok and all_ok)
    assert rerun_ok, "verify reruns were not byte-identical"
    assert all_ok, full.stdout + full.stderr
    assert len(full.stdout.strip().splitlines()) == len(CRITERIA)
