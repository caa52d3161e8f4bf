"""Acceptance criteria 1-12, each at its stated tolerance and time budget.

Every criterion prints one ``criterion N (suite): PASS|FAIL`` line, even when
pytest captures output.
"""

import subprocess
import sys
import time

import pytest

from ballspaces.verify import SUITES, VerifyConfig, run_suite

# seconds; criteria without a stated budget get None
BUDGET = {1: 5, 2: 5, 3: 30, 4: 10, 7: 10, 8: 20, 10: 10}

BY_CRITERION = {crit: name for name, (crit, _) in SUITES.items()}


def _report(capsys, crit, name, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {crit} ({name}): {'PASS' if ok else 'FAIL'}{detail}")


def _cli_bytes(*argv):
    proc = subprocess.run([sys.executable, "-m", "ballspaces", *argv], capture_output=True, check=False)
    return proc.returncode, proc.stdout


@pytest.mark.parametrize("crit", sorted(BY_CRITERION))
def test_criterion(crit, capsys):
    name = BY_CRITERION[crit]
    t0 = time.perf_counter()
    rows = run_suite(name, VerifyConfig())
    elapsed = time.perf_counter() - t0
    failed = [r for r in rows if not r.passed]
    budget = BUDGET.get(crit)
    slow = budget is not None and elapsed >= budget
    extra = []
    if crit == 12:
        a = _cli_bytes("verify", "prop7-asymptotics", "--format", "json")
        b = _cli_bytes("verify", "prop7-asymptotics", "--format", "json")
        if a != b or a[0] != 0 or not a[1]:
            extra.append("cli outputs differ")
    ok = bool(rows) and not failed and not slow and not extra
    detail = f" [{len(rows) - len(failed)}/{len(rows)} checks, {elapsed:.2f}s"
    detail += f" of {budget}s]" if budget else "]"
    for r in failed[:5]:
        detail += f"\n    {r.name}: expected {r.expected}, observed {r.observed}, tol {r.tolerance}"
    detail += "".join(f"\n    {e}" for e in extra)
    _report(capsys, crit, name, ok, detail)
    assert rows, "suite produced no checks"
    assert not failed, f"{len(failed)} checks failed: {[r.name for r in failed]}"
    assert not slow, f"took {elapsed:.2f}s, budget {budget}s"
    assert not extra, extra
