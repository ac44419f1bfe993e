"""Acceptance criteria 1-11, each at its stated scale and with zero tolerance.

Every test prints one ``CRITERION n: PASS|FAIL`` line; the lines are repeated
in the terminal summary. Criteria that the implementation shows to be false are
left failing on purpose.
"""

import subprocess
import sys
import time

import pytest

from conceptcat.verify import CRITERIA, SuiteConfig, suite_io_roundtrip

from conftest import ACCEPTANCE_LINES

CFG = SuiteConfig()

TITLES = {
    1: "oracle equivalence",
    2: "characterization consensus",
    3: "dense embedding theorem",
    4: "lift laws",
    5: "adjunction and counit",
    6: "corollary condition lists",
    7: "purification and reduction",
    8: "equivalences",
    9: "residuation duality",
    10: "map classification",
    11: "CLI round trip and verify",
}


def record(n, ok, detail):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} {TITLES[n]} ({detail})"
    ACCEPTANCE_LINES[n] = line
    print(line)
    return ok


def detail_of(rep, seconds):
    text = f"{rep.checked} checked, {rep.failed} failed, {seconds:.1f}s"
    if rep.messages:
        text += f"; first: {rep.messages[0]}"
    return text


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n):
    t0 = time.perf_counter()
    rep = CRITERIA[str(n)](CFG)
    ok = rep.ok and rep.checked > 0
    record(n, ok, detail_of(rep, time.perf_counter() - t0))
    assert ok, "\n".join(rep.messages)


def test_criterion_11():
    t0 = time.perf_counter()
    io = suite_io_roundtrip(CFG, count=100)
    r = subprocess.run([sys.executable, "-m", "conceptcat", "verify"], capture_output=True, text=True)
    tail = r.stdout.strip().splitlines()[-1] if r.stdout.strip() else r.stderr.strip()
    ok = io.ok and io.checked >= 200 and r.returncode == 0
    detail = f"round trips {io.checked} checked, {io.failed} failed; verify exit {r.returncode}: {tail}"
    record(11, ok, f"{detail}; {time.perf_counter() - t0:.1f}s")
    assert io.ok, "\n".join(io.messages)
    assert r.returncode == 0, r.stdout
