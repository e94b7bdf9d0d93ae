import sys
from pathlib import Path

import pytest

from toricnef import lattice

sys.path.insert(0, str(Path(__file__).parent))

# substitute every exact solve back into its system while testing
lattice.SELF_CHECK = True

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
        # criteria checked in several parts get one overall line
        parts = {}
        for line in ACCEPTANCE_LINES:
            label = line.split(":")[0].split()[1]
            if label[-1].isalpha():
                parts.setdefault(label[:-1], []).append((label, "PASS" in line.split(":")[1][:6]))
        for num, results in parts.items():
            failed = [lab for lab, ok in results if not ok]
            verdict = "PASS" if not failed else "FAIL (" + ", ".join(failed) + ")"
            terminalreporter.write_line(f"criterion {num} overall: {verdict}")


@pytest.fixture
def rng():
    import random

    return random.Random(20261016)
