import pytest

from fraisse.core import FINGRAPH, FINLINORD, FINSET
from fraisse.generic import build_fraisse


@pytest.fixture(scope="session")
def graph_seq():
    return build_fraisse(FINGRAPH, steps=64, schedule_seed=0)


@pytest.fixture(scope="session")
def linorder_seq():
    return build_fraisse(FINLINORD, steps=64, schedule_seed=0)


@pytest.fixture(scope="session")
def set_seq():
    return build_fraisse(FINSET, steps=64, schedule_seed=0)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if "test_acceptance" in rep.nodeid and rep.when == "call":
                lines += [ln for ln in rep.capstdout.splitlines() if ln.startswith("criterion")]
    if lines:
        terminalreporter.section("acceptance criteria")
        for ln in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(ln)
