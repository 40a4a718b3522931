import pytest

from grouptop.corpus import corpus_group


@pytest.fixture
def S3():
    return corpus_group("S3")


@pytest.fixture
def Q8():
    return corpus_group("Q8")


def perm(G, cycles):
    """Element of a symmetric or alternating group from 1-based cycle notation."""
    from grouptop.groups import parse_cycles
    degree = len(G.payloads[0])
    return G.from_payload(parse_cycles(cycles, degree))


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
