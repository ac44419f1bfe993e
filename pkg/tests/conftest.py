import pytest

from conceptcat import Context

# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES: dict[int, str] = {}


def make(rows, n_att=2):
    return Context([f"g{i + 1}" for i in range(len(rows))], [f"m{j + 1}" for j in range(n_att)], rows)


DIAG = make([0b01, 0b10])
CHAIN = make([0b11, 0b10])
FULL = make([0b11, 0b11])
EMPTY = make([0b00, 0b00])


@pytest.fixture
def diag():
    return DIAG


@pytest.fixture
def chain_ctx():
    return CHAIN


@pytest.fixture
def full():
    return FULL


@pytest.fixture
def empty():
    return EMPTY


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
