import pytest

from k3lattice.fibrations import generate_table
from k3lattice.hyperbolic import chamber_of_S21
from k3lattice.surfaces import build_S21, build_S31

ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, label: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {label}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def table_char2():
    return generate_table(2)


@pytest.fixture(scope="session")
def table_char3():
    return generate_table(3)


@pytest.fixture(scope="session")
def s21():
    return build_S21()


@pytest.fixture(scope="session")
def s31():
    return build_S31()


@pytest.fixture(scope="session")
def s21_chamber(s21):
    return chamber_of_S21(s21)
