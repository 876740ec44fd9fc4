import pytest
from hypothesis import HealthCheck, settings

from xep.curves import BUNDLED_LABELS, load_db

settings.register_profile("default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def db():
    return load_db()


@pytest.fixture(scope="session")
def bundled_curves(db):
    return [db[label] for label in BUNDLED_LABELS]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
