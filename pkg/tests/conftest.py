import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from modelcat import derive_relation, fixture_text, load_fixture  # noqa: E402


@pytest.fixture
def beam():
    return load_fixture("beam")


@pytest.fixture
def aero():
    return load_fixture("aero")


@pytest.fixture
def elasticity():
    return load_fixture("elasticity")


@pytest.fixture
def beam_text():
    return fixture_text("beam")


@pytest.fixture
def beam_poset(beam):
    return derive_relation(beam)


@pytest.fixture
def aero_poset(aero):
    return derive_relation(aero)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
