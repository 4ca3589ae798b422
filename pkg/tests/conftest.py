import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# Lines appended by the acceptance tests, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def covering21():
    from omitted_values.lame import build_covering

    return build_covering(2, 1)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
