from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE: dict[int, list[tuple[str, bool]]] = {}


def record(criterion: int, name: str, ok: bool) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((name, ok))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[criterion]
        status = "PASS" if all(ok for _, ok in parts) else "FAIL"
        failed = [name for name, ok in parts if not ok]
        note = f" (failed: {'; '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {criterion}: {status}{note}")


import pytest  # noqa: E402


@pytest.fixture
def acceptance():
    return record
