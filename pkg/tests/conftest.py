import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE and not any("test_acceptance" in str(a) for a in terminalreporter.config.args):
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for num, title in CRITERIA.items():
        if num in ACCEPTANCE:
            ok, detail = ACCEPTANCE[num]
            status = "PASS" if ok else "FAIL"
        else:
            status, detail = "FAIL", "not run or raised before reporting"
        terminalreporter.write_line(f"criterion {num:>2} {status}: {title} | {detail}")


@pytest.fixture
def report():
    def _report(num, ok, detail=""):
        ACCEPTANCE[num] = (bool(ok), detail)
        print(f"criterion {num} {'PASS' if ok else 'FAIL'}: {detail}")
        return ok

    return _report
