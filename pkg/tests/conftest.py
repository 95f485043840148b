"""Shared test configuration: acceptance criteria get one summary line each."""

_ACCEPTANCE_RESULTS: dict[str, str] = {}


def record_acceptance(criterion: str, passed: bool = True) -> None:
    _ACCEPTANCE_RESULTS[criterion] = "PASS" if passed else "FAIL"


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance" in report.nodeid and name.startswith("test_criterion"):
        key = name.replace("test_", "")
        _ACCEPTANCE_RESULTS.setdefault(key, "PASS" if report.passed else "FAIL")
        if not report.passed:
            _ACCEPTANCE_RESULTS[key] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for key in sorted(_ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{key}: {_ACCEPTANCE_RESULTS[key]}")
