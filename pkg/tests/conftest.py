"""Prints one PASS/FAIL line per acceptance criterion after the run."""

_results = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_results, key=lambda s: int(s.split("test_criterion_")[1].split("_")[0])):
        name = nodeid.split("test_criterion_")[1]
        number, _, label = name.partition("_")
        status = "PASS" if _results[nodeid] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number} ({label.replace('_', ' ')}): {status}")
