import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


# -- acceptance summary: one line per criterion ---------------------------------

_criteria: dict[str, list] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        notes = [v for k, v in report.user_properties if k == "note"]
        _criteria[name] = [report.outcome, notes]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split("_")[2])):
        outcome, notes = _criteria[name]
        number = name.split("_")[2]
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"criterion {number:>2}: {status}  {name.split('_', 3)[3].replace('_', ' ')}"
        terminalreporter.write_line(line)
        for note in notes:
            terminalreporter.write_line(f"              {note}")
