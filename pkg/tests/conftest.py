import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> (short label, list of outcomes)
ACCEPTANCE: dict[int, tuple[str, list[bool]]] = {}
_NAME = re.compile(r"test_criterion_(\d+)_(\w+?)(\[.*\])?$")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        m = _NAME.search(report.nodeid.split("::")[-1])
        if not m:
            return
        label, outcomes = ACCEPTANCE.setdefault(int(m.group(1)), (m.group(2).replace("_", " "), []))
        outcomes.append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        label, outcomes = ACCEPTANCE[num]
        status = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {num:>2}: {label}")
