import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" not in getattr(rep, "nodeid", "") or rep.when != "call":
                continue
            lines.append((rep.nodeid, "PASS" if outcome == "passed" else "FAIL"))
    if not lines:
        return
    from test_acceptance import __dict__ as acc

    terminalreporter.write_sep("=", "acceptance criteria")
    for nodeid, verdict in sorted(lines):
        name = nodeid.split("::")[-1]
        doc = (acc[name].__doc__ or name).strip()
        terminalreporter.write_line(f"[{verdict}] {doc}")
