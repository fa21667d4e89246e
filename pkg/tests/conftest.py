import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

# filled by the acceptance suite: number -> (ok, seconds, limit, detail)
CRITERIA: dict[int, tuple[bool, float, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, secs, limit, detail = CRITERIA[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {secs:.2f}s (limit {limit:g}s)"
        if detail:
            line += f"  {detail}"
        terminalreporter.write_line(line)
