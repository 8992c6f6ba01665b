import os

from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.register_profile("ci", deadline=None, derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        status, title, elapsed, budget, note = RESULTS[number]
        line = f"criterion {number:2d}: {status}  {title}  ({elapsed:.2f}s, budget {budget:g}s)"
        if note:
            line += f"  -- {note}"
        terminalreporter.write_line(line)
