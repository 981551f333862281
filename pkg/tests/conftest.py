import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES, key=lambda s: int(s.split()[2])):
        terminalreporter.write_line(line)
