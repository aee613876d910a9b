import pytest

from qccdlab.machine import DeviceParams

# acceptance verdicts, filled by test_acceptance.py and echoed at the end of the run
VERDICTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def flat_params():
    """Stock defaults with chain-length scaling off, handy for closed forms."""
    return DeviceParams(gamma=0.0)


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(VERDICTS, key=lambda k: (int(k.rstrip("ab")), k)):
        ok, detail = VERDICTS[key]
        terminalreporter.write_line(f"criterion {key:>3}: {'PASS' if ok else 'FAIL'}  {detail}")
