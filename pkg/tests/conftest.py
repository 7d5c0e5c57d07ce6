import sys
from pathlib import Path

import pytest
from hypothesis import settings

from quotmodel.exactalg import GF, QQ

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("repro", derandomize=True, deadline=None, max_examples=40)
settings.load_profile("repro")


@pytest.fixture(params=["Q", "F7"])
def field(request):
    return QQ if request.param == "Q" else GF(7)


def pytest_terminal_summary(terminalreporter, config):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, line = RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {line}")
