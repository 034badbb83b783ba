import os

import pytest

_RESULTS_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS_KEY] = []


def pytest_collection_modifyitems(config, items):
    if os.environ.get("TENSORGRAND_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="set TENSORGRAND_EXTENDED=1 to run")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def report(request):
    """Record one acceptance line: ``report(number, name, ok, detail)``."""
    lines = request.config.stash[_RESULTS_KEY]

    def _report(number, name, ok, detail=""):
        lines.append((number, name, bool(ok), detail))
        return ok

    return _report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash[_RESULTS_KEY]
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(lines, key=lambda x: x[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {name}: {detail}")
