import pytest

_RESULTS = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the summary prints them all at the end."""
    results = request.config.stash.setdefault(_RESULTS, [])
    number, title = request.node.get_closest_marker("criterion").args
    entry = [number, title, "FAIL", ""]
    results.append(entry)

    def passed(detail=""):
        entry[2], entry[3] = "PASS", detail

    yield passed


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_RESULTS, [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status, detail in sorted(results):
        line = f"{status} criterion {number}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
