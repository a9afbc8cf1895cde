import pytest

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test gates")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            num, title = mark.args
            _CRITERIA.setdefault(num, {"title": title, "ok": True, "ran": 0})


def pytest_runtest_logreport(report):
    if report.when != "call" and not report.failed:
        return
    num = dict(report.user_properties).get("criterion")
    if num is None:
        return
    entry = _CRITERIA[num]
    if report.when == "call":
        entry["ran"] += 1
    if report.failed:
        entry["ok"] = False


@pytest.fixture(autouse=True)
def _tag_criterion(request):
    mark = request.node.get_closest_marker("criterion")
    if mark is not None:
        request.node.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        entry = _CRITERIA[num]
        status = "PASS" if entry["ok"] and entry["ran"] else ("FAIL" if not entry["ok"] else "NOT RUN")
        terminalreporter.write_line(f"[{status}] {num:2d}. {entry['title']}")
