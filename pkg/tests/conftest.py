import pytest
from hypothesis import settings

settings.register_profile("tropmod", deadline=None)
settings.load_profile("tropmod")


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", default=False,
                     help="run the long n = 9 and (1/3^10) rows")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="extended row; pass --extended to run")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.skipped and rep.passed):
        return
    number, title = mark.args
    entry = CRITERIA.setdefault(number, {"title": title, "passed": 0, "failed": 0, "skipped": 0,
                                         "xfail": 0})
    if rep.when == "call" or rep.skipped or rep.failed:
        if hasattr(rep, "wasxfail"):
            entry["xfail"] += 1
        elif rep.skipped:
            entry["skipped"] += 1
        elif rep.failed:
            entry["failed"] += 1
        else:
            entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        e = CRITERIA[number]
        status = "FAIL" if e["failed"] or e["xfail"] else ("PASS" if e["passed"] else "SKIP")
        extra = f", {e['skipped']} extended skipped" if e["skipped"] else ""
        if e["xfail"]:
            extra += f", {e['xfail']} published value not reproduced (expected failure)"
        terminalreporter.write_line(
            f"{status} criterion {number:>2} {e['title']}: "
            f"{e['passed']} passed, {e['failed']} failed{extra}")
