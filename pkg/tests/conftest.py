import functools
import os

import pytest

from opda.simulate import accepts

BITS = ("0", "1")
HERE = os.path.dirname(os.path.abspath(__file__))

# criterion number -> (passed, title, detail)
_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    n, title = mark.args
    detail = "; ".join(v for k, v in item.user_properties if k == "detail")
    if rep.failed and call.excinfo is not None:
        msg = str(call.excinfo.value).strip().splitlines()
        detail = (detail + "; " if detail else "") + (msg[0] if msg else call.excinfo.typename)
    _criteria[n] = (rep.passed, title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        passed, title, detail = _criteria[n]
        terminalreporter.write_line("criterion %2d %s  %s: %s" % (
            n, "PASS" if passed else "FAIL", title, detail))


@functools.lru_cache(maxsize=None)
def _accepts(spec, w):
    return accepts(spec, w).verdict == "accept"


def acc(spec, w):
    """Plain acceptance, cached per (machine, word)."""
    return _accepts(spec, tuple(w))


def s(w):
    return "".join(w)


@pytest.fixture
def detail(request):
    def record(text):
        request.node.user_properties.append(("detail", text))
        print(text)
    return record
