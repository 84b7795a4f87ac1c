"""Collects acceptance outcomes and prints one line per criterion."""

import time

import pytest

ACCEPTANCE: dict[str, tuple[str, float, str]] = {}


@pytest.fixture
def criterion(request):
    """Time a criterion and record PASS/FAIL under the test's ``criterion`` marker label."""
    marker = request.node.get_closest_marker("acceptance")
    label = marker.args[0] if marker and marker.args else request.node.name
    what = marker.kwargs.get("what", "") if marker else ""
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    call = getattr(request.node, "rep_call", None)
    ok = call is not None and call.passed
    ACCEPTANCE[label] = ("PASS" if ok else "FAIL", elapsed, what)


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def _key(label):
    head, _, tail = label.partition(".")
    return (int(head) if head.isdigit() else 99, tail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=_key):
        verdict, elapsed, what = ACCEPTANCE[label]
        terminalreporter.write_line(f"criterion {label:<4} {verdict}  {elapsed:7.2f}s  {what}")
