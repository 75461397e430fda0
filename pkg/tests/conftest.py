from __future__ import annotations

import time

import pytest

from ncbu.actions import antipodal, conjugation
from ncbu.crossed import crossed_presentation
from ncbu.ncpoly import circle, free_sphere


@pytest.fixture(scope="session")
def circle_pres():
    return circle()


@pytest.fixture(scope="session")
def sphere_pres():
    return free_sphere()


@pytest.fixture(scope="session")
def circle_conj(circle_pres):
    return crossed_presentation(circle_pres, conjugation(circle_pres), 2)


@pytest.fixture(scope="session")
def sphere_anti(sphere_pres):
    return crossed_presentation(sphere_pres, antipodal(sphere_pres), 2)


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion at the end of the run
# ---------------------------------------------------------------------------

_ACCEPTANCE: dict = {}
_SUITE_START = time.perf_counter()
SUITE_BUDGET = 180.0


@pytest.fixture
def acceptance(request):
    """Call with (number, title, detail); the line flips to PASS when the test body finishes."""
    entry = {}

    def record(number: int, title: str, detail: str = "") -> None:
        entry.update(number=number, title=title, detail=detail)
        _ACCEPTANCE[number] = {"title": title, "detail": detail, "ok": False}

    yield record
    if entry:
        rep = getattr(request.node, "rep_call", None)
        _ACCEPTANCE[entry["number"]]["ok"] = bool(rep and rep.passed)


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _SUITE_START
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        e = _ACCEPTANCE[n]
        ok = e["ok"]
        detail = e["detail"]
        if n == 9:
            ok = ok and elapsed < SUITE_BUDGET
            detail = f"{detail}; full suite {elapsed:.1f}s (< {SUITE_BUDGET:.0f}s)"
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {e['title']}  ({detail})")
