"""Collects acceptance outcomes and prints one line per criterion at the end."""

import pytest

_results: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        xfail = getattr(rep, "wasxfail", None)
        ok = rep.passed and xfail is None
        detail = dict(item.user_properties).get("detail", "")
        if xfail is not None:
            detail = f"{detail} (known failure: {xfail})".strip()
        elif rep.failed and not detail:
            detail = "error"
        _results.setdefault(marker.args[0], []).append((item.name, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        parts = _results[n]
        verdict = "PASS" if all(ok for _, ok, _ in parts) else "FAIL"
        details = "; ".join(f"{name}: {'ok' if ok else 'FAILED'} {d}".strip()
                            for name, ok, d in parts)
        terminalreporter.write_line(f"criterion {n:>2} {verdict}  {details}")
