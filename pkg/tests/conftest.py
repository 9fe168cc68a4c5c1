"""Print one PASS/FAIL line per acceptance criterion after the run."""
import pytest

_results: dict[int, dict] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when == "teardown":
        return
    number, title = marker.args
    entry = _results.setdefault(number, {"title": title, "ok": True, "seconds": 0.0})
    entry["seconds"] += call.duration
    if call.excinfo is not None:
        entry["ok"] = False
        entry["why"] = call.excinfo.exconly().splitlines()[0][:160]


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        r = _results[number]
        line = f"{'PASS' if r['ok'] else 'FAIL'}  criterion {number}: {r['title']} ({r['seconds']:.2f} s)"
        terminalreporter.write_line(line)
        if not r["ok"]:
            terminalreporter.write_line(f"      {r['why']}")
