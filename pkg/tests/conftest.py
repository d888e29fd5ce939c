import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

CRITERIA = {
    1: "power-free counts exact",
    2: "coprime triples = square-free pairs",
    3: "constrained count main term",
    4: "total variation convergence",
    5: "psi consistency identities",
    6: "restricted zeta truncation",
    7: "genus identities",
    8: "sampling correctness",
    9: "CLI determinism",
}

_outcomes: dict[int, list[tuple[str, bool]]] = {}
_details: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.fixture
def note(request):
    """Attach a measured value to the acceptance summary line of this test."""
    marker = request.node.get_closest_marker("criterion")

    def add(text: str):
        if marker is not None:
            _details.setdefault(marker.args[0], []).append(text)

    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(marker.args[0], []).append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = _outcomes.get(n)
        if not results:
            tr.write_line(f"criterion {n} ({CRITERIA[n]}): NOT RUN")
            continue
        ok = all(passed for _, passed in results)
        failed = [name for name, passed in results if not passed]
        line = f"criterion {n} ({CRITERIA[n]}): {'PASS' if ok else 'FAIL'}"
        if failed:
            line += f" [failed: {', '.join(failed)}]"
        if _details.get(n):
            line += " | " + "; ".join(_details[n])
        tr.write_line(line)
