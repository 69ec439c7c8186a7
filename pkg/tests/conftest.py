import pytest

from mvhom.finspace import discrete, make_space, point_space

RESULTS: list[str] = []


@pytest.fixture
def record():
    """Collect one PASS/FAIL line per acceptance criterion."""

    def _record(name: str, ok: bool, detail: str = "") -> None:
        RESULTS.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))

    return _record


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture
def pt():
    return point_space()


@pytest.fixture
def s2():
    return discrete(["a", "b"])


@pytest.fixture
def i3():
    return make_space(["z", "g", "u"], [("z", "g"), ("u", "g")], t0=True)


@pytest.fixture
def sigma():
    # Sierpinski space: c is the closed point
    return make_space(["c", "o"], [("c", "o")], t0=True)
