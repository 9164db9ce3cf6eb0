import pytest

from kspp.graph import complete_graph, cycle_graph, path_graph, star_graph


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def star3():
    return star_graph(3)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion."""
    label = request.node.function.__doc__.strip().splitlines()[0]
    state = {"detail": ""}
    yield state
    failed = getattr(request.node, "rep_call", None)
    status = "FAIL" if failed is None or failed.failed else "PASS"
    line = f"{status}  {label}"
    if state["detail"]:
        line += f"  [{state['detail']}]"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
