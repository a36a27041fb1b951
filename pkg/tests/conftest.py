import pytest

from cyclotile import build_a, build_b, make_modulus

from oracle import covers_exactly_once

U0, V0, W0 = [0, 1], [0, 1, 2], [0, 1, 2, 3, 4]
H0 = ([1, 16], [2, 12, 22], [3, 9, 15, 21, 27])


@pytest.fixture(scope="session")
def ctx():
    return make_modulus(2, 3, 5)


@pytest.fixture(scope="session")
def canon_a(ctx):
    return build_a(U0, V0, W0, ctx)


@pytest.fixture(scope="session")
def canon_b(ctx, canon_a):
    B = build_b(*H0, 1, 1, 1, ctx=ctx)
    # fixtures are only trusted after the naive oracle accepts them
    assert covers_exactly_once(canon_a.elements, B.elements, 900)
    return B


# -- acceptance summary: one line per criterion ---------------------------------------

_acceptance: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or not marker.args:
        return
    number, title = marker.args[0], marker.args[1]
    if report.when == "call" or report.failed:
        prev = _acceptance.get(number, (title, "PASS"))[1]
        status = "FAIL" if report.failed or prev == "FAIL" else (
            "SKIP" if report.skipped else "PASS")
        _acceptance[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, status = _acceptance[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
