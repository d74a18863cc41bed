from hypothesis import settings

settings.register_profile("suite", max_examples=20, deadline=None, derandomize=True)
settings.load_profile("suite")

_acceptance = []


def pytest_runtest_logreport(report):
    # the acceptance tests print one PASS/FAIL line each; collect them so
    # they show up without -s
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _acceptance.extend(l for l in report.capstdout.splitlines() if l.startswith("[acceptance"))


def pytest_terminal_summary(terminalreporter):
    if _acceptance:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance:
            terminalreporter.write_line(line)
