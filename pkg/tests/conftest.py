from hypothesis import settings

# every property suite: 1000 cases, same cases on every run
settings.register_profile("suite", max_examples=1000, derandomize=True, deadline=None,
                          database=None)
settings.load_profile("suite")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
