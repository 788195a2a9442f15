import functools

import pytest

RESULTS = {}


def criterion(number, title):
    """Record PASS/FAIL for an acceptance criterion and print one line for it."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                RESULTS[number] = (title, "FAIL")
                raise
            RESULTS[number] = (title, "PASS")
        return run
    return wrap


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        title, status = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d} {status}: {title}")


@pytest.fixture(scope="session")
def corpus50():
    from troplith.corpus import corpus
    return corpus(0, 50)
