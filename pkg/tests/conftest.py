import pytest

from realhurwitz import RunConfig


@pytest.fixture()
def cfg():
    return RunConfig()


@pytest.fixture(scope="session")
def session_cfg():
    return RunConfig()


@pytest.fixture(scope="session")
def sweep_report(session_cfg):
    """The d <= 4, k <= 3 verification sweep, shared across acceptance tests."""
    import time

    from realhurwitz import run_sweep

    start = time.monotonic()
    report = run_sweep(4, 3, session_cfg)
    report_seconds = time.monotonic() - start
    return report, report_seconds
