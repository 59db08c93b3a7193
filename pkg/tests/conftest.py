import os

import pytest
from hypothesis import HealthCheck, settings

from zprconv.ring import RingContext

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FUZZ_CONTEXTS = [(2, 2), (2, 3), (3, 2)]


@pytest.fixture
def Z4():
    return RingContext(2, 2)


@pytest.fixture(params=FUZZ_CONTEXTS, ids=lambda pr: f"p{pr[0]}r{pr[1]}")
def fuzz_ctx(request):
    return RingContext(*request.param)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
