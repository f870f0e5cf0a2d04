from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from ndfourier.arithmetic import builtin_contexts

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def rationals(bound=10, max_den=64):
    """Exact rationals p/q with |p/q| <= bound."""
    return st.integers(1, max_den).flatmap(
        lambda d: st.integers(-bound * d, bound * d).map(lambda n: Fraction(n, d))
    )


CONTEXTS = builtin_contexts()


@pytest.fixture(params=CONTEXTS, ids=lambda c: c.spec)
def ctx(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
