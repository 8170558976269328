from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("repo")

small_q = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
