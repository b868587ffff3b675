import random

import pytest
from hypothesis import settings, strategies as st

from nchodge.exact.jordan import block_diag, jordan_block
from nchodge.exact.matrix import Matrix

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_int = st.integers(min_value=-4, max_value=4)


def random_nilpotent(rng: random.Random, dim: int) -> Matrix:
    """Random Jordan type conjugated by a random unimodular integer matrix."""
    from nchodge.verify import random_unimodular
    sizes = []
    left = dim
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    if not dim:
        return Matrix([], 0)
    J = block_diag(*[jordan_block(s) for s in sizes])
    P = Matrix.q(random_unimodular(dim, rng))
    return P @ J @ P.inverse()


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
