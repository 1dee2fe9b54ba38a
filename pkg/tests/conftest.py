import random
from fractions import Fraction

import pytest

from stressforge.geometry import random_point


@pytest.fixture
def rng():
    return random.Random(1234)


def rational_points(rng: random.Random, n: int, d: int = 2, bound: int = 12):
    if d == 2:
        return [random_point(rng, bound) for _ in range(n)]
    return [tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 4)) for _ in range(d)) for _ in range(n)]


ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str, seconds: float, limit: float) -> None:
    within = seconds < limit
    verdict = "PASS" if ok and within else "FAIL"
    line = f"criterion {criterion:2d}: {verdict}  {detail}  [{seconds:.2f} s, limit {limit:g} s]"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])


@pytest.fixture(scope="session")
def census5():
    import time

    from stressforge.census.lambda5 import lambda5_census

    t = time.perf_counter()
    census = lambda5_census()
    return census, time.perf_counter() - t
