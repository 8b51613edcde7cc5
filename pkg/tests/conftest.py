import random

import pytest

from autdel.graph import Graph
from autdel.groups import cyclic, dihedral, direct_product, symmetric, trivial
from autdel.search import Enumerator

ACCEPTANCE_LINES: list[str] = []


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    if p is None:
        p = rng.choice([0.2, 0.35, 0.5, 0.65, 0.8])
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_perm(rng: random.Random, n: int) -> list[int]:
    p = list(range(n))
    rng.shuffle(p)
    return p


def small_group_pool():
    """Groups of order <= 24 from every family, plus a few products."""
    pool = [trivial()]
    pool += [cyclic(k) for k in range(2, 13)]
    pool += [dihedral(k) for k in range(2, 7)]
    pool += [symmetric(3), symmetric(4)]
    pool += [direct_product(cyclic(2), cyclic(2)), direct_product(cyclic(2), cyclic(4)),
             direct_product(cyclic(2), cyclic(6)), direct_product(cyclic(3), cyclic(3)),
             direct_product(cyclic(2), symmetric(3)),
             direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2))]
    return pool


@pytest.fixture(scope="session")
def enumerator():
    e = Enumerator()
    e.level(8)
    return e


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, title = marker.args
        status = "PASS" if report.passed else "FAIL"
        ACCEPTANCE_LINES.append(f"criterion {number:>2} {status} {title} ({report.duration:.1f}s)")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
