import itertools
from importlib import resources

import numpy as np
import pytest
from hypothesis import strategies as st

from ncsohs import Polynomial

FIXTURES = resources.files("ncsohs") / "fixtures"

_criteria: dict[int, tuple[str, str]] = {}


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


words = st.lists(st.integers(1, 3), max_size=5).map(tuple)
coeffs = st.integers(-9, 9).filter(bool).map(float)
polys = st.lists(st.tuples(words, coeffs), max_size=5).map(Polynomial)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def induced_cycle_bruteforce(n, edges) -> bool:
    """True iff some vertex subset of size >= 4 induces a cycle."""
    es = {(min(u, v), max(u, v)) for u, v in edges}
    for size in range(4, n + 1):
        for S in itertools.combinations(range(n), size):
            sub = [(u, v) for u, v in es if u in S and v in S]
            if len(sub) != size:
                continue
            deg = {v: 0 for v in S}
            adj = {v: [] for v in S}
            for u, v in sub:
                deg[u] += 1
                deg[v] += 1
                adj[u].append(v)
                adj[v].append(u)
            if any(d != 2 for d in deg.values()):
                continue
            seen, stack = {S[0]}, [S[0]]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) == size:
                return True
    return False


def random_chordal_edges(n, rng):
    """Edges of a random chordal graph built by adding vertices onto cliques."""
    edges = set()
    cliques = [[0]]
    for v in range(1, n):
        base = cliques[rng.integers(len(cliques))]
        keep = [u for u in base if rng.random() < 0.7]
        edges.update((u, v) for u in keep)
        cliques.append(keep + [v])
    return edges


def random_graph_edges(n, p, rng):
    return {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "criterion", None)
    if marker is not None:
        _criteria[marker[0]] = (marker[1], "PASS" if report.passed else "FAIL")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, verdict = _criteria[n]
        terminalreporter.write_line(f"{verdict} criterion {n:2d}: {title}")
