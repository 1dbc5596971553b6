import pytest
from hypothesis import settings

from gaut import SimpleDigraph, parse_term

from corpus import digraph_corpus, hypergraph_corpus, node_shuffled_corpus

settings.register_profile("suite", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("suite")

# the worked examples: a paw (triangle plus a tail), the K4 tournament
# obtained by adding two arcs to it, and the complete bipartite K33
PAW = SimpleDigraph(4, ((1, 2), (2, 3), (2, 4), (3, 4)))
K4 = SimpleDigraph(4, ((1, 2), (2, 3), (2, 4), (3, 4), (1, 3), (1, 4)))
K33 = SimpleDigraph(6, tuple((i, 3 + j) for i in (1, 2, 3) for j in (1, 2, 3)))

PAW_TERM_TEXT = (
    "(prod (i 0 1) (sym a 1 1) (i 1 2)"
    " (box (sym a 1 1) (sym a 1 1)) (box (sym a 1 1) e) (i 2 1) (i 1 0))"
)
K4_TERM_TEXT = (
    "(prod (i 0 1) (i 1 3)"
    " (box (sym a 1 1) (sym a 1 1) (sym a 1 1))"
    " (box e (i 1 2) e)"
    " (box e (sym a 1 1) (sym a 1 1) e)"
    " (box (i 2 1) (i 2 1))"
    " (box (sym a 1 1) e)"
    " (i 2 1) (i 1 0))"
)
K33_ROUTING = [1, 4, 7, 2, 5, 8, 3, 6, 9]


@pytest.fixture
def paw_term():
    return parse_term(PAW_TERM_TEXT)


@pytest.fixture
def k4_term():
    return parse_term(K4_TERM_TEXT)


@pytest.fixture(scope="session")
def small_corpus():
    return digraph_corpus()


@pytest.fixture(scope="session")
def shuffled_corpus():
    return node_shuffled_corpus()


@pytest.fixture(scope="session")
def hyper_corpus():
    return hypergraph_corpus()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for status, tag in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(status, []):
            if "test_acceptance" in rep.nodeid and getattr(rep, "when", "call") == "call":
                lines.append((rep.nodeid.split("::")[-1], tag))
    if lines:
        terminalreporter.section("acceptance summary")
        for name, tag in sorted(lines):
            terminalreporter.write_line(f"{tag}  {name}")
