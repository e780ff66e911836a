import functools
import pathlib

import pytest

from icg.graph import Graph, read_graph6_lines

DATA_DIR = pathlib.Path(__file__).resolve().parents[1] / "src" / "icg" / "data"


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(n: int) -> Graph:
    """K_{1,n}: center 0 plus n leaves."""
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


@functools.lru_cache(maxsize=None)
def corpus(n: int) -> tuple[Graph, ...]:
    text = (DATA_DIR / f"connected_n{n}.g6").read_text()
    return tuple(read_graph6_lines(text))


def full_corpus(max_n: int = 7) -> list[Graph]:
    out = []
    for n in range(1, max_n + 1):
        out.extend(corpus(n))
    return out


@pytest.fixture(scope="session")
def corpus_n7():
    return full_corpus(7)
