import random

import pytest

from hamlab import Graph, from_edges


def er_graph(n: int, p: float, seed) -> Graph:
    rng = random.Random(f"test:{seed}")
    return from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                          if rng.random() < p])


@pytest.fixture
def er():
    return er_graph
