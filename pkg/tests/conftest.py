import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from linkgraph import DirectedGraph

# 8-node fixture: a 3-cycle core with one feeder, one drain, a tendril,
# a tube, and an isolated node. Hand-classified:
#   SCC {1,2,3}, IN {0}, OUT {4}, TENDRIL {5}, TUBE {6}, DISC {7}
TOY8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 1), (3, 4), (0, 5), (0, 6), (6, 4)]
TOY8_N = 8


@pytest.fixture
def toy8():
    src = np.array([u for u, _ in TOY8_EDGES])
    dst = np.array([v for _, v in TOY8_EDGES])
    return DirectedGraph.from_edges(TOY8_N, src, dst)


def graph_of(n, edges):
    src = np.array([u for u, _ in edges], dtype=np.int64)
    dst = np.array([v for _, v in edges], dtype=np.int64)
    return DirectedGraph.from_edges(n, src, dst)


@pytest.fixture
def make_graph():
    return graph_of
