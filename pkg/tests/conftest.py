import pytest

from cmgraph.graphio import parse


def G(text: str):
    """Build a graph from ';'-separated edge lines."""
    return parse(text.replace(";", "\n"))


@pytest.fixture
def g_ex():
    """Six-node chain graph used by the worked separation examples."""
    return G("j -> k; k -> l; l -- r; q -> r; q -> h")
