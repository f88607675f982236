import pytest

from dccsearch import confgraph


@pytest.fixture(scope="session")
def graph31():
    return confgraph.get_graph(3, 1)


@pytest.fixture(scope="session")
def graph61():
    return confgraph.get_graph(6, 1)


@pytest.fixture(scope="session")
def graph71():
    return confgraph.get_graph(7, 1)
