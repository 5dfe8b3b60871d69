import pytest

from metacirc import enumeration, fixtures
from metacirc.codes import graph_code
from metacirc.graphs import border, build_metacirculant


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # Compile (or load from on-disk cache) the enumeration kernels once, so
    # timed assertions elsewhere never include JIT time.
    enumeration.warm_up()


@pytest.fixture(scope="session")
def hexacode_spec():
    return fixtures.get("hexacode").spec


@pytest.fixture(scope="session")
def hexacode_graph(hexacode_spec):
    return build_metacirculant(hexacode_spec)


@pytest.fixture(scope="session")
def hexacode_code(hexacode_graph):
    return graph_code(hexacode_graph)


@pytest.fixture(scope="session")
def bordered_hexacode_code(hexacode_graph):
    return graph_code(border(hexacode_graph))
