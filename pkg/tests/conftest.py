import pytest

from petrialign import ex1_acyclic_system, ex1_system, serialize_net


@pytest.fixture
def ex1():
    return ex1_system()


@pytest.fixture
def ex1_acyclic():
    return ex1_acyclic_system()


@pytest.fixture
def ex1_path(tmp_path, ex1):
    path = tmp_path / "ex1.net"
    path.write_text(serialize_net(ex1))
    return path
