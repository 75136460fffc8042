import pytest

from pfrees.polyring import ring_make


@pytest.fixture
def xyz():
    return ring_make(["x", "y", "z"], 3, 0, 0)


@pytest.fixture
def xy_ring():
    """One X-variable and one Y-variable."""
    return ring_make(["x", "y"], 1, 1, 0)


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("PFREES_BUDGET", raising=False)
    return tmp_path
