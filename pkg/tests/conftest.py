import pytest

from cnproj.algebra import Quiver, build_algebra


@pytest.fixture(scope="session")
def point_alg():
    """The base field as a one-vertex algebra."""
    return build_algebra(Quiver((1,), ()), [], "rational")


@pytest.fixture(scope="session")
def a2_alg():
    """Hereditary A2: 1 -a-> 2."""
    return build_algebra(Quiver((1, 2), (("a", 1, 2),)), [], "rational")


@pytest.fixture(scope="session")
def a3_alg():
    """1 -a-> 2 -b-> 3 with ab = 0 (strong global dimension 2)."""
    q = Quiver((1, 2, 3), (("a", 1, 2), ("b", 2, 3)))
    return build_algebra(q, [("a", "b")], "rational")


@pytest.fixture(scope="session")
def a6_alg():
    """Six-vertex linear quiver with ab = bc = de = 0 (s.gl.dim 4, gl.dim 3)."""
    q = Quiver((1, 2, 3, 4, 5, 6),
               (("a", 1, 2), ("b", 2, 3), ("c", 3, 4), ("d", 4, 5), ("e", 5, 6)))
    return build_algebra(q, [("a", "b"), ("b", "c"), ("d", "e")], "rational")


@pytest.fixture(scope="session")
def fixtures_dir(tmp_path_factory):
    import pathlib

    return pathlib.Path(__file__).parent / "fixtures"
