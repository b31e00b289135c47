# tests/conftest.py
import pytest

from src.core import polytope as poly
from src.data_management import fixtures
from src.utils.config import Settings


@pytest.fixture
def settings(tmp_path):
    return Settings(log_level="WARNING", output_path=str(tmp_path / "output"), random_directions=20)


@pytest.fixture
def square():
    return poly.cube(2)


@pytest.fixture
def torus(square):
    return fixtures.coordinate_map(square)


@pytest.fixture
def klein(square):
    return fixtures.klein_map(square)


@pytest.fixture
def pentagon():
    return poly.polygon(5)


@pytest.fixture
def pentagon_map(pentagon):
    return fixtures.alternating_polygon_map(pentagon)


@pytest.fixture
def triangle_map():
    return fixtures.standard_simplex_map(poly.simplex(2))


@pytest.fixture
def cube3_map():
    return fixtures.coordinate_map(poly.cube(3))


@pytest.fixture
def permutohedron3():
    return poly.permutohedron(3)


@pytest.fixture
def nu_map(permutohedron3):
    return fixtures.nu_map(permutohedron3)
