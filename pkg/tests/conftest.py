import pytest

from no3line.constraints import build_line_system
from no3line.geometry import torus
from no3line.solver import solve_max


@pytest.fixture(scope="session", autouse=True)
def warm_kernel():
    """Run one tiny solve up front so JIT compilation is never charged to a
    timed assertion."""
    solve_max(build_line_system(torus(2, 2)))
