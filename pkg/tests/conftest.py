import pytest

from nmusort import kernels
from nmusort.poset import CylinderSpec, build_cylinder_convex, build_grid_convex

# Six cells of a 3x3 grid forming a skew (non-rectangular) convex shape.
SKEW_CELLS = [(1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1)]

# Convex pieces of cylinders whose column (+a run) crosses the
# identification line.
CYL6 = (CylinderSpec(2, 5), [(0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2)])
CYL7 = (CylinderSpec(3, 6), [(0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)])

_ACCEPTANCE = []


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return kernels.load_backend(request.param)


@pytest.fixture
def skew():
    return build_grid_convex(SKEW_CELLS)


@pytest.fixture
def cyl6():
    return build_cylinder_convex(*CYL6)


@pytest.fixture
def cyl7():
    return build_cylinder_convex(*CYL7)


@pytest.fixture
def acceptance_record():
    def record(number, title, ok, detail=""):
        _ACCEPTANCE.append((number, title, ok, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_ACCEPTANCE):
        status = "PASS" if ok else "FAIL"
        extra = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"[{status}] {number}. {title}{extra}")
