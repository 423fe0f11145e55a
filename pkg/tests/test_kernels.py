import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmusort import kernels
from nmusort.analyzer import corner_table
from nmusort.poset import build_grid

from oracles import sort_chains


@st.composite
def chain_partition(draw):
    n = draw(st.integers(1, 9))
    order = draw(st.permutations(range(n)))
    cuts = sorted(draw(st.sets(st.integers(1, max(1, n - 1)), max_size=n - 1))) if n > 1 else []
    chains, start = [], 0
    for cut in cuts + [n]:
        chains.append(list(order[start:cut]))
        start = cut
    return n, [ch for ch in chains if ch]


@settings(max_examples=200, deadline=None)
@given(chain_partition(), chain_partition(), st.data())
def test_backends_sort_like_naive_chains(rows, cols, data):
    n = rows[0]
    cols = (n, cols[1]) if cols[0] == n else (n, [list(range(n))])
    labels = data.draw(st.lists(st.integers(-5, 20), min_size=n, max_size=n))
    as_dict = dict(enumerate(labels))
    want_rows = sort_chains(as_dict, rows[1])
    want_cols = sort_chains(as_dict, cols[1])
    for name in kernels.available_backends():
        plan = kernels.load_backend(name).Plan(n, rows[1], cols[1])
        assert plan.sort_rows(labels) == [want_rows[i] for i in range(n)]
        assert plan.sort_columns(labels) == [want_cols[i] for i in range(n)]
        assert plan.rc(labels) == plan.sort_rows(plan.sort_columns(labels))
        assert plan.cr(labels) == plan.sort_columns(plan.sort_rows(labels))


@pytest.mark.parametrize("r,c", [(2, 2), (2, 3), (3, 2), (1, 4)])
def test_backends_sweep_identically(r, c):
    p = build_grid(r, c)
    results = []
    for name in kernels.available_backends():
        plan = kernels.load_backend(name).Plan(len(p), p.rows, p.columns, corner_table(p))
        results.append((plan.sweep_nmu(), plan.sweep_invariance(), plan.tally()))
    assert all(res == results[0] for res in results)


def test_partitioned_sweep_matches_full(backend):
    p = build_grid(2, 3)
    plan = backend.Plan(len(p), p.rows, p.columns, corner_table(p))
    full = plan.sweep_invariance()
    parts = [plan.sweep_invariance(f) for f in range(1, len(p) + 1)]
    assert sum(x[0] for x in parts) == full[0] == 720
    assert sum(x[1] for x in parts) == full[1]
    assert sum(x[2] for x in parts) == full[2]


def test_first_bad_modes(backend):
    # one record of each mode over three or four elements
    plan = backend.Plan(4, [[0, 2], [1, 3]], [[0, 1], [2, 3]],
                        [(0, 3, 1, 2, kernels.FOUR)])
    assert plan.first_bad([1, 3, 4, 2]) == 0      # x, y below w, z
    assert plan.first_bad([1, 2, 3, 4]) == -1
    above = backend.Plan(3, [[0, 2], [1]], [[0], [1, 2]], [(0, 1, 2, -1, kernels.THIRD_ABOVE)])
    assert above.first_bad([2, 3, 1]) == 0
    assert above.first_bad([1, 2, 3]) == -1
    below = backend.Plan(3, [[2, 0], [1]], [[0], [2, 1]], [(0, 1, 2, -1, kernels.THIRD_BELOW)])
    assert below.first_bad([1, 2, 3]) == 0
    assert below.first_bad([2, 3, 1]) == -1


def test_plan_rejects_wrong_length(backend):
    plan = backend.Plan(2, [[0, 1]], [[0], [1]])
    with pytest.raises(ValueError):
        plan.rc([1, 2, 3])


def test_pure_python_forced_by_environment():
    env = dict(os.environ, NMU_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "import nmusort; from nmusort import build_grid, rc;"
         "p = build_grid(2, 2); print(nmusort.BACKEND, rc(p, [4, 3, 2, 1]))"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.split() == ["python", "(1,", "2,", "3,", "4)"]


def test_compiled_backend_is_built():
    assert "cython" in kernels.available_backends()
    if not os.environ.get("NMU_PURE_PYTHON"):
        assert kernels.BACKEND == "cython"
