"""Naive reference computations, independent of the package kernels.

These work on plain dicts and nested lists so that package results can be
checked against code that shares nothing with the code under test.
"""
from itertools import permutations


def sort_matrix_rows(m):
    return [sorted(row) for row in m]


def sort_matrix_columns(m):
    cols = [sorted(col) for col in zip(*m)]
    return [list(row) for row in zip(*cols)]


def matrix_rc(m):
    return sort_matrix_rows(sort_matrix_columns(m))


def matrix_cr(m):
    return sort_matrix_columns(sort_matrix_rows(m))


def sort_chains(labels, chains):
    out = dict(labels)
    for chain in chains:
        vals = sorted(labels[x] for x in chain)
        for x, v in zip(chain, vals):
            out[x] = v
    return out


def chain_rc(labels, rows, cols):
    return sort_chains(sort_chains(labels, cols), rows)


def chain_cr(labels, rows, cols):
    return sort_chains(sort_chains(labels, rows), cols)


def all_matrices(r, c):
    for perm in permutations(range(1, r * c + 1)):
        yield [list(perm[i * c:(i + 1) * c]) for i in range(r)]


def is_sorted_matrix(m):
    rows_ok = all(all(a < b for a, b in zip(row, row[1:])) for row in m)
    cols_ok = all(all(a < b for a, b in zip(col, col[1:])) for col in zip(*m))
    return rows_ok and cols_ok


def brute_preimage_counts(r, c):
    """{sorted matrix as tuple of rows: (count under RC, count under CR)}."""
    out = {}
    for m in all_matrices(r, c):
        a = tuple(map(tuple, matrix_rc(m)))
        b = tuple(map(tuple, matrix_cr(m)))
        x = out.setdefault(a, [0, 0])
        x[0] += 1
        y = out.setdefault(b, [0, 0])
        y[1] += 1
    return {k: tuple(v) for k, v in out.items()}


def componentwise_leq(x, y):
    return x[0] <= y[0] and x[1] <= y[1]
