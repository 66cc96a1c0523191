import itertools
import json

import pytest

from ybserre.linalg import ExactMatrix, flip, identity, inverse, matmul
from ybserre.rmatrix import (
    CATALOG_NAMES,
    RMatrix,
    RMatrixError,
    SingularMatrixError,
    YBEViolation,
    braid_from_r,
    catalog,
    check_braid,
    check_ybe,
    diagonal_r,
    load_rmatrix,
    parse_rmatrix_document,
    rmatrix_document,
)
from ybserre.scalars import Q, ZERO, parse_scalar

from conftest import random_scalar


def ybe_components(M: ExactMatrix, n: int):
    """Brute-force index contraction of both sides of the Yang-Baxter equation."""

    def r(i, j, k, l):
        return M[i * n + j, k * n + l]

    rng = range(n)
    lhs, rhs = {}, {}
    for i, j, k, l, m, p in itertools.product(rng, repeat=6):
        a_ = b_ = ZERO
        for a, b, c in itertools.product(rng, repeat=3):
            a_ += r(i, j, a, b) * r(a, k, l, c) * r(b, c, m, p)
            b_ += r(j, k, b, c) * r(i, c, a, p) * r(a, b, l, m)
        lhs[(i, j, k), (l, m, p)] = a_
        rhs[(i, j, k), (l, m, p)] = b_
    return lhs, rhs


def perturbed_sl2(delta_index=0, scale=2, add=0):
    M = catalog("sln_standard", 2).matrix
    e = list(M.entries)
    e[delta_index] = e[delta_index] * scale + add
    return ExactMatrix(4, 4, tuple(e))


def doc_for(M):
    return json.dumps(rmatrix_document(M))


def test_identity_document_loads():
    doc = {"dim": 2, "entries": [{"i": i, "j": j, "k": i, "l": j, "value": "1"} for i in range(2) for j in range(2)]}
    R = load_rmatrix(doc)
    assert R.matrix == identity(4)


def test_diagonal_document_loads(rng):
    for _ in range(5):
        vals = [random_scalar(rng) for _ in range(4)]
        doc = {
            "dim": 2,
            "entries": [
                {"i": i, "j": j, "k": i, "l": j, "value": vals[2 * i + j].render()}
                for i in range(2)
                for j in range(2)
            ],
        }
        R = load_rmatrix(doc)
        assert R.entry(1, 0, 1, 0) == vals[2]


def test_perturbed_document_fails_ybe():
    with pytest.raises(YBEViolation) as exc:
        load_rmatrix(doc_for(perturbed_sl2(add=1, scale=1)))
    res = exc.value.result
    lhs, rhs = ybe_components(perturbed_sl2(add=1, scale=1), 2)
    assert lhs[res.row, res.col] != rhs[res.row, res.col]
    assert (res.lhs, res.rhs) == (lhs[res.row, res.col], rhs[res.row, res.col])


def test_document_errors():
    with pytest.raises(RMatrixError):
        parse_rmatrix_document("{not json")
    with pytest.raises(RMatrixError):
        parse_rmatrix_document({"dim": 2})
    with pytest.raises(RMatrixError):
        parse_rmatrix_document({"dim": 2, "entries": [{"i": 0, "j": 0, "k": 0, "l": 2, "value": "1"}]})
    dup = {"i": 0, "j": 0, "k": 0, "l": 0, "value": "q"}
    with pytest.raises(RMatrixError, match="duplicate"):
        parse_rmatrix_document({"dim": 1, "entries": [dup, dup]})
    with pytest.raises(SingularMatrixError):
        load_rmatrix({"dim": 1, "entries": []})


def test_document_roundtrip():
    for name in CATALOG_NAMES:
        R = catalog(name, 3)
        assert load_rmatrix(doc_for(R)).matrix == R.matrix


def test_check_ybe_examples():
    assert check_ybe(identity(4))
    assert check_ybe(diagonal_r([[Q, 3], [Q + 1, -2]]))
    assert check_ybe(catalog("sln_standard", 2).matrix)
    res = check_ybe(perturbed_sl2())
    assert not res
    # witness frozen from the brute-force contraction above
    lhs, rhs = ybe_components(perturbed_sl2(), 2)
    assert lhs[res.row, res.col] == res.lhs and rhs[res.row, res.col] == res.rhs
    assert (res.row, res.col) == ((0, 0, 1), (1, 0, 0))
    assert res.lhs == parse_scalar("4*q^3 - 4*q")
    assert res.rhs == parse_scalar("(2*q^4 - 3*q^2 + 1)/q")


def test_check_ybe_matches_brute_force():
    for M in (catalog("sln_standard", 3).matrix, perturbed_sl2(), perturbed_sl2(5, 1, Q)):
        n = round(M.rows**0.5)
        lhs, rhs = ybe_components(M, n)
        assert bool(check_ybe(M)) == (lhs == rhs)


def test_check_ybe_shape_error():
    with pytest.raises(ValueError):
        check_ybe(identity(3))


def test_braid_from_r_examples():
    assert braid_from_r(catalog("identity", 2)).matrix == flip(2)
    assert braid_from_r(catalog("flip", 3)).matrix == identity(9)
    R1 = RMatrix.validated(ExactMatrix.from_rows([[Q * 2]]))
    assert braid_from_r(R1).matrix == ExactMatrix.from_rows([[Q * 2]])


def test_braid_index_transposition():
    R = catalog("sln_standard", 3)
    B = braid_from_r(R)
    for i, j, k, l in itertools.product(range(3), repeat=4):
        assert B.entry(i, j, k, l) == R.entry(j, i, k, l)
    # undoing the upper transposition returns R
    assert matmul(flip(3), B.matrix) == R.matrix


def test_check_braid_examples():
    assert check_braid(identity(4))
    assert check_braid(flip(3))
    assert check_braid(braid_from_r(catalog("sln_standard", 2)).matrix)
    assert not check_braid(perturbed_sl2())


def test_catalog_entries_valid():
    for name in CATALOG_NAMES:
        for n in (2, 3):
            R = catalog(name, n)
            assert check_ybe(R.matrix)
            assert check_braid(braid_from_r(R).matrix)
            assert inverse(R.matrix) @ R.matrix == identity(n * n)
    assert catalog("identity", 2).matrix == identity(4)


def test_catalog_errors():
    with pytest.raises(RMatrixError):
        catalog("so_n", 2)
    with pytest.raises(RMatrixError):
        catalog("sln_standard", 1)
    with pytest.raises(RMatrixError):
        catalog("diagonal", 2, ["q"])


def test_quantum_plane_is_rescaled_standard():
    for n in (2, 3):
        assert catalog("sln_quantum_plane", n).matrix == catalog("sln_standard", n).matrix.scale(Q)


def test_diagonal_closed_form(rng):
    for n in (2, 3):
        grid = [[random_scalar(rng) for _ in range(n)] for _ in range(n)]
        R = RMatrix.validated(diagonal_r(grid))
        B = braid_from_r(R)
        for i, j, k, l in itertools.product(range(n), repeat=4):
            expect = grid[j][i] if (i == l and j == k) else ZERO
            assert B.entry(i, j, k, l) == expect
