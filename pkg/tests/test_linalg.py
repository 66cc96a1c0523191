import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybserre.linalg import (
    ExactMatrix,
    composite_index,
    embed_at,
    flip,
    identity,
    inverse,
    kron,
    left_nullspace,
    matmul,
    multi_index,
    rank,
    right_nullspace,
    zeros,
)
from ybserre.scalars import ONE, Q, ZERO, Scalar

from conftest import scalars


def test_matmul_examples():
    M = ExactMatrix.from_rows([[1, Q], [Q + 1, 3], [0, Q * Q]])
    assert identity(3) @ M == M
    A = ExactMatrix.from_rows([[Q, 1], [1, Q]])
    assert A @ inverse(A) == identity(2)
    assert ExactMatrix.from_rows([[Q]]) @ ExactMatrix.from_rows([[Q]]) == ExactMatrix.from_rows([[Q * Q]])
    with pytest.raises(ValueError):
        matmul(M, M)


def test_kron_examples():
    assert kron(identity(2), identity(2)) == identity(4)
    M = ExactMatrix.from_rows([[1, Q], [2, 3]])
    assert kron(ExactMatrix.from_rows([[Q]]), M) == M.scale(Q)
    A = ExactMatrix.from_rows([[1, 2], [3, Q]])
    B = ExactMatrix.from_rows([[Q, 0, 1], [5, 6, 7]])
    K = kron(A, B)
    for i, j, k, l in itertools.product(range(2), range(2), range(2), range(3)):
        assert K[i * B.rows + k, j * B.cols + l] == A[i, j] * B[k, l]


def test_embed_examples():
    n = 2
    B = flip(n).scale(Q) + identity(4)
    assert embed_at(B, 1, 2, n) == B
    assert embed_at(identity(4), 2, 4, n) == identity(16)
    assert embed_at(B, 2, 3, n) == kron(identity(n), B)
    assert embed_at(B, 1, 3, n) == kron(B, identity(n))
    with pytest.raises(ValueError):
        embed_at(B, 3, 3, n)


def test_composite_encoding():
    for idx in itertools.product(range(3), repeat=3):
        c = composite_index(idx, 3)
        assert c == idx[0] * 9 + idx[1] * 3 + idx[2]
        assert multi_index(c, 3, 3) == idx


def test_nullspace_examples():
    assert len(right_nullspace(identity(4))) == 0
    assert len(right_nullspace(zeros(2, 2))) == 2
    M = ExactMatrix.from_rows([[1, Q], [Q, Q * Q]])
    K = right_nullspace(M)
    assert K.vectors == ((Q, -ONE),)
    assert len(left_nullspace(identity(3))) == 0
    L = left_nullspace(M.transpose())
    assert L.vectors == ((Q, -ONE),) and L.side == "left"


def test_nullspace_normalization():
    # kernel spanned by (1/q, 2/q, 0) -> cleared and content removed
    M = ExactMatrix.from_rows([[2, -1, 0], [0, 0, Q]])
    assert right_nullspace(M).vectors == ((ONE, Scalar.coerce(2), ZERO),)
    # negative leading coefficient gets flipped
    M = ExactMatrix.from_rows([[1, 1]])
    assert right_nullspace(M).vectors == ((ONE, -ONE),)


def test_inverse_singular():
    with pytest.raises(ZeroDivisionError):
        inverse(ExactMatrix.from_rows([[1, Q], [Q, Q * Q]]))


@st.composite
def small_matrices(draw):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    # sparse-ish entries make rank deficiency common
    entry = st.one_of(st.just(ZERO), st.just(ONE), st.just(Q), scalars())
    rows = [[draw(entry) for _ in range(c)] for _ in range(r)]
    return ExactMatrix.from_rows(rows)


@given(small_matrices())
@settings(max_examples=80, deadline=None)
def test_rank_nullity_and_kernel_vectors(M):
    K = right_nullspace(M)
    assert rank(M) + len(K) == M.cols
    for v in K:
        assert not any(M.apply(v))
    L = left_nullspace(M)
    assert L.vectors == right_nullspace(M.transpose()).vectors
    for v in L:
        assert not any(M.transpose().apply(v))
    # same matrix, row order shuffled: canonical basis must not change
    rows = M.to_rows()[::-1]
    assert right_nullspace(ExactMatrix.from_rows(rows)).vectors == K.vectors


@given(small_matrices(), small_matrices(), small_matrices())
@settings(max_examples=30, deadline=None)
def test_kron_associative(A, B, C):
    assert kron(kron(A, B), C) == kron(A, kron(B, C))


def test_embedded_braids_commute_far_apart():
    n = 2
    B = ExactMatrix.from_rows([[Q, 1, 0, 2], [0, 1, Q, 0], [1, 0, 0, Q], [3, 0, 1, 1]])
    b1 = embed_at(B, 1, 4, n)
    b3 = embed_at(B, 3, 4, n)
    assert b1 @ b3 == b3 @ b1


@given(small_matrices())
@settings(max_examples=40, deadline=None)
def test_rank_against_sympy(M):
    sympy = pytest.importorskip("sympy")
    q = sympy.Symbol("q")

    def conv(a):
        num = sum(sympy.Rational(c) * q**k for k, c in enumerate(a.numerator))
        den = sum(sympy.Rational(c) * q**k for k, c in enumerate(a.denominator))
        return num / den

    S = sympy.Matrix(M.rows, M.cols, [conv(x) for x in M.entries])
    from sympy.polys.matrices import DomainMatrix

    exact = DomainMatrix.from_Matrix(S).convert_to(sympy.QQ.frac_field(q))
    assert rank(M) == exact.rank()
