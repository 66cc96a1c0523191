import pytest

from ybserre.braided import braided_factorial, braided_integer, pairing_gram_oracle
from ybserre.linalg import ExactMatrix, identity, kron, matmul, rank, right_nullspace
from ybserre.rmatrix import BraidMatrix, RMatrix, braid_from_r, catalog, diagonal_r
from ybserre.scalars import ONE, Q, Scalar

from conftest import random_scalar


def one_dim(b):
    return BraidMatrix(1, ExactMatrix.from_rows([[b]], (1, 2)))


def q_factorial(b, N):
    """Π_{k=1}^{N} (1 + b + ... + b^{k-1}), straight from the definition."""
    b = Scalar.coerce(b)
    out = ONE
    for k in range(1, N + 1):
        out = out * sum((b**e for e in range(k)), Scalar.coerce(0))
    return out


def test_braided_integer_examples():
    B = braid_from_r(catalog("sln_standard", 2))
    assert braided_integer(B, 1) == identity(2)
    assert braided_integer(B, 2) == identity(4) + B.matrix
    assert braided_integer(one_dim(Q), 3) == ExactMatrix.from_rows([[ONE + Q + Q * Q]])


def test_braided_factorial_examples():
    for name in ("sln_standard", "identity", "flip"):
        B = braid_from_r(catalog(name, 2))
        assert braided_factorial(B, 1).matrix == identity(2)
        assert braided_factorial(B, 2).matrix == identity(4) + B.matrix
    assert braided_factorial(one_dim(Q), 3).matrix == ExactMatrix.from_rows([[(1 + Q) * (1 + Q + Q * Q)]])
    assert braided_factorial(one_dim(-1), 2).matrix.is_zero()


@pytest.mark.parametrize("N", range(1, 7))
def test_one_dimensional_closure(N):
    for b in (Q, Scalar.coerce(-1), Q * Q - 3, 1 / (Q + 2)):
        assert braided_factorial(one_dim(b), N).matrix[0, 0] == q_factorial(b, N)
        assert pairing_gram_oracle(one_dim(b), N)[0, 0] == q_factorial(b, N)


def test_oracle_examples():
    B = braid_from_r(catalog("sln_quantum_plane", 2))
    assert pairing_gram_oracle(B, 1) == identity(2)
    assert pairing_gram_oracle(B, 2) == identity(4) + B.matrix
    with pytest.raises(ValueError):
        pairing_gram_oracle(B, 0)


def test_oracle_matches_product_form(rng):
    braids = [braid_from_r(catalog(nm, n)) for nm in ("identity", "flip", "sln_standard", "sln_quantum_plane") for n in (2, 3)]
    for n in (2, 3):
        grid = [[random_scalar(rng) for _ in range(n)] for _ in range(n)]
        braids.append(braid_from_r(RMatrix.validated(diagonal_r(grid))))
    for B in braids:
        for N in range(1, 5):
            assert pairing_gram_oracle(B, N) == braided_factorial(B, N).matrix


def test_factorial_commutes_with_weight_action():
    # g⊗g with g = diag(1, q) commutes with the sl2 braid matrix (weight conservation)
    g = ExactMatrix.from_rows([[1, 0], [0, Q]])
    B = braid_from_r(catalog("sln_standard", 2))
    gg = kron(g, g)
    assert matmul(gg, B.matrix) == matmul(B.matrix, gg)
    for N in (2, 3, 4):
        G = g
        for _ in range(N - 1):
            G = kron(G, g)
        M = braided_factorial(B, N).matrix
        assert matmul(G, M) == matmul(M, G)
        s = identity(2**N).scale(Q + 5)
        assert matmul(s, M) == matmul(M, s)


def test_quadratic_braid_kernel_dimension():
    for n in (2, 3):
        B = braid_from_r(catalog("sln_quantum_plane", n)).matrix
        I = identity(n * n)
        # B^2 = (q^2 - 1) B + q^2, eigenvalues q^2 and -1
        assert matmul(B, B) == B.scale(Q * Q - 1) + I.scale(Q * Q)
        trace = sum((B[i, i] for i in range(n * n)), Scalar.coerce(0))
        mult_minus_one = (Q * Q * (n * n) - trace) / (Q * Q + 1)
        assert mult_minus_one == n * (n - 1) // 2
        assert len(right_nullspace(I + B)) == n * (n - 1) // 2
        assert rank(B - I.scale(Q * Q)) == n * (n - 1) // 2


def test_oracle_is_memoized():
    B = braid_from_r(catalog("sln_standard", 2))
    a = pairing_gram_oracle(B, 3)
    b = pairing_gram_oracle(B, 3)
    assert a == b
