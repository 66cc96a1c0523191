"""Braided integers and factorials on V^{⊗N}.

Two independent routes to the same matrix:

* the product form ``[N!]_B = [N]_B · ([(N-1)!]_B ⊗ id)`` with
  ``[N]_B = Σ_k B_k B_{k+1} ⋯ B_{N-1}``, built from embedded matrices;
* :func:`pairing_gram_oracle`, which contracts B-entries index by index the
  way the F-word/E-word pairing recursion does and never touches the
  matrix routines.

Rows are indexed by F-indices (q_1..q_N), columns by E-indices (a_1..a_N).
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass

from .linalg import ExactMatrix, embed_at, identity, kron, matmul
from .rmatrix import BraidMatrix
from .scalars import ONE, ZERO

__all__ = [
    "BraidedFactorial",
    "braided_integer",
    "braided_factorial",
    "pairing_gram_oracle",
]


@dataclass(frozen=True)
class BraidedFactorial:
    n: int
    N: int
    matrix: ExactMatrix
    provenance: str = "product-form"


def _check_degree(N: int) -> None:
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"degree must be a positive integer, got {N!r}")


def braided_integer(B: BraidMatrix, N: int) -> ExactMatrix:
    """[N]_B = Σ_{k=1}^{N} B_k ⋯ B_{N-1}; the k = N term is the identity."""
    _check_degree(N)
    n = B.n
    dim = n**N
    term = identity(dim, (n, N))
    total = term
    for k in range(N - 1, 0, -1):
        term = matmul(embed_at(B.matrix, k, N, n), term)
        total = total + term
    return total.with_tensor(n, N)


def braided_factorial(B: BraidMatrix, N: int) -> BraidedFactorial:
    _check_degree(N)
    n = B.n
    M = identity(n, (n, 1))
    for k in range(2, N + 1):
        M = matmul(braided_integer(B, k), kron(M, identity(n, (n, 1))))
    return BraidedFactorial(n, N, M.with_tensor(n, N))


# -- oracle: index contraction of the pairing recursion ----------------------

_memo: dict = {}
_memo_lock = threading.Lock()


def _braid_table(B: BraidMatrix) -> dict:
    """(upper i, upper j) -> list of ((lower k, lower l), value) over nonzeros."""
    n = B.n
    table = {}
    for i, j in itertools.product(range(n), repeat=2):
        row = []
        for k, l in itertools.product(range(n), repeat=2):
            v = B.entry(i, j, k, l)
            if v:
                row.append(((k, l), v))
        table[(i, j)] = row
    return table


def _chain(table: dict, qs: tuple) -> dict:
    """Contract B^{q_k q_{k+1}}_{p_k b_{k+1}} B^{b_{k+1} q_{k+2}}_{p_{k+1} b_{k+2}} ⋯
    B^{b_{N-1} q_N}_{p_{N-1} a_N} over the carried indices b.

    ``qs`` is (q_k, ..., q_N); returns {(p_k, ..., p_{N-1}, a_N): value}.
    """
    if len(qs) == 1:
        return {qs: ONE}
    # partial states: (ps so far, carried index b) -> value
    states = {((), qs[0]): ONE}
    for q_next in qs[1:]:
        nxt = {}
        for (ps, b), val in states.items():
            for (p, b2), v in table[(b, q_next)]:
                key = (ps + (p,), b2)
                nxt[key] = nxt.get(key, ZERO) + val * v
        states = {k: v for k, v in nxt.items() if v}
    return {ps + (a,): v for (ps, a), v in states.items()}


def _gram_dict(B: BraidMatrix, N: int, table: dict) -> dict:
    key = (B, N)
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None:
        return hit
    n = B.n
    if N == 1:
        G = {(q,): {(q,): ONE} for q in range(n)}
    else:
        prev = _gram_dict(B, N - 1, table)
        G = {}
        chain_cache = {}
        for qs in itertools.product(range(n), repeat=N):
            row = {}
            for k in range(N):
                tail = qs[k:]
                ch = chain_cache.get(tail)
                if ch is None:
                    ch = chain_cache[tail] = _chain(table, tail)
                head = qs[:k]
                for pa, cval in ch.items():
                    ps, aN = pa[:-1], pa[-1]
                    for a_prev, gval in prev.get(head + ps, {}).items():
                        col = a_prev + (aN,)
                        row[col] = row.get(col, ZERO) + cval * gval
            row = {c: v for c, v in row.items() if v}
            if row:
                G[qs] = row
    with _memo_lock:
        # first writer wins so every caller sees the same object
        G = _memo.setdefault(key, G)
    return G


def pairing_gram_oracle(B: BraidMatrix, N: int) -> ExactMatrix:
    """Gram matrix <F^{q_1}⋯F^{q_N}, E_{a_1}⋯E_{a_N}> by direct index contraction."""
    _check_degree(N)
    n = B.n
    G = _gram_dict(B, N, _braid_table(B))
    dim = n**N
    ents = [ZERO] * (dim * dim)

    def enc(idx):
        c = 0
        for i in idx:
            c = c * n + i
        return c

    for qs, row in G.items():
        r = enc(qs)
        for a, v in row.items():
            ents[r * dim + enc(a)] = v
    return ExactMatrix(dim, dim, tuple(ents), (n, N))
