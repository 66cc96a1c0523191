"""Dense matrices over Q(q) with tensor-power structure and exact kernels.

Composite indices over V^{⊗N} are big-endian: the multi-index
(i_1, ..., i_N) is stored at i_1*n^(N-1) + ... + i_N, so ``kron(A, B)``
puts the legs of A before the legs of B.

Kernels come from fraction-free (Bareiss) elimination over Z[q]: each row is
first cleared of denominators, eliminated with exact polynomial divisions,
and only the final back substitution goes through Q(q).
"""

from __future__ import annotations

import itertools
from math import gcd
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .scalars import (
    ONE,
    ZERO,
    Scalar,
    ScalarLike,
    p_content,
    p_exact_div,
    p_gcd,
    p_lcm,
    p_mul,
    p_sub,
)

__all__ = [
    "ExactMatrix",
    "KernelBasis",
    "identity",
    "zeros",
    "matmul",
    "kron",
    "embed_at",
    "flip",
    "rank",
    "right_nullspace",
    "left_nullspace",
    "inverse",
    "rref_rows",
    "normalize_vector",
    "multi_index",
    "composite_index",
]


def multi_index(c: int, n: int, N: int) -> tuple[int, ...]:
    """Big-endian digits of the composite index ``c`` over V^{⊗N}."""
    out = [0] * N
    for k in range(N - 1, -1, -1):
        c, out[k] = divmod(c, n)
    return tuple(out)


def composite_index(idx: Sequence[int], n: int) -> int:
    c = 0
    for i in idx:
        c = c * n + i
    return c


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple
    tensor: Optional[tuple[int, int]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries has length {len(self.entries)}, expected {self.rows * self.cols}"
            )
        if self.tensor is not None:
            n, N = self.tensor
            if not (self.rows == self.cols == n**N):
                raise ValueError(f"tensor tag {self.tensor} does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]], tensor=None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        r = len(rows)
        c = len(rows[0]) if rows else 0
        if any(len(x) != c for x in rows):
            raise ValueError("ragged rows")
        ents = tuple(Scalar.coerce(x) for row in rows for x in row)
        return cls(r, c, ents, tensor)

    @classmethod
    def from_dict(cls, rows: int, cols: int, nonzero: dict, tensor=None) -> "ExactMatrix":
        ents = [ZERO] * (rows * cols)
        for (i, j), v in nonzero.items():
            ents[i * cols + j] = Scalar.coerce(v)
        return cls(rows, cols, tuple(ents), tensor)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def nonzero_rows(self) -> list[list[tuple[int, Scalar]]]:
        c = self.cols
        e = self.entries
        return [
            [(j, e[i * c + j]) for j in range(c) if e[i * c + j]] for i in range(self.rows)
        ]

    def transpose(self) -> "ExactMatrix":
        r, c = self.rows, self.cols
        e = self.entries
        return ExactMatrix(c, r, tuple(e[i * c + j] for j in range(c) for i in range(r)), self.tensor)

    T = property(transpose)

    def with_tensor(self, n: int, N: int) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, self.entries, (n, N))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return ExactMatrix(
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
            self.tensor or other.tensor,
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "ExactMatrix":
        return self.scale(-1)

    def scale(self, s: ScalarLike) -> "ExactMatrix":
        s = Scalar.coerce(s)
        return ExactMatrix(self.rows, self.cols, tuple(s * a for a in self.entries), self.tensor)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return matmul(self, other)

    def apply(self, v: Sequence[ScalarLike]) -> list[Scalar]:
        """Matrix-vector product M·v."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        v = [Scalar.coerce(x) for x in v]
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for i in range(self.rows):
            row = self.row(i)
            acc = ZERO
            for j, x in nz:
                a = row[j]
                if a:
                    acc = acc + a * x
            out.append(acc)
        return out

    def map(self, f) -> list[list]:
        return [[f(x) for x in self.row(i)] for i in range(self.rows)]


def identity(k: int, tensor=None) -> ExactMatrix:
    ents = [ZERO] * (k * k)
    for i in range(k):
        ents[i * k + i] = ONE
    return ExactMatrix(k, k, tuple(ents), tensor)


def zeros(r: int, c: int) -> ExactMatrix:
    return ExactMatrix(r, c, (ZERO,) * (r * c))


def flip(n: int) -> ExactMatrix:
    """The flip P on V⊗V: P^{ij}_{kl} = δ^i_l δ^j_k."""
    d = {(i * n + j, j * n + i): ONE for i in range(n) for j in range(n)}
    return ExactMatrix.from_dict(n * n, n * n, d, (n, 2))


def matmul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    bnz = B.nonzero_rows()
    c = B.cols
    out = []
    for arow in A.nonzero_rows():
        acc = [ZERO] * c
        for k, a in arow:
            for j, b in bnz[k]:
                acc[j] = acc[j] + a * b
        out.extend(acc)
    tensor = A.tensor if A.tensor is not None and A.tensor == B.tensor else None
    return ExactMatrix(A.rows, c, tuple(out), tensor)


def kron(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """(A⊗B)[(i,k),(j,l)] = A[i,j]·B[k,l] with big-endian composite indices."""
    r = A.rows * B.rows
    c = A.cols * B.cols
    ents = [ZERO] * (r * c)
    bnz = B.nonzero_rows()
    for i, arow in enumerate(A.nonzero_rows()):
        for j, a in arow:
            for k, brow in enumerate(bnz):
                base = (i * B.rows + k) * c + j * B.cols
                for l, b in brow:
                    ents[base + l] = a * b
    tensor = None
    if A.tensor and B.tensor and A.tensor[0] == B.tensor[0]:
        tensor = (A.tensor[0], A.tensor[1] + B.tensor[1])
    return ExactMatrix(r, c, tuple(ents), tensor)


def embed_at(B: ExactMatrix, m: int, N: int, n: int) -> ExactMatrix:
    """id^{⊗(m-1)} ⊗ B ⊗ id^{⊗(N-m-1)}: B acting on legs m, m+1 (1-based)."""
    if B.shape != (n * n, n * n):
        raise ValueError(f"expected a {n * n}x{n * n} matrix, got {B.shape}")
    if not 1 <= m <= N - 1:
        raise ValueError(f"position {m} out of range for {N} legs")
    left = n ** (m - 1)
    right = n ** (N - m - 1)
    dim = n**N
    ents = [ZERO] * (dim * dim)
    bnz = B.nonzero_rows()
    nn = n * n
    for a in range(left):
        for r, brow in enumerate(bnz):
            for z in range(right):
                row = (a * nn + r) * right + z
                base = row * dim
                for col, v in brow:
                    ents[base + (a * nn + col) * right + z] = v
    return ExactMatrix(dim, dim, tuple(ents), (n, N))


# -- fraction-free elimination ----------------------------------------------


def _clear_row(row: Sequence[Scalar]) -> list:
    """Scale a row of Scalars by the lcm of its denominators; returns Z[q] entries."""
    L = (1,)
    for x in row:
        if x:
            d = x.int_parts[1]
            if d != L:
                L = p_lcm(L, d)
    out = []
    for x in row:
        if not x:
            out.append(())
            continue
        num, den = x.int_parts
        out.append(p_mul(num, p_exact_div(L, den)))
    return out


def _pivot_key(p) -> tuple:
    return (len(p) - 1, 0, sum(abs(c).bit_length() for c in p))


def _bareiss(rows: list[list]) -> tuple[list[list], list[int]]:
    """Row echelon form over Z[q] by fraction-free elimination.

    Columns are scanned left to right; within a column the pivot is the
    entry of least (degree, bit size), ties to the lowest row.  Returns the
    echelon rows (zero rows dropped) and the pivot columns.
    """
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    prev = (1,)
    k = 0
    pivots = []
    for c in range(ncols):
        best = None
        for r in range(k, len(M)):
            e = M[r][c]
            if e:
                key = _pivot_key(e) + (r,)
                if best is None or key < best:
                    best = key
        if best is None:
            continue
        r = best[-1]
        M[k], M[r] = M[r], M[k]
        piv = M[k][c]
        prow = M[k]
        for i in range(k + 1, len(M)):
            row = M[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    x = p_sub(p_mul(piv, row[j]), p_mul(f, prow[j]))
                    row[j] = p_exact_div(x, prev) if x else ()
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = p_exact_div(p_mul(piv, row[j]), prev)
            row[c] = ()
        prev = piv
        pivots.append(c)
        k += 1
        if k == len(M):
            break
    return M[:k], pivots


def _echelon(M: ExactMatrix) -> tuple[list[list], list[int]]:
    return _bareiss([_clear_row(M.row(i)) for i in range(M.rows)])


def rank(M: ExactMatrix) -> int:
    return len(_echelon(M)[1])


def rref_rows(vectors: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    """Reduced row echelon form over Q(q) of a small list of vectors (zero rows dropped)."""
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    ncols = len(rows[0])
    k = 0
    for c in range(ncols):
        r = next((i for i in range(k, len(rows)) if rows[i][c]), None)
        if r is None:
            continue
        rows[k], rows[r] = rows[r], rows[k]
        inv = rows[k][c].inverse()
        rows[k] = [x * inv if x else x for x in rows[k]]
        for i in range(len(rows)):
            if i != k and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[k])]
        k += 1
        if k == len(rows):
            break
    return rows[:k]


def normalize_vector(v: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """Clear denominators, divide out the polynomial content and make the
    first nonzero entry have a positive leading coefficient."""
    polys = _clear_row(v)
    g = ()
    for p in polys:
        if p:
            g = p_gcd(g, p) if g else p
    if not g:
        return tuple(ZERO for _ in v)
    # p_gcd returns a primitive polynomial; fold integer content separately
    c = 0
    for p in polys:
        if p:
            c = gcd(c, p_content(p_exact_div(p, g)))
    first = next(p for p in polys if p)
    lead = p_exact_div(first, g)[-1]
    if lead < 0:
        c = -c
    g = tuple(c * x for x in g)
    return tuple(Scalar(p_exact_div(p, g)) if p else ZERO for p in polys)


@dataclass(frozen=True)
class KernelBasis:
    vectors: tuple
    side: str = "right"

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]


def _kernel_vectors(M: ExactMatrix) -> list[tuple[Scalar, ...]]:
    ech, pivots = _echelon(M)
    ncols = M.cols
    free = [c for c in range(ncols) if c not in set(pivots)]
    if not free:
        return []
    rows = [[Scalar._raw(p, (1,)) if p else ZERO for p in r] for r in ech]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            row = rows[k]
            acc = ZERO
            for j in range(pc + 1, ncols):
                if row[j] and x[j]:
                    acc = acc + row[j] * x[j]
            if acc:
                x[pc] = -acc / row[pc]
        basis.append(x)
    return [normalize_vector(v) for v in rref_rows(basis)]


def right_nullspace(M: ExactMatrix) -> KernelBasis:
    """Normalized reduced-echelon basis of {v : M·v = 0}."""
    return KernelBasis(tuple(_kernel_vectors(M)), "right")


def left_nullspace(M: ExactMatrix) -> KernelBasis:
    """Normalized reduced-echelon basis of {v : vᵀ·M = 0}."""
    return KernelBasis(tuple(_kernel_vectors(M.transpose())), "left")


def inverse(M: ExactMatrix) -> ExactMatrix:
    """Gauss-Jordan inverse over Q(q); raises ZeroDivisionError if singular."""
    if M.rows != M.cols:
        raise ValueError("inverse of non-square matrix")
    k = M.rows
    A = [list(M.row(i)) + [ONE if j == i else ZERO for j in range(k)] for i in range(k)]
    for c in range(k):
        cand = [r for r in range(c, k) if A[r][c]]
        if not cand:
            raise ZeroDivisionError("matrix is singular")
        r = min(cand, key=lambda r: (A[r][c].degrees(), A[r][c].bitsize(), r))
        A[c], A[r] = A[r], A[c]
        inv = A[c][c].inverse()
        A[c] = [x * inv if x else x for x in A[c]]
        for i in range(k):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b if b else a for a, b in zip(A[i], A[c])]
    return ExactMatrix(k, k, tuple(x for row in A for x in row[k:]), M.tensor)


def tensor_power_indices(n: int, N: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(n), repeat=N)
