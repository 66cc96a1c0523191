"""R-matrices: ingestion, Yang-Baxter and braid-relation checks, catalog.

Index convention: upper indices of R^{ij}_{kl} are the composite row (i, j),
lower indices the composite column (k, l).  With this layout the braid
matrix B^{ij}_{mn} = R^{ji}_{mn} is the product P·R with P the flip.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .linalg import (
    ExactMatrix,
    embed_at,
    flip,
    identity,
    inverse,
    kron,
    matmul,
    multi_index,
    rank,
)
from .scalars import ONE, Q, Scalar, ScalarLike, parse_scalar

__all__ = [
    "RMatrix",
    "BraidMatrix",
    "CheckResult",
    "RMatrixError",
    "YBEViolation",
    "SingularMatrixError",
    "check_ybe",
    "check_braid",
    "check_invertible",
    "braid_from_r",
    "catalog",
    "CATALOG_NAMES",
    "load_rmatrix",
    "parse_rmatrix_document",
    "rmatrix_document",
    "diagonal_r",
]


class RMatrixError(ValueError):
    pass


class YBEViolation(RMatrixError):
    def __init__(self, result: "CheckResult"):
        super().__init__(f"Yang-Baxter equation violated: {result.describe()}")
        self.result = result


class SingularMatrixError(RMatrixError):
    pass


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an identity check; on failure carries the first differing entry."""

    ok: bool
    row: Optional[tuple[int, ...]] = None
    col: Optional[tuple[int, ...]] = None
    lhs: Optional[Scalar] = None
    rhs: Optional[Scalar] = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "pass"
        return (
            f"fail at row {self.row}, column {self.col}: "
            f"lhs = {self.lhs.render()}, rhs = {self.rhs.render()}"
        )


def _dim_of(M: ExactMatrix) -> int:
    if M.rows != M.cols:
        raise ValueError(f"expected a square matrix, got {M.shape}")
    n = round(M.rows**0.5)
    if n * n != M.rows or n == 0:
        raise ValueError(f"matrix size {M.rows} is not a perfect square n^2")
    return n


def _compare(lhs: ExactMatrix, rhs: ExactMatrix, n: int, N: int) -> CheckResult:
    c = lhs.cols
    for idx, (a, b) in enumerate(zip(lhs.entries, rhs.entries)):
        if a != b:
            i, j = divmod(idx, c)
            return CheckResult(False, multi_index(i, n, N), multi_index(j, n, N), a, b)
    return CheckResult(True)


def check_ybe(R: ExactMatrix) -> CheckResult:
    """R12 R13 R23 == R23 R13 R12 on V⊗V⊗V."""
    n = _dim_of(R)
    I = identity(n)
    R12 = kron(R, I)
    R23 = kron(I, R)
    P23 = kron(I, flip(n))
    R13 = matmul(matmul(P23, R12), P23)
    lhs = matmul(matmul(R12, R13), R23)
    rhs = matmul(matmul(R23, R13), R12)
    return _compare(lhs, rhs, n, 3)


def check_braid(B: ExactMatrix) -> CheckResult:
    """B1 B2 B1 == B2 B1 B2 on V⊗V⊗V."""
    n = _dim_of(B)
    B1 = embed_at(B, 1, 3, n)
    B2 = embed_at(B, 2, 3, n)
    return _compare(matmul(matmul(B1, B2), B1), matmul(matmul(B2, B1), B2), n, 3)


def check_invertible(M: ExactMatrix) -> bool:
    return rank(M) == M.rows


@dataclass(frozen=True)
class RMatrix:
    """A validated invertible solution of the Yang-Baxter equation on V⊗V."""

    n: int
    matrix: ExactMatrix
    name: str = "custom"

    @classmethod
    def validated(cls, M: ExactMatrix, name: str = "custom") -> "RMatrix":
        n = _dim_of(M)
        if not check_invertible(M):
            raise SingularMatrixError("R-matrix is singular")
        res = check_ybe(M)
        if not res:
            raise YBEViolation(res)
        return cls(n, M.with_tensor(n, 2), name)

    def entry(self, i: int, j: int, k: int, l: int) -> Scalar:
        """R^{ij}_{kl}."""
        n = self.n
        return self.matrix[i * n + j, k * n + l]

    def inverse_matrix(self) -> ExactMatrix:
        return inverse(self.matrix)

    def braid(self) -> "BraidMatrix":
        return braid_from_r(self)


@dataclass(frozen=True)
class BraidMatrix:
    n: int
    matrix: ExactMatrix

    def entry(self, i: int, j: int, k: int, l: int) -> Scalar:
        """B^{ij}_{kl}."""
        n = self.n
        return self.matrix[i * n + j, k * n + l]


def braid_from_r(R: RMatrix) -> BraidMatrix:
    n = R.n
    B = matmul(flip(n), R.matrix).with_tensor(n, 2)
    res = check_braid(B)
    if not res:
        raise AssertionError(f"braid relation fails for validated R: {res.describe()}")
    return BraidMatrix(n, B)


# -- catalog ----------------------------------------------------------------

CATALOG_NAMES = {
    "identity": "R = 1 on V⊗V",
    "flip": "R = P, the flip (braid matrix is the identity)",
    "diagonal": "R^{ij}_{ij} = r_ij (defaults: r_ii = q, r_ij = 1 otherwise)",
    "sln_standard": "standard U_q(sl_n) vector R-matrix, diagonal entries q",
    "sln_quantum_plane": "q * sln_standard; braid eigenvalues q^2 and -1",
}


def diagonal_r(params: Sequence[Sequence[ScalarLike]]) -> ExactMatrix:
    n = len(params)
    d = {}
    for i in range(n):
        for j in range(n):
            c = i * n + j
            d[(c, c)] = Scalar.coerce(params[i][j])
    return ExactMatrix.from_dict(n * n, n * n, d, (n, 2))


def _sln_standard(n: int) -> ExactMatrix:
    d = {}
    for i in range(n):
        d[(i * n + i, i * n + i)] = Q
        for j in range(n):
            if i != j:
                d[(i * n + j, i * n + j)] = ONE
            if i < j:
                d[(i * n + j, j * n + i)] = Q - Q.inverse()
    return ExactMatrix.from_dict(n * n, n * n, d, (n, 2))


def catalog(name: str, n: int, params: Optional[Sequence[ScalarLike]] = None) -> RMatrix:
    """Built-in R-matrices.  ``params`` (row-major r_ij) applies to ``diagonal``."""
    if name not in CATALOG_NAMES:
        raise RMatrixError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG_NAMES)}")
    if n < 1:
        raise RMatrixError("dimension must be positive")
    if params is not None and name != "diagonal":
        raise RMatrixError(f"catalog entry {name!r} takes no parameters")
    if name == "identity":
        M = identity(n * n)
    elif name == "flip":
        M = flip(n)
    elif name == "diagonal":
        if params is None:
            grid = [[Q if i == j else ONE for j in range(n)] for i in range(n)]
        else:
            if len(params) != n * n:
                raise RMatrixError(f"diagonal needs {n * n} parameters, got {len(params)}")
            flat = [Scalar.coerce(p) for p in params]
            grid = [flat[i * n : (i + 1) * n] for i in range(n)]
        M = diagonal_r(grid)
    else:
        if n < 2:
            raise RMatrixError(f"{name} requires n >= 2")
        M = _sln_standard(n)
        if name == "sln_quantum_plane":
            M = M.scale(Q)
    return RMatrix.validated(M, name)


# -- document format --------------------------------------------------------


def parse_rmatrix_document(doc: Union[str, dict]) -> ExactMatrix:
    """Read ``{"dim": n, "entries": [{"i","j","k","l","value"}, ...]}`` without validation."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise RMatrixError(f"malformed R-matrix document: {exc}") from exc
    if not isinstance(doc, dict) or "dim" not in doc or "entries" not in doc:
        raise RMatrixError("R-matrix document needs fields 'dim' and 'entries'")
    n = doc["dim"]
    if not isinstance(n, int) or n < 1:
        raise RMatrixError("'dim' must be a positive integer")
    seen = {}
    for rec in doc["entries"]:
        try:
            i, j, k, l = (rec[key] for key in "ijkl")
            value = rec["value"]
        except (KeyError, TypeError) as exc:
            raise RMatrixError(f"bad entry record {rec!r}") from exc
        for x in (i, j, k, l):
            if not isinstance(x, int) or not 0 <= x < n:
                raise RMatrixError(f"index out of range in {rec!r}")
        key = (i, j, k, l)
        if key in seen:
            raise RMatrixError(f"duplicate entry {key}")
        seen[key] = parse_scalar(str(value))
    d = {(i * n + j, k * n + l): v for (i, j, k, l), v in seen.items() if v}
    return ExactMatrix.from_dict(n * n, n * n, d, (n, 2))


def load_rmatrix(source: Union[str, dict], name: str = "custom") -> RMatrix:
    return RMatrix.validated(parse_rmatrix_document(source), name)


def rmatrix_document(M: Union[RMatrix, ExactMatrix]) -> dict:
    if isinstance(M, RMatrix):
        M = M.matrix
    n = _dim_of(M)
    entries = []
    for r in range(M.rows):
        for c in range(M.cols):
            v = M[r, c]
            if v:
                i, j = divmod(r, n)
                k, l = divmod(c, n)
                entries.append({"i": i, "j": j, "k": k, "l": l, "value": v.render()})
    return {"dim": n, "entries": entries}
