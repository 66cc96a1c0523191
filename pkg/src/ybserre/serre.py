"""Generalized q-Serre relators as kernel vectors of braided factorials.

E-side relators Σ ω^{a} E_{a_1}⋯E_{a_N} satisfy [N!]_B ω = 0, F-side
relators Σ η_{a} F^{a_1}⋯F^{a_N} satisfy η [N!]_B = 0.  Kernels at degree N
that are already generated by lower-degree relators (inserted at every tensor
position) are filtered out by :func:`new_relators`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .braided import braided_factorial
from .freealg import FreePoly, Letter, pair, words_of
from .linalg import (
    ExactMatrix,
    KernelBasis,
    left_nullspace,
    multi_index,
    normalize_vector,
    right_nullspace,
    rref_rows,
)
from .rmatrix import RMatrix, braid_from_r
from .scalars import ZERO, Scalar

__all__ = [
    "Relator",
    "e_relators",
    "f_relators",
    "new_relators",
    "kernel_bases",
    "tu_null_gram",
    "tu_monomials",
    "relator_from_rendering",
]


@dataclass(frozen=True)
class Relator:
    side: str  # "E" or "F"
    degree: int
    n: int
    coefficients: tuple  # length n^degree, big-endian multi-index order

    @property
    def rendering(self) -> FreePoly:
        terms = {}
        for c, v in enumerate(self.coefficients):
            if v:
                idx = multi_index(c, self.n, self.degree)
                terms[tuple(Letter(self.side, i) for i in idx)] = v
        return FreePoly(terms)

    def nonzero(self) -> list[tuple[tuple[int, ...], Scalar]]:
        return [
            (multi_index(c, self.n, self.degree), v)
            for c, v in enumerate(self.coefficients)
            if v
        ]

    def render(self) -> str:
        return self.rendering.render()


def relator_from_rendering(text_or_poly, side: str, degree: int, n: int) -> Relator:
    """Inverse of :attr:`Relator.rendering`."""
    p = FreePoly.coerce(text_or_poly)
    coeffs = [ZERO] * (n**degree)
    for w, v in p.terms.items():
        if len(w) != degree or any(x.kind != side for x in w):
            raise ValueError(f"term {w} is not a degree-{degree} {side}-word")
        c = 0
        for x in w:
            c = c * n + x.i
        coeffs[c] = v
    return Relator(side, degree, n, tuple(coeffs))


def _check_degree(N: int) -> None:
    if not isinstance(N, int) or N < 2:
        raise ValueError(f"relator degree must be >= 2, got {N!r}")


def _factorial(R: RMatrix, N: int) -> ExactMatrix:
    return braided_factorial(braid_from_r(R), N).matrix


def e_relators(R: RMatrix, N: int) -> list[Relator]:
    """Basis of {ω : [N!]_B ω = 0} as E-words."""
    _check_degree(N)
    K = right_nullspace(_factorial(R, N))
    return [Relator("E", N, R.n, v) for v in K]


def f_relators(R: RMatrix, N: int) -> list[Relator]:
    """Basis of {η : η [N!]_B = 0} as F-words."""
    _check_degree(N)
    K = left_nullspace(_factorial(R, N))
    return [Relator("F", N, R.n, v) for v in K]


def kernel_bases(R: RMatrix, N_max: int, side: str = "E") -> dict[int, KernelBasis]:
    """Full kernels K_2..K_{N_max} of the braided factorials."""
    out = {}
    for N in range(2, N_max + 1):
        M = _factorial(R, N)
        out[N] = right_nullspace(M) if side == "E" else left_nullspace(M)
    return out


def _ideal_span(n: int, N: int, lower: Mapping[int, Sequence]) -> list[list[Scalar]]:
    """Spanning set of Σ_{d<N} Σ_p V^{⊗p} ⊗ K_d ⊗ V^{⊗(N-d-p)}."""
    dim = n**N
    vecs = []
    for d in range(2, N):
        for k in lower[d]:
            nz = [(c, v) for c, v in enumerate(k) if v]
            for p in range(N - d + 1):
                right = n ** (N - d - p)
                for a in range(n**p):
                    for z in range(right):
                        v = [ZERO] * dim
                        for c, val in nz:
                            v[(a * n**d + c) * right + z] = val
                        vecs.append(v)
    return vecs


def new_relators(
    R: RMatrix, N: int, lower: Mapping[int, Sequence], side: str = "E"
) -> list[Relator]:
    """Degree-N kernel vectors not generated by the lower-degree kernels ``lower[d]``."""
    _check_degree(N)
    missing = [d for d in range(2, N) if d not in lower]
    if missing:
        raise ValueError(f"lower kernel bases missing for degrees {missing}")
    n = R.n
    M = _factorial(R, N)
    kernel = right_nullspace(M) if side == "E" else left_nullspace(M)
    if not kernel.vectors:
        return []
    ideal = rref_rows(_ideal_span(n, N, lower))
    pivots = [next(c for c, x in enumerate(row) if x) for row in ideal]
    remainders = []
    for v in kernel:
        w = list(v)
        for row, pc in zip(ideal, pivots):
            f = w[pc]
            if f:
                w = [a - f * b if b else a for a, b in zip(w, row)]
        if any(w):
            remainders.append(w)
    out = []
    for w in rref_rows(remainders):
        w = normalize_vector(w)
        check = M.apply(w) if side == "E" else M.transpose().apply(w)
        if any(check):
            raise AssertionError("lower-degree ideal component is not inside the kernel")
        out.append(Relator(side, N, n, w))
    return out


def tu_monomials(kind: str, n: int, d: int) -> list[tuple]:
    return words_of(kind * d, n)


def tu_null_gram(R: RMatrix, d: int) -> ExactMatrix:
    """<u-word, t-word> over all degree-d words; rows u-words, columns t-words."""
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"degree must be positive, got {d!r}")
    rows = tu_monomials("u", R.n, d)
    cols = tu_monomials("t", R.n, d)
    ents = tuple(pair(x, a, R) for x in rows for a in cols)
    return ExactMatrix(len(rows), len(cols), ents)
