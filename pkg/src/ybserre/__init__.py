"""Exact braided factorials and generalized q-Serre relators for Yang-Baxter bialgebras."""

__version__ = "0.1.0"

from .scalars import Scalar, parse_scalar, evaluate_at, Q
from .linalg import ExactMatrix, right_nullspace, left_nullspace
from .rmatrix import RMatrix, BraidMatrix, catalog, load_rmatrix, check_ybe, check_braid, braid_from_r
from .braided import braided_integer, braided_factorial, pairing_gram_oracle
from .freealg import pair, pair_inverse, coproduct, counit, relator_catalog, parse_freepoly
from .serre import Relator, e_relators, f_relators, new_relators, tu_null_gram
