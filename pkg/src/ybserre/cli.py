"""Command-line front end.

    ybserre check     --catalog sln_standard --n 3
    ybserre braid     --input r.json
    ybserre factorial --catalog sln_standard --n 2 --N 3 --verify
    ybserre serre     --catalog sln_quantum_plane --n 2 --N 3 --format doc
    ybserre pair      --catalog sln_standard --n 2 "F[0]*F[1]" "E[0]*E[1]"
    ybserre catalog

Exit codes: 0 success, 1 a check or verification failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import __version__
from .braided import braided_factorial, pairing_gram_oracle
from .freealg import (
    MINUS,
    PLUS,
    FreePoly,
    convolution_sums,
    pair,
    pair_inverse,
    parse_freepoly,
)
from .linalg import ExactMatrix, flip, left_nullspace, matmul, rank, right_nullspace
from .rmatrix import (
    CATALOG_NAMES,
    RMatrix,
    RMatrixError,
    catalog,
    check_braid,
    check_invertible,
    check_ybe,
    parse_rmatrix_document,
    rmatrix_document,
)
from .scalars import PoleError, Scalar, ScalarParseError, evaluate_at
from .serre import (
    Relator,
    e_relators,
    f_relators,
    kernel_bases,
    new_relators,
    tu_null_gram,
)

TOOL = "ybserre"
WARN_DIM = 1024


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    catalog: Optional[str] = None
    input: Optional[str] = None
    n: Optional[int] = None
    params: Optional[list] = None
    N_max: int = 3
    format: str = "text"
    at_q: Optional[Fraction] = None
    verify: bool = False
    output: Optional[str] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        at_q = None
        if getattr(args, "at_q", None) is not None:
            try:
                at_q = Fraction(args.at_q)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"--at-q expects a rational number, got {args.at_q!r}") from exc
        params = None
        if getattr(args, "params", None):
            params = [p.strip() for p in args.params.split(",")]
        return cls(
            command=args.command,
            catalog=getattr(args, "catalog", None),
            input=getattr(args, "input", None),
            n=getattr(args, "n", None),
            params=params,
            N_max=getattr(args, "N", None) or 3,
            format=getattr(args, "format", "text"),
            at_q=at_q,
            verify=getattr(args, "verify", False),
            output=getattr(args, "output", None),
        )


# -- R-matrix source --------------------------------------------------------


def _raw_matrix(cfg: RunConfig) -> tuple[ExactMatrix, str]:
    if (cfg.catalog is None) == (cfg.input is None):
        raise InputError("give exactly one of --catalog NAME or --input FILE")
    if cfg.catalog is not None:
        if cfg.n is None:
            raise InputError("--catalog needs --n")
        try:
            params = [Scalar.coerce(p) for p in cfg.params] if cfg.params else None
            return catalog(cfg.catalog, cfg.n, params).matrix, cfg.catalog
        except (RMatrixError, ScalarParseError, ZeroDivisionError) as exc:
            raise InputError(str(exc)) from exc
    try:
        with open(cfg.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {cfg.input}: {exc}") from exc
    try:
        return parse_rmatrix_document(text), cfg.input
    except (RMatrixError, ScalarParseError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc


def _load(cfg: RunConfig) -> RMatrix:
    M, name = _raw_matrix(cfg)
    try:
        return RMatrix.validated(M, name)
    except RMatrixError as exc:
        raise InputError(f"invalid R-matrix: {exc}") from exc


# -- value formatting -------------------------------------------------------


def _fmt(x: Scalar, cfg: RunConfig) -> str:
    if cfg.at_q is None:
        return x.render()
    try:
        v = evaluate_at(x, cfg.at_q)
    except PoleError:
        return "pole"
    return str(v)


def _specialize_poly(p: FreePoly, cfg: RunConfig) -> str:
    if cfg.at_q is None:
        return p.render()
    terms = {}
    for w, c in p.terms.items():
        try:
            terms[w] = Scalar.coerce(evaluate_at(c, cfg.at_q))
        except PoleError:
            return "pole"
    return FreePoly(terms).render()


def _matrix_doc(M: ExactMatrix, cfg: RunConfig) -> dict:
    return {"rows": M.rows, "cols": M.cols, "entries": M.map(lambda x: _fmt(x, cfg))}


def _matrix_text(M: ExactMatrix, cfg: RunConfig) -> str:
    cells = M.map(lambda x: _fmt(x, cfg))
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def _check_doc(res) -> dict:
    if res.ok:
        return {"ok": True}
    return {
        "ok": False,
        "witness": {
            "row": list(res.row),
            "col": list(res.col),
            "lhs": res.lhs.render(),
            "rhs": res.rhs.render(),
        },
    }


def _relator_doc(r: Relator, cfg: RunConfig) -> dict:
    return {
        "side": r.side,
        "degree": r.degree,
        "coefficients": [{"indices": list(idx), "value": _fmt(v, cfg)} for idx, v in r.nonzero()],
        "rendering": _specialize_poly(r.rendering, cfg),
    }


def _header(cfg: RunConfig, R_doc: Optional[dict], source: Optional[str]) -> dict:
    doc = {"tool": TOOL, "version": __version__, "command": cfg.command}
    if source is not None:
        doc["source"] = source
    if cfg.at_q is not None:
        doc["at_q"] = str(cfg.at_q)
    if R_doc is not None:
        doc["rmatrix"] = R_doc
    return doc


# -- commands ---------------------------------------------------------------


def cmd_catalog(cfg: RunConfig) -> tuple[int, dict, str]:
    doc = _header(cfg, None, None)
    doc["catalog"] = [{"name": k, "description": v} for k, v in CATALOG_NAMES.items()]
    text = "\n".join(f"{k:18s} {v}" for k, v in CATALOG_NAMES.items())
    return 0, doc, text


def cmd_check(cfg: RunConfig) -> tuple[int, dict, str]:
    M, source = _raw_matrix(cfg)
    try:
        ybe = check_ybe(M)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    inv = check_invertible(M)
    n = round(M.rows**0.5)
    braid = check_braid(matmul(flip(n), M))
    ok = ybe.ok and inv and braid.ok
    doc = _header(cfg, rmatrix_document(M), source)
    doc["checks"] = {"ybe": _check_doc(ybe), "invertible": inv, "braid": _check_doc(braid)}
    doc["ok"] = ok
    lines = [
        f"R-matrix: {source} (n = {n})",
        f"Yang-Baxter equation: {ybe.describe()}",
        f"invertible: {'yes' if inv else 'no'}",
        f"braid relation: {braid.describe()}",
        "all checks passed" if ok else "CHECK FAILED",
    ]
    return (0 if ok else 1), doc, "\n".join(lines)


def cmd_braid(cfg: RunConfig) -> tuple[int, dict, str]:
    R = _load(cfg)
    B = R.braid()
    doc = _header(cfg, rmatrix_document(R), R.name)
    doc["braid"] = _matrix_doc(B.matrix, cfg)
    return 0, doc, f"braid matrix B (n = {R.n}):\n" + _matrix_text(B.matrix, cfg)


def cmd_factorial(cfg: RunConfig) -> tuple[int, dict, str]:
    if cfg.N_max < 1:
        raise InputError("--N must be >= 1")
    R = _load(cfg)
    B = R.braid()
    doc = _header(cfg, rmatrix_document(R), R.name)
    out = []
    lines = []
    status = 0
    for N in range(1, cfg.N_max + 1):
        if R.n**N > WARN_DIM:
            print(f"warning: dimension {R.n ** N} at N = {N} exceeds {WARN_DIM}", file=sys.stderr)
        M = braided_factorial(B, N).matrix
        rec = {"N": N, "matrix": _matrix_doc(M, cfg)}
        lines.append(f"[{N}!]_B:")
        lines.append(_matrix_text(M, cfg))
        if cfg.verify:
            match = pairing_gram_oracle(B, N) == M
            rec["oracle_match"] = match
            lines.append("oracle match" if match else "ORACLE MISMATCH")
            if not match:
                status = 1
        out.append(rec)
    doc["factorials"] = out
    return status, doc, "\n".join(lines)


def cmd_serre(cfg: RunConfig, tu_max_dim: int = 64) -> tuple[int, dict, str]:
    if cfg.N_max < 2:
        raise InputError("--N must be >= 2 for serre")
    R = _load(cfg)
    n = R.n
    for N in range(2, cfg.N_max + 1):
        if n**N > WARN_DIM:
            print(f"warning: dimension {n ** N} at N = {N} exceeds {WARN_DIM}", file=sys.stderr)
    K_E = kernel_bases(R, cfg.N_max, "E")
    K_F = kernel_bases(R, cfg.N_max, "F")
    degrees = []
    lines = [f"R-matrix: {R.name} (n = {n})"]
    for N in range(2, cfg.N_max + 1):
        M = braided_factorial(R.braid(), N).matrix
        lower_E = {d: K_E[d] for d in range(2, N)}
        lower_F = {d: K_F[d] for d in range(2, N)}
        er = e_relators(R, N)
        fr = f_relators(R, N)
        ne = new_relators(R, N, lower_E, "E")
        nf = new_relators(R, N, lower_F, "F")
        degrees.append(
            {
                "N": N,
                "factorial_rank": rank(M),
                "e_relators": [_relator_doc(r, cfg) for r in er],
                "f_relators": [_relator_doc(r, cfg) for r in fr],
                "new_e_relators": [_relator_doc(r, cfg) for r in ne],
                "new_f_relators": [_relator_doc(r, cfg) for r in nf],
            }
        )
        lines.append(
            f"N = {N}: kernel dim {len(er)} (E) / {len(fr)} (F); "
            f"new relators {len(ne)} (E) / {len(nf)} (F)"
        )
        for r in ne + nf:
            lines.append(f"  {_specialize_poly(r.rendering, cfg)} = 0")
    tu = []
    for d in range(1, cfg.N_max + 1):
        dim = n ** (2 * d)
        if dim > tu_max_dim:
            tu.append({"d": d, "dim": dim, "skipped": True})
            lines.append(f"T-U Gram d = {d}: skipped (dimension {dim} > {tu_max_dim})")
            continue
        G = tu_null_gram(R, d)
        u_null = len(left_nullspace(G))
        t_null = len(right_nullspace(G))
        tu.append({"d": d, "dim": dim, "rank": dim - t_null, "u_null_dim": u_null, "t_null_dim": t_null})
        lines.append(f"T-U Gram d = {d}: rank {dim - t_null}, null dims u {u_null} / t {t_null}")
    doc = _header(cfg, rmatrix_document(R), R.name)
    doc["degrees"] = degrees
    doc["tu_null"] = tu
    return 0, doc, "\n".join(lines)


def cmd_pair(cfg: RunConfig, x_text: str, a_text: str, inverse: bool, convolution: bool):
    R = _load(cfg)
    try:
        x = parse_freepoly(x_text)
        a = parse_freepoly(a_text)
    except (ScalarParseError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc
    if x.side not in (PLUS, None):
        raise InputError(f"first argument must use u[i,j] and F[i] only: {x_text!r}")
    if a.side not in (MINUS, None):
        raise InputError(f"second argument must use t[i,j] and E[i] only: {a_text!r}")
    for p in (x, a):
        for w in p.terms:
            if any(max(l.i, l.j) >= R.n for l in w):
                raise InputError(f"index out of range for n = {R.n} in {p.render()}")
    doc = _header(cfg, rmatrix_document(R), R.name)
    doc["x"] = x.render()
    doc["a"] = a.render()
    v = pair(x, a, R)
    doc["pair"] = _fmt(v, cfg)
    lines = [f"<{x.render()}, {a.render()}> = {_fmt(v, cfg)}"]
    status = 0
    if inverse:
        vi = pair_inverse(x, a, R)
        doc["pair_inverse"] = _fmt(vi, cfg)
        lines.append(f"<{x.render()}, {a.render()}>^- = {_fmt(vi, cfg)}")
    if convolution:
        ok = True
        for wx, cx in x.terms.items():
            for wa, ca in a.terms.items():
                s1, s2, e = convolution_sums(wx, wa, R)
                ok = ok and s1 == e and s2 == e
        doc["convolution"] = ok
        lines.append("convolution identity: " + ("pass" if ok else "FAIL"))
        status = 0 if ok else 1
    return status, doc, "\n".join(lines)


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=TOOL, description="q-Serre relators from Yang-Baxter R-matrices")
    p.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_n=True):
        src = sp.add_mutually_exclusive_group()
        src.add_argument("--catalog", metavar="NAME", help="built-in R-matrix (see 'catalog')")
        src.add_argument("--input", metavar="FILE", help="R-matrix document (JSON)")
        sp.add_argument("--n", type=int, help="dimension of V for --catalog")
        sp.add_argument("--params", help="comma-separated r_ij (row-major) for --catalog diagonal")
        sp.add_argument("--at-q", dest="at_q", metavar="RATIONAL", help="display values at q = RATIONAL")
        sp.add_argument("--format", choices=("text", "doc"), default="text")
        sp.add_argument("--output", metavar="FILE", help="write output here instead of stdout")

    sp = sub.add_parser("catalog", help="list built-in R-matrices")
    sp.add_argument("--format", choices=("text", "doc"), default="text")
    sp.add_argument("--output", metavar="FILE")
    common(sub.add_parser("check", help="validate YBE, invertibility and braid relation"))
    common(sub.add_parser("braid", help="print the braid matrix"))
    sp = sub.add_parser("factorial", help="braided factorials [N!]_B for N = 1..N")
    common(sp)
    sp.add_argument("--N", type=int, default=3)
    sp.add_argument("--verify", action="store_true", help="compare with the pairing-recursion oracle")
    sp = sub.add_parser("serre", help="generalized q-Serre relators for N = 2..N")
    common(sp)
    sp.add_argument("--N", type=int, default=4)
    sp.add_argument("--tu-max-dim", type=int, default=64, help="largest T-U Gram matrix to analyse")
    sp = sub.add_parser("pair", help="evaluate the skew pairing <x, a>")
    common(sp)
    sp.add_argument("x", help="plus-side element, e.g. 'F[0]*F[1]'")
    sp.add_argument("a", help="minus-side element, e.g. 'E[0]*E[1]'")
    sp.add_argument("--inverse", action="store_true", help="also evaluate the convolution inverse")
    sp.add_argument("--convolution", action="store_true", help="check the convolution identity")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        if args.command == "catalog":
            status, doc, text = cmd_catalog(cfg)
        elif args.command == "check":
            status, doc, text = cmd_check(cfg)
        elif args.command == "braid":
            status, doc, text = cmd_braid(cfg)
        elif args.command == "factorial":
            status, doc, text = cmd_factorial(cfg)
        elif args.command == "serre":
            status, doc, text = cmd_serre(cfg, args.tu_max_dim)
        else:
            status, doc, text = cmd_pair(cfg, args.x, args.a, args.inverse, args.convolution)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    body = json.dumps(doc, indent=2, ensure_ascii=False) if cfg.format == "doc" else text
    body += "\n"
    if cfg.output:
        try:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(body)
        except OSError as exc:
            print(f"error: cannot write {cfg.output}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(body)
    return status


if __name__ == "__main__":
    sys.exit(main())
