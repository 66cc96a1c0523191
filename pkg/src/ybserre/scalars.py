"""Exact arithmetic in Q(q), rational functions in one indeterminate.

A :class:`Scalar` is stored as a pair of integer-coefficient polynomials
(tuples, lowest degree first) in a unique reduced form:

* numerator and denominator are coprime in Q[q],
* the denominator has a positive leading coefficient,
* the integer coefficients of numerator and denominator share no common
  factor.

This is equivalent to the usual "monic denominator over Q" form, which is
what :attr:`Scalar.numerator` / :attr:`Scalar.denominator` expose.  Integer
storage keeps the hot paths (Laurent polynomials in q) free of Fraction
overhead.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Union

__all__ = [
    "Scalar",
    "ScalarParseError",
    "PoleError",
    "ZeroDenominatorError",
    "parse_scalar",
    "scalar_arith",
    "evaluate_at",
    "Q",
    "ZERO",
    "ONE",
]

Poly = tuple  # tuple[int, ...], lowest degree first, no trailing zeros


class ScalarParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class ZeroDenominatorError(ZeroDivisionError):
    """Division by the zero rational function inside a parsed expression."""

    def __init__(self, text: str, pos: int):
        super().__init__(f"division by zero at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class PoleError(ZeroDivisionError):
    """Raised when specializing q to a root of the denominator."""


# -- integer polynomial helpers ---------------------------------------------


def _trim(c: list) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def p_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] += x
    return _trim(c)


def p_neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        k = a[0]
        return tuple(k * x for x in b)
    if len(b) == 1:
        k = b[0]
        return tuple(k * x for x in a)
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return tuple(c)


def p_scale(a: Poly, k: int) -> Poly:
    if k == 0:
        return ()
    return tuple(k * x for x in a)


def p_content(a: Poly) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def p_valuation(a: Poly) -> int:
    for i, x in enumerate(a):
        if x:
            return i
    raise ValueError("valuation of zero polynomial")


def p_exact_div(a: Poly, b: Poly) -> Poly:
    """Quotient a/b in Z[q]; raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return ()
    if len(b) == 1:
        k = b[0]
        out = []
        for x in a:
            d, r = divmod(x, k)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(d)
        return tuple(out)
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    nq = len(a) - len(b) + 1
    if nq <= 0:
        raise ArithmeticError("inexact polynomial division")
    quo = [0] * nq
    for i in range(nq - 1, -1, -1):
        c, r = divmod(rem[i + db], lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quo[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    if any(rem[:db]):
        raise ArithmeticError("inexact polynomial division")
    return tuple(quo)


def _q_divmod(a: list, b: list) -> tuple[list, list]:
    # Fraction coefficients, lowest degree first
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    db = len(b) - 1
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + db] / lb
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    r = a[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def p_primitive(a: Poly) -> Poly:
    if not a:
        return ()
    c = p_content(a)
    if a[-1] < 0:
        c = -c
    return tuple(x // c for x in a)


def p_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd in Z[q] with positive leading coefficient."""
    if not a:
        return p_primitive(b)
    if not b:
        return p_primitive(a)
    if len(a) == 1 or len(b) == 1:
        return (1,)
    x = [Fraction(v) for v in a]
    y = [Fraction(v) for v in b]
    if len(x) < len(y):
        x, y = y, x
    while y:
        _, r = _q_divmod(x, y)
        x, y = y, r
    den = 1
    for v in x:
        den = den * v.denominator // gcd(den, v.denominator)
    return p_primitive(tuple(int(v * den) for v in x))


def p_lcm(a: Poly, b: Poly) -> Poly:
    g = p_gcd(a, b)
    return p_exact_div(p_mul(a, b), g)


def _is_monomial(a: Poly) -> bool:
    return all(x == 0 for x in a[:-1])


# -- Scalar -------------------------------------------------------------------

_ONE_P: Poly = (1,)


class Scalar:
    """Element of Q(q) in reduced form.  Immutable and hashable."""

    __slots__ = ("_num", "_den")

    def __init__(self, num: Poly = (), den: Poly = _ONE_P):
        self._num, self._den = _reduce(_trim(list(num)), _trim(list(den)))

    # construction helpers
    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "Scalar":
        s = object.__new__(cls)
        s._num = num
        s._den = den
        return s

    @classmethod
    def coerce(cls, x: "ScalarLike") -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return cls._raw((x,) if x else (), _ONE_P)
        if isinstance(x, Fraction):
            if x.numerator == 0:
                return ZERO
            return cls._raw((x.numerator,), (x.denominator,))
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    @classmethod
    def from_coefficients(cls, num, den=(1,)) -> "Scalar":
        """Build from rational coefficient sequences (lowest degree first)."""
        num = [Fraction(c) for c in num]
        den = [Fraction(c) for c in den]
        m = 1
        for c in num + den:
            m = m * c.denominator // gcd(m, c.denominator)
        return cls(tuple(int(c * m) for c in num), tuple(int(c * m) for c in den))

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> "Scalar":
        if coeff == 0:
            return ZERO
        if k >= 0:
            return cls._raw((0,) * k + (coeff,), _ONE_P)
        return cls((coeff,), (0,) * (-k) + (1,))

    # views
    @property
    def numerator(self) -> tuple[Fraction, ...]:
        """Numerator coefficients (lowest first) with the denominator made monic."""
        lc = self._den[-1]
        return tuple(Fraction(c, lc) for c in self._num)

    @property
    def denominator(self) -> tuple[Fraction, ...]:
        lc = self._den[-1]
        return tuple(Fraction(c, lc) for c in self._den)

    @property
    def int_parts(self) -> tuple[Poly, Poly]:
        return self._num, self._den

    def is_zero(self) -> bool:
        return not self._num

    def is_polynomial(self) -> bool:
        return len(self._den) == 1 and self._den[0] == 1

    def is_constant(self) -> bool:
        return len(self._num) <= 1 and len(self._den) == 1

    def is_monomial(self) -> bool:
        """True for nonzero c*q^k with k of either sign."""
        return bool(self._num) and _is_monomial(self._num) and _is_monomial(self._den)

    def degrees(self) -> tuple[int, int]:
        return max(len(self._num) - 1, -1), len(self._den) - 1

    def bitsize(self) -> int:
        return sum(abs(c).bit_length() for c in self._num) + sum(
            abs(c).bit_length() for c in self._den
        )

    def __bool__(self) -> bool:
        return bool(self._num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __repr__(self) -> str:
        return f"Scalar({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    # arithmetic
    def __neg__(self) -> "Scalar":
        return Scalar._raw(p_neg(self._num), self._den)

    def __pos__(self) -> "Scalar":
        return self

    def __add__(self, other):
        try:
            b = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        a = self
        if not a._num:
            return b
        if not b._num:
            return a
        if a._den == b._den:
            num = p_add(a._num, b._num)
            if a._den == _ONE_P:
                return Scalar._raw(num, _ONE_P)
            return Scalar(num, a._den)
        return Scalar(
            p_add(p_mul(a._num, b._den), p_mul(b._num, a._den)), p_mul(a._den, b._den)
        )

    __radd__ = __add__

    def __sub__(self, other):
        try:
            b = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            b = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        a = self
        if not a._num or not b._num:
            return ZERO
        if a._den == _ONE_P and b._den == _ONE_P:
            return Scalar._raw(p_mul(a._num, b._num), _ONE_P)
        return Scalar(p_mul(a._num, b._num), p_mul(a._den, b._den))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self._num:
            raise ZeroDivisionError("inverse of zero scalar")
        num, den = self._den, self._num
        if den[-1] < 0:
            num, den = p_neg(num), p_neg(den)
        return Scalar._raw(num, den)

    def __truediv__(self, other):
        try:
            b = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # specialization and rendering
    def evaluate(self, q0) -> Fraction:
        return evaluate_at(self, q0)

    def render(self) -> str:
        num, den = self.numerator, self.denominator
        if len(den) == 1:
            return _render_poly(num)
        n = _render_poly(num)
        d = _render_poly(den)
        if not _is_atomic(num):
            n = f"({n})"
        if not _is_atomic(den) or len(den) > 1 and den[-1] != 1:
            d = f"({d})"
        return f"{n}/{d}"


ScalarLike = Union[Scalar, int, Fraction, str]


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), _ONE_P
    if len(den) > 1:
        if _is_monomial(den):
            k = min(p_valuation(num), len(den) - 1)
            if k:
                num = num[k:]
                den = den[k:]
        else:
            g = p_gcd(num, den)
            if len(g) > 1:
                num = p_exact_div(num, g)
                den = p_exact_div(den, g)
    c = gcd(p_content(num), p_content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


def _fmt_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _render_poly(coeffs: tuple) -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if k == 0:
            body = _fmt_coeff(a)
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def _is_atomic(coeffs: tuple) -> bool:
    nz = [c for c in coeffs if c != 0]
    return len(nz) == 1 and nz[0] == 1


ZERO = Scalar._raw((), _ONE_P)
ONE = Scalar._raw((1,), _ONE_P)
Q = Scalar._raw((0, 1), _ONE_P)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScalarParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            out.append(("q", "q", start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _ScalarParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ScalarParseError(msg, self.text, tok[2])

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}", t)

    def parse(self) -> Scalar:
        v = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected trailing input")
        return v

    def expr(self) -> Scalar:
        v = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self) -> Scalar:
        v = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            w = self.factor()
            if tok[1] == "*":
                v = v * w
            else:
                if w.is_zero():
                    raise ZeroDenominatorError(self.text, tok[2])
                v = v / w
        return v

    def factor(self) -> Scalar:
        neg = False
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            neg = True
        v = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            tok = self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "int":
                self.error("expected integer exponent", t)
            k = sign * int(t[1])
            if k < 0 and v.is_zero():
                raise ZeroDenominatorError(self.text, tok[2])
            v = v**k
        return -v if neg else v

    def atom(self) -> Scalar:
        t = self.take()
        if t[0] == "int":
            return Scalar.coerce(int(t[1]))
        if t[0] == "q":
            return Q
        if t[0] == "op" and t[1] == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        self.error("expected integer, 'q' or '('", t)


def parse_scalar(text: str) -> Scalar:
    """Parse an expression in integers, ``q``, ``+ - * /``, unary minus,
    ``^`` with an integer exponent, and parentheses."""
    return _ScalarParser(text).parse()


def scalar_arith(a: ScalarLike, b: ScalarLike, op: str) -> Scalar:
    a = Scalar.coerce(a)
    b = Scalar.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _horner(coeffs: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def evaluate_at(a: ScalarLike, q0) -> Fraction:
    """Exact value of ``a`` at ``q = q0``; raises :class:`PoleError` at poles."""
    a = Scalar.coerce(a)
    x = Fraction(q0)
    num, den = a.int_parts
    d = _horner(den, x)
    if d == 0:
        raise PoleError(f"{a.render()} has a pole at q = {x}")
    return _horner(num, x) / d
