"""Free bialgebra words in {t^i_j, E_i} (minus side) and {u^i_j, F^i} (plus side).

Coproducts, counits, the skew pairing determined by

    <u^i_j, t^k_l> = R^{ik}_{jl},  <1, t^i_j> = <u^i_j, 1> = δ^i_j,  <F^i, E_j> = δ^i_j,

and its convolution inverse (R replaced by R^{-1}, <F, E> by -δ).

Words are tuples of :class:`Letter`.  Text form: ``t[i,j]``, ``u[i,j]``,
``E[i]``, ``F[i]`` joined by ``*``, with Scalar coefficients.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .linalg import inverse
from .rmatrix import RMatrix
from .scalars import ONE, ZERO, Scalar, ScalarLike, _ScalarParser, ScalarParseError, ZeroDenominatorError

__all__ = [
    "Letter",
    "t",
    "u",
    "E",
    "F",
    "PLUS",
    "MINUS",
    "MIXED",
    "FreeMonomial",
    "FreePoly",
    "TensorPoly",
    "Relation",
    "word_side",
    "coproduct",
    "counit",
    "pair",
    "pair_inverse",
    "convolution_sums",
    "relator_catalog",
    "words_of",
    "parse_freepoly",
]

PLUS = "plus"
MINUS = "minus"
MIXED = "mixed"

_SIDE_OF_KIND = {"t": MINUS, "E": MINUS, "u": PLUS, "F": PLUS}


class Letter(NamedTuple):
    kind: str  # 't', 'u', 'E' or 'F'
    i: int
    j: int = -1  # lower index of t/u; unused for E/F

    def render(self) -> str:
        if self.kind in "tu":
            return f"{self.kind}[{self.i},{self.j}]"
        return f"{self.kind}[{self.i}]"

    def __str__(self) -> str:
        return self.render()


def t(i: int, j: int) -> Letter:
    return Letter("t", i, j)


def u(i: int, j: int) -> Letter:
    return Letter("u", i, j)


def E(i: int) -> Letter:
    return Letter("E", i)


def F(i: int) -> Letter:
    return Letter("F", i)


Word = tuple  # tuple[Letter, ...]


def word_side(word: Word) -> Optional[str]:
    """PLUS, MINUS, MIXED, or None for the empty word."""
    sides = {_SIDE_OF_KIND[x.kind] for x in word}
    if not sides:
        return None
    if len(sides) == 1:
        return sides.pop()
    return MIXED


def word_key(word: Word) -> tuple:
    return (len(word), word)


def render_word(word: Word) -> str:
    return "*".join(x.render() for x in word) if word else "1"


def _join_sides(a: Optional[str], b: Optional[str]) -> Optional[str]:
    if a is None:
        return b
    if b is None or a == b:
        return a
    return MIXED


@dataclass(frozen=True, order=False)
class FreeMonomial:
    side: Optional[str]
    word: Word

    @classmethod
    def of(cls, *letters: Letter) -> "FreeMonomial":
        return cls(word_side(letters), tuple(letters))

    def __post_init__(self):
        ws = word_side(self.word)
        if ws is not None and self.side is not None and ws != self.side:
            raise ValueError(f"letters of {render_word(self.word)} are not all on side {self.side}")

    def __len__(self) -> int:
        return len(self.word)

    def render(self) -> str:
        return render_word(self.word)


class FreePoly:
    """Finite linear combination of words; no zero coefficients stored."""

    __slots__ = ("side", "terms")

    def __init__(self, terms: Optional[dict] = None, side: Optional[str] = None):
        clean = {}
        s = side
        for w, c in (terms or {}).items():
            c = Scalar.coerce(c)
            if c:
                clean[tuple(w)] = c
                s = _join_sides(s, word_side(tuple(w)))
        self.terms = clean
        self.side = s

    @classmethod
    def monomial(cls, word: Iterable[Letter], coeff: ScalarLike = 1) -> "FreePoly":
        return cls({tuple(word): coeff})

    @classmethod
    def coerce(cls, x) -> "FreePoly":
        if isinstance(x, FreePoly):
            return x
        if isinstance(x, FreeMonomial):
            return cls({x.word: ONE}, x.side)
        if isinstance(x, Letter):
            return cls({(x,): ONE})
        if isinstance(x, tuple):
            return cls({x: ONE})
        if isinstance(x, str):
            return parse_freepoly(x)
        return cls({(): Scalar.coerce(x)})

    def items(self) -> list[tuple[Word, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: word_key(kv[0]))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Word) -> Scalar:
        return self.terms.get(tuple(word), ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "FreePoly":
        other = FreePoly.coerce(other)
        d = dict(self.terms)
        for w, c in other.terms.items():
            d[w] = d.get(w, ZERO) + c
        return FreePoly(d, _join_sides(self.side, other.side))

    __radd__ = __add__

    def __neg__(self) -> "FreePoly":
        return FreePoly({w: -c for w, c in self.terms.items()}, self.side)

    def __sub__(self, other) -> "FreePoly":
        return self + (-FreePoly.coerce(other))

    def __rsub__(self, other) -> "FreePoly":
        return FreePoly.coerce(other) - self

    def __mul__(self, other) -> "FreePoly":
        if isinstance(other, (Scalar, int)):
            c = Scalar.coerce(other)
            return FreePoly({w: c * v for w, v in self.terms.items()}, self.side)
        other = FreePoly.coerce(other)
        d = {}
        for (w1, c1), (w2, c2) in itertools.product(self.terms.items(), other.terms.items()):
            w = w1 + w2
            d[w] = d.get(w, ZERO) + c1 * c2
        return FreePoly(d, _join_sides(self.side, other.side))

    def __rmul__(self, other) -> "FreePoly":
        if isinstance(other, (Scalar, int)):
            return self * other
        return FreePoly.coerce(other) * self

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for w, c in self.items():
            neg = c.int_parts[0][-1] < 0
            if neg:
                c = -c
            cs = c.render()
            if " " in cs:
                cs = f"({cs})"
            if not w:
                body = cs
            elif c == ONE:
                body = render_word(w)
            else:
                body = f"{cs}*{render_word(w)}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"FreePoly({self.render()!r})"

    __str__ = render


@dataclass
class TensorPoly:
    side: Optional[str]
    terms: dict  # (Word, Word) -> Scalar

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (word_key(kv[0][0]), word_key(kv[0][1])))

    def render(self) -> str:
        parts = []
        for (w1, w2), c in self.items():
            s = f"{render_word(w1)} ⊗ {render_word(w2)}"
            parts.append(s if c == ONE else f"({c.render()})*{s}")
        return " + ".join(parts) if parts else "0"


# -- parsing --------------------------------------------------------------

_POLY_TOKEN = re.compile(
    r"\s*(?:(?P<letter>[tuEF])\s*\[\s*(?P<i>\d+)\s*(?:,\s*(?P<j>\d+)\s*)?\]"
    r"|(?P<int>\d+)|(?P<q>q)|(?P<op>[-+*/^()]))"
)


def _tokenize_poly(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _POLY_TOKEN.match(text, pos)
        if not m:
            raise ScalarParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        if m.group("letter"):
            kind, j = m.group("letter"), m.group("j")
            start = m.start("letter")
            if (kind in "tu") != (j is not None):
                raise ScalarParseError(f"wrong number of indices for {kind}", text, start)
            letter = Letter(kind, int(m.group("i")), int(j) if j is not None else -1)
            out.append(("letter", letter, start))
        elif m.group("int") is not None:
            out.append(("int", m.group("int"), start))
        elif m.group("q"):
            out.append(("q", "q", start))
        else:
            out.append(("op", m.group("op"), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _PolyParser(_ScalarParser):
    """Sum of terms; a term is a '*'-product of letters and scalar factors."""

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize_poly(text)
        self.i = 0

    def poly(self) -> FreePoly:
        total = self.pterm()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            w = self.pterm()
            total = total + w if op == "+" else total - w
        if self.peek()[0] != "end":
            self.error("unexpected trailing input")
        return total

    def pterm(self) -> FreePoly:
        coeff = ONE
        word = []
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            coeff = -ONE
        while True:
            tok = self.peek()
            if tok[0] == "letter":
                self.take()
                word.append(tok[1])
            else:
                coeff = coeff * self.factor()
            nxt = self.peek()
            if nxt[0] != "op" or nxt[1] not in "*/":
                break
            self.take()
            if nxt[1] == "/":
                d = self.factor()
                if d.is_zero():
                    raise ZeroDenominatorError(self.text, nxt[2])
                coeff = coeff / d
                nxt = self.peek()
                if nxt[0] != "op" or nxt[1] != "*":
                    break
                self.take()
        return FreePoly({tuple(word): coeff})


def parse_freepoly(text: str) -> FreePoly:
    """Parse e.g. ``"q*E[0]*E[1] - E[1]*E[0]"`` or ``"(q^2-1)*t[0,1]"``."""
    text = text.strip()
    if text in ("", "0"):
        return FreePoly()
    return _PolyParser(text).poly()


# -- coproduct and counit -------------------------------------------------


@functools.lru_cache(maxsize=None)
def _letter_coproduct(x: Letter, n: int) -> tuple:
    if x.kind in "tu":
        return tuple(((Letter(x.kind, x.i, k),), (Letter(x.kind, k, x.j),)) for k in range(n))
    if x.kind == "E":
        return tuple(((E(k),), (t(k, x.i),)) for k in range(n)) + (((), (x,)),)
    # F
    return (((x,), ()),) + tuple(((u(x.i, k),), (F(k),)) for k in range(n))


@functools.lru_cache(maxsize=100_000)
def _word_coproduct(word: Word, n: int) -> tuple:
    """Δ(word) as a tuple of ((w1, w2), multiplicity)."""
    if not word:
        return ((((), ()), 1),)
    if len(word) == 1:
        return tuple((pair, 1) for pair in _letter_coproduct(word[0], n))
    acc: dict = {}
    for (l1, l2) in _letter_coproduct(word[0], n):
        for (r1, r2), c in _word_coproduct(word[1:], n):
            key = (l1 + r1, l2 + r2)
            acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def coproduct(m, n: int) -> TensorPoly:
    """Δ extended multiplicatively, with the implied matrix index contractions."""
    p = FreePoly.coerce(m)
    terms: dict = {}
    for w, c in p.terms.items():
        for key, k in _word_coproduct(w, n):
            terms[key] = terms.get(key, ZERO) + c * k
    return TensorPoly(p.side, {k: v for k, v in terms.items() if v})


def _counit_word(word: Word) -> int:
    for x in word:
        if x.kind in "EF" or x.i != x.j:
            return 0
    return 1


def counit(m) -> Scalar:
    p = FreePoly.coerce(m)
    total = ZERO
    for w, c in p.terms.items():
        if _counit_word(w):
            total = total + c
    return total


# -- pairings -------------------------------------------------------------


def _e_degree(word: Word) -> int:
    return sum(1 for x in word if x.kind in "EF")


class _Pairing:
    """Memoized pairing between plus-words and minus-words.

    Direct pairing:   <x1·x', a> = Σ <x1, a_(1)> <x', a_(2)>,
                      <g, b·a'>  = Σ <g_(1), a'> <g_(2), b>.
    Inverse pairing:  <x1·x', a>⁻ = Σ <x1, a_(2)>⁻ <x', a_(1)>⁻,
                      <g, b·a'>⁻  = Σ <g_(1), b>⁻ <g_(2), a'>⁻.
    """

    def __init__(self, R: RMatrix, inverse_form: bool):
        self.n = R.n
        self.inverse_form = inverse_form
        M = inverse(R.matrix) if inverse_form else R.matrix
        n = R.n
        self.ut = {
            (i, j, k, l): M[i * n + k, j * n + l]
            for i, j, k, l in itertools.product(range(n), repeat=4)
        }
        self.fe = -ONE if inverse_form else ONE
        self.memo: dict = {}

    def generator(self, x: Letter, a: Letter) -> Scalar:
        if x.kind == "u" and a.kind == "t":
            return self.ut[(x.i, x.j, a.i, a.j)]
        if x.kind == "F" and a.kind == "E":
            return self.fe if x.i == a.i else ZERO
        return ZERO

    def words(self, x: Word, a: Word) -> Scalar:
        key = (x, a)
        v = self.memo.get(key)
        if v is None:
            v = self._compute(x, a)
            self.memo[key] = v
        return v

    def _compute(self, x: Word, a: Word) -> Scalar:
        if not x:
            return Scalar.coerce(_counit_word(a))
        if not a:
            return Scalar.coerce(_counit_word(x))
        if _e_degree(x) != _e_degree(a):
            return ZERO
        n = self.n
        total = ZERO
        if len(x) == 1:
            g = x[0]
            if len(a) == 1:
                return self.generator(g, a[0])
            b, rest = a[:1], a[1:]
            for g1, g2 in _letter_coproduct(g, n):
                if self.inverse_form:
                    v = self.words(g1, b)
                    if v:
                        v = v * self.words(g2, rest)
                else:
                    v = self.words(g2, b)
                    if v:
                        v = v * self.words(g1, rest)
                if v:
                    total = total + v
            return total
        x1, xr = x[:1], x[1:]
        for (a1, a2), c in _word_coproduct(a, n):
            if self.inverse_form:
                a1, a2 = a2, a1
            v = self.words(x1, a1)
            if v:
                v = v * self.words(xr, a2)
                if v:
                    total = total + v * c
        return total


@functools.lru_cache(maxsize=64)
def _pairing_for(R: RMatrix, inverse_form: bool) -> _Pairing:
    return _Pairing(R, inverse_form)


def _bilinear(x, a, P: _Pairing) -> Scalar:
    xp = FreePoly.coerce(x)
    ap = FreePoly.coerce(a)
    if xp.side not in (PLUS, None):
        raise ValueError(f"left argument must be a plus-side element, got {xp.render()}")
    if ap.side not in (MINUS, None):
        raise ValueError(f"right argument must be a minus-side element, got {ap.render()}")
    total = ZERO
    for wx, cx in xp.terms.items():
        for wa, ca in ap.terms.items():
            v = P.words(wx, wa)
            if v:
                total = total + cx * ca * v
    return total


def pair(x, a, R: RMatrix) -> Scalar:
    """Skew pairing <x, a> of a plus element x with a minus element a."""
    return _bilinear(x, a, _pairing_for(R, False))


def pair_inverse(x, a, R: RMatrix) -> Scalar:
    """Convolution-inverse pairing <x, a>⁻."""
    return _bilinear(x, a, _pairing_for(R, True))


def convolution_sums(x, a, R: RMatrix) -> tuple[Scalar, Scalar, Scalar]:
    """(Σ<x1,a1>⁻<x2,a2>, Σ<x1,a1><x2,a2>⁻, ε(x)ε(a)); the first two must equal the third."""
    n = R.n
    dx = coproduct(x, n).terms
    da = coproduct(a, n).terms
    P = _pairing_for(R, False)
    Pi = _pairing_for(R, True)
    s1 = s2 = ZERO
    for (x1, x2), cx in dx.items():
        for (a1, a2), ca in da.items():
            c = cx * ca
            s1 = s1 + c * Pi.words(x1, a1) * P.words(x2, a2)
            s2 = s2 + c * P.words(x1, a1) * Pi.words(x2, a2)
    return s1, s2, counit(x) * counit(a)


def words_of(kinds: str, n: int) -> list[Word]:
    """All words with the given letter pattern, e.g. ``words_of("FFu", 2)``,
    in canonical order."""
    choices = []
    for k in kinds:
        if k in "tu":
            choices.append([Letter(k, i, j) for i in range(n) for j in range(n)])
        else:
            choices.append([Letter(k, i) for i in range(n)])
    return [tuple(w) for w in itertools.product(*choices)]


# -- relations ------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    family: str
    indices: tuple
    lhs: FreePoly
    rhs: FreePoly

    @property
    def relator(self) -> FreePoly:
        return self.lhs - self.rhs

    def render(self) -> str:
        return f"{self.lhs.render()} = {self.rhs.render()}"


RELATION_FAMILIES = {
    "RTT": "R12 T1 T2 = T2 T1 R12",
    "ET": "E1 T2 = T2 E1 R12",
    "RUU": "R12 U1 U2 = U2 U1 R12",
    "FU": "F2 U1 = R12 U1 F2",
    "RUT": "R12 U1 T2 = T2 U1 R12",
    "TF": "T2 F1 = R12 F1 T2",
    "EF": "E F - F E = T - U",
    "UE": "U1 E2 = E2 U1 R12",
}


def relator_catalog(R: RMatrix) -> list[Relation]:
    """Component-wise expansion of the defining and cross relations."""
    n = R.n
    r = R.entry
    rng = range(n)
    out = []

    def P(d):
        return FreePoly(d)

    def quad(kind1, kind2, family):
        # R12 X1 Y2 = Y2 X1 R12 with X = kind1, Y = kind2
        for i, j, k, l in itertools.product(rng, repeat=4):
            lhs, rhs = {}, {}
            for a, b in itertools.product(rng, repeat=2):
                w = (Letter(kind1, a, k), Letter(kind2, b, l))
                lhs[w] = lhs.get(w, ZERO) + r(i, j, a, b)
                w = (Letter(kind2, j, b), Letter(kind1, i, a))
                rhs[w] = rhs.get(w, ZERO) + r(a, b, k, l)
            out.append(Relation(family, (i, j, k, l), P(lhs), P(rhs)))

    quad("t", "t", "RTT")
    for j, k, l in itertools.product(rng, repeat=3):
        rhs = {(t(j, d), E(c)): r(c, d, k, l) for c in rng for d in rng}
        out.append(Relation("ET", (j, k, l), P({(E(k), t(j, l)): ONE}), P(rhs)))
    quad("u", "u", "RUU")
    for a, b, c in itertools.product(rng, repeat=3):
        rhs = {(u(e, c), F(f)): r(a, b, e, f) for e in rng for f in rng}
        out.append(Relation("FU", (a, b, c), P({(F(b), u(a, c)): ONE}), P(rhs)))
    quad("u", "t", "RUT")
    for i, j, d in itertools.product(rng, repeat=3):
        rhs = {(F(a), t(b, d)): r(i, j, a, b) for a in rng for b in rng}
        out.append(Relation("TF", (i, j, d), P({(t(j, d), F(i)): ONE}), P(rhs)))
    for i, j in itertools.product(rng, repeat=2):
        lhs = P({(E(i), F(j)): ONE, (F(j), E(i)): -ONE})
        rhs = P({(t(j, i),): ONE, (u(j, i),): -ONE})
        out.append(Relation("EF", (i, j), lhs, rhs))
    for a, c, f in itertools.product(rng, repeat=3):
        rhs = {(E(h), u(a, g)): r(g, h, c, f) for g in rng for h in rng}
        out.append(Relation("UE", (a, c, f), P({(u(a, c), E(f)): ONE}), P(rhs)))
    return out
