"""Noncommutative polynomials in a, b and in c, d with integer coefficients.

Words are plain strings.  Degrees: a, b, c count 1 and d counts 2.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import DegreeMismatch, NotCd, ParseError


def _run_word(word):
    # "cccd" -> "c^3d"
    out = []
    for m in re.finditer(r"(.)\1*", word):
        k = len(m.group(0))
        out.append(m.group(1) if k == 1 else f"{m.group(1)}^{k}")
    return "".join(out)


class _WordPoly:
    letters = ""
    weights = {}

    def __init__(self, terms=None):
        if isinstance(terms, str):
            terms = {terms: 1}
        clean = {}
        for w, c in (terms or {}).items():
            if any(ch not in self.letters for ch in w):
                raise ParseError(f"word {w!r} uses letters outside {self.letters!r}")
            if c:
                clean[w] = clean.get(w, 0) + int(c)
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def one(cls):
        return cls({"": 1})

    @classmethod
    def word_degree(cls, word):
        return sum(cls.weights[ch] for ch in word)

    def degree(self):
        degs = {self.word_degree(w) for w in self.terms}
        if len(degs) > 1:
            raise DegreeMismatch("polynomial is not homogeneous")
        return degs.pop() if degs else None

    def __eq__(self, other):
        if isinstance(other, int):
            other = type(self)({"": other})
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return type(self)(out)

    def __neg__(self):
        return type(self)({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return type(self)({w: c * other for w, c in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = type(self).one()
        for _ in range(k):
            out = out * self
        return out

    def coefficient(self, word):
        return self.terms.get(word, 0)

    def words(self):
        return sorted(self.terms, key=lambda w: (self.word_degree(w), w))

    def is_nonnegative(self):
        return all(c >= 0 for c in self.terms.values())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in self.words():
            c = self.terms[w]
            body = _run_word(w)
            mag = abs(c)
            if body == "":
                txt = str(mag)
            elif mag == 1:
                txt = body
            else:
                txt = f"{mag}{body}"
            if not parts:
                parts.append(txt if c > 0 else "-" + txt)
            else:
                parts.append(("+ " if c > 0 else "- ") + txt)
        return " ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``: accepts e.g. ``"c^3 + 2cd - dc"`` and ``"1"``."""
        s = text.replace(" ", "")
        if s == "0":
            return cls()
        if not s:
            raise ParseError("empty polynomial")
        term_re = re.compile(r"([+-]?)(\d*)((?:[%s](?:\^\d+)?)*)" % cls.letters)
        pos = 0
        out = {}
        while pos < len(s):
            m = term_re.match(s, pos)
            if not m or m.end() == pos or (pos > 0 and not m.group(1)):
                raise ParseError(f"cannot parse {text!r} at position {pos}")
            sign, num, body = m.groups()
            if not num and not body:
                raise ParseError(f"cannot parse {text!r} at position {pos}")
            coef = int(num) if num else 1
            if sign == "-":
                coef = -coef
            word = "".join(
                ch * (int(k) if k else 1) for ch, k in re.findall(r"([a-z])(?:\^(\d+))?", body)
            )
            out[word] = out.get(word, 0) + coef
            pos = m.end()
        return cls(out)


class AbPolynomial(_WordPoly):
    letters = "ab"
    weights = {"a": 1, "b": 1}

    def evaluate(self, a, b):
        return sum(c * a ** w.count("a") * b ** w.count("b") for w, c in self.terms.items())


class CdPolynomial(_WordPoly):
    letters = "cd"
    weights = {"c": 1, "d": 2}

    def expand(self):
        """Substitute c = a + b and d = ab + ba."""
        out = AbPolynomial()
        for w, coef in self.terms.items():
            out = out + AbPolynomial(dict(_expand_word(w))) * coef
        return out

    def leq(self, other):
        """Coefficientwise comparison; returns (bool, first violating word or None)."""
        for w in sorted(set(self.terms) | set(other.terms)):
            if self.coefficient(w) > other.coefficient(w):
                return False, w
        return True, None


@lru_cache(maxsize=None)
def _expand_word(word):
    pieces = [("a", "b") if ch == "c" else ("ab", "ba") for ch in word]
    out = {}
    for combo in product(*pieces):
        w = "".join(combo)
        out[w] = out.get(w, 0) + 1
    return tuple(out.items())


@lru_cache(maxsize=None)
def cd_words(degree):
    """All cd-words of the given degree, in canonical order."""
    if degree < 0:
        return ()
    if degree == 0:
        return ("",)
    out = ["c" + w for w in cd_words(degree - 1)] + ["d" + w for w in cd_words(degree - 2)]
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _solver(degree):
    """Pivot ab-words and the inverse of the square expansion matrix on them."""
    cols = cd_words(degree)
    exp = [dict(_expand_word(w)) for w in cols]
    rows = sorted({w for e in exp for w in e})
    m = len(cols)
    A = [[Fraction(exp[j].get(r, 0)) for j in range(m)] for r in rows]
    pivots = []
    # row-reduce a copy of A^T to find m independent rows
    basis = []
    for i, row in enumerate(A):
        v = list(row)
        for b, p in basis:
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, b)]
        p = next((k for k, x in enumerate(v) if x), None)
        if p is not None:
            v = [x / v[p] for x in v]
            basis.append((v, p))
            pivots.append(i)
        if len(pivots) == m:
            break
    S = [A[i] for i in pivots]
    inv = _invert(S)
    return [rows[i] for i in pivots], inv, cols


def _invert(S):
    m = len(S)
    M = [list(r) + [Fraction(int(i == j)) for j in range(m)] for i, r in enumerate(S)]
    for col in range(m):
        piv = next(r for r in range(col, m) if M[r][col])
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(m):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[m:] for row in M]


def ab_to_cd(psi):
    """Rewrite an ab-polynomial in c and d, or raise ``NotCd``."""
    if not psi.terms:
        return CdPolynomial()
    degree = psi.degree()
    rows, inv, cols = _solver(degree)
    rhs = [psi.coefficient(r) for r in rows]
    coefs = [sum(x * y for x, y in zip(line, rhs)) for line in inv]
    if any(c.denominator != 1 for c in coefs):
        raise NotCd("ab-index has no integral cd expression")
    out = CdPolynomial({w: int(c) for w, c in zip(cols, coefs)})
    if out.expand() != psi:
        raise NotCd("ab-index is not a polynomial in c and d")
    return out


def cd_compare(psi1, psi2, pad=0):
    """Compare ``psi1 * c^pad`` with ``psi2`` coefficientwise."""
    d1, d2 = psi1.degree(), psi2.degree()
    if d1 is not None and d2 is not None and d1 + pad != d2:
        raise DegreeMismatch(f"degrees {d1} + {pad} and {d2} differ")
    lhs = psi1 * CdPolynomial("c" * pad)
    ok, word = lhs.leq(psi2)
    return {"leq": ok, "witness": word}
