"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
``Fraction`` coefficients, tagged with its number of variables.  Variables
are named ``x1 .. xn`` in text form; index 0 of an exponent tuple is ``x1``.

Terms are ordered by graded reverse lexicographic order (grevlex) whenever an
order matters: rendering, leading terms, Groebner work.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

Monomial = Tuple[int, ...]

NEG_INF = float("-inf")


def grevlex_key(mono: Monomial):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient must be int, Fraction or str, got {type(c).__name__}")


class Poly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, c in items:
                mono = tuple(int(e) for e in mono)
                if len(mono) != nvars:
                    raise ValueError(f"monomial {mono} has length {len(mono)}, expected {nvars}")
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in {mono}")
                c = _as_fraction(c)
                if c:
                    clean[mono] = clean.get(mono, Fraction(0)) + c
                    if not clean[mono]:
                        del clean[mono]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        """The variable x_{i+1} (0-based index ``i``)."""
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for {nvars} variables")
        mono = [0] * nvars
        mono[i] = 1
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def monomial(cls, mono: Sequence[int], c=1) -> "Poly":
        return cls(len(mono), {tuple(mono): c})

    # basic access

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(sum(m) for m in self._terms)

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in grevlex-descending order."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self._terms, key=grevlex_key)
        return mono, self._terms[mono]

    def variables_used(self) -> List[int]:
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    # arithmetic

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw(self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of polynomial by zero")
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self.nvars}, {render(self)!r})"

    def __str__(self):
        return render(self)

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Monomial, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # structural helpers

    def extend(self, nvars: int, offset: int = 0) -> "Poly":
        """Embed into a ring with ``nvars`` variables, shifting indices by ``offset``."""
        if offset + self.nvars > nvars:
            raise ValueError("target ring too small")
        pad_r = nvars - offset - self.nvars
        return Poly._raw(nvars, {(0,) * offset + m + (0,) * pad_r: c for m, c in self._terms.items()})

    def scale_to_integral(self) -> Tuple[int, "Poly"]:
        """Smallest positive ``k`` with ``k*self`` integral."""
        k = 1
        for c in self._terms.values():
            k = k * c.denominator // math.gcd(k, c.denominator)
        return k, self * k


# module-level operations


def add(f: Poly, g: Poly) -> Poly:
    f._check(g)
    return f + g


def mul(f: Poly, g: Poly) -> Poly:
    f._check(g)
    return f * g


def evaluate(f: Poly, point: Sequence) -> Fraction:
    """Exact value of ``f`` at a rational point."""
    if len(point) != f.nvars:
        raise ValueError(f"point has length {len(point)}, expected {f.nvars}")
    pt = [_as_fraction(x) for x in point]
    total = Fraction(0)
    for m, c in f.items():
        term = c
        for x, e in zip(pt, m):
            if e:
                term *= x ** e
        total += term
    return total


def compose(f: Poly, images: Sequence[Poly]) -> Poly:
    """Substitute ``x_i -> images[i]`` (all images share one ring)."""
    if len(images) != f.nvars:
        raise ValueError(f"need {f.nvars} images, got {len(images)}")
    if f.nvars == 0:
        return f
    target = images[0].nvars
    for g in images:
        if g.nvars != target:
            raise ValueError("images live in different rings")
    powers: List[Dict[int, Poly]] = [{0: Poly.constant(1, target)} for _ in images]

    def power(i: int, e: int) -> Poly:
        cache = powers[i]
        if e not in cache:
            k = max(k for k in cache if k < e)
            p = cache[k]
            for j in range(k + 1, e + 1):
                p = p * images[i]
                cache[j] = p
        return cache[e]

    out = Poly.zero(target)
    for m, c in f.sorted_terms():
        term = Poly.constant(c, target)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


def substitute_affine(f: Poly, matrix: Sequence[Sequence], shift: Sequence) -> Poly:
    """``f(M x + b)``.  The matrix must be square, invertible and of size nvars."""
    from .exactlinalg import determinant

    n = f.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix) or len(shift) != n:
        raise ValueError("matrix/shift dimensions do not match the number of variables")
    M = [[_as_fraction(x) for x in row] for row in matrix]
    if n and determinant(M) == 0:
        raise ValueError("singular matrix")
    images = []
    for i in range(n):
        terms = {(0,) * n: _as_fraction(shift[i])}
        for j in range(n):
            if M[i][j]:
                mono = [0] * n
                mono[j] = 1
                terms[tuple(mono)] = M[i][j]
        images.append(Poly(n, terms))
    return compose(f, images)


def homogenize(f: Poly) -> Poly:
    """Homogenize with a new variable placed at index 0 (named x0)."""
    if f.is_zero():
        return Poly.zero(f.nvars + 1)
    d = f.degree()
    return Poly._raw(f.nvars + 1, {(d - sum(m),) + m: c for m, c in f.items()})


def dehomogenize(f: Poly) -> Poly:
    """Set the index-0 variable to 1 and drop it."""
    if f.nvars == 0:
        raise ValueError("nothing to dehomogenize")
    out: Dict[Monomial, Fraction] = {}
    for m, c in f.items():
        key = m[1:]
        out[key] = out.get(key, 0) + c
    return Poly(f.nvars - 1, out)


def content_and_primitive(f: Poly) -> Tuple[Fraction, Poly]:
    """``f = content * primitive`` with primitive integral, coprime, positive lead."""
    if f.is_zero():
        raise ValueError("zero polynomial has no content")
    num_gcd = 0
    den_lcm = 1
    for c in f._terms.values():
        num_gcd = math.gcd(num_gcd, c.numerator)
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    content = Fraction(num_gcd, den_lcm)
    if f.leading_term()[1] < 0:
        content = -content
    return content, f * (1 / content)


def partial_degree(f: Poly, block: Iterable[int]) -> int:
    """Degree in the variables with 1-based indices ``block``."""
    idx = [i - 1 for i in block]
    for i in idx:
        if not 0 <= i < f.nvars:
            raise ValueError(f"variable x{i + 1} not in ring with {f.nvars} variables")
    if f.is_zero():
        return NEG_INF
    return max(sum(m[i] for i in idx) for m in f._terms)


def derivative(f: Poly, i: int) -> Poly:
    """Partial derivative with respect to the 0-based variable ``i``."""
    out = {}
    for m, c in f.items():
        if m[i]:
            mm = list(m)
            mm[i] -= 1
            out[tuple(mm)] = c * m[i]
    return Poly(f.nvars, out)


# text form

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|x(\d+)|(\^)|([-+*()]))")


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_mono(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    return "*".join(parts)


def render(f: Poly, names: Sequence[str] = None) -> str:
    """Canonical text, grevlex-descending, e.g. ``3*x1^2*x2 - 1/2*x2 + 7``."""
    if names is None:
        names = [f"x{i + 1}" for i in range(f.nvars)]
    if f.is_zero():
        return "0"
    pieces = []
    for k, (m, c) in enumerate(f.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _format_mono(m, names)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if k == 0:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        num, var, caret, op = m.groups()
        if num is not None:
            if "/" in num and int(num.split("/")[1]) == 0:
                raise ParseError("zero denominator in literal")
            toks.append(("num", Fraction(num)))
        elif var is not None:
            if int(var) < 1:
                raise ParseError("variables are numbered from x1")
            toks.append(("var", int(var)))
        elif caret:
            toks.append(("op", "^"))
        else:
            toks.append(("op", op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return toks


def max_variable_index(text: str) -> int:
    """Largest ``k`` with ``xk`` appearing in the text (0 if none)."""
    ks = [int(k) for k in re.findall(r"x(\d+)", text)]
    return max(ks, default=0)


def parse(text: str, nvars: int = None) -> Poly:
    """Parse the text grammar: x1..xn, integer and p/q literals, + - * ^ and parentheses."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial text")
    n = max_variable_index(text) if nvars is None else nvars
    if max_variable_index(text) > n:
        raise ParseError(f"variable x{max_variable_index(text)} exceeds declared count {n}")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = peek()
        pos += 1
        return t

    def expr() -> Poly:
        acc = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term() -> Poly:
        acc = unary()
        while peek() == ("op", "*"):
            take()
            acc = acc * unary()
        return acc

    def unary() -> Poly:
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power() -> Poly:
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or val.denominator != 1:
                raise ParseError("exponent must be a nonnegative integer literal")
            return base ** int(val)
        return base

    def atom() -> Poly:
        kind, val = take()
        if kind == "num":
            return Poly.constant(val, n)
        if kind == "var":
            return Poly.var(val - 1, n)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return inner
        raise ParseError(f"unexpected token {val!r}")

    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input starting at token {toks[pos][1]!r}")
    return result


def parse_many(texts: Sequence[str], nvars: int = None) -> List[Poly]:
    """Parse several polynomials into one common ring."""
    n = max((max_variable_index(t) for t in texts), default=0) if nvars is None else nvars
    return [parse(t, n) for t in texts]
