"""Zero-dimensional quotient algebras Q[x]/(F) and trace-formula division.

The algebra is built from a reduced grevlex Groebner basis; elements are
coordinate vectors on the standard monomials.  Multiplication matrices act on
column vectors: column ``j`` of ``mult(f)`` holds the coordinates of
``f * basis[j]``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .exactlinalg import charpoly as _charpoly_matrix
from .exactlinalg import determinant, matmul, solve
from .exactpoly import Monomial, Poly, derivative, grevlex_key

# Groebner bases


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(f: Poly) -> Poly:
    return f * (1 / f.leading_term()[1])


def _mono_times(f: Poly, mono: Monomial, c: Fraction) -> Dict[Monomial, Fraction]:
    return {tuple(a + b for a, b in zip(m, mono)): v * c for m, v in f.items()}


def reduce(f: Poly, basis: Sequence[Poly]) -> Poly:
    """Full normal form of ``f`` modulo a list of monic polynomials."""
    leads = [(g.leading_term()[0], g) for g in basis]
    terms = dict(f.terms)
    out: Dict[Monomial, Fraction] = {}
    while terms:
        m = max(terms, key=grevlex_key)
        c = terms.pop(m)
        for lm, g in leads:
            if _divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    t = tuple(a + b for a, b in zip(gm, q))
                    v = terms.get(t, 0) - c * gc
                    if v:
                        terms[t] = v
                    else:
                        terms.pop(t, None)
                break
        else:
            out[m] = c
    return Poly._raw(f.nvars, out)


def _spoly(f: Poly, g: Poly) -> Poly:
    mf, _ = f.leading_term()
    mg, _ = g.leading_term()
    L = _lcm(mf, mg)
    a = Poly._raw(f.nvars, _mono_times(f, tuple(x - y for x, y in zip(L, mf)), Fraction(1)))
    b = Poly._raw(g.nvars, _mono_times(g, tuple(x - y for x, y in zip(L, mg)), Fraction(1)))
    return a - b


@dataclass
class GroebnerBasis:
    generators: List[Poly]
    order: str = "grevlex"
    reduced: bool = True

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_term()[0] for g in self.generators]


def groebner(fs: Sequence[Poly]) -> GroebnerBasis:
    """Reduced grevlex basis by Buchberger with the normal selection strategy."""
    fs = [f for f in fs if not f.is_zero()]
    if not fs:
        raise ValueError("groebner basis of an empty or zero family")
    n = fs[0].nvars
    G: List[Poly] = []
    for f in fs:
        r = reduce(f, G) if G else f
        if not r.is_zero():
            G.append(_monic(r))
    pairs = {(i, j) for i in range(len(G)) for j in range(i)}
    while pairs:
        # normal strategy: smallest lcm first
        i, j = min(pairs, key=lambda p: (grevlex_key(_lcm(G[p[0]].leading_term()[0], G[p[1]].leading_term()[0])), p))
        pairs.discard((i, j))
        mi, mj = G[i].leading_term()[0], G[j].leading_term()[0]
        L = _lcm(mi, mj)
        if all(a == 0 or b == 0 for a, b in zip(mi, mj)):
            continue  # coprime leading monomials
        if any(k not in (i, j) and _divides(G[k].leading_term()[0], L)
               and (max(i, k), min(i, k)) not in pairs and (max(j, k), min(j, k)) not in pairs
               for k in range(len(G))):
            continue  # chain criterion
        r = reduce(_spoly(G[i], G[j]), G)
        if r.is_zero():
            continue
        r = _monic(r)
        if r.is_constant():
            return GroebnerBasis([Poly.constant(1, n)])
        k = len(G)
        G.append(r)
        pairs.update((k, t) for t in range(k))
    # minimize and interreduce
    minimal = []
    for idx, g in enumerate(G):
        lm = g.leading_term()[0]
        if any(_divides(h.leading_term()[0], lm) and (h.leading_term()[0] != lm or k < idx)
               for k, h in enumerate(G) if k != idx):
            continue
        minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lm, _ = g.leading_term()
        tail = g - Poly.monomial(lm, 1)
        reduced.append(Poly.monomial(lm, 1) + reduce(tail, others))
    reduced.sort(key=lambda g: grevlex_key(g.leading_term()[0]))
    if any(g.is_constant() for g in reduced):
        return GroebnerBasis([Poly.constant(1, n)])
    return GroebnerBasis(reduced)


# quotient algebra


class UnitIdealError(ValueError):
    """The ideal contains 1, so the quotient is the zero algebra."""


class PositiveDimensionalError(ValueError):
    """The ideal has infinitely many standard monomials."""


class NotRadicalError(ValueError):
    pass


def standard_monomials(leads: Sequence[Monomial], nvars: int) -> List[Monomial]:
    for i in range(nvars):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in leads):
            raise PositiveDimensionalError(f"no pure power of x{i + 1} among leading monomials")
    seen = {(0,) * nvars}
    frontier = [(0,) * nvars]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(nvars):
                t = tuple(e + (k == i) for k, e in enumerate(m))
                if t in seen or any(_divides(lm, t) for lm in leads):
                    continue
                seen.add(t)
                nxt.append(t)
        frontier = nxt
    return sorted(seen, key=grevlex_key)


class QuotientAlgebra:
    def __init__(self, fs: Sequence[Poly]):
        fs = list(fs)
        self.generators = fs
        self.nvars = fs[0].nvars
        self.gb = groebner(fs)
        if self.gb.is_unit():
            raise UnitIdealError("the ideal is the unit ideal; the quotient is zero")
        self.basis = standard_monomials(self.gb.leading_monomials(), self.nvars)
        self.index = {m: k for k, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._mult_cache: Dict[Poly, List[List[Fraction]]] = {}
        self._mono_trace: Dict[Monomial, Fraction] = {}
        self.mult_tables = []
        for i in range(self.nvars):
            cols = [self._reduced_coords(Poly.var(i, self.nvars) * Poly.monomial(m)) for m in self.basis]
            self.mult_tables.append([[cols[j][r] for j in range(self.dim)] for r in range(self.dim)])
        zero = (0,) * self.nvars
        self._mono_cache: Dict[Monomial, List[List[Fraction]]] = {
            zero: [[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)]}

    def __repr__(self):
        return f"QuotientAlgebra(dim={self.dim}, nvars={self.nvars})"

    def normal_form(self, f: Poly) -> Poly:
        return reduce(f, self.gb.generators)

    def _reduced_coords(self, f: Poly) -> List[Fraction]:
        v = [Fraction(0)] * self.dim
        for m, c in self.normal_form(f).items():
            v[self.index[m]] = c
        return v

    def monomial_matrix(self, mono: Monomial) -> List[List[Fraction]]:
        """Multiplication matrix of ``x^mono``, built from the variable tables."""
        M = self._mono_cache.get(mono)
        if M is None:
            i = max(k for k, e in enumerate(mono) if e)
            smaller = tuple(e - (k == i) for k, e in enumerate(mono))
            M = matmul(self.mult_tables[i], self.monomial_matrix(smaller))
            self._mono_cache[mono] = M
        return M

    def coords(self, f: Poly) -> List[Fraction]:
        # column 0 of a monomial matrix is the monomial's coordinate vector
        v = [Fraction(0)] * self.dim
        for m, c in f.items():
            M = self.monomial_matrix(m)
            for r in range(self.dim):
                if M[r][0]:
                    v[r] += c * M[r][0]
        return v

    def element(self, v: Sequence[Fraction]) -> Poly:
        return Poly(self.nvars, {self.basis[k]: c for k, c in enumerate(v) if c})

    def is_zero(self, f: Poly) -> bool:
        return not any(self.coords(f))

    def equal(self, f: Poly, g: Poly) -> bool:
        return self.is_zero(f - g)

    def mult(self, f: Poly) -> List[List[Fraction]]:
        """Matrix of multiplication by ``f``."""
        if f not in self._mult_cache:
            D = self.dim
            acc = [[Fraction(0)] * D for _ in range(D)]
            for m, c in f.items():
                M = self.monomial_matrix(m)
                for i in range(D):
                    row, src = acc[i], M[i]
                    for j in range(D):
                        if src[j]:
                            row[j] += c * src[j]
            self._mult_cache[f] = acc
        return self._mult_cache[f]

    def multiply(self, f: Poly, g: Poly) -> Poly:
        return self.normal_form(f * g)

    def trace(self, f: Poly) -> Fraction:
        total = Fraction(0)
        for m, c in f.items():
            t = self._mono_trace.get(m)
            if t is None:
                M = self.monomial_matrix(m)
                t = self._mono_trace[m] = sum((M[i][i] for i in range(self.dim)), Fraction(0))
            total += c * t
        return total

    def norm(self, f: Poly) -> Fraction:
        return determinant(self.mult(f))


def quotient_algebra(fs: Sequence[Poly]) -> QuotientAlgebra:
    return QuotientAlgebra(fs)


@dataclass
class CharPolyResult:
    coefficients: List[Fraction]  # b_0 .. b_{D-1}, monic
    norm: Fraction
    trace: Fraction

    def as_dict(self):
        return {"coefficients": [str(c) for c in self.coefficients] + ["1"],
                "norm": str(self.norm), "trace": str(self.trace)}


def charpoly(B: QuotientAlgebra, f: Poly) -> CharPolyResult:
    coeffs = _charpoly_matrix(B.mult(f))
    D = B.dim
    b = coeffs[:D]
    norm = (-1) ** D * b[0] if D else Fraction(1)
    trace = -b[D - 1] if D else Fraction(0)
    return CharPolyResult(b, norm, trace)


def cayley_hamilton_residual(B: QuotientAlgebra, f: Poly) -> List[List[Fraction]]:
    """``X_f(M_f)``; zero for every f."""
    M = B.mult(f)
    coeffs = _charpoly_matrix(M)
    D = B.dim
    acc = [[Fraction(0)] * D for _ in range(D)]
    for c in reversed(coeffs):
        acc = matmul(acc, M)
        for i in range(D):
            acc[i][i] += c
    return acc


def adjoint(B: QuotientAlgebra, f: Poly) -> Poly:
    """``f* = (-1)^(D-1) (f^(D-1) + b_{D-1} f^(D-2) + ... + b_1)`` reduced, with f* f = N(f)."""
    cp = charpoly(B, f)
    D = B.dim
    M = B.mult(f)
    # Horner on coordinate vectors
    v = B.coords(Poly.constant(1, B.nvars))
    for c in reversed(cp.coefficients[1:]):
        v = [sum((M[i][j] * v[j] for j in range(D)), Fraction(0)) for i in range(D)]
        v[0] += c  # basis[0] is the monomial 1
    sign = (-1) ** (D - 1)
    star = B.element([sign * x for x in v])
    if not B.equal(star * f, Poly.constant(cp.norm, B.nvars)):
        raise ArithmeticError("adjoint identity f* f = N(f) failed")
    return star


def _interpolate(ts: Sequence[int], values: Sequence[Fraction]) -> List[Fraction]:
    """Coefficients (constant first) of the polynomial through (t_k, value_k)."""
    n = len(ts)
    A = [[Fraction(t) ** k for k in range(n)] for t in ts]
    return solve(A, list(values))


@dataclass
class TraceIdentity:
    value: Fraction
    oracle: complex
    q: int

    @property
    def oracle_error(self) -> float:
        return abs(self.oracle - float(self.value))


def trace_roots_of_unity(B: QuotientAlgebra, f: Poly, g: Poly, q: int = None) -> TraceIdentity:
    """``Tr(f* g)`` as minus the t^(D-1) coefficient of ``N(t f - g)``.

    The floating roots-of-unity average is returned alongside as an oracle.
    """
    D = B.dim
    if q is None:
        q = D + 1
    if q <= D:
        raise ValueError(f"q must exceed the dimension {D}")
    Mf, Mg = B.mult(f), B.mult(g)
    ts = list(range(D + 1))
    vals = [determinant([[t * Mf[i][j] - Mg[i][j] for j in range(D)] for i in range(D)]) for t in ts]
    coeffs = _interpolate(ts, vals)
    exact = -coeffs[D - 1]
    Af = np.array([[float(x) for x in row] for row in Mf])
    Ag = np.array([[float(x) for x in row] for row in Mg])
    total = 0j
    for k in range(q):
        w = np.exp(2j * np.pi * k / q)
        total += np.linalg.det(w * Af - Ag) * w ** (1 - D)
    return TraceIdentity(exact, -total / q, q)


# pseudo-Jacobian and the trace formula


def _complete_hom(a: int, xi: int, yi: int, nv: int) -> Dict[Monomial, Fraction]:
    """``sum_{k<a} y^(a-1-k) x^k`` in a ring with ``nv`` variables."""
    out = {}
    for k in range(a):
        m = [0] * nv
        m[xi] += k
        m[yi] += a - 1 - k
        out[tuple(m)] = Fraction(1)
    return out


@dataclass
class TraceDecomposition:
    l_matrix: List[List[Poly]]  # entries in 2n variables: x1..xn, y1..yn
    delta: Poly
    pairs: List[Tuple[Poly, Poly]]  # (a_m, c_m) in n variables

    @property
    def n(self) -> int:
        return len(self.l_matrix)


def _poly_det(M: Sequence[Sequence[Poly]]) -> Poly:
    n = len(M)
    nv = M[0][0].nvars
    total = Poly.zero(nv)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Poly.constant(-1 if inv % 2 else 1, nv)
        for i, j in enumerate(perm):
            term = term * M[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def pseudo_jacobian(fs: Sequence[Poly]) -> TraceDecomposition:
    """Telescoping difference quotients ``l_ij``, their determinant and its y-expansion."""
    n = len(fs)
    if any(f.nvars != n for f in fs):
        raise ValueError("pseudo-Jacobian needs a square system (n polynomials in n variables)")
    nv = 2 * n
    L = []
    for F in fs:
        row = []
        for j in range(n):
            acc: Dict[Monomial, Fraction] = {}
            for m, c in F.items():
                a = m[j]
                if a == 0:
                    continue
                prefix = [0] * nv
                for k in range(j):
                    prefix[k] = m[k]
                for k in range(j + 1, n):
                    prefix[n + k] = m[k]
                for mm, v in _complete_hom(a, j, n + j, nv).items():
                    t = tuple(p + q for p, q in zip(prefix, mm))
                    acc[t] = acc.get(t, 0) + c * v
            row.append(Poly(nv, acc))
        L.append(row)
    delta = _poly_det(L)
    grouped: Dict[Monomial, Dict[Monomial, Fraction]] = {}
    for m, c in delta.items():
        ymono, xmono = m[n:], m[:n]
        grouped.setdefault(ymono, {})[xmono] = c
    pairs = []
    for ymono in sorted(grouped, key=grevlex_key):
        pairs.append((Poly(n, grouped[ymono]), Poly.monomial(ymono)))
    return TraceDecomposition(L, delta, pairs)


def telescoping_residual(fs: Sequence[Poly], td: TraceDecomposition) -> List[Poly]:
    """``F_i(y) - F_i(x) - sum_j l_ij (y_j - x_j)``; all zero for a correct l."""
    n = len(fs)
    nv = 2 * n
    out = []
    for i, F in enumerate(fs):
        Fx = F.extend(nv, 0)
        Fy = F.extend(nv, n)
        acc = Fy - Fx
        for j in range(n):
            acc = acc - td.l_matrix[i][j] * (Poly.var(n + j, nv) - Poly.var(j, nv))
        out.append(acc)
    return out


def jacobian_determinant(fs: Sequence[Poly]) -> Poly:
    n = len(fs)
    return _poly_det([[derivative(F, j) for j in range(n)] for F in fs])


@dataclass
class TateTrace:
    algebra: QuotientAlgebra
    decomposition: TraceDecomposition
    values: List[Fraction]  # sigma(basis monomial)

    def __call__(self, g: Poly) -> Fraction:
        v = self.algebra.coords(g)
        return sum((a * b for a, b in zip(self.values, v)), Fraction(0))

    def reconstruct(self, g: Poly) -> Poly:
        """``sum_m sigma(g a_m) c_m`` reduced in the algebra."""
        B = self.algebra
        acc = Poly.zero(B.nvars)
        for a, c in self.decomposition.pairs:
            s = self(g * a)
            if s:
                acc = acc + c * s
        return B.normal_form(acc)


def is_radical(B: QuotientAlgebra, seed: int = 0, tries: int = 3) -> bool:
    """Squarefree characteristic polynomial of a random linear form implies radical."""
    rng = random.Random(seed)
    t = sympy.Symbol("t")
    for _ in range(tries):
        lin = Poly(B.nvars, {tuple(int(k == i) for k in range(B.nvars)): rng.randint(-10, 10)
                             for i in range(B.nvars)})
        coeffs = _charpoly_matrix(B.mult(lin))
        P = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t)
        if sympy.degree(sympy.gcd(P, P.diff(t)), t) == 0:
            return True
    return False


def tate_trace(B: QuotientAlgebra, td: TraceDecomposition, check_radical: bool = True,
               seed: int = 0) -> TateTrace:
    """Solve for sigma from ``g = sum_m sigma(g a_m) c_m`` on every basis monomial."""
    if check_radical and not is_radical(B, seed):
        raise NotRadicalError("ideal failed the squarefree characteristic polynomial test")
    D = B.dim
    Ma = [B.mult(a) for a, _ in td.pairs]
    Wc = [B.coords(c) for _, c in td.pairs]
    # unknown s: sum_m Wc[m][k] * (s . Ma[m][:, j]) = delta_jk
    rows, rhs = [], []
    for j in range(D):
        for k in range(D):
            coeff = [Fraction(0)] * D
            for m in range(len(td.pairs)):
                w = Wc[m][k]
                if w:
                    for l in range(D):
                        coeff[l] += w * Ma[m][l][j]
            rows.append(coeff)
            rhs.append(Fraction(int(j == k)))
    s = solve(rows, rhs)
    if s is None:
        raise ValueError("the classes c_m do not span the algebra; input is degenerate or not reduced")
    sig = TateTrace(B, td, s)
    return sig


def trace_checks(sigma: TateTrace, fs: Sequence[Poly], samples: Sequence[Poly]) -> Dict[str, bool]:
    """Pseudo-Jacobian identity, trace identity and reconstruction on sample elements."""
    B = sigma.algebra
    J = jacobian_determinant(fs)
    sum_ac = Poly.zero(B.nvars)
    for a, c in sigma.decomposition.pairs:
        sum_ac = sum_ac + a * c
    return {
        "jacobian": B.equal(J, sum_ac),
        "trace": all(B.trace(g) == sigma(J * g) for g in samples),
        "reconstruction": all(B.equal(sigma.reconstruct(g), g) for g in samples),
    }


class DivisionError(ArithmeticError):
    pass


@dataclass
class DivisionResult:
    q: Poly
    q_reduced: Poly
    norm_Jf: Fraction
    identity: bool
    deg_x: int
    deg_x_bound: int
    lambdas: List[Fraction] = field(default_factory=list)

    def as_dict(self):
        from .exactpoly import render
        return {
            "q": render(self.q),
            "q_reduced": render(self.q_reduced),
            "checks": {"identity": self.identity, "deg_x": self.deg_x, "degree_bound": self.deg_x_bound,
                       "degree_ok": self.deg_x <= self.deg_x_bound},
            "norm_Jf": str(self.norm_Jf),
        }


def divide_trace_formula(B: QuotientAlgebra, td: TraceDecomposition, f: Poly, g: Poly) -> DivisionResult:
    """``q = sum_m Tr((J f)* g a_m) c_m / N(J f)`` with ``q f = g`` in B checked exactly."""
    fs = B.generators
    J = jacobian_determinant(fs)
    Jf = B.normal_form(J * f)
    N = B.norm(Jf)
    if N == 0:
        raise DivisionError("N(J f) = 0: f is a zero divisor or the system is not reduced")
    star = adjoint(B, Jf)
    lambdas = []
    q = Poly.zero(B.nvars)
    base = B.normal_form(star * g)
    for a, c in td.pairs:
        lam = B.trace(base * a)
        lambdas.append(lam)
        if lam:
            q = q + c * (lam / N)
    ok = B.equal(q * f, g)
    if not ok:
        raise DivisionError("q f - g does not reduce to zero; f does not divide g in the algebra")
    d = max([f.degree()] + [F.degree() for F in fs])
    deg_x = q.degree() if not q.is_zero() else 0
    return DivisionResult(q, B.normal_form(q), N, ok, deg_x, len(fs) * d, lambdas)
