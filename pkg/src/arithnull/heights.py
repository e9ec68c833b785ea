"""Heights of polynomials and zero-dimensional varieties over Q.

Places of Q are ``INF`` (the usual absolute value) and ``Place(p)`` for
primes ``p``.  Local heights are ``h_v(f) = max(0, log |f|_v)`` where
``|f|_v`` is the largest coefficient size at ``v``; the global height sums
the per-place maxima over all places where some coefficient is not a unit.

Mahler measures come in three flavours: an exact univariate path through
root moduli, a Monte Carlo average over the unit torus, and a Monte Carlo
average over products of complex unit spheres.  Every Monte Carlo run uses a
Philox counter-based generator seeded explicitly, so results are bit-stable
for a given seed and sample count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
import sympy

from .exactpoly import Poly, homogenize

DEFAULT_SAMPLES = 200_000
TOLERANCE_SIGMAS = 4.0
EXACT_METHODS = ("Jensen-exact", "exact")


@dataclass(frozen=True, order=True)
class Place:
    """``p is None`` means the archimedean place."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and (self.p < 2 or not sympy.isprime(self.p)):
            raise ValueError(f"{self.p} is not a prime")

    @property
    def archimedean(self) -> bool:
        return self.p is None

    def __str__(self):
        return "inf" if self.p is None else str(self.p)

    @classmethod
    def parse(cls, text) -> "Place":
        if isinstance(text, Place):
            return text
        t = str(text).strip().lower()
        if t in ("inf", "infinity", "oo"):
            return INF
        return cls(int(t))


INF = Place(None)


def _sort_places(places):
    return sorted(places, key=lambda v: (v.p is not None, v.p or 0))


@dataclass
class HeightReport:
    value: float
    locals: Dict[Place, float]
    places: List[Place]

    def as_dict(self):
        return {
            "value": self.value,
            "places": [str(v) for v in self.places],
            "locals": {str(v): self.locals[v] for v in self.places},
        }


@dataclass
class MahlerEstimate:
    value: float
    stderr: float
    samples: int
    method: str

    def __post_init__(self):
        if self.method in EXACT_METHODS:
            if self.stderr != 0:
                raise ValueError("exact estimates carry no standard error")
        elif self.samples <= 0:
            raise ValueError("Monte Carlo estimate needs samples > 0")

    def as_dict(self):
        return {"value": self.value, "stderr": self.stderr, "samples": self.samples, "method": self.method}


# exact valuations


def ord_p(q: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if q == 0:
        raise ValueError("valuation of zero")
    q = Fraction(q)
    k = 0
    num, den = abs(q.numerator), q.denominator
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k


def log_abs(q: Fraction) -> float:
    q = abs(Fraction(q))
    return math.log(q.numerator) - math.log(q.denominator)


def coefficient_primes(fs: Sequence[Poly]) -> List[int]:
    primes = set()
    for f in fs:
        for _, c in f.items():
            for part in (abs(c.numerator), c.denominator):
                if part > 1:
                    primes.update(sympy.factorint(part))
    return sorted(primes)


def padic_exponent(f: Poly, p: int) -> int:
    """``k >= 0`` with ``h_p(f) = k log p`` (exact)."""
    if f.is_zero():
        raise ValueError("height of the zero polynomial")
    return max(0, -min(ord_p(c, p) for _, c in f.items()))


def log_norm(f: Poly, v: Place = None) -> float:
    """``log |f|_v`` without the clamp at zero."""
    v = INF if v is None else Place.parse(v)
    if f.is_zero():
        raise ValueError("log norm of the zero polynomial")
    if v.archimedean:
        return max(log_abs(c) for _, c in f.items())
    return -min(ord_p(c, v.p) for _, c in f.items()) * math.log(v.p)


def local_height(f: Poly, v=INF) -> float:
    v = Place.parse(v)
    if f.is_zero():
        raise ValueError("height of the zero polynomial")
    if v.archimedean:
        return max(0.0, log_norm(f, v))
    return padic_exponent(f, v.p) * math.log(v.p)


def global_height(fs: Sequence[Poly]) -> HeightReport:
    """Sum over places of the largest local height in the family."""
    fs = list(fs)
    if not fs:
        raise ValueError("global height of an empty family")
    if any(f.is_zero() for f in fs):
        raise ValueError("height of the zero polynomial")
    places = [INF] + [Place(p) for p in coefficient_primes(fs)]
    locs = {v: max(local_height(f, v) for f in fs) for v in places}
    return HeightReport(value=sum(locs[v] for v in places), locals=locs, places=places)


def rational_height(q: Fraction) -> float:
    """``log max(|m|, n)`` for ``q = m/n`` in lowest terms."""
    q = Fraction(q)
    return math.log(max(abs(q.numerator), q.denominator))


def product_formula_exponents(q: Fraction) -> Dict[Place, Dict[int, int]]:
    """``log|q|_v`` for every relevant place, as integer combinations of ``log p``.

    Summing the combinations over all places gives the zero combination.
    """
    q = Fraction(q)
    if q == 0:
        raise ValueError("product formula needs a nonzero rational")
    fac: Dict[int, int] = {}
    for p, e in sympy.factorint(abs(q.numerator)).items():
        fac[p] = fac.get(p, 0) + e
    for p, e in sympy.factorint(q.denominator).items():
        fac[p] = fac.get(p, 0) - e
    out = {INF: dict(fac)}
    for p, e in fac.items():
        out[Place(p)] = {p: -e}
    return out


def product_formula_holds(q: Fraction) -> bool:
    total: Dict[int, int] = {}
    for combo in product_formula_exponents(q).values():
        for p, e in combo.items():
            total[p] = total.get(p, 0) + e
    return all(e == 0 for e in total.values())


# Mahler measures


def _univariate_index(f: Poly) -> Optional[int]:
    used = f.variables_used()
    if len(used) > 1:
        raise ValueError("polynomial is not univariate")
    return used[0] if used else None


def univariate_coefficients(f: Poly) -> List[Fraction]:
    """Coefficients from the constant term upwards."""
    i = _univariate_index(f)
    if i is None:
        return [f.constant_term()]
    d = f.degree()
    out = [Fraction(0)] * (d + 1)
    for m, c in f.items():
        out[m[i]] = c
    return out


def mahler_univariate_exact(f: Poly, precision: float = 1e-12) -> MahlerEstimate:
    """Jensen/Lehmer formula over numerically refined roots.

    The input is split into squarefree factors first so every root handed to
    the root finder is simple; roots are polished in extended precision.
    """
    if f.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    coeffs = univariate_coefficients(f)
    x = sympy.Symbol("x")
    sp = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])), x)
    lead, factors = sp.sqf_list()
    dps = max(30, int(-math.log10(precision)) + 15)
    total = mpmath.mpf(0)
    with mpmath.workdps(dps):
        total += mpmath.log(abs(mpmath.mpf(sympy.Rational(lead).p) / sympy.Rational(lead).q))
        for g, mult in factors:
            gc = [sympy.Rational(c) for c in g.all_coeffs()]
            total += mult * mpmath.log(abs(mpmath.mpf(gc[0].p) / gc[0].q))
            # strip zero roots
            while gc and gc[-1] == 0:
                gc.pop()
            if len(gc) <= 1:
                continue
            mp_coeffs = [mpmath.mpf(c.p) / c.q for c in gc]
            roots = mpmath.polyroots(mp_coeffs, maxsteps=200, extraprec=4 * dps)
            for r in roots:
                a = abs(r)
                if a > 1:
                    total += mult * mpmath.log(a)
    return MahlerEstimate(value=float(total), stderr=0.0, samples=0, method="Jensen-exact")


def _generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def _compile(f: Poly):
    monos = np.array([m for m, _ in f.sorted_terms()], dtype=np.int64).reshape(len(f), f.nvars)
    coeffs = np.array([float(c) for _, c in f.sorted_terms()], dtype=np.complex128)
    return monos, coeffs


def _evaluate_complex(monos, coeffs, points: np.ndarray) -> np.ndarray:
    """Evaluate at an array of complex points with shape (N, nvars)."""
    out = np.zeros(points.shape[0], dtype=np.complex128)
    for k in range(len(coeffs)):
        term = np.full(points.shape[0], coeffs[k], dtype=np.complex128)
        for i, e in enumerate(monos[k]):
            if e:
                term *= points[:, i] ** int(e)
        out += term
    return out


def _log_abs_mc(f: Poly, draw, samples: int, rng) -> Tuple[float, float]:
    if samples < 2:
        raise ValueError("need at least 2 samples")
    monos, coeffs = _compile(f)
    pts = draw(rng, samples)
    vals = _evaluate_complex(monos, coeffs, pts)
    bad = np.flatnonzero(vals == 0)
    while bad.size:
        # measure-zero event: redraw just those samples
        fresh = draw(rng, bad.size)
        pts[bad] = fresh
        vals[bad] = _evaluate_complex(monos, coeffs, fresh)
        bad = bad[vals[bad] == 0]
    logs = np.log(np.abs(vals))
    return float(np.mean(logs)), float(np.std(logs, ddof=1) / math.sqrt(samples))


def mahler_torus_mc(f: Poly, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> MahlerEstimate:
    """Average of log|f| over uniform points of the unit torus."""
    if f.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    n = f.nvars
    if f.is_constant():
        return MahlerEstimate(log_abs(f.constant_term()), 0.0, samples, "torus-MC")

    def draw(rng, k):
        return np.exp(2j * np.pi * rng.random((k, n)))

    value, err = _log_abs_mc(f, draw, samples, _generator(seed))
    return MahlerEstimate(value, err, samples, "torus-MC")


def sample_sphere(rng, k: int, n: int) -> np.ndarray:
    """``k`` unitary-invariant points on the unit sphere of C^n."""
    z = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def mahler_sphere_mc(f: Poly, groups: int, group_size: int,
                     samples: int = DEFAULT_SAMPLES, seed: int = 0) -> MahlerEstimate:
    """Average of log|f| over the product of ``groups`` unit spheres in C^group_size.

    Variables are read in blocks: x1..x_n form the first group, and so on.
    """
    if f.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    if groups * group_size != f.nvars:
        raise ValueError(f"{f.nvars} variables do not split into {groups} groups of {group_size}")
    if f.is_constant():
        return MahlerEstimate(log_abs(f.constant_term()), 0.0, samples, "sphere-MC")

    def draw(rng, k):
        blocks = [sample_sphere(rng, k, group_size) for _ in range(groups)]
        return np.concatenate(blocks, axis=1)

    value, err = _log_abs_mc(f, draw, samples, _generator(seed))
    return MahlerEstimate(value, err, samples, "sphere-MC")


def sphere_gap_bound(groups: int, group_size: int, degree: int) -> float:
    """Upper end of ``0 <= m(f) - m(f; S_n^r) <= r d sum_{i<n} 1/(2i)``."""
    return groups * degree * sum(1 / (2 * i) for i in range(1, group_size))


# varieties


def stoll_number(n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum((Fraction(1, 2 * j) for i in range(1, n + 1) for j in range(1, i + 1)), Fraction(0))


def harmonic_half(n: int) -> Fraction:
    """``sum_{i=1}^n 1/(2i)``."""
    return sum((Fraction(1, 2 * i) for i in range(1, n + 1)), Fraction(0))


def _check_points(points) -> List[Tuple[Fraction, ...]]:
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise ValueError("empty variety")
    if len({len(p) for p in pts}) != 1:
        raise ValueError("points of different dimensions")
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    return pts


def height_point_variety(points, v=INF) -> float:
    """Height of a finite set of rational points.

    Archimedean: sum of ``1/2 log(1 + |xi|^2)``.  At a prime: sum of the
    local heights of the points' Chow forms ``U0 + sum xi_i U_i``.
    """
    v = Place.parse(v)
    pts = _check_points(points)
    if v.archimedean:
        return sum(0.5 * log_abs(1 + sum(x * x for x in p)) for p in pts)
    total = 0.0
    for p in pts:
        k = max([0] + [-ord_p(x, v.p) for x in p if x])
        total += k * math.log(v.p)
    return total


def point_chow_form(point) -> Poly:
    """``U0 + xi_1 U1 + ... + xi_n Un`` in n+1 variables."""
    pt = [Fraction(x) for x in point]
    n = len(pt)
    terms = {tuple(int(j == 0) for j in range(n + 1)): 1}
    for i, x in enumerate(pt):
        if x:
            terms[tuple(int(j == i + 1) for j in range(n + 1))] = x
    return Poly(n + 1, terms)


def height_point_variety_mc(points, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> MahlerEstimate:
    """Archimedean height via the Chow form on the sphere, for cross-checking."""
    pts = _check_points(points)
    n = len(pts[0])
    chow = Poly.constant(1, n + 1)
    for p in pts:
        chow = chow * point_chow_form(p)
    est = mahler_sphere_mc(chow, 1, n + 1, samples, seed)
    shift = float(harmonic_half(n)) * len(pts)
    return MahlerEstimate(est.value + shift, est.stderr, est.samples, est.method)


def height_hypersurface(f: Poly, v=INF, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> MahlerEstimate:
    """Height of the hypersurface ``{f = 0}`` normalized by its x_n^deg coefficient.

    Archimedean value: ``m(f^h; S_{n+1}) + Stoll(n) * deg`` (see the ledger
    for the constant).  At a prime the height is exact: ``h_p(f)``.
    """
    v = Place.parse(v)
    if f.is_zero() or f.is_constant():
        raise ValueError("hypersurface needs a nonconstant polynomial")
    n = f.nvars
    d = f.degree()
    lead = f.coeff(tuple([0] * (n - 1) + [d]))
    if lead != 1:
        raise ValueError(f"coefficient of x{n}^{d} must be 1, got {lead}")
    if not v.archimedean:
        return MahlerEstimate(local_height(f, v), 0.0, 0, "exact")
    est = mahler_sphere_mc(homogenize(f), 1, n + 1, samples, seed)
    return MahlerEstimate(est.value + float(stoll_number(n)) * d, est.stderr, est.samples, est.method)


# executable inequalities

SMALL = 1e-9


@dataclass
class InequalityCheck:
    name: str
    passed: bool
    slack: float
    tolerance: float
    lhs: float
    rhs: float
    exact: bool = False
    detail: Dict[str, float] = field(default_factory=dict)

    def as_dict(self):
        return {
            "name": self.name, "passed": self.passed, "slack": self.slack,
            "tolerance": self.tolerance, "lhs": self.lhs, "rhs": self.rhs, "exact": self.exact,
        }


def _mahler(f: Poly, samples: int, seed: int) -> MahlerEstimate:
    if len(f.variables_used()) <= 1:
        return mahler_univariate_exact(f)
    return mahler_torus_mc(f, samples, seed)


def _group_degrees(f: Poly, sizes: Sequence[int]) -> List[int]:
    out, start = [], 0
    for k in sizes:
        out.append(max(sum(m[start:start + k]) for m, _ in f.items()))
        start += k
    return out


def _two_sided(name, value, low, high, tol, detail=None) -> InequalityCheck:
    slack = min(value - low, high - value)
    return InequalityCheck(name, slack >= -tol, slack, tol, value, high, False, detail or {})


def _one_sided(name, lhs, rhs, tol=SMALL, exact=False) -> InequalityCheck:
    slack = rhs - lhs
    return InequalityCheck(name, slack >= -tol, slack, tol, lhs, rhs, exact)


def _max_deg(fs):
    return max(f.degree() for f in fs)


def _poly_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    import itertools

    s = len(matrix)
    total = Poly.zero(matrix[0][0].nvars)
    for perm in itertools.permutations(range(s)):
        inv = sum(1 for i in range(s) for j in range(i + 1, s) if perm[i] > perm[j])
        term = Poly.constant(-1 if inv % 2 else 1, total.nvars)
        for i, j in enumerate(perm):
            term = term * matrix[i][j]
        total = total + term
    return total


def _check_eq1(inst):
    f = inst["f"]
    est = _mahler(f, inst.get("samples", DEFAULT_SAMPLES), inst.get("seed", 0))
    gap = est.value - log_norm(f)
    b = math.log(f.nvars + 1) * f.degree()
    return _two_sided("eq1", gap, -b, b, TOLERANCE_SIGMAS * est.stderr + SMALL)


def _check_block(inst):
    f, sizes = inst["f"], inst["group_sizes"]
    if sum(sizes) != f.nvars:
        raise ValueError("group sizes do not cover the variables")
    est = _mahler(f, inst.get("samples", DEFAULT_SAMPLES), inst.get("seed", 0))
    gap = est.value - log_norm(f)
    b = sum(math.log(k + 1) * d for k, d in zip(sizes, _group_degrees(f, sizes)))
    return _two_sided("block-gap", gap, -b, b, TOLERANCE_SIGMAS * est.stderr + SMALL)


def _check_sphere(inst):
    f, r, n = inst["f"], inst["groups"], inst["group_size"]
    samples, seed = inst.get("samples", DEFAULT_SAMPLES), inst.get("seed", 0)
    torus = _mahler(f, samples, seed)
    sphere = mahler_sphere_mc(f, r, n, samples, seed + 1)
    d = max(_group_degrees(f, [n] * r))
    gap = torus.value - sphere.value
    tol = TOLERANCE_SIGMAS * math.hypot(torus.stderr, sphere.stderr) + SMALL
    return _two_sided("sphere-gap", gap, 0.0, sphere_gap_bound(r, n, d), tol)


def _heights(fs, v):
    return [local_height(f, v) for f in fs]


def _check_1a(inst):
    fs = inst["fs"]
    total = sum(fs[1:], fs[0])
    if total.is_zero():
        return _one_sided("hprod-1a", 0.0, max(_heights(fs, INF)) + math.log(len(fs)))
    return _one_sided("hprod-1a", local_height(total), max(_heights(fs, INF)) + math.log(len(fs)))


def _product(fs):
    out = fs[0]
    for f in fs[1:]:
        out = out * f
    return out


def _check_1b(inst):
    fs = inst["fs"]
    n = fs[0].nvars
    rhs = sum(_heights(fs, INF)) + math.log(n + 1) * sum(f.degree() for f in fs[:-1])
    return _one_sided("hprod-1b", local_height(_product(fs)), rhs)


def _check_1b_pair(inst):
    f, g = inst["fs"]
    n = f.nvars
    rhs = local_height(f) + local_height(g) + math.log(n + 1) * min(f.degree(), g.degree())
    return _one_sided("hprod-1b-pair", local_height(f * g), rhs)


def _compose(g: Poly, fs):
    from .exactpoly import compose
    return compose(g, fs)


def _check_1c(inst):
    g, fs = inst["g"], inst["fs"]
    n, s = fs[0].nvars, len(fs)
    comp = _compose(g, fs)
    h = max(_heights(fs, INF))
    rhs = local_height(g) + g.degree() * (h + math.log(s + 1) + math.log(n + 1) * _max_deg(fs))
    lhs = local_height(comp) if not comp.is_zero() else 0.0
    return _one_sided("hprod-1c", lhs, rhs)


def _check_1d(inst):
    fs = inst["fs"]
    n = fs[0].nvars
    lhs = sum(log_norm(f) for f in fs) - 2 * math.log(n + 1) * sum(f.degree() for f in fs)
    return _one_sided("hprod-1d", lhs, log_norm(_product(fs)))


def _padic_check(name, lhs_k: int, rhs_k: int, p: int, equality=False) -> InequalityCheck:
    lp = math.log(p)
    if equality:
        ok = lhs_k == rhs_k
        return InequalityCheck(name, ok, float((rhs_k - lhs_k) * lp), 0.0, lhs_k * lp, rhs_k * lp, True,
                               {"lhs_exponent": lhs_k, "rhs_exponent": rhs_k})
    return InequalityCheck(name, lhs_k <= rhs_k, (rhs_k - lhs_k) * lp, 0.0, lhs_k * lp, rhs_k * lp, True,
                           {"lhs_exponent": lhs_k, "rhs_exponent": rhs_k})


def _k(f, p):
    return 0 if f.is_zero() else padic_exponent(f, p)


def _check_2a(inst):
    fs, p = inst["fs"], inst["p"]
    total = sum(fs[1:], fs[0])
    return _padic_check("hprod-2a", _k(total, p), max(_k(f, p) for f in fs), p)


def _check_2b(inst):
    fs, p = inst["fs"], inst["p"]
    return _padic_check("hprod-2b", _k(_product(fs), p), sum(_k(f, p) for f in fs), p)


def _check_2c(inst):
    g, fs, p = inst["g"], inst["fs"], inst["p"]
    comp = _compose(g, fs)
    return _padic_check("hprod-2c", _k(comp, p), _k(g, p) + g.degree() * max(_k(f, p) for f in fs), p)


def _check_2d(inst):
    fs, p = inst["fs"], inst["p"]
    # log|f|_p = -min ord_p, compared as integers
    def e(f):
        return -min(ord_p(c, p) for _, c in f.items())
    return _padic_check("hprod-2d", e(_product(fs)), sum(e(f) for f in fs), p, equality=True)


def _check_det(inst):
    matrix = inst["matrix"]
    v = Place.parse(inst.get("place", INF))
    s = len(matrix)
    entries = [f for row in matrix for f in row]
    n = entries[0].nvars
    det = _poly_det(matrix)
    nonzero = [f for f in entries if not f.is_zero()]
    d = max([f.degree() for f in nonzero] + [0])
    if v.archimedean:
        h = max([local_height(f) for f in nonzero] + [0.0])
        lhs = 0.0 if det.is_zero() else local_height(det)
        return _one_sided("det", lhs, s * (h + math.log(s) + d * math.log(n + 1)))
    k = max([padic_exponent(f, v.p) for f in nonzero] + [0])
    return _padic_check("det", _k(det, v.p), s * k, v.p)


INEQUALITIES = {
    "eq1": _check_eq1,
    "block-gap": _check_block,
    "sphere-gap": _check_sphere,
    "hprod-1a": _check_1a,
    "hprod-1b": _check_1b,
    "hprod-1b-pair": _check_1b_pair,
    "hprod-1c": _check_1c,
    "hprod-1d": _check_1d,
    "hprod-2a": _check_2a,
    "hprod-2b": _check_2b,
    "hprod-2c": _check_2c,
    "hprod-2d": _check_2d,
    "det": _check_det,
}


def check_inequality(name: str, instance: dict) -> InequalityCheck:
    """Evaluate both sides of a named inequality; ``slack = rhs - lhs``.

    Monte Carlo sides widen the tolerance to 4 standard errors.  The p-adic
    items compare integer multiples of ``log p`` and carry zero tolerance.
    """
    try:
        fn = INEQUALITIES[name]
    except KeyError:
        raise ValueError(f"unknown inequality {name!r}; known: {sorted(INEQUALITIES)}") from None
    return fn(instance)
