"""Bezout certificates ``a = g_1 f_1 + ... + g_s f_s``: search, verification,
generic-position preparation, bound reports and the extremal fixtures.

Search is a bounded-degree linear solve over Q.  For a degree bound D the
unknowns are the coefficients of cofactors p_i with deg p_i <= D, ordered by
(i, grevlex monomial); the equations say that sum p_i f_i equals 1.  A rational
solution is cleared to integers by the lcm of its denominators.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import bounds as _bounds
from .bounds import LogExpr, log
from .exactlinalg import determinant, solve
from .exactpoly import Poly, evaluate, grevlex_key, parse, render, substitute_affine
from .geometry import MAX_HULL_DIM, normalized_volume, support
from .heights import coefficient_primes, padic_exponent
from .quotient import (PositiveDimensionalError, QuotientAlgebra, UnitIdealError, groebner,
                       is_radical)

PROVENANCES = ("searched", "fixture", "external")
PREPARE_RETRIES = 16

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3


class ArityError(ValueError):
    pass


class InfeasibleError(ArithmeticError):
    """No certificate up to the requested degree bound."""

    def __init__(self, message: str, degree_bound: int, common_zero: Optional[bool] = None):
        super().__init__(message)
        self.degree_bound = degree_bound
        self.common_zero = common_zero


class VerificationError(ArithmeticError):
    pass


# certificates


@dataclass(frozen=True)
class BezoutCertificate:
    n: int
    s: int
    a: int
    g: Tuple[Poly, ...]
    degree_bound: int
    provenance: str = "searched"

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("certificate constant a must be nonzero")
        if len(self.g) != self.s:
            raise ArityError(f"expected {self.s} cofactors, got {len(self.g)}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"provenance must be one of {PROVENANCES}")
        for gi in self.g:
            if gi.nvars != self.n:
                raise ArityError("cofactor in the wrong number of variables")
            if not gi.is_integral():
                raise ValueError("cofactors must have integer coefficients")

    @property
    def degree(self) -> int:
        return max((gi.degree() for gi in self.g if not gi.is_zero()), default=0)

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n, "s": self.s, "a": str(self.a),
            "g": [render(gi) for gi in self.g],
            "degree_bound": self.degree_bound, "provenance": self.provenance,
        }, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "BezoutCertificate":
        data = json.loads(text)
        try:
            n, s = int(data["n"]), int(data["s"])
            g = tuple(parse(t, n) for t in data["g"])
            return cls(n, s, int(data["a"]), g, int(data["degree_bound"]), data.get("provenance", "external"))
        except KeyError as exc:
            raise ArityError(f"certificate JSON lacks field {exc}") from None

    def combination(self, fs: Sequence[Poly]) -> Poly:
        total = Poly.zero(self.n)
        for gi, fi in zip(self.g, fs):
            total = total + gi * fi
        return total


def _system_shape(fs: Sequence[Poly]) -> Tuple[int, int, int]:
    if not fs:
        raise ArityError("empty system")
    n = fs[0].nvars
    if any(f.nvars != n for f in fs):
        raise ArityError("polynomials live in different numbers of variables")
    d = max((f.degree() for f in fs if not f.is_zero()), default=0)
    return n, len(fs), max(d, 0)


def theorem1_cap(n: int, d: int) -> int:
    return 4 * n * d ** n


def _monomials_upto(n: int, D: int) -> List[Tuple[int, ...]]:
    out = [m for m in itertools.product(range(D + 1), repeat=n) if sum(m) <= D]
    return sorted(out, key=grevlex_key)


def _solve_at_degree(fs: Sequence[Poly], D: int, column_seed: Optional[int] = None) -> Optional[List[Poly]]:
    n = fs[0].nvars
    monos = _monomials_upto(n, D)
    columns = [(i, m) for i in range(len(fs)) for m in monos]
    if column_seed is not None:
        # a different column order picks a different particular solution
        random.Random(column_seed).shuffle(columns)
    row_index: Dict[Tuple[int, ...], int] = {}
    entries: List[Dict[int, Fraction]] = []
    for col, (i, m) in enumerate(columns):
        for fm, c in fs[i].items():
            mu = tuple(a + b for a, b in zip(m, fm))
            r = row_index.get(mu)
            if r is None:
                r = row_index[mu] = len(entries)
                entries.append({})
            entries[r][col] = c
    one = (0,) * n
    if one not in row_index:
        return None
    A = [[row.get(j, 0) for j in range(len(columns))] for row in entries]
    b = [Fraction(int(mu == one)) for mu in sorted(row_index, key=row_index.get)]
    x = solve(A, b)
    if x is None:
        return None
    cof = [dict() for _ in fs]
    for (i, m), v in zip(columns, x):
        if v:
            cof[i][m] = v
    return [Poly(n, c) for c in cof]


def _clear_denominators(ps: Sequence[Poly]) -> Tuple[int, List[Poly]]:
    a = 1
    for p in ps:
        for _, c in p.items():
            a = a * c.denominator // math.gcd(a, c.denominator)
    return a, [p * a for p in ps]


def has_common_zero(fs: Sequence[Poly]) -> bool:
    """Over the algebraic closure; the reduced basis is {1} exactly when no zero exists."""
    return not groebner(fs).is_unit()


def common_zeros(fs: Sequence[Poly], seed: int = 0) -> Dict[str, object]:
    """Describe the common zero set: empty, finitely many points (numerically), or positive-dimensional."""
    gb = groebner(fs)
    if gb.is_unit():
        return {"empty": True}
    try:
        B = QuotientAlgebra(gb.generators)
    except PositiveDimensionalError:
        return {"empty": False, "dimension": "positive"}
    rng = random.Random(seed)
    n = B.nvars
    lin = Poly(n, {tuple(int(k == i) for k in range(n)): rng.randint(-10, 10) for i in range(n)})
    M = np.array([[float(x) for x in row] for row in B.mult(lin)])
    _, vecs = np.linalg.eig(M.T)
    X = [np.array([float(x) for x in B.coords(Poly.var(i, n))]) for i in range(n)]
    points = []
    for k in range(vecs.shape[1]):
        phi = vecs[:, k] / vecs[0, k]
        points.append([complex(phi @ X[i]) for i in range(n)])
    return {"empty": False, "dimension": 0, "algebra_dimension": B.dim, "points": points}


def certificate_search(fs: Sequence[Poly], degree_bound: Optional[int] = None,
                       strategy: str = "minimal-first", column_seed: Optional[int] = None) -> BezoutCertificate:
    """Smallest cofactor degree (or exactly ``degree_bound`` for strategy "fixed") with a solution.

    Columns are ordered by (i, grevlex monomial) and free unknowns set to 0;
    ``column_seed`` shuffles the columns to reach other solutions.
    """
    n, s, d = _system_shape(fs)
    cap = theorem1_cap(n, d) if d > 0 else 0
    limit = cap if degree_bound is None else degree_bound
    if limit < 0:
        raise ValueError("degree bound must be nonnegative")
    if all(f.is_zero() for f in fs):
        raise InfeasibleError("all polynomials are zero", limit, True)
    if has_common_zero(fs):
        raise InfeasibleError("the system has a common zero; no certificate exists", limit, True)
    if strategy == "minimal-first":
        degrees = range(limit + 1)
    elif strategy == "fixed":
        degrees = [limit]
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    for D in degrees:
        ps = _solve_at_degree(fs, D, column_seed)
        if ps is not None:
            a, gs = _clear_denominators(ps)
            return BezoutCertificate(n, s, a, tuple(gs), D, "searched")
    if degree_bound is None or degree_bound >= cap:
        raise ArithmeticError(f"no certificate at the guaranteed cap {cap}; internal error")
    raise InfeasibleError(f"no certificate with cofactor degree <= {limit}", limit, False)


# heights of systems and certificates


def poly_height(f: Poly) -> LogExpr:
    """Exact global height of the coefficient vector of ``f``."""
    arch = max(abs(c) for _, c in f.items())
    h = log(arch) if arch > 1 else LogExpr()
    for p in coefficient_primes([f]):
        k = padic_exponent(f, p)
        if k:
            h = h + log(p) * k
    return h


def system_height(fs: Sequence[Poly]) -> LogExpr:
    return max((poly_height(f) for f in fs if not f.is_zero()), key=float, default=LogExpr())


def certificate_height(cert: BezoutCertificate) -> LogExpr:
    """``h(a, g_1, ..., g_s)`` for integer data: log of the largest absolute value."""
    big = abs(cert.a)
    for gi in cert.g:
        for _, c in gi.items():
            big = max(big, abs(int(c)))
    return log(big) if big > 1 else LogExpr()


# bounds


@dataclass
class IntrinsicParams:
    delta: int
    eta: LogExpr
    source: str

    def __post_init__(self):
        if self.delta < 1:
            raise ValueError("delta must be at least 1")
        if float(self.eta) < 0:
            raise ValueError("eta must be nonnegative")


def intrinsic_params(fs: Sequence[Poly], mode: str = "lemma_dn", delta: int = None, eta=None) -> IntrinsicParams:
    n, s, d = _system_shape(fs)
    h = system_height(fs)
    if mode == "user":
        if delta is None or eta is None:
            raise ValueError("user mode needs delta and eta")
        return IntrinsicParams(int(delta), LogExpr.coerce(eta), "user")
    if mode == "lemma_dn":
        rep = _bounds.bound_calculators("lemma-dn", {"n": n, "h": h, "di": [f.degree() for f in fs]})
        return IntrinsicParams(int(rep.extra["delta"]), rep.extra["eta"], "lemma_dn")
    if mode == "lemma_sparse":
        vol = system_volume(fs)
        rep = _bounds.bound_calculators("cota-esparsa", {"n": n, "s": s, "d": d, "h": h, "vol": vol})
        return IntrinsicParams(int(rep.extra["delta"]), rep.extra["eta"], "lemma_sparse")
    raise ValueError(f"unknown mode {mode!r}")


def system_volume(fs: Sequence[Poly]) -> int:
    """Normalized volume of the supports of 1, x_1..x_n, f_1..f_s together."""
    return normalized_volume(support(fs, include_affine_frame=True))


@dataclass
class BoundCheck:
    report: _bounds.BoundReport
    degree_ok: Optional[bool] = None
    height_ok: Optional[bool] = None

    def as_dict(self):
        out = self.report.as_dict()
        if self.degree_ok is not None:
            out["degree_ok"] = self.degree_ok
        if self.height_ok is not None:
            out["height_ok"] = self.height_ok
        return out


def report_all_bounds(fs: Sequence[Poly], cert: Optional[BezoutCertificate] = None,
                      params: Optional[IntrinsicParams] = None) -> Dict[str, BoundCheck]:
    """Every bound that applies to the system, with pass/fail when a certificate is given.

    Height comparisons are reports: the theorems assert that some bounded
    certificate exists, not that every certificate is bounded.
    """
    n, s, d = _system_shape(fs)
    h = system_height(fs)
    reports: Dict[str, _bounds.BoundReport] = {}
    reports["theorem1"] = _bounds.bound_calculators("theorem1", {"n": n, "d": d, "s": s, "h": h})
    if params is None:
        params = intrinsic_params(fs, "lemma_dn")
    reports["theorem2"] = _bounds.bound_calculators(
        "theorem2", {"n": n, "d": d, "s": s, "h": h, "delta": params.delta, "eta": params.eta})
    if n <= MAX_HULL_DIM:
        reports["cor3"] = _bounds.bound_calculators(
            "cor3", {"n": n, "d": d, "s": s, "h": h, "vol": system_volume(fs)})
    if d == 1:
        reports["lemma-d1"] = _bounds.bound_calculators("lemma-d1", {"n": n, "h": h})
    if n == 1:
        reports["lemma-n1"] = _bounds.bound_calculators("lemma-n1", {"d": d, "h": h})
    out = {}
    for name, rep in reports.items():
        chk = BoundCheck(rep)
        if cert is not None:
            if rep.degree_bound is not None:
                chk.degree_ok = cert.degree <= rep.degree_bound
            if rep.height_bound is not None:
                chk.height_ok = float(certificate_height(cert)) <= float(rep.height_bound) + 1e-12
        out[name] = chk
    return out


@dataclass
class VerifyReport:
    identity: bool
    degree: int
    height: LogExpr
    bounds: Dict[str, BoundCheck] = field(default_factory=dict)
    extra: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.identity

    def as_dict(self):
        return {
            "identity": self.identity,
            "degree": self.degree,
            "height": {"exact": str(self.height), "value": float(self.height)},
            "bounds": {k: v.as_dict() for k, v in sorted(self.bounds.items())},
            "note": "bound comparisons are reports; only the identity is a hard check",
            **{k: v for k, v in sorted(self.extra.items())},
        }


def certificate_verify(cert: BezoutCertificate, fs: Sequence[Poly], strict: bool = False,
                       with_bounds: bool = True) -> VerifyReport:
    n, s, d = _system_shape(fs)
    if cert.n != n or cert.s != s:
        raise ArityError(f"certificate is for n={cert.n}, s={cert.s}; system has n={n}, s={s}")
    identity = cert.combination(fs) == Poly.constant(cert.a, n)
    rep = VerifyReport(identity, cert.degree, certificate_height(cert))
    if with_bounds:
        rep.bounds = report_all_bounds(fs, cert)
    if strict and not identity:
        raise VerificationError("a != sum g_i f_i")
    return rep


# fixtures


def _x(i: int, n: int) -> Poly:
    return Poly.var(i - 1, n)


def _geometric_sum(i: int, n: int, d: int) -> Poly:
    """``(x_i^d - 1)/(x_i - 1) = 1 + x_i + ... + x_i^(d-1)``."""
    total = Poly.zero(n)
    for k in range(d):
        total = total + _x(i, n) ** k
    return total


def fixture_geometric(n: int, d: int, H: int) -> Tuple[List[Poly], BezoutCertificate]:
    """``x1 - 1, x2 - x1^d, ..., xn - x_{n-1}^d, H - xn^d`` with its closed-form certificate."""
    if d < 1 or H < 2 or n < 1:
        raise ValueError("need n >= 1, d >= 1, H >= 2")
    fs = [_x(1, n) - 1]
    fs += [_x(i, n) - _x(i - 1, n) ** d for i in range(2, n + 1)]
    fs.append(Poly.constant(H, n) - _x(n, n) ** d)
    gs = []
    for k in range(1, n + 1):
        g = Poly.constant(1, n)
        for j in range(k, n + 1):
            g = g * _geometric_sum(j, n, d)
        gs.append(g)
    gs.append(Poly.constant(1, n))
    cert = BezoutCertificate(n, n + 1, H - 1, tuple(gs), n * (d - 1), "fixture")
    return fs, cert


def fixture_masser_philippon(n: int, d: int, H: int) -> List[Poly]:
    """``x1^d, x1 xn^(d-1) - x2^d, ..., x_{n-1} xn^(d-1) - H``."""
    if n < 2 or d < 2:
        raise ValueError("need n >= 2, d >= 2")
    fs = [_x(1, n) ** d]
    tail = _x(n, n) ** (d - 1)
    for i in range(2, n):
        fs.append(_x(i - 1, n) * tail - _x(i, n) ** d)
    fs.append(_x(n - 1, n) * tail - H)
    return fs


def fixture_dnh(n: int, d: int, H: int) -> List[Poly]:
    """``x1 - H, x2 - x1^d, ..., xn - x_{n-1}^d, xn^d``."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1, d >= 1")
    fs = [_x(1, n) - H]
    fs += [_x(i, n) - _x(i - 1, n) ** d for i in range(2, n + 1)]
    fs.append(_x(n, n) ** d)
    return fs


def fixture_sparse(n: int, d: int, s: int, seed: int = 0, coeff_range: int = 5) -> List[Poly]:
    """Random ``a_0 + sum a_j x_j + sum_k b_k (x1...xn)^k`` with k <= d."""
    rng = random.Random(seed)
    out = []
    for _ in range(s):
        terms = {(0,) * n: rng.randint(-coeff_range, coeff_range)}
        for j in range(n):
            terms[tuple(int(i == j) for i in range(n))] = rng.randint(-coeff_range, coeff_range)
        for k in range(1, d + 1):
            terms[(k,) * n] = terms.get((k,) * n, 0) + rng.choice([c for c in range(-coeff_range, coeff_range + 1) if c])
        out.append(Poly(n, terms))
    return out


@dataclass
class WitnessCheck:
    divisor: int
    divisible: bool
    specialized_a: int
    height_lower: float
    height_ok: bool
    extra: Dict[str, object] = field(default_factory=dict)

    def as_dict(self):
        return {"divisor": str(self.divisor), "divisible": self.divisible,
                "specialized_a": str(self.specialized_a), "height_lower": self.height_lower,
                "height_ok": self.height_ok, **self.extra}


def check_dnh_witness(cert: BezoutCertificate, n: int, d: int, H: int) -> WitnessCheck:
    """Evaluate at (H, H^d, ..., H^(d^(n-1))): a = g_{n+1}(point) H^(d^n)."""
    point = [Fraction(H ** (d ** k)) for k in range(n)]
    value = evaluate(cert.g[n], point)
    divisor = H ** (d ** n)
    spec = value * divisor
    if spec.denominator != 1 or int(spec) != cert.a:
        raise VerificationError("specialization does not reproduce a; certificate is not for this system")
    lower = d ** n * math.log(H)
    return WitnessCheck(divisor, cert.a % divisor == 0, int(spec), lower,
                        math.log(abs(cert.a)) >= lower - 1e-12)


def check_masser_philippon_witness(cert: BezoutCertificate, n: int, d: int, H: int) -> WitnessCheck:
    """Specialize along x_i = H^(d^(n-1-i)) t^(d^(n-i)-1), x_n = 1/t; a = g_1(...) H^(d^(n-1)) t^(d^n-d)."""
    shift = d ** n - d
    laurent: Dict[int, int] = {}
    for m, c in cert.g[0].items():
        coeff = int(c)
        texp = -m[n - 1]
        for i in range(1, n):
            coeff *= H ** (d ** (n - 1 - i) * m[i - 1])
            texp += (d ** (n - i) - 1) * m[i - 1]
        laurent[texp] = laurent.get(texp, 0) + coeff
    divisor = H ** (d ** (n - 1))
    product = {e + shift: c * divisor for e, c in laurent.items() if c}
    const = product.get(0, 0)
    if any(c for e, c in product.items() if e != 0) or const != cert.a:
        raise VerificationError("specialization does not reproduce a; certificate is not for this system")
    lower = d ** (n - 1) * math.log(H)
    deg_g1 = cert.g[0].degree() if not cert.g[0].is_zero() else 0
    return WitnessCheck(divisor, cert.a % divisor == 0, const, lower,
                        math.log(abs(cert.a)) >= lower - 1e-12,
                        {"deg_g1": deg_g1, "deg_g1_lower": shift, "deg_g1_ok": deg_g1 >= shift})


# preparation


@dataclass
class PreparedSystem:
    combination: List[List[int]]
    coordinate_matrix: List[List[int]]
    coordinate_shift: List[int]
    polys: List[Poly]
    t: int
    entry_cap: LogExpr
    attempts: int
    stages: List[Dict[str, object]] = field(default_factory=list)

    def as_dict(self):
        return {
            "t": self.t,
            "combination": [[str(x) for x in row] for row in self.combination],
            "coordinate_matrix": [[str(x) for x in row] for row in self.coordinate_matrix],
            "coordinate_shift": [str(x) for x in self.coordinate_shift],
            "polys": [render(q) for q in self.polys],
            "entry_cap": {"exact": str(self.entry_cap), "value": float(self.entry_cap)},
            "attempts": self.attempts,
            "stages": self.stages,
        }

    def entries_within_cap(self) -> bool:
        cap = float(self.entry_cap)
        entries = [x for row in self.combination for x in row]
        entries += [x for row in self.coordinate_matrix for x in row] + list(self.coordinate_shift)
        return all(x == 0 or math.log(abs(x)) <= cap + 1e-12 for x in entries)


class PreparationError(RuntimeError):
    pass


def _fiber(qs: Sequence[Poly], n: int, r: int, values: Sequence[int]) -> List[Poly]:
    """Fix the last ``r`` variables to ``values``; the result lives in the first n - r."""
    k = n - r
    out = []
    for q in qs:
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for m, c in q.items():
            v = c
            for e, val in zip(m[k:], values):
                v *= Fraction(val) ** e
            if v:
                key = m[:k]
                terms[key] = terms.get(key, 0) + v
        out.append(Poly(k, terms))
    return out


def _validate_stages(qs: Sequence[Poly], n: int, rng: random.Random) -> Tuple[bool, List[Dict[str, object]]]:
    """For each i <= n the first i polynomials must be finite over the last n - i coordinates.

    Checked on the fiber over 0: zero-dimensional, radical, and of the same
    cardinality as the fiber over a random point.  An empty fiber everywhere
    means the variety is already empty and validation stops.
    """
    stages = []
    for i in range(1, min(len(qs), n) + 1):
        r = n - i
        fib0 = [f for f in _fiber(qs[:i], n, r, [0] * r)]
        rand = [rng.randint(-50, 50) for _ in range(r)]
        fibr = [f for f in _fiber(qs[:i], n, r, rand)]
        stage = {"i": i, "parameters": r}
        if all(f.is_zero() for f in fib0):
            stage["failed"] = "fiber over 0 is the whole space"
            stages.append(stage)
            return False, stages
        try:
            B0 = QuotientAlgebra([f for f in fib0 if not f.is_zero()])
        except UnitIdealError:
            empty_generic = not has_common_zero([f for f in fibr if not f.is_zero()] or [Poly.zero(i)])
            if empty_generic:
                stage["empty"] = True
                stages.append(stage)
                return True, stages
            stage["failed"] = "fiber over 0 is empty but the generic fiber is not"
            stages.append(stage)
            return False, stages
        except PositiveDimensionalError:
            stage["failed"] = "fiber over 0 is not finite (projection not in Noether position)"
            stages.append(stage)
            return False, stages
        stage["fiber_dimension"] = B0.dim
        if not is_radical(B0, seed=rng.randint(0, 2 ** 31)):
            stage["failed"] = "fiber over 0 is not radical"
            stages.append(stage)
            return False, stages
        try:
            Br = QuotientAlgebra([f for f in fibr if not f.is_zero()])
            generic = Br.dim
        except (UnitIdealError, PositiveDimensionalError):
            generic = None
        stage["generic_fiber_dimension"] = generic
        if generic != B0.dim:
            stage["failed"] = "fiber over 0 and a generic fiber have different cardinality"
            stages.append(stage)
            return False, stages
        stages.append(stage)
    return True, stages


def prepare_system(fs: Sequence[Poly], seed: int = 0, retries: int = PREPARE_RETRIES,
                   entry_range: int = 9) -> PreparedSystem:
    """Integer combinations and an integer affine coordinate change putting the system in generic position.

    The unmodified system is tried first when no combination is needed.
    Entries are drawn from [-entry_range, entry_range] intersected with the
    cap exp(2(n+1) log(d+1)).
    """
    n, s, d = _system_shape(fs)
    t = min(n + 1, s)
    cap = log(d + 1) * (2 * (n + 1))
    R = min(entry_range, (d + 1) ** (2 * (n + 1)))
    rng = random.Random(seed)
    last = None
    for attempt in range(retries):
        if attempt == 0 and t == s:
            A = [[int(i == j) for j in range(s)] for i in range(t)]
            Bm = [[int(i == j) for j in range(n)] for i in range(n)]
            b = [0] * n
        else:
            A = [[rng.randint(-R, R) for _ in range(s)] for _ in range(t)]
            Bm = [[rng.randint(-R, R) for _ in range(n)] for _ in range(n)]
            b = [rng.randint(-R, R) for _ in range(n)]
            if determinant(Bm) == 0:
                # keep the last real validation failure for the report
                last = last or [{"failed": "singular coordinate change"}]
                continue
        moved = [substitute_affine(f, Bm, b) for f in fs]
        qs = []
        for row in A:
            q = Poly.zero(n)
            for a, f in zip(row, moved):
                if a:
                    q = q + f * a
            qs.append(q)
        ok, stages = _validate_stages(qs, n, rng)
        if ok:
            return PreparedSystem(A, Bm, b, qs, t, cap, attempt + 1, stages)
        last = stages
    failing = last[-1].get("failed") if last else "unknown"
    raise PreparationError(f"preparation failed after {retries} attempts: {failing}")
