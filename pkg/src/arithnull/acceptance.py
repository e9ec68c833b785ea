"""Acceptance criteria 1 to 9 as deterministic functions.

Each criterion returns a ``Criterion`` whose ``details`` contain only values
that are reproducible from the seed; wall-clock times are kept separately so
the JSON stays byte-identical across runs.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Dict, List

from . import bounds, geometry, heights, nullsatz, quotient
from .exactpoly import Poly, render

MC_SAMPLES = 200000
SUITE_SAMPLES = MC_SAMPLES


@dataclass
class Criterion:
    number: int
    name: str
    passed: bool
    details: Dict[str, object] = field(default_factory=dict)
    seconds: float = 0.0
    budget: float = 0.0

    def as_dict(self):
        return {"criterion": self.number, "name": self.name, "passed": self.passed, "details": self.details}


def _rand_poly(rng: random.Random, n: int, d: int, coeff: int = 5, terms: int = 4, denominators=(1,)) -> Poly:
    out = {}
    for _ in range(terms):
        k = rng.randint(0, d)
        mono = [0] * n
        for _ in range(k):
            mono[rng.randrange(n)] += 1
        c = Fraction(rng.randint(-coeff, coeff), rng.choice(denominators))
        out[tuple(mono)] = out.get(tuple(mono), 0) + c
    f = Poly(n, out)
    return f if not f.is_zero() else Poly.constant(1, n)


# 1


def criterion_geometric() -> Criterion:
    cases = []
    ok = True
    for n in (1, 2):
        for d in (2, 3):
            for H in (3, 5):
                t0 = time.perf_counter()
                fs, cert = nullsatz.fixture_geometric(n, d, H)
                cert = nullsatz.BezoutCertificate.from_json(cert.to_json())
                rep = nullsatz.certificate_verify(cert, fs, with_bounds=False)
                bound = bounds.bound_calculators("geometric-example", {"n": n, "d": d, "h": bounds.log(H)})
                height_ok = float(rep.height) <= float(bound.height_bound)
                fast = time.perf_counter() - t0 < 1.0
                case_ok = rep.identity and cert.degree <= n * (d - 1) and height_ok and fast
                ok &= case_ok
                cases.append({"n": n, "d": d, "H": H, "a": str(cert.a), "identity": rep.identity,
                              "degree": cert.degree, "height": str(rep.height),
                              "height_bound": str(bound.height_bound), "passed": case_ok})
    return Criterion(1, "geometric fixture reproduction", ok, {"cases": cases})


# 2


def criterion_witnesses(alternatives: int = 4) -> Criterion:
    out = {}
    ok = True
    fs = nullsatz.fixture_dnh(2, 2, 3)
    certs = [nullsatz.certificate_search(fs, column_seed=k) for k in [None] + list(range(1, alternatives + 1))]
    dnh = []
    for c in certs:
        w = nullsatz.check_dnh_witness(c, 2, 2, 3)
        dnh.append({"a": str(c.a), "degree": c.degree_bound, "divisible_by_81": w.divisible, "height_ok": w.height_ok})
        ok &= w.divisible and w.height_ok and w.divisor == 81
    out["dnh"] = dnh
    fs = nullsatz.fixture_masser_philippon(2, 2, 3)
    certs = [nullsatz.certificate_search(fs, column_seed=k) for k in [None] + list(range(1, alternatives + 1))]
    mp = []
    for c in certs:
        w = nullsatz.check_masser_philippon_witness(c, 2, 2, 3)
        mp.append({"a": str(c.a), "degree": c.degree_bound, "divisible_by_9": w.divisible,
                   "deg_g1_ok": w.extra["deg_g1_ok"]})
        ok &= w.divisible and w.divisor == 9
    out["masser_philippon"] = mp
    return Criterion(2, "lower-bound witnesses", ok, out)


# 3


def fixture_grid():
    for n in (1, 2):
        for d in (1, 2, 3):
            for H in (2, 3, 16):
                yield "geo", n, d, H, nullsatz.fixture_geometric(n, d, H)[0]
                yield "dnh", n, d, H, nullsatz.fixture_dnh(n, d, H)
                if n >= 2 and d >= 2:
                    yield "mp", n, d, H, nullsatz.fixture_masser_philippon(n, d, H)


def criterion_search_cap() -> Criterion:
    cases = []
    ok = True
    for fam, n, d, H, fs in fixture_grid():
        cap = nullsatz.theorem1_cap(n, d)
        cert = nullsatz.certificate_search(fs, degree_bound=cap)
        rep = nullsatz.certificate_verify(cert, fs)
        deg_ok = rep.bounds["theorem1"].degree_ok
        case_ok = rep.identity and cert.degree_bound <= cap and bool(deg_ok)
        ok &= case_ok
        cases.append({"family": fam, "n": n, "d": d, "H": H, "found_at": cert.degree_bound, "cap": cap,
                      "passed": case_ok})
    return Criterion(3, "search-at-cap completeness", ok, {"cases": cases})


# 4


def criterion_mahler(count: int = 25, seed: int = 0) -> Criterion:
    x = Poly.var(0, 1)
    ok = True
    exact_checks = {}
    m = heights.mahler_univariate_exact(x - 2).value
    exact_checks["x-2"] = abs(m - math.log(2)) < 1e-9
    cyclo = (x - 1) * (x + 1) * (x ** 2 + x + 1) * (x ** 2 + 1) * (x ** 4 + x ** 3 + x ** 2 + x + 1) * (x + 1)
    exact_checks["cyclotomic"] = abs(heights.mahler_univariate_exact(cyclo).value) < 1e-9
    ok &= all(exact_checks.values())
    rng = random.Random(seed)
    worst = 0.0
    rows = []
    for k in range(count):
        d = rng.randint(1, 6)
        coeffs = [rng.randint(-9, 9) for _ in range(d)] + [rng.choice([c for c in range(-9, 10) if c])]
        f = Poly(1, {(i,): c for i, c in enumerate(coeffs)})
        exact = heights.mahler_univariate_exact(f)
        mc = heights.mahler_torus_mc(f, MC_SAMPLES, 0)
        z = abs(mc.value - exact.value) / mc.stderr if mc.stderr else 0.0
        worst = max(worst, z)
        rows.append({"f": render(f), "sigmas": round(z, 6)})
        ok &= z <= heights.TOLERANCE_SIGMAS
    return Criterion(4, "Mahler exactness", ok,
                     {"exact": exact_checks, "worst_sigmas": round(worst, 6), "polys": rows})


# 5


def _instance(name: str, rng: random.Random, k: int) -> dict:
    seed = k
    if name == "eq1":
        n = rng.randint(1, 3)
        return {"f": _rand_poly(rng, n, 3), "samples": SUITE_SAMPLES, "seed": seed}
    if name == "block-gap":
        sizes = rng.choice([[1, 1], [2, 1], [1, 2], [1, 1, 1]])
        return {"f": _rand_poly(rng, sum(sizes), 3), "group_sizes": sizes, "samples": SUITE_SAMPLES, "seed": seed}
    if name == "sphere-gap":
        r, n = rng.choice([(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)])
        return {"f": _rand_poly(rng, r * n, 3), "groups": r, "group_size": n, "samples": SUITE_SAMPLES,
                "seed": seed}
    n = rng.randint(1, 3)
    if name in ("hprod-1a", "hprod-1b", "hprod-1d"):
        return {"fs": [_rand_poly(rng, n, 3, coeff=9) for _ in range(rng.randint(2, 4))]}
    if name == "hprod-1b-pair":
        return {"fs": [_rand_poly(rng, n, 3, coeff=9) for _ in range(2)]}
    if name == "hprod-1c":
        s = rng.randint(1, 3)
        return {"g": _rand_poly(rng, s, 2, coeff=9), "fs": [_rand_poly(rng, n, 2, coeff=9) for _ in range(s)]}
    p = rng.choice([2, 3, 5])
    dens = (1, p, p * p, 7)
    if name in ("hprod-2a", "hprod-2b", "hprod-2d"):
        return {"fs": [_rand_poly(rng, n, 3, coeff=9, denominators=dens) for _ in range(rng.randint(2, 4))], "p": p}
    if name == "hprod-2c":
        s = rng.randint(1, 3)
        return {"g": _rand_poly(rng, s, 2, coeff=9, denominators=dens),
                "fs": [_rand_poly(rng, n, 2, coeff=9, denominators=dens) for _ in range(s)], "p": p}
    if name == "det":
        s = rng.randint(1, 3)
        place = rng.choice(["inf", str(p)])
        return {"matrix": [[_rand_poly(rng, n, 2, coeff=9, denominators=dens) for _ in range(s)] for _ in range(s)],
                "place": place}
    raise ValueError(name)


def criterion_inequalities(instances: int = 100, seed: int = 0) -> Criterion:
    ok = True
    summary = {}
    for name in heights.INEQUALITIES:
        rng = random.Random(f"{seed}:{name}")
        violations = 0
        min_slack = math.inf
        for k in range(instances):
            chk = heights.check_inequality(name, _instance(name, rng, k))
            violations += not chk.passed
            min_slack = min(min_slack, chk.slack)
        summary[name] = {"instances": instances, "violations": violations, "min_slack": round(min_slack, 9)}
        ok &= violations == 0
    return Criterion(5, "inequality suite", ok, summary)


# 6


def criterion_points(count: int = 10, seed: int = 0) -> Criterion:
    rng = random.Random(seed)
    ok = True
    rows = []
    for k in range(count):
        n = rng.randint(1, 2)
        xi = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n))
        est = heights.height_point_variety_mc([xi], MC_SAMPLES, k)
        target = 0.5 * math.log(1 + sum(float(c) ** 2 for c in xi))
        z = abs(est.value - target) / est.stderr
        rows.append({"point": [str(c) for c in xi], "sigmas": round(z, 6)})
        ok &= z <= heights.TOLERANCE_SIGMAS
    return Criterion(6, "sphere/point consistency", ok, {"points": rows})


# 7


def criterion_volume_ce() -> Criterion:
    ok = True
    vols = {}
    for n in (1, 2, 3):
        for d in (1, 2, 3):
            pts = [(0,) * n] + [tuple(int(i == j) for i in range(n)) for j in range(n)]
            pts += [(k,) * n for k in range(1, d + 1)]
            v = geometry.normalized_volume(geometry.SupportSet.of(pts))
            vols[f"{n},{d}"] = v
            ok &= v == n * d
    ce = {}
    for d in (1, 2, 3):
        A = geometry.SupportSet.of([(k,) for k in range(d + 1)])
        spec, checks, ratio = geometry.ce_divisibility(A, trials=5, seed=0)
        counts = spec.row_symbol_counts()
        vol = geometry.normalized_volume(A)
        r = 1
        row = {
            "order": spec.order,
            "entries_per_row": sorted(set(counts)),
            "order_le_bound": spec.order <= 2 ** (2 * r) * vol,
            "ratios": [str(c.ratio) for c in checks],
            "consistent_ratio": None if ratio is None else str(ratio),
        }
        case_ok = (spec.order == 2 * d and all(c == d + 1 for c in counts) and row["order_le_bound"]
                   and len(checks) == 5 and all(c.ratio.denominator == 1 and abs(c.ratio) >= 1 for c in checks)
                   and all(abs(c.det) == abs(c.resultant * c.ratio) for c in checks))
        row["passed"] = case_ok
        ok &= case_ok
        ce[str(d)] = row
    return Criterion(7, "volume and CE matrix", ok, {"volumes": vols, "ce": ce})


# 8


def _random_square_system(rng: random.Random):
    shapes = [(2,), (3,), (5,), (2, 2), (2, 3), (3, 3), (2, 2, 2), (2, 2, 3), (3, 4)]
    degs = rng.choice(shapes)
    n = len(degs)
    fs = []
    for d in degs:
        f = _rand_poly(rng, n, d, coeff=4, terms=5)
        lead = [0] * n
        lead[len(fs)] = d
        fs.append(f + Poly.monomial(tuple(lead), rng.choice([1, 2, -1])))
    return fs


def _check_algebra(fs, rng: random.Random, samples: int = 20) -> Dict[str, bool]:
    B = quotient.quotient_algebra(fs)
    n = B.nvars
    res = {}
    tables = B.mult_tables
    from .exactlinalg import matmul
    res["commute"] = all(matmul(tables[i], tables[j]) == matmul(tables[j], tables[i])
                         for i in range(n) for j in range(i))
    f = _rand_poly(rng, n, 2)
    g = _rand_poly(rng, n, 2)
    res["cayley_hamilton"] = not any(any(row) for row in quotient.cayley_hamilton_residual(B, f))
    res["norm_multiplicative"] = B.norm(f * g) == B.norm(f) * B.norm(g)
    res["trace_additive"] = B.trace(f + g) == B.trace(f) + B.trace(g)
    td = quotient.pseudo_jacobian(fs)
    res["telescoping"] = all(r.is_zero() for r in quotient.telescoping_residual(fs, td))
    sigma = quotient.tate_trace(B, td)
    gs = [_rand_poly(rng, n, 3) for _ in range(samples)]
    checks = quotient.trace_checks(sigma, fs, gs)
    res.update(checks)
    # division: pick a divisor that is a unit in B and a multiple as dividend
    for _ in range(10):
        f = _rand_poly(rng, n, 1) + rng.randint(1, 5)
        try:
            h = _rand_poly(rng, n, 2)
            div = quotient.divide_trace_formula(B, td, f, f * h)
            res["division"] = div.identity and div.deg_x <= div.deg_x_bound
            break
        except quotient.DivisionError:
            continue
    else:
        res["division"] = False
    return {"dimension": B.dim, **res}


def criterion_quotient(count: int = 10, seed: int = 0) -> Criterion:
    from .exactpoly import parse
    rng = random.Random(seed)
    systems = [[parse("x1^2 - 2")], [parse("x1^2 - 1", 2), parse("x2^2 - 1", 2)]]
    while len(systems) < count + 2:
        fs = _random_square_system(rng)
        try:
            B = quotient.quotient_algebra(fs)
        except (quotient.UnitIdealError, quotient.PositiveDimensionalError):
            continue
        if B.dim > 12 or B.dim < 2 or not quotient.is_radical(B):
            continue
        systems.append(fs)
    ok = True
    rows = []
    for fs in systems:
        res = _check_algebra(fs, rng)
        passed = all(v for k, v in res.items() if k != "dimension")
        ok &= passed
        rows.append({"system": [render(f) for f in fs], **res})
    return Criterion(8, "quotient and trace suite", ok, {"algebras": rows})


# 9


def bound_table() -> List[dict]:
    text = resources.files("arithnull").joinpath("data/bound_table.json").read_text()
    return json.loads(text)


def criterion_bounds() -> Criterion:
    ok = True
    mismatches = []
    rows = bound_table()
    for row in rows:
        rep = bounds.bound_calculators(row["statement"], row["inputs"])
        good = True
        if "degree_bound" in row:
            good &= rep.degree_bound is not None and Fraction(rep.degree_bound) == Fraction(row["degree_bound"])
        if "height_bound" in row:
            good &= rep.height_bound == bounds.parse_logexpr(row["height_bound"])
        if not good:
            mismatches.append({"statement": row["statement"], "inputs": row["inputs"]})
        ok &= good
    statements = sorted({r["statement"] for r in rows})
    return Criterion(9, "bound-calculator regression", ok,
                     {"rows": len(rows), "statements": statements, "mismatches": mismatches})


CRITERIA: Dict[int, Callable[[], Criterion]] = {
    1: criterion_geometric,
    2: criterion_witnesses,
    3: criterion_search_cap,
    4: criterion_mahler,
    5: criterion_inequalities,
    6: criterion_points,
    7: criterion_volume_ce,
    8: criterion_quotient,
    9: criterion_bounds,
}

BUDGETS = {1: 8.0, 2: 30.0, 3: 120.0, 8: 60.0}


def run(selected=None) -> List[Criterion]:
    out = []
    for k, fn in CRITERIA.items():
        if selected and k not in selected:
            continue
        t0 = time.perf_counter()
        c = fn()
        c.seconds = time.perf_counter() - t0
        c.budget = BUDGETS.get(k, 0.0)
        if c.budget and c.seconds > c.budget:
            c.passed = False
            c.details["over_budget"] = True
        out.append(c)
    return out
