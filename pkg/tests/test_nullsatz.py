import math
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy

from arithnull import bounds
from arithnull.exactpoly import Poly, evaluate
from arithnull.nullsatz import (ArityError, BezoutCertificate, InfeasibleError, PreparationError,
                                VerificationError, certificate_height, certificate_search, certificate_verify,
                                check_dnh_witness, check_masser_philippon_witness, common_zeros,
                                fixture_dnh, fixture_geometric, fixture_masser_philippon, fixture_sparse,
                                intrinsic_params, prepare_system, report_all_bounds, system_height,
                                system_volume, theorem1_cap)

from conftest import P, S


def sympy_feasible(fs, D):
    """Independent oracle: is 1 in the span of {m f_i : deg m <= D}?"""
    n = fs[0].nvars
    xs = sympy.symbols(f"x1:{n + 1}")
    monos = [m for m in sympy.itermonomials(xs, D)]
    unknowns, expr = [], 0
    for i, f in enumerate(fs):
        fe = sum(c * sympy.prod([v ** e for v, e in zip(xs, m)]) for m, c in f.items())
        for k, m in enumerate(monos):
            u = sympy.Symbol(f"u_{i}_{k}")
            unknowns.append(u)
            expr += u * m * fe
    eqs = sympy.Poly(sympy.expand(expr - 1), *xs).coeffs()
    return bool(sympy.linsolve(eqs, unknowns))


def test_search_examples():
    fs = S("x1", "x1 + 1")
    cert = certificate_search(fs)
    assert (cert.a, cert.degree_bound) == (1, 0)
    assert list(cert.g) == S("-1", "1", n=1)
    cert = certificate_search(S("x1 - 1", "x1 + 1"))
    assert cert.a == 2 and list(cert.g) == S("-1", "1", n=1)


def test_search_opening_family():
    fs = S("x1 - 1", "x2 - x1^2", "3 - x2^2")
    cert = certificate_search(fs)
    assert cert.degree_bound <= theorem1_cap(2, 2)
    assert certificate_verify(cert, fs).identity


def test_search_minimal_degree_matches_oracle():
    rng = random.Random(5)
    for fam, fs in [("mp", fixture_masser_philippon(2, 2, 3)), ("dnh", fixture_dnh(1, 2, 2)),
                    ("geo", fixture_geometric(2, 2, 3)[0])]:
        cert = certificate_search(fs)
        D = cert.degree_bound
        assert sympy_feasible(fs, D), fam
        if D > 0:
            assert not sympy_feasible(fs, D - 1), fam


def test_degree_monotonicity():
    fs = fixture_masser_philippon(2, 2, 2)
    D = certificate_search(fs).degree_bound
    for extra in (0, 1, 2):
        cert = certificate_search(fs, D + extra, strategy="fixed")
        assert certificate_verify(cert, fs).identity
    with pytest.raises(InfeasibleError) as info:
        certificate_search(fs, D - 1)
    assert info.value.common_zero is False


def test_infeasible_with_common_zero():
    fs = S("x1^2 - 1", "x1*x2 - x2", "x2^2 + x1 - 1")
    with pytest.raises(InfeasibleError) as info:
        certificate_search(fs)
    assert info.value.common_zero is True
    z = common_zeros(fs)
    assert z["empty"] is False and z["dimension"] == 0
    for pt in z["points"]:
        vals = [complex(sum(complex(c) * np.prod([p ** e for p, e in zip(pt, m)]) for m, c in f.items()))
                for f in fs]
        assert max(abs(v) for v in vals) < 1e-8
    assert common_zeros(S("x1", "x1 + 1"))["empty"] is True
    assert common_zeros(S("x1*x2", "x1^2"))["dimension"] == "positive"


@pytest.mark.parametrize("n,d,H", [(1, 2, 5), (1, 3, 3), (2, 2, 3), (2, 3, 5)])
def test_geometric_fixture(n, d, H):
    fs, cert = fixture_geometric(n, d, H)
    assert cert.a == H - 1 and cert.provenance == "fixture"
    rep = certificate_verify(cert, fs)
    assert rep.identity
    assert cert.degree <= n * (d - 1)
    assert all(abs(c) == 1 for g in cert.g for _, c in g.items())
    assert float(certificate_height(cert)) == pytest.approx(math.log(H - 1)) or H - 1 == 1
    bound = bounds.bound_calculators("geometric-example", {"n": n, "d": d, "h": bounds.log(H)})
    assert float(rep.height) <= float(bound.height_bound)
    assert cert.degree <= bound.degree_bound


def test_geometric_fixture_by_hand():
    fs, cert = fixture_geometric(1, 2, 5)
    assert fs == S("x1 - 1", "5 - x1^2")
    assert list(cert.g) == S("x1 + 1", "1")
    assert cert.a == 4


def test_tampering_rejected():
    fs, cert = fixture_geometric(2, 2, 3)
    bad = BezoutCertificate(cert.n, cert.s, cert.a + 1, cert.g, cert.degree_bound, "external")
    assert not certificate_verify(bad, fs).identity
    with pytest.raises(VerificationError):
        certificate_verify(bad, fs, strict=True)
    # every single-coefficient perturbation is caught
    for k, g in enumerate(cert.g):
        for m, c in g.items():
            terms = g.terms
            terms[m] = c + 1
            gs = list(cert.g)
            gs[k] = Poly(g.nvars, terms)
            tampered = BezoutCertificate(cert.n, cert.s, cert.a, tuple(gs), cert.degree_bound, "external")
            assert not certificate_verify(tampered, fs, with_bounds=False).identity


def test_certificate_json_roundtrip_and_validation():
    fs = fixture_dnh(2, 2, 3)
    cert = certificate_search(fs)
    again = BezoutCertificate.from_json(cert.to_json())
    assert again == cert
    assert isinstance(__import__("json").loads(cert.to_json())["a"], str)
    with pytest.raises(ValueError):
        BezoutCertificate(1, 1, 0, (Poly.constant(1, 1),), 0)
    with pytest.raises(ValueError):
        BezoutCertificate(1, 1, 1, (Poly.constant(Fraction(1, 2), 1),), 0)
    with pytest.raises(ArityError):
        certificate_verify(cert, fs[:2])


def test_dnh_witness():
    # n=1, d=2, H=2: a = g_2(H) H^2, so 4 | a
    cert = certificate_search(fixture_dnh(1, 2, 2))
    w = check_dnh_witness(cert, 1, 2, 2)
    assert w.divisor == 4 and w.divisible and cert.a % 4 == 0
    cert = certificate_search(fixture_dnh(2, 2, 2))
    w = check_dnh_witness(cert, 2, 2, 2)
    assert w.divisor == 16 and cert.a % 16 == 0 and w.height_ok


def test_dnh_witness_alternative_solutions():
    fs = fixture_dnh(2, 2, 3)
    for seed in (None, 1, 2, 3):
        cert = certificate_search(fs, column_seed=seed)
        assert certificate_verify(cert, fs, with_bounds=False).identity
        assert cert.a % 81 == 0
        assert math.log(abs(cert.a)) >= 4 * math.log(3) - 1e-12


def test_masser_philippon_witness():
    fs = fixture_masser_philippon(2, 2, 3)
    assert fs == S("x1^2", "x1*x2 - 3")
    for seed in (None, 1, 2):
        cert = certificate_search(fs, column_seed=seed)
        w = check_masser_philippon_witness(cert, 2, 2, 3)
        assert w.divisible and cert.a % 9 == 0
        assert w.extra["deg_g1_ok"]
    cert = certificate_search(fixture_masser_philippon(2, 3, 2))
    assert cert.g[0].degree() >= 3 ** 2 - 3


def test_witness_rejects_foreign_certificate():
    fs, cert = fixture_geometric(2, 2, 3)
    with pytest.raises(VerificationError):
        check_dnh_witness(cert, 2, 2, 3)


def test_prepare_identity_first():
    prep = prepare_system(S("x1", "x2"))
    assert prep.attempts == 1
    assert prep.combination == [[1, 0], [0, 1]]
    assert prep.coordinate_matrix == [[1, 0], [0, 1]]
    assert prep.entries_within_cap()


def test_prepare_example():
    fs = S("x1^2", "x1 + x2", "x2 - 1")
    prep = prepare_system(fs, seed=0)
    assert prep.t <= 3
    assert prep.entries_within_cap()
    d, n = 2, 2
    cap = 2 * (n + 1) * math.log(d + 1)
    for row in prep.combination + prep.coordinate_matrix:
        assert all(x == 0 or math.log(abs(x)) <= cap for x in row)
    assert sympy.Matrix(prep.coordinate_matrix).det() != 0
    assert all(not st.get("failed") for st in prep.stages)


def test_prepare_reports_failure():
    # a non-reduced point cannot be made radical by linear changes
    with pytest.raises(PreparationError) as info:
        prepare_system(S("x1^2"), retries=3)
    assert "radical" in str(info.value)


def test_intrinsic_params_modes():
    for n, d in [(2, 2), (3, 2), (2, 3)]:
        fs = [Poly.var(0, n) ** d + 1] * (n + 1)
        ip = intrinsic_params(fs, "lemma_dn")
        assert ip.delta == d ** (n - 1) and ip.source == "lemma_dn"
    for n, d in [(1, 2), (2, 2), (2, 3)]:
        fs = fixture_sparse(n, d, n + 1, seed=1)
        assert system_volume(fs) == n * d
        ip = intrinsic_params(fs, "lemma_sparse")
        assert ip.delta <= n * d
    ip = intrinsic_params(S("x1"), "user", 3, "log(2)")
    assert (ip.delta, str(ip.eta), ip.source) == (3, "log(2)", "user")
    with pytest.raises(ValueError):
        intrinsic_params(S("x1"), "user")


def test_report_linear_and_univariate():
    fs = S("x1 + 2*x2 - 1", "x1 - x2", "3*x2 + 1")
    rep = report_all_bounds(fs)
    h = system_height(fs)
    assert rep["lemma-d1"].report.height_bound == (h + bounds.log(3)) * 3
    fs = S("x1^3 - 2", "x1^2 + 1")
    rep = report_all_bounds(fs, certificate_search(fs))
    assert rep["lemma-n1"].report.degree_bound == 2
    assert rep["lemma-n1"].degree_ok


@pytest.mark.parametrize("n,d", [(1, 2), (2, 1), (2, 2)])
def test_report_sparse_example_specialization(n, d):
    s = n + 1
    fs = fixture_sparse(n, d, s, seed=3)
    h = system_height(fs)
    cor3 = report_all_bounds(fs)["cor3"].report
    example = bounds.bound_calculators("ejemplosparse", {"n": n, "d": d, "s": s, "h": h})
    assert cor3.degree_bound == example.degree_bound
    assert cor3.height_bound == example.height_bound


def test_search_at_cap_grid_small():
    for fs in (fixture_dnh(1, 3, 16), fixture_geometric(2, 1, 2)[0], fixture_masser_philippon(2, 2, 16)):
        n = fs[0].nvars
        d = max(f.degree() for f in fs)
        cert = certificate_search(fs, theorem1_cap(n, d))
        rep = certificate_verify(cert, fs)
        assert rep.identity and rep.bounds["theorem1"].degree_ok
