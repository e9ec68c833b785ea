import random
from fractions import Fraction
from itertools import product
from math import prod

import pytest
import sympy

from arithnull.exactpoly import Poly, compose, evaluate, substitute_affine
from arithnull.quotient import (DivisionError, NotRadicalError, PositiveDimensionalError, QuotientAlgebra,
                                UnitIdealError, adjoint, cayley_hamilton_residual, charpoly,
                                divide_trace_formula, groebner, is_radical, jacobian_determinant,
                                pseudo_jacobian, quotient_algebra, tate_trace, telescoping_residual,
                                trace_checks, trace_roots_of_unity)

from conftest import P, S


def rand_poly(rng, n, d, terms=4, coeff=5):
    out = {}
    for _ in range(terms):
        mono = [0] * n
        for _ in range(rng.randint(0, d)):
            mono[rng.randrange(n)] += 1
        out[tuple(mono)] = rng.randint(-coeff, coeff)
    return Poly(n, out)


def point_system(rng, n):
    """A square radical system with known rational zeros, in skewed coordinates.

    Triangular products of distinct linear factors are pulled back along a
    unimodular change of coordinates, so the zeros are images of a grid.
    """
    degs = [rng.randint(1, 2) for _ in range(n)]
    xs = [Poly.var(i, n) for i in range(n)]
    roots, fs = [], []
    for i in range(n):
        vals = rng.sample(range(-4, 5), degs[i])
        slope = [rng.randint(-2, 2) for _ in range(i)]
        roots.append((vals, slope))
        f = Poly.constant(1, n)
        for v in vals:
            f = f * (xs[i] - v - sum((s * xs[k] for k, s in enumerate(slope)), Poly.zero(n)))
        fs.append(f)
    pts = []
    for choice in product(*[vals for vals, _ in roots]):
        pt = []
        for i, v in enumerate(choice):
            pt.append(v + sum(s * pt[k] for k, s in enumerate(roots[i][1])))
        pts.append(pt)
    # x -> U x with U unimodular; zeros move by U^{-1}
    U = [[1 if i == j else (rng.randint(-1, 1) if j > i else 0) for j in range(n)] for i in range(n)]
    gs = [substitute_affine(f, U, [0] * n) for f in fs]
    Uinv = sympy.Matrix(U).inv()
    new_pts = [[Fraction(int(sum(Uinv[i, j] * p[j] for j in range(n)))) for i in range(n)] for p in pts]
    return gs, new_pts


def test_groebner_examples():
    assert groebner(S("x1^2 - 2")).generators == S("x1^2 - 2")
    assert groebner(S("x1", "x1 + 1")).is_unit()


def test_groebner_hand_reduction():
    # x1^3 = x1 (x1^2 - x2) + x1 x2 and x2 (x1^2 - x2) - x1 (x1 x2) = -x2^2
    gb = groebner(S("x2 - x1^2", "x1^3"))
    assert set(gb.generators) == set(P("x1^2 - x2", "x1*x2", "x2^2"))
    B = QuotientAlgebra(S("x2 - x1^2", "x1^3"))
    assert set(B.basis) == {(0, 0), (1, 0), (0, 1)}


def test_groebner_against_sympy():
    rng = random.Random(21)
    x = sympy.symbols("x1 x2 x3")
    for _ in range(25):
        n = rng.randint(2, 3)
        fs = [rand_poly(rng, n, 3) for _ in range(n)]
        fs = [f for f in fs if not f.is_zero()]
        if not fs:
            continue
        ours = groebner(fs)
        exprs = [sum(c * prod(v ** e for v, e in zip(x, m)) for m, c in f.items()) for f in fs]
        ref = sympy.groebner(exprs, *x[:n], order="grevlex", domain="QQ")
        ref_polys = {Poly(n, {m: Fraction(int(c.p), int(c.q)) for m, c in
                              sympy.Poly(g, *x[:n]).terms()}) for g in ref.exprs}
        assert set(ours.generators) == ref_polys


def test_quotient_examples():
    B = quotient_algebra(S("x1^2 - 2"))
    assert B.basis == [(0,), (1,)]
    assert B.mult_tables[0] == [[0, 2], [1, 0]]
    assert quotient_algebra(S("x1 - 1")).dim == 1
    B = quotient_algebra(S("x1^2 - 1", "x2^2 - 1"))
    assert B.dim == 4
    assert set(B.basis) == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_quotient_errors():
    with pytest.raises(UnitIdealError):
        QuotientAlgebra(S("x1", "x1 + 1"))
    with pytest.raises(PositiveDimensionalError):
        QuotientAlgebra(S("x1*x2", "x1^2"))


def test_charpoly_examples():
    B = quotient_algebra(S("x1^2 - 2"))
    cp = charpoly(B, P("x1"))
    assert cp.coefficients == [-2, 0] and cp.norm == -2 and cp.trace == 0
    B = quotient_algebra(S("x1^2 - 1", "x2^2 - 1"))
    one = charpoly(B, Poly.constant(1, 2))
    t = sympy.Symbol("t")
    assert one.coefficients == [int(c) for c in reversed(sympy.Poly((t - 1) ** 4, t).all_coeffs()[1:])]
    assert (one.norm, one.trace) == (1, 4)
    zero = charpoly(B, Poly.zero(2))
    assert (zero.norm, zero.trace) == (0, 0)


def test_adjoint_examples():
    B = quotient_algebra(S("x1^2 - 2"))
    assert adjoint(B, P("x1")) == P("-x1")
    B = quotient_algebra(S("x1^2 - 1", "x2^2 - 1"))
    one = Poly.constant(1, 2)
    cp = charpoly(B, one)
    assert adjoint(B, one) == Poly.constant((-1) ** 3 * (1 + sum(cp.coefficients[1:])), 2)


def test_adjoint_gives_inverses():
    rng = random.Random(8)
    fs, _ = point_system(rng, 2)
    B = QuotientAlgebra(fs)
    done = 0
    while done < 10:
        f = rand_poly(rng, 2, 2)
        N = B.norm(f)
        if N == 0:
            continue
        inv = adjoint(B, f) * (Fraction(1) / N)
        assert B.equal(f * inv, Poly.constant(1, 2))
        done += 1


def test_trace_roots_of_unity_examples():
    B = quotient_algebra(S("x1^2 - 2"))
    res = trace_roots_of_unity(B, P("x1"), P("x1"))
    assert res.value == -4
    assert res.oracle_error < 1e-9
    with pytest.raises(ValueError):
        trace_roots_of_unity(B, P("x1"), P("x1"), q=2)
    rng = random.Random(2)
    fs, _ = point_system(rng, 2)
    B = QuotientAlgebra(fs)
    one = Poly.constant(1, 2)
    for _ in range(5):
        g = rand_poly(rng, 2, 2)
        res = trace_roots_of_unity(B, one, g)
        assert res.value == B.trace(adjoint(B, one) * g)
        assert res.oracle_error < 1e-9 * max(1, abs(float(res.value)))
        f = rand_poly(rng, 2, 2)
        res = trace_roots_of_unity(B, f, g, q=B.dim + 3)
        assert res.value == B.trace(adjoint(B, f) * g)


def test_pseudo_jacobian_example():
    td = pseudo_jacobian(S("x1^2 - 2"))
    # variables x1, y1
    assert td.l_matrix == [[Poly(2, {(1, 0): 1, (0, 1): 1})]]
    assert td.delta == Poly(2, {(1, 0): 1, (0, 1): 1})
    assert set(td.pairs) == {(Poly.constant(1, 1), P("x1")), (P("x1"), Poly.constant(1, 1))}
    with pytest.raises(ValueError):
        pseudo_jacobian([P("x1^2 - x2", n=2)])


def test_telescoping_identity_and_degrees():
    rng = random.Random(4)
    for _ in range(20):
        n = rng.randint(1, 3)
        fs = [rand_poly(rng, n, 3) for _ in range(n)]
        td = pseudo_jacobian(fs)
        assert all(r.is_zero() for r in telescoping_residual(fs, td))
        d = max(max(f.degree(), 0) for f in fs)
        for row in td.l_matrix:
            for l in row:
                assert l.is_zero() or l.degree() <= d - 1


def test_tate_trace_examples():
    fs = S("x1^2 - 2")
    B = quotient_algebra(fs)
    sigma = tate_trace(B, pseudo_jacobian(fs))
    assert sigma.values == [0, 1]
    assert sigma(P("2*x1")) == 2 == B.trace(Poly.constant(1, 1))
    assert jacobian_determinant(fs) == P("2*x1")
    assert sigma.reconstruct(P("x1 + 3")) == P("x1 + 3")


def test_tate_trace_rejects_non_radical():
    fs = S("x1^2")
    with pytest.raises(NotRadicalError):
        tate_trace(quotient_algebra(fs), pseudo_jacobian(fs))
    assert not is_radical(quotient_algebra(S("x1^2", "x2 - x1", n=2)))


def permuted(f: Poly, perm):
    return Poly(f.nvars, {tuple(m[perm[i]] for i in range(f.nvars)): c for m, c in f.items()})


def test_alternative_decomposition_gives_same_sigma():
    rng = random.Random(6)
    checked = 0
    while checked < 3:
        fs, _ = point_system(rng, 2)
        # telescope in the opposite variable order, then map the pairs back;
        # the swapped columns flip the sign of the determinant
        perm = [1, 0]
        td_rev = pseudo_jacobian([permuted(f, perm) for f in fs])
        td_rev.pairs = [(-permuted(a, perm), permuted(c, perm)) for a, c in td_rev.pairs]
        td = pseudo_jacobian(fs)
        if set(td_rev.pairs) == set(td.pairs):
            continue
        checked += 1
        B = QuotientAlgebra(fs)
        assert tate_trace(B, td_rev).values == tate_trace(B, td).values
        sample = [rand_poly(rng, 2, 3) for _ in range(5)]
        assert trace_checks(tate_trace(B, td_rev), fs, sample) == {
            "jacobian": True, "trace": True, "reconstruction": True}


def test_trace_norm_against_zeros():
    rng = random.Random(10)
    for _ in range(6):
        n = rng.randint(1, 3)
        fs, pts = point_system(rng, n)
        B = QuotientAlgebra(fs)
        assert B.dim == len(pts)
        for _ in range(3):
            g = rand_poly(rng, n, 2)
            vals = [evaluate(g, p) for p in pts]
            assert B.trace(g) == sum(vals)
            assert B.norm(g) == prod(vals)
            assert charpoly(B, g).trace == sum(vals)


def radical_suite(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        fs, pts = point_system(rng, rng.randint(1, 3))
        if 2 <= len(pts) <= 12:
            out.append(fs)
    return out


SUITE = [S("x1^2 - 2"), S("x1^2 - 1", "x2^2 - 1")] + radical_suite(31, 6)


@pytest.mark.parametrize("fs", SUITE, ids=lambda fs: f"D-{QuotientAlgebra(fs).dim}-n{fs[0].nvars}")
def test_algebra_properties(fs):
    rng = random.Random(len(fs))
    B = QuotientAlgebra(fs)
    n = B.nvars
    T = B.mult_tables
    from arithnull.exactlinalg import matmul
    for i in range(n):
        for j in range(n):
            assert matmul(T[i], T[j]) == matmul(T[j], T[i])
    for _ in range(5):
        f, g = rand_poly(rng, n, 2), rand_poly(rng, n, 2)
        assert all(x == 0 for row in cayley_hamilton_residual(B, f) for x in row)
        assert B.norm(f * g) == B.norm(f) * B.norm(g)
        assert B.trace(f + g) == B.trace(f) + B.trace(g)
        assert B.normal_form(B.normal_form(f * g)) == B.normal_form(f * g)
    td = pseudo_jacobian(fs)
    sigma = tate_trace(B, td)
    samples = [rand_poly(rng, n, 3) for _ in range(50)]
    assert trace_checks(sigma, fs, samples) == {"jacobian": True, "trace": True, "reconstruction": True}


def test_division_examples():
    fs = S("x1^2 - 2")
    B = quotient_algebra(fs)
    td = pseudo_jacobian(fs)
    res = divide_trace_formula(B, td, P("x1"), Poly.constant(2, 1))
    assert B.equal(res.q, P("x1"))
    res = divide_trace_formula(B, td, P("x1"), P("x1*(x1 + 1)"))
    assert B.equal(res.q, P("x1 + 1"))
    g = P("3*x1 - 5")
    res = divide_trace_formula(B, td, Poly.constant(1, 1), g)
    assert B.equal(res.q, g)
    assert res.as_dict()["checks"]["identity"] is True


def test_division_errors():
    fs = S("x1^2 - 1")
    B = quotient_algebra(fs)
    with pytest.raises(DivisionError):
        divide_trace_formula(B, pseudo_jacobian(fs), P("x1 - 1"), P("x1 + 1"))


@pytest.mark.parametrize("fs", SUITE[1:], ids=lambda fs: f"D-{QuotientAlgebra(fs).dim}")
def test_division_soundness(fs):
    rng = random.Random(99)
    B = QuotientAlgebra(fs)
    td = pseudo_jacobian(fs)
    n = B.nvars
    done = 0
    while done < 5:
        f, h = rand_poly(rng, n, 2), rand_poly(rng, n, 2)
        if B.norm(f) == 0:
            continue
        g = B.normal_form(f * h)
        res = divide_trace_formula(B, td, f, g)
        assert B.is_zero(res.q * f - g)
        assert res.deg_x <= n * max([f.degree()] + [F.degree() for F in fs])
        done += 1
