import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from scipy.spatial import ConvexHull

from arithnull import quotient
from arithnull.exactlinalg import determinant
from arithnull.exactpoly import Poly
from arithnull.geometry import (SupportSet, ZeroResultantError, bk_bounds, ce_divisibility, ce_matrix,
                                ce_matrix_retrying, ce_point_set, ce_resultant_check, normalized_volume,
                                support, sylvester_matrix, sylvester_resultant, toric_height_bound)

from conftest import P


def sparse_example_support(n, d):
    pts = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(d,) * n]
    return SupportSet.of(pts)


def hull_oracle(points):
    """n! times the Euclidean hull volume (standard lattice, full dimension)."""
    pts = np.array(points, dtype=float)
    n = pts.shape[1]
    if n == 1:
        return int(pts.max() - pts.min())
    return round(ConvexHull(pts).volume * math.factorial(n))


def test_support_examples():
    assert set(support([P("x1*x2 + 1")]).points) == {(1, 1), (0, 0)}
    assert set(support([P("x1", n=2)], include_affine_frame=True).points) == {(0, 0), (1, 0), (0, 1)}


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_sparse_example_volume(n, d):
    assert normalized_volume(sparse_example_support(n, d)) == n * d


def test_volume_examples():
    for n in (1, 2, 3):
        simplex = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)]
        assert normalized_volume(SupportSet.of(simplex)) == 1
    # {0, 2} spans 2Z: one elementary simplex of the sublattice
    assert normalized_volume(SupportSet.of([(0,), (2,)])) == 1


def test_volume_against_hull_oracle():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 3)
        pts = {tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(rng.randint(n + 2, 9))}
        # add a unimodular frame so the lattice is Z^n and the hull is full-dimensional
        base = next(iter(pts))
        pts |= {tuple(b + int(i == j) for j, b in enumerate(base)) for i in range(n)}
        pts.add(base)
        A = SupportSet.of(pts)
        assert normalized_volume(A) == hull_oracle(A.points)


def random_unimodular(rng, n):
    while True:
        M = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if abs(determinant(M)) == 1:
            return M


def test_volume_invariant_under_affine_unimodular_maps():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(1, 3)
        A = SupportSet.of({tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(6)})
        M = random_unimodular(rng, n)
        t = [rng.randint(-5, 5) for _ in range(n)]
        B = SupportSet.of([tuple(sum(M[i][j] * p[j] for j in range(n)) + t[i] for i in range(n)) for p in A])
        assert normalized_volume(A) == normalized_volume(B)


def test_volume_monotone_under_inclusion():
    rng = random.Random(4)
    for _ in range(25):
        n = rng.randint(1, 3)
        frame = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)]
        small = set(frame) | {tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(3)}
        big = small | {tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(3)}
        assert normalized_volume(SupportSet.of(small)) <= normalized_volume(SupportSet.of(big))


def test_bk_bounds_examples():
    rep = bk_bounds(P("x1 + 2*x2 - 1", "3*x1 - x2 + 4"), 0)
    assert rep.degree_bound == 1
    fs = P("x1^2 - 1", "x2^2 - 1")
    rep = bk_bounds(fs, 0)
    # exact common zeros: (+-1, +-1)
    x1, x2 = sympy.symbols("x1 x2")
    count = len(sympy.solve([x1 ** 2 - 1, x2 ** 2 - 1], [x1, x2], dict=True))
    assert count == 4 <= rep.degree_bound


def test_bezout_and_bernstein_on_random_systems():
    rng = random.Random(9)
    checked = 0
    while checked < 10:
        fs = [Poly(2, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-4, 4) for _ in range(4)})
              for _ in range(2)]
        if any(f.is_zero() or f.is_constant() for f in fs):
            continue
        try:
            B = quotient.QuotientAlgebra(fs)
        except (quotient.PositiveDimensionalError, quotient.UnitIdealError):
            continue
        # the quotient dimension counts zeros with multiplicity
        assert B.dim <= fs[0].degree() * fs[1].degree()
        assert B.dim <= bk_bounds(fs, 0).degree_bound
        checked += 1


def test_toric_bound_examples():
    rep = toric_height_bound(SupportSet.of([(0,), (1,)]))
    assert float(rep.height_bound) == pytest.approx(16 * math.log(2))
    small = toric_height_bound(SupportSet.of([(0, 0), (1, 0), (0, 1)]))
    big = toric_height_bound(SupportSet.of([(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert float(big.height_bound) >= float(small.height_bound)
    for n, d in [(1, 2), (2, 2), (2, 3)]:
        A = sparse_example_support(n, d)
        rep = toric_height_bound(A)
        assert float(rep.height_bound) == pytest.approx(2 ** (2 * n + 2) * math.log(len(A)) * n * d)
    with pytest.raises(ValueError):
        toric_height_bound(SupportSet.of([(1, 1)]))


def test_ce_point_set_interval():
    E = ce_point_set(SupportSet.of([(0,), (1,)]), [Fraction(1, 3)], 1)
    assert E == [(1,), (2,)]


def test_ce_point_count_bound():
    for n, d in [(1, 1), (1, 3), (2, 1), (2, 2)]:
        A = sparse_example_support(n, d)
        E = ce_point_set(A)
        assert len(E) <= 2 ** (2 * n) * normalized_volume(A)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_ce_matrix_univariate_structure(d):
    A = SupportSet.of([(k,) for k in range(d + 1)])
    spec = ce_matrix_retrying(A, 1)
    assert spec.order == 2 * d
    assert spec.order <= 4 * normalized_volume(A)
    assert spec.row_symbol_counts() == [d + 1] * (2 * d)
    assert all(len(g) == 1 for g in spec.row_groups())
    # rows are shifted coefficient vectors, just like a Sylvester matrix
    rng = random.Random(d)
    vals = {(i, (a,)): Fraction(rng.randint(-9, 9)) for i in range(2) for a in range(d + 1)}
    M = spec.specialize(vals)
    f = [vals[(0, (a,))] for a in range(d + 1)]
    g = [vals[(1, (a,))] for a in range(d + 1)]
    rows = sorted(tuple(r) for r in M)
    syl = sylvester_matrix(f, g)
    # Sylvester rows run highest degree first; CE rows lowest first
    assert rows == sorted(tuple(reversed(r)) for r in syl)
    assert determinant(M) != 0 or sylvester_resultant(f, g) == 0


def test_ce_matrix_higher_dimension_rows():
    A = sparse_example_support(2, 2)
    spec = ce_matrix_retrying(A)
    assert spec.order <= 16 * normalized_volume(A)
    assert spec.row_symbol_counts() == [len(A)] * spec.order
    rng = random.Random(0)
    vals = {sym: Fraction(rng.randint(-9, 9)) for row in spec.entries for sym in row if sym}
    assert determinant(spec.specialize(vals)) != 0


def test_resultant_examples():
    A = SupportSet.of([(0,), (1,)])
    chk = ce_resultant_check(A, {(0, (0,)): -1, (0, (1,)): 1, (1, (0,)): -2, (1, (1,)): 1})
    assert abs(chk.resultant) == 1
    assert abs(chk.det) == abs(chk.resultant)
    A2 = SupportSet.of([(0,), (1,), (2,)])
    spec = {(0, (0,)): -1, (0, (1,)): 0, (0, (2,)): 1, (1, (0,)): -4, (1, (1,)): 0, (1, (2,)): 1}
    chk = ce_resultant_check(A2, spec)
    x = sympy.Symbol("x")
    assert chk.resultant == sympy.resultant(x ** 2 - 1, x ** 2 - 4, x) == 9
    same = {(i, (a,)): c for i in range(2) for a, c in enumerate([-1, 0, 1])}
    with pytest.raises(ZeroResultantError):
        ce_resultant_check(A2, same)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_ce_divisibility(d):
    A = SupportSet.of([(k,) for k in range(d + 1)])
    spec, checks, consistent = ce_divisibility(A, trials=5, seed=d)
    assert len(checks) == 5
    assert all(c.ratio.denominator == 1 and c.resultant != 0 for c in checks)


def test_sylvester_resultant_against_sympy():
    x = sympy.Symbol("x")
    rng = random.Random(12)
    for _ in range(30):
        f = [rng.randint(-9, 9) for _ in range(rng.randint(1, 4))] + [rng.choice([1, -2, 3])]
        g = [rng.randint(-9, 9) for _ in range(rng.randint(1, 4))] + [rng.choice([1, 2, -5])]
        ref = sympy.resultant(sum(c * x ** k for k, c in enumerate(f)), sum(c * x ** k for k, c in enumerate(g)), x)
        res = sylvester_resultant(f, g)
        assert abs(res) == abs(ref)
        # sign from lc(f)^deg(g) * prod g(roots of f); sympy's sign differs when deg f < deg g
        roots = np.roots(list(reversed(f)))
        prod = f[-1] ** (len(g) - 1) * np.prod([np.polyval(list(reversed(g)), r) for r in roots])
        assert res == pytest.approx(prod.real, rel=1e-6, abs=1e-6)
