"""Supports, lattice volumes and Canny-Emiris matrices.

Point sets live in ``Z^n`` as tuples of ints.  Volumes are normalized to the
lattice spanned by the differences of the points, so an elementary simplex of
that lattice has volume 1.  Convex hull work is exact (integer
determinants) and limited to lattice dimension 3.

The Canny-Emiris construction follows the classical recipe for r+1 generic
polynomials sharing one support A: lift each copy of A with random integer
heights, read the mixed subdivision of (r+1)Q off a small linear program per
point, and give every lattice point of the shifted dilate a row.  Each cell
found by the LP is re-certified in exact arithmetic (primal positivity and
dual feasibility), so floating point only proposes and never decides.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from . import bounds as _bounds
from .exactlinalg import determinant, lattice_coordinates, row_lattice_basis, solve
from .exactpoly import Poly

MAX_HULL_DIM = 3
Point = Tuple[int, ...]


class NonGenericError(ValueError):
    """Raised when a perturbation or lifting is not generic; retry with a new seed."""


@dataclass(frozen=True)
class SupportSet:
    points: Tuple[Point, ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("support set must be nonempty")
        if len({len(p) for p in self.points}) != 1:
            raise ValueError("points of different dimensions")

    @classmethod
    def of(cls, points) -> "SupportSet":
        return cls(tuple(sorted({tuple(int(x) for x in p) for p in points})))

    @property
    def n(self) -> int:
        return len(self.points[0])

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def contains_origin(self) -> bool:
        return (0,) * self.n in self.points


@dataclass
class LatticeData:
    dimension: int
    origin: Point
    basis: List[List[int]]
    coordinates: Dict[Point, Tuple[int, ...]]


def support(fs: Sequence[Poly], include_affine_frame: bool = False) -> SupportSet:
    if not fs:
        raise ValueError("support of an empty family")
    n = fs[0].nvars
    pts = set()
    for f in fs:
        pts.update(m for m, _ in f.items())
    if include_affine_frame:
        pts.add((0,) * n)
        for i in range(n):
            pts.add(tuple(int(j == i) for j in range(n)))
    return SupportSet.of(pts)


def lattice_data(A: SupportSet) -> LatticeData:
    """Coordinates of A in a basis of the lattice spanned by its differences."""
    origin = A.points[0]
    diffs = [tuple(a - o for a, o in zip(p, origin)) for p in A.points]
    basis = row_lattice_basis(diffs)
    coords = {p: tuple(lattice_coordinates(basis, d)) for p, d in zip(A.points, diffs)}
    return LatticeData(len(basis), origin, basis, coords)


# exact convex geometry in the reduced lattice


def _orient(vectors: Sequence[Sequence[int]]) -> int:
    d = determinant([list(v) for v in vectors])
    return (d > 0) - (d < 0)


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def placing_triangulation(points: Sequence[Point]) -> List[Tuple[Point, ...]]:
    """Placing triangulation of full-dimensional points, inserted in lex order."""
    pts = sorted(set(points))
    r = len(pts[0])
    if r > MAX_HULL_DIM:
        raise ValueError(f"lattice dimension {r} exceeds the supported maximum {MAX_HULL_DIM}")
    if r == 0:
        return []
    # initial simplex: greedy increase of affine rank
    simplex = [pts[0]]
    for p in pts[1:]:
        if len(simplex) == r + 1:
            break
        cand = [_sub(q, simplex[0]) for q in simplex[1:]] + [_sub(p, simplex[0])]
        if _rank_int(cand) == len(cand):
            simplex.append(p)
    if len(simplex) < r + 1:
        raise ValueError("points are not full-dimensional")
    simplices = [tuple(simplex)]
    boundary: Dict[frozenset, Point] = {}
    for k in range(r + 1):
        facet = frozenset(simplex[:k] + simplex[k + 1:])
        boundary[facet] = simplex[k]
    used = set(simplex)
    for q in pts:
        if q in used:
            continue
        visible = []
        for facet, opposite in boundary.items():
            verts = sorted(facet)
            base = verts[0]
            edges = [_sub(v, base) for v in verts[1:]]
            s_q = _orient(edges + [_sub(q, base)])
            s_o = _orient(edges + [_sub(opposite, base)])
            if s_q and s_q == -s_o:
                visible.append(facet)
        if not visible:
            continue
        for facet in visible:
            del boundary[facet]
        for facet in visible:
            new = tuple(sorted(facet)) + (q,)
            simplices.append(new)
            for w in facet:
                g = frozenset((facet - {w}) | {q})
                if g in boundary:
                    del boundary[g]
                else:
                    boundary[g] = w
        used.add(q)
    return simplices


def _rank_int(vectors) -> int:
    from .exactlinalg import rank
    return rank([list(v) for v in vectors])


def simplex_volume(simplex: Sequence[Point]) -> int:
    base = simplex[0]
    return abs(int(determinant([list(_sub(v, base)) for v in simplex[1:]])))


def normalized_volume(A: SupportSet) -> int:
    """Lattice-normalized volume of Conv(A); 0 when A is a single point."""
    lat = lattice_data(A)
    if lat.dimension == 0:
        return 0
    pts = list(lat.coordinates.values())
    return sum(simplex_volume(s) for s in placing_triangulation(pts))


def barycentric(simplex: Sequence[Point], x: Sequence[Fraction]) -> List[Fraction]:
    base = simplex[0]
    r = len(base)
    cols = [_sub(v, base) for v in simplex[1:]]
    A = [[Fraction(cols[j][i]) for j in range(r)] for i in range(r)]
    rhs = [Fraction(x[i]) - base[i] for i in range(r)]
    lam = solve(A, rhs)
    return [1 - sum(lam)] + list(lam)


def locate(triangulation, x) -> Optional[Tuple[Tuple[Point, ...], List[Fraction]]]:
    """A simplex containing ``x`` (closed) with barycentric coordinates, else None."""
    for s in triangulation:
        lam = barycentric(s, x)
        if all(c >= 0 for c in lam):
            return s, lam
    return None


# bounds built on volumes


def bk_bounds(fs: Sequence[Poly], h) -> "_bounds.BoundReport":
    """Degree and height bounds for V(fs) from the framed support volume."""
    A = support(fs, include_affine_frame=True)
    vol = normalized_volume(A)
    n = fs[0].nvars
    d = max(f.degree() for f in fs)
    return _bounds.bound_calculators("bernstein", {"n": n, "d": d, "h": h, "vol": vol})


def toric_height_bound(A: SupportSet, d: int = None) -> "_bounds.BoundReport":
    """Height bound for the toric variety of A, plus the polynomial-support form."""
    if len(A) < 2:
        raise ValueError("toric height bound needs #A >= 2")
    lat = lattice_data(A)
    vol = normalized_volume(A)
    inputs = {"r": lat.dimension, "card": len(A), "vol": vol, "n": A.n}
    if d is None:
        d = max(sum(p) for p in A.points)
    inputs["d"] = d
    return _bounds.bound_calculators("toric", inputs)


# Canny-Emiris


def default_epsilon(r: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(1, 2 * r + 1 + 2 * k) for k in range(r))


def _reduced(A: SupportSet, r: Optional[int]) -> Tuple[List[Point], LatticeData]:
    lat = lattice_data(A)
    if r is not None and r != lat.dimension:
        raise ValueError(f"support has lattice dimension {lat.dimension}, not {r}")
    if lat.dimension == 0:
        raise ValueError("support must have positive dimension")
    if lat.dimension > MAX_HULL_DIM:
        raise ValueError(f"lattice dimension {lat.dimension} exceeds {MAX_HULL_DIM}")
    return [lat.coordinates[p] for p in A.points], lat


def ce_point_set(A: SupportSet, epsilon=None, r: int = None) -> List[Point]:
    """Lattice points of ``(r+1) Conv(A) + epsilon`` in lattice coordinates, lex order."""
    pts, lat = _reduced(A, r)
    r = lat.dimension
    eps = default_epsilon(r) if epsilon is None else tuple(Fraction(e) for e in epsilon)
    if len(eps) != r:
        raise ValueError(f"epsilon must have {r} entries")
    scaled = [tuple((r + 1) * c for c in p) for p in pts]
    tri = placing_triangulation(scaled)
    lo = [min(p[i] for p in scaled) for i in range(r)]
    hi = [max(p[i] for p in scaled) for i in range(r)]
    E = []
    for cand in itertools.product(*[range(math.floor(lo[i] + eps[i]), math.ceil(hi[i] + eps[i]) + 1)
                                    for i in range(r)]):
        x = [Fraction(cand[i]) - eps[i] for i in range(r)]
        hit = locate(tri, x)
        if hit is None:
            continue
        lam = hit[1]
        if any(c == 0 for c in lam):
            # on a boundary of the chosen triangulation; perturbation is not generic
            raise NonGenericError(f"lattice point {cand} lies on a cell boundary for epsilon={eps}")
        E.append(tuple(cand))
    return sorted(E)


@dataclass
class CEMatrixSpec:
    order: int
    points: List[Point]
    rows: List[Tuple[int, Point]]
    entries: List[List[Optional[Tuple[int, Point]]]]
    support: List[Point]
    epsilon: Tuple[Fraction, ...]
    lifting: Dict[Tuple[int, Point], int] = field(default_factory=dict)

    def row_symbol_counts(self) -> List[int]:
        return [sum(1 for e in row if e is not None) for row in self.entries]

    def row_groups(self) -> List[set]:
        return [{e[0] for e in row if e is not None} for row in self.entries]

    def specialize(self, values: Dict[Tuple[int, Point], Fraction]) -> List[List[Fraction]]:
        return [[Fraction(0) if e is None else Fraction(values[e]) for e in row] for row in self.entries]

    def as_dict(self):
        return {
            "order": self.order,
            "points": [list(p) for p in self.points],
            "rows": [{"poly": i, "shift": list(s)} for i, s in self.rows],
            "entries": [[None if e is None else f"U{e[0]}_{'_'.join(map(str, e[1]))}" for e in row]
                        for row in self.entries],
            "epsilon": [str(e) for e in self.epsilon],
        }


def _mixed_cell(pts: List[Point], lift: List[List[int]], x: Sequence[Fraction]) -> List[List[int]]:
    """Faces (index lists into ``pts``) of the mixed cell containing ``x``.

    Solves the lifting LP in floating point, then certifies the answer
    exactly; raises NonGenericError when the certificate fails.
    """
    r = len(pts[0])
    k = len(lift)
    N = len(pts)
    nv = k * N
    c = np.array([float(lift[i][a]) for i in range(k) for a in range(N)])
    A_eq = np.zeros((r + k, nv))
    b_eq = np.zeros(r + k)
    for i in range(k):
        for a in range(N):
            col = i * N + a
            A_eq[:r, col] = pts[a]
            A_eq[r + i, col] = 1.0
    b_eq[:r] = [float(v) for v in x]
    b_eq[r:] = 1.0
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if res.status != 0:
        raise NonGenericError(f"mixed-cell LP failed at {x}: {res.message}")
    faces = [[a for a in range(N) if res.x[i * N + a] > 1e-9] for i in range(k)]
    # exact primal: unique positive solution on the proposed support
    cols = [(i, a) for i in range(k) for a in faces[i]]
    if len(cols) != r + k:
        raise NonGenericError(f"degenerate cell at {x}")
    M = [[Fraction(pts[a][j]) for (i, a) in cols] for j in range(r)]
    M += [[Fraction(int(i == t)) for (i, a) in cols] for t in range(k)]
    rhs = [Fraction(v) for v in x] + [Fraction(1)] * k
    if determinant(M) == 0:
        raise NonGenericError(f"singular cell at {x}")
    lam = solve(M, rhs)
    if any(v <= 0 for v in lam):
        raise NonGenericError(f"point {x} is on a cell boundary")
    # exact dual: omega_i(a) = <y, a> + z_i on the support, strict elsewhere
    D = [[Fraction(pts[a][j]) for j in range(r)] + [Fraction(int(i == t)) for t in range(k)] for (i, a) in cols]
    w = [Fraction(lift[i][a]) for (i, a) in cols]
    dual = solve(D, w)
    y, z = dual[:r], dual[r:]
    for i in range(k):
        for a in range(N):
            if a in faces[i]:
                continue
            reduced = lift[i][a] - sum(y[j] * pts[a][j] for j in range(r)) - z[i]
            if reduced <= 0:
                raise NonGenericError("lifting is not generic")
    return faces


def ce_matrix(A: SupportSet, r: int = None, epsilon=None, lifting_seed: int = 0) -> CEMatrixSpec:
    """Symbolic Canny-Emiris matrix for r+1 polynomials with support A.

    Entry ``(p, q)`` is the coefficient symbol ``(i, q - shift_p)`` whenever
    that exponent lies in A; rows are indexed by the lattice points of the
    shifted dilate.  Everything is expressed in lattice coordinates of A.
    """
    pts, lat = _reduced(A, r)
    r = lat.dimension
    eps = default_epsilon(r) if epsilon is None else tuple(Fraction(e) for e in epsilon)
    E = ce_point_set(A, eps, r)
    rng = random.Random(lifting_seed)
    lift = [[rng.randrange(1 << 20) for _ in pts] for _ in range(r + 1)]
    index = {p: k for k, p in enumerate(E)}
    supp = set(pts)
    rows = []
    for p in E:
        x = [Fraction(p[j]) - eps[j] for j in range(r)]
        faces = _mixed_cell(pts, lift, x)
        i_star = max(i for i in range(r + 1) if len(faces[i]) == 1)
        a = pts[faces[i_star][0]]
        shift = _sub(p, a)
        rows.append((i_star, shift))
    entries = []
    for i, shift in rows:
        row: List[Optional[Tuple[int, Point]]] = [None] * len(E)
        for alpha in pts:
            q = tuple(s + al for s, al in zip(shift, alpha))
            if q not in index:
                raise NonGenericError(f"row shift {shift} leaves the point set")
            row[index[q]] = (i, alpha)
        entries.append(row)
    lifting = {(i, pts[a]): lift[i][a] for i in range(r + 1) for a in range(len(pts))}
    return CEMatrixSpec(len(E), E, rows, entries, sorted(supp), eps, lifting)


def ce_matrix_retrying(A: SupportSet, r: int = None, epsilon=None, seed: int = 0, attempts: int = 16):
    """ce_matrix with fresh liftings and perturbations drawn from ``seed`` on failure."""
    rng = random.Random(seed)
    eps = epsilon
    last = None
    for attempt in range(attempts):
        try:
            return ce_matrix(A, r, eps, lifting_seed=seed + attempt)
        except NonGenericError as exc:
            last = exc
            dim = lattice_data(A).dimension
            eps = tuple(Fraction(rng.randrange(1, 97), 97 * (dim + 2)) for _ in range(dim))
    raise NonGenericError(f"no generic choice after {attempts} attempts: {last}")


def sylvester_matrix(f: Sequence[Fraction], g: Sequence[Fraction]) -> List[List[Fraction]]:
    """Sylvester matrix from coefficient lists given constant-term first."""
    df, dg = len(f) - 1, len(g) - 1
    size = df + dg
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for k in range(dg):
        rows.append([Fraction(0)] * k + [Fraction(c) for c in fr] + [Fraction(0)] * (size - k - df - 1))
    for k in range(df):
        rows.append([Fraction(0)] * k + [Fraction(c) for c in gr] + [Fraction(0)] * (size - k - dg - 1))
    return rows


def sylvester_resultant(f: Sequence[Fraction], g: Sequence[Fraction]) -> Fraction:
    return determinant(sylvester_matrix(f, g))


class ZeroResultantError(ValueError):
    """The specialization has a common root; choose another one."""


@dataclass
class ResultantCheck:
    det: Fraction
    resultant: Fraction
    ratio: Fraction

    def as_dict(self):
        return {"det": str(self.det), "resultant": str(self.resultant), "ratio": str(self.ratio)}


def _univariate_dense(A: SupportSet) -> int:
    if A.n != 1:
        raise ValueError("resultant check is limited to n = 1")
    d = max(p[0] for p in A.points)
    if sorted(p[0] for p in A.points) != list(range(d + 1)):
        raise ValueError("resultant check needs the dense support {0, ..., d}")
    return d


def ce_resultant_check(A: SupportSet, specialization: Dict[Tuple[int, Point], Fraction],
                       spec: CEMatrixSpec = None) -> ResultantCheck:
    """Determinant of the specialized CE matrix against the Sylvester resultant (n = 1)."""
    d = _univariate_dense(A)
    if spec is None:
        spec = ce_matrix_retrying(A, 1)
    f = [Fraction(specialization[(0, (a,))]) for a in range(d + 1)]
    g = [Fraction(specialization[(1, (a,))]) for a in range(d + 1)]
    res = sylvester_resultant(f, g)
    if res == 0:
        raise ZeroResultantError("resultant vanishes at this specialization")
    det = determinant(spec.specialize(specialization))
    return ResultantCheck(det, res, det / res)


def ce_divisibility(A: SupportSet, trials: int = 5, seed: int = 0, coeff_range: int = 9):
    """Random integer specializations; returns (checks, consistent ratio or None)."""
    d = _univariate_dense(A)
    spec = ce_matrix_retrying(A, 1, seed=seed)
    rng = random.Random(seed)
    checks: List[ResultantCheck] = []
    while len(checks) < trials:
        vals = {(i, (a,)): Fraction(rng.randint(-coeff_range, coeff_range)) for i in range(2) for a in range(d + 1)}
        try:
            checks.append(ce_resultant_check(A, vals, spec))
        except ZeroResultantError:
            continue
    ratios = {abs(c.ratio) for c in checks}
    integral = all(c.ratio.denominator == 1 for c in checks)
    consistent = next(iter(ratios)) if len(ratios) == 1 and integral else None
    return spec, checks, consistent


def bound_calculators(statement: str, inputs: dict) -> "_bounds.BoundReport":
    return _bounds.bound_calculators(statement, inputs)
