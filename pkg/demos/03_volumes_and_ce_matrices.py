"""Lattice volumes of supports and Canny-Emiris matrices."""

import random
from fractions import Fraction

from arithnull import geometry
from arithnull.exactlinalg import determinant
from arithnull.exactpoly import parse_many

# a sparse family: 1, x1, x2 and (x1 x2)^d
for d in (1, 2, 3):
    A = geometry.SupportSet.of([(0, 0), (1, 0), (0, 1), (d, d)])
    print(f"d={d}: normalized volume {geometry.normalized_volume(A)}")

fs = parse_many(["x1^2 - 1", "x2^2 - 1"])
rep = geometry.bk_bounds(fs, 0)
print("degree bound from the framed support of {x1^2 - 1, x2^2 - 1}:", rep.degree_bound)

# two generic quadrics in one variable: a 4 x 4 Sylvester-like matrix
A = geometry.SupportSet.of([(0,), (1,), (2,)])
spec = geometry.ce_matrix_retrying(A, 1)
print("CE matrix order", spec.order, "symbols per row", spec.row_symbol_counts())
for row in spec.as_dict()["entries"]:
    print("   ", " ".join(f"{e or '.':>5}" for e in row))

rng = random.Random(0)
vals = {(i, (a,)): Fraction(rng.randint(-9, 9)) for i in range(2) for a in range(3)}
chk = geometry.ce_resultant_check(A, vals, spec)
print(f"specialized det {chk.det}, Sylvester resultant {chk.resultant}, ratio {chk.ratio}")

# higher dimension: the matrix stays square and nonsingular
B = geometry.SupportSet.of([(0, 0), (1, 0), (0, 1), (2, 2)])
spec2 = geometry.ce_matrix_retrying(B)
vals2 = {sym: Fraction(rng.randint(-9, 9)) for row in spec2.entries for sym in row if sym}
print(f"2-d support: order {spec2.order} <= 16 * Vol = {16 * geometry.normalized_volume(B)},",
      "det != 0:", determinant(spec2.specialize(vals2)) != 0)
