"""Heights at every place of Q and three ways to get a Mahler measure."""

import math
from fractions import Fraction

from arithnull import heights
from arithnull.exactpoly import Poly, parse

f = parse("1/4*x1^2 + 6*x1 - 9/2")
for v in ("inf", 2, 3):
    print(f"h_{v}(f) = {heights.local_height(f, v):.6f}")
rep = heights.global_height([f])
print("global height:", round(rep.value, 6), "over places", [str(v) for v in rep.places])

# the product formula holds exactly for every nonzero rational
q = Fraction(-360, 77)
print(f"product formula for {q}:", heights.product_formula_holds(q))

# exact Jensen path versus Monte Carlo on the torus
lehmer = parse("x1^10 + x1^9 - x1^7 - x1^6 - x1^5 - x1^4 - x1^3 + x1 + 1")
exact = heights.mahler_univariate_exact(lehmer)
mc = heights.mahler_torus_mc(lehmer, 200_000, seed=0)
print(f"m(Lehmer) exact {exact.value:.12f}, MC {mc.value:.5f} +- {mc.stderr:.5f}")

# a two-variable measure only has the MC path; the sphere version sits below it
g = parse("1 + x1 + x2")
torus = heights.mahler_torus_mc(g, 200_000, seed=1)
sphere = heights.mahler_sphere_mc(g, 1, 2, 200_000, seed=2)
print(f"m(1 + x1 + x2): torus {torus.value:.4f}, unit sphere of C^2 {sphere.value:.4f}")

# a point variety: closed form against the Chow-form Monte Carlo route
pt = [(3, 4)]
closed = heights.height_point_variety(pt)
chow = heights.height_point_variety_mc(pt, 200_000, seed=3)
print(f"h({{(3, 4)}}) = {closed:.5f} = 1/2 log 26 = {0.5 * math.log(26):.5f}; Chow form MC {chow.value:.5f} +- {chow.stderr:.5f}")

# executable inequalities report their slack
chk = heights.check_inequality("hprod-1a", {"fs": [parse("x1 + 3"), parse("x1^2 - 5*x1"), Poly.constant(2, 1)]})
print("hprod-1a:", chk.passed, "slack", round(chk.slack, 4))
