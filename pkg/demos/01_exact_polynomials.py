"""Exact polynomial arithmetic over the rationals.

Polynomials are sparse maps from exponent tuples to Fractions, rendered in
graded reverse-lexicographic order.  Nothing here ever touches a float.
"""

from fractions import Fraction

from arithnull.exactpoly import (content_and_primitive, evaluate, homogenize, parse, parse_many, render,
                                 substitute_affine)

f, g = parse_many(["3*x1^2*x2 - 1/2*x2 + 7", "x1 + x2"])
print("f         =", render(f))
print("g         =", render(g))
print("f * g     =", render(f * g))
print("f(3/2, 2) =", evaluate(f, [Fraction(3, 2), 2]))

# the homogenizing variable is printed as x1 here because it sits at index 0
print("homogenize(g^2 + 1) =", render(homogenize(g ** 2 + 1), ["x0", "x1", "x2"]))

c, prim = content_and_primitive(parse("4/3*x1 + 2/9"))
print(f"content of 4/3*x1 + 2/9 is {c}, primitive part {render(prim)}")

# an affine change of coordinates x -> M x + b
h = substitute_affine(parse("x1^2 - x2"), [[1, 1], [0, 2]], [1, 0])
print("x1^2 - x2 after (x1, x2) -> (x1 + x2 + 1, 2*x2):", render(h))

# the text format round-trips bit for bit
assert parse(render(f * g), 2) == f * g
