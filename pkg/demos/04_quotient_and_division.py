"""Finite quotient algebras, norms and traces, and division by the trace formula."""

from arithnull import quotient
from arithnull.exactpoly import parse_many, render

fs = parse_many(["x1^2 + x2^2 - 5", "x1*x2 - 2"])
B = quotient.quotient_algebra(fs)
print("Groebner basis:", [render(g) for g in B.gb.generators])
print("standard monomials:", B.basis, "dimension", B.dim)

x1, x2 = parse_many(["x1", "x2"])
cp = quotient.charpoly(B, x1 + x2)
print("charpoly of x1 + x2 (constant first):", [str(c) for c in cp.coefficients] + ["1"])
print("norm", cp.norm, "trace", cp.trace)

# the adjoint gives inverses of units
star = quotient.adjoint(B, x1 + 3)
print("(x1 + 3)^* =", render(star), " and (x1 + 3)(x1 + 3)^* reduces to", render(B.normal_form(star * (x1 + 3))))

# trace of f* g read from a determinant polynomial, with a complex oracle
tr = quotient.trace_roots_of_unity(B, x1 + 3, x2)
print(f"Tr((x1+3)^* x2) = {tr.value}; roots-of-unity oracle error {tr.oracle_error:.2e}")

# the pseudo-Jacobian and its trace functional
td = quotient.pseudo_jacobian(fs)
sigma = quotient.tate_trace(B, td)
print("sigma on the basis:", [str(v) for v in sigma.values])
print("checks:", quotient.trace_checks(sigma, fs, [x1 ** 3 + x2, x1 * x2 + 7]))

# divide (x1 + 3)(x1 x2 - x2 + 3) by x1 + 3 inside B
g = B.normal_form((x1 + 3) * (x1 * x2 - x2 + 3))
res = quotient.divide_trace_formula(B, td, x1 + 3, g)
print("quotient:", render(res.q_reduced), "| checks:", res.as_dict()["checks"])
