"""Searching, verifying and stress-testing Bezout certificates a = sum g_i f_i."""

from arithnull import nullsatz
from arithnull.exactpoly import parse_many, render

fs = parse_many(["x1 - 1", "x2 - x1^2", "3 - x2^2"])
cert = nullsatz.certificate_search(fs)
print("a =", cert.a, "at cofactor degree", cert.degree_bound)
for k, g in enumerate(cert.g, 1):
    print(f"  g{k} = {render(g)}")
rep = nullsatz.certificate_verify(cert, fs)
print("identity holds:", rep.identity)
for name, check in sorted(rep.bounds.items()):
    print(f"  {name:9s} degree_ok={check.degree_ok} height_ok={check.height_ok}")

# closed-form certificates exist for the geometric family
fs, closed = nullsatz.fixture_geometric(2, 3, 5)
print("geometric family, closed form: a =", closed.a, "cofactors", [render(g) for g in closed.g])

# extremal systems force large a: 3^(2^2) divides every certificate here
fs = nullsatz.fixture_dnh(2, 2, 3)
for seed in (None, 1, 2):
    c = nullsatz.certificate_search(fs, column_seed=seed)
    w = nullsatz.check_dnh_witness(c, 2, 2, 3)
    print(f"column seed {seed}: a = {c.a}, 81 | a: {w.divisible}")

# systems with a common zero have no certificate
try:
    nullsatz.certificate_search(parse_many(["x1^2 - 1", "x1*x2 - x2"]))
except nullsatz.InfeasibleError as exc:
    print("infeasible:", exc, "| common zero:", exc.common_zero)

# generic position by small integer combinations and coordinate changes
prep = nullsatz.prepare_system(parse_many(["x1^2", "x1 + x2", "x2 - 1"]), seed=0)
print("prepared in", prep.attempts, "attempt(s); entries within cap:", prep.entries_within_cap())
