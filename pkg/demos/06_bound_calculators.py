"""Exact evaluation of the degree and height bounds, logs kept symbolic."""

from arithnull import bounds

for statement, inputs in [
    ("theorem1", {"n": 2, "d": 3}),
    ("theorem1", {"n": 2, "d": 2, "s": 3, "h": "log(4)"}),
    ("cor3", {"n": 2, "d": 2, "vol": 4, "s": 3, "h": "log(4)"}),
    ("lemma-d1", {"n": 3, "h": "log(5)"}),
    ("bernstein", {"n": 2, "d": 2, "h": "log(5)", "vol": 4}),
]:
    rep = bounds.bound_calculators(statement, inputs)
    print(f"{statement:10s} {inputs}")
    print(f"{'':10s} degree <= {rep.degree_bound}; height <= {rep.height_bound}"
          + (f" ~ {float(rep.height_bound):.1f}" if rep.height_bound is not None else ""))

print("available statements:", ", ".join(sorted(bounds.STATEMENTS)))
