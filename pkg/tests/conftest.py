from fractions import Fraction

from hypothesis import strategies as st

from arithnull.exactpoly import Poly, parse_many

small_fraction = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


def polys(nvars: int, max_deg: int = 3, max_terms: int = 5):
    mono = st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars).map(tuple)
    return st.dictionaries(mono, small_fraction, max_size=max_terms).map(lambda t: Poly(nvars, t))


def P(*texts, n=None):
    """Parse one or several polynomials into a common ring."""
    out = parse_many(list(texts), n)
    return out[0] if len(out) == 1 else out


def S(*texts, n=None):
    """Parse a system; always a list."""
    return parse_many(list(texts), n)


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
