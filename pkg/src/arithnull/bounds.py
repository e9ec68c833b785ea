"""Closed-form degree and height bounds, evaluated exactly.

Every height bound here is a rational combination of logarithms of
integers, so it is represented by :class:`LogExpr`: a rational constant plus
rational multiples of ``log p`` for primes ``p``.  Two bounds are equal iff
their canonical forms are equal, which makes regression tables digit-exact.
Heights supplied as inputs (``h``, ``hV``, ``eta`` ...) are ``LogExpr`` too,
parsed from strings such as ``"log(4)"`` or ``"2*log(3) + 1/2"``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import sympy


class LogExpr:
    __slots__ = ("terms",)

    def __init__(self, terms: Dict[int, Fraction] = None):
        # key 0 holds the rational constant; other keys are primes
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, q) -> "LogExpr":
        return cls({0: Fraction(q)})

    @classmethod
    def log(cls, q) -> "LogExpr":
        q = Fraction(q)
        if q <= 0:
            raise ValueError("log of a nonpositive number")
        out: Dict[int, Fraction] = {}
        for p, e in sympy.factorint(q.numerator).items():
            out[int(p)] = out.get(int(p), 0) + e
        for p, e in sympy.factorint(q.denominator).items():
            out[int(p)] = out.get(int(p), 0) - e
        return cls(out)

    @classmethod
    def coerce(cls, x) -> "LogExpr":
        if isinstance(x, LogExpr):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        if isinstance(x, str):
            return parse_logexpr(x)
        if isinstance(x, float):
            raise TypeError("floats are not exact; pass a string such as 'log(4)' or '3/2'")
        raise TypeError(f"cannot read {x!r} as a log expression")

    def __add__(self, other):
        other = LogExpr.coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LogExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return LogExpr({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-LogExpr.coerce(other))

    def __rsub__(self, other):
        return LogExpr.coerce(other) - self

    def __mul__(self, c):
        if isinstance(c, LogExpr):
            if set(c.terms) <= {0}:
                c = c.terms.get(0, Fraction(0))
            elif set(self.terms) <= {0}:
                return c * self.terms.get(0, Fraction(0))
            else:
                raise ValueError("product of two non-constant log expressions is not linear")
        if not isinstance(c, (int, Fraction)):
            raise TypeError("log expressions scale by exact rationals only")
        return LogExpr({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (Fraction(1) / Fraction(c))

    def __eq__(self, other):
        try:
            other = LogExpr.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __float__(self):
        return float(sum(float(v) * (1.0 if k == 0 else math.log(k)) for k, v in sorted(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            v = self.terms[k]
            if k == 0:
                body = str(v)
            elif v == 1:
                body = f"log({k})"
            elif v == -1:
                body = f"-log({k})"
            else:
                body = f"{v}*log({k})"
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LogExpr({str(self)!r})"

    def is_nonnegative(self) -> bool:
        return float(self) >= 0


_TERM = re.compile(r"^\s*(?:(?P<coef>\d+(?:/\d+)?|\d*\.\d+)\s*\*\s*)?log\(\s*(?P<arg>\d+(?:/\d+)?)\s*\)\s*$"
                   r"|^\s*(?P<num>\d+(?:/\d+)?|\d*\.\d+)\s*$")


def parse_logexpr(text: str) -> LogExpr:
    """Parse sums like ``"2*log(3) - 1/2 + log(5/2)"``; decimals are read exactly."""
    text = text.strip()
    if not text:
        raise ValueError("empty log expression")
    if text[0] not in "+-":
        text = "+" + text
    pieces = re.findall(r"([+-])([^+-]+)", text)
    if "".join(s + b for s, b in pieces).replace(" ", "") != text.replace(" ", ""):
        raise ValueError(f"cannot parse {text!r}")
    total = LogExpr()
    for sign, body in pieces:
        m = _TERM.match(body)
        if not m:
            raise ValueError(f"cannot parse term {body!r}")
        if m.group("num") is not None:
            term = LogExpr.const(Fraction(m.group("num")))
        else:
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            term = LogExpr.log(Fraction(m.group("arg"))) * coef
        total = total + (term if sign == "+" else -term)
    return total


def log(q) -> LogExpr:
    return LogExpr.log(q)


# reports


@dataclass
class BoundReport:
    statement: str
    inputs: Dict[str, object]
    degree_bound: Optional[Fraction] = None
    height_bound: Optional[LogExpr] = None
    extra: Dict[str, object] = field(default_factory=dict)
    formula: str = ""

    def as_dict(self):
        def enc(v):
            if isinstance(v, LogExpr):
                return {"exact": str(v), "value": float(v)}
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v
        out = {
            "statement": self.statement,
            "inputs": {k: (str(v) if isinstance(v, (LogExpr, Fraction)) else enc(v)) for k, v in sorted(self.inputs.items())},
            "formula": self.formula,
        }
        if self.degree_bound is not None:
            out["degree_bound"] = str(self.degree_bound)
        if self.height_bound is not None:
            out["height_bound"] = enc(self.height_bound)
        for k, v in sorted(self.extra.items()):
            out[k] = enc(v)
        return out


# helpers for statements


def _int(inputs, key) -> int:
    if key not in inputs:
        raise KeyError(key)
    v = Fraction(inputs[key])
    if v.denominator != 1:
        raise ValueError(f"{key} must be an integer")
    return int(v)


def _h(inputs, key) -> LogExpr:
    if key not in inputs:
        raise KeyError(key)
    return LogExpr.coerce(inputs[key])


def _ints(inputs, key) -> List[int]:
    v = inputs[key]
    if isinstance(v, str):
        v = [x for x in v.split(",") if x.strip()]
    return [int(Fraction(x)) for x in v]


def _hs(inputs, key) -> List[LogExpr]:
    v = inputs[key]
    if isinstance(v, str):
        v = [x for x in v.split(",") if x.strip()]
    return [LogExpr.coerce(x) for x in v]


def _archimedean(inputs) -> bool:
    place = str(inputs.get("place", "inf")).lower()
    return place in ("inf", "infinity", "oo")


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def _sorted_desc(ds):
    return sorted(ds, reverse=True)


# statements


def _arith_bezout(I):
    hV, hW = _h(I, "hV"), _h(I, "hW")
    degV, degW, n = _int(I, "degV"), _int(I, "degW"), _int(I, "n")
    dimV, dimW = _int(I, "dimV"), _int(I, "dimW")
    c = LogExpr.const(sum(Fraction(1, 2 * (i + j + 1)) for i in range(dimV + 1) for j in range(dimW + 1)))
    c = c + log(2) * (n - Fraction(dimV + dimW, 2))
    return BoundReport("arith-bezout", I, degV * degW, hV * degW + hW * degV + c * (degV * degW),
                       {"c": c}, "h(V)degW + degV h(W) + c degV degW")


def _afin(I):
    hV, hphi = _h(I, "hV"), _h(I, "h_phi")
    degV, r, n, N = _int(I, "degV"), _int(I, "r"), _int(I, "n"), _int(I, "N")
    return BoundReport("afin", I, None, hV + (hphi + 8 * log(n + N + 1)) * ((r + 1) * degV),
                       formula="h(V) + (r+1)(h(phi) + 8 log(n+N+1)) degV")


def _proyeccion(I):
    hV = _h(I, "hV")
    degV, r, n, m = _int(I, "degV"), _int(I, "r"), _int(I, "n"), _int(I, "m")
    return BoundReport("proyeccion", I, None, hV + log(n + m + 1) * (3 * (r + 1) * degV),
                       formula="h(V) + 3(r+1) log(n+m+1) degV")


def _inversible(I):
    hV, hpsi = _h(I, "hV"), _h(I, "h_psi")
    degV, r, n = _int(I, "degV"), _int(I, "r"), _int(I, "n")
    return BoundReport("inversible", I, None, hV + (hpsi + 5 * log(n + 1)) * ((r + 1) * degV),
                       formula="h(V) + (r+1)(h(psi) + 5 log(n+1)) degV")


def _import_like(name):
    def fn(I):
        hV, hf = _h(I, "hV"), _h(I, "h_f")
        degV, degf, n = _int(I, "degV"), _int(I, "deg_f"), _int(I, "n")
        h = hV * degf + hf * degV
        formula = "deg f h(V) + h(f) degV"
        if _archimedean(I):
            h = h + log(n + 1) * (degf * degV)
            formula += " + log(n+1) deg f degV"
        return BoundReport(name, I, degf * degV if name == "inters" else None, h, formula=formula)
    return fn


def _bezloc(I):
    ds = _ints(I, "di")
    hs = _hs(I, "h_fi")
    if len(hs) != len(ds):
        raise ValueError("di and h_fi must have the same length")
    hV, degV, n = _h(I, "hV"), _int(I, "degV"), _int(I, "n")
    s = len(ds)
    inner = hV + sum((hi / di for hi, di in zip(hs, ds)), LogExpr()) * degV
    formula = "prod d_i (h(V) + (sum h_i/d_i) degV"
    if _archimedean(I):
        inner = inner + log(n + 1) * (s * degV)
        formula += " + s log(n+1) degV"
    return BoundReport("bezloc", I, _prod(ds) * degV, inner * _prod(ds), formula=formula + ")")


def _bezloc1(I):
    ds = _ints(I, "di")
    hs = _hs(I, "h_fi")
    if len(hs) != len(ds):
        raise ValueError("di and h_fi must have the same length")
    n = _int(I, "n")
    s = len(ds)
    inner = sum((hi / di for hi, di in zip(hs, ds)), LogExpr())
    formula = "prod d_i (sum h_i/d_i"
    if _archimedean(I):
        inner = inner + log(n + 1) * (n + s)
        formula += " + (n+s) log(n+1)"
    return BoundReport("bezloc1", I, _prod(ds), inner * _prod(ds), formula=formula + ")")


def _inters_global(I):
    ds = _sorted_desc(_ints(I, "di"))
    h, hV = _h(I, "h"), _h(I, "hV")
    degV, r, n = _int(I, "degV"), _int(I, "r"), _int(I, "n")
    n0 = min(r, len(ds))
    top = ds[:n0]
    inner = hV + h * (sum((Fraction(1, di) for di in top), Fraction(0)) * degV) + log(n + 1) * (n0 * degV)
    return BoundReport("inters-global", I, _prod(top) * degV, inner * _prod(top),
                       {"n0": n0}, "prod_{i<=n0} d_i (h(V) + (sum 1/d_i) h degV + n0 log(n+1) degV)")


def _bernstein(I):
    n, d, vol = _int(I, "n"), _int(I, "d"), _int(I, "vol")
    h = _h(I, "h")
    height = (h * n + log(n + 1) * (2 ** (2 * n + 3) * d)) * vol
    return BoundReport("bernstein", I, Fraction(vol), height, formula="deg <= Vol; (n h + 2^(2n+3) log(n+1) d) Vol")


def _toric(I):
    r, card, vol = _int(I, "r"), _int(I, "card"), _int(I, "vol")
    if card < 2:
        raise ValueError("toric bound needs #A >= 2")
    height = log(card) * (2 ** (2 * r + 2) * vol)
    extra = {}
    if "n" in I and "d" in I:
        extra["height_bound_polynomial_form"] = log(_int(I, "n") + 1) * (2 ** (2 * r + 2) * _int(I, "d") * vol)
    return BoundReport("toric", I, None, height, extra, "2^(2r+2) log(#A) Vol; 2^(2r+2) log(n+1) d Vol")


def _norma(I):
    hV, hf = _h(I, "hV"), _h(I, "h_f")
    degV, degf, n, r = _int(I, "degV"), _int(I, "deg_f"), _int(I, "n"), _int(I, "r")
    h = hV * degf + hf * degV
    formula = "deg f h(V) + h(f) degV"
    if _archimedean(I):
        h = h + log(n + 1) * ((r + 1) * degf * degV)
        formula += " + (r+1) log(n+1) deg f degV"
    return BoundReport("norma", I, degf * degV, h, formula=formula)


def _traza(I):
    hV, hv = _h(I, "hV"), _h(I, "h")
    degV, d, n, r = _int(I, "degV"), _int(I, "d"), _int(I, "n"), _int(I, "r")
    if _archimedean(I):
        h = hV * d + (hv + log(2)) * degV + log(n + 1) * ((r + 1) * d * degV)
        formula = "d h(V) + (h + log 2) degV + (r+1) log(n+1) d degV"
    else:
        h = hV * d + hv * degV
        formula = "d h(V) + h degV"
    return BoundReport("traza", I, d * degV, h, formula=formula)


def _division(I):
    n, d, r = _int(I, "n"), _int(I, "d"), _int(I, "r")
    degV, dtg, dxg = _int(I, "degV"), _int(I, "deg_t_g"), _int(I, "deg_x_g")
    hg, hV, hv = _h(I, "h_g"), _h(I, "hV"), _h(I, "h")
    big = n * d + max((n + 1) * d, dxg)
    small = n * d + max(d, dxg)
    deg_total = dtg + big * degV
    if _archimedean(I):
        height = (hg + hV * small + (hv * (n + 1) + log(n + r + 1) * ((r + 6) * big)) * degV
                  + log(r + 1) * (2 * dtg))
        formula = ("h(g) + (nd + max(d, deg_x g)) h(V) + ((n+1)h + (r+6) log(n+r+1)(nd + max((n+1)d, deg_x g))) degV"
                   " + 2 log(r+1) deg_t g")
    else:
        height = hg + hV * small + hv * ((n + 1) * degV)
        formula = "h(g) + (nd + max(d, deg_x g)) h(V) + (n+1) h degV"
    return BoundReport("division", I, Fraction(deg_total), height, {"deg_x_bound": n * d}, formula)


def _division_n0(I):
    degg, r = _int(I, "deg_g"), _int(I, "r")
    hg, hv = _h(I, "h_g"), _h(I, "h")
    if _archimedean(I):
        height = hg + hv + log(r + 1) * (2 * degg)
        formula = "h(g) + h + 2 log(r+1) deg g"
    else:
        height = hg + hv
        formula = "h(g) + h"
    return BoundReport("division-n0", I, Fraction(degg), height, formula=formula)


def _nullstlocal(I):
    n, s = _int(I, "n"), _int(I, "s")
    d = max(_int(I, "d"), 2)
    hv = _h(I, "h")
    degs = _ints(I, "degVj")
    hts = _hs(I, "hVj")
    n0 = min(n, s)
    deg = 2 * n * d * (1 + sum(degs[: n0 - 1]))
    height = (sum(hts, LogExpr()) * (2 * n * d)
              + (hv * (n + 1) + log(n + 1) * (2 * n * (2 * n + 5) * d)) * (1 + sum(degs)))
    return BoundReport("nullstlocal", I, Fraction(deg), height, {"d_effective": d},
                       "deg <= 2nd(1 + sum_{j<min(n,s)} degV_j); 2nd sum h(V_j) + ((n+1)h + 2n(2n+5) log(n+1) d)(1 + sum degV_j)")


def _extrinsecolocal(I):
    n, d = _int(I, "n"), _int(I, "d")
    hv = _h(I, "h")
    height = hv * (4 * n * (n + 1) * d ** n) + log(n + 1) * (4 * n * (4 * n + 5) * d ** (n + 1))
    return BoundReport("extrinsecolocal", I, Fraction(4 * n * d ** n), height,
                       formula="deg <= 4 n d^n; 4n(n+1) d^n h + 4n(4n+5) log(n+1) d^(n+1)")


def _theorem1(I):
    n, d = _int(I, "n"), _int(I, "d")
    deg = 4 * n * d ** n
    height = None
    if "s" in I and "h" in I:
        s, hv = _int(I, "s"), _h(I, "h")
        height = (hv + log(s) + log(n + 1) * ((n + 7) * d)) * (4 * n * (n + 1) * d ** n)
    return BoundReport("theorem1", I, Fraction(deg), height,
                       formula="deg <= 4 n d^n; 4n(n+1) d^n (h + log s + (n+7) log(n+1) d)")


def _lemma_d1(I):
    n, hv = _int(I, "n"), _h(I, "h")
    return BoundReport("lemma-d1", I, Fraction(0), (hv + log(n + 1)) * (n + 1),
                       formula="deg 0; (n+1)(h + log(n+1))")


def _lemma_n1(I):
    d, hv = _int(I, "d"), _h(I, "h")
    return BoundReport("lemma-n1", I, Fraction(d - 1), (hv + d) * (2 * d), formula="deg <= d-1; 2d(h + d)")


def _theorem2(I):
    n, d, s = _int(I, "n"), _int(I, "d"), _int(I, "s")
    hv, delta, eta = _h(I, "h"), _int(I, "delta"), _h(I, "eta")
    inner = eta * 2 + (hv + log(s)) * delta + log(d + 1) * (21 * (n + 1) ** 2 * d * delta)
    return BoundReport("theorem2", I, Fraction(2 * n * n * d * delta), inner * ((n + 1) ** 2 * d),
                       formula="deg <= 2 n^2 d delta; (n+1)^2 d (2 eta + (h + log s) delta + 21 (n+1)^2 d log(d+1) delta)")


def _cor3(I):
    n, d, vol = _int(I, "n"), _int(I, "d"), _int(I, "vol")
    deg = 2 * n * n * d * vol
    height = None
    if "s" in I and "h" in I:
        s, hv = _int(I, "s"), _h(I, "h")
        height = (hv + log(s) + log(d + 1) * (2 ** (2 * n + 4) * d)) * (2 * (n + 1) ** 3 * d * vol)
    return BoundReport("cor3", I, Fraction(deg), height,
                       formula="deg <= 2 n^2 d V; 2(n+1)^3 d V (h + log s + 2^(2n+4) d log(d+1))")


def _cor_bezout(I):
    ds = _sorted_desc(_ints(I, "di"))
    n, s, hv = _int(I, "n"), len(ds), _h(I, "h")
    d = ds[0]
    n0 = min(n, s)
    P = _prod(ds[: n0 - 1])
    height = (hv + log(s) + log(d + 1) * (3 * n * (n + 7) * d)) * (2 * (n + 1) ** 3 * d * P)
    return BoundReport("cor-bezout", I, Fraction(2 * n * n * d * P), height, {"n0": n0},
                       "deg <= 2 n^2 d prod_{j<n0} d_j; 2(n+1)^3 d prod_{j<n0} d_j (h + log s + 3n(n+7) d log(d+1))")


def _lemma_dn(I):
    ds = _sorted_desc(_ints(I, "di"))
    n, s, hv = _int(I, "n"), len(ds), _h(I, "h")
    d = ds[0]
    n0, n1 = min(n, s), min(n + 1, s)
    delta = _prod(ds[: n0 - 1])
    eta = (hv + log(s) + 3 * n * (n + 1) * d) * (n * _prod(ds[: max(n1 - 2, 0)]))
    return BoundReport("lemma-dn", I, None, None, {"delta": delta, "eta": eta, "n0": n0, "n1": n1},
                       "delta <= prod_{j<n0} d_j; eta <= n prod_{j<=n1-2} d_j (h + log s + 3n(n+1)d)")


def _cota_esparsa(I):
    n, s, d, vol = _int(I, "n"), _int(I, "s"), _int(I, "d"), _int(I, "vol")
    hv = _h(I, "h")
    eta = (hv + log(s) + 2 ** (2 * n + 4) * d) * (n * vol)
    return BoundReport("cota-esparsa", I, None, None, {"delta": vol, "eta": eta},
                       "delta <= V; eta <= n V (h + log s + 2^(2n+4) d)")


def _bertini(I):
    n, d = _int(I, "n"), _int(I, "d")
    return BoundReport("bertini", I, None, log(d + 1) * (2 * (n + 1)),
                       {"deg_F": 4 * (d + 1) ** (2 * n)}, "h(a_i) <= 2(n+1) log(d+1); deg F <= 4 (d+1)^(2n)")


def _variables(I):
    n, d = _int(I, "n"), _int(I, "d")
    return BoundReport("variables", I, None, log(d + 1) * (2 * (n + 1)),
                       formula="h(b_k) <= 2(n+1) log(d+1)")


def _radical(I):
    d, ell = _int(I, "d"), _int(I, "ell")
    return BoundReport("radical", I, Fraction(2 * (d + 1) ** (2 * ell)), None,
                       {"deg_F_unit_case": (d + 1) ** ell, "deg_F_radical_case": 2 * (d + 1) ** (2 * ell)},
                       "deg F <= (d+1)^l (unit ideal); deg F <= 2 (d+1)^(2l) (radical)")


def _noether(I):
    degV = _int(I, "degV")
    return BoundReport("noether", I, Fraction(2 * degV * degV), None, formula="deg_{U_k} G <= 2 degV^2")


def _geometric_example(I):
    n, d, hv = _int(I, "n"), _int(I, "d"), _h(I, "h")
    return BoundReport("geometric-example", I, Fraction(2 * n * n * d),
                       (hv + log(n + 1) * (8 * n * d)) * ((n + 1) ** 2),
                       {"closed_form_degree": n * (d - 1)},
                       "deg <= 2 n^2 d; (n+1)^2 (h + 8 n log(n+1) d)")


def _ejemplosparse(I):
    n, d, s, hv = _int(I, "n"), _int(I, "d"), _int(I, "s"), _h(I, "h")
    height = (hv + log(s) + log(n * d + 1) * (n * 2 ** (2 * n + 4) * d)) * (2 * n * n * (n + 1) ** 3 * d * d)
    return BoundReport("ejemplosparse", I, Fraction(2 * n ** 4 * d * d), height, {"vol": n * d},
                       "Vol = n d; deg <= 2 n^4 d^2; 2 n^2 (n+1)^3 d^2 (h + log s + n 2^(2n+4) d log(nd+1))")


def _masser_philippon(I):
    n, d, hv = _int(I, "n"), _int(I, "d"), _h(I, "h")
    return BoundReport("masser-philippon", I, None, None,
                       {"deg_g1_lower": d ** n - d, "height_a_lower": hv * d ** (n - 1)},
                       "deg g_1 >= d^n - d; h(a) >= d^(n-1) h (lower bounds)")


def _dnh(I):
    n, d, hv = _int(I, "n"), _int(I, "d"), _h(I, "h")
    return BoundReport("dnh", I, None, None, {"height_a_lower": hv * d ** n}, "h(a) >= d^n h (lower bound)")


def _determinant(I):
    s, d, n, hv = _int(I, "s"), _int(I, "d"), _int(I, "n"), _h(I, "h")
    if _archimedean(I):
        return BoundReport("determinant", I, Fraction(s * d), (hv + log(s) + log(n + 1) * d) * s,
                           formula="s (h + log s + d log(n+1))")
    return BoundReport("determinant", I, Fraction(s * d), hv * s, formula="s h_p")


STATEMENTS: Dict[str, Callable] = {
    "arith-bezout": _arith_bezout,
    "afin": _afin,
    "proyeccion": _proyeccion,
    "inversible": _inversible,
    "import": _import_like("import"),
    "inters": _import_like("inters"),
    "bezloc": _bezloc,
    "bezloc1": _bezloc1,
    "inters-global": _inters_global,
    "bernstein": _bernstein,
    "toric": _toric,
    "norma": _norma,
    "traza": _traza,
    "division": _division,
    "division-n0": _division_n0,
    "nullstlocal": _nullstlocal,
    "extrinsecolocal": _extrinsecolocal,
    "theorem1": _theorem1,
    "lemma-d1": _lemma_d1,
    "lemma-n1": _lemma_n1,
    "theorem2": _theorem2,
    "cor3": _cor3,
    "cor-bezout": _cor_bezout,
    "lemma-dn": _lemma_dn,
    "cota-esparsa": _cota_esparsa,
    "bertini": _bertini,
    "variables": _variables,
    "radical": _radical,
    "noether": _noether,
    "geometric-example": _geometric_example,
    "ejemplosparse": _ejemplosparse,
    "masser-philippon": _masser_philippon,
    "dnh": _dnh,
    "determinant": _determinant,
}


def bound_calculators(statement: str, inputs: dict) -> BoundReport:
    """Evaluate the named bound exactly; missing inputs raise ``ValueError``."""
    try:
        fn = STATEMENTS[statement]
    except KeyError:
        raise ValueError(f"unknown statement {statement!r}; known: {', '.join(sorted(STATEMENTS))}") from None
    try:
        return fn(dict(inputs))
    except KeyError as exc:
        raise ValueError(f"statement {statement!r} needs input {exc.args[0]!r}") from None
