"""Exact rational functions and truncated Laurent series over Q.

Everything lives in one multivariate polynomial ring over Q with a fixed
alphabet of parameter names and curve coordinates.  Polynomials are
python-flint ``fmpq_mpoly`` objects; :class:`Rat` pairs a numerator with a
denominator and keeps the pair reduced by a gcd after every operation.
"""

from __future__ import annotations

import random
from math import comb
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import flint

PARAMS: tuple[str, ...] = (
    "u1", "u2", "v", "t", "u", "gamma", "delta", "s", "b", "eps",
    "p1", "p2", "p3", "p4", "p5", "p6",
)
ZVARS: tuple[str, ...] = tuple(f"z{i}" for i in range(10))
AUX: tuple[str, ...] = ("w", "h", "hbar", "X")
ALPHABET: tuple[str, ...] = PARAMS + ZVARS + AUX

CTX = flint.fmpq_mpoly_ctx.get(ALPHABET, "lex")
_GENS = CTX.gens()
_INDEX = {name: i for i, name in enumerate(ALPHABET)}
_ZERO = CTX.from_dict({})
_ONE = CTX.from_dict({(0,) * len(ALPHABET): 1})

Scalar = Union[int, Fraction, "flint.fmpq"]
RatLike = Union["Rat", int, Fraction]


def index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise KeyError(f"unknown variable {name!r}") from None


def gen(name: str):
    """The polynomial generator called ``name``."""
    return _GENS[index(name)]


def const_poly(c: Scalar):
    if isinstance(c, Fraction):
        c = flint.fmpq(c.numerator, c.denominator)
    return _ONE * c


def to_fraction(c) -> Fraction:
    c = flint.fmpq(c)
    return Fraction(int(c.p), int(c.q))


def poly_vars(p) -> set[str]:
    """Names of the generators that occur in polynomial ``p``."""
    if p.is_zero():
        return set()
    degs = p.degrees()
    return {ALPHABET[i] for i, d in enumerate(degs) if d > 0}


def poly_degree(p, name: str) -> int:
    if p.is_zero():
        return -1
    return p.degrees()[index(name)]


def poly_coeffs(p, name: str) -> dict[int, object]:
    """Split ``p`` as a polynomial in ``name``: {k: coefficient of name^k}."""
    i = index(name)
    buckets: dict[int, dict] = {}
    for exps, c in zip(p.monoms(), p.coeffs()):
        k = exps[i]
        e = list(exps)
        e[i] = 0
        buckets.setdefault(k, {})[tuple(e)] = c
    return {k: CTX.from_dict(d) for k, d in buckets.items()}


def poly_low_coeffs(p, name: str, upto: int) -> list:
    """Coefficients of name^0..name^upto of ``p`` (missing ones are zero)."""
    i = index(name)
    buckets: list[dict] = [dict() for _ in range(upto + 1)]
    for exps, c in zip(p.monoms(), p.coeffs()):
        k = exps[i]
        if k <= upto:
            e = list(exps)
            e[i] = 0
            buckets[k][tuple(e)] = c
    return [CTX.from_dict(d) for d in buckets]


def poly_valuation(p, name: str) -> int:
    if p.is_zero():
        raise ZeroDivisionError("valuation of zero polynomial")
    i = index(name)
    return min(e[i] for e in p.monoms())


def poly_shift_down(p, name: str, k: int):
    """Divide ``p`` by name^k (exact, caller guarantees divisibility)."""
    if k == 0:
        return p
    i = index(name)
    d = {}
    for exps, c in zip(p.monoms(), p.coeffs()):
        e = list(exps)
        e[i] -= k
        if e[i] < 0:
            raise ValueError("not divisible")
        d[tuple(e)] = c
    return CTX.from_dict(d)


def poly_truncate(p, bounds: Mapping[str, int]):
    """Drop every term whose exponent in some variable reaches its bound."""
    idx = [(index(n), k) for n, k in bounds.items()]
    d = {}
    for exps, c in zip(p.monoms(), p.coeffs()):
        if all(exps[i] < k for i, k in idx):
            d[exps] = c
    return CTX.from_dict(d)


def poly_total_truncate(p, names: Sequence[str], maxdeg: int):
    idx = [index(n) for n in names]
    d = {}
    for exps, c in zip(p.monoms(), p.coeffs()):
        if sum(exps[i] for i in idx) <= maxdeg:
            d[exps] = c
    return CTX.from_dict(d)


def poly_compose(p, mapping: Mapping[str, object]):
    """Substitute polynomials for generators (all at once)."""
    if not mapping:
        return p
    args = list(_GENS)
    for name, q in mapping.items():
        args[index(name)] = q
    return p.compose(*args)


def poly_subs_rat(p, name: str, num, den):
    """Return (P, D) with p(name = num/den) = P / den^D, D = deg_name p."""
    coeffs = poly_coeffs(p, name)
    if not coeffs:
        return _ZERO, 0
    top = max(coeffs)
    acc = coeffs.get(top, _ZERO)
    den_pow = _ONE
    for k in range(top - 1, -1, -1):
        den_pow = den_pow * den
        acc = acc * num
        ck = coeffs.get(k)
        if ck is not None:
            acc = acc + ck * den_pow
    return acc, top


_COERCIBLE = (int, Fraction, flint.fmpq, flint.fmpq_mpoly)


class Rat:
    """A reduced quotient of two polynomials over Q.

    The denominator is normalised to have leading coefficient 1 (in the lex
    order of :data:`ALPHABET`), so equal functions have equal
    representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced: bool = False):
        if den is None:
            den = _ONE
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if num.is_zero():
                den = _ONE
            elif not den.is_constant():
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        self.num = num
        self.den = den

    # construction -----------------------------------------------------
    @staticmethod
    def const(c: Scalar) -> "Rat":
        return Rat(const_poly(c), _ONE, reduced=True)

    @staticmethod
    def var(name: str) -> "Rat":
        return Rat(gen(name), _ONE, reduced=True)

    @staticmethod
    def coerce(x: RatLike) -> "Rat":
        if isinstance(x, Rat):
            return x
        if isinstance(x, (int, Fraction, flint.fmpq)):
            return Rat.const(x)
        if isinstance(x, flint.fmpq_mpoly):
            return Rat(x, _ONE, reduced=True)
        raise TypeError(f"cannot coerce {type(x).__name__} to Rat")

    # arithmetic -------------------------------------------------------
    def __add__(self, other: RatLike) -> "Rat":
        if not isinstance(other, (Rat,) + _COERCIBLE):
            return NotImplemented
        o = Rat.coerce(other)
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return Rat(self.num + o.num, self.den)
        if self.den.is_constant() and o.den.is_constant():
            return Rat(self.num * o.den + o.num * self.den, self.den * o.den)
        g = self.den.gcd(o.den)
        a = self.den / g
        c = o.den / g
        return Rat(self.num * c + o.num * a, a * o.den)

    __radd__ = __add__

    def __neg__(self) -> "Rat":
        return Rat(-self.num, self.den, reduced=True)

    def __sub__(self, other: RatLike) -> "Rat":
        if not isinstance(other, (Rat,) + _COERCIBLE):
            return NotImplemented
        return self + (-Rat.coerce(other))

    def __rsub__(self, other: RatLike) -> "Rat":
        if not isinstance(other, (Rat,) + _COERCIBLE):
            return NotImplemented
        return Rat.coerce(other) + (-self)

    def __mul__(self, other: RatLike) -> "Rat":
        if not isinstance(other, (Rat,) + _COERCIBLE):
            return NotImplemented
        o = Rat.coerce(other)
        if self.num.is_zero() or o.num.is_zero():
            return ZERO
        if o.den.is_constant() and self.den.is_constant():
            return Rat(self.num * o.num, self.den * o.den)
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n = (self.num / g1) * (o.num / g2)
        d = (self.den / g2) * (o.den / g1)
        return Rat(n, d, reduced=False) if not d.is_constant() else Rat(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "Rat":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return Rat(self.den, self.num)

    def __truediv__(self, other: RatLike) -> "Rat":
        if not isinstance(other, (Rat,) + _COERCIBLE):
            return NotImplemented
        return self * Rat.coerce(other).inverse()

    def __rtruediv__(self, other: RatLike) -> "Rat":
        if not isinstance(other, (Rat,) + _COERCIBLE):
            return NotImplemented
        return Rat.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Rat":
        if k < 0:
            return self.inverse() ** (-k)
        return Rat(self.num ** k, self.den ** k, reduced=True)

    def __eq__(self, other) -> bool:
        try:
            o = Rat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((str(self.num), str(self.den)))

    def __repr__(self) -> str:
        return f"Rat({self})"

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    # queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        n = self.num.coefficient(0) if not self.num.is_zero() else 0
        return to_fraction(n) / to_fraction(self.den.coefficient(0))

    def variables(self) -> set[str]:
        return poly_vars(self.num) | poly_vars(self.den)

    def degree(self, name: str) -> tuple[int, int]:
        return poly_degree(self.num, name), poly_degree(self.den, name)

    # calculus and substitution ---------------------------------------
    def diff(self, name: str) -> "Rat":
        n, d = self.num, self.den
        if poly_degree(d, name) <= 0:
            return Rat(n.derivative(name), d, reduced=True)
        return Rat(n.derivative(name) * d - n * d.derivative(name), d * d)

    def compose(self, mapping: Mapping[str, object]) -> "Rat":
        """Substitute polynomials (Rat with constant denominators or raw
        polynomials) for several variables simultaneously."""
        polys = {}
        for name, q in mapping.items():
            q = Rat.coerce(q) if not isinstance(q, flint.fmpq_mpoly) else Rat(q, _ONE, reduced=True)
            if not q.den.is_constant():
                raise ValueError("compose expects polynomial images")
            polys[name] = q.num / q.den.coefficient(0)
        return Rat(poly_compose(self.num, polys), poly_compose(self.den, polys))

    def rename(self, mapping: Mapping[str, str]) -> "Rat":
        return Rat(
            poly_compose(self.num, {a: gen(b) for a, b in mapping.items()}),
            poly_compose(self.den, {a: gen(b) for a, b in mapping.items()}),
            reduced=True,
        ).renormalised()

    def renormalised(self) -> "Rat":
        return Rat(self.num, self.den)

    def subs(self, name: str, value: RatLike) -> "Rat":
        """Substitute a rational function for one variable."""
        val = Rat.coerce(value)
        if val.den.is_constant():
            return self.compose({name: val})
        pn, dn = poly_subs_rat(self.num, name, val.num, val.den)
        pd, dd = poly_subs_rat(self.den, name, val.num, val.den)
        if pd.is_zero():
            raise ZeroDivisionError(f"substituting {name} = {val} zeroes a denominator")
        k = dn - dd
        if k >= 0:
            return Rat(pn, pd * val.den ** k)
        return Rat(pn * val.den ** (-k), pd)

    def subs_many(self, values: Mapping[str, RatLike]) -> "Rat":
        out = self
        polys = {k: Rat.coerce(v) for k, v in values.items()}
        easy = {k: v for k, v in polys.items() if v.den.is_constant()}
        if easy:
            dval = Rat(poly_compose(self.den, {k: v.num / v.den.coefficient(0) for k, v in easy.items()}))
            if dval.is_zero():
                raise ZeroDivisionError("substitution zeroes a denominator")
            out = out.compose(easy)
        for k, v in polys.items():
            if k not in easy:
                out = out.subs(k, v)
        return out

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        r = self.subs_many({k: Rat.const(Fraction(v)) for k, v in values.items()})
        return r.constant_value()

    # polynomial-in-one-variable views ---------------------------------
    def coeffs_in(self, name: str) -> dict[int, "Rat"]:
        """Coefficients of a function that is polynomial in ``name``."""
        if poly_degree(self.den, name) > 0:
            raise ValueError(f"not polynomial in {name}")
        return {k: Rat(c, self.den) for k, c in poly_coeffs(self.num, name).items()}

    # serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        used = sorted(self.variables(), key=index)
        idx = [index(v) for v in used]

        def enc_used(p):
            return [[[int(e[i]) for i in idx], str(c)] for e, c in zip(p.monoms(), p.coeffs())]

        return {"vars": used, "num": enc_used(self.num), "den": enc_used(self.den), "str": str(self)}

    @staticmethod
    def from_json(data: Mapping) -> "Rat":
        idx = [index(v) for v in data["vars"]]

        def dec(terms):
            d = {}
            for exps, c in terms:
                e = [0] * len(ALPHABET)
                for i, k in zip(idx, exps):
                    e[i] = k
                d[tuple(e)] = flint.fmpq(Fraction(c).numerator, Fraction(c).denominator)
            return CTX.from_dict(d)

        return Rat(dec(data["num"]), dec(data["den"]))


ZERO = Rat(_ZERO, _ONE, reduced=True)
ONE = Rat(_ONE, _ONE, reduced=True)


def V(name: str) -> Rat:
    """Shorthand for the rational function equal to one variable."""
    return Rat.var(name)


def Q(a: int, b: int = 1) -> Rat:
    return Rat.const(Fraction(a, b))


def rsum(items: Iterable[RatLike]) -> Rat:
    """Sum of many terms, grouping equal denominators before combining."""
    groups: dict[str, list] = {}
    for it in items:
        r = Rat.coerce(it)
        if r.is_zero():
            continue
        key = str(r.den)
        if key in groups:
            groups[key][0] = groups[key][0] + r.num
        else:
            groups[key] = [r.num, r.den]
    out = ZERO
    for num, den in groups.values():
        out = out + Rat(num, den)
    return out


# ---------------------------------------------------------------------------
# Truncated Laurent series in one variable
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncSeries:
    """Laurent series sum_{k >= kmin} c_k var^k known exactly below ``order``.

    ``coeffs[i]`` is the coefficient of var^(kmin + i); every coefficient of
    exponent >= ``order`` is unknown.
    """

    var: str
    kmin: int
    coeffs: tuple
    order: int

    def __post_init__(self):
        if self.kmin + len(self.coeffs) > self.order:
            object.__setattr__(self, "coeffs", self.coeffs[: self.order - self.kmin])

    def __getitem__(self, k: int) -> Rat:
        if k >= self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        i = k - self.kmin
        if i < 0 or i >= len(self.coeffs):
            return ZERO
        return self.coeffs[i]

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return self.kmin + i
        return self.order

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        kmin = min(self.kmin, other.kmin)
        order = min(self.order, other.order)
        return TruncSeries(self.var, kmin, tuple(self[k] + other[k] for k in range(kmin, order)), order)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.var, self.kmin, tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def scale(self, c: RatLike) -> "TruncSeries":
        return TruncSeries(self.var, self.kmin, tuple(x * c for x in self.coeffs), self.order)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        va, vb = self.valuation(), other.valuation()
        order = min(self.order + vb, other.order + va)
        kmin = va + vb
        out = []
        for k in range(kmin, order):
            acc = []
            for i in range(va, k - vb + 1):
                a = self[i]
                if a.is_zero():
                    continue
                bb = other[k - i]
                if not bb.is_zero():
                    acc.append(a * bb)
            out.append(rsum(acc))
        return TruncSeries(self.var, kmin, tuple(out), order)

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.var, self.kmin, self.coeffs, min(order, self.order))

    def inverse(self) -> "TruncSeries":
        v = self.valuation()
        if v >= self.order:
            raise ZeroDivisionError("series is zero to its known order")
        lead_inv = self[v].inverse()
        n = self.order - v
        inv = [lead_inv]
        for k in range(1, n):
            acc = rsum(self[v + i] * inv[k - i] for i in range(1, k + 1))
            inv.append(-acc * lead_inv)
        return TruncSeries(self.var, -v, tuple(inv), -v + n)

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncSeries(self.var, 0, (ONE,), 10 ** 9)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner(w)) for inner with positive valuation."""
        vi = inner.valuation()
        if vi < 1:
            raise ValueError("inner series must vanish at 0")
        if self.kmin < 0:
            raise ValueError("outer series must be a power series")
        order = self.order * vi if self.order < 10 ** 8 else inner.order
        order = min(order, inner.order + (self.valuation() - 1) * vi) if self.valuation() > 0 else min(order, inner.order)
        total = TruncSeries(inner.var, 0, (), order)
        power = TruncSeries(inner.var, 0, (ONE,), 10 ** 9)
        for k in range(0, self.order):
            if k * vi >= order:
                break
            c = self[k]
            if not c.is_zero():
                total = total + power.scale(c).truncate(order)
            power = (power * inner).truncate(order)
        return total.truncate(order)


def series_expand(f: RatLike, var: str, point, kmin: int | None, kmax: int) -> TruncSeries:
    """Exact Laurent coefficients of ``f`` in ``var`` around ``point``.

    ``point`` is a rational function free of ``var`` or the string ``"oo"``;
    the expansion variable is the local coordinate var - point (resp. 1/var)
    and the returned series uses the auxiliary name ``h``.  Coefficients of
    exponents ``kmin..kmax`` are returned; ``kmin=None`` starts at the
    actual leading order.
    """
    f = Rat.coerce(f)
    if point == "oo":
        g = f.subs(var, ONE / V("h"))
    else:
        p = Rat.coerce(point)
        if var in p.variables():
            raise ValueError("expansion point depends on the expansion variable")
        if "h" in f.variables() or "h" in p.variables():
            raise ValueError("auxiliary variable h already in use")
        g = f.subs(var, V("h") + p) if not p.is_zero() else f.rename({var: "h"})
    return _laurent_h(g, kmin, kmax)


def _laurent_h(g: Rat, kmin: int | None, kmax: int) -> TruncSeries:
    if g.is_zero():
        start = 0 if kmin is None else kmin
        return TruncSeries("h", start, (), kmax + 1)
    vn = poly_valuation(g.num, "h")
    vd = poly_valuation(g.den, "h")
    lead = vn - vd
    start = lead if kmin is None else kmin
    if start > lead:
        start_eff = start
    else:
        start_eff = lead
    n_terms = kmax - lead + 1
    if n_terms <= 0:
        return TruncSeries("h", start, (), kmax + 1)
    num = poly_low_coeffs(poly_shift_down(g.num, "h", vn), "h", n_terms - 1)
    den = poly_low_coeffs(poly_shift_down(g.den, "h", vd), "h", n_terms - 1)
    d0 = den[0]
    # fraction-free division: q_j = Q_j / d0^(j+1)
    Qs = []
    for j in range(n_terms):
        acc = num[j] * d0 ** j
        for i in range(1, j + 1):
            if not den[i].is_zero():
                acc = acc - den[i] * Qs[j - i] * d0 ** (i - 1)
        Qs.append(acc)
    coeffs = [Rat(Qs[j], d0 ** (j + 1)) for j in range(n_terms)]
    pad = [ZERO] * (lead - start) if start < lead else []
    coeffs = pad + coeffs
    skip = start_eff - lead if start > lead else 0
    if skip:
        coeffs = coeffs[skip:]
    return TruncSeries("h", start, tuple(coeffs), kmax + 1)


def residue_at(f: RatLike, var: str, point) -> Rat:
    """Coefficient of (var - point)^(-1) in the Laurent expansion of ``f``.

    At ``point="oo"`` this is the residue of the differential f d(var) at
    infinity, i.e. minus the coefficient of 1/var in the expansion there.
    """
    f = Rat.coerce(f)
    if point == "oo":
        g = f.subs(var, ONE / V("h")) * (-(ONE / V("h")) ** 2)
        return _laurent_h(g, -1, -1)[-1]
    p = Rat.coerce(point)
    g = f.subs(var, V("h") + p) if not p.is_zero() else f.rename({var: "h"})
    if g.is_zero():
        return ZERO
    vn = poly_valuation(g.num, "h")
    vd = poly_valuation(g.den, "h")
    if vn - vd >= 0:
        return ZERO
    return _laurent_h(g, -1, -1)[-1]


def series_reversion(xs: TruncSeries, K: int) -> TruncSeries:
    """Invert x = c/z + ... : return z(w) with x(z(w)) = 1/w, to order w^K.

    The result is exact for the coefficients of w^1..w^K and satisfies
    x(z(w))*w = 1 + O(w^K).
    """
    if xs.valuation() != -1:
        raise ValueError("x must have a simple pole at the expansion point")
    c = xs[-1]
    if c.is_zero():
        raise ValueError("vanishing leading coefficient")
    # solve y(z(w)) = w for y = 1/x = sum_{k>=1} a_k z^k, one order at a time
    y = xs.inverse()  # power series, valuation 1
    need = K + 1
    if y.order < need:
        raise ValueError("input series not precise enough for requested order")
    a1 = y[1]
    # Fixed-point: z = (w - sum_{k>=2} a_k z^k) / a1
    z = TruncSeries("w", 1, (a1.inverse(),), 2)
    yw = TruncSeries("h", y.kmin, y.coeffs, need)
    for prec in range(3, need + 1):
        zt = TruncSeries("w", z.kmin, z.coeffs, prec)
        zz = TruncSeries("h", zt.kmin, zt.coeffs, prec)
        comp = yw.compose(zz)  # y(z(w)) in variable h
        # correction: coefficient of w^(prec-1) in y(z(w)) - w
        k = prec - 1
        err = comp[k]
        newc = list(zt.coeffs) + [ZERO] * (k - zt.kmin + 1 - len(zt.coeffs))
        newc[k - zt.kmin] = newc[k - zt.kmin] - err / a1
        z = TruncSeries("w", zt.kmin, tuple(newc), prec)
    return TruncSeries("w", z.kmin, z.coeffs, K + 1)


# ---------------------------------------------------------------------------
# Helpers for polynomials in b and random parameter tuples
# ---------------------------------------------------------------------------


def b_degree(r: Rat) -> int:
    if poly_degree(r.den, "b") > 0:
        raise ValueError("not polynomial in b")
    return poly_degree(r.num, "b")


def laurent_s_to_b(r: Rat) -> Rat:
    """Rewrite a Laurent polynomial in s that is invariant under s -> -1/s
    as a polynomial in b = 1/s - s.  Coefficients may be rational in the
    other variables.  Raises ValueError otherwise."""
    si = index("s")
    dk = poly_valuation(r.den, "s")
    rest = poly_shift_down(r.den, "s", dk)
    if poly_degree(rest, "s") > 0:
        raise ValueError("denominator is not a monomial in s")
    buckets: dict[int, dict] = {}
    for exps, c in zip(r.num.monoms(), r.num.coeffs()):
        e = list(exps)
        k = e[si] - dk
        e[si] = 0
        buckets.setdefault(k, {})[tuple(e)] = c
    coeffs = {k: CTX.from_dict(d) for k, d in buckets.items()}
    out = _ZERO
    bpoly = gen("b")
    while True:
        coeffs = {k: c for k, c in coeffs.items() if not c.is_zero()}
        if not coeffs:
            break
        top, bot = max(coeffs), min(coeffs)
        if top < 0 or top != -bot:
            raise ValueError("not a polynomial in b = 1/s - s")
        coef = coeffs[top] * (-1) ** top
        out = out + coef * bpoly ** top
        for j in range(top + 1):
            k = 2 * j - top
            coeffs[k] = coeffs.get(k, _ZERO) - coef * (comb(top, j) * (-1) ** j)
    return Rat(out, rest)


def random_tuple(names: Sequence[str], rng: random.Random, height: int = 9) -> dict[str, Fraction]:
    """Small-height random positive-or-negative rationals, pairwise distinct
    in absolute value and never zero."""
    out: dict[str, Fraction] = {}
    used: set[Fraction] = set()
    while len(out) < len(names):
        q = Fraction(rng.randint(1, height), rng.randint(1, height))
        if rng.random() < 0.3:
            q = -q
        if abs(q) in used or q in (1, -1):
            continue
        used.add(abs(q))
        out[names[len(out)]] = q
    return out
