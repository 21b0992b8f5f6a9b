"""Genus-zero refined spectral curves and their unstable correlators.

Functions of the curve coordinate are stored as :class:`Rat` objects in the
reserved variable ``w`` and renamed on demand.  Differentials are written in
the dz basis: a function f(z_1, ..., z_n) stands for f dz_1 ... dz_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .ratfun import ONE, ZERO, Q, Rat, V, poly_coeffs, poly_degree, residue_at

W = "w"
Point = Union[Rat, str]  # a rational point or the string "oo"
OO = "oo"

CURVE_NAMES = ("main", "bipartite", "monotone", "mixed", "gbe", "jbe", "lbe")

CURVE_PARAMS: dict[str, tuple[str, ...]] = {
    "main": ("u1", "u2", "v", "t"),
    "bipartite": ("u1", "u2", "t"),
    "monotone": ("v", "t"),
    "mixed": ("u1", "v", "t"),
    "gbe": ("u", "t"),
    "jbe": ("gamma", "delta", "t"),
    "lbe": ("gamma", "t"),
}


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class Mobius:
    """z -> (a z + b) / (c z + d)."""

    a: Rat
    b: Rat
    c: Rat
    d: Rat

    def at(self, var: str) -> Rat:
        z = V(var)
        return (self.a * z + self.b) / (self.c * z + self.d)

    def derivative_at(self, var: str) -> Rat:
        z = V(var)
        return (self.a * self.d - self.b * self.c) / (self.c * z + self.d) ** 2

    def image(self, p: Point) -> Point:
        if p == OO:
            if self.c.is_zero():
                return OO
            return self.a / self.c
        den = self.c * p + self.d
        if den.is_zero():
            return OO
        return (self.a * p + self.b) / den


def involution(x: Rat, var: str = W) -> Mobius:
    """Deck transformation of a degree-two rational function ``x(var)``.

    Writes x = P/Q and splits P(z)Q(w') - P(w')Q(z) = (z - w') L(z, w') with
    L bilinear; sigma(z) is the root of L(z, .) = 0.
    """
    za, zb = "z8", "z9"
    if za in x.variables() or zb in x.variables():
        raise CurveError("scratch variables already in use")
    P = Rat(x.num)
    Qd = Rat(x.den)
    Pa, Pb = P.rename({var: za}), P.rename({var: zb})
    Qa, Qb = Qd.rename({var: za}), Qd.rename({var: zb})
    diff = Pa * Qb - Pb * Qa
    L = diff / (V(za) - V(zb))
    if not L.is_poly():
        raise CurveError("x is not a rational function of the coordinate")
    if L.is_zero():
        raise CurveError("x is constant")
    coeffs = {}
    for i, ci in poly_coeffs(L.num, za).items():
        for j, cij in poly_coeffs(ci, zb).items():
            if i > 1 or j > 1:
                raise CurveError("x does not have degree two")
            coeffs[(i, j)] = Rat(cij, L.den)
    a = coeffs.get((1, 1), ZERO)
    bz = coeffs.get((1, 0), ZERO)
    cw = coeffs.get((0, 1), ZERO)
    d = coeffs.get((0, 0), ZERO)
    if a.is_zero() and cw.is_zero():
        raise CurveError("x does not have degree two")
    # a z w + bz z + cw w + d = 0  =>  w = -(bz z + d) / (a z + cw)
    sig = Mobius(-bz, -d, a, cw)
    s = sig.at(var)
    if (s - V(var)).is_zero():
        raise CurveError("involution is the identity")
    return sig


@dataclass
class RefinedSpectralCurve:
    """A genus-zero refined spectral curve (x, y, P_+, mu)."""

    name: str
    params: dict[str, Rat]
    x: Rat
    y: Rat
    P_plus: list[Point]
    mu: list[Rat]
    P: list[Point] = field(default_factory=list)
    sigma: Mobius = None  # type: ignore[assignment]
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.sigma is None:
            self.sigma = involution(self.x)
        if len(self.mu) != len(self.P_plus):
            raise CurveError("one mu value is required per point of P_+")
        self._cache: dict = {}

    # basic functions ----------------------------------------------------
    def x_at(self, var: str) -> Rat:
        return self.x.rename({W: var}) if var != W else self.x

    def dx_at(self, var: str) -> Rat:
        key = ("dx", var)
        if key not in self._cache:
            self._cache[key] = self.x.diff(W).rename({W: var}) if var != W else self.x.diff(W)
        return self._cache[key]

    def y_at(self, var: str) -> Rat:
        return self.y.rename({W: var}) if var != W else self.y

    def sigma_at(self, var: str) -> Rat:
        return self.sigma.at(var)

    @property
    def y_anti(self) -> Rat:
        """(y(z) - y(sigma(z))) / 2."""
        if "yanti" not in self._cache:
            ys = self.y.subs(W, self.sigma.at(W))
            self._cache["yanti"] = (self.y - ys) * Q(1, 2)
        return self._cache["yanti"]

    def yanti_at(self, var: str) -> Rat:
        return self.y_anti.rename({W: var}) if var != W else self.y_anti

    def kernel_den_at(self, var: str) -> Rat:
        """omega01(z) - omega01(sigma(z)) in the dz basis: 2 ytilde x'."""
        key = ("kden", var)
        if key not in self._cache:
            self._cache[key] = 2 * self.yanti_at(var) * self.dx_at(var)
        return self._cache[key]

    # differentials --------------------------------------------------------
    def eta(self, c: Point, var: str) -> Rat:
        """eta^c(z)/dz = 1/(z - c) - 1/(z - sigma(c)), infinite terms dropped."""
        sc = self.sigma.image(c)
        if c != OO and sc != OO and (Rat.coerce(c) - sc).is_zero():
            raise CurveError("eta is undefined at a ramification point")
        if c == OO and sc == OO:
            raise CurveError("eta is undefined at a ramification point")
        z = V(var)
        out = ZERO
        if c != OO:
            out = out + ONE / (z - c)
        if sc != OO:
            out = out - ONE / (z - sc)
        return out

    def eta_moving(self, var0: str, var: str) -> Rat:
        """eta^{z}(z0)/dz0 as a function of z (= var) and z0 (= var0)."""
        z0 = V(var0)
        return ONE / (z0 - V(var)) - ONE / (z0 - self.sigma_at(var))

    def omega01(self, var: str) -> Rat:
        return self.y_at(var) * self.dx_at(var)

    def omega02(self, v1: str, v2: str) -> Rat:
        """-B(z1, sigma(z2)) in the dz basis."""
        s = self.sigma
        z1, z2 = V(v1), V(v2)
        delta = s.a * s.d - s.b * s.c
        return -delta / (s.c * z1 * z2 + s.d * z1 - s.a * z2 - s.b) ** 2

    def bergman_sum(self, v1: str, v2: str) -> Rat:
        """x'(z1) x'(z2) / (x(z1) - x(z2))^2."""
        return self.dx_at(v1) * self.dx_at(v2) / (self.x_at(v1) - self.x_at(v2)) ** 2

    def omega_half1(self, var: str) -> Rat:
        key = ("half1", var)
        if key not in self._cache:
            ya = self.yanti_at(var)
            out = -ya.diff(var) / ya
            for c, m in zip(self.P_plus, self.mu):
                if not m.is_zero():
                    out = out + m * self.eta(c, var)
            self._cache[key] = V("b") * Q(1, 2) * out
        return self._cache[key]

    # checks ---------------------------------------------------------------
    def check_involution(self) -> bool:
        s = self.sigma.at(W)
        return (self.x.subs(W, s) - self.x).is_zero() and (self.sigma.at(W).subs(W, s) - V(W)).is_zero()

    def check_bergman_relation(self) -> bool:
        z1, z2 = V("z8"), V("z9")
        lhs = ONE / (z1 - z2) ** 2 - self.omega02("z8", "z9")
        return (lhs - self.bergman_sum("z8", "z9")).is_zero()

    def order_at(self, f: Rat, p: Point) -> int:
        """Order of vanishing of f (in w) at p (negative for poles)."""
        from .ratfun import poly_valuation

        if p == OO:
            g = f.subs(W, ONE / V("h"))
        else:
            g = f.subs(W, V("h") + p)
        if g.is_zero():
            raise CurveError("function vanishes identically")
        return poly_valuation(g.num, "h") - poly_valuation(g.den, "h")

    def check_P_plus(self) -> bool:
        f = self.kernel_den_at(W)
        for a in self.P_plus:
            if self.order_at(f, a) == 0:
                return False
            sa = self.sigma.image(a)
            if a != OO and sa != OO and (Rat.coerce(a) - sa).is_zero():
                return False
        return True

    def to_json(self) -> dict:
        def enc(p):
            return "oo" if p == OO else p.to_json()

        return {
            "name": self.name,
            "parameters": {k: v.to_json() for k, v in self.params.items()},
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "P_plus": [enc(p) for p in self.P_plus],
            "mu": [m.to_json() for m in self.mu],
        }


def _bind(name: str, values: Mapping[str, object] | None) -> dict[str, Rat]:
    values = dict(values or {})
    out = {}
    for p in CURVE_PARAMS[name]:
        if p in values and values[p] is not None:
            out[p] = Rat.coerce(Fraction(values[p]) if not isinstance(values[p], Rat) else values[p])
        else:
            out[p] = V(p)
    unknown = set(values) - set(CURVE_PARAMS[name])
    if unknown:
        raise CurveError(f"unknown parameters for {name}: {sorted(unknown)}")
    return out


def catalog(name: str, values: Mapping[str, object] | None = None) -> RefinedSpectralCurve:
    """The named curve with parameters bound to ``values`` (missing ones
    stay symbolic)."""
    if name not in CURVE_NAMES:
        raise CurveError(f"unknown curve {name!r}")
    p = _bind(name, values)
    z = V(W)
    t = p["t"]
    m1 = Q(-1)
    if name in ("main", "bipartite", "monotone", "mixed"):
        u1 = p.get("u1")
        u2 = p.get("u2")
        v = p.get("v")
        G = ONE
        if u1 is not None:
            G = G * (u1 + z)
        if u2 is not None:
            G = G * (u2 + z)
        if v is not None:
            G = G / (v - z)
        x = t * G / z
        y = z / x
        if name == "main":
            a2 = -u1 * u2 / (u1 + u2 + v)
            P_plus = [ZERO, -u1, a2]
            P = [ZERO, v, -u1, -u2, a2, OO]
        elif name == "bipartite":
            P_plus = [ZERO, -u1]
            P = [ZERO, OO, -u1, -u2]
        elif name == "monotone":
            P_plus = [ZERO]
            P = [ZERO, v]
        else:
            P_plus = [ZERO, -u1]
            P = [ZERO, v, -u1, OO]
        mu = [m1] + [ZERO] * (len(P_plus) - 1)
        return RefinedSpectralCurve(name, p, x, y, P_plus, mu, P)
    if name == "gbe":
        u = p["u"]
        x = t * (1 + u * z ** 2) / z
        y = u ** 2 * z ** 3 / (t * (1 + u * z ** 2))
        return RefinedSpectralCurve(name, p, x, y, [ZERO], [m1], [ZERO, OO])
    if name == "jbe":
        g, d = p["gamma"], p["delta"]
        x = t * (1 + z) * (g + z) / (z * (d + g + z))
        y = z / x
        a2 = -g / (1 - d)
        return RefinedSpectralCurve(name, p, x, y, [ZERO, Q(-1), a2], [m1, ZERO, ZERO],
                                    [ZERO, -(d + g), Q(-1), -g, a2, OO])
    g = p["gamma"]
    x = t * (1 + z) * (g + z) / z
    y = z / x
    return RefinedSpectralCurve(name, p, x, y, [ZERO, Q(-1)], [m1, ZERO], [ZERO, OO, Q(-1), -g])


def half1_shift(curve: RefinedSpectralCurve) -> Rat:
    """Function s(x) such that omega_{1/2,1} - s(x) dx has the enumerative
    expansion at z = 0 (returned as a function of w)."""
    b = V("b")
    x = curve.x
    t = curve.params["t"]
    if curve.name == "main":
        return b / (2 * (t + x)) + b / (2 * x)
    if curve.name == "jbe":
        return b / (2 * (x - t)) + b / (2 * x)
    if curve.name in ("bipartite", "lbe"):
        return b / (2 * x)
    if curve.name in ("monotone", "mixed"):
        return b / x
    return ZERO
