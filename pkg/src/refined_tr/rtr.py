"""Refined topological recursion on a genus-zero curve.

Correlators are kept as functions W(z_0, ..., z_{n-1}) with
omega_{g,n} = W dz_0 ... dz_{n-1}.  The genus is stored doubled (``g2``).
Stable correlators are computed by the residue formula over the contour
C_+, whose poles are P_+, z_0 and z_1..z_n, so every residue sits at a
rational point.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import ratfun as rf
from .curve import OO, RefinedSpectralCurve, half1_shift
from .ratfun import ONE, ZERO, Rat, V, residue_at, rsum, series_expand

ZV = tuple(f"z{i}" for i in range(10))
IVAR = "X"  # integration variable


class InvariantError(AssertionError):
    """A structural property of a computed correlator failed."""


Key = tuple  # exponents of the series slots


class RTR:
    """Memoised correlator tables for one curve.

    A table ``(g2, n, e)`` keeps the first ``e`` arguments z_0..z_{e-1}
    exact and expands the remaining n - e arguments as Taylor series at the
    origin, truncated below ``K`` in each slot.  It maps the exponent tuple
    of the series slots to a rational function of the exact variables.
    Only nondecreasing exponent tuples are computed; the others follow by
    symmetry.  With e = n the table has the single key () and holds the
    full correlator.

    The origin must be a point of P_+: the residues at series arguments
    then merge into the residue at the origin.
    """

    def __init__(self, curve: RefinedSpectralCurve, K: int = 4, check: bool = True):
        self.curve = curve
        self.K = K
        self.check = check
        self.tables: dict[tuple[int, int, int], dict[Key, Rat]] = {}
        self.checks: dict[tuple[int, int, int], dict[str, bool]] = {}
        self._renamed: dict = {}
        self._taylor: dict = {}
        self._has_origin = any(p != OO and Rat.coerce(p).is_zero() for p in curve.P_plus)

    # access -------------------------------------------------------------
    def get(self, g2: int, names: Sequence[str]) -> Rat:
        """W_{g,n} evaluated at the variables ``names`` (repeats allowed)."""
        return self.piece(g2, list(names), [], 0)[()]

    def omega(self, g2: int, n: int) -> Rat:
        """The full correlator W_{g,n}(z_0, ..., z_{n-1})."""
        if g2 < 0 or n < 1:
            raise ValueError("need g >= 0 and n >= 1")
        return self.get(g2, ZV[:n])

    def table(self, g2: int, n: int, e: int) -> dict[Key, Rat]:
        if not 1 <= e <= n:
            raise ValueError("need at least one exact argument")
        if g2 - 2 + n <= 0:
            raise ValueError("unstable correlators have no table")
        key = (g2, n, e)
        if key not in self.tables:
            tab = self._compute(g2, n, e)
            self.tables[key] = tab
            if self.check:
                report = self.structural_checks(g2, n, e)
                self.checks[key] = report
                bad = [k for k, ok in report.items() if not ok]
                if bad:
                    raise InvariantError(f"omega_({g2}/2,{n}) fails: {bad}")
        return self.tables[key]

    def piece(self, g2: int, exact: Sequence[str], series: Sequence[int], S: int) -> dict[Key, Rat]:
        """W_{g,n} at the variables ``exact`` and at the series slots
        ``series`` (positions among S), keyed by full exponent tuples."""
        exact = tuple(exact)
        e = len(exact)
        n = e + len(series)
        c = self.curve
        if g2 - 2 + n <= 0:
            local = self._unstable(g2, exact, len(series))
        else:
            ck = (g2, n, exact)
            if ck not in self._renamed:
                tab = self.full_keys(self.table(g2, n, e))
                mapping = {ZV[i]: exact[i] for i in range(e) if ZV[i] != exact[i]}
                self._renamed[ck] = {k: (v.rename(mapping) if mapping else v) for k, v in tab.items()}
            local = self._renamed[ck]
        if not series:
            return {tuple([0] * S): v for v in local.values()}
        out = {}
        for k, v in local.items():
            full = [0] * S
            for pos, kk in zip(series, k):
                full[pos] = kk
            out[tuple(full)] = v
        return out

    def _unstable(self, g2: int, exact: tuple, ns: int) -> dict[Key, Rat]:
        c = self.curve
        if (g2, len(exact), ns) == (0, 1, 0):
            return {(): c.kernel_den_at(exact[0]) * rf.Q(1, 2)}  # anti-invariant part of y dx
        if (g2, len(exact), ns) == (1, 1, 0):
            return {(): c.omega_half1(exact[0])}
        if g2 == 0 and len(exact) == 2:
            return {(): c.omega02(exact[0], exact[1])}
        if g2 == 0 and len(exact) == 1 and ns == 1:
            return {(k,): v for k, v in enumerate(self._taylor_of("o02", exact[0]))}
        raise ValueError("unsupported unstable configuration")

    def _taylor_of(self, kind: str, var: str) -> list[Rat]:
        """Taylor coefficients in the second argument of omega_{0,2} or of
        the Bergman sum, first argument ``var``."""
        key = (kind, var)
        if key not in self._taylor:
            c = self.curve
            T = ZV[9]
            f = c.omega02(var, T) if kind == "o02" else c.bergman_sum(var, T)
            s = series_expand(f, T, ZERO, 0, self.K - 1)
            self._taylor[key] = [s[k] for k in range(self.K)]
        return self._taylor[key]

    def full_keys(self, tab: dict[Key, Rat]) -> dict[Key, Rat]:
        """Fill in the exponent tuples omitted by symmetry."""
        if len(next(iter(tab))) <= 1:
            return tab
        out = {}
        for k, v in tab.items():
            for perm in set(itertools.permutations(k)):
                out[perm] = v
        return out

    # recursion ----------------------------------------------------------
    def rec(self, g2: int, m: int, z: str = IVAR, others: Sequence[str] | None = None) -> Rat:
        """Rec_{g,1+m}(z; z_1..z_m) in the dz basis, all arguments exact."""
        if others is None:
            others = ZV[1 : m + 1]
        R, _ = self._rec(g2, [z] + list(others), 0)
        return R[()]

    def _rec(self, g2: int, exact: Sequence[str], S: int):
        """Rec as a series dict; ``exact[0]`` is the integration variable.

        Also returns the bases of the cross terms at exact arguments, used
        for the residues at those points.
        """
        c = self.curve
        z = exact[0]
        others = [("e", a) for a in exact[1:]] + [("s", j) for j in range(S)]
        m = len(others)
        acc: dict[Key, list] = {}

        def add(d: dict[Key, Rat], scale=None):
            for k, v in d.items():
                acc.setdefault(k, []).append(v if scale is None else v * scale)

        def split(items):
            return [a for t, a in items if t == "e"], [a for t, a in items if t == "s"]

        def mul(A, B):
            out = {}
            for ka, va in A.items():
                for kb, vb in B.items():
                    k = tuple(x + y for x, y in zip(ka, kb))
                    out[k] = va * vb
            return out

        if g2 >= 2:
            ex, se = split(others)
            add(self.piece(g2 - 2, [z, z] + ex, se, S))
        idx = list(range(m))
        for a2 in range(0, g2 + 1):
            b2 = g2 - a2
            for r in range(0, m + 1):
                for J in itertools.combinations(idx, r):
                    Jc = [i for i in idx if i not in J]
                    if (a2, len(J)) == (g2, m) or (b2, len(Jc)) == (g2, m):
                        continue
                    if (a2, len(J)) == (0, 0) or (b2, len(Jc)) == (0, 0):
                        continue
                    # each unordered splitting appears twice, as in the sum
                    e1, s1 = split([others[i] for i in J])
                    e2, s2 = split([others[i] for i in Jc])
                    add(mul(self.piece(a2, [z] + e1, s1, S), self.piece(b2, [z] + e2, s2, S)))
        bases = {}
        for i in range(m):
            ex, se = split([others[j] for j in range(m) if j != i])
            if (g2, m) == (0, 1):
                base = {tuple([0] * S): c.kernel_den_at(z) * rf.Q(1, 2)}
            else:
                base = self.piece(g2, [z] + ex, se, S)
            kind, a = others[i]
            if kind == "e":
                bases[a] = base
                add(base, c.bergman_sum(z, a))
            else:
                tb = {}
                for k, v in enumerate(self._taylor_of("berg", z)):
                    key = [0] * S
                    key[a] = k
                    tb[tuple(key)] = v
                add(mul(base, tb))
        if g2 >= 1:
            ex, se = split(others)
            prev = self.piece(g2 - 1, [z] + ex, se, S)
            dx = c.dx_at(z)
            add({k: V("b") * dx * (v / dx).diff(z) for k, v in prev.items()})
        return {k: rsum(v) for k, v in acc.items()}, bases

    def _compute(self, g2: int, n: int, e: int) -> dict[Key, Rat]:
        c = self.curve
        S = n - e
        if S and not self._has_origin:
            raise ValueError("series arguments need the origin in P_+")
        z0 = ZV[0]
        others = list(ZV[1:e])
        X = IVAR
        kden = c.kernel_den_at(X)
        R, bases = self._rec(g2, [X] + others, S)
        eta = c.eta_moving(z0, X)
        out = {}
        for key in itertools.product(range(self.K), repeat=S):
            if list(key) != sorted(key):
                continue
            Rk = R.get(key, ZERO)
            integrand = eta * Rk / kden
            parts = [residue_at(integrand, X, p) for p in c.P_plus]
            # pole of eta^z(z0) at z = z0
            parts.append(-(Rk / kden).rename({X: z0}))
            # double poles of the cross terms at exact z = z_i
            for a in others:
                bk = bases[a].get(key, ZERO)
                f = eta * bk / kden
                parts.append(f.diff(X).rename({X: a}))
            out[key] = rsum(parts)
        return out

    # structural checks ----------------------------------------------------
    def structural_checks(self, g2: int, n: int, e: int | None = None) -> dict[str, bool]:
        e = n if e is None else e
        tab = self.tables[(g2, n, e)]
        out: dict[str, bool] = {}
        sym = True
        for W in tab.values():
            for i in range(1, e):
                if not (W.rename({ZV[0]: ZV[i], ZV[i]: ZV[0]}) - W).is_zero():
                    sym = False
        if e < n:
            # exchange of z_0 with a series slot, on Taylor coefficients
            T = self._full_taylor(g2, n, e)
            for k, v in T.items():
                swapped = (k[e],) + k[1:e] + (k[0],) + k[e + 1 :]
                if not (T.get(swapped, ZERO) - v).is_zero():
                    sym = False
                    break
        out["symmetric"] = sym
        try:
            out["b_degree"] = all(rf.b_degree(W) <= g2 for W in tab.values() if not W.is_zero())
        except ValueError:
            out["b_degree"] = False
        if g2 % 2 == 1:
            out["odd_vanishes_at_b0"] = all(W.subs("b", ZERO).is_zero() for W in tab.values())
        agg: dict[str, bool] = {}
        for W in tab.values():
            for k, ok in self._pole_checks(W, e, e < n).items():
                agg[k] = agg.get(k, True) and ok
        out.update(agg)
        return out

    def pole_checks(self, g2: int, n: int) -> dict[str, bool]:
        return self._pole_checks(self.omega(g2, n), n)

    def _pole_checks(self, W: Rat, e: int, series: bool = False) -> dict[str, bool]:
        """No poles at P_+, at z_0 = z_j or at poles of ytilde dx; zero
        residues at sigma(P_+) and sigma(z_j), for exact z_j."""
        c = self.curve
        z0 = ZV[0]
        res = {}
        res["regular_on_P_plus"] = not any(_has_pole(W, z0, p) for p in c.P_plus)
        res["regular_on_diagonal"] = not any(_has_pole(W, z0, V(ZV[j])) for j in range(1, e))
        kd = c.kernel_den_at(z0)
        poles = _poles_of(kd, z0, c)
        if series:
            # Taylor expansion in a series slot moves the pole at sigma(z_j) to sigma(0)
            s0 = c.sigma.image(ZERO)
            poles = [p for p in poles if not _same_point(p, s0)]
        res["regular_at_poles_of_ytilde_dx"] = not any(_has_pole(W, z0, p) for p in poles)
        targets = [c.sigma.image(p) for p in c.P_plus] + [c.sigma.at(ZV[j]) for j in range(1, e)]
        res["residue_free"] = all(residue_at(W, z0, p).is_zero() for p in targets)
        return res

    def _full_taylor(self, g2: int, n: int, e: int) -> dict[Key, Rat]:
        """Taylor coefficients at the origin in every argument (e = 1 only
        uses one expansion per entry)."""
        key = ("full", g2, n, e)
        if key in self._taylor:
            return self._taylor[key]
        tab = self.full_keys(self.tables[(g2, n, e)])
        out = {}
        for k, W in tab.items():
            if e == 1:
                s = series_expand(W, ZV[0], ZERO, 0, self.K - 1)
                for k0 in range(self.K):
                    out[(k0,) + k] = s[k0]
            else:
                for ke, v in _multi_taylor(W, ZV[:e], self.K).items():
                    out[ke + k] = v
        self._taylor[key] = out
        return out

    # disc expansion -------------------------------------------------------
    def disc_expand(self, g2: int, n: int, K: int, mus: Iterable[Sequence[int]] | None = None) -> dict[tuple[int, ...], Rat]:
        """F_{g,n}[mu] for all sorted mu with 1 <= mu_i <= K."""
        if mus is None:
            mus = [mu for mu in itertools.combinations_with_replacement(range(1, K + 1), n)]
        mus = [tuple(sorted(mu)) for mu in mus]
        c = self.curve
        out = {}
        if n == 1:
            W = self._w1(g2)
            for mu in mus:
                out[mu] = -residue_at(c.x ** mu[0] * W.rename({ZV[0]: "w"}), "w", ZERO)
            return out
        Kmax = max(max(mu) for mu in mus)
        if Kmax > self.K:
            raise ValueError(f"parts larger than the truncation K={self.K}")
        laurent = self._x_power_laurent(Kmax)
        if g2 - 2 + n <= 0:
            taylor = _multi_taylor(self.get(g2, ZV[:n]), ZV[:n], Kmax)
        else:
            self.table(g2, n, 1)
            taylor = self._full_taylor(g2, n, 1)
        sign = -1 if n % 2 else 1
        for mu in mus:
            acc = []
            for ks in itertools.product(*[range(m) for m in mu]):
                coef = taylor.get(ks)
                if coef is None:
                    continue
                lc = ONE
                for m, k in zip(mu, ks):
                    lc = lc * laurent[m][k]
                    if lc.is_zero():
                        break
                if not lc.is_zero():
                    acc.append(lc * coef)
            out[mu] = rsum(acc) * sign
        return out

    def _w1(self, g2: int) -> Rat:
        c = self.curve
        if g2 == 0:
            return c.y_at(ZV[0]) * c.dx_at(ZV[0])
        if g2 == 1:
            shift = half1_shift(c).rename({"w": ZV[0]}) * c.dx_at(ZV[0])
            return c.omega_half1(ZV[0]) - shift
        return self.omega(g2, 1)

    def _x_power_laurent(self, Kmax: int) -> dict[int, list[Rat]]:
        """laurent[m][k] = [z^{-1-k}] x(z)^m for 0 <= k < m."""
        key = ("xl", Kmax)
        cache = getattr(self, "_xl", {})
        if Kmax in cache:
            return cache[Kmax]
        c = self.curve
        zx = series_expand(c.x * V("w"), "w", ZERO, 0, Kmax)  # z*x(z), regular
        out = {}
        power = rf.TruncSeries("h", 0, (ONE,), Kmax + 1)
        for m in range(1, Kmax + 1):
            power = (power * zx).truncate(Kmax + 1)
            # x^m = z^{-m} (z x)^m ; coefficient of z^{-1-k} is [z^{m-1-k}](z x)^m
            out[m] = [power[m - 1 - k] for k in range(m)]
        cache[Kmax] = out
        self._xl = cache
        return out

    def fgn_table(self, g2max: int, nmax: int, K: int, bound: int | None = None) -> dict[tuple[int, int], dict[tuple[int, ...], Rat]]:
        """All F_{g,n}[mu] with 2g <= g2max, n <= nmax, 2g-2+n <= bound."""
        table = {}
        for g2 in range(0, g2max + 1):
            for n in range(1, nmax + 1):
                if bound is not None and g2 - 2 + n > bound:
                    continue
                table[(g2, n)] = self.disc_expand(g2, n, K)
        return table

    def to_json(self, g2: int, n: int) -> dict:
        return {
            "curve": self.curve.name,
            "g2": g2,
            "n": n,
            "basis": "dz",
            "expr": self.omega(g2, n).to_json(),
        }


def _same_point(p, q) -> bool:
    if p == OO or q == OO:
        return p == q
    return (Rat.coerce(p) - q).is_zero()


def _has_pole(W: Rat, var: str, p) -> bool:
    if p == OO:
        return _is_pole_oo(W, var)
    g = W.subs(var, V("h") + p)
    return rf.poly_valuation(g.den, "h") > rf.poly_valuation(g.num, "h") if not g.is_zero() else False


def _is_pole_oo(W: Rat, var: str) -> bool:
    # W dz is regular at infinity iff W = O(1/z^2)
    dn, dd = W.degree(var)
    return dn - dd > -2


def _poles_of(f: Rat, var: str, curve: RefinedSpectralCurve) -> list:
    """Rational poles of f in var among the curve's special points."""
    out = []
    for p in curve.P:
        try:
            if curve.order_at(f.rename({var: "w"}), p) < 0:
                out.append(p)
        except Exception:
            continue
    return out


def _multi_taylor(W: Rat, names: Sequence[str], K: int) -> dict[tuple[int, ...], Rat]:
    """Taylor coefficients of W at the origin for exponents < K per variable."""
    bounds = {v: K for v in names}
    d0 = W.den
    for v in names:
        d0 = rf.poly_coeffs(d0, v).get(0, rf.CTX.from_dict({}))
    if d0.is_zero():
        raise ValueError("correlator is singular at the origin")
    E = rf.poly_truncate(W.den, bounds) - d0  # terms of positive degree
    # 1/den = sum_k (-E)^k / d0^(k+1); E^k vanishes once k exceeds n (K-1)
    powers = [d0 ** 0]
    while len(powers) <= len(names) * (K - 1):
        nxt = rf.poly_truncate(powers[-1] * (-E), bounds)
        if nxt.is_zero():
            break
        powers.append(nxt)
    top = len(powers) - 1
    series = sum((Ek * d0 ** (top - k) for k, Ek in enumerate(powers)), rf.CTX.from_dict({}))
    prod_ = rf.poly_truncate(rf.poly_truncate(series, bounds) * rf.poly_truncate(W.num, bounds), bounds)
    denom = Rat(d0 ** (top + 1))
    idx = [rf.index(v) for v in names]
    grouped: dict[tuple[int, ...], dict] = {}
    for exps, coeff in zip(prod_.monoms(), prod_.coeffs()):
        key = tuple(exps[i] for i in idx)
        rest = list(exps)
        for i in idx:
            rest[i] = 0
        slot = grouped.setdefault(key, {})
        slot[tuple(rest)] = slot.get(tuple(rest), 0) + coeff
    return {key: Rat(rf.CTX.from_dict(d)) / denom for key, d in grouped.items()}
