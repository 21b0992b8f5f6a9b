"""Jack polynomials and tau functions of weighted b-Hurwitz numbers.

Power sums come in two normalisations, p_i = s * pt_i with s = sqrt(alpha).
Jack polynomials are stored in the ``pt`` basis with coefficients in Q(s)
and normalised by [pt_1^d] J = s^d, i.e. they are the usual integral Jack
polynomials J(p) with [p_1^d] J = 1 rewritten in the rescaled variables.

Series in pt and hbar are dictionaries ``{(mono, k): coefficient}`` where
``mono`` is a weakly increasing tuple of positive integers standing for
the product of pt_i over its entries, and ``k`` is the power of hbar.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterable, Mapping, Sequence

from .ratfun import ONE, ZERO, Q, Rat, V, laurent_s_to_b, rsum, series_expand

Mono = tuple
Series = dict  # {(mono, hbar power): Rat}

S = V("s")
B_OF_S = ONE / S - S


# ---------------------------------------------------------------------------
# partitions and symmetric-function bookkeeping
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def partitions(d: int, maxpart: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of d (weakly decreasing), in reverse lexicographic order."""
    if maxpart is None:
        maxpart = d
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, maxpart), 0, -1):
        for rest in partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def mono(parts: Iterable[int]) -> Mono:
    return tuple(sorted(parts))


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def z_lambda(parts: Sequence[int]) -> int:
    c = Counter(parts)
    return prod(k ** m * factorial(m) for k, m in c.items())


def aut(parts: Sequence[int]) -> int:
    return prod(factorial(m) for m in Counter(parts).values())


def contents(lam: Sequence[int]) -> list[Rat]:
    """Deformed contents s(x-1) - (y-1)/s over the boxes (x = column)."""
    out = []
    for y, row in enumerate(lam, start=1):
        for x in range(1, row + 1):
            out.append(S * (x - 1) - Q(y - 1) / S)
    return out


@lru_cache(maxsize=None)
def _p_in_m(d: int) -> dict:
    """L[mu][lam] = [m_lam] p_mu."""
    parts_list = partitions(d)
    L = {}
    for mu in parts_list:
        row = {}
        for lam in parts_list:
            cnt = _count_assignments(mu, lam)
            if cnt:
                row[lam] = cnt
        L[mu] = row
    return L


def _count_assignments(mu: Sequence[int], lam: Sequence[int]) -> int:
    """Number of maps from the parts of mu to rows of lam with row sums lam."""

    @lru_cache(maxsize=None)
    def go(i: int, rem: tuple) -> int:
        if i == len(mu):
            return 1 if not any(rem) else 0
        tot = 0
        for r in range(len(rem)):
            if rem[r] >= mu[i]:
                nxt = list(rem)
                nxt[r] -= mu[i]
                tot += go(i + 1, tuple(nxt))
        return tot

    return go(0, tuple(lam))


@lru_cache(maxsize=None)
def _m_in_p(d: int) -> dict:
    """Minv[lam][mu] = [p_mu] m_lam (rational numbers)."""
    L = _p_in_m(d)
    parts_list = partitions(d)  # reverse lex: larger first
    # p_mu = sum_{lam >= mu} L[mu][lam] m_lam ; solve from the top
    Minv: dict = {}
    for lam in parts_list:
        # m_lam = (p_lam - sum_{nu > lam} L[lam][nu] m_nu) / L[lam][lam]
        row: dict = {lam: Fraction(1)}
        for nu, c in L[lam].items():
            if nu == lam:
                continue
            for mu, cc in Minv[nu].items():
                row[mu] = row.get(mu, Fraction(0)) - c * cc
        diag = L[lam][lam]
        Minv[lam] = {mu: c / diag for mu, c in row.items() if c}
    return Minv


# ---------------------------------------------------------------------------
# Laplace-Beltrami operator and Jack polynomials
# ---------------------------------------------------------------------------


def lb_apply_mono(mu: Sequence[int], b: Rat) -> dict[Mono, Rat]:
    """D (hbar-free Laplace-Beltrami) applied to the monomial pt_mu."""
    out: dict[Mono, Rat] = {}
    c = Counter(mu)
    parts = sorted(c)

    def add(key, val):
        out[key] = out.get(key, ZERO) + val

    # cut-free join: pt_a pt_b * a b d_a d_b  ->  pt_{a+b}
    for i, a in enumerate(parts):
        for bb in parts[i:]:
            if a == bb:
                mult = c[a] * (c[a] - 1)
                if mult == 0:
                    continue
            else:
                mult = 2 * c[a] * c[bb]  # ordered pairs (a, bb) and (bb, a)
            rest = Counter(c)
            rest[a] -= 1
            rest[bb] -= 1
            key = mono(list(rest.elements()) + [a + bb])
            add(key, Q(a * bb * mult, 2))
    # split: pt_l d_l -> pt_k pt_{l-k}, coefficient l/2 per k
    for l in parts:
        for k in range(1, l):
            rest = Counter(c)
            rest[l] -= 1
            key = mono(list(rest.elements()) + [k, l - k])
            add(key, Q(l * c[l], 2))
    diag = sum(k * (k - 1) * c[k] for k in parts)
    if diag:
        add(mono(mu), -b * Q(diag, 2))
    return {k: v for k, v in out.items() if not v.is_zero()}


def lb_apply(f: Mapping[Mono, Rat], b: Rat = B_OF_S) -> dict[Mono, Rat]:
    out: dict[Mono, Rat] = {}
    for m, cf in f.items():
        for k, v in lb_apply_mono(m, b).items():
            out[k] = out.get(k, ZERO) + cf * v
    return {k: v for k, v in out.items() if not v.is_zero()}


def eigenvalue(lam: Sequence[int]) -> Rat:
    return rsum(contents(lam))


@lru_cache(maxsize=None)
def _lb_in_m(d: int) -> dict:
    """A[nu][lam] = [m_lam] D m_nu, coefficients in Q(s)."""
    Minv = _m_in_p(d)
    L = _p_in_m(d)
    A = {}
    for nu in partitions(d):
        ptexp: dict[Mono, Rat] = {}
        for mu, c in Minv[nu].items():
            ptexp[mono(mu)] = Rat.const(c) * S ** len(mu)
        img = lb_apply(ptexp)
        row: dict = {}
        for m, cf in img.items():
            rho = tuple(sorted(m, reverse=True))
            for lam, cnt in L[rho].items():
                row[lam] = row.get(lam, ZERO) + cf * S ** (-len(rho)) * cnt
        A[nu] = {k: v for k, v in row.items() if not v.is_zero()}
    return A


@lru_cache(maxsize=None)
def jack_m(lam: tuple[int, ...]) -> dict:
    """Coefficients of J_lam in the monomial basis, normalised later."""
    d = sum(lam)
    A = _lb_in_m(d)
    E = eigenvalue(lam)
    coeff: dict = {lam: ONE}
    for mu in partitions(d):
        if mu == lam or not dominates(lam, mu):
            continue
        if mu in coeff:
            continue
        acc = []
        for nu, cn in coeff.items():
            a = A[nu].get(mu)
            if a is not None:
                acc.append(cn * a)
        num = rsum(acc)
        den = E - eigenvalue(mu)
        if den.is_zero():
            raise ArithmeticError(f"eigenvalue collision between {lam} and {mu}")
        coeff[mu] = num / den
    # the recursion visits mu in reverse lex order, which refines dominance
    return coeff


@lru_cache(maxsize=None)
def jack(lam: tuple[int, ...]) -> dict[Mono, Rat]:
    """J_lam in the pt basis, with [pt_1^d] J = s^d."""
    lam = tuple(sorted(lam, reverse=True))
    d = sum(lam)
    if d == 0:
        return {(): ONE}
    Minv = _m_in_p(d)
    out: dict[Mono, Rat] = {}
    for mu, c in jack_m(lam).items():
        for rho, cc in Minv[mu].items():
            key = mono(rho)
            out[key] = out.get(key, ZERO) + c * Rat.const(cc) * S ** len(rho)
    out = {k: v for k, v in out.items() if not v.is_zero()}
    norm = S ** d / out[(1,) * d]
    return {k: v * norm for k, v in out.items()}


def pairing(f: Mapping[Mono, Rat], g: Mapping[Mono, Rat]) -> Rat:
    """<pt_lam, pt_mu> = delta z_lam."""
    return rsum(f[k] * g[k] * z_lambda(k) for k in f if k in g)


@lru_cache(maxsize=None)
def norm_j(lam: tuple[int, ...]) -> Rat:
    J = jack(lam)
    return pairing(J, J)


def jack_in_p(lam: tuple[int, ...]) -> dict[Mono, Rat]:
    """The same polynomial written in the unnormalised power sums p."""
    return {k: v * S ** (-len(k)) for k, v in jack(lam).items()}


def jack_in_m(lam: tuple[int, ...]) -> dict[tuple[int, ...], Rat]:
    """Monomial-basis coefficients of J_lam (in x-variables)."""
    lam = tuple(sorted(lam, reverse=True))
    d = sum(lam)
    L = _p_in_m(d)
    out: dict = {}
    for m, c in jack_in_p(lam).items():
        for nu, cnt in L[tuple(sorted(m, reverse=True))].items():
            out[nu] = out.get(nu, ZERO) + c * cnt
    return {k: v for k, v in out.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

WEIGHTS = ("main", "bipartite", "monotone", "mixed", "jbe", "lbe")


def weight_function(name: str, params: Mapping[str, Rat], var: str = "X") -> Rat:
    z = V(var)
    p = params
    if name == "main":
        return (p["u1"] + z) * (p["u2"] + z) / (p["v"] - z)
    if name == "bipartite":
        return (p["u1"] + z) * (p["u2"] + z)
    if name == "monotone":
        return ONE / (p["v"] - z)
    if name == "mixed":
        return (p["u1"] + z) / (p["v"] - z)
    if name == "jbe":
        return (1 + z) * (p["gamma"] + z) / (p["gamma"] + p["delta"] + z)
    if name == "lbe":
        return (1 + z) * (p["gamma"] + z)
    if name == "gbe":
        return p["u"] + z
    raise ValueError(f"unknown weight {name!r}")


def _g_product(lam: Sequence[int], gcoef: Sequence[Rat], order: int) -> list[Rat]:
    """prod over boxes of G(hbar c) as a list of hbar coefficients."""
    poly = [ONE]
    for c in contents(lam):
        factor = [gcoef[i] * c ** i for i in range(min(order + 1, len(gcoef)))]
        new = [ZERO] * min(order + 1, len(poly) + len(factor) - 1)
        for i, a in enumerate(poly):
            if a.is_zero():
                continue
            for j, bb in enumerate(factor):
                if i + j <= order and not bb.is_zero():
                    new[i + j] = new[i + j] + a * bb
        poly = new
    return poly


def _to_b(r: Rat) -> Rat:
    return laurent_s_to_b(r)


# ---------------------------------------------------------------------------
# tau functions
# ---------------------------------------------------------------------------


def tau_single(name: str, params: Mapping[str, Rat], d_max: int, h_max: int) -> Series:
    """tau_G up to degree d_max; every degree-d part is exact for hbar
    powers <= h_max + d_max - d ... (see ``known_order``)."""
    t = params["t"]
    G = weight_function(name, params, "X")
    order = h_max + 2 * d_max
    gs = series_expand(G, "X", ZERO, 0, order)
    gcoef = [gs[i] for i in range(order + 1)]
    out: Series = {((), 0): ONE}
    for d in range(1, d_max + 1):
        acc: dict = {}
        for lam in partitions(d):
            J = jack(lam)
            j = norm_j(lam)
            gp = _g_product(lam, gcoef, order)
            for m, c in J.items():
                base = c / j
                for k, g in enumerate(gp):
                    if g.is_zero():
                        continue
                    acc.setdefault((m, k - d), []).append(base * g)
        for key, terms in acc.items():
            val = _to_b(rsum(terms) * S ** d) * t ** d
            if not val.is_zero():
                out[key] = val
    return out


def tau_gbe(params: Mapping[str, Rat], d_max: int, h_max: int) -> Series:
    """Gaussian specialisation: second Jack evaluated at pt_i = delta_{i,2}/hbar."""
    t, u = params["t"], params["u"]
    order = h_max + 2 * d_max
    gcoef = [u, ONE]
    out: Series = {((), 0): ONE}
    for d in range(2, d_max + 1, 2):
        acc: dict = {}
        key2 = (2,) * (d // 2)
        for lam in partitions(d):
            J = jack(lam)
            q = J.get(key2)
            if q is None:
                continue
            j = norm_j(lam)
            gp = _g_product(lam, gcoef, order)
            for m, c in J.items():
                base = c * q / j
                for k, g in enumerate(gp):
                    if g.is_zero():
                        continue
                    acc.setdefault((m, k - d // 2), []).append(base * g)
        for key, terms in acc.items():
            val = _to_b(rsum(terms)) * t ** d
            if not val.is_zero():
                out[key] = val
    return out


def known_order(d: int, d_max: int, h_max: int) -> int:
    """Highest hbar power known exactly in the degree-d part of tau."""
    return h_max + 2 * d_max - d


def series_mul(a: Series, b: Series, d_max: int) -> Series:
    out: dict = {}
    for (ma, ka), ca in a.items():
        da = sum(ma)
        for (mb, kb), cb in b.items():
            if da + sum(mb) > d_max:
                continue
            key = (mono(ma + mb), ka + kb)
            out.setdefault(key, []).append(ca * cb)
    res = {k: rsum(v) for k, v in out.items()}
    return {k: v for k, v in res.items() if not v.is_zero()}


def log_series(tau: Series, d_max: int, h_max: int) -> Series:
    """log tau, keeping hbar powers <= h_max."""
    T = {k: v for k, v in tau.items() if k != ((), 0)}
    if not tau.get(((), 0), ZERO) == ONE:
        raise ValueError("tau must start with 1")
    out: dict = {}
    power = dict(T)
    for n in range(1, d_max + 1):
        coef = Q((-1) ** (n + 1), n)
        for k, v in power.items():
            out.setdefault(k, []).append(v * coef)
        if n < d_max:
            power = series_mul(power, T, d_max)
    res = {k: rsum(v) for k, v in out.items()}
    return {k: v for k, v in res.items() if not v.is_zero() and k[1] <= h_max}


def log_tau(name: str, params: Mapping[str, Rat], d_max: int, h_max: int) -> Series:
    if name == "gbe":
        tau = tau_gbe(params, d_max, h_max)
    else:
        tau = tau_single(name, params, d_max, h_max)
    return log_series(tau, d_max, h_max)


# ---------------------------------------------------------------------------
# F_{g,n} extraction
# ---------------------------------------------------------------------------


def phi_to_F(mu: Sequence[int], c: Rat) -> Rat:
    """Coefficient of hbar^(2g-2+n) pt_mu in log tau -> F_{g,n}[mu]."""
    return c * aut(mu) * prod(mu)


def F_to_phi(mu: Sequence[int], F: Rat) -> Rat:
    return F / (aut(mu) * prod(mu))


def extract_F(phi: Series, g2: int, n: int, mus: Iterable[Sequence[int]]) -> dict[tuple[int, ...], Rat]:
    h = g2 - 2 + n
    out = {}
    for mu in mus:
        m = mono(mu)
        out[m] = phi_to_F(m, phi.get((m, h), ZERO))
    return out


def extract_FD(phi: Series, g2: int, mu: Sequence[int], D: int, E: int) -> Rat:
    """F^D_{g,n}[mu; eps] as a polynomial in eps, p1..pD, truncated at eps^E."""
    mu = mono(mu)
    n = len(mu)
    target = g2 - 2 + n
    cmu = Counter(mu)
    eps = V("eps")
    terms = []
    for (m, h), c in phi.items():
        cm = Counter(m)
        if any(cm[a] < k for a, k in cmu.items()):
            continue
        rest = cm - cmu
        kappa = list(rest.elements())
        if any(k > D for k in kappa) or len(kappa) > E:
            continue
        if h - len(kappa) != target:
            continue
        fall = prod(prod(range(cm[a] - k + 1, cm[a] + 1)) for a, k in cmu.items())
        val = c * fall * prod(mu) * eps ** len(kappa)
        for k in kappa:
            val = val * V(f"p{k}")
        terms.append(val)
    return rsum(terms)


# ---------------------------------------------------------------------------
# Heisenberg operators on series
# ---------------------------------------------------------------------------


def apply_J(k: int, f: Series) -> Series:
    """J_k: hbar k d/dpt_k (k > 0), 0 (k = 0), hbar pt_{-k} (k < 0)."""
    out: dict = {}
    if k == 0:
        return {}
    for (m, h), c in f.items():
        if k < 0:
            key = (mono(m + (-k,)), h + 1)
            out[key] = out.get(key, ZERO) + c
        else:
            cnt = m.count(k)
            if cnt == 0:
                continue
            lst = list(m)
            lst.remove(k)
            key = (tuple(lst), h + 1)
            out[key] = out.get(key, ZERO) + c * (k * cnt)
    return {k_: v for k_, v in out.items() if not v.is_zero()}


def _add(acc: dict, f: Series, scale: Rat = ONE, hshift: int = 0):
    for (m, h), c in f.items():
        key = (m, h + hshift)
        acc[key] = acc.get(key, ZERO) + c * scale


def apply_Dk(k: int, tau: Series, params: Mapping[str, Rat], name: str, d_max: int,
             keep_zeros: bool = False) -> Series:
    """The operator D_k of the weight ``name`` applied to tau.  With
    ``keep_zeros`` every coefficient that received a contribution is kept."""
    co = constraint_coefficients(name, params)
    acc: dict = {}
    sig = co.shift
    # quadratic sums; only finitely many j contribute on a degree-bounded series
    for j in range(1, d_max + k + 3):
        if not co.cJJ.is_zero():
            _add(acc, apply_J(k - j, apply_J(j, tau)), co.cJJ)
        if not co.dJJ.is_zero():
            _add(acc, apply_J(k - j + 1, apply_J(j, tau)), co.dJJ)
    a0, a1 = co.cJ(k)
    if not (a0.is_zero() and a1.is_zero()):
        Jk = apply_J(k, tau)
        _add(acc, Jk, a0)
        _add(acc, Jk, a1, 1)
    c0, c1 = co.c0(k)
    if not c0.is_zero():
        _add(acc, tau, c0)
    if not c1.is_zero():
        _add(acc, tau, c1, 1)
    b0, b1 = co.target(k)
    Jt = apply_J(k + sig, tau)
    _add(acc, Jt, b0)
    _add(acc, Jt, b1, 1)
    if keep_zeros:
        return acc
    return {key: v for key, v in acc.items() if not v.is_zero()}


class ConstraintCoefficients:
    """Coefficients of a constraint operator of the shape

    cJJ sum_{j>=1} J_{k-j} J_j + dJJ sum_{j>=1} J_{k+1-j} J_j
      + (a0 + a1 hbar) J_k + (c0 + c1 hbar) delta + (b0 + b1 hbar) J_{k+shift}.
    """

    def __init__(self, cJJ, dJJ, cJ, c0, target, shift, kmin):
        self.cJJ = cJJ
        self.dJJ = dJJ
        self.cJ = cJ
        self.c0 = c0
        self.target = target
        self.shift = shift
        self.kmin = kmin


def constraint_coefficients(name: str, params: Mapping[str, Rat]) -> ConstraintCoefficients:
    b = V("b")
    t = params["t"]
    if name == "jbe":
        p = {"u1": ONE, "u2": params["gamma"], "v": -(params["gamma"] + params["delta"]), "t": -t}
        return constraint_coefficients("main", p)
    if name == "lbe":
        p = {"u1": ONE, "u2": params["gamma"], "t": t}
        return constraint_coefficients("bipartite", p)
    if name == "gbe":
        u = params["u"]
        it2 = -ONE / t ** 2

        def cJ(k):
            a0 = 2 * u - (u if k == -1 else ZERO)
            return (a0, -b * (k + 1))

        def c0(k):
            return (u * u, -u * b) if k == 0 else (ZERO, ZERO)

        return ConstraintCoefficients(ONE, ZERO, cJ, c0, lambda k: (it2, ZERO), 2, -1)
    z0 = (ZERO, ZERO)
    if name == "main":
        u1, u2, v = params["u1"], params["u2"], params["v"]
        return ConstraintCoefficients(
            t, ONE,
            lambda k: (t * (u1 + u2), -t * b * k),
            lambda k: (t * u1 * u2, ZERO) if k == 0 else z0,
            lambda k: (-v, -b * k), 1, 0)
    if name == "bipartite":
        u1, u2 = params["u1"], params["u2"]
        return ConstraintCoefficients(
            t, ZERO,
            lambda k: (t * (u1 + u2), -t * b * k),
            lambda k: (t * u1 * u2, ZERO) if k == 0 else z0,
            lambda k: (-ONE, ZERO), 1, 0)
    if name == "monotone":
        v = params["v"]
        return ConstraintCoefficients(
            ZERO, ONE,
            lambda k: z0,
            lambda k: (t, ZERO) if k == 0 else z0,
            lambda k: (-v, -b * k), 1, 0)
    if name == "mixed":
        u1, v = params["u1"], params["v"]
        return ConstraintCoefficients(
            ZERO, ONE,
            lambda k: (t, ZERO),
            lambda k: (t * u1, ZERO) if k == 0 else z0,
            lambda k: (-v, -b * k), 1, 0)
    raise ValueError(f"no constraints for weight {name!r}")


def check_constraints(name: str, params: Mapping[str, Rat], k_max: int, d_max: int, h_max: int,
                      tau: Series | None = None) -> dict:
    """Apply D_k (or L_k for gbe), 0 <= k <= k_max (resp. -1 <= k), to tau
    and collect every reliable nonzero coefficient."""
    if tau is None:
        tau = tau_gbe(params, d_max, h_max) if name == "gbe" else tau_single(name, params, d_max, h_max)
    co = constraint_coefficients(name, params)
    failures = []
    checked = 0
    for k in range(co.kmin, k_max + 1):
        img = apply_Dk(k, tau, params, name, d_max, keep_zeros=True)
        for (m, h), c in img.items():
            e = sum(m)
            top = e + k + co.shift
            if top > d_max:
                continue
            # reliable if every tau degree feeding (m, h) is known to hbar^h
            lim = min(known_order(dd, d_max, h_max) for dd in range(e, top + 1))
            if h > lim:
                continue
            checked += 1
            if not c.is_zero():
                failures.append({"k": k, "mono": m, "hbar": h, "value": str(c)})
    return {"weight": name, "k_range": [co.kmin, k_max], "d_max": d_max,
            "coefficients_checked": checked, "failures": failures, "ok": not failures}


# ---------------------------------------------------------------------------
# solving the constraints for log tau
# ---------------------------------------------------------------------------


class ConstraintSolver:
    """Computes log tau coefficient by coefficient from the constraints.

    For a target monomial pt_mu with largest part a, the constraint with
    J_a as its top term expresses d/dpt_a log tau through coefficients of
    lower degree, lower genus, or fewer parts.
    """

    def __init__(self, name: str, params: Mapping[str, Rat]):
        self.name = name
        self.params = params
        self.co = constraint_coefficients(name, params)
        self.phi: dict[Mono, dict[int, Rat]] = {}

    # helpers ----------------------------------------------------------------
    def get(self, m: Mono, h: int) -> Rat:
        return self.phi.get(m, {}).get(h, ZERO)

    def dphi(self, a: int, nu: Mono, h: int) -> Rat:
        """Coefficient of hbar^h pt_nu in d/dpt_a log tau."""
        m = mono(nu + (a,))
        c = self.get(m, h)
        return c * m.count(a) if not c.is_zero() else ZERO

    def ddphi(self, a: int, bb: int, nu: Mono, h: int) -> Rat:
        m = mono(nu + (a, bb))
        c = self.get(m, h)
        if c.is_zero():
            return ZERO
        if a == bb:
            return c * (m.count(a) * (m.count(a) - 1))
        return c * (m.count(a) * m.count(bb))

    def jj(self, a: int, bb: int, nu: Mono, H: int) -> Rat:
        """Coefficient of hbar^H pt_nu in exp(-F) J_a J_bb exp(F), bb > 0."""
        if a == 0:
            return ZERO
        if a < 0:
            if -a not in nu:
                return ZERO
            rest = list(nu)
            rest.remove(-a)
            return self.dphi(bb, tuple(rest), H - 2) * bb
        out = [self.ddphi(a, bb, nu, H - 2)]
        for nu1, nu2 in _splits(nu):
            for h1, c1 in self.phi.get(mono(nu1 + (a,)), {}).items():
                c2 = self.get(mono(nu2 + (bb,)), H - 2 - h1)
                if c2.is_zero():
                    continue
                m1 = mono(nu1 + (a,)).count(a)
                m2 = mono(nu2 + (bb,)).count(bb)
                out.append(c1 * c2 * (m1 * m2))
        return rsum(out) * (a * bb)

    def lin(self, a: int, nu: Mono, H: int) -> Rat:
        if a == 0:
            return ZERO
        if a < 0:
            return ONE if (nu == (-a,) and H == 1) else ZERO
        return self.dphi(a, nu, H - 1) * a

    # main loop --------------------------------------------------------------
    def solve(self, d_max: int, h_max: int, g2_max: int | None = None) -> Series:
        co = self.co
        for D in range(1, d_max + 1):
            for g2 in range(0, (g2_max if g2_max is not None else h_max + 1) + 1):
                for n in range(1, D + 1):
                    h = g2 - 2 + n
                    if h > h_max:
                        break
                    for lam in partitions(D):
                        if len(lam) != n:
                            continue
                        mu = mono(lam)
                        val = self._solve_one(mu, h, D)
                        if not val.is_zero():
                            self.phi.setdefault(mu, {})[h] = val
        out: Series = {}
        for m, d in self.phi.items():
            for h, c in d.items():
                out[(m, h)] = c
        return out

    def _solve_one(self, mu: Mono, h: int, D: int) -> Rat:
        co = self.co
        a = mu[-1]
        k = a - co.shift
        lst = list(mu)
        lst.remove(a)
        nu = tuple(lst)
        H = h + 1
        terms = []
        for j in range(1, D + 2):
            if not co.cJJ.is_zero():
                if k - j != 0:
                    terms.append(co.cJJ * self.jj(k - j, j, nu, H))
            if not co.dJJ.is_zero():
                if k + 1 - j != 0:
                    terms.append(co.dJJ * self.jj(k + 1 - j, j, nu, H))
        a0, a1 = co.cJ(k)
        if not a0.is_zero():
            terms.append(a0 * self.lin(k, nu, H))
        if not a1.is_zero():
            terms.append(a1 * self.lin(k, nu, H - 1))
        c0, c1 = co.c0(k)
        if not nu:
            if H == 0 and not c0.is_zero():
                terms.append(c0)
            if H == 1 and not c1.is_zero():
                terms.append(c1)
        b0, b1 = co.target(k)
        if not b1.is_zero():
            terms.append(b1 * self.lin(a, nu, H - 1))
        rest = rsum(terms)
        # b0 * a * mult * phi[mu, h] + rest = 0
        return -rest / (b0 * (a * mu.count(a)))


def _splits(nu: Mono):
    """All ordered pairs of sub-multisets (nu1, nu2) with nu1 + nu2 = nu."""
    c = Counter(nu)
    keys = sorted(c)
    for choice in itertools.product(*[range(c[k] + 1) for k in keys]):
        nu1 = []
        nu2 = []
        for k, m in zip(keys, choice):
            nu1 += [k] * m
            nu2 += [k] * (c[k] - m)
        yield tuple(nu1), tuple(nu2)


def solve_log_tau(name: str, params: Mapping[str, Rat], d_max: int, h_max: int) -> Series:
    return ConstraintSolver(name, params).solve(d_max, h_max)


def bind_weight(name: str, values: Mapping[str, object] | None = None) -> dict[str, Rat]:
    from .curve import _bind

    return _bind(name, values)
