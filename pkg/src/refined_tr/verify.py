"""Acceptance checks, each comparing two independent computations.

Every check returns a :class:`CheckResult` carrying a boolean, the number
of coefficients compared and a witness for the first failure.  The
``full`` level uses the stated bounds; ``quick`` shrinks them for smoke
runs.
"""

from __future__ import annotations

import itertools
import os
import random
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import curve as C
from . import ensembles as EN
from . import faces as FC
from . import jack as J
from . import maps as MP
from . import ratfun as rf
from .ratfun import ZERO, Rat
from .rtr import RTR, InvariantError

LEVELS = ("quick", "full")
SEED = 20240601
WORKERS_ENV = "REFINED_TR_WORKERS"
MAIN_FAMILY = ("main", "bipartite", "monotone", "mixed")


@dataclass
class CheckResult:
    number: int
    title: str
    ok: bool = True
    checked: int = 0
    seconds: float = 0.0
    first_failure: dict | None = None
    details: dict = field(default_factory=dict)

    def fail(self, **witness) -> None:
        if self.first_failure is None:
            self.first_failure = {k: str(v) for k, v in witness.items()}
        self.ok = False

    def compare(self, a: Rat, b: Rat, **where) -> None:
        self.checked += 1
        if not (Rat.coerce(a) - Rat.coerce(b)).is_zero():
            self.fail(left=a, right=b, **where)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.title} ({self.checked} checks, {self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "ok": self.ok, "checked": self.checked,
                "seconds": round(self.seconds, 2), "first_failure": self.first_failure,
                "details": self.details}


def _tuples(name: str, count: int, seed: int) -> list[dict[str, Fraction]]:
    rng = random.Random(f"{seed}-{name}")
    return [rf.random_tuple(C.CURVE_PARAMS[name], rng) for _ in range(count)]


def _enc(vals: dict) -> dict:
    return {k: str(v) for k, v in vals.items()}


# ---------------------------------------------------------------------------
# recursion against the tau function
# ---------------------------------------------------------------------------


def rtr_vs_jack(res: CheckResult, name: str, vals: dict, L: int, K: int) -> None:
    """disc expansion of every W_{g,n} with 2g-2+n <= L against log tau."""
    r = RTR(C.catalog(name, vals), K=K)
    phi = J.solve_log_tau(name, J.bind_weight(name, vals), K * (L + 2), L)
    for g2 in range(0, L + 3):
        for n in range(1, L + 3):
            if g2 - 2 + n > L:
                continue
            mus = list(itertools.combinations_with_replacement(range(1, K + 1), n))
            try:
                a = r.disc_expand(g2, n, K)
            except InvariantError as exc:
                res.fail(weight=name, g2=g2, n=n, invariant=exc)
                continue
            b = J.extract_F(phi, g2, n, mus)
            for mu in mus:
                res.compare(a[mu], b[J.mono(mu)],
                            weight=name, params=_enc(vals), g2=g2, mu=mu)


def _rtr_criterion(number: int, title: str, names, tuples: int, level: str, seed: int) -> CheckResult:
    res = CheckResult(number, title)
    L, K = (3, 4) if level == "full" else (1, 3)
    for name in names:
        for vals in _tuples(name, tuples, seed):
            res.details.setdefault("params", []).append({"weight": name, **_enc(vals)})
            rtr_vs_jack(res, name, vals, L, K)
    res.details.update({"seed": seed, "max_level": L, "max_part": K})
    return res


def criterion1(level: str = "full", seed: int = SEED) -> CheckResult:
    return _rtr_criterion(1, "main weight: recursion = tau function", ("main",),
                          3 if level == "full" else 1, level, seed)


def criterion2(level: str = "full", seed: int = SEED) -> CheckResult:
    return _rtr_criterion(2, "bipartite/monotone/mixed: recursion = tau function",
                          ("bipartite", "monotone", "mixed"), 3 if level == "full" else 1, level, seed)


def criterion3(level: str = "full", seed: int = SEED) -> CheckResult:
    return _rtr_criterion(3, "Gaussian curve: recursion = Gaussian tau function", ("gbe",),
                          3 if level == "full" else 1, level, seed)


# ---------------------------------------------------------------------------
# constraints
# ---------------------------------------------------------------------------


def criterion4(level: str = "full", seed: int = SEED) -> CheckResult:
    res = CheckResult(4, "differential constraints annihilate tau")
    d_max = 6 if level == "full" else 4
    h_max = 4
    for name in MAIN_FAMILY + ("jbe", "lbe", "gbe"):
        vals = _tuples(name, 1, seed)[0]
        k_max = (5 if name == "gbe" else 6) if level == "full" else 3
        rep = J.check_constraints(name, J.bind_weight(name, vals), k_max, d_max, h_max)
        res.checked += rep["coefficients_checked"]
        res.details[name] = {"k_range": rep["k_range"], "checked": rep["coefficients_checked"],
                             "params": _enc(vals)}
        if rep["coefficients_checked"] == 0:
            res.fail(weight=name, reason="no reliable coefficient in the window")
        for f in rep["failures"][:1]:
            res.fail(weight=name, **f)
    return res


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------


def _maps_window(level: str) -> list[tuple[str, int, int]]:
    """(weight, |mu|, max edges) triples."""
    rmax = 5 if level == "full" else 4
    out = [(name, d, rmax) for name in MAIN_FAMILY for d in range(1, 4)]
    out.append(("monotone", 4, 7 if level == "full" else 5))
    return out


def criterion5(level: str = "full", seed: int = SEED) -> CheckResult:
    res = CheckResult(5, "map enumeration = tau function")
    taus = {}
    for name, d, rmax in _maps_window(level):
        vals = _tuples(name, 1, seed)[0]
        p = J.bind_weight(name, vals)
        key = (name, d)
        if key not in taus:
            taus[key] = J.log_tau(name, p, d, rmax + 1)
        phi = taus[key]
        for mu in J.partitions(d):
            n = len(mu)
            for g2 in range(0, rmax - d - n + 3):
                ref = J.extract_F(phi, g2, n, [mu])[J.mono(mu)]
                res.compare(MP.fgn_from_maps(g2, mu, name, p), ref, weight=name, g2=g2, mu=mu)
    return res


# ---------------------------------------------------------------------------
# deformed curves
# ---------------------------------------------------------------------------


def criterion6(level: str = "full", seed: int = SEED) -> CheckResult:
    res = CheckResult(6, "residue route with internal faces = tau function")
    L = 2 if level == "full" else 1
    E, Dm = 2, 2
    vals = _tuples("main", 1, seed)[0]
    r = RTR(C.catalog("main", vals), K=3)
    phi = J.solve_log_tau("main", J.bind_weight("main", vals), 12 + E * Dm, L + E)
    for g2 in range(0, 2 * L + 3):
        for n in range(1, L + 3):
            if g2 - 2 + n > L:
                continue
            for ks in itertools.combinations_with_replacement(range(1, 4), n):
                for D in (1, 2):
                    res.compare(FC.fgnD_via_residues(r, g2, ks, D, E), J.extract_FD(phi, g2, ks, D, E),
                                g2=g2, ks=ks, D=D)
    res.details["params"] = _enc(vals)
    return res


_POTENTIAL = (Fraction(2, 3), Fraction(-5, 7))


def _eps_curves(level: str, seed: int):
    Ds = (1, 2) if level == "full" else (1,)
    for name in FC.WEIGHTS:
        vals = _tuples(name, 1, seed)[0]
        for D in Ds:
            yield name, D, vals, FC.build_eps_curve(name, vals, D, 2, list(_POTENTIAL[:D]))


def criterion7(level: str = "full", seed: int = SEED) -> CheckResult:
    res = CheckResult(7, "deformed curve: fixed point, reduction, Y^2 structure, one-point function")
    for name, D, vals, ec in _eps_curves(level, seed):
        where = {"weight": name, "D": D, "params": _enc(vals)}
        parts = {
            "stabilized": ec.stabilized,
            "eps0": all(FC.eps0_reduction(ec).values()),
            "one_point": FC.one_point_check(ec)["ok"],
            "Y2": FC.lemma_Y2_check(ec)["ok"],
        }
        res.details[f"{name}/D={D}"] = parts
        for k, ok in parts.items():
            res.checked += 1
            if not ok:
                res.fail(check=k, **where)
    return res


def criterion8(level: str = "full", seed: int = SEED) -> CheckResult:
    res = CheckResult(8, "variational condition on the deformed curve")
    for name, D, vals, ec in _eps_curves(level, seed):
        rep = FC.variational_check(ec)
        res.details[f"{name}/D={D}"] = {k: v for k, v in rep.items() if isinstance(v, bool)}
        for k, ok in rep.items():
            if k == "ok" or not isinstance(ok, bool):
                continue
            res.checked += 1
            if not ok:
                res.fail(check=k, weight=name, D=D)
    return res


# ---------------------------------------------------------------------------
# structural invariants
# ---------------------------------------------------------------------------


def criterion9(level: str = "full", seed: int = SEED) -> CheckResult:
    res = CheckResult(9, "structural invariants of correlators")
    L = 3 if level == "full" else 2
    for name in C.CURVE_NAMES:
        vals = _tuples(name, 1, seed)[0]
        r = RTR(C.catalog(name, vals), K=3, check=True)
        for g2 in range(0, L + 2):
            for n in range(1, L + 3):
                if g2 - 2 + n > L or g2 - 2 + n <= 0:
                    continue
                try:
                    if g2 - 2 + n <= 2:
                        r.table(g2, n, min(n, 2))
                    r.disc_expand(g2, n, 3)
                except InvariantError as exc:
                    res.fail(curve=name, g2=g2, n=n, invariant=exc)
                    continue
                for key, rep in r.checks.items():
                    if key[:2] != (g2, n):
                        continue
                    for k, ok in rep.items():
                        res.checked += 1
                        if not ok:
                            res.fail(curve=name, g2=g2, n=n, check=k)
                for mu, F in r.disc_expand(g2, n, 3).items():
                    res.checked += 1
                    if not F.is_zero() and rf.b_degree(F) > g2:
                        res.fail(curve=name, g2=g2, mu=mu, check="b-degree of F")
                    if g2 % 2 and not F.subs("b", ZERO).is_zero():
                        res.fail(curve=name, g2=g2, mu=mu, check="odd 2g at b=0")
    return res


# ---------------------------------------------------------------------------
# ensembles
# ---------------------------------------------------------------------------


def criterion10(level: str = "full", seed: int = SEED) -> CheckResult:
    res = CheckResult(10, "beta-ensemble moments: quadrature vs truncated expansion")
    betas = (Fraction(1), Fraction(2), Fraction(4))
    kmax = 4 if level == "full" else 2
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for model in EN.MODELS:
            for N in (1, 2):
                for beta in betas:
                    spec = EN.EnsembleSpec(model, beta, N)
                    rows = EN.compare(spec, kmax, 2)
                    for row in rows:
                        res.checked += 1
                        if not row.ok:
                            res.fail(model=model, N=N, beta=beta, k=row.ks, residual=row.residual,
                                     expected_scale=row.expected_scale, oracle_error=row.oracle_rel_error)
                    res.details[f"{model}/N={N}/beta={beta}"] = max(r.residual for r in rows)
    return res


# ---------------------------------------------------------------------------
# b = 0
# ---------------------------------------------------------------------------


def criterion11(level: str = "full", seed: int = SEED) -> CheckResult:
    res = CheckResult(11, "b = 0: recursion, tau function, maps and permutation count agree")
    K = 4
    for name, d, rmax in _maps_window(level):
        vals = _tuples(name, 1, seed)[0]
        p = J.bind_weight(name, vals)
        r = RTR(C.catalog(name, vals), K=K)
        phi = J.log_tau(name, p, d, rmax + 1)
        for mu in J.partitions(d):
            n = len(mu)
            for g2 in range(0, rmax - d - n + 3, 2):
                jk = J.extract_F(phi, g2, n, [mu])[J.mono(mu)].subs("b", ZERO)
                mp = MP.fgn_from_maps(g2, mu, name, p).subs("b", ZERO)
                tr = r.disc_expand(g2, n, K, [mu])[tuple(sorted(mu))].subs("b", ZERO)
                res.compare(tr, jk, route="recursion/tau", weight=name, g2=g2, mu=mu)
                res.compare(mp, jk, route="maps/tau", weight=name, g2=g2, mu=mu)
                if name == "monotone":
                    res.compare(MP.monotone_fgn_brute(g2, mu, p), jk, route="permutations/tau", g2=g2, mu=mu)
    return res


CRITERIA: dict[int, Callable[..., CheckResult]] = {
    1: criterion1, 2: criterion2, 3: criterion3, 4: criterion4, 5: criterion5, 6: criterion6,
    7: criterion7, 8: criterion8, 9: criterion9, 10: criterion10, 11: criterion11,
}


def run(number: int, level: str = "full", seed: int = SEED) -> CheckResult:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    t0 = time.time()
    res = CRITERIA[number](level, seed)
    res.seconds = time.time() - t0
    return res


def worker_count() -> int:
    """Process count for :func:`run_all`, read from ``REFINED_TR_WORKERS``."""
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    if n < 1:
        raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return n


def run_all(level: str = "full", seed: int = SEED, numbers=None, echo: Callable[[str], None] | None = None,
            workers: int | None = None):
    """Run the selected criteria; results come back in criterion order
    whatever the worker count."""
    nums = list(numbers or sorted(CRITERIA))
    workers = worker_count() if workers is None else workers
    out = []
    if workers == 1 or len(nums) == 1:
        results = (run(k, level, seed) for k in nums)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=min(workers, len(nums)))
        results = pool.map(run, nums, [level] * len(nums), [seed] * len(nums))
    try:
        for res in results:
            if echo:
                echo(res.line())
            out.append(res)
    finally:
        if pool is not None:
            pool.shutdown()
    return out
