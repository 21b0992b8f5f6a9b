"""Command-line entry point.

Exit status: 0 when every requested check passes, 1 when a check fails
(the JSON output then carries the first mismatching coefficient), 2 for an
invalid configuration.
"""

from __future__ import annotations

import csv
import json
import sys
import warnings
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

import click

from . import __version__
from . import curve as C
from . import ensembles as EN
from . import faces as FC
from . import jack as J
from . import maps as MP
from . import verify as VF
from .ratfun import Rat
from .rtr import RTR

SCHEMA = 1


@dataclass
class JobConfig:
    command: str
    weight: str | None = None
    bounds: dict[str, int] = field(default_factory=dict)
    params: dict[str, str] = field(default_factory=dict)
    output: str | None = None
    fmt: str = "json"
    options: dict[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        for k, v in self.bounds.items():
            if not isinstance(v, int) or v < 0 or (v == 0 and k not in ("g2", "g2max", "E")):
                raise click.UsageError(f"bound {k} must be a positive integer, got {v!r}")
        if self.params and self.weight is None:
            raise click.UsageError("parameters given without a weight")
        if self.weight is not None:
            names = C.CURVE_PARAMS.get(self.weight)
            if names is None:
                raise click.UsageError(f"unknown weight {self.weight!r}; choose from {', '.join(C.CURVE_NAMES)}")
            extra = set(self.params) - set(names)
            if extra:
                raise click.UsageError(f"{self.weight} takes parameters {list(names)}, not {sorted(extra)}")
        if self.fmt not in ("json", "csv"):
            raise click.UsageError("format must be json or csv")

    def values(self) -> dict[str, Fraction]:
        return {k: Fraction(v) for k, v in self.params.items()}


# ---------------------------------------------------------------------------
# serialisation helpers
# ---------------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, Rat):
        return x.to_json()
    if isinstance(x, (Fraction,)):
        return str(x)
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    return str(x)


def _envelope(cfg: JobConfig, result, ok: bool = True, first_failure=None) -> dict:
    return {"schema": SCHEMA, "version": __version__, "config": _jsonable(asdict(cfg)), "ok": ok,
            "first_failure": _jsonable(first_failure), "result": _jsonable(result)}


def _rows_to_csv(rows: list[dict], path: str | None) -> None:
    fh = open(path, "w", newline="") if path else sys.stdout
    try:
        if rows:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    finally:
        if path:
            fh.close()


def _emit(cfg: JobConfig, doc: dict, rows: list[dict] | None = None) -> None:
    if cfg.fmt == "csv" and rows is not None:
        _rows_to_csv(rows, cfg.output)
        return
    text = json.dumps(doc, indent=1, sort_keys=True)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _table_rows(table: dict) -> list[dict]:
    return [{"g2": g2, "n": n, "mu": " ".join(map(str, mu)), "value": str(v)}
            for (g2, n), entries in sorted(table.items()) for mu, v in sorted(entries.items())]


def _first_diff(pairs) -> dict | None:
    for where, a, b in pairs:
        if not (Rat.coerce(a) - Rat.coerce(b)).is_zero():
            return {**where, "left": str(a), "right": str(b)}
    return None


# ---------------------------------------------------------------------------
# jobs
# ---------------------------------------------------------------------------


def _job_rtr_correlators(cfg):
    b = cfg.bounds
    r = RTR(C.catalog(cfg.weight, cfg.values()), K=b.get("K", 4))
    checks = r.pole_checks(b["g2"], b["n"]) if b["g2"] - 2 + b["n"] > 0 else {}
    ok = all(checks.values())
    return {"correlator": r.to_json(b["g2"], b["n"]), "checks": checks}, ok, None if ok else checks, None


def _job_rtr_fgn(cfg):
    b = cfg.bounds
    r = RTR(C.catalog(cfg.weight, cfg.values()), K=b["K"])
    table = r.fgn_table(b["g2max"], b["nmax"], b["K"], b.get("bound"))
    return {"curve": cfg.weight, "table": table}, True, None, _table_rows(table)


def _tau_window(g2: int, mu) -> tuple[int, int]:
    d = sum(mu)
    return d, d + len(mu) - 2 + g2 + 1


def _job_jack_tau(cfg):
    b = cfg.bounds
    p = J.bind_weight(cfg.weight, cfg.values())
    tau = J.tau_gbe(p, b["d_max"], b["h_max"]) if cfg.weight == "gbe" else \
        J.tau_single(cfg.weight, p, b["d_max"], b["h_max"])
    rows = [{"mu": " ".join(map(str, m)), "hbar": h, "value": str(v)} for (m, h), v in sorted(tau.items())]
    return {"weight": cfg.weight, "coefficients": rows}, True, None, rows


def _job_jack_fgn(cfg):
    mu = tuple(cfg.options["mu"])
    g2 = cfg.bounds["g2"]
    p = J.bind_weight(cfg.weight, cfg.values())
    phi = J.log_tau(cfg.weight, p, *_tau_window(g2, mu))
    F = J.extract_F(phi, g2, len(mu), [mu])[J.mono(mu)]
    return {"g2": g2, "mu": list(mu), "F": F}, True, None, None


def _job_jack_fdn(cfg):
    ks = tuple(cfg.options["mu"])
    b = cfg.bounds
    p = J.bind_weight(cfg.weight, cfg.values())
    phi = J.solve_log_tau(cfg.weight, p, sum(ks) + b["E"] * b["D"], b["g2"] - 2 + len(ks) + b["E"])
    F = J.extract_FD(phi, b["g2"], ks, b["D"], b["E"])
    return {"g2": b["g2"], "ks": list(ks), "D": b["D"], "E": b["E"], "FD": F}, True, None, None


def _job_jack_check(cfg):
    b = cfg.bounds
    p = J.bind_weight(cfg.weight, cfg.values())
    rep = J.check_constraints(cfg.weight, p, b["k_max"], b["d_max"], b["h_max"])
    ok = rep["ok"] and rep["coefficients_checked"] > 0
    return rep, ok, (rep["failures"][0] if rep["failures"] else None), None


def _job_maps_enumerate(cfg):
    b = cfg.bounds
    summary: dict = {}
    for prof, g2, nu, _ in MP.census(b["d"], b["r"]):
        key = f"profile={' '.join(map(str, prof))} g2={g2} nu={nu}"
        summary[key] = summary.get(key, 0) + 1
    result = {"d": b["d"], "r": b["r"], "classes": summary, "total": sum(summary.values())}
    ok, fail = True, None
    if cfg.options.get("audit"):
        audit = MP.klein_example_audit()
        result["audit"] = audit
        ok = audit["ok"]
        fail = None if ok else {"nu_values": audit["nu_values"], "matches": len(audit["matches"])}
    if cfg.options.get("list_maps"):
        result["maps"] = [m.to_json() for m in MP.generate(b["d"], b["r"])]
    return result, ok, fail, None


def _job_maps_fgn(cfg):
    mu = tuple(cfg.options["mu"])
    g2 = cfg.bounds["g2"]
    p = J.bind_weight(cfg.weight, cfg.values())
    F = MP.fgn_from_maps(g2, mu, cfg.weight, p)
    result = {"g2": g2, "mu": list(mu), "F": F}
    ok, fail = True, None
    if cfg.options.get("compare"):
        phi = J.log_tau(cfg.weight, p, *_tau_window(g2, mu))
        ref = J.extract_F(phi, g2, len(mu), [mu])[J.mono(mu)]
        result["tau_side"] = ref
        fail = _first_diff([({"g2": g2, "mu": list(mu)}, F, ref)])
        ok = fail is None
    return result, ok, fail, None


def _job_faces_fgnD(cfg):
    ks = tuple(cfg.options["mu"])
    b = cfg.bounds
    r = RTR(C.catalog(cfg.weight, cfg.values()), K=max(3, max(ks)))
    F = FC.fgnD_via_residues(r, b["g2"], ks, b["D"], b["E"])
    result = {"g2": b["g2"], "ks": list(ks), "D": b["D"], "E": b["E"], "FD": F}
    ok, fail = True, None
    if cfg.options.get("compare"):
        p = J.bind_weight(cfg.weight, cfg.values())
        phi = J.solve_log_tau(cfg.weight, p, sum(ks) + b["E"] * b["D"], b["g2"] - 2 + len(ks) + b["E"])
        ref = J.extract_FD(phi, b["g2"], ks, b["D"], b["E"])
        result["tau_side"] = ref
        fail = _first_diff([({"g2": b["g2"], "ks": list(ks)}, F, ref)])
        ok = fail is None
    return result, ok, fail, None


def _eps_curve(cfg):
    b = cfg.bounds
    pot = cfg.options.get("potential")
    return FC.build_eps_curve(cfg.weight, cfg.values(), b["D"], b["E"], pot)


def _job_faces_curve(cfg):
    ec = _eps_curve(cfg)
    return ec.to_json(), ec.stabilized, None if ec.stabilized else {"stabilized": False}, None


def _job_faces_y2(cfg):
    ec = _eps_curve(cfg)
    rep = FC.lemma_Y2_check(ec)
    rep["one_point"] = FC.one_point_check(ec)
    rep["eps0"] = FC.eps0_reduction(ec)
    ok = rep["ok"] and rep["one_point"]["ok"] and all(rep["eps0"].values())
    return rep, ok, None if ok else {k: v for k, v in rep.items() if v is False}, None


def _job_faces_variation(cfg):
    rep = FC.variational_check(_eps_curve(cfg))
    return rep, rep["ok"], None if rep["ok"] else {k: v for k, v in rep.items() if v is False}, None


def _ens_spec(cfg) -> EN.EnsembleSpec:
    o = cfg.options
    return EN.EnsembleSpec(cfg.weight, Fraction(o["beta"]), cfg.bounds["N"])


def _job_ens_predict(cfg):
    spec = _ens_spec(cfg)
    g2max = 2 * cfg.bounds["gmax"]
    preds = {str(k): EN.predict(spec, (k,), g2max).to_json() for k in range(1, cfg.bounds["kmax"] + 1)}
    return preds, True, None, None


def _job_ens_compare(cfg):
    spec = _ens_spec(cfg)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = EN.compare(spec, cfg.bounds["kmax"], 2 * cfg.bounds["gmax"])
        report = {",".join(map(str, r.ks)): r.to_json() for r in rows}
        ok = all(r.ok for r in rows)
        fail = next((r.to_json() for r in rows if not r.ok), None)
        samples = cfg.options.get("monte_carlo") or 0
        if samples:
            mc = {str(k): EN.monte_carlo_check(spec, k, samples, cfg.options.get("seed", 0))
                  for k in range(1, cfg.bounds["kmax"] + 1)}
            report["monte_carlo"] = {"seed": cfg.options.get("seed", 0), "samples": samples, "moments": mc}
            ok = ok and all(v["ok"] for v in mc.values())
    return report, ok, fail, None


def _job_verify(cfg):
    only = cfg.options.get("only") or None
    results = VF.run_all(cfg.options.get("level", "quick"), cfg.options.get("seed", VF.SEED), only,
                         echo=lambda s: click.echo(s, err=True))
    ok = all(r.ok for r in results)
    fail = next(({"criterion": r.number, **(r.first_failure or {})} for r in results if not r.ok), None)
    return [r.to_json() for r in results], ok, fail, None


JOBS = {
    "rtr correlators": _job_rtr_correlators,
    "rtr fgn": _job_rtr_fgn,
    "jack tau": _job_jack_tau,
    "jack fgn": _job_jack_fgn,
    "jack fdn": _job_jack_fdn,
    "jack check-dk": _job_jack_check,
    "jack check-lk": _job_jack_check,
    "maps enumerate": _job_maps_enumerate,
    "maps fgn": _job_maps_fgn,
    "faces fgnD": _job_faces_fgnD,
    "faces curve": _job_faces_curve,
    "faces check-y2": _job_faces_y2,
    "faces check-variation": _job_faces_variation,
    "ensembles predict": _job_ens_predict,
    "ensembles compare": _job_ens_compare,
    "verify all": _job_verify,
}


def run(cfg: JobConfig) -> int:
    """Execute one job, write its artifact and return the exit status."""
    if cfg.command not in JOBS:
        raise click.UsageError(f"unknown command {cfg.command!r}")
    if not cfg.command.startswith("ensembles") and not cfg.command.startswith("verify"):
        cfg.validate()
    result, ok, fail, rows = JOBS[cfg.command](cfg)
    _emit(cfg, _envelope(cfg, result, ok, fail), rows)
    if not ok:
        click.echo(json.dumps({"first_failure": _jsonable(fail)}, sort_keys=True), err=True)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# click surface
# ---------------------------------------------------------------------------


def _parse_params(items) -> dict[str, str]:
    out = {}
    for item in items:
        for part in item.split(","):
            if "=" not in part:
                raise click.BadParameter(f"expected name=value, got {part!r}", param_hint="--param")
            k, v = part.split("=", 1)
            try:
                Fraction(v.strip())
            except (ValueError, ZeroDivisionError):
                raise click.BadParameter(f"{k.strip()} must be a rational number, got {v!r}", param_hint="--param")
            out[k.strip()] = v.strip()
    return out


def _parse_ints(text: str, hint: str) -> list[int]:
    try:
        vals = [int(x) for x in text.replace(" ", ",").split(",") if x]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}", param_hint=hint)
    if not vals or any(v < 1 for v in vals):
        raise click.BadParameter("entries must be positive", param_hint=hint)
    return vals


def _parse_rationals(text: str | None):
    if not text:
        return None
    try:
        return [Fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"expected comma-separated rationals, got {text!r}", param_hint="--potential")


def _dispatch(cfg: JobConfig) -> None:
    try:
        status = run(cfg)
    except (C.CurveError, FC.FacesError, EN.EnsembleError) as exc:
        raise click.UsageError(str(exc))
    sys.exit(status)


_param_opt = click.option("--param", "-p", "params", multiple=True, help="Parameter binding name=value; omit to keep it symbolic.")
_json_opt = click.option("--json", "output", type=click.Path(dir_okay=False), default=None, help="Write JSON here instead of stdout.")


def _out_opts(f):
    f = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")(f)
    return _json_opt(f)


@click.group()
@click.version_option(__version__)
def main():
    """Refined topological recursion and its cross-checks."""


@main.command("run")
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
def run_config(config):
    """Run a job described by a JSON file mirroring JobConfig."""
    with open(config) as fh:
        try:
            data = json.load(fh)
            cfg = JobConfig(**data)
        except (json.JSONDecodeError, TypeError) as exc:
            raise click.UsageError(f"bad config: {exc}")
    _dispatch(cfg)


# rtr ----------------------------------------------------------------------


@main.group()
def rtr():
    """Correlators of the recursion."""


@rtr.command("correlators")
@click.option("--curve", required=True)
@click.option("--g2", type=int, required=True, help="Twice the genus.")
@click.option("--n", type=int, required=True)
@_param_opt
@_out_opts
def rtr_correlators(curve, g2, n, params, output, fmt):
    _dispatch(JobConfig("rtr correlators", curve, {"g2": g2, "n": n}, _parse_params(params), output, fmt))


@rtr.command("fgn")
@click.option("--curve", required=True)
@click.option("--g2max", type=int, required=True, help="Largest doubled genus.")
@click.option("--nmax", type=int, required=True)
@click.option("--K", "K", type=int, default=4, show_default=True, help="Largest boundary degree.")
@click.option("--bound", type=int, default=None, help="Only 2g-2+n <= bound.")
@_param_opt
@_out_opts
def rtr_fgn(curve, g2max, nmax, K, bound, params, output, fmt):
    bounds = {"g2max": g2max, "nmax": nmax, "K": K}
    if bound is not None:
        bounds["bound"] = bound
    _dispatch(JobConfig("rtr fgn", curve, bounds, _parse_params(params), output, fmt))


# jack ---------------------------------------------------------------------


@main.group()
def jack():
    """Tau functions and their constraints."""


@jack.command("tau")
@click.option("--weight", required=True)
@click.option("--dmax", type=int, required=True)
@click.option("--hmax", type=int, default=2, show_default=True)
@_param_opt
@_out_opts
def jack_tau(weight, dmax, hmax, params, output, fmt):
    _dispatch(JobConfig("jack tau", weight, {"d_max": dmax, "h_max": hmax}, _parse_params(params), output, fmt))


@jack.command("fgn")
@click.option("--weight", required=True)
@click.option("--g2", type=int, required=True)
@click.option("--mu", required=True, help="Boundary degrees, e.g. 1,2.")
@_param_opt
@_json_opt
def jack_fgn(weight, g2, mu, params, output):
    _dispatch(JobConfig("jack fgn", weight, {"g2": g2}, _parse_params(params), output,
                        options={"mu": _parse_ints(mu, "--mu")}))


@jack.command("fdn")
@click.option("--weight", required=True)
@click.option("--g2", type=int, required=True)
@click.option("--mu", required=True)
@click.option("--D", "D", type=int, required=True, help="Largest internal face degree.")
@click.option("--E", "E", type=int, default=2, show_default=True, help="Order in eps.")
@_param_opt
@_json_opt
def jack_fdn(weight, g2, mu, D, E, params, output):
    _dispatch(JobConfig("jack fdn", weight, {"g2": g2, "D": D, "E": E}, _parse_params(params), output,
                        options={"mu": _parse_ints(mu, "--mu")}))


def _check_cmd(name, default_k):
    @jack.command(name)
    @click.option("--weight", required=True)
    @click.option("--kmax", type=int, default=default_k, show_default=True)
    @click.option("--dmax", type=int, default=6, show_default=True)
    @click.option("--hmax", type=int, default=4, show_default=True)
    @_param_opt
    @_json_opt
    def cmd(weight, kmax, dmax, hmax, params, output):
        if (name == "check-lk") != (weight == "gbe"):
            raise click.UsageError("check-lk is for the gbe weight, check-dk for the others")
        _dispatch(JobConfig(f"jack {name}", weight, {"k_max": kmax, "d_max": dmax, "h_max": hmax},
                            _parse_params(params), output))

    cmd.__doc__ = "Apply the constraint operators to tau and report reliable nonzero coefficients."
    return cmd


_check_cmd("check-dk", 6)
_check_cmd("check-lk", 5)


# maps ---------------------------------------------------------------------


@main.group()
def maps():
    """Monotone Hurwitz maps."""


@maps.command("enumerate")
@click.option("--d", "d", type=int, required=True)
@click.option("--r", "r", type=int, required=True)
@click.option("--audit", is_flag=True, help="Also locate the d=3, r=5 Klein-bottle example.")
@click.option("--list", "list_maps", is_flag=True, help="Include every map.")
@_json_opt
def maps_enumerate(d, r, audit, list_maps, output):
    _dispatch(JobConfig("maps enumerate", None, {"d": d, "r": r}, {}, output,
                        options={"audit": audit, "list_maps": list_maps}))


@maps.command("fgn")
@click.option("--weight", required=True)
@click.option("--g2", type=int, required=True)
@click.option("--mu", required=True)
@click.option("--compare", is_flag=True, help="Compare with the tau function.")
@_param_opt
@_json_opt
def maps_fgn(weight, g2, mu, compare, params, output):
    _dispatch(JobConfig("maps fgn", weight, {"g2": g2}, _parse_params(params), output,
                        options={"mu": _parse_ints(mu, "--mu"), "compare": compare}))


# faces --------------------------------------------------------------------


@main.group()
def faces():
    """Internal faces and the deformed curve."""


@faces.command("fgnD")
@click.option("--weight", required=True)
@click.option("--g2", type=int, required=True)
@click.option("--ks", required=True, help="Boundary degrees.")
@click.option("--D", "D", type=int, required=True)
@click.option("--E", "E", type=int, default=2, show_default=True)
@click.option("--compare", is_flag=True, help="Compare with the tau function.")
@_param_opt
@_json_opt
def faces_fgnD(weight, g2, ks, D, E, compare, params, output):
    _dispatch(JobConfig("faces fgnD", weight, {"g2": g2, "D": D, "E": E}, _parse_params(params), output,
                        options={"mu": _parse_ints(ks, "--ks"), "compare": compare}))


def _curve_cmd(name, help_text):
    @faces.command(name, help=help_text)
    @click.option("--weight", required=True)
    @click.option("--D", "D", type=int, required=True)
    @click.option("--E", "E", type=int, default=2, show_default=True)
    @click.option("--potential", default=None, help="Values p_1,...,p_D; symbolic if omitted.")
    @_param_opt
    @_json_opt
    def cmd(weight, D, E, potential, params, output):
        pot = _parse_rationals(potential)
        if pot is not None and len(pot) != D:
            raise click.BadParameter(f"need {D} values", param_hint="--potential")
        _dispatch(JobConfig(f"faces {name}", weight, {"D": D, "E": E}, _parse_params(params), output,
                            options={"potential": pot}))

    return cmd


_curve_cmd("curve", "Build the deformed curve to order eps^E.")
_curve_cmd("check-y2", "Polynomiality and square structure of the deformed curve.")
_curve_cmd("check-variation", "Variational identities of the deformed curve.")


# ensembles ----------------------------------------------------------------


@main.group()
def ensembles():
    """Beta-ensemble moments."""


def _ens_opts(f):
    f = click.option("--gmax", type=int, default=1, show_default=True, help="Largest genus kept.")(f)
    f = click.option("--kmax", type=int, default=4, show_default=True)(f)
    f = click.option("--N", "N", type=int, required=True)(f)
    f = click.option("--beta", required=True)(f)
    f = click.option("--model", type=click.Choice(EN.MODELS), required=True)(f)
    return _json_opt(f)


def _ens_cfg(command, model, beta, N, kmax, gmax, output, **options):
    try:
        b = Fraction(beta)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a rational number: {beta!r}", param_hint="--beta")
    if b <= 0 or N < 1 or kmax < 1 or gmax < 0:
        raise click.UsageError("need beta > 0, N >= 1, kmax >= 1 and gmax >= 0")
    return JobConfig(command, model, {"N": N, "kmax": kmax, "gmax": gmax}, {}, output,
                     options={"beta": str(b), **options})


@ensembles.command("predict")
@_ens_opts
def ens_predict(model, beta, N, kmax, gmax, output):
    _dispatch(_ens_cfg("ensembles predict", model, beta, N, kmax, gmax, output))


@ensembles.command("compare")
@_ens_opts
@click.option("--monte-carlo", "monte_carlo", type=int, default=0,
              help="Also sample this many tridiagonal matrices (gbe only).")
@click.option("--seed", type=int, default=0, show_default=True)
def ens_compare(model, beta, N, kmax, gmax, output, monte_carlo, seed):
    if monte_carlo and model != "gbe":
        raise click.UsageError("Monte-Carlo sampling is implemented for gbe only")
    _dispatch(_ens_cfg("ensembles compare", model, beta, N, kmax, gmax, output,
                       monte_carlo=monte_carlo, seed=seed))


# verify -------------------------------------------------------------------


@main.group()
def verify():
    """Acceptance checks."""


@verify.command("all", epilog=f"Set {VF.WORKERS_ENV} to run criteria in parallel processes.")
@click.option("--level", type=click.Choice(VF.LEVELS), default="quick", show_default=True)
@click.option("--only", default=None, help="Comma-separated criterion numbers.")
@click.option("--seed", type=int, default=VF.SEED, show_default=True)
@_json_opt
def verify_all(level, only, seed, output):
    nums = _parse_ints(only, "--only") if only else None
    if nums and any(k not in VF.CRITERIA for k in nums):
        raise click.BadParameter(f"criteria are numbered 1..{len(VF.CRITERIA)}", param_hint="--only")
    try:
        VF.worker_count()
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _dispatch(JobConfig("verify all", None, {}, {}, output,
                        options={"level": level, "only": nums, "seed": seed}))


if __name__ == "__main__":
    main()
