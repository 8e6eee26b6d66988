"""
Named verification experiments and their residual reports.

A check never aborts the run: numerical failures inside a check are recorded
as a FAIL row with an infinite residual and the remaining checks still run.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import symbols as sym
from .entrance import EntranceLaw, Extremal, Mixture, Zero, entrance_cf_values, expected_mean, flow_residuals, mean_projection, periodic_residual
from .errors import DomainError, MehlerError, UndefinedForKindError
from .mehler import NEG_INF, MehlerModel, ck_residuals, mu_cf_values, positive_definite_check
from .sampler import RngStream, cf_stderr, empirical_cf_values, sample_entrance, stable_grid_exponent
from .space import ProbeSet

DEFAULT_TOLERANCES = {
    "ck": 1e-8,
    "flow": 1e-8,
    "mean": 1e-7,
    "symmetry": 0.0,
    "periodic": None,  # certified contraction ratio, computed per model
    "sampler-vs-cf": 0.05,
    "definiteness": 1e-9,
    "tail-moment": 1e-6,
    "hypothesis-certificates": 0.0,
}

NEG_DEF_TOL = 1e-10


def format_float(x: float) -> str:
    """Shortest round-trip text in ``d.ddde±x`` form; integral values print as integers."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    mant, exp = f"{x:.16e}".split("e")
    # shortest digits that round-trip
    for digits in range(1, 18):
        cand = f"{x:.{digits - 1}e}"
        if float(cand) == x:
            mant, exp = cand.split("e")
            break
    return f"{mant}e{int(exp)}"


def format_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0 and z.real.is_integer():
        return format_float(z.real)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{format_float(z.real)} {sign} {format_float(abs(z.imag))}i"


@dataclass(frozen=True)
class MCSettings:
    N: int = 20000
    grid_steps: int = 256
    seed: int = 0


@dataclass(eq=False)
class Experiment:
    name: str
    model: MehlerModel
    probes: ProbeSet
    law: EntranceLaw | None = None
    checks: list = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)
    times: list = field(default_factory=list)
    points: list = field(default_factory=lambda: [0.0])
    mc: MCSettings = field(default_factory=MCSettings)
    periodic_n: int = 10
    seed: int = 0
    config_hash: str = ""

    def __post_init__(self):
        for s, r, t in self.times:
            if not s <= r <= t:
                raise DomainError(f"time triple ({s}, {r}, {t}) violates s <= r <= t")
        unknown = [c for c in self.checks if c not in DEFAULT_TOLERANCES]
        if unknown:
            raise ValueError(f"unknown checks {unknown}")

    def tolerance(self, check):
        return self.tolerances.get(check, DEFAULT_TOLERANCES[check])


@dataclass(frozen=True)
class Row:
    check: str
    s: float
    r: float
    t: float
    probe_id: int | str
    residual: float
    tolerance: float

    @property
    def verdict(self) -> str:
        return "PASS" if self.residual <= self.tolerance else "FAIL"


@dataclass
class CheckSummary:
    name: str
    max_residual: float
    tolerance: float
    verdict: str
    wall_time: float
    note: str = ""


@dataclass
class Report:
    name: str
    rows: list = field(default_factory=list)
    summaries: list = field(default_factory=list)
    sections: dict = field(default_factory=dict)
    cf_rows: list = field(default_factory=list)
    environment: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(s.verdict == "PASS" for s in self.summaries)

    def summary(self, name) -> CheckSummary:
        for s in self.summaries:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "param_s", "param_r", "param_t", "probe_id", "residual", "tolerance", "verdict"])
        for row in self.rows:
            w.writerow(
                [row.check, format_float(row.s), format_float(row.r), format_float(row.t), row.probe_id,
                 format_float(row.residual), format_float(row.tolerance), row.verdict]
            )
        return buf.getvalue()

    def cf_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["probe_id", "t", "re_theory", "im_theory", "re_emp", "im_emp", "stderr"])
        for r in self.cf_rows:
            w.writerow([r[0]] + [format_float(x) for x in r[1:]])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "passed": self.passed,
            "environment": self.environment,
            "checks": [
                {"name": s.name, "max_residual": _json_float(s.max_residual), "tolerance": _json_float(s.tolerance),
                 "verdict": s.verdict, "wall_time": s.wall_time, "note": s.note}
                for s in self.summaries
            ],
            "sections": self.sections,
        }
        return json.dumps(doc, indent=2, default=_json_float)


def _json_float(x):
    x = float(x)
    return x if math.isfinite(x) else format_float(x)


# individual checks ------------------------------------------------------------
# each returns (rows, note) and may raise; run_experiment turns exceptions into FAIL rows


def _law(e: Experiment) -> EntranceLaw:
    return e.law if e.law is not None else Extremal(e.model, Zero(e.model.space.dim))


def _argmax_row(check, s, r, t, res, tol):
    k = int(np.argmax(res))
    return Row(check, s, r, t, k, float(res[k]), tol)


def _check_ck(e):
    tol = e.tolerance("ck")
    return [_argmax_row("ck", s, r, t, ck_residuals(e.model, s, r, t, e.probes.probes), tol) for s, r, t in e.times], ""


def _check_flow(e):
    tol, law = e.tolerance("flow"), _law(e)
    rows = []
    for s, r, t in e.times:
        if not math.isfinite(s):
            s = r
        rows.append(_argmax_row("flow", s, math.nan, t, flow_residuals(law, s, t, e.probes), tol))
    return rows, type(law).__name__


def _check_mean(e):
    tol, law = e.tolerance("mean"), _law(e)
    rows = []
    for t in e.points:
        err = np.abs(mean_projection(law, t) - expected_mean(law, t))
        rows.append(Row("mean", math.nan, math.nan, t, int(np.argmax(err)), float(err.max()), tol))
    return rows, ""


def _check_symmetry(e):
    tol = e.tolerance("symmetry")
    A = e.probes.probes
    lam = e.model.symbol
    vals = np.asarray(lam(A))
    asym = np.abs(vals - np.asarray(lam(-A))) + np.abs(np.imag(vals))
    rows = [_argmax_row("symmetry", math.nan, math.nan, math.nan, asym, tol)]
    for t in e.points:
        v = mu_cf_values(e.model, NEG_INF, t, e.probes.probes)
        res = np.maximum(np.abs(v.imag), np.maximum(v.real - 1.0, 0.0))
        rows.append(_argmax_row("symmetry", NEG_INF, math.nan, t, res, tol))
    return rows, "lambda(-a) == lambda(a) real; Im mu_{-inf,t} == 0 and mu <= 1"


def _check_periodic(e):
    m = e.model
    if m.period is None:
        raise DomainError("model is not T-periodic")
    T = m.period
    _, omega = m.certificate
    bound = e.tolerance("periodic")
    if bound is None:
        bound = math.exp(-omega * T) * 1.01
    law = e.law if e.law is not None else Extremal(m, Zero(m.space.dim))
    t = e.points[0]
    res = [periodic_residual(law, t, n, e.probes) for n in range(e.periodic_n + 1)]
    rows = []
    for n in range(1, e.periodic_n + 1):
        ratio = res[n] / res[n - 1] if res[n - 1] > 0 else 0.0
        rows.append(Row("periodic", t - n * T, math.nan, t, n, ratio, bound))
    zero = periodic_residual(Extremal(m, Zero(m.space.dim)), t, e.periodic_n, e.probes)
    rows.append(Row("periodic", t - e.periodic_n * T, math.nan, t, "zero-law", zero, 0.0))
    return rows, f"decay ratios vs exp(-omega T)*1.01 = {bound:.6g}"


def _stable_only(m: MehlerModel):
    parts = [p for p in m.symbol.parts() if isinstance(p, (sym.StableNorm, sym.StableMixing))]
    if not parts:
        return None
    return m.with_symbol(parts[0] if len(parts) == 1 else sym.Sum(tuple(parts)))


def grid_bias(m: MehlerModel, t: float, grid_steps: int, A) -> np.ndarray:
    """``|exp(-grid exponent) - exp(-exact exponent)|`` of the stable terms (zero if none)."""
    sm = _stable_only(m)
    if sm is None:
        return np.zeros(np.atleast_2d(A).shape[0])
    grid = np.exp(-stable_grid_exponent(sm, NEG_INF, t, grid_steps, A))
    return np.abs(grid - mu_cf_values(sm, NEG_INF, t, A).real)


def _check_sampler(e, report):
    tol, law = e.tolerance("sampler-vs-cf"), _law(e)
    rows = []
    P = e.probes.probes
    for k, t in enumerate(e.points):
        batch = sample_entrance(law, t, e.mc.N, RngStream(e.mc.seed, k), e.mc.grid_steps)
        emp = empirical_cf_values(batch, P)
        theory = entrance_cf_values(law, t, P)
        se = cf_stderr(emp, batch.N)
        allowance = 3.0 * se + grid_bias(e.model, t, e.mc.grid_steps, P)
        miss = np.abs(emp - theory) > allowance
        for j in range(P.shape[0]):
            report.cf_rows.append((j, t, theory[j].real, theory[j].imag, emp[j].real, emp[j].imag, float(se[j])))
        rows.append(Row("sampler-vs-cf", NEG_INF, math.nan, t, int(miss.sum()), float(miss.mean()), tol))
    return rows, f"fraction of probes outside 3*stderr (+grid bias), N={e.mc.N}"


def _check_definiteness(e):
    tol = e.tolerance("definiteness")
    law = _law(e)
    rows = [Row("definiteness", math.nan, math.nan, math.nan, "symbol", max(negative_definite_violation(e.model.symbol, e.seed), 0.0), NEG_DEF_TOL)]
    for t in e.points:
        mu_min = positive_definite_check(e.model.cf(NEG_INF, t), e.probes)
        law_min = positive_definite_check(law.cf(t), e.probes)
        rows.append(Row("definiteness", NEG_INF, math.nan, t, "mu", max(-mu_min, 0.0), tol))
        rows.append(Row("definiteness", NEG_INF, math.nan, t, "law", max(-law_min, 0.0), tol))
    return rows, "negative definiteness of lambda; positive definiteness of CFs"


def negative_definite_violation(lam, seed=0, n=5):
    return sym.negative_definite_check(lam, n=n, seed=seed)


def stable_constant_closed_form(alpha: float) -> float:
    """``∫_0^∞ (1 - cos u) u^{-1-alpha} du = -Gamma(-alpha) cos(pi alpha / 2)`` for 1 < alpha < 2."""
    return float(-special.gamma(-alpha) * math.cos(math.pi * alpha / 2))


def _tail_closed_form(lam) -> float:
    total = 0.0
    for p in lam.parts():
        if isinstance(p, sym.StableMixing):
            norms = np.linalg.norm(p.atoms, axis=1)
            total += float(np.sum(p.weights * norms**p.alpha)) / (stable_constant_closed_form(p.alpha) * (p.alpha - 1))
        elif isinstance(p, sym.CompoundPoisson):
            norms = np.linalg.norm(p.jumps, axis=1)
            total += float(sum(m * n for m, n in zip(p.masses, norms) if n > 1))
    return total


def _check_tail(e):
    tol = e.tolerance("tail-moment")
    lam = e.model.symbol
    try:
        value = sym.levy_tail_moment(lam)
    except UndefinedForKindError as exc:
        return [Row("tail-moment", math.nan, math.nan, math.nan, "-", 0.0, tol)], f"vacuous: {exc}" if "Gaussian" in str(exc) else f"not applicable: {exc}"
    ref = _tail_closed_form(lam)
    return [Row("tail-moment", math.nan, math.nan, math.nan, "-", abs(value - ref), tol)], f"tail moment {value!r}"


def hypothesis_certificates(m: MehlerModel, probes: ProbeSet) -> dict:
    """Checkable sufficient conditions for the model's standing assumptions.

    * ``contraction``: the certificate ``||U_{s,t}|| <= c exp(-omega (t-s))``;
    * ``sigma_bound``: ``sup_r ||sigma(r)||`` is finite;
    * ``symbol_symmetry``: ``lambda(0) = 0``, ``lambda(-a) = lambda(a) >= 0`` on the probes;
    * ``tail_moment``: ``∫_{||x||>1} ||x|| M(dx)`` is finite.
    """
    c, omega = m.certificate
    A = probes.probes
    lam = m.symbol
    vals, flipped = lam(A), lam(-A)
    sym_res = float(max(abs(float(lam(np.zeros(m.space.dim)))), np.abs(vals - flipped).max(), max(0.0, -vals.min())))
    try:
        tail = sym.levy_tail_moment(lam)
        tail_status = "finite" if math.isfinite(tail) else "infinite"
    except UndefinedForKindError as exc:
        tail = None
        tail_status = "vacuous (M=0)" if "Gaussian" in str(exc) else f"not computed ({exc})"
    return {
        "contraction": {"c": c, "omega": omega, "ok": bool(c > 0 and omega > 0 and math.isfinite(c))},
        "sigma_bound": {"sup_sigma": m.sigma.sup_norm(), "C_sigma": m.C_sigma, "ok": bool(math.isfinite(m.sigma.sup_norm()))},
        "symbol_symmetry": {"max_violation": sym_res, "ok": sym_res == 0.0},
        "tail_moment": {"tail_moment": tail, "status": tail_status, "ok": tail is None or math.isfinite(tail)},
    }


def _check_certificates(e, report):
    cert = hypothesis_certificates(e.model, e.probes)
    report.sections["hypothesis_certificates"] = cert
    rows = []
    for key in ("contraction", "sigma_bound", "symbol_symmetry", "tail_moment"):
        res = cert[key].get("max_violation", 0.0 if cert[key]["ok"] else math.inf)
        if not cert[key]["ok"]:
            res = math.inf
        rows.append(Row("hypothesis-certificates", math.nan, math.nan, math.nan, key, float(res), e.tolerance("hypothesis-certificates")))
    return rows, cert["tail_moment"]["status"]


_DISPATCH = {
    "ck": lambda e, rep: _check_ck(e),
    "flow": lambda e, rep: _check_flow(e),
    "mean": lambda e, rep: _check_mean(e),
    "symmetry": lambda e, rep: _check_symmetry(e),
    "periodic": lambda e, rep: _check_periodic(e),
    "sampler-vs-cf": _check_sampler,
    "definiteness": lambda e, rep: _check_definiteness(e),
    "tail-moment": lambda e, rep: _check_tail(e),
    "hypothesis-certificates": _check_certificates,
}


def run_experiment(e: Experiment) -> Report:
    report = Report(e.name, environment={"seed": e.seed, "mc_seed": e.mc.seed, "config_hash": e.config_hash})
    for name in e.checks:
        start = time.perf_counter()
        try:
            rows, note = _DISPATCH[name](e, report)
        except (MehlerError, ArithmeticError, ValueError) as exc:
            tol = e.tolerance(name)
            rows = [Row(name, math.nan, math.nan, math.nan, "error", math.inf, 0.0 if tol is None else tol)]
            note = f"error: {type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        report.rows.extend(rows)
        worst = max((r.residual for r in rows), default=0.0)
        verdict = "PASS" if all(r.verdict == "PASS" for r in rows) else "FAIL"
        tol = max((r.tolerance for r in rows), default=0.0)
        report.summaries.append(CheckSummary(name, worst, tol, verdict, elapsed, note))
    return report


def random_times(n: int, seed: int, low: float, high: float) -> list[tuple[float, float, float]]:
    rng = np.random.default_rng(seed)
    return [tuple(float(x) for x in np.sort(rng.uniform(low, high, 3))) for _ in range(n)]


def experiment_from_config(cfg) -> Experiment:
    """Build an :class:`Experiment` from a :class:`mehlerlab.config.Config`."""
    data = cfg.data
    model = cfg.model()
    ex = data["experiment"]
    times = ex["times"]
    if isinstance(times, dict):
        times = random_times(times["random"], times["seed"], times["low"], times["high"])
    else:
        times = [tuple(tr) for tr in times]
    return Experiment(
        name=ex["name"],
        model=model,
        probes=cfg.probes(),
        law=cfg.law(model),
        checks=list(ex["checks"]),
        tolerances=dict(ex["tolerances"]),
        times=times,
        points=list(ex["points"]),
        mc=MCSettings(**ex["mc"]),
        periodic_n=ex["periodic_n"],
        seed=data["probes"]["seed"],
        config_hash=cfg.digest(),
    )
