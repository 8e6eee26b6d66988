"""
Acceptance criteria 1-10, one test each.

Every test records a one-line verdict in ``RESULTS`` (printed at the end of
the run by ``conftest.py``) before asserting, so a failing criterion still
reports its measured value.
"""

import itertools
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from mehlerlab.config import CORE_PRESETS, PRESETS, preset
from mehlerlab.entrance import Extremal, FromInitial, Mixture, Zero, entrance_cf_values, flow_residuals, kappa_eval, mean_projection, periodic_residual
from mehlerlab.evolution import DiagonalSemigroup, ConstantDiag
from mehlerlab.mehler import MehlerModel, ck_residuals, exponent_batch, gaussian_covariance, mu_cf_values, positive_definite_check
from mehlerlab.sampler import RngStream, cf_stderr, empirical_cf_values, sample_base, sample_entrance
from mehlerlab.space import ProbeSet, TruncatedSpace
from mehlerlab.symbols import GaussianForm, StableMixing, levy_tail_moment, negative_definite_check
from mehlerlab.verify import grid_bias
from negative_controls import CubeNorm, non_pd_cf
from oracles import FROZEN

RESULTS: dict[int, tuple[bool, str]] = {}
NEG_INF = -math.inf


def record(n, ok, detail):
    RESULTS[n] = (bool(ok), detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def build(name):
    cfg = preset(name)
    m = cfg.model()
    return cfg, m, cfg.probes()


def time_window(name):
    return (0.0, 1.0) if name == "gaussian-laplacian" else (-1.0, 1.0)


def three_component_mixture(m, rng):
    x = rng.normal(size=(2, m.space.dim))
    return Mixture(m, (0.5, 0.3, 0.2), (FromInitial(m.U, x[0]), FromInitial(m.U, x[1]), Zero(m.space.dim)))


# 1 ----------------------------------------------------------------------------------------


def test_criterion_01_closed_form_oracles():
    _, m, P = build("gaussian-scalar")
    worst_E = worst_R = 0.0
    A = P.probes[1:]
    for t in (-3.0, 0.0, 0.7, 5.0):
        E, _ = exponent_batch(m, NEG_INF, t, A)
        worst_E = max(worst_E, float(np.max(np.abs(E / (np.sum(A**2, axis=1) / 4) - 1))))
        worst_R = max(worst_R, float(np.max(np.abs(gaussian_covariance(m, NEG_INF, t) / 0.5 - 1))))
    ok = worst_E <= 1e-9 and worst_R <= 1e-9
    record(1, ok, f"max rel err exponent {worst_E:.2e}, covariance {worst_R:.2e} (tol 1e-9)")
    assert ok


# 2 ----------------------------------------------------------------------------------------


def ck_tuples(n, seed, low, high):
    rng = np.random.default_rng(seed)
    out = []
    for k in range(n):
        s, r, t = np.sort(rng.uniform(low, high, 3))
        out.append((NEG_INF if k % 10 == 0 else float(s), float(r), float(t)))
    return out


def test_criterion_02_chapman_kolmogorov():
    worst = {}
    for name in CORE_PRESETS:
        _, m, P = build(name)
        rng = np.random.default_rng(2)
        low, high = time_window(name)
        res = 0.0
        for s, r, t in ck_tuples(100, 1, 2 * low, 2 * high):
            a = P.probes[rng.integers(len(P))][None, :]
            res = max(res, float(ck_residuals(m, s, r, t, a).max()))
        worst[name] = res
    ok = max(worst.values()) <= 1e-8
    record(2, ok, "max ck residual over 100 tuples: " + ", ".join(f"{k}={v:.1e}" for k, v in worst.items()))
    assert ok


# 3 ----------------------------------------------------------------------------------------


def test_criterion_03_entrance_flow():
    worst = {}
    for name in CORE_PRESETS:
        cfg, m, P = build(name)
        rng = np.random.default_rng(3)
        laws = [Extremal(m, FromInitial(m.U, rng.normal(size=m.space.dim))), three_component_mixture(m, rng)]
        low, high = time_window(name)
        for law in laws:
            res = 0.0
            for _ in range(50):
                s, t = np.sort(rng.uniform(2 * low, 2 * high, 2))
                res = max(res, float(flow_residuals(law, float(s), float(t), P).max()))
            worst[f"{name}/{type(law).__name__}"] = res
    ok = max(worst.values()) <= 1e-8
    record(3, ok, f"max flow residual over 50 pairs x 2 laws x 5 presets: {max(worst.values()):.1e} (tol 1e-8)")
    assert ok


# 4 ----------------------------------------------------------------------------------------


def test_criterion_04_bijection_and_mean():
    mean_err, min_gap = 0.0, math.inf
    for name in CORE_PRESETS:
        _, m, P = build(name)
        rng = np.random.default_rng(4)
        low, high = time_window(name)
        kappas = [FromInitial(m.U, rng.normal(size=m.space.dim)) for _ in range(20)]
        times = rng.uniform(low, high, 20)
        for kappa, t in zip(kappas, times):
            law = Extremal(m, kappa)
            mean_err = max(mean_err, float(np.max(np.abs(mean_projection(law, t) - kappa_eval(kappa, t)))))
        t0 = 0.5 * (low + high)
        cfs = [entrance_cf_values(Extremal(m, k), t0, P.probes) for k in kappas]
        for u, v in itertools.combinations(cfs, 2):
            min_gap = min(min_gap, float(np.max(np.abs(u - v))))
    ok = mean_err <= 1e-7 and min_gap > 1e-6
    record(4, ok, f"max |p(nu^kappa) - kappa| = {mean_err:.1e} (tol 1e-7); min CF gap between distinct kappas {min_gap:.2e} (> 1e-6)")
    assert ok


# 5 ----------------------------------------------------------------------------------------


def covariance_trace(name, m):
    if name == "cp-scalar":
        cp = m.symbol
        omega = m.certificate[1]
        return float(np.sum(cp.masses * np.sum(cp.jumps**2, axis=1))) / (2 * omega)
    return float(np.sum(gaussian_covariance(m, NEG_INF, 0.0)))


def test_criterion_05_symmetry():
    max_im = 0.0
    for name in PRESETS:
        _, m, P = build(name)
        for t in (-1.0, 0.0, 0.8):
            max_im = max(max_im, float(np.max(np.abs(mu_cf_values(m, NEG_INF, t, P.probes).imag))))
    N = 100_000
    ratios = {}
    for k, name in enumerate(("gaussian-scalar", "gaussian-laplacian", "cp-scalar")):
        _, m, _ = build(name)
        batch = sample_base(m, NEG_INF, 0.0, N, RngStream(55, k))
        ratios[name] = float(np.linalg.norm(batch.draws.mean(0))) / (4 * math.sqrt(covariance_trace(name, m) / N))
    ok = max_im == 0.0 and max(ratios.values()) <= 1.0
    record(5, ok, f"max |Im mu_-inf,t| = {max_im!r}; sampler |mean| / 4 sqrt(tr R / N): " + ", ".join(f"{k}={v:.2f}" for k, v in ratios.items()))
    assert ok


# 6 ----------------------------------------------------------------------------------------


def test_criterion_06_sampler_vs_cf():
    N, grid, t = 100_000, 256, 0.0
    cover = {}
    for k, name in enumerate(("gaussian-scalar", "cp-scalar", "stable-scalar")):
        cfg, m, _ = build(name)
        P = ProbeSet.with_total(m.space, 32, seed=6)
        assert len(P) == 32
        law = cfg.law(m)
        batch = sample_entrance(law, t, N, RngStream(66, k), grid)
        emp = empirical_cf_values(batch, P.probes)
        theory = entrance_cf_values(law, t, P.probes)
        allowance = 3 * cf_stderr(emp, N) + grid_bias(m, t, grid, P.probes)
        cover[name] = float(np.mean(np.abs(emp - theory) <= allowance))
    ok = min(cover.values()) >= 0.95
    record(6, ok, "fraction of 32 probes within 3 stderr (+ grid bias), N=1e5: " + ", ".join(f"{k}={v:.3f}" for k, v in cover.items()))
    assert ok


# 7 ----------------------------------------------------------------------------------------


def test_criterion_07_periodic_uniqueness():
    cfg, m, P = build("periodic-stable")
    evo = cfg.data["evolution"]
    T = evo["period"]
    bound = math.exp(-evo["omega0"] * (1 - evo["amp"]) * T) * 1.01
    worst_ratio, zero = 0.0, 0.0
    for t in (0.0, 0.35):
        for law in (cfg.law(m), Extremal(m, FromInitial(m.U, [1.0, -0.5, 0.25]))):
            res = [periodic_residual(law, t, n, P) for n in range(11)]
            worst_ratio = max(worst_ratio, max(res[n] / res[n - 1] for n in range(1, 11)))
        zero = max(zero, periodic_residual(Extremal(m, Zero(3)), t, 10, P))
    ok = worst_ratio <= bound and zero == 0.0
    record(7, ok, f"max decay ratio {worst_ratio:.4f} <= {bound:.4f}; zero-law residual {zero!r}")
    assert ok


# 8 ----------------------------------------------------------------------------------------


def test_criterion_08_certificates():
    cases = {
        "stable-mixing preset": (preset("stable-mixing").model().symbol, 1.5),
        "alpha=1.2, 2 atoms": (StableMixing(1.2, [0.4, 1.1], [[1.0, 0, 0], [0.6, 0.8, 0.5]]), 1.2),
        "alpha=1.8, 1 atom": (StableMixing(1.8, [2.0], [[0.0, 3.0, -1.0]]), 1.8),
    }
    tail_err = 0.0
    for lam, alpha in cases.values():
        c = FROZEN[f"c_{alpha}"]
        ref = float(np.sum(lam.weights * np.linalg.norm(lam.atoms, axis=1) ** alpha)) / (c * (alpha - 1))
        tail_err = max(tail_err, abs(levy_tail_moment(lam) - ref))
    trace_ok = True
    detail = []
    for dim in (6, 16):
        m = MehlerModel(TruncatedSpace(dim), DiagonalSemigroup.dirichlet_laplacian(dim), ConstantDiag(np.ones(dim)), GaussianForm(np.ones(dim)))
        tr = 2 * float(np.sum(gaussian_covariance(m, NEG_INF, 0.0)))
        partial = sum(1 / (math.pi**2 * i**2) for i in range(1, dim + 1))
        gap = 1 / 6 - tr
        trace_ok &= 0 <= gap <= 1 / (math.pi**2 * dim) and abs(tr - partial) <= 1e-9 * partial
        detail.append(f"dim {dim}: 1/6 - trace = {gap:.4f} <= {1 / (math.pi**2 * dim):.4f}")
    assert preset("gaussian-laplacian").dim == 6
    ok = tail_err <= 1e-6 and trace_ok
    record(8, ok, f"tail moment err {tail_err:.1e} (tol 1e-6); " + "; ".join(detail))
    assert ok


# 9 ----------------------------------------------------------------------------------------


def test_criterion_09_definiteness():
    nd, pd = -math.inf, math.inf
    for name in PRESETS:
        cfg, m, P = build(name)
        nd = max(nd, negative_definite_check(m.symbol))
        for t in (-0.5, 0.0, 1.0):
            pd = min(pd, positive_definite_check(m.cf(NEG_INF, t), P), positive_definite_check(cfg.law(m).cf(t), P))
        pd = min(pd, positive_definite_check(m.cf(-1.0, 0.5), P))
    P3 = ProbeSet.build(TruncatedSpace(3), 9)
    bad_nd = negative_definite_check(CubeNorm(3))
    bad_pd = positive_definite_check(non_pd_cf, P3)
    ok = nd <= 1e-10 and pd >= -1e-9 and bad_nd > 1e-10 and bad_pd < -1e-9
    record(9, ok, f"presets: max ND form {nd:.1e} (<= 1e-10), min Gram eig {pd:.1e} (>= -1e-9); controls: ND {bad_nd:.2f}, Gram {bad_pd:.2f}")
    assert ok


# 10 ---------------------------------------------------------------------------------------


def test_criterion_10_determinism(tmp_path):
    outs = []
    for run in ("a", "b"):
        out = tmp_path / run
        proc = subprocess.run(
            [sys.executable, "-m", "mehlerlab.cli", "verify", "--preset", "periodic-stable", "--out", str(out)],
            capture_output=True, text=True, check=False,
        )
        assert proc.returncode == 0, proc.stderr
        outs.append((out / "report.csv").read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    record(10, ok, f"two verify runs: report.csv identical ({len(outs[0])} bytes)")
    assert ok
