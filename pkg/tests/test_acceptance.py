"""Acceptance criteria, one test each, at the stated sample sizes and tolerances.

Each test appends a PASS/FAIL line that the terminal summary prints at the end.
"""

import math
import os
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from qubitmix import densities as dens
from qubitmix import divergences as dv
from qubitmix import mixing, stats, verification
from qubitmix.bloch import entropy_phi
from qubitmix.ensembles import SeededSampler, sample_hs_state
from qubitmix.mixing import MixCurve

import oracles
from conftest import ACCEPTANCE_LINES

WORKERS = os.cpu_count() or 1
GRID = (0.05, 0.15, 0.25, 0.35, 0.45)


def record(num, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {title} | {detail}")
    assert ok, detail


def _integral_over(f, support):
    total = 0.0
    for lo, hi in support.intervals:
        total += integrate.quad(f, lo, hi, epsabs=1e-12, epsrel=1e-12, limit=200)[0]
    return total


def test_c01_normalisation():
    worst = 0.0
    for mu in GRID:
        for nu in GRID:
            r1, r2 = 1 - 2 * mu, 1 - 2 * nu
            lam, rad = dens.lambda_support(mu, nu), dens.radius_support(r1, r2)
            for f, sup in (
                (lambda x: dens.pdf_lambda_equi(x, mu, nu), lam),
                (lambda x: dens.pdf_lambda_qadd(x, mu, nu), lam),
                (lambda x: dens.pdf_r_equi(x, r1, r2), rad),
                (lambda x: dens.pdf_r_qadd(x, r1, r2), rad),
            ):
                worst = max(worst, abs(_integral_over(f, sup) - 1))
    worst = max(worst, abs(_integral_over(dens.pdf_maxeig_hs, dens.SupportSpec.of((0.5, 1.0))) - 1))
    record(1, "densities integrate to 1", worst <= 1e-8, f"max |integral - 1| = {worst:.2e} (tol 1e-8)")


KS_CASES = {
    "lambda-equi": [{"mu": 1 / 3, "nu": 1 / 6}, {"mu": 1 / 6, "nu": 1 / 6}, {"mu": 0.1, "nu": 0.4}],
    "lambda-qadd": [{"mu": 1 / 3, "nu": 1 / 6}, {"mu": 1 / 6, "nu": 1 / 6}, {"mu": 0.1, "nu": 0.4}],
    "r-equi": [{"r1": 1 / 3, "r2": 2 / 3}, {"r1": 2 / 3, "r2": 1 / 3}, {"r1": 1.0, "r2": 0.3}],
    "r-qadd": [{"r1": 1 / 3, "r2": 2 / 3}, {"r1": 0.5, "r2": 0.9}, {"r1": 1.0, "r2": 0.3}],
    "maxeig": [{}, {}, {}],
    "angle": [{}, {}, {}],
}


@pytest.mark.slow
def test_c02_mc_vs_formula():
    n = 1_000_000
    worst, where = 0.0, ""
    for k, (kind, settings) in enumerate(KS_CASES.items()):
        for j, params in enumerate(settings):
            rep = verification.verify_density(kind, params, n, SeededSampler(1000 + 10 * k + j))
            if rep.ks > worst:
                worst, where = rep.ks, f"{kind} {params}"
    record(2, "KS < 0.002 at N=1e6, 6 densities x 3 settings", worst < 0.002,
           f"max KS = {worst:.5f} ({where})")


@pytest.mark.slow
def test_c03_entropy_equi():
    q = stats.avg_entropy_equi_hs()
    mc = stats.mc_avg_entropy_equi_hs(10_000_000, SeededSampler(3), WORKERS)
    ok = abs(q - 0.7631) <= 5e-4 and mc.agrees_with(q, 3.0)
    record(3, "average entropy, equal-weight mixture", ok,
           f"quadrature {q:.7f} vs 0.7631 +- 5e-4; MC {mc.value:.6f} +- {mc.std_error:.1e}")


@pytest.mark.slow
def test_c04_entropy_qadd():
    q = stats.avg_entropy_qadd_hs()
    mc = stats.mc_avg_entropy_qadd_hs(10_000_000, SeededSampler(4), WORKERS)
    near = abs(q - 0.7152) <= 5e-4
    agree = mc.agrees_with(q, 3.0)
    record(4, "average entropy, quantum addition", near and agree,
           f"quadrature {q:.7f} vs 0.7152 +- 5e-4 (off by {q - 0.7152:+.2e}); "
           f"MC {mc.value:.6f} +- {mc.std_error:.1e} agrees with quadrature: {agree}")


@pytest.mark.slow
def test_c05_fidelity():
    exact = stats.avg_fidelity_squared_exact()
    formula = 0.5 * (1 + (3 * math.pi / 16) ** 2)
    mc = stats.mc_avg_fidelity_squared(10_000_000, SeededSampler(5), WORKERS)
    quad = stats.avg_fidelity_squared_quadrature()
    ok = exact == formula and mc.agrees_with(exact, 3.0) and abs(quad - exact) <= 1e-6
    record(5, "average squared fidelity", ok,
           f"exact {exact:.10f}; MC {mc.value:.6f} +- {mc.std_error:.1e}; quadrature diff {quad - exact:+.1e}")


def test_c06_known_triple():
    d, _ = dv.triangle_delta([0.594637, -0.562167, -0.402354], [0.246183, -0.755573, 0.593725],
                             [0.190508, -0.0792096, -0.855743])
    record(6, "known counterexample triple", abs(d + 0.0820814) <= 1e-6, f"Delta = {d:.8f} vs -0.0820814")


def test_c07_violations_exist():
    counts = {}
    for mode in dv.MODES:
        reps = dv.violation_search(mode, 10_000, SeededSampler(7))
        counts[mode] = (sum(r.violates_delta for r in reps), sum(r.violates_delta_prime for r in reps))
    ok = all(a >= 1 and b >= 1 for a, b in counts.values())
    record(7, "violations found in 1e4 draws", ok,
           "; ".join(f"{m}: Delta<0 x{a}, Delta'<0 x{b}" for m, (a, b) in counts.items()))


def test_c08_oracle_equivalence():
    n = 100_000
    s = SeededSampler(8)
    a, b, t = sample_hs_state(s, n), sample_hs_state(s, n), s.uniform(n)
    worst = 0.0
    for u, v, w in zip(a, b, t):
        fwd, back = oracles.matrix_quantum_add(u, v, w)
        worst = max(worst, np.max(np.abs(mixing.quantum_add_bloch(u, v, w) - fwd)),
                    np.max(np.abs(mixing.quantum_add_bloch(v, u, w) - back)))
    worst_ch = 0.0
    for u, v, w in zip(a[:2000], b[:2000], t[:2000]):
        ra, rb = oracles.rho(u), oracles.rho(v)
        worst_ch = max(worst_ch, np.max(np.abs(mixing.channel_Et(ra, rb, w) - mixing.addition_commutator_form(ra, rb, w))))
    ok = worst <= 1e-12 and worst_ch <= 1e-12
    record(8, "Bloch path vs 4x4 matrix path", ok,
           f"max component diff {worst:.1e} over 1e5 (a,b,t); channel vs commutator form {worst_ch:.1e}")


def test_c09_g2_maximum():
    s = SeededSampler(9)
    n = 1000
    r1, r2, th = s.uniform(n), s.uniform(n), math.pi * s.uniform(n)
    t = np.linspace(0, 1, 101)
    worst_arg, worst_d2 = 0.0, -np.inf
    for a, b, c in zip(r1, r2, th):
        vals = np.asarray(MixCurve(a, b, c).s(t))
        worst_arg = max(worst_arg, abs(t[np.argmax(vals)] - 0.5))
        worst_d2 = max(worst_d2, np.max(vals[2:] - 2 * vals[1:-1] + vals[:-2]))
    ok = worst_arg <= 0.01 + 1e-12 and worst_d2 <= 1e-8
    record(9, "s(t) peaks at 1/2 and is concave", ok,
           f"max |argmax - 1/2| = {worst_arg:.3f}; max second difference {worst_d2:.2e}")


def test_c10_entropy_chain():
    n = 100_000
    s = SeededSampler(10)
    a, b = sample_hs_state(s, n), sample_hs_state(s, n)
    ra, rb = np.linalg.norm(a, axis=1), np.linalg.norm(b, axis=1)
    slack_lo = slack_hi = np.inf
    for w in np.linspace(0, 1, 21):
        lower = w * entropy_phi(ra) + (1 - w) * entropy_phi(rb)
        mid = entropy_phi(np.minimum(np.linalg.norm(mixing.quantum_add_bloch(a, b, w), axis=1), 1))
        upper = entropy_phi(np.linalg.norm(mixing.mix_weighted(a, b, w), axis=1))
        slack_lo = min(slack_lo, float(np.min(mid - lower)))
        slack_hi = min(slack_hi, float(np.min(upper - mid)))
    ok = slack_lo >= -1e-12 and slack_hi >= -1e-12
    record(10, "weighted entropy <= Phi(rhat) <= Phi(r)", ok,
           f"min slacks {slack_lo:.2e}, {slack_hi:.2e} on 1e5 pairs x 21 weights")


@pytest.mark.slow
def test_c11_monotone_chain():
    est = [stats.mc_avg_entropy_mean_n(n, 1_000_000, SeededSampler(1100 + n), WORKERS) for n in range(1, 6)]
    mono = all(est[i + 1].value >= est[i].value - 3 * math.hypot(est[i].std_error, est[i + 1].std_error)
               for i in range(4))
    ref = stats.avg_entropy_equi_hs()
    n2 = est[1].agrees_with(ref, 3.0)
    bounded = all(1 / 3 < e.value < 1 for e in est)
    record(11, "mean entropy of n-fold mixtures rises", mono and n2 and bounded,
           "values " + ", ".join(f"{e.value:.4f}" for e in est) + f"; n=2 vs quadrature {ref:.4f}: {n2}")


@pytest.mark.slow
def test_c12_coherence_trend():
    est = [stats.mc_avg_coherence_n(n, 1_000_000, SeededSampler(1200 + n), WORKERS) for n in range(2, 6)]
    c2, c3 = est[0], est[1]
    sep = (c2.value - c3.value) / math.hypot(c2.std_error, c3.std_error)
    decreasing = all(est[i + 1].value < est[i].value for i in range(3))
    record(12, "mean coherence of n-fold mixtures falls", sep >= 3 and decreasing,
           "n=2..5: " + ", ".join(f"{e.value:.4f}" for e in est) + f"; C2-C3 separation {sep:.0f} sigma")


def test_c13_page():
    val = stats.page_entropy_exact(2, 2)
    record(13, "Page's formula at m=n=2", val == Fraction(1, 3) and stats.page_entropy(2, 2) == 1 / 3,
           f"exact value {val}")
