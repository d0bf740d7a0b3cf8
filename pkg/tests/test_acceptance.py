"""The fourteen acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its measured wall time
and the runtime bound, then asserts both the numerical checks and the bound.
"""
import math
import time

import numpy as np
import pytest

from gaussfock.experiments import ladder_identity_failures, run_experiment

# (criterion, title, experiments, runtime bound in seconds)
CRITERIA = [
    (1, "isometry: exact per-alpha seminorm equality", ["isometry"], 5),
    (2, "ladder algebra holds exactly on |b| <= 6, n <= 2", [], 1),
    (3, "Bessel diagonality, semigroup and Hoelder log-convexity", ["bessel-diag"], 1),
    (4, "B = G M C_{1/2} on the h~ family within 1e-7", ["prop22"], 10),
    (5, "G h_b = e_b within 1e-8 and G^{-1} G round trip within 1e-7", ["prop22"], 10),
    (6, "weighted-norm ratios inside the basis bracket (1% slack)", ["thm23-ratio"], 5),
    (7, "W^{2,s} / L^{2,s} ratio extremes drift < 5% from degree 4 to 8", ["thm31-ratio"], 5),
    (8, "exact reconstruction sum d^alpha g_alpha = g", ["lemma44"], 5),
    (9, "log-log growth slope of W_b e_0 <= 2m + 0.2", ["weyl-growth"], 10),
    (10, "G^{-1} W_{t/2} G = M tau_t within 1e-6", ["translation-identity"], 10),
    (11, "kappa = (2/pi)^{n/2}; S_phi with e^{-ia.x} equals W_a", ["sphi-calibrate", "sphi-weyl"], 30),
    (12, "direct and factored S_phi matrices agree within 1e-5", ["sphi-routes"], 60),
    (13, "commutation and invertibility residuals decay in N", ["sphi-commute", "sphi-invert"], 60),
    (14, "bump ratios grow >= 1.5x per doubling; B^{-1} ratios bounded", ["bargmann-nonimage"], 60),
]


def _metric(report, name):
    return next(m for m in report.metrics if m.name == name)


def _extra_checks(number, reports):
    """Criterion-specific facts beyond 'every metric passed'."""
    if number == 1:
        assert _metric(reports[0], "exact_seminorm_mismatches").value == 0
        assert reports[0].params["trials"] == 100
    elif number == 4:
        assert _metric(reports[0], "prop22_max_deviation").value <= 1e-7
    elif number == 5:
        assert _metric(reports[0], "G_h_beta_equals_e_beta").value <= 1e-8
        assert _metric(reports[0], "G_inverse_G_round_trip").value <= 1e-7
    elif number == 6:
        assert reports[0].params["trials"] >= 200
    elif number == 7:
        assert all(m.value < 0.05 for m in reports[0].metrics if m.name.endswith("drift"))
    elif number == 8:
        assert _metric(reports[0], "reconstruction_failures").value == 0
        assert reports[0].params["trials"] == 50
    elif number == 9:
        slopes = [m for m in reports[0].metrics if m.name.endswith("loglog_slope")]
        assert len(slopes) == 4
        for m in slopes:
            order = int(m.name.split("_m")[1][0])
            assert m.value <= 2 * order + 0.2
        tails = [v for k, v in reports[0].residuals.items() if "tail" in k]
        assert tails and max(tails) <= 1e-8
    elif number == 10:
        devs = [m.value for m in reports[0].metrics if m.name.endswith("max_deviation")]
        assert len(devs) == 2 and max(devs) <= 1e-6
    elif number == 11:
        cal = reports[0].params
        assert abs(cal["kappa_n1"] - math.sqrt(2 / math.pi)) <= 1e-6
        assert abs(cal["kappa_n2"] - 2 / math.pi) <= 1e-6
        assert all(m.value <= 1e-6 for m in reports[1].metrics if "deviation" in m.name)
    elif number == 12:
        assert all(m.value <= 1e-5 for m in reports[0].metrics)
        assert len(reports[0].metrics) == 4
    elif number == 13:
        decays = [m for r in reports for m in r.metrics if m.name.startswith("monotone_decay")]
        assert len(decays) == 6 and all(m.passed for m in decays)
    elif number == 14:
        growth = [m.value for m in reports[0].metrics if m.name.startswith("growth_per_doubling")]
        assert len(growth) == 2 and min(growth) >= 1.5


@pytest.mark.parametrize("number,title,experiments,bound", CRITERIA,
                         ids=[f"criterion-{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, experiments, bound, capsys):
    start = time.perf_counter()
    failure = None
    try:
        if number == 2:
            fails = ladder_identity_failures(6, (1, 2))
            assert fails and all(v == 0 for v in fails.values()), fails
        else:
            reports = [run_experiment(name)[0] for name in experiments]
            for r in reports:
                bad = [m.name for m in r.metrics if not m.passed]
                assert r.passed, f"{r.experiment}: failed {bad} {r.error or ''}"
            _extra_checks(number, reports)
    except AssertionError as exc:
        failure = exc
    elapsed = time.perf_counter() - start
    ok = failure is None and elapsed < bound
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} "
              f"[{elapsed:.2f}s < {bound}s]")
    if failure is not None:
        raise failure
    assert elapsed < bound, f"criterion {number} took {elapsed:.2f}s (bound {bound}s)"
