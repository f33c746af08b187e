import math

import pytest

from wbinom import checks
from wbinom.checks import REGISTRY, Sizes, run_identity, set_partition_counts, signed_cycle_counts

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


def test_set_partitions_brute_force():
    assert set_partition_counts(4)[2] == 7
    for n, bell in enumerate(BELL):
        assert sum(set_partition_counts(n)) == bell


def test_cycle_counts_brute_force():
    for n in range(7):
        counts = signed_cycle_counts(n)
        assert sum(abs(c) for c in counts) == math.factorial(n)
        # sum_k s(n,k) = 0 for n >= 2 (falling factorial at x = 1)
        assert sum(counts) == (1 if n < 2 else 0)


def test_every_criterion_has_an_identity():
    assert {i.criterion for i in REGISTRY.values()} == set(range(1, 13))


def test_names_sorted_and_unique():
    names = checks.identity_names()
    assert names == sorted(set(names))


def test_exact_result_shape():
    r = run_identity("schur-h", Sizes(n=4, m=4, k=2))
    assert r.to_json() == {"identity": "schur-h", "params": {"n_max": 6, "m_max": 6, "n": 4, "m": 4, "k": 2,
                                                             "tol": "exact"},
                           "trials": 1, "max_residual": "exact-zero", "pass": True, "millis": 0}


def test_randomized_is_seeded():
    a = run_identity("v109", Sizes(n=4), trials=5, seed=1)
    b = run_identity("v109", Sizes(n=4), trials=5, seed=1)
    c = run_identity("v109", Sizes(n=4), trials=5, seed=2)
    assert a.to_json() == b.to_json()
    assert a.max_residual != c.max_residual


def test_v109_n0_is_exact():
    r = run_identity("v109", Sizes(n=0), trials=1)
    assert r.max_residual == 0 and r.passed


def test_tolerance_failure_reported():
    r = run_identity("theta-inversion", trials=20, tol=1e-30)
    assert not r.passed
    assert r.max_residual > 0


def test_no_admissible_case():
    with pytest.raises(ValueError):
        run_identity("h2", Sizes(n=0, m=2))


def test_timings_flag():
    assert run_identity("theta-p0", trials=3).millis == 0
    assert run_identity("theta-p0", trials=3, timings=True).millis >= 0


def test_exact_failure_is_detected(monkeypatch):
    from wbinom.coeffs import w
    ident = REGISTRY["commute-yx"]
    broken = checks.Identity(ident.name, ident.criterion, ident.summary, ident.cases, lambda case: w(1, 1))
    monkeypatch.setitem(REGISTRY, "commute-yx", broken)
    r = run_identity("commute-yx", Sizes(k=1, l=1))
    assert r.max_residual == 1.0 and not r.passed
