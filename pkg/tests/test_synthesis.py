import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ftsat.errors import InfeasibleError, NumericError, ParameterError
from ftsat.synthesis import (GRIDSYNTH, MIXED_FALLBACK, SCHEMES, budget_sweep, circuit_infidelity,
                             ent_infidelity, get_scheme, optimal_delta, required_t_infidelity,
                             synthesis_point, t_count, t_count_rounded)


def golden_section(f, a, b, tol=1e-10):
    """Minimize a unimodal f on [a, b] (here in log-delta)."""
    phi = (math.sqrt(5) - 1) / 2
    c, d = b - phi * (b - a), a + phi * (b - a)
    while b - a > tol:
        if f(c) < f(d):
            b, d = d, c
            c = b - phi * (b - a)
        else:
            a, c = c, d
            d = a + phi * (b - a)
    return 0.5 * (a + b)


def naive_infidelity(eps, delta, scheme):
    n_t = scheme.b * math.log2(1 / delta) + scheme.c
    return 1 - 0.25 * (1 + 3 * (1 - eps) ** n_t) * (1 - delta**2)


def test_t_count_examples():
    assert t_count(2**-10, GRIDSYNTH) == pytest.approx(39.19)
    assert t_count(1.41e-7, MIXED_FALLBACK) == pytest.approx(21.80, abs=0.02)
    assert t_count_rounded(1.41e-7) == 23
    assert t_count_rounded(1.76e-9) == 27
    for bad in (0.0, 1.0, -1e-3):
        with pytest.raises(ParameterError):
            t_count(bad)


def test_infidelity_examples():
    assert ent_infidelity(0.0, 1e-12) == pytest.approx(0.0, abs=1e-20)
    assert ent_infidelity(0.0, 0.1) == pytest.approx(0.01)
    with pytest.raises(ParameterError):
        ent_infidelity(1.0, 0.1)


@given(st.floats(1e-12, 1e-3), st.floats(1e-6, 0.5))
def test_infidelity_matches_definition(eps, delta):
    for scheme in SCHEMES.values():
        assert ent_infidelity(eps, delta, scheme) == pytest.approx(naive_infidelity(eps, delta, scheme), rel=1e-6)


def test_minimizer_matches_golden_section():
    eps = 1e-8
    log_d = golden_section(lambda x: ent_infidelity(eps, math.exp(x)), math.log(1e-10), math.log(0.4))
    assert optimal_delta(eps) == pytest.approx(math.exp(log_d), rel=0.01)


def test_approx_examples():
    assert optimal_delta(6.48e-14, mode="approx") == pytest.approx(1.414e-7, rel=2e-3)
    assert optimal_delta(1.44e-14, mode="approx") == pytest.approx(6.66e-8, rel=2e-3)
    assert optimal_delta(6.48e-14) == pytest.approx(1.41e-7, rel=0.02)


@pytest.mark.parametrize("scheme", [MIXED_FALLBACK, GRIDSYNTH])
def test_exact_vs_approx(scheme):
    for eps in np.logspace(-16, -6, 21):
        assert optimal_delta(eps, scheme, "approx") == pytest.approx(optimal_delta(eps, scheme), rel=0.10)


@given(st.floats(1e-18, 5e-3))
def test_optimum_is_interior_minimum(eps):
    d = optimal_delta(eps)
    here = ent_infidelity(eps, d)
    assert here <= ent_infidelity(eps, min(2 * d, 0.99))
    assert here <= ent_infidelity(eps, d / 2)


def test_small_eps_limit():
    ds = [optimal_delta(e) for e in (1e-6, 1e-10, 1e-14, 1e-18)]
    assert all(a > b for a, b in zip(ds, ds[1:]))
    assert ent_infidelity(1e-18, ds[-1]) < 1e-16


def test_delta_errors():
    with pytest.raises(ParameterError):
        optimal_delta(0.0)
    with pytest.raises(ParameterError):
        optimal_delta(1e-8, mode="newton")


def test_bracket_failure_reports_bracket(monkeypatch):
    import ftsat.synthesis as syn

    monkeypatch.setattr(syn, "_stationarity", lambda d, e, s: 1.0)
    with pytest.raises(NumericError) as info:
        syn.optimal_delta(1e-8)
    assert info.value.bracket is not None


def test_single_gate_budget():
    eps = required_t_infidelity(1, 1e-4)
    assert ent_infidelity(eps, optimal_delta(eps)) == pytest.approx(1e-4, rel=1e-6)


@pytest.mark.parametrize("G", [1e3, 1e8, 1e12])
def test_budget_is_nearly_spent(G):
    eps = required_t_infidelity(G, 0.01)
    per_gate = ent_infidelity(eps, optimal_delta(eps))
    assert 0.9 * 0.01 <= circuit_infidelity(G, per_gate) <= 0.01
    # First-order budget: G * I_gate sits at -ln(1 - I_target), just above I_target.
    assert 0.9 * 0.01 <= G * per_gate <= -math.log1p(-0.01) * (1 + 1e-6)


@pytest.mark.parametrize("scheme", [MIXED_FALLBACK, GRIDSYNTH])
def test_budget_monotone(scheme):
    Gs = np.logspace(3, 12, 10)
    eps = [required_t_infidelity(G, 0.01, scheme) for G in Gs]
    assert all(a > b for a, b in zip(eps, eps[1:]))
    assert required_t_infidelity(1e6, 0.001, scheme) <= required_t_infidelity(1e6, 0.01, scheme)


def test_infeasible():
    with pytest.raises(InfeasibleError):
        required_t_infidelity(1e40, 1e-6)


def test_circuit_infidelity_stable():
    assert circuit_infidelity(1e15, 1e-20) == pytest.approx(-math.expm1(-1e-5), rel=1e-9)


def test_synthesis_point_and_sweep():
    pt = synthesis_point(6.48e-14)
    assert pt.N_T == 23 and pt.n_P == 25
    rows = budget_sweep([1e4, 1e8], scheme=GRIDSYNTH)
    assert [r["scheme"] for r in rows] == ["gridsynth"] * 2
    assert rows[0]["eps_T"] > rows[1]["eps_T"]


def test_get_scheme():
    assert get_scheme("gridsynth") is GRIDSYNTH
    assert get_scheme(MIXED_FALLBACK) is MIXED_FALLBACK
    with pytest.raises(ParameterError):
        get_scheme("nope")
