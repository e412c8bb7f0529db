import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ftsat.architecture import ArchParams, apply_scenario, backsolved_footprint, code_distance, machine_size
from ftsat.errors import ParameterError

ARCH = ArchParams()


def test_distance_examples():
    assert code_distance(8.4e11, 0.01, ARCH) == 28
    assert code_distance(4 * 419e12, 0.01, ARCH) == 35
    better = ArchParams(p_phys=1e-4)
    for G in (1e6, 8.4e11, 1e15):
        assert code_distance(G, 0.01, better) == max(3, math.ceil(code_distance(G, 0.01, ARCH) / 2))


@given(st.floats(1, 1e20), st.floats(1, 1e20), st.floats(1e-6, 0.5))
def test_distance_monotone(g1, g2, I):
    lo, hi = sorted((g1, g2))
    assert code_distance(lo, I, ARCH) <= code_distance(hi, I, ARCH)
    assert code_distance(hi, I, ARCH) >= code_distance(hi, min(0.9, 2 * I), ARCH)


def test_distance_errors():
    with pytest.raises(ParameterError):
        code_distance(0.5, 0.01, ARCH)
    with pytest.raises(ParameterError):
        ArchParams(p_phys=0.02)


def test_machine_rows():
    quartic = machine_size(179, 28080, 540, 28, ARCH)
    assert quartic.n_decoders == 33659
    assert quartic.physical_qubits / 1e6 == pytest.approx(73.91, rel=0.01)
    cubic = machine_size(191, 30784, 592, 29, ARCH)
    assert cubic.n_decoders == 36895
    assert cubic.physical_qubits / 1e6 == pytest.approx(84.43, rel=0.01)
    empty = machine_size(10, 20, 0, 5, ARCH)
    assert empty.physical_qubits == 2 * 25 * 30 and empty.n_decoders == 30


@given(st.integers(1, 500), st.integers(0, 50_000), st.integers(0, 2000), st.integers(3, 60))
def test_qubits_monotone(n, anc, jobs, d):
    base = machine_size(n, anc, jobs, d, ARCH).physical_qubits
    assert machine_size(n, anc, jobs, d + 1, ARCH).physical_qubits > base
    assert machine_size(n, anc + 1, jobs, d, ARCH).physical_qubits > base
    assert machine_size(n, anc, jobs + 1, d, ARCH).physical_qubits > base


def test_scenarios():
    assert apply_scenario(ARCH, "none") == ARCH
    comb = apply_scenario(ARCH, "combined")
    assert comb.factory_footprint == pytest.approx(8400)
    assert comb.cycle_us == pytest.approx(0.2)
    assert comb.p_phys == 1e-4
    assert apply_scenario(ARCH, {"factories5", "cycle5", "perr1e4"}) == comb
    with pytest.raises(ParameterError):
        apply_scenario(ARCH, "faster")


def test_backsolved_footprint_closure():
    rows = [(152.43e6, 35, 242 + 43680, 840), (84.43e6, 29, 191 + 30784, 592), (73.91e6, 28, 179 + 28080, 540)]
    for physical, d, logical, jobs in rows:
        assert 41_000 <= backsolved_footprint(physical, d, logical, jobs) <= 42_300
