import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftsat.errors import AuditError, CapacityError, ParameterError
from ftsat.gadgets import ccz_count
from ftsat.sat import SatInstance, brute_force_solutions, generate_instance
from ftsat.sim.constructions import oracle_tiny, phaser_tiny, tacu_semantic, zero_oracle
from ftsat.sim.simulator import run_unitary, simulate
from ftsat.sim.verify import (and_tree_width, check_z_equivalence, counted_ccz, multi_phase_diagonal,
                              oracle_diagonal, phaser_diagonal, resource_audit, zero_diagonal)


def test_k1_is_plain_phase():
    gamma = 0.77
    rep = check_z_equivalence(tacu_semantic(1, gamma), np.diag([1, np.exp(1j * gamma)]))
    assert rep.passed


def test_k2_pi_is_cz():
    rep = check_z_equivalence(tacu_semantic(2, math.pi), np.diag([1, 1, 1, -1]), "CZ")
    assert rep.passed and rep.branches_checked > 1


@pytest.mark.parametrize("mode", ["inject", "inline"])
@pytest.mark.parametrize("K", [1, 2, 3])
def test_tacu_random_gamma(K, mode):
    for gamma in np.random.default_rng(K).uniform(-math.pi, math.pi, 5):
        rep = check_z_equivalence(tacu_semantic(K, gamma, mode), multi_phase_diagonal(K, gamma))
        assert rep.passed, rep.to_dict()


def test_k3_enumerates_all_branches():
    rep = check_z_equivalence(tacu_semantic(3, 0.4), multi_phase_diagonal(3, 0.4))
    assert rep.passed and rep.branches_checked == 2 ** (3 * 2 + 3)
    assert rep.inputs_checked == 8 + 20


def test_k4_inline():
    rep = check_z_equivalence(tacu_semantic(4, 1.3, "inline"), multi_phase_diagonal(4, 1.3))
    assert rep.passed


def test_negative_control():
    rep = check_z_equivalence(tacu_semantic(2, 1.1, omit_correction=True), multi_phase_diagonal(2, 1.1))
    assert not rep.passed
    assert rep.witness is not None and any(rep.witness.values())


def test_tacu_rejects_k0():
    with pytest.raises(ParameterError):
        tacu_semantic(0, 0.1)


def test_audit_examples():
    assert resource_audit(tacu_semantic(8, 0.2)).ccz_states == 7
    assert resource_audit(tacu_semantic(1, 0.2)).ccz_states == 0


def test_ccz_audit_matches_floor_sum():
    mismatched = {}
    for K in range(1, 17):
        counted = counted_ccz(tacu_semantic(K, 0.3))
        if counted != ccz_count(K):
            mismatched[K] = (counted, ccz_count(K))
    assert not mismatched, f"(counted, floor-sum) per K: {mismatched}"


@pytest.mark.parametrize("K", [1, 2, 4, 8, 16])
def test_audit_passes_at_powers_of_two(K):
    cost = resource_audit(tacu_semantic(K, 0.3))
    assert cost.ccz_states == K - 1 and cost.data_touch_cycles == 1


@pytest.mark.parametrize("K", range(1, 17))
def test_tree_injects_one_ccz_per_and(K):
    circ = tacu_semantic(K, 0.3)
    assert counted_ccz(circ) == circ.meta["ccz_injections"] == and_tree_width(circ) == K - 1


def test_audit_names_field():
    with pytest.raises(AuditError) as info:
        resource_audit(tacu_semantic(3, 0.3))
    assert info.value.field == "ccz_states"
    with pytest.raises(ParameterError):
        resource_audit(zero_oracle(2))


def test_one_clause_phaser():
    # (x1 or x2): e^{-i gamma} everywhere except 00
    inst = SatInstance(n=2, k=2, clauses=(((0, False), (1, False)),))
    gamma = 0.9
    rep = check_z_equivalence(phaser_tiny(inst, gamma), phaser_diagonal(inst, gamma))
    assert rep.passed
    np.testing.assert_allclose(phaser_diagonal(inst, gamma), np.exp(-1j * gamma * np.array([0, 1, 1, 1])))


def tiny_instances():
    return st.tuples(st.integers(2, 6), st.integers(1, 3), st.integers(1, 4), st.integers(0, 10**6)).map(
        lambda t: generate_instance(t[0], min(t[1], t[0]), t[2] / t[0], seed=t[3]))


@settings(max_examples=8)
@given(tiny_instances(), st.floats(-math.pi, math.pi))
def test_phaser_random(inst, gamma):
    rep = check_z_equivalence(phaser_tiny(inst, gamma), phaser_diagonal(inst, gamma), policy="sampled",
                              shots=1, probe="vectors", n_random=4)
    assert rep.passed, rep.to_dict()


@settings(max_examples=8)
@given(tiny_instances())
def test_oracle_random(inst):
    rep = check_z_equivalence(oracle_tiny(inst), oracle_diagonal(inst), policy="sampled", shots=1,
                              probe="vectors", n_random=4)
    assert rep.passed, rep.to_dict()
    flipped = {x for x, s in enumerate(oracle_diagonal(inst)) if s.real < 0}
    sols = {sum(b << i for i, b in enumerate(a)) for a in brute_force_solutions(inst)}
    assert flipped == sols


def test_phaser_order_invariant():
    inst = generate_instance(4, 2, 0.75, seed=4)
    diag = phaser_diagonal(inst, 0.6)
    for order in ([0, 1, 2], [2, 1, 0], [1, 0, 2]):
        assert check_z_equivalence(phaser_tiny(inst, 0.6, order=order), diag, policy="sampled", shots=4).passed


def test_contradiction_oracle_is_identity():
    inst = SatInstance(n=1, k=1, clauses=(((0, False),), ((0, True),)))
    rep = check_z_equivalence(oracle_tiny(inst), np.ones(2), "identity", probe="vectors")
    assert rep.passed


def test_zero_oracle():
    np.testing.assert_array_equal(zero_diagonal(3), [-1, 1, 1, 1, 1, 1, 1, 1])
    assert check_z_equivalence(zero_oracle(3), zero_diagonal(3)).passed
    with pytest.raises(ParameterError):
        zero_oracle(0)


def test_capacity_guard_on_tiny_builders():
    inst = generate_instance(9, 3, 1.0, seed=0)
    with pytest.raises(CapacityError):
        phaser_tiny(inst, 0.1)
    with pytest.raises(CapacityError):
        oracle_tiny(inst)


def test_probe_modes_agree():
    circ = tacu_semantic(2, 0.5)
    target = multi_phase_diagonal(2, 0.5)
    assert check_z_equivalence(circ, target).passed
    assert check_z_equivalence(circ, target, probe="vectors").passed
    with pytest.raises(ParameterError):
        check_z_equivalence(circ, target, probe="stabilizer")


def test_circuit_dump_round_trips_counts():
    import json

    circ = tacu_semantic(4, 0.1)
    dump = json.loads(circ.to_json())
    assert sum(1 for op in dump["ops"] if op["kind"] == "alloc" and op["name"] == "ccz") == 3
    assert dump["meta"]["K"] == 4
