from itertools import combinations

import numpy as np
import pytest

from qssrec.gf import GF
from qssrec.oracle import (
    EnumerationBudgetError,
    audit_dimensions,
    brute_force_erasure_check,
    forbidden_check_by_state,
    full_access_structure,
    probe_secrets,
    subsets_by_mask,
)
from qssrec.qstate import partial_trace, QuditState
from qssrec.symplectic import SharePartition, StabilizerCode, random_stabilizer_code

from conftest import identity_code, sample_codes


@pytest.mark.parametrize("Jbar", [(), (1,), (3,), (1, 2), (2, 5), (4, 5)])
def test_two_erasures_correctable(five_qubit, Jbar):
    assert brute_force_erasure_check(five_qubit, Jbar)


@pytest.mark.parametrize("Jbar", [(1, 2, 3), (2, 4, 5), (1, 2, 3, 4, 5)])
def test_three_erasures_not_correctable(five_qubit, Jbar):
    assert not brute_force_erasure_check(five_qubit, Jbar)


def test_budget_enforced():
    code = identity_code(3, 8)
    with pytest.raises(EnumerationBudgetError):
        brute_force_erasure_check(code, range(1, 9))


def test_subsets_by_mask_order():
    assert subsets_by_mask(2) == [(), (1,), (2,), (1, 2)]
    assert len(subsets_by_mask(5)) == 32


def test_probe_secrets_informationally_complete():
    for q, k in [(2, 1), (3, 1), (2, 2)]:
        d = q**k
        probes = probe_secrets(q, k)
        ops = np.array([np.outer(p, p.conj()).reshape(-1) for p in probes])
        assert np.linalg.matrix_rank(ops) == d * d
        assert all(abs(np.linalg.norm(p) - 1) < 1e-15 for p in probes)


@pytest.mark.parametrize("holders", [(), (1,), (2,), (1, 2), (3, 5)])
def test_small_sets_learn_nothing(five_qubit, five_qubit_words, holders):
    assert forbidden_check_by_state(five_qubit, holders, five_qubit_words)


@pytest.mark.parametrize("holders", [(1, 2, 3), (2, 4, 5), (1, 2, 3, 4)])
def test_large_sets_learn_something(five_qubit, five_qubit_words, holders):
    assert not forbidden_check_by_state(five_qubit, holders, five_qubit_words)


def test_forbidden_witness_differs(five_qubit, five_qubit_words):
    W = np.column_stack([w.amps for w in five_qubit_words])
    rho0 = partial_trace(QuditState(2, 5, W[:, 0]), (3, 4, 5)).entries
    rho1 = partial_trace(QuditState(2, 5, W[:, 1]), (3, 4, 5)).entries
    assert np.max(np.abs(rho0 - rho1)) > 0.1


def test_five_qubit_access_structure_is_threshold(five_qubit, five_qubit_words):
    report = full_access_structure(five_qubit, five_qubit_words)
    assert report.consistent
    assert set(report.qualified_sets()) == {J for J in subsets_by_mask(5) if len(J) >= 3}
    assert set(report.forbidden_sets()) == {J for J in subsets_by_mask(5) if len(J) <= 2}
    assert report.intermediate_sets() == []
    assert len(report.lines()) == 32
    assert report.lines()[0] == "J={} eq3=F brute=F state=ok"
    assert report.as_dict()["consistent"] is True


def test_single_qudit_identity_code():
    report = full_access_structure(identity_code(2, 1))
    assert report.consistent
    assert report.qualified_sets() == [(1,)]
    assert report.forbidden_sets() == [()]


def test_intermediate_sets_exist():
    # each share carries its own secret qubit: {1} holds half the secret
    report = full_access_structure(identity_code(2, 2))
    assert report.consistent
    assert report.intermediate_sets() == [(1,), (2,)]
    assert all(v.state == "ok" for v in report.subsets)


def test_random_code_with_intermediate_sets():
    rng = np.random.default_rng(3)
    found = 0
    for _ in range(30):
        code = random_stabilizer_code(GF(3), 4, 2, rng)
        report = full_access_structure(code)
        assert report.consistent
        found += len(report.intermediate_sets())
    assert found > 0


def test_state_check_can_be_disabled(five_qubit):
    report = full_access_structure(five_qubit, state_check=False)
    assert all(v.state == "-" for v in report.subsets)
    assert report.consistent


@pytest.mark.parametrize("code", sample_codes(qs=(2, 3), max_n=4, seed=2), ids=repr)
def test_oracles_agree_on_random_codes(code):
    assert full_access_structure(code).consistent


def test_non_prime_field_skips_state_check():
    F4 = GF(4)
    code = StabilizerCode.from_generators(F4, 2, [[1, 0, 1, 0]], k=1)
    report = full_access_structure(code)
    assert all(v.state == "-" for v in report.subsets)
    assert report.consistent


def test_audit_example(five_qubit):
    audit = audit_dimensions(five_qubit, SharePartition(5, (3, 4, 5)))
    assert audit.ok and audit.qualified and audit.ell == 2
    assert audit.dims["dim C∩F^J"] == 0
    assert audit.dims["dim P_Jbar(C)"] == 4
    assert any("ell" in line for line in audit.lines())


def test_audit_unqualified_skips_bounds(five_qubit):
    audit = audit_dimensions(five_qubit, SharePartition(5, (1, 2)))
    assert audit.ok and not audit.qualified
    assert "0 <= ell <= |Jbar|" not in audit.checks


@pytest.mark.parametrize("code", sample_codes(qs=(2, 3, 5), max_n=4, seed=9), ids=repr)
def test_audit_identities_on_random_codes(code):
    for J in subsets_by_mask(code.n):
        assert audit_dimensions(code, SharePartition(code.n, J)).ok
