"""Test suite for ancilla-assisted protocols and gate injection"""
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import numpy as np
import pytest

from backend.majorana.braid_circuit import BraidCircuit, compile_signed_permutation, run_circuit
from backend.majorana.stabilizer_tableau import StabilizerTableau
from backend.oracle.dense_state import DenseState, fidelity, schmidt_rank
from backend.oracle.syndrome_basis import a4_state, a8_state
from backend.protocols.gate_injection import (
    ResourceLedger,
    controlled_z_infidelity,
    inject_T,
    injection_branches,
    injection_infidelity,
    noisy_a4_ensemble,
    noisy_a8_ensemble,
    t_gate_target,
)
from backend.protocols import ancilla_protocols
from backend.protocols.ancilla_protocols import (
    CZ_METHODS,
    LOGICAL_MODES,
    O2_PAIRING,
    O3_RAW_SYNDROME,
    as_engine,
    controlled_Z,
    controlled_z_branches,
    correction_table,
    cz_mode_count,
    exponent_from_quartet_measurements,
    leading_block,
    measure_quartet_with_a8,
    o2_preparation_circuit,
    o3_preparation_circuit,
    prepare_a8_via_O2,
    prepare_a8_via_O2_branches,
    prepare_a8_via_O3,
    syndrome_of,
)
from backend.protocols.logical_qubit import (
    LogicalQubit,
    clifford_group_one_qubit,
    decode,
    encode,
    logical_matrix,
)
from backend.protocols.verification import (
    PROTOCOL_CHECKS,
    PROTOCOL_GROUPS,
    ProtocolCheck,
    _worst_case,
    input_states,
    random_logical,
    resolve_protocols,
    verify_protocol,
)
from backend.purification.purification_circuits import a8_state_tableau, syndrome_fix_circuit

PLUS_PLUS = np.array([1, 1, 1, 1]) / 2
CZ_PLUS_PLUS = np.array([1, 1, 1, -1]) / 2


def plus_plus_tableau():
    """Logical |+>|+> on quartets 1-4 and 5-8"""
    circuit = LogicalQubit((1, 2, 3, 4)).hadamard(8).concat(LogicalQubit((5, 6, 7, 8)).hadamard(8))
    return run_circuit(circuit, StabilizerTableau.vacuum(4)).state


class TestLogicalQubit:
    """Test the quartet encoding and its braid images"""

    def test_encode_decode(self):
        amplitudes = np.array([0.6, 0.8j])
        state = encode(amplitudes)
        assert state.amplitudes[0] == pytest.approx(0.6)
        assert state.amplitudes[3] == pytest.approx(0.8j)
        assert decode(state) == pytest.approx(amplitudes)

    def test_decode_leakage(self):
        with pytest.raises(ValueError):
            decode(DenseState.basis_state([0, 1]))

    def test_code_space(self):
        qubit = LogicalQubit()
        assert qubit.in_code_space(encode([1, 1]))
        assert not qubit.in_code_space(DenseState.basis_state([1, 0]))
        assert qubit.in_code_space(StabilizerTableau.vacuum(2))

    def test_distinct_modes(self):
        with pytest.raises(ValueError):
            LogicalQubit((1, 2, 2, 3))

    def test_phase_gate(self):
        """B_ab acts as diag(1, i) up to phase"""
        m = logical_matrix(LogicalQubit().phase_gate(4))
        assert m / m[0, 0] == pytest.approx(np.diag([1, 1j]))

    def test_hadamard(self):
        m = logical_matrix(LogicalQubit().hadamard(4))
        assert m / m[0, 0] == pytest.approx(np.array([[1, 1], [1, -1]]))

    def test_logical_matrix_needs_unitary(self):
        with pytest.raises(ValueError):
            logical_matrix(BraidCircuit(4).measure_pair(1, 2))

    def test_clifford_group(self):
        assert len(clifford_group_one_qubit()) == 24


class TestA8Preparation:
    """Test both vacuum-to-|a8> preparations"""

    def test_o3_tableau(self):
        result = prepare_a8_via_O3("tableau")
        assert result.state == a8_state_tableau(0)
        assert syndrome_of(result.details["raw_state"]) == result.details["raw_syndrome"]

    def test_o3_dense(self):
        result = prepare_a8_via_O3("dense")
        assert fidelity(result.state, a8_state()) == pytest.approx(1.0)

    def test_o3_raw_syndrome(self):
        result = prepare_a8_via_O3("tableau")
        assert O3_RAW_SYNDROME == 4
        assert syndrome_of(result.details["raw_state"]) == O3_RAW_SYNDROME

    def test_o3_fixup_is_fixed(self, monkeypatch):
        circuit = o3_preparation_circuit()
        fixup = syndrome_fix_circuit(O3_RAW_SYNDROME).instructions
        assert circuit.n_measurements == 0
        assert correction_table(circuit) == []
        assert circuit.instructions[-len(fixup):] == fixup

        def unreadable(state, offset=0):
            raise AssertionError("syndrome read off the prepared state")

        monkeypatch.setattr(ancilla_protocols, "syndrome_of", unreadable)
        assert prepare_a8_via_O3("tableau").state == a8_state_tableau(0)

    @pytest.mark.parametrize("engine", ["tableau", "dense"])
    def test_o3_single_circuit(self, engine):
        state = run_circuit(o3_preparation_circuit(), as_engine(StabilizerTableau.vacuum(4), engine)).state
        if engine == "tableau":
            assert state == a8_state_tableau(0)
        else:
            assert fidelity(state, a8_state()) == pytest.approx(1.0)

    def test_o2_branches(self):
        runs = prepare_a8_via_O2_branches("tableau")
        assert [run.record.bits for run in runs] == [[0], [1]]
        for run in runs:
            assert run.probability == pytest.approx(0.5)
            assert run.state == a8_state_tableau(0)

    def test_o2_sampled(self):
        result = prepare_a8_via_O2("dense", rng=np.random.default_rng(8))
        assert fidelity(result.state, a8_state()) == pytest.approx(1.0)

    def test_o2_pre_measurement_state(self):
        """Before the fix-up, the uncorrected branch is already |a8>"""
        pre = run_circuit(compile_signed_permutation(O2_PAIRING, 8), DenseState.vacuum(4)).state
        probability, branch = pre.project_monomial((5, 6, 7, 8), -1)
        assert probability == pytest.approx(0.5)
        assert fidelity(branch, a8_state()) == pytest.approx(1.0)
        assert pre.project_monomial((5, 6, 7, 8), 1)[0] == pytest.approx(0.5)

    def test_o2_correction_table(self):
        assert correction_table(o2_preparation_circuit()) == [("t1^1", "Braid(3, 7)")] * 2

    def test_unknown_engine(self):
        with pytest.raises(ValueError):
            as_engine(a8_state_tableau(0), "matrix")


class TestQuartetMeasurement:
    """Test the quartet charge read out through |a8>"""

    def test_vacuum_charge(self):
        rng = np.random.default_rng(1)
        for _ in range(4):
            result = measure_quartet_with_a8(StabilizerTableau.vacuum(2), rng=rng)
            assert result.eigenvalue == -1
            assert result.state == StabilizerTableau.vacuum(2)

    def test_odd_charge(self):
        state = StabilizerTableau.paired_state(4, [(-1, 1, 2), (1, 3, 4)])
        result = measure_quartet_with_a8(state, rng=np.random.default_rng(2))
        assert result.parity == 1
        assert result.eigenvalue == 1
        assert result.state == state

    def test_input_size(self):
        with pytest.raises(ValueError):
            measure_quartet_with_a8(StabilizerTableau.vacuum(3))


class TestQuarticExponent:
    """Test exp(i pi/4 c1 c2 c3 c4) built from measurements"""

    def test_tableau_branches(self):
        start = StabilizerTableau.vacuum(4).braid(3, 7)
        target = start.exponent((1, 2, 3, 4), -1)
        for seed in range(6):
            result = exponent_from_quartet_measurements(start, (1, 2, 3, 4), (5, 6),
                                                        rng=np.random.default_rng(seed))
            assert result.state == target

    def test_uniform_branches(self):
        check = verify_protocol("O2->O3", seed=3)
        assert check.branches == 4
        assert [branch["prob"] for branch in check.outcomes] == pytest.approx([0.25] * 4)


class TestControlledZ:
    """Test the logical controlled-Z on every realisation"""

    @pytest.mark.parametrize("method", CZ_METHODS)
    def test_plus_plus(self, method):
        result = controlled_Z(encode(PLUS_PLUS), method, rng=np.random.default_rng(4))
        assert fidelity(result.state, encode(CZ_PLUS_PLUS)) == pytest.approx(1.0)

    @pytest.mark.parametrize("method", CZ_METHODS)
    def test_engines_agree(self, method):
        tableau_runs = controlled_z_branches(plus_plus_tableau(), method)
        dense_runs = controlled_z_branches(encode(PLUS_PLUS), method)
        assert [run.record.bits for run in tableau_runs] == [run.record.bits for run in dense_runs]
        for tableau_run, dense_run in zip(tableau_runs, dense_runs):
            assert tableau_run.probability == pytest.approx(dense_run.probability)
            tableau_out = DenseState.from_tableau(leading_block(tableau_run.state, LOGICAL_MODES))
            dense_out = leading_block(dense_run.state, LOGICAL_MODES)
            assert fidelity(tableau_out, dense_out) == pytest.approx(1.0)

    def test_creates_entanglement(self):
        """CZ|+>|+> has logical Schmidt rank 2, which no braid circuit reaches"""
        result = controlled_Z(encode(PLUS_PLUS), "via_a8", rng=np.random.default_rng(5))
        assert schmidt_rank(result.state, [1, 2]) == 2

    def test_mode_counts(self):
        assert [cz_mode_count(m) for m in CZ_METHODS] == [8, 10, 18]
        with pytest.raises(ValueError):
            cz_mode_count("via_magic")


class TestGateInjection:
    """Test the pi/8 gate injected from |a4>"""

    def test_all_branches(self):
        amplitudes = np.array([0.6, 0.8])
        runs = injection_branches(encode(amplitudes))
        assert sum(run.probability for run in runs) == pytest.approx(1.0)
        for run in runs:
            output = run.state.factor_out([1, 2])
            assert fidelity(output, t_gate_target(amplitudes)) == pytest.approx(1.0)

    def test_plus_becomes_a4(self):
        result = inject_T(encode([1, 1]), rng=np.random.default_rng(7))
        assert fidelity(result.state, a4_state()) == pytest.approx(1.0)

    def test_twice_gives_phase_gate(self):
        """T^2 = K = diag(1, i)"""
        rng = np.random.default_rng(8)
        once = inject_T(encode([1, 1]), rng=rng)
        twice = inject_T(once.state, rng=rng)
        assert fidelity(twice.state, encode([1, 1j])) == pytest.approx(1.0)

    def test_ledger(self):
        ledger = ResourceLedger()
        rng = np.random.default_rng(6)
        inject_T(encode([1, 1]), cz_method="via_a8", rng=rng, ledger=ledger)
        inject_T(encode([1, 0]), rng=rng, ledger=ledger)
        assert ledger.a8_consumed == 1
        assert ledger.a4_consumed == 2
        assert ledger.by_protocol == {"inject_T": 2}
        assert ledger.measurements > 0

    def test_input_size(self):
        with pytest.raises(ValueError):
            inject_T(encode(PLUS_PLUS))

    def test_clean_ancilla(self):
        assert injection_infidelity([0.6, 0.8], noisy_a4_ensemble(0.0)) == pytest.approx(0.0, abs=1e-10)

    def test_noisy_ancilla(self):
        eps = 0.05
        loss = injection_infidelity([1, 1], noisy_a4_ensemble(eps))
        assert 0.0 < loss <= eps + 1e-10

    def test_noisy_a8(self):
        eps = 0.1
        assert controlled_z_infidelity(PLUS_PLUS, noisy_a8_ensemble(0.0)) == pytest.approx(0.0, abs=1e-10)
        assert controlled_z_infidelity(PLUS_PLUS, noisy_a8_ensemble(eps)) <= eps + 1e-10

    def test_ensemble_range(self):
        with pytest.raises(ValueError):
            noisy_a4_ensemble(1.5)
        with pytest.raises(ValueError):
            noisy_a8_ensemble(-0.1)


class TestVerification:
    """Test the branch-by-branch protocol checks"""

    @pytest.mark.parametrize("name", list(PROTOCOL_CHECKS))
    def test_protocol_passes(self, name):
        check = verify_protocol(name, seed=0)
        assert check.passed, check.to_dict()
        assert check.total_probability == pytest.approx(1.0)

    @pytest.mark.parametrize("name,inputs", [("O1->O2", 6), ("O2->O3", 10), ("CZ[via_O3]", 6),
                                             ("CZ[via_O2]", 6), ("CZ[via_a8]", 6), ("inject_T", 4)])
    def test_basis_and_random_inputs(self, name, inputs):
        check = verify_protocol(name, seed=2)
        assert check.details["inputs"] == inputs
        assert check.max_infidelity < 1e-9
        assert check.to_dict()["max_infidelity"] == pytest.approx(check.max_infidelity)

    def test_input_states(self):
        inputs = input_states(2, np.random.default_rng(5))
        assert [label for label, _ in inputs] == ["00", "01", "10", "11", "random0", "random1"]
        assert np.allclose(inputs[2][1], [0, 0, 1, 0])
        first = random_logical(2, np.random.default_rng(5))
        assert np.allclose(inputs[4][1], first)

    def test_worst_input_reported(self):
        def check_input(amplitudes):
            # only |10> is mishandled
            value = 0.5 if abs(amplitudes[2]) == 1.0 else 1.0
            return ProtocolCheck("fake", 2, value, 1.0)

        check = _worst_case("fake", 2, np.random.default_rng(0), check_input)
        assert check.details == {"inputs": 6, "worst_input": "10"}
        assert check.max_infidelity == pytest.approx(0.5)
        assert not check.passed

    def test_report_record(self):
        report = verify_protocol("O2->O1").to_report()
        assert report["protocol"] == "O2->O1"
        assert report["fidelity"] == pytest.approx(1.0)
        assert [branch["outcome"] for branch in report["branches"]] == ["0", "1"]

    def test_groups(self):
        assert resolve_protocols("cz") == ["CZ[via_O3]", "CZ[via_O2]", "CZ[via_a8]"]
        assert resolve_protocols("O1->O2") == ["O1->O2"]
        assert set(PROTOCOL_GROUPS["all"]) == set(PROTOCOL_CHECKS)
        with pytest.raises(ValueError):
            resolve_protocols("teleport")
        with pytest.raises(ValueError):
            verify_protocol("teleport")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
