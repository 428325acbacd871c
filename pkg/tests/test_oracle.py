"""Test suite for the dense statevector oracle"""
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import numpy as np
import pytest

from backend.majorana.pauli_string import hermitian_monomial
from backend.majorana.stabilizer_tableau import StabilizerTableau, parity_operator
from backend.oracle.dense_state import (
    MAX_QUBITS,
    DenseState,
    ensemble_fidelity,
    fidelity,
    qubits_of_modes,
    schmidt_rank,
)
from backend.oracle.syndrome_basis import (
    a4_state,
    a8_state,
    even_mixed_density,
    psi_state,
    syndrome_basis,
    syndrome_overlaps,
)
from backend.purification.purification_circuits import STABILIZER_MODES, a8_state_tableau

BELL_PLUS = DenseState.from_amplitudes([1, 0, 0, 1])
BELL_MINUS = DenseState.from_amplitudes([1, 0, 0, -1])


class TestDenseState:
    """Test construction, rotations and projections"""

    def test_vacuum_amplitudes(self):
        state = DenseState.vacuum(2)
        assert state.amplitudes[0] == 1.0
        assert state.n_modes == 4

    def test_qubit_cap(self):
        with pytest.raises(ValueError):
            DenseState.vacuum(MAX_QUBITS + 1)

    def test_amplitude_shape(self):
        with pytest.raises(ValueError):
            DenseState(2, np.ones(3))

    def test_braid_phase_on_vacuum(self):
        """B12 |0> = e^{-i pi/4} |0>"""
        state = DenseState.vacuum(1).braid(1, 2)
        assert state.amplitudes == pytest.approx([np.exp(-1j * np.pi / 4), 0])

    def test_zero_angle_is_identity(self):
        state = DenseState.from_amplitudes([0.6, 0.8j])
        assert state.apply_exponent((1, 2), 0.0).amplitudes == pytest.approx(state.amplitudes)

    def test_two_braids_entangle(self):
        """B12 B23 |00> = |00> + |11> up to phase"""
        state = DenseState.vacuum(2).braid(2, 3).braid(1, 2)
        assert fidelity(state, BELL_PLUS) == pytest.approx(1.0)

    def test_inverse_braid_sign(self):
        """B12^dagger B23 |00> = |00> - |11> up to phase"""
        state = DenseState.vacuum(2).braid(2, 3).braid(1, 2, inverse=True)
        assert fidelity(state, BELL_MINUS) == pytest.approx(1.0)

    def test_norm_preserved(self):
        rng = np.random.default_rng(1)
        state = DenseState.from_amplitudes(rng.normal(size=16) + 1j * rng.normal(size=16))
        for _ in range(20):
            modes = sorted(int(m) for m in rng.choice(np.arange(1, 9), size=4, replace=False))
            state = state.exponent(modes, int(rng.integers(1, 4))).braid(modes[0], modes[1])
        assert state.norm() == pytest.approx(1.0)

    def test_vacuum_quartet_projection(self):
        """-c1 c2 c3 c4 = +1 on |00>, so the Hermitian c1 c2 c3 c4 projects with sign -1"""
        probability, state = DenseState.vacuum(2).project_monomial((1, 2, 3, 4), -1)
        assert probability == pytest.approx(1.0)
        assert fidelity(state, DenseState.vacuum(2)) == pytest.approx(1.0)
        probability, state = DenseState.vacuum(2).project_monomial((1, 2, 3, 4), 1)
        assert probability == 0.0
        assert state.empty

    def test_projector_sign(self):
        with pytest.raises(ValueError):
            DenseState.vacuum(1).project_monomial((1, 2), 0)

    def test_measure_matches_tableau(self):
        """Forced outcomes carry Born probabilities"""
        bit, probability, _ = DenseState.vacuum(2).measure((2, 3), forced=1)
        assert (bit, probability) == (1, pytest.approx(0.5))
        bit, probability, _ = DenseState.vacuum(2).measure((1, 2))
        assert (bit, probability) == (0, pytest.approx(1.0))

    def test_from_tableau(self):
        tableau = StabilizerTableau.vacuum(2).braid(2, 3).braid(1, 2)
        assert fidelity(DenseState.from_tableau(tableau), BELL_PLUS) == pytest.approx(1.0)

    def test_fidelity_dimension_mismatch(self):
        with pytest.raises(ValueError):
            fidelity(DenseState.vacuum(1), DenseState.vacuum(2))

    def test_t_rotated_a4_fidelity(self):
        """|<a4| T |a4>|^2 = (1 + cos(pi/4)) / 2"""
        rotated = DenseState.from_amplitudes([1, 0, 0, np.exp(1j * np.pi / 2)])
        assert fidelity(a4_state(), rotated) == pytest.approx((1 + np.cos(np.pi / 4)) / 2)

    def test_ensemble_fidelity(self):
        ensemble = [(0.75, BELL_PLUS), (0.25, BELL_MINUS)]
        assert ensemble_fidelity(BELL_PLUS, ensemble) == pytest.approx(0.75)
        with pytest.raises(ValueError):
            ensemble_fidelity(BELL_PLUS, [(0.5, BELL_PLUS)])


class TestEntanglement:
    """Test Schmidt decompositions across qubit cuts"""

    def test_product_rank(self):
        assert schmidt_rank(DenseState.vacuum(2), [1]) == 1

    def test_a8_rank(self):
        assert schmidt_rank(a8_state(), [1, 2]) == 2

    def test_factor_out(self):
        state = DenseState.vacuum(1).tensor(BELL_PLUS)
        assert fidelity(state.factor_out([2, 3]), BELL_PLUS) == pytest.approx(1.0)
        with pytest.raises(ValueError):
            state.factor_out([1, 2])

    def test_qubits_of_modes(self):
        assert qubits_of_modes((3, 4, 7, 8)) == [2, 4]
        with pytest.raises(ValueError):
            qubits_of_modes((2, 3))


class TestSyndromeBasis:
    """Test the |Psi_s> basis and diagonal overlaps"""

    def test_basis_is_orthonormal(self):
        basis = syndrome_basis()
        gram = np.array([[np.vdot(a.amplitudes, b.amplitudes) for b in basis] for a in basis])
        assert np.allclose(gram, np.eye(8))

    def test_stabilizer_eigenvalues(self):
        """S_j = (-1)^{s_j} and Q = +1 on |Psi_s>"""
        parity = parity_operator(8)
        for s in range(8):
            psi = psi_state(s)
            assert psi.expectation(parity) == pytest.approx(1.0)
            for j, modes in STABILIZER_MODES.items():
                bit = (s >> (3 - j)) & 1
                stabilizer = -hermitian_monomial(modes, 4)
                assert psi.expectation(stabilizer) == pytest.approx((-1) ** bit)

    def test_a8_matches_tableau(self):
        assert fidelity(a8_state(), DenseState.from_tableau(a8_state_tableau(0))) == pytest.approx(1.0)
        assert fidelity(a8_state(), DenseState.from_amplitudes([1] + [0] * 14 + [1])) == pytest.approx(1.0)

    def test_a8_quartet_eigenvalue(self):
        probability, _ = a8_state().project_monomial((1, 2, 3, 4), -1)
        assert probability == pytest.approx(1.0)

    def test_overlaps_of_basis_states(self):
        assert syndrome_overlaps(a8_state()).p[0] == pytest.approx(1.0)
        assert syndrome_overlaps(psi_state(5)).p[5] == pytest.approx(1.0)

    def test_mixed_state_is_uniform(self):
        overlaps = syndrome_overlaps(even_mixed_density())
        assert overlaps.p == pytest.approx([1 / 8] * 8)

    def test_odd_support_rejected(self):
        with pytest.raises(ValueError):
            syndrome_overlaps(DenseState.basis_state([1, 0, 0, 0]))

    def test_wrong_size_rejected(self):
        with pytest.raises(ValueError):
            syndrome_overlaps(DenseState.vacuum(2))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
