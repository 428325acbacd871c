"""Test suite for the |a8> Monte Carlo inventory simulation"""
import math
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import numpy as np
import pytest

from backend.purification.flow_equations import flow_a8, threshold_a8
from backend.purification.monte_carlo import (
    batching_bound,
    batching_experiment,
    batching_failure_probability,
    chain_n0_half,
    chain_success_probability,
    closed_form_success,
    monte_carlo,
    purify_level,
    simulate_trials,
    solve_n0_half,
)
from backend.purification.schedule import naive_n0

GRID = [(eps0, k) for eps0 in (0.05, 0.1, 0.2) for k in (1, 2, 3)]


@pytest.fixture(scope="module")
def delta8():
    return threshold_a8()


class TestPurifyLevel:
    """Test one vectorized purification level"""

    def test_clean_inventory(self):
        inventory = np.zeros((3, 16), dtype=np.int8)
        counts = np.array([16, 12, 7])
        out, out_counts = purify_level(inventory, counts, np.random.default_rng(0))
        assert out_counts.tolist() == [2, 1, 0]
        assert np.all(out[0, :2] == 0)

    def test_bad_copy_spoils_group(self):
        """A lone nonzero syndrome always trips one of the three stages"""
        inventory = np.zeros((1, 8), dtype=np.int8)
        inventory[0, 3] = 5
        _, counts = purify_level(inventory, np.array([8]), np.random.default_rng(1))
        assert counts.tolist() == [0]

    def test_empty_inventory(self):
        out, counts = purify_level(np.zeros((2, 5), dtype=np.int8), np.array([5, 3]),
                                   np.random.default_rng(0))
        assert out.shape == (2, 0)
        assert counts.tolist() == [0, 0]


class TestMonteCarlo:
    """Test success-probability estimates"""

    def test_clean_copies_always_succeed(self, delta8):
        result = monte_carlo(0.0, 2, 64, 200, seed=1, threshold=delta8)
        assert result.success_probability == 1.0
        assert result.stderr == 0.0

    def test_too_few_copies(self, delta8):
        result = monte_carlo(0.0, 2, 63, 50, seed=1, threshold=delta8)
        assert result.success_probability == 0.0

    def test_deterministic_for_seed(self):
        first = simulate_trials(0.1, 2, 120, 300, seed=7, chunk_size=64)
        second = simulate_trials(0.1, 2, 120, 300, seed=7, chunk_size=64)
        assert np.array_equal(first, second)

    def test_independent_of_threads(self):
        single = simulate_trials(0.1, 1, 40, 500, seed=3, threads=1, chunk_size=50)
        parallel = simulate_trials(0.1, 1, 40, 500, seed=3, threads=2, chunk_size=50)
        assert np.array_equal(single, parallel)

    def test_one_level_matches_closed_form(self, delta8):
        """P = 1 - (1 - Z)^{floor(n0/8)} within three standard errors"""
        eps0, n0 = 0.2, 24
        result = monte_carlo(eps0, 1, n0, 4000, seed=11, threshold=delta8)
        expected = closed_form_success(eps0, n0)
        assert abs(result.success_probability - expected) <= 3 * max(result.stderr, 1e-3)

    def test_group_acceptance(self, delta8):
        """With exactly eight copies the success rate is Z itself"""
        result = monte_carlo(0.1, 1, 8, 4000, seed=5, threshold=delta8)
        assert result.success_probability == pytest.approx(flow_a8(0.1).Z, abs=4 * result.stderr)

    def test_above_threshold(self, delta8):
        with pytest.raises(ValueError):
            monte_carlo(0.39, 1, 8, 10, seed=0, threshold=delta8)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            simulate_trials(0.1, 1, 8, 0, seed=0)
        with pytest.raises(ValueError):
            simulate_trials(0.1, -1, 8, 10, seed=0)

    def test_result_record(self, delta8):
        record = monte_carlo(0.05, 1, 16, 100, seed=2, threshold=delta8).to_dict()
        assert list(record) == ["n0", "k", "eps0", "trials", "success_prob", "stderr"]
        assert record["trials"] == 100


class TestYieldChain:
    """Test the exact binomial chain n_{j+1} ~ Bin(floor(n_j / 8), Z_j)"""

    def test_one_level_is_closed_form(self):
        for eps0, n0 in ((0.05, 8), (0.1, 23), (0.2, 40)):
            assert chain_success_probability(eps0, 1, n0) == pytest.approx(closed_form_success(eps0, n0))

    def test_no_copies_below_8_to_the_k(self):
        assert chain_success_probability(0.0, 2, 63) == 0.0
        assert chain_success_probability(0.0, 2, 64) == pytest.approx(1.0)

    def test_monotone_in_n0(self):
        values = [chain_success_probability(0.1, 2, n0) for n0 in range(64, 400, 8)]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_n0_is_whole_groups(self):
        """Success depends on n0 only through floor(n0/8)"""
        for eps0, k in GRID:
            assert chain_n0_half(eps0, k) % 8 == 0

    def test_one_level_median(self):
        """At k=1 the P=1/2 point is 8 ceil(ln 2 / -ln(1-Z)), below the mean-yield estimate"""
        for eps0 in (0.05, 0.1, 0.2):
            z = flow_a8(eps0).Z
            groups = math.ceil(math.log(2) / -math.log(1 - z))
            assert chain_n0_half(eps0, 1) == 8 * groups
            assert chain_n0_half(eps0, 1) / naive_n0(eps0, 1) == pytest.approx(groups * z)
        assert [chain_n0_half(eps0, 1) for eps0 in (0.05, 0.1, 0.2)] == [8, 16, 32]

    @pytest.mark.parametrize("eps0", [0.05, 0.1, 0.2])
    @pytest.mark.parametrize("k", [2, 3])
    def test_multi_level_near_naive_estimate(self, eps0, k):
        assert chain_n0_half(eps0, k) == pytest.approx(naive_n0(eps0, k), rel=0.25)


class TestN0Solver:
    """Test the P=1/2 inventory size found by Monte Carlo"""

    @pytest.mark.parametrize("eps0,k", GRID)
    def test_matches_exact_chain(self, eps0, k):
        n0 = solve_n0_half(eps0, k, 10_000, seed=k, threads=4)
        exact = chain_n0_half(eps0, k)
        if k == 1:
            assert n0 == exact
        assert n0 == pytest.approx(exact, rel=0.06)

    def test_integer_resolution(self):
        """Bisection stops on the first n0 of the accepting group"""
        assert solve_n0_half(0.1, 1, 4000, seed=1) == 16


class TestBatching:
    """Test the 3L-group batching bound"""

    def test_exact_below_bound(self):
        for L in (12, 50, 100):
            assert batching_failure_probability(L) <= batching_bound(L)

    def test_bound_values(self):
        assert batching_bound(12) == pytest.approx(np.exp(-1))

    def test_bound_at_hundred(self):
        assert batching_failure_probability(100) <= batching_bound(100)
        assert batching_bound(100) == pytest.approx(math.exp(-100 / 12))

    def test_experiment(self):
        """300 groups at P >= 1/2 never yield fewer than 100 copies"""
        n0 = chain_n0_half(0.1, 1)
        p = closed_form_success(0.1, n0)
        assert p >= 0.5
        assert batching_failure_probability(100, p) <= batching_bound(100)
        empirical = batching_experiment(100, 0.1, 1, n0, repetitions=200, seed=9, threads=2)
        assert empirical <= batching_bound(100)
        assert empirical == 0.0

    def test_experiment_small_batch(self):
        n0 = 16
        p = closed_form_success(0.05, n0)
        empirical = batching_experiment(4, 0.05, 1, n0, repetitions=200, seed=9)
        assert 0.0 <= empirical <= batching_failure_probability(4, p) + 0.1


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
