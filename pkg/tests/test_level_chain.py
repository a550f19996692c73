"""
Tests for the exact level-chain solver.
"""
import math
from fractions import Fraction

import pytest

from src.bench_core import cliff, jump, onemax
from src.level_chain import (
    INFINITE,
    LevelChainError,
    build_level_chain,
    build_unitation_chain,
    closed_form_last_uphill,
    expected_phase_length,
    expected_runtime,
    expected_time_to_target_set,
    hitting_times_linear_solve,
    hitting_times_to_set,
    phase_success_probability,
    uphill_time_recurrence,
)
from src.models import AcceptanceRule

F = Fraction


class TestChainConstruction:
    def test_transition_probabilities(self, small_chain):
        assert small_chain.up == (F(1), F(3, 4), F(1, 4), F(1, 4))
        assert small_chain.down == (F(1, 8), F(1, 4), F(3, 4))

    def test_slope_ratio_identity(self):
        n, m, p = 12, 3, F(1, 5)
        chain = build_level_chain(n, m, p)
        for k in range(1, n - m):
            assert chain.ratio(k) == p * k / (n - k)

    def test_gap_ratio_identity(self):
        n, m, p = 12, 3, F(1, 5)
        chain = build_level_chain(n, m, p)
        for k in range(n - m + 1, n - 1):
            # inside the gap moving up is the worsening move
            assert chain.ratio(k) == F(k, n - k) / p
        # from n-1 the up move reaches the optimum
        assert chain.ratio(n - 1) == F(n - 1)

    def test_local_optimum_ratio_is_independent_of_p(self):
        for n in range(3, 13):
            for m in range(2, n):
                for p in (F(1, n), F(1, 3), F(1)):
                    assert build_level_chain(n, m, p).ratio(n - m) == F(n - m, m)

    def test_m_equal_one_is_onemax_like(self):
        chain = build_level_chain(6, 1, F(1, 3))
        assert chain.p_up(5) == F(1, 6)
        assert chain.p_down(5) == F(5, 6) * F(1, 3)

    def test_parameter_ranges(self):
        with pytest.raises(LevelChainError):
            build_level_chain(4, 4, F(1, 2))
        with pytest.raises(LevelChainError):
            build_level_chain(4, 0, F(1, 2))
        with pytest.raises(LevelChainError):
            build_level_chain(4, 2, F(3, 2))

    def test_onemax_chain_has_no_downhill_moves_at_p_zero(self):
        chain = build_unitation_chain(onemax(5), 0)
        assert all(d == 0 for d in chain.down)
        assert chain.m is None


class TestExpectedTimes:
    def test_hitting_times_anchor(self, small_chain):
        assert hitting_times_linear_solve(small_chain) == [F(57, 2), F(55, 2), F(26), F(41, 2), F(0)]

    def test_three_way_agreement_anchor(self, small_chain):
        assert uphill_time_recurrence(small_chain, 3) == F(41, 2)
        assert closed_form_last_uphill(4, 2, F(1, 2)) == F(41, 2)

    @pytest.mark.parametrize("n", range(2, 11))
    def test_three_way_agreement(self, n):
        for m in range(1, n // 2 + 1):
            for p in {F(1, n), F(m, n), F(1, 4), F(1, 2)}:
                chain = build_level_chain(n, m, p)
                h = hitting_times_linear_solve(chain)
                assert uphill_time_recurrence(chain, n - 1) == h[n - 1]
                assert closed_form_last_uphill(n, m, p) == h[n - 1]

    def test_recurrence_sums_to_expected_runtime(self):
        chain = build_level_chain(9, 3, F(1, 3))
        total = sum(uphill_time_recurrence(chain, i) for i in range(9))
        assert expected_runtime(chain, 0) == total

    def test_uniform_start_runtime_grows_with_gap(self):
        for n in range(2, 15):
            for p in (F(1, n), F(1, 4), F(1, 2)):
                runtimes = [expected_runtime(build_level_chain(n, m, p), "uniform-random") for m in range(1, n)]
                assert all(a <= b for a, b in zip(runtimes, runtimes[1:])), (n, p)

    def test_uniform_start(self, small_chain):
        assert expected_runtime(small_chain, "uniform-random") == F(753, 32)
        assert expected_runtime(small_chain, "level=3") == F(41, 2)
        assert expected_runtime(small_chain, "local-optimum") == F(26)

    def test_p_zero_is_infinite(self):
        chain = build_level_chain(4, 2, 0)
        assert uphill_time_recurrence(chain, 3) == INFINITE
        assert closed_form_last_uphill(4, 2, 0) == INFINITE
        h = hitting_times_linear_solve(chain)
        assert h[3] == INFINITE
        assert h[4] == 0
        assert expected_runtime(chain, "uniform-random") == INFINITE

    def test_p_one_is_a_random_walk(self):
        chain = build_level_chain(4, 2, 1)
        # every move accepted: h_{n-1} = 2^n - 1
        assert hitting_times_linear_solve(chain)[3] == F(15)

    def test_absorbing_set_must_contain_n(self, small_chain):
        with pytest.raises(LevelChainError):
            hitting_times_to_set(small_chain, [2])

    def test_cliff_chain_is_solvable(self):
        chain = build_unitation_chain(cliff(8, 3), F(1, 4))
        h = hitting_times_linear_solve(chain)
        assert all(value != INFINITE for value in h)
        assert h[8] == 0

    def test_improving_and_equal_rule_gets_stuck(self):
        chain = build_unitation_chain(jump(6, 2), 0, AcceptanceRule.IMPROVING_AND_EQUAL)
        assert expected_runtime(chain, "local-optimum") == INFINITE


class TestPhaseQuantities:
    def test_time_to_target_set(self, small_chain):
        assert expected_time_to_target_set(small_chain, "level=3") == F(1)
        assert expected_time_to_target_set(small_chain, "local-optimum") == F(0)
        assert expected_time_to_target_set(small_chain, "uniform-random") == F(25, 32)

    def test_phase_length(self, small_chain):
        assert expected_phase_length(small_chain) == F(13, 8)

    def test_phase_success_probability(self, small_chain):
        assert phase_success_probability(small_chain) == F(1, 16)

    def test_runtime_decomposes_into_phases(self):
        # E[T] from the local optimum = E[N] * E[phase length] by Wald
        chain = build_level_chain(8, 2, F(1, 4))
        runtime = expected_runtime(chain, "local-optimum")
        phases = 1 / phase_success_probability(chain)
        assert runtime == phases * expected_phase_length(chain)

    def test_phase_quantities_need_jump(self):
        chain = build_unitation_chain(onemax(5), F(1, 2))
        with pytest.raises(LevelChainError):
            expected_phase_length(chain)


class TestInfinite:
    def test_ordering(self):
        assert F(10**9) < INFINITE
        assert INFINITE > 5
        assert not INFINITE < INFINITE
        assert INFINITE == INFINITE
        assert F(3) != INFINITE

    def test_arithmetic_and_rendering(self):
        assert INFINITE + F(1) is INFINITE
        assert math.isinf(float(INFINITE))
        assert str(INFINITE) == "inf"
