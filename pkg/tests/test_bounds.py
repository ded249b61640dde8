import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from hyperproto.block_codes import bch_code, message_bits, reed_muller_code, repetition_code
from hyperproto.bounds import (
    achievable_envelope,
    achievable_max_cosine,
    bounds_report,
    gv_condition,
    gv_condition_exact,
    gv_largest_dmin,
    prop1_cosine_bound,
    prop2_cosine_bound,
    rankin_converse,
    rs_simplex_cosine_bound,
    simplex_component_sq_distance,
    singleton_dmin_upper,
)
from hyperproto.exceptions import InfeasibleError


def exact_table(n: int) -> list[int]:
    """Largest GV d for every k in 1..n from integer prefix sums."""
    prefix = [0]
    for i in range(n):
        prefix.append(prefix[-1] + math.comb(n - 1, i))
    out = []
    for k in range(1, n + 1):
        lhs = 2 ** (n - k)
        # condition for d: lhs > prefix[d-1] (sum over i <= d-2)
        out.append(max(d for d in range(1, n + 1) if lhs > prefix[d - 1]))
    return out


class TestGV:
    def test_examples(self):
        assert gv_largest_dmin(3, 1) == 3
        assert gv_largest_dmin(4, 2) == 2
        assert not gv_condition(4, 2, 3)  # 4 > 1 + 3 fails strictly

    def test_large_n_finite(self):
        d = gv_largest_dmin(1023, 10)
        assert 1 <= d <= 1023
        assert gv_condition(1023, 10, d) and not gv_condition(1023, 10, d + 1)

    def test_oracle_agrees_with_reference(self):
        for n in range(1, 12):
            assert exact_table(n) == [oracles.gv_largest_exact(n, k) for k in range(1, n + 1)]

    def test_log_domain_matches_exact_up_to_127(self):
        mismatches = []
        for n in range(1, 128):
            want = exact_table(n)
            for k in range(1, n + 1):
                if gv_largest_dmin(n, k) != want[k - 1]:
                    mismatches.append((n, k))
        assert mismatches == []

    @given(st.integers(1, 300), st.data())
    def test_condition_matches_integers(self, n, data):
        k = data.draw(st.integers(1, n))
        d = data.draw(st.integers(1, n))
        assert gv_condition(n, k, d) == gv_condition_exact(n, k, d) == oracles.gv_exact(n, k, d)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            gv_largest_dmin(3, 4)


class TestCosineBounds:
    def test_achievable_examples(self):
        assert achievable_max_cosine(3, 2) == -1.0
        assert achievable_max_cosine(4, 4) == 0.0

    def test_below_message_length(self):
        with pytest.raises(InfeasibleError, match="dimension below message length"):
            achievable_max_cosine(1, 100)

    def test_tightening(self):
        raw = achievable_max_cosine(100, 100)
        assert raw > 0
        assert achievable_max_cosine(100, 100, tighten=True) == 0.0
        assert achievable_max_cosine(99, 100, tighten=True) == achievable_max_cosine(99, 100)

    def test_rankin(self):
        assert rankin_converse(2) == -1.0
        assert rankin_converse(4) == -1 / 3
        assert rankin_converse(100) == -1 / 99
        with pytest.raises(ValueError):
            rankin_converse(1)

    def test_sandwich_full_scan(self):
        Ks = np.arange(2, 1025)
        ks = np.array([message_bits(int(K)) for K in Ks])
        converse = -1.0 / (Ks - 1)
        for k in range(1, 11):
            worst = converse[ks == k].max()
            ach = np.array([achievable_max_cosine(n, 1 << k) for n in range(k, 1025)])
            assert np.all(ach >= worst)

    def test_raw_bound_not_monotone(self):
        # one extra coordinate can lower the best provable d/n ratio
        assert achievable_max_cosine(3, 4) < achievable_max_cosine(4, 4)

    @pytest.mark.parametrize("K", [2, 3, 10, 100, 1000])
    def test_envelope_monotone(self, K):
        k = message_bits(K)
        vals = [achievable_envelope(n, K) for n in range(k, k + 150)]
        assert all(b <= a for a, b in zip(vals, vals[1:]))
        assert all(v <= achievable_max_cosine(n, K) for n, v in zip(range(k, k + 150), vals))
        assert all(v >= rankin_converse(K) for v in vals)

    def test_singleton(self):
        assert singleton_dmin_upper(4, 2) == 3
        assert singleton_dmin_upper(9, 1) == 9
        assert singleton_dmin_upper(9, 9) == 1

    def test_prop1_examples(self):
        assert prop1_cosine_bound(reed_muller_code(1, 6)) == 0.0
        assert prop1_cosine_bound(repetition_code(3)) == -1.0
        assert prop1_cosine_bound(bch_code(3, 3)) == pytest.approx(1 / 7, abs=1e-15)

    def test_prop2_examples(self):
        assert prop2_cosine_bound(3, 4, 8 / 3) == pytest.approx(0.0, abs=1e-15)
        assert simplex_component_sq_distance(4) == pytest.approx(8 / 3)
        for n, d in [(7, 3), (8, 4), (15, 7)]:
            assert prop2_cosine_bound(d, n, 4.0) == pytest.approx(1 - 2 * d / n)
        for q in (4, 8, 16):
            v = rs_simplex_cosine_bound(q, 1, 1)
            assert v == pytest.approx(-1 / (q - 1))
            assert v <= rankin_converse(q) + 1e-15

    def test_prop2_rejects_bad_inputs(self):
        for args in [(0, 4, 2.0), (3, 0, 2.0), (3, 4, 0.0), (3, 4, 4.5)]:
            with pytest.raises(ValueError):
                prop2_cosine_bound(*args)


class TestReport:
    def test_fields(self):
        r = bounds_report(100, 99)
        assert r.converse_min_of_max_cosine == -1 / 99
        assert r.k == 7
        assert r.onehot_reference is None
        r = bounds_report(100, 128)
        assert r.onehot_reference == 0.0
        assert r.tightened_achievable == min(r.achievable_max_cosine, 0.0)
        assert set(r.to_dict()) >= {"K", "n", "gv_dmin", "achievable_max_cosine",
                                   "converse_min_of_max_cosine", "onehot_reference"}

    def test_k2_n3(self):
        assert bounds_report(2, 3).achievable_max_cosine == -1.0
