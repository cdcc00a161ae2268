import math
from fractions import Fraction

import numpy as np
import pytest

from codesmooth import codes as cd
from codesmooth import erasure as er
from codesmooth import hypercube as hc
from codesmooth import kernels as kn

from conftest import random_linear_code, seeded_rng

INF = math.inf


class TestCollisionCount:
    def test_empty_set_gives_code_size(self, hamming7):
        assert er.collision_count(hamming7, []) == hamming7.size

    def test_full_set_gives_one(self, hamming7):
        assert er.collision_count(hamming7, range(7)) == 1

    def test_rank_formula_matches_enumeration(self):
        rng = seeded_rng(50)
        for _ in range(20):
            code = random_linear_code(rng, 12)
            g = int(rng.integers(0, 1 << code.n))
            coords = [c for c in range(code.n) if (g >> c) & 1]
            assert (er.collision_count(code, coords)
                    == er.collision_count_direct(code, coords))

    def test_matroid_identity_all_subsets_small(self):
        rng = seeded_rng(51)
        for _ in range(5):
            code = random_linear_code(rng, 8)
            dual = code.dual()
            n = code.n
            for g in range(1 << n):
                coords = [c for c in range(n) if (g >> c) & 1]
                comp = [c for c in range(n) if not (g >> c) & 1]
                lhs = er.collision_count(code, coords)
                rhs = Fraction(code.size, 1 << len(coords)) * \
                    er.collision_count(dual, comp)
                assert lhs == rhs

    def test_matroid_identity_n14(self):
        rng = seeded_rng(52)
        code = cd.random_linear(14, 6, seed=9)
        dual = code.dual()
        for _ in range(200):
            g = int(rng.integers(0, 1 << 14))
            coords = [c for c in range(14) if (g >> c) & 1]
            comp = [c for c in range(14) if not (g >> c) & 1]
            assert er.collision_count(code, coords) == Fraction(
                code.size, 1 << len(coords)) * er.collision_count(dual, comp)


class TestBecConditionalEntropy:
    def test_parity3_is_lambda_cubed(self):
        # dual of parity(3) is repetition(3): ambiguity only when all
        # three coordinates are erased
        code = cd.parity(3)
        for lam in (0.0, 0.1, 0.25, 0.4, 0.5, 0.75, 1.0):
            val, err = er.bec_conditional_entropy(er.ErasureContext(code, lam))
            assert err == 0.0
            assert math.isclose(val, lam ** 3, abs_tol=1e-12)

    def test_endpoints(self):
        rng = seeded_rng(53)
        code = random_linear_code(rng, 10)
        v0, _ = er.bec_conditional_entropy(er.ErasureContext(code, 0.0))
        v1, _ = er.bec_conditional_entropy(er.ErasureContext(code, 1.0))
        assert v0 == 0.0
        assert v1 == code.n - code.k  # dual dimension

    def test_exact_matches_monte_carlo(self):
        code = cd.random_linear(10, 5, seed=4)
        exact, _ = er.bec_conditional_entropy(er.ErasureContext(code, 0.4))
        est, err = er.bec_conditional_entropy(
            er.ErasureContext(code, 0.4, mode="mc", trials=4000, seed=1))
        assert abs(est - exact) <= 3 * err

    def test_monotone_in_lambda(self):
        code = cd.random_linear(9, 4, seed=5)
        grid = np.linspace(0, 1, 11)
        vals = [er.bec_conditional_entropy(er.ErasureContext(code, lam))[0]
                for lam in grid]
        assert all(u <= v + 1e-12 for u, v in zip(vals, vals[1:]))

    def test_exact_rational_evaluation(self):
        code = cd.parity(3)
        assert er.bec_conditional_entropy_exact_fraction(
            code, Fraction(1, 4)) == Fraction(1, 64)

    def test_budget_guard(self):
        code = cd.random_linear(24, 4, seed=0)
        with pytest.raises(cd.BudgetExceeded):
            er.ErasureContext(code, 0.5)

    def test_mc_reproducible(self):
        code = cd.random_linear(12, 5, seed=6)
        a = er.bec_conditional_entropy(
            er.ErasureContext(code, 0.3, mode="mc", trials=500, seed=7))
        b = er.bec_conditional_entropy(
            er.ErasureContext(code, 0.3, mode="mc", trials=500, seed=7))
        assert a == b


class TestSmoothingErasureBound:
    def test_full_space_trivial(self):
        rep = er.smoothing_erasure_report(cd.full_space(6), 0.1, 1)
        assert rep.passed
        assert abs(rep.lhs) < 1e-9

    def test_hamming_three_orders(self, hamming7):
        for alpha in (1, 2, INF):
            rep = er.smoothing_erasure_report(hamming7, 0.1, alpha)
            assert rep.passed, rep.line()

    def test_random_codes_all_orders(self):
        rng = seeded_rng(54)
        for _ in range(8):
            code = random_linear_code(rng, 12)
            for delta in (0.05, 0.1, 0.2):
                for alpha in (1, 2, 3, INF):
                    rep = er.smoothing_erasure_report(code, delta, alpha)
                    assert rep.passed, rep.line()

    def test_unsupported_order(self):
        with pytest.raises(ValueError):
            er.erasure_noise_level(1.5, 0.1)
        with pytest.raises(ValueError):
            er.erasure_noise_level(2.5, 0.1)

    def test_noise_level_values(self):
        assert math.isclose(er.erasure_noise_level(1, 0.1), 0.64)
        assert math.isclose(er.erasure_noise_level(2, 0.1),
                            1 - kn.binary_renyi(2, 0.1))
        assert math.isclose(er.erasure_noise_level(INF, 0.1),
                            1 + math.log2(0.9))


class TestConditionalAverage:
    def test_matches_subcube_convolution(self):
        rng = seeded_rng(55)
        for n in (4, 6, 8):
            f = rng.random(1 << n)
            for _ in range(5):
                g = int(rng.integers(0, 1 << n))
                coords = [c for c in range(n) if (g >> c) & 1]
                via_avg = er.conditional_average(f, coords)
                kernel = kn.Kernel.subcube(n, coords)
                via_conv = hc.convolve(f, kernel.lift())
                assert np.allclose(via_avg, via_conv, atol=1e-12)

    def test_definition_direct(self):
        rng = seeded_rng(56)
        n = 5
        f = rng.random(1 << n)
        coords = [0, 3]
        mask = sum(1 << c for c in coords)
        avg = er.conditional_average(f, coords)
        for x in range(1 << n):
            fiber = [f[y] for y in range(1 << n) if (y & mask) == (x & mask)]
            assert math.isclose(avg[x], sum(fiber) / len(fiber), rel_tol=1e-12)

    def test_exact_mode(self):
        f = np.empty(4, dtype=object)
        f[:] = [Fraction(1, 3), Fraction(1, 6), Fraction(1, 4), Fraction(1, 4)]
        avg = er.conditional_average(f, [0])
        assert avg[0] == (Fraction(1, 3) + Fraction(1, 4)) / 2


class TestSubcubeAverageInequalities:
    def test_constant_function_equality(self):
        f = np.full(256, 1.7)
        rep = er.noisy_entropy_report(f, 0.2)
        assert rep.passed and abs(rep.lhs) < 1e-12 and abs(rep.rhs) < 1e-12
        rep = er.noisy_norm_report(f, 0.2, 2)
        assert rep.passed
        assert math.isclose(rep.lhs, math.log2(1.7))
        assert math.isclose(rep.rhs, math.log2(1.7))

    def test_code_indicator_rhs_equals_erasure_entropy(self, hamming7):
        # the norm expectation of the scaled code pmf reproduces the BEC
        # conditional entropy of the dual, independently of alpha
        lam = 0.37
        bec, _ = er.bec_conditional_entropy(er.ErasureContext(hamming7, lam))
        for alpha in (2, 3, 4):
            val = er.conditional_norm_expectation(hamming7, lam, alpha)
            assert math.isclose(val, bec, abs_tol=1e-9), (alpha, val, bec)

    def test_inequalities_on_code_function(self, hamming7):
        f = hamming7.pmf() * (1 << 7)
        rep = er.noisy_norm_report(f, 0.1, 2)
        assert rep.passed

    def test_random_functions(self):
        rng = seeded_rng(57)
        for _ in range(10):
            f = rng.random(256) * 2
            for delta in (0.1, 0.3):
                assert er.noisy_entropy_report(f, delta).passed
                for alpha in (2, 3):
                    assert er.noisy_norm_report(f, delta, alpha).passed

    def test_sup_norm_variant(self):
        rng = seeded_rng(58)
        f = rng.random(64) + 0.1
        rep = er.noisy_norm_report(f, 0.2, INF)
        assert rep.passed

    def test_entropy_functional_values(self):
        # Ent[f] = mean(f log2(f / mean f)); pmf scaling gives divergence
        f = np.zeros(8)
        f[0] = 8.0  # 2^n * point mass
        assert math.isclose(er.entropy_functional(f), 3.0)
        with pytest.raises(ValueError):
            er.entropy_functional(np.array([-1.0, 1.0]))
