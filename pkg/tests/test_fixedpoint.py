"""Rescaling-operator tests: exact fixed points, contraction, divergence."""

import numpy as np
import pytest

from orthostab.fixedpoint import (ScalingOperator, apply, apriori_bound,
                                  iterate)
from orthostab.funcspace import (MapHandle, make_grid, map_sum, sup_distance,
                                 zero_map)
from orthostab.perturb import (make_additive, make_bounded_noise,
                               make_cubic_growth, make_quadratic)


@pytest.fixture
def grid():
    return make_grid(3, 48, 8.0, seed=0)


def noisy_odd(delta=1e-2, seed=3):
    a = make_additive(np.array([[0.3, -0.2, 0.1],
                                [0.0, 0.5, -0.4],
                                [0.2, 0.2, 0.2]]))
    n = make_bounded_noise(delta, seed, 3, 3, parity="odd")
    return map_sum(a, n)


def noisy_even(delta=1e-2, seed=3):
    p = make_quadratic(np.stack([0.4 * np.eye(3), np.diag([0.1, 0.3, 0.2]),
                                 0.25 * np.eye(3)]))
    n = make_bounded_noise(delta, seed, 3, 3, parity="even")
    return map_sum(p, n)


class TestOperator:
    def test_lam_range(self):
        with pytest.raises(ValueError):
            ScalingOperator(0.0)
        with pytest.raises(ValueError):
            ScalingOperator(1.0)

    def test_apply_requires_anchored(self):
        const = MapHandle(
            lambda p: np.ones(p.shape[:-1] + (2,)), 2, 2, parity="even")
        with pytest.raises(ValueError):
            apply(ScalingOperator(0.5), const)

    def test_apply_values(self):
        a = make_additive(np.eye(2))
        j = apply(ScalingOperator(0.5), a)
        pts = np.array([[1.0, 2.0], [-3.0, 0.5]])
        assert np.array_equal(j(pts), 0.5 * a(2.0 * pts))
        assert j.parity == "odd"

    def test_apply_zero(self):
        z = zero_map(2, 2)
        assert apply(ScalingOperator(0.5), z) is z


class TestExactFixedPoints:
    def test_additive_fixed_under_half(self, grid):
        a = make_additive(np.array([[1.0, 2.0, 0.0], [0.5, 0.0, 1.0],
                                    [0.0, 0.3, 0.7]]))
        res = iterate(ScalingOperator(0.5), a, grid)
        assert res.verdict == "converged"
        assert res.n_steps == 0
        assert res.limit is a
        assert res.raw_gaps == [0.0]

    def test_quadratic_fixed_under_quarter(self, grid):
        p = make_quadratic(np.stack([np.eye(3), 0.5 * np.eye(3)] + [
            np.diag([1.0, 2.0, 3.0])]))
        res = iterate(ScalingOperator(0.25), p, grid)
        assert res.verdict == "converged"
        assert res.n_steps == 0
        assert res.limit is p


class TestConvergence:
    def test_noisy_converges(self, grid):
        phi = noisy_odd()
        res = iterate(ScalingOperator(0.5), phi, grid)
        assert res.verdict == "converged"
        assert res.converged
        assert res.n_steps > 0
        assert res.limit.parity == "odd"
        # the limit is numerically a fixed point on the base grid
        j = apply(ScalingOperator(0.5), res.limit)
        assert sup_distance(res.limit, j, grid) <= 4e-10

    @pytest.mark.parametrize("lam,phi_parity", [(0.5, "odd"),
                                                (0.25, "even")])
    def test_per_step_contraction(self, grid, lam, phi_parity):
        a = make_additive(0.4 * np.eye(3))
        n = make_bounded_noise(5e-3, 11, 3, 3, parity=phi_parity)
        phi = map_sum(a, n) if phi_parity == "odd" else map_sum(
            make_quadratic(np.stack([0.4 * np.eye(3)] * 3)), n)
        res = iterate(ScalingOperator(lam), phi, grid)
        assert res.verdict == "converged"
        d = res.per_step_distances
        for i in range(len(d)):
            assert d[i] <= lam ** i * d[0] + 1e-10
        # consecutive monotone decay as well
        for i in range(len(d) - 1):
            assert d[i + 1] <= lam * d[i] + 1e-16

    def test_gap_sequence_lengths(self, grid):
        phi = noisy_odd()
        res = iterate(ScalingOperator(0.5), phi, grid)
        assert len(res.per_step_distances) == len(res.raw_gaps)
        assert len(res.raw_gaps) == res.n_steps + 1


class TestDivergence:
    def test_cubic_diverges(self, grid):
        cub = make_cubic_growth(1.0, 3, 3)
        res = iterate(ScalingOperator(0.25), cub, grid)
        assert res.verdict == "diverged"
        assert not res.converged
        assert res.limit is None
        # raw gaps double each level: 8x growth against a 1/4 contraction
        rg = res.raw_gaps
        assert len(rg) >= 4
        for i in range(1, len(rg)):
            assert rg[i] == pytest.approx(2.0 * rg[i - 1], rel=1e-12)

    def test_cubic_diverges_under_half_too(self, grid):
        cub = make_cubic_growth(1.0, 3, 3)
        res = iterate(ScalingOperator(0.5), cub, grid)
        assert res.verdict == "diverged"

    def test_budget_exhaustion(self, grid):
        phi = noisy_odd(delta=1e-2)
        res = iterate(ScalingOperator(0.5), phi, grid, tol=1e-30, n_max=5)
        assert res.verdict == "iteration-budget-exhausted"
        assert not res.converged
        assert res.limit is not None  # best iterate so far is still usable


class TestAprioriBound:
    def test_literal_definition(self, grid):
        phi = noisy_odd()
        op = ScalingOperator(0.5)
        want = sup_distance(phi, apply(op, phi), grid) / 0.5
        assert apriori_bound(phi, op, grid) == want

    def test_bounds_distance_to_limit(self, grid):
        # the certificate applies to the matched parity class only:
        # odd data under the halving operator, even data under the
        # quartering one.  Mismatched combos have unbounded distance
        # to their limit and the grid bound says nothing about them.
        runs = [(0.5, noisy_odd(seed=0)), (0.5, noisy_odd(seed=5)),
                (0.25, noisy_even(seed=0)), (0.25, noisy_even(seed=5))]
        for lam, phi in runs:
            op = ScalingOperator(lam)
            res = iterate(op, phi, grid)
            assert res.verdict == "converged"
            d = sup_distance(phi, res.limit, grid)
            assert d <= apriori_bound(phi, op, grid) + 1e-10
