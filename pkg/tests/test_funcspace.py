"""Map-handle algebra: parity projections, sums, grids, sup distances."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthostab.funcspace import (INFINITE, EvaluationError, MapHandle,
                                 SampleGrid, even_part, make_grid, map_scale,
                                 map_sum, odd_part, shift_to_zero,
                                 sup_distance, sup_norm, zero_map)
from orthostab.orthogonality import DimensionMismatchError


def linear(mat, **kw):
    m = np.asarray(mat, float)
    return MapHandle(lambda p: p @ m.T, m.shape[1], m.shape[0], **kw)


class TestMapHandle:
    def test_call_shapes(self):
        f = linear(np.eye(3))
        assert f(np.zeros(3)).shape == (3,)
        assert f(np.zeros((7, 3))).shape == (7, 3)
        assert f(np.zeros((2, 5, 3))).shape == (2, 5, 3)

    def test_dim_check(self):
        f = linear(np.eye(3))
        with pytest.raises(DimensionMismatchError):
            f(np.zeros((4, 2)))

    def test_bad_output_shape(self):
        f = MapHandle(lambda p: np.zeros(p.shape[:-1] + (5,)), 3, 2)
        with pytest.raises(EvaluationError):
            f(np.zeros((4, 3)))

    def test_value_at_zero_cached(self):
        calls = []

        def fn(p):
            calls.append(1)
            return p.sum(axis=-1, keepdims=True) + 1.0

        f = MapHandle(fn, 2, 1)
        assert f.value_at_zero == 1.0
        assert f.value_at_zero == 1.0
        assert len(calls) == 1

    def test_construction_validation(self):
        with pytest.raises(ValueError):
            MapHandle(None, 2, 2)
        with pytest.raises(ValueError):
            MapHandle(lambda p: p, 2, 2, parity="sideways")


class TestAlgebra:
    def test_sum_evaluates_left_to_right(self):
        a = linear(2.0 * np.eye(2))
        b = linear(3.0 * np.eye(2))
        s = map_sum(a, b)
        pts = np.array([[1.0, -1.0]])
        assert np.array_equal(s(pts), a(pts) + b(pts))

    def test_sum_flattens_and_drops_zero(self):
        a = linear(np.eye(2))
        b = linear(np.eye(2))
        inner = map_sum(a, b)
        outer = map_sum(inner, zero_map(2, 2), a)
        assert outer.terms == (a, b, a)

    def test_sum_collapse_preserves_identity(self):
        a = linear(np.eye(2))
        assert map_sum(a, zero_map(2, 2)) is a
        z = map_sum(zero_map(2, 2), zero_map(2, 2))
        assert z.is_zero_map

    def test_sum_parity_combination(self):
        a = linear(np.eye(2), parity="odd")
        b = linear(np.eye(2), parity="odd")
        c = linear(np.eye(2), parity="even")
        assert map_sum(a, b).parity == "odd"
        assert map_sum(a, c).parity is None

    def test_scale(self):
        a = linear(np.eye(2))
        assert map_scale(0.0, a).is_zero_map
        assert map_scale(1.0, a) is a
        pts = np.array([[2.0, 3.0]])
        assert np.array_equal(map_scale(-2.0, a)(pts), -2.0 * a(pts))

    def test_scale_distributes(self):
        a = linear(np.eye(2), parity="odd")
        b = linear(2 * np.eye(2), parity="odd")
        s = map_scale(3.0, map_sum(a, b))
        assert s.terms is not None and len(s.terms) == 2
        assert s.parity == "odd"

    def test_operator_sugar(self):
        a = linear(np.eye(2))
        b = linear(np.eye(2))
        pts = np.array([[1.0, 2.0]])
        assert np.array_equal((a + b)(pts), 2.0 * a(pts))
        assert np.array_equal((a - b)(pts), np.zeros((1, 2)))
        assert np.array_equal((2.0 * a)(pts), 2.0 * a(pts))
        assert np.array_equal((-a)(pts), -a(pts))

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            map_sum(linear(np.eye(2)), linear(np.eye(3)))


class TestParity:
    def test_structural_shortcuts(self):
        ev = linear(np.eye(2), parity="even")
        od = linear(np.eye(2), parity="odd")
        assert even_part(ev) is ev
        assert odd_part(od) is od
        assert even_part(od).is_zero_map
        assert odd_part(ev).is_zero_map

    def test_terms_distribute(self):
        ev = linear(np.eye(2), parity="even")
        od = linear(2 * np.eye(2), parity="odd")
        s = map_sum(ev, od)
        assert even_part(s) is ev
        assert odd_part(s) is od

    def test_pointwise_formula(self):
        f = MapHandle(lambda p: (p + 1.0) ** 3, 2, 2)
        pts = np.random.default_rng(0).normal(size=(9, 2))
        fe, fo = even_part(f), odd_part(f)
        assert np.allclose(fe(pts), 0.5 * (f(pts) + f(-pts)))
        assert np.allclose(fo(pts), 0.5 * (f(pts) - f(-pts)))
        assert fe.parity == "even" and fo.parity == "odd"

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10 ** 6))
    def test_projections_recompose(self, seed):
        rng = np.random.default_rng(seed)
        m = rng.normal(size=(2, 3))

        f = MapHandle(lambda p: np.tanh(p @ m.T) + (p @ m.T) ** 2, 3, 2)
        pts = rng.normal(size=(6, 3)) * 2.0
        total = even_part(f)(pts) + odd_part(f)(pts)
        assert np.allclose(total, f(pts), atol=1e-12)

    def test_zero_both_parities(self):
        z = zero_map(3, 2)
        assert even_part(z) is z
        assert odd_part(z) is z


class TestShift:
    def test_already_anchored_is_identity(self):
        f = linear(np.eye(2))
        assert shift_to_zero(f) is f

    def test_shift_removes_offset(self):
        f = MapHandle(lambda p: p.sum(-1, keepdims=True) + 5.0, 2, 1)
        g = shift_to_zero(f)
        assert np.all(g.value_at_zero == 0.0)
        pts = np.array([[1.0, 2.0]])
        assert np.allclose(g(pts), f(pts) - 5.0)

    def test_shift_keeps_odd_structure(self):
        od = linear(np.eye(2), parity="odd")
        const = MapHandle(
            lambda p: np.broadcast_to(np.array([1.0, 0.0]),
                                      p.shape[:-1] + (2,)).copy(),
            2, 2, parity="even")
        f = map_sum(od, const)
        g = shift_to_zero(f)
        # the odd projection of the shifted map resolves structurally
        assert odd_part(g) is od


class TestGrid:
    def test_make_grid(self):
        grid = make_grid(3, 16, 8.0, seed=0)
        assert grid.dim == 3
        assert len(grid) == 17
        assert np.all(grid.points[0] == 0.0)
        assert np.max(np.linalg.norm(grid.points, axis=1)) <= 8.0 + 1e-12

    def test_determinism(self):
        a = make_grid(3, 16, 8.0, seed=5)
        b = make_grid(3, 16, 8.0, seed=5)
        assert np.array_equal(a.points, b.points)

    def test_extra_points(self):
        extra = np.array([[1.0, 2.0, 3.0]])
        grid = make_grid(3, 4, 8.0, seed=0, extra_points=extra)
        assert np.any(np.all(grid.points == extra[0], axis=1))

    def test_origin_required(self):
        with pytest.raises(ValueError):
            SampleGrid(np.ones((3, 2)), 0, 8.0)


class TestSupDistance:
    def test_identical_objects_exact_zero(self):
        f = MapHandle(lambda p: np.sin(p), 2, 2)
        grid = make_grid(2, 8, 4.0, seed=0)
        assert sup_distance(f, f, grid) == 0.0

    def test_value(self):
        f = linear(np.eye(2))
        g = zero_map(2, 2)
        grid = make_grid(2, 32, 4.0, seed=0)
        want = float(np.max(np.linalg.norm(grid.points, axis=1)))
        assert sup_distance(f, g, grid) == pytest.approx(want, rel=1e-15)
        assert sup_norm(f, grid) == pytest.approx(want, rel=1e-15)

    def test_cap(self):
        f = map_scale(1e9, linear(np.eye(2)))
        grid = make_grid(2, 8, 8.0, seed=0)
        assert sup_distance(f, zero_map(2, 2), grid, cap=1e3) == INFINITE
        assert math.isinf(sup_norm(f, grid, cap=1e3))

    def test_non_finite_raises(self):
        f = MapHandle(lambda p: p / np.sum(p, axis=-1, keepdims=True), 2, 2)
        grid = make_grid(2, 8, 4.0, seed=1)  # row 0 divides by zero
        with np.errstate(invalid="ignore", divide="ignore"):
            with pytest.raises(EvaluationError):
                sup_distance(f, zero_map(2, 2), grid)

    def test_raw_points_accepted(self):
        f = linear(np.eye(2))
        pts = np.array([[3.0, 4.0]])
        assert sup_distance(f, zero_map(2, 2), pts) == 5.0
