import math

import numpy as np
import pytest

from zpwiener.fourier import SparseFunction, wiener_norm
from zpwiener.groups import GroupContext, Line, enumerate_directions
from zpwiener.reduction import (
    find_balanced_hyperplane,
    find_balanced_line,
    find_dirichlet_q,
    find_separating_map,
    pushforward,
    rescale_to_short_interval,
    restrict_to_line,
    separated_projection_bound,
)


def random_points(rng, ctx, size):
    flat = rng.choice(ctx.size, size, replace=False)
    return [
        tuple(int(c) for c in np.unravel_index(int(i), (ctx.p,) * ctx.d)) for i in flat
    ]


def all_lines(ctx):
    seen = set()
    lines = []
    for b in enumerate_directions(ctx):
        for c in ctx.points():
            line = Line(ctx, b, c)
            key = frozenset(line.points())
            if key not in seen:
                seen.add(key)
                lines.append(line)
    return lines


# ---------------------------------------------------------------------------
# hyperplane and line balancing
# ---------------------------------------------------------------------------


def test_balanced_hyperplane_diagonal():
    ctx = GroupContext(3, 2)
    report = find_balanced_hyperplane([(t, t) for t in range(3)], ctx)
    assert report.count == 1
    assert report.deviation == pytest.approx(0.0)


def test_balanced_hyperplane_uniform_set():
    ctx = GroupContext(3, 2)
    report = find_balanced_hyperplane(list(ctx.points()), ctx)
    assert report.count == 3
    assert report.deviation == pytest.approx(0.0)
    # every hyperplane is perfect for the full set
    for eta in enumerate_directions(ctx):
        for u in range(3):
            from zpwiener.groups import Hyperplane

            assert sum(Hyperplane(ctx, eta, u).contains(x) for x in ctx.points()) == 3


def test_balanced_hyperplane_single_point():
    ctx = GroupContext(5, 2)
    report = find_balanced_hyperplane([(2, 3)], ctx)
    assert report.target == pytest.approx(1 / 5)
    # hyperplanes through the point are off by 4/5; the best miss it entirely
    assert report.deviation == pytest.approx(1 / 5)
    assert report.theta <= 1.0


def test_balanced_hyperplane_theta_bound_random():
    rng = np.random.default_rng(0)
    for p, d in [(5, 2), (7, 2), (5, 3)]:
        ctx = GroupContext(p, d)
        for _ in range(10):
            size = int(rng.integers(1, ctx.size))
            report = find_balanced_hyperplane(random_points(rng, ctx, size), ctx)
            assert report.deviation <= report.bound + 1e-9
            assert report.count == pytest.approx(report.target, abs=report.bound + 1e-9)


def test_balanced_hyperplane_sampled_mode_is_seeded():
    ctx = GroupContext(7, 2)
    rng = np.random.default_rng(1)
    pts = random_points(rng, ctx, 20)
    a = find_balanced_hyperplane(pts, ctx, mode="sampled", seed=11)
    b = find_balanced_hyperplane(pts, ctx, mode="sampled", seed=11)
    assert a == b
    assert a.deviation <= a.bound + 1e-9


def test_line_search_d2_is_single_step():
    ctx = GroupContext(5, 2)
    rng = np.random.default_rng(2)
    pts = random_points(rng, ctx, 20)
    result = find_balanced_line(pts, ctx)
    assert len(result.steps) == 1
    assert result.count == result.steps[0].count
    assert set(result.line.points()) == set(result.steps[0].found.points())


def test_line_search_full_set_zero_deviation():
    ctx = GroupContext(5, 3)
    result = find_balanced_line(list(ctx.points()), ctx)
    assert result.count == 5
    assert all(step.deviation == pytest.approx(0.0) for step in result.steps)


def test_line_search_random_set_per_step_bounds():
    ctx = GroupContext(5, 3)
    rng = np.random.default_rng(3)
    pts = random_points(rng, ctx, 25)
    result = find_balanced_line(pts, ctx, min_density_const=1.0)
    for step in result.steps:
        assert step.theta <= 1.0 + 1e-12
    assert result.count == sum(1 for x in pts if result.line.contains(x))
    assert abs(result.line_density - result.base_density) <= result.composed_bound + 1e-12


def test_line_search_density_hypothesis():
    ctx = GroupContext(5, 3)
    with pytest.raises(ValueError, match="density"):
        find_balanced_line([(0, 0, 0)], ctx)  # default constant 4 demands 4/p


def test_line_pipeline_norm_monotone_end_to_end():
    ctx = GroupContext(5, 3)
    rng = np.random.default_rng(99)
    pts = random_points(rng, ctx, 100)
    mags = 1.0 + rng.random(100)
    phases = np.exp(2j * np.pi * rng.random(100))
    f = SparseFunction(ctx, dict(zip(pts, mags * phases)))
    result = find_balanced_line(f.support, ctx)
    restricted = restrict_to_line(f, result.line)
    assert restricted.support_size == result.count
    assert wiener_norm(f) >= wiener_norm(restricted) - 1e-9
    assert abs(result.line_density - result.base_density) <= result.composed_bound + 1e-12


# ---------------------------------------------------------------------------
# restriction to a line
# ---------------------------------------------------------------------------


def test_restriction_examples():
    ctx = GroupContext(5, 2)
    f = SparseFunction(ctx, {(1, 0): 2 - 1j})
    axis = Line(ctx, (1, 0), (0, 0))
    fl = restrict_to_line(f, axis)
    assert dict(fl.entries) == {(1,): 2 - 1j}

    ones = SparseFunction.indicator(GroupContext(3, 2), GroupContext(3, 2).points())
    for line in all_lines(GroupContext(3, 2)):
        fl = restrict_to_line(ones, line)
        assert fl.support_size == 3
        assert all(fl[(u,)] == 1 for u in range(3))


def test_restriction_norm_is_parametrization_invariant():
    ctx = GroupContext(5, 2)
    rng = np.random.default_rng(4)
    pts = random_points(rng, ctx, 8)
    vals = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    f = SparseFunction(ctx, dict(zip(pts, vals)))
    line = Line(ctx, (1, 2), (0, 3))
    # same point set, different parametrization: direction doubled, base shifted
    same = Line(ctx, (2, 4), (1, 0))
    assert set(line.points()) == set(same.points())
    a = wiener_norm(restrict_to_line(f, line))
    b = wiener_norm(restrict_to_line(f, same))
    assert a == pytest.approx(b, abs=1e-9)


def test_line_monotonicity_spot_checks():
    ctx = GroupContext(3, 2)
    rng = np.random.default_rng(5)
    for _ in range(10):
        size = int(rng.integers(1, 9))
        pts = random_points(rng, ctx, size)
        vals = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        f = SparseFunction(ctx, dict(zip(pts, vals)))
        norm = wiener_norm(f)
        for line in all_lines(ctx):
            assert norm >= wiener_norm(restrict_to_line(f, line)) - 1e-9


# ---------------------------------------------------------------------------
# short-interval dilation
# ---------------------------------------------------------------------------


def test_dirichlet_examples():
    ctx = GroupContext(101)
    assert find_dirichlet_q([1], ctx).q == 1
    found = find_dirichlet_q([1, 35], ctx)
    assert found.q == 3
    assert found.max_abs == 4
    assert found.rescaled_support == (3, 4)
    assert find_dirichlet_q([50], ctx).q == 2


def test_dirichlet_bound_and_minimality():
    from zpwiener.groups import canonical_abs

    rng = np.random.default_rng(6)
    for p in (101, 1009):
        ctx = GroupContext(p)
        for _ in range(10):
            n = int(rng.integers(1, 4))
            lams = [int(v) for v in rng.choice(np.arange(1, p), n, replace=False)]
            found = find_dirichlet_q(lams, ctx)
            assert found.max_abs**n <= p ** (n - 1)
            for q in range(1, found.q):
                assert max(canonical_abs(q * l, p) for l in lams) ** n > p ** (n - 1)


def test_dirichlet_rejects_zero():
    ctx = GroupContext(101)
    with pytest.raises(ValueError):
        find_dirichlet_q([0, 3], ctx)
    with pytest.raises(ValueError):
        find_dirichlet_q([], ctx)


def test_rescale_examples():
    ctx = GroupContext(101)
    single = SparseFunction(ctx, {7: 1.5})
    out = rescale_to_short_interval(single, [7])
    assert abs(out.support_signed[0]) <= 1

    f = SparseFunction.indicator(ctx, [1, 35])
    out2 = rescale_to_short_interval(f, [1, 35])
    assert out2.q == 3
    assert out2.support_signed == (3, 4)
    assert out2.within_third
    assert wiener_norm(out2.function) == pytest.approx(wiener_norm(f), abs=1e-9)


def test_rescale_norm_preserved_random():
    ctx = GroupContext(101)
    rng = np.random.default_rng(7)
    pts = sorted(int(i) for i in rng.choice(np.arange(1, 101), 5, replace=False))
    vals = np.exp(2j * np.pi * rng.random(5)) * (1 + rng.random(5))
    f = SparseFunction(ctx, dict(zip(pts, vals)))
    out = rescale_to_short_interval(f)  # greedy dissociated core
    assert out.function.support_size == f.support_size
    assert wiener_norm(out.function) == pytest.approx(wiener_norm(f), abs=1e-9)


def test_rescale_rejects_non_spanning_core():
    ctx = GroupContext(101)
    f = SparseFunction.indicator(ctx, [1, 50])
    with pytest.raises(ValueError, match="combinations"):
        rescale_to_short_interval(f, [1])


# ---------------------------------------------------------------------------
# coordinate separation
# ---------------------------------------------------------------------------


def test_separating_map_examples():
    ctx5 = GroupContext(5, 2)
    sep = find_separating_map([(0, 0), (0, 1)], ctx5)
    assert sep.row == (0, 1)
    assert sorted(sep.first_coords) == [0, 1]

    single = find_separating_map([(3, 4)], ctx5)
    assert single.row == (0, 1)  # smallest nonzero row, no constraints to meet

    ctx11 = GroupContext(11, 2)
    sep2 = find_separating_map([(1, 0), (2, 0), (3, 0)], ctx11)
    assert sep2.row == (1, 0)
    assert sorted(sep2.first_coords) == [1, 2, 3]


def test_separating_map_hypothesis_enforced():
    ctx = GroupContext(11, 2)
    too_big = [(i, 0) for i in range(5)]  # 25 >= 2*11
    with pytest.raises(ValueError, match="sqrt"):
        find_separating_map(too_big, ctx)


def test_pushforward_properties():
    ctx = GroupContext(5, 2)
    rng = np.random.default_rng(8)
    pts = random_points(rng, ctx, 6)
    vals = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    f = SparseFunction(ctx, dict(zip(pts, vals)))
    from zpwiener.groups import AffineMap

    t = AffineMap(ctx, ((1, 2), (3, 2)), (4, 1))
    h = pushforward(f, t)
    assert h.support == frozenset(t(x) for x in f.support)
    assert wiener_norm(h) == pytest.approx(wiener_norm(f), abs=1e-9)
    assert pushforward(f, AffineMap.identity(ctx)).entries == f.entries

    q_dilation = AffineMap.dilation(GroupContext(7), 3)
    g = SparseFunction(GroupContext(7), {1: 1.0, 2: -2.0})
    hg = pushforward(g, q_dilation)
    assert hg.support == frozenset({(3,), (6,)})
    assert wiener_norm(hg) == pytest.approx(wiener_norm(g), abs=1e-9)


def test_separated_projection_bound_small():
    for p in (11, 13):
        ctx = GroupContext(p, 2)
        rng = np.random.default_rng(p)
        size = int(math.isqrt(2 * p - 1))  # largest size allowed by |A|^2 < 2p
        pts = random_points(rng, ctx, size)
        vals = np.exp(2j * np.pi * rng.random(size))
        f = SparseFunction(ctx, dict(zip(pts, vals)))
        bound = separated_projection_bound(f)
        assert len(set(bound.separating.first_coords)) == size
        assert bound.norm >= bound.min_inner - 1e-9
        # the norm is exactly the average of the twisted projections
        assert bound.norm == pytest.approx(bound.mean_inner, abs=1e-9)
