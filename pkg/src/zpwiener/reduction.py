"""Constructive reductions: balanced hyperplane and line search, restriction to
a line, short-interval dilation of a support, and the coordinate-separating
linear map that takes Z_p^d problems down to Z_p.

The hyperplane search is derandomized: the second-moment argument guarantees a
hyperplane whose intersection count deviates from the expected density by less
than sqrt(density) * p^{(d-1)/2}, so an exhaustive scan over all (direction, u)
pairs always finds one, and ties are broken lexicographically for
reproducibility.  A seeded sampling mode exists for when the direction count
is too large to scan.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .config import DEFAULT_CONFIG
from .errors import BudgetError
from .fourier import SparseFunction, wiener_norm
from .groups import (
    AffineMap,
    GroupContext,
    Hyperplane,
    Line,
    Point,
    canonical_abs,
    canonical_direction,
    enumerate_directions,
    signed_rep,
)


@dataclass(frozen=True)
class BalanceReport:
    """How far a hyperplane or line count sits from its density target.

    deviation = |count - target|, bound = sqrt(density) * p^{(codim space)/2}
    is the guaranteed-achievable deviation, theta = deviation / bound.
    """

    found: object
    count: int
    target: float
    deviation: float
    bound: float
    theta: float


def _normalize_set(points: Iterable, ctx: GroupContext) -> list[Point]:
    return sorted({ctx.point(x) for x in points})


def find_balanced_hyperplane(
    points: Iterable,
    ctx: GroupContext,
    mode: str = "exhaustive",
    seed: Optional[int] = None,
    max_draws: int = 100_000,
    direction_cap: int = DEFAULT_CONFIG.direction_cap,
) -> BalanceReport:
    """A hyperplane whose |A intersect L| deviates least from density * p^{d-1}.

    Exhaustive mode scans every (direction, u) pair in lexicographic order and
    returns the first minimizer; the returned deviation is always at most the
    bound.  Sampled mode draws uniform pairs until one meets the bound.
    """
    if ctx.d < 2:
        raise ValueError("hyperplane balancing needs d >= 2")
    pts = _normalize_set(points, ctx)
    if not pts:
        raise ValueError("point set must be nonempty")
    p = ctx.p
    density = len(pts) / ctx.size
    target = density * p ** (ctx.d - 1)
    bound = math.sqrt(density) * p ** ((ctx.d - 1) / 2)
    arr = np.array(pts, dtype=np.int64)

    def counts_for(eta: Point) -> np.ndarray:
        dots = (arr @ np.array(eta, dtype=np.int64)) % p
        return np.bincount(dots, minlength=p)

    if mode == "exhaustive":
        best: Optional[tuple[float, Point, int, int]] = None
        for eta in enumerate_directions(ctx, cap=direction_cap):
            counts = counts_for(eta)
            for u in range(p):
                dev = abs(float(counts[u]) - target)
                if best is None or dev < best[0]:
                    best = (dev, eta, u, int(counts[u]))
        dev, eta, u, count = best
        return BalanceReport(
            Hyperplane(ctx, eta, u), count, target, dev, bound, dev / bound
        )
    if mode == "sampled":
        rng = np.random.default_rng(seed)
        for _ in range(max_draws):
            vec = tuple(int(c) for c in rng.integers(0, p, size=ctx.d))
            if all(c == 0 for c in vec):
                continue
            eta = canonical_direction(ctx, vec)
            u = int(rng.integers(0, p))
            count = int(counts_for(eta)[u])
            dev = abs(count - target)
            if dev <= bound:
                return BalanceReport(
                    Hyperplane(ctx, eta, u), count, target, dev, bound, dev / bound
                )
        raise RuntimeError(f"sampled mode found no balanced hyperplane in {max_draws} draws")
    raise ValueError(f"unknown mode {mode!r}")


def _flatten_map(ctx: GroupContext, hyperplane: Hyperplane) -> AffineMap:
    """Invertible affine map sending {x . eta = u} onto {last coordinate = 0}.

    Rows are the standard basis vectors skipping eta's pivot column, with eta
    itself as the last row and -u as the last shift component.
    """
    d, p = ctx.d, ctx.p
    pivot = next(i for i, c in enumerate(hyperplane.eta) if c != 0)
    rows = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d) if i != pivot]
    rows.append(hyperplane.eta)
    shift = (0,) * (d - 1) + ((-hyperplane.u) % p,)
    out = AffineMap(ctx, tuple(rows), shift)
    assert out.is_invertible()
    return out


@dataclass(frozen=True)
class LineSearchResult:
    """A balanced line with the exact per-step bookkeeping that produced it."""

    line: Line
    steps: tuple[BalanceReport, ...]
    count: int
    base_density: float
    line_density: float
    composed_bound: float  # sum of per-step density deviations guaranteed


def find_balanced_line(
    points: Iterable,
    ctx: GroupContext,
    min_density_const: Optional[float] = DEFAULT_CONFIG.line_density_const,
    direction_cap: int = DEFAULT_CONFIG.direction_cap,
) -> LineSearchResult:
    """Iterate balanced-hyperplane steps down to a line in Z_p^d.

    After each step an invertible coordinate change flattens the found
    hyperplane onto a coordinate subspace; the accumulated changes pull the
    final chart line back to original coordinates.  Every step's report obeys
    theta <= 1, and the line's density deviates from the base density by at
    most the sum of per-step bounds (tracked exactly, no asymptotics).
    """
    if ctx.d < 2:
        raise ValueError("line search needs d >= 2")
    pts = _normalize_set(points, ctx)
    if not pts:
        raise ValueError("point set must be nonempty")
    p = ctx.p
    base_density = len(pts) / ctx.size
    if min_density_const is not None and base_density < min_density_const / p:
        raise ValueError(
            f"density {base_density:.6g} below required {min_density_const}/p"
        )

    steps: list[BalanceReport] = []
    flatten_maps: list[AffineMap] = []
    cur_pts = pts
    composed_bound = 0.0
    for dim in range(ctx.d, 1, -1):
        cur_ctx = GroupContext(p, dim)
        report = find_balanced_hyperplane(
            cur_pts, cur_ctx, mode="exhaustive", direction_cap=direction_cap
        )
        steps.append(report)
        composed_bound += report.bound / p ** (dim - 1)
        if dim == 2:
            break
        flat = _flatten_map(cur_ctx, report.found)
        flatten_maps.append(flat)
        cur_pts = sorted(
            flat(x)[: dim - 1] for x in cur_pts if report.found.contains(x)
        )
        if not cur_pts:
            raise ValueError("balanced hyperplane missed the whole set; density too low")

    # parametrize the final chart hyperplane of Z_p^2 as a line
    last = steps[-1].found
    eta, u = last.eta, last.u
    chart_ctx = GroupContext(p, 2)
    direction = ((-eta[1]) % p, eta[0])
    pivot = next(i for i, c in enumerate(eta) if c != 0)
    base = [0, 0]
    base[pivot] = u * pow(eta[pivot], -1, p) % p
    b, c = chart_ctx.point(direction), chart_ctx.point(base)

    # lift back through the recorded coordinate changes, innermost first
    for flat in reversed(flatten_maps):
        inv = flat.inverse()
        b = inv.apply_linear(b + (0,))
        c = inv(c + (0,))
    line = Line(ctx, b, c)

    count = sum(1 for x in pts if line.contains(x))
    assert count == steps[-1].count
    return LineSearchResult(
        line, tuple(steps), count, base_density, count / p, composed_bound
    )


def restrict_to_line(f: SparseFunction, line: Line) -> SparseFunction:
    """The one-variable function u -> f(u * direction + base) on Z_p."""
    ctx = f.ctx
    if line.ctx != ctx:
        raise ValueError("line and function live on different groups")
    p = ctx.p
    pivot = next(i for i, c in enumerate(line.direction) if c != 0)
    inv = pow(line.direction[pivot], -1, p)
    out = {}
    for x, v in f.entries.items():
        u = (x[pivot] - line.base[pivot]) * inv % p
        if line.point_at(u) == x:
            out[(u,)] = v
    return SparseFunction(GroupContext(p, 1), out)


# ---------------------------------------------------------------------------
# short-interval dilation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirichletRescaling:
    """A dilation q pushing every residue of a set into a short interval."""

    q: int
    max_abs: int
    bound: float
    rescaled_support: tuple[int, ...]

    def __post_init__(self):
        if self.q == 0:
            raise ValueError("dilation must be nonzero")
        if self.max_abs > self.bound:
            raise ValueError("rescaling violates its own bound")


def find_dirichlet_q(
    lams: Iterable[int],
    ctx: GroupContext,
    scan_cap: int = DEFAULT_CONFIG.q_scan_cap,
) -> DirichletRescaling:
    """Smallest q in [1, p) with |q*lam| <= p^{1 - 1/n} for every lam.

    Existence below p is a pigeonhole fact, and the scan walks q upward from
    1, so any hit is the global minimum.  The bound test is exact integer
    arithmetic, max_abs^n <= p^{n-1}.  The cap only limits how far the scan
    may walk before giving up with a budget error.
    """
    if ctx.d != 1:
        raise ValueError("dilation search runs over Z_p (d = 1)")
    p = ctx.p
    vals = sorted({int(l) % p for l in lams})
    if not vals or 0 in vals:
        raise ValueError("the set must be nonempty and must not contain 0")
    n = len(vals)
    bound = p ** (1.0 - 1.0 / n)
    limit = min(p, scan_cap)
    for q in range(1, limit):
        max_abs = max(canonical_abs(q * l, p) for l in vals)
        if max_abs**n <= p ** (n - 1):
            return DirichletRescaling(
                q, max_abs, bound,
                tuple(sorted(signed_rep(q * l, p) for l in vals)),
            )
    raise BudgetError(f"no dilation found scanning q < {limit}")


@dataclass(frozen=True)
class RescaleResult:
    """A dilated copy of a function whose support sits in a short interval."""

    function: SparseFunction
    support_signed: tuple[int, ...]
    q: int
    within_third: bool  # support contained in [-p/3, p/3]
    rescaling: DirichletRescaling


def rescale_to_short_interval(
    f: SparseFunction,
    lams: Optional[Iterable[int]] = None,
    scan_cap: int = DEFAULT_CONFIG.q_scan_cap,
) -> RescaleResult:
    """Dilate f so its support lands near zero, driven by a dissociated core.

    lams defaults to the greedy maximal dissociated subset of supp f; every
    support point must be a {-1,0,1} combination of lams (automatic for an
    inclusion-maximal dissociated subset).  The result records, rather than
    assumes, whether the dilated support fits inside [-p/3, p/3]: that
    containment is an asymptotic fact and can fail at small p.
    """
    ctx = f.ctx
    if ctx.d != 1:
        raise ValueError("short-interval rescaling runs over Z_p (d = 1)")
    if not len(f):
        raise ValueError("function must have nonempty support")
    p = ctx.p
    from .energy import additive_dimension  # local import to avoid a cycle

    if lams is None:
        _, core = additive_dimension(f.support, ctx, mode="greedy")
        lam_vals = [x[0] for x in core]
    else:
        lam_vals = sorted({int(l) % p for l in lams})
    # every support point must be reachable as a signed subset sum of the core
    reach = {0}
    for l in lam_vals:
        reach |= {(s + l) % p for s in reach} | {(s - l) % p for s in reach}
    missing = [x for x in f.support if x[0] not in reach]
    if missing:
        raise ValueError(
            f"support points {missing[:3]} are not {{-1,0,1}} combinations of the core"
        )
    resc = find_dirichlet_q(lam_vals, ctx, scan_cap=scan_cap)
    q = resc.q
    dilated = SparseFunction(ctx, {(q * x[0]) % p: v for x, v in f.entries.items()})
    support_signed = tuple(sorted(signed_rep(x[0], p) for x in dilated.support))
    within = max(abs(b) for b in support_signed) * 3 <= p
    return RescaleResult(dilated, support_signed, q, within, resc)


# ---------------------------------------------------------------------------
# coordinate separation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeparatingMap:
    """Invertible linear map making first coordinates of a set distinct."""

    map: AffineMap
    row: Point
    first_coords: tuple[int, ...]


def find_separating_map(points: Iterable, ctx: GroupContext) -> SeparatingMap:
    """Lexicographically smallest first row t with t.(a_i - a_j) != 0 for all
    pairs, completed to an invertible matrix by standard basis rows.

    Requires |A|^2 < 2p, which makes the number of pairs smaller than p and
    guarantees a valid t exists.
    """
    if ctx.d < 2:
        raise ValueError("coordinate separation needs d >= 2")
    pts = _normalize_set(points, ctx)
    n = len(pts)
    if n * n >= 2 * ctx.p:
        raise ValueError(
            f"|A| = {n} violates the smallness hypothesis |A| < sqrt(2p) for p = {ctx.p}"
        )
    deltas = [ctx.sub(a, b) for a, b in itertools.combinations(pts, 2)]
    row = None
    for t in ctx.points():
        if all(c == 0 for c in t):
            continue
        if all(ctx.dot(t, delta) != 0 for delta in deltas):
            row = t
            break
    assert row is not None, "a separating row must exist under the hypothesis"
    pivot = next(i for i, c in enumerate(row) if c != 0)
    rows = [row] + [
        tuple(1 if j == i else 0 for j in range(ctx.d))
        for i in range(ctx.d)
        if i != pivot
    ]
    tmap = AffineMap(ctx, tuple(rows))
    assert tmap.is_invertible()
    first = tuple(ctx.dot(row, a) for a in pts)
    assert len(set(first)) == n
    return SeparatingMap(tmap, row, first)


def pushforward(f: SparseFunction, tmap: AffineMap) -> SparseFunction:
    """h(x) = f(tmap^{-1} x); support maps forward, Wiener norm is preserved."""
    if not tmap.is_invertible():
        raise ValueError("pushforward requires an invertible map")
    return SparseFunction(f.ctx, {tmap(x): v for x, v in f.entries.items()})


@dataclass(frozen=True)
class SeparationBound:
    """Both sides of the separated inner-sum inequality:

    wiener_norm(f) equals the average over the remaining frequencies of the
    one-dimensional Wiener norm of the twisted projection, hence dominates
    the minimum.
    """

    separating: SeparatingMap
    norm: float
    min_inner: float
    mean_inner: float
    inner_norms: tuple[float, ...]


def separated_projection_bound(f: SparseFunction) -> SeparationBound:
    """Compare wiener_norm(f) with the projected one-dimensional norms.

    After separating first coordinates, fixing the other frequency components
    twists the projected function by a unimodular factor; each twist gives a
    one-dimensional Wiener norm and f's norm is their exact average.
    """
    ctx = f.ctx
    sep = find_separating_map(f.support, ctx)
    h = pushforward(f, sep.map)
    p = ctx.p
    by_first = {a[0]: a for a in h.support}
    line_ctx = GroupContext(p, 1)
    inner = []
    for xi_rest in itertools.product(range(p), repeat=ctx.d - 1):
        entries = {}
        for x, a in by_first.items():
            phase = sum(ai * xi for ai, xi in zip(a[1:], xi_rest)) % p
            entries[(x,)] = h[a] * np.exp(-2j * np.pi * phase / p)
        inner.append(wiener_norm(SparseFunction(line_ctx, entries)))
    norm = wiener_norm(f)
    return SeparationBound(
        sep, norm, min(inner), sum(inner) / len(inner), tuple(inner)
    )
