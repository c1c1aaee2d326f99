"""Named inequality harness: every constant-free inequality in scope gets a
registered check that evaluates both sides exactly on generated or supplied
instances; asymptotic bounds with unspecified constants are monitored as
empirical ratios and never asserted.

Instances are plain JSON-able dicts so each report can carry a stable digest
of exactly what was tested; two runs with the same seed produce byte-identical
reports.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .config import DEFAULT_CONFIG, ToolConfig
from .energy import (
    ScatteredFamily,
    additive_dimension,
    level_sets,
    rudin_ratio,
    t_k_direct,
    t_k_int_set,
    t_k_spectral,
    scattered_energy_bound,
)
from .fourier import SparseFunction, wiener_norm
from .groups import GroupContext, Line
from .reduction import find_balanced_hyperplane, restrict_to_line


def digest(obj) -> str:
    """Stable 64-bit digest of a canonical JSON serialization."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class VerificationReport:
    """Both sides of a named inequality plus pass/fail and slack.

    For one-sided claims (lhs >= rhs) slack = lhs - rhs; for identities slack
    = -|lhs - rhs| so that pass <=> slack >= -tolerance holds in both cases.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    tolerance: float
    passed: bool
    digest: str

    def as_record(self) -> dict:
        return {
            "record": "check",
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "digest": self.digest,
        }


@dataclass(frozen=True)
class MonitorRecord:
    """An empirical ratio for a bound whose absolute constant is unspecified."""

    name: str
    ratio: float
    details: dict
    digest: str

    def as_record(self) -> dict:
        return {
            "record": "monitor",
            "name": self.name,
            "ratio": self.ratio,
            "details": self.details,
            "digest": self.digest,
        }


@dataclass(frozen=True)
class ScanRow:
    """One row of a Wiener-norm growth scan; ratio is norm / ln(size)."""

    p: int
    size: int
    structure: str
    wiener_norm: float
    log_size: float
    ratio: Optional[float]  # None flags sizes < 2 where the ratio is undefined

    def as_record(self) -> dict:
        return {
            "record": "scan",
            "p": self.p,
            "size": self.size,
            "structure": self.structure,
            "wiener_norm": self.wiener_norm,
            "log_size": self.log_size,
            "ratio": self.ratio,
        }


def _one_sided(name, lhs, rhs, tol_base, inst) -> VerificationReport:
    tol = tol_base * max(1.0, abs(lhs), abs(rhs))
    slack = lhs - rhs
    return VerificationReport(name, lhs, rhs, slack, tol, slack >= -tol, digest(inst))


def _identity(name, lhs, rhs, tol_base, inst) -> VerificationReport:
    tol = tol_base * max(1.0, abs(lhs), abs(rhs))
    slack = -abs(lhs - rhs)
    return VerificationReport(name, lhs, rhs, slack, tol, slack >= -tol, digest(inst))


# ---------------------------------------------------------------------------
# instance plumbing
# ---------------------------------------------------------------------------


def _fn_instance(f: SparseFunction, **extra) -> dict:
    entries = [
        {"x": list(x), "re": v.real, "im": v.imag}
        for x, v in sorted(f.entries.items())
    ]
    return {"p": f.ctx.p, "d": f.ctx.d, "entries": entries, **extra}


def _fn_from(inst: dict) -> SparseFunction:
    ctx = GroupContext(inst["p"], inst.get("d", 1))
    return SparseFunction(
        ctx, {tuple(e["x"]): complex(e["re"], e["im"]) for e in inst["entries"]}
    )


def _points_from(inst: dict, key: str = "points") -> tuple[GroupContext, list]:
    ctx = GroupContext(inst["p"], inst.get("d", 1))
    return ctx, [tuple(x) for x in inst[key]]


def _rand_points(rng, ctx: GroupContext, size: int) -> list[tuple[int, ...]]:
    flat = rng.choice(ctx.size, size=size, replace=False)
    return sorted(
        tuple(int(c) for c in np.unravel_index(int(i), (ctx.p,) * ctx.d))
        for i in flat
    )


def _rand_values(rng, size: int, kind: str) -> list[complex]:
    if kind == "indicator":
        return [1.0 + 0j] * size
    if kind == "unimodular":
        return [complex(np.exp(2j * np.pi * t)) for t in rng.random(size)]
    if kind == "gaussian":
        return [
            complex(a, b)
            for a, b in zip(rng.standard_normal(size), rng.standard_normal(size))
        ]
    if kind == "geq1":
        # unit-circle values scaled by dyadic magnitudes; the 1.01 floor keeps
        # |f| >= 1 safe from the rounding of the unit phase factor
        mags = 2.0 ** rng.integers(0, 5, size=size) * (1.01 + 0.98 * rng.random(size))
        phases = np.exp(2j * np.pi * rng.random(size))
        return [complex(m * z) for m, z in zip(mags, phases)]
    raise ValueError(f"unknown value kind {kind!r}")


def random_instance(kind: str, seed: int, **params) -> dict:
    """Deterministic generator for the public instance kinds."""
    rng = np.random.default_rng(seed)
    p = params.get("p", 101)
    d = params.get("d", 1)
    size = params.get("size", 5)
    ctx = GroupContext(p, d)
    if kind == "indicator":
        pts = _rand_points(rng, ctx, size)
        f = SparseFunction.indicator(ctx, pts)
        return _fn_instance(f, kind=kind)
    if kind == "unimodular-function":
        pts = _rand_points(rng, ctx, size)
        f = SparseFunction(ctx, dict(zip(pts, _rand_values(rng, size, "unimodular"))))
        return _fn_instance(f, kind=kind)
    if kind == "dissociated-candidate":
        pts = _rand_points(rng, ctx, size)
        return {"p": p, "d": d, "points": [list(x) for x in pts], "kind": kind}
    if kind == "product-pair":
        fa = SparseFunction(
            ctx,
            dict(zip(_rand_points(rng, ctx, size), _rand_values(rng, size, "gaussian"))),
        )
        gb = SparseFunction(
            ctx,
            dict(zip(_rand_points(rng, ctx, size), _rand_values(rng, size, "gaussian"))),
        )
        return {"kind": kind, "f": _fn_instance(fa), "g": _fn_instance(gb)}
    raise ValueError(f"unknown instance kind {kind!r}")


# ---------------------------------------------------------------------------
# registered checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckDef:
    evaluate: Callable[[dict, ToolConfig], VerificationReport]
    generate: Callable[[np.random.Generator, int], list]
    doc: str


_PRIMES = (5, 7, 11, 101)


def _gen_functions(kind: str, sizes=(2, 8)):
    def gen(rng, count):
        out = []
        for i in range(count):
            p = int(_PRIMES[i % len(_PRIMES)])
            ctx = GroupContext(p)
            size = int(rng.integers(sizes[0], min(sizes[1], p) + 1))
            pts = _rand_points(rng, ctx, size)
            f = SparseFunction(ctx, dict(zip(pts, _rand_values(rng, size, kind))))
            out.append(_fn_instance(f))
        return out

    return gen


def _eval_banach(inst, cfg):
    f, g = _fn_from(inst["f"]), _fn_from(inst["g"])
    lhs = wiener_norm(f) * wiener_norm(g)
    rhs = wiener_norm(f.pointwise_mul(g))
    return _one_sided("banach", lhs, rhs, cfg.norm_tol, inst)


def _gen_banach(rng, count):
    out = []
    for i in range(count):
        p = int(_PRIMES[i % len(_PRIMES)])
        ctx = GroupContext(p)
        size = int(rng.integers(1, min(8, p) + 1))
        fa = SparseFunction(
            ctx, dict(zip(_rand_points(rng, ctx, size), _rand_values(rng, size, "gaussian")))
        )
        size2 = int(rng.integers(1, min(8, p) + 1))
        gb = SparseFunction(
            ctx, dict(zip(_rand_points(rng, ctx, size2), _rand_values(rng, size2, "gaussian")))
        )
        out.append({"f": _fn_instance(fa), "g": _fn_instance(gb)})
    return out


def _eval_inversion(inst, cfg):
    f = _fn_from(inst)
    return _one_sided("inversion", wiener_norm(f), f.max_abs, cfg.norm_tol, inst)


def _eval_parseval_upper(inst, cfg):
    f = _fn_from(inst)
    return _one_sided("parseval-upper", f.l2_norm, wiener_norm(f), cfg.norm_tol, inst)


def _eval_complement(inst, cfg):
    ctx, pts = _points_from(inst)
    a = SparseFunction.indicator(ctx, pts)
    comp = SparseFunction.indicator(ctx, set(ctx.points()) - set(a.support))
    lhs = wiener_norm(a)
    rhs = wiener_norm(comp) + 2 * len(pts) / ctx.size - 1
    return _identity("complement-identity", lhs, rhs, cfg.norm_tol, inst)


def _gen_complement(rng, count):
    out = []
    for i in range(count):
        p = int(_PRIMES[i % len(_PRIMES)])
        ctx = GroupContext(p)
        size = int(rng.integers(1, p))
        out.append({"p": p, "d": 1, "points": [list(x) for x in _rand_points(rng, ctx, size)]})
    return out


def _eval_tk_identity(inst, cfg):
    f = _fn_from(inst)
    k = inst["k"]
    return _identity(
        "tk-identity", t_k_direct(f, k), t_k_spectral(f, k), cfg.energy_tol, inst
    )


def _gen_tk(rng, count):
    base = _gen_functions("gaussian", sizes=(1, 8))(rng, count)
    for i, inst in enumerate(base):
        inst["k"] = 1 + i % 3
    return base


def _eval_energy_lower(inst, cfg):
    """T_k(Q*f) >= |Q|^{2k} L^{4k} / (||f||_2^2 K^{2k-2}) with K the Wiener norm."""
    f = _fn_from(inst)
    k = inst["k"]
    q_pts = [tuple(x) for x in inst["q_points"]]
    g = f.restrict(q_pts)
    level = min(abs(g[x]) for x in q_pts)
    big_k = wiener_norm(f)
    lhs = t_k_direct(g, k)
    rhs = (
        len(q_pts) ** (2 * k)
        * level ** (4 * k)
        / (f.l2_norm**2 * big_k ** (2 * k - 2))
    )
    return _one_sided("energy-lower", lhs, rhs, cfg.energy_tol, inst)


def _gen_energy_lower(rng, count):
    out = []
    for i in range(count):
        p = int(_PRIMES[i % len(_PRIMES)])
        ctx = GroupContext(p)
        size = int(rng.integers(2, min(8, p) + 1))
        pts = _rand_points(rng, ctx, size)
        if i % 2:
            values = _rand_values(rng, size, "geq1")
        else:
            # adversarial: all mass concentrated in a single dyadic level
            level = 2.0 ** int(rng.integers(0, 4))
            mags = level * (1.01 + 0.89 * rng.random(size))
            phases = np.exp(2j * np.pi * rng.random(size))
            values = [complex(m * z) for m, z in zip(mags, phases)]
        f = SparseFunction(ctx, dict(zip(pts, values)))
        decomposition = level_sets(f)
        j = max(decomposition.levels, key=lambda j: len(decomposition.levels[j]))
        q_pts = sorted(decomposition.levels[j])
        out.append(
            _fn_instance(f, k=2 + i % 2, q_points=[list(x) for x in q_pts])
        )
    return out


def _eval_superadditivity(inst, cfg):
    f = _fn_from(inst)
    decomposition = level_sets(f)
    support_ind = SparseFunction.indicator(f.ctx, f.support)
    lhs = t_k_direct(support_ind, 2)
    rhs = sum(
        t_k_direct(SparseFunction.indicator(f.ctx, pts), 2)
        for _, pts in sorted(decomposition.levels.items())
    )
    return _one_sided("superadditivity-T2", lhs, rhs, cfg.energy_tol, inst)


def _eval_scattered(inst, cfg):
    fam = ScatteredFamily(
        inst["m"],
        inst["shell_size"],
        tuple((i, tuple(vals)) for i, vals in inst["shells"]),
        inst.get("thin_at"),
    )
    k = inst["k"]
    lhs = float(scattered_energy_bound(k, fam.shell_count, fam.shell_size))
    rhs = t_k_int_set(fam.points, k)
    return _one_sided("scattered-upper", lhs, rhs, cfg.energy_tol, inst)


def _gen_scattered(rng, count):
    out = []
    for i in range(count):
        m = int(rng.integers(1, 4))
        shell_size = int(rng.integers(1, 5))
        n_shells = int(rng.integers(1, 5))
        shells = []
        for idx in range(1, n_shells + 1):
            bound = 4**idx * m
            lo = bound // 2 + 1
            pool = list(range(lo, bound + 1)) + list(range(-bound, -lo + 1))
            vals = sorted(int(v) for v in rng.choice(pool, shell_size, replace=False))
            shells.append([idx, vals])
        out.append({"m": m, "shell_size": shell_size, "shells": shells, "k": 1 + i % 2})
    return out


def _eval_line_monotone(inst, cfg):
    f = _fn_from(inst)
    line = Line(f.ctx, tuple(inst["line"]["b"]), tuple(inst["line"]["c"]))
    lhs = wiener_norm(f)
    rhs = wiener_norm(restrict_to_line(f, line))
    return _one_sided("line-monotone", lhs, rhs, cfg.norm_tol, inst)


def _gen_line_monotone(rng, count):
    from .groups import enumerate_directions

    out = []
    for i in range(count):
        p = (3, 5)[i % 2]
        ctx = GroupContext(p, 2)
        size = int(rng.integers(1, p * p // 2 + 1))
        pts = _rand_points(rng, ctx, size)
        f = SparseFunction(ctx, dict(zip(pts, _rand_values(rng, size, "gaussian"))))
        dirs = enumerate_directions(ctx)
        b = dirs[int(rng.integers(0, len(dirs)))]
        c = tuple(int(v) for v in rng.integers(0, p, size=2))
        out.append(_fn_instance(f, line={"b": list(b), "c": list(c)}))
    return out


def _eval_hyperplane_balance(inst, cfg):
    ctx, pts = _points_from(inst)
    report = find_balanced_hyperplane(pts, ctx)
    return _one_sided(
        "hyperplane-balance", report.bound, report.deviation, cfg.norm_tol, inst
    )


def _gen_hyperplane_balance(rng, count):
    out = []
    for i in range(count):
        p = (5, 7)[i % 2]
        d = 2 + (i // 2) % 2
        ctx = GroupContext(p, d)
        size = int(rng.integers(1, ctx.size))
        out.append(
            {"p": p, "d": d, "points": [list(x) for x in _rand_points(rng, ctx, size)]}
        )
    return out


CHECKS: dict[str, CheckDef] = {
    "banach": CheckDef(_eval_banach, _gen_banach, "norm(f)*norm(g) >= norm(f*g)"),
    "inversion": CheckDef(
        _eval_inversion, _gen_functions("gaussian"), "wiener norm >= max |f|"
    ),
    "parseval-upper": CheckDef(
        _eval_parseval_upper, _gen_functions("gaussian"), "l2 norm >= wiener norm"
    ),
    "complement-identity": CheckDef(
        _eval_complement,
        _gen_complement,
        "norm(A) = norm(complement) + 2|A|/p - 1",
    ),
    "tk-identity": CheckDef(
        _eval_tk_identity, _gen_tk, "T_k(g) = |G|^{2k-1} sum |ghat|^{2k}"
    ),
    "energy-lower": CheckDef(
        _eval_energy_lower,
        _gen_energy_lower,
        "T_k(Q*f) >= |Q|^{2k} L^{4k} / (||f||_2^2 K^{2k-2})",
    ),
    "superadditivity-T2": CheckDef(
        _eval_superadditivity,
        _gen_functions("geq1"),
        "T_2(S) >= sum_j T_2(S_j) over level sets",
    ),
    "scattered-upper": CheckDef(
        _eval_scattered,
        _gen_scattered,
        "T_k(Q) <= 2^{8k} k^k I^k N^{2k-1} for shell families",
    ),
    "line-monotone": CheckDef(
        _eval_line_monotone,
        _gen_line_monotone,
        "wiener norm >= wiener norm of any line restriction",
    ),
    "hyperplane-balance": CheckDef(
        _eval_hyperplane_balance,
        _gen_hyperplane_balance,
        "exhaustive search deviation <= sqrt(density) p^{(d-1)/2}",
    ),
}


def check(name: str, instance: dict, config: ToolConfig = DEFAULT_CONFIG) -> VerificationReport:
    if name not in CHECKS:
        raise ValueError(f"unknown check {name!r}; known: {sorted(CHECKS)}")
    return CHECKS[name].evaluate(instance, config)


def _suite_rng(seed: int, name: str) -> np.random.Generator:
    salt = int.from_bytes(hashlib.sha256(name.encode()).digest()[:8], "big")
    return np.random.default_rng([seed, salt])


def run_suite(
    name: str = "all",
    seed: int = 0,
    count: int = 50,
    config: ToolConfig = DEFAULT_CONFIG,
) -> list[VerificationReport]:
    """Run one named suite (or all of them) on seeded generated instances."""
    names = sorted(CHECKS) if name == "all" else [name]
    for n in names:
        if n not in CHECKS:
            raise ValueError(f"unknown suite {n!r}; known: {sorted(CHECKS)}")
    reports = []
    for n in names:
        gen = CHECKS[n].generate
        for inst in gen(_suite_rng(seed, n), count):
            reports.append(CHECKS[n].evaluate(inst, config))
    return sorted(reports, key=lambda r: (r.name, r.digest))


# ---------------------------------------------------------------------------
# monitors (empirical ratios only; nothing asserted)
# ---------------------------------------------------------------------------


def _mon_dim_bound(inst, cfg):
    """dim(supp f) relative to K^2 (1 + log(||f||_2 / K))."""
    f = _fn_from(inst)
    big_k = wiener_norm(f)
    mode = "exact" if f.support_size <= cfg.exact_dim_cap else "greedy"
    dim, _ = additive_dimension(f.support, f.ctx, mode=mode)
    denom = big_k**2 * (1 + math.log(max(f.l2_norm / big_k, 1.0)))
    return MonitorRecord(
        "dim-bound", dim / denom, {"dim": dim, "mode": mode, "K": big_k}, digest(inst)
    )


def _mon_rudin(inst, cfg):
    ctx, pts = _points_from(inst)
    k = inst["k"]
    return MonitorRecord(
        "rudin", rudin_ratio(pts, ctx, k), {"k": k, "size": len(pts)}, digest(inst)
    )


def _mon_log_support(inst, cfg):
    f = _fn_from(inst)
    if f.support_size < 2:
        raise ValueError("log-support ratio needs |S| >= 2")
    return MonitorRecord(
        "log-support",
        wiener_norm(f) / math.log(f.support_size),
        {"size": f.support_size},
        digest(inst),
    )


def _mon_t2_lower(inst, cfg):
    """T_2(S) * M * K^2 / |S|^3, the scale-free form of the T_2 lower bound."""
    f = _fn_from(inst)
    support_ind = SparseFunction.indicator(f.ctx, f.support)
    t2 = t_k_direct(support_ind, 2)
    big_k = wiener_norm(f)
    ratio = t2 * f.max_abs * big_k**2 / f.support_size**3
    return MonitorRecord("t2-lower", ratio, {"T2": t2, "K": big_k}, digest(inst))


MONITORS: dict[str, Callable] = {
    "dim-bound": _mon_dim_bound,
    "rudin": _mon_rudin,
    "log-support": _mon_log_support,
    "t2-lower": _mon_t2_lower,
}


def monitor(name: str, instance: dict, config: ToolConfig = DEFAULT_CONFIG) -> MonitorRecord:
    if name not in MONITORS:
        raise ValueError(f"unknown monitor {name!r}; known: {sorted(MONITORS)}")
    return MONITORS[name](instance, config)


# ---------------------------------------------------------------------------
# growth scans
# ---------------------------------------------------------------------------


def ap_scan(p: int, ns: list[int], method: str = "auto") -> list[ScanRow]:
    """Wiener norms of symmetric progressions A = {-n..n} mod p.

    Requires |A| = 2n+1 < p/2 for every n; rows report norm / ln|A| (None for
    the singleton n = 0).
    """
    ctx = GroupContext(p)
    rows = []
    for n in ns:
        if n < 0:
            raise ValueError("n must be >= 0")
        size = 2 * n + 1
        if 2 * size >= p:
            raise ValueError(f"|A| = {size} violates the hypothesis |A| < p/2")
        f = SparseFunction.indicator(ctx, range(-n, n + 1))
        norm = wiener_norm(f, method=method)
        log_size = math.log(size)
        ratio = norm / log_size if size >= 2 else None
        rows.append(ScanRow(p, size, "ap", norm, log_size, ratio))
    return rows


def random_set_scan(
    p: int, sizes: list[int], seed: int = 0, method: str = "auto"
) -> list[ScanRow]:
    """Same row shape for uniform random subsets of Z_p."""
    ctx = GroupContext(p)
    rng = np.random.default_rng(seed)
    rows = []
    for size in sizes:
        if not 1 <= size < p / 2:
            raise ValueError(f"size {size} must satisfy 1 <= size < p/2")
        pts = _rand_points(rng, ctx, size)
        norm = wiener_norm(SparseFunction.indicator(ctx, pts), method=method)
        log_size = math.log(size)
        ratio = norm / log_size if size >= 2 else None
        rows.append(ScanRow(p, size, "random", norm, log_size, ratio))
    return rows
