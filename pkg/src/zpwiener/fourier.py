"""Fourier transforms and the Wiener norm on Z_p and Z_p^d.

Conventions, fixed everywhere:

    fhat(xi) = p^{-d} * sum_x f(x) * exp(-2*pi*i * (xi . x) / p)
    f(x)     = sum_xi fhat(xi) * exp(+2*pi*i * (xi . x) / p)
    wiener_norm(f) = sum_xi |fhat(xi)|

The quadratic-time transform is the correctness oracle.  Large prime lengths
go through a Rader reindexing: the nonzero frequencies become a cyclic
convolution of length p-1 over the multiplicative group, which is embedded in
a zero-padded power-of-two transform of length >= 2(p-1)-1 and evaluated with
an in-house iterative radix-2 kernel.  Both paths reduce every phase exponent
mod p before touching floating point, so angles stay in (-2*pi, 0].
"""

from __future__ import annotations

from functools import lru_cache
from types import MappingProxyType

import numpy as np

from .config import DEFAULT_CONFIG
from .errors import BudgetError
from .groups import GroupContext, Point


class SparseFunction:
    """Finitely supported complex function on Z_p^d; exact zeros are never stored."""

    def __init__(self, ctx: GroupContext, entries):
        self.ctx = ctx
        table: dict[Point, complex] = {}
        items = entries.items() if hasattr(entries, "items") else entries
        for x, v in items:
            pt = ctx.point(x)
            z = complex(v)
            if z == 0:
                continue
            if pt in table:
                raise ValueError(f"duplicate entry for point {pt}")
            table[pt] = z
        self._entries = table

    @classmethod
    def indicator(cls, ctx: GroupContext, points) -> "SparseFunction":
        return cls(ctx, {ctx.point(x): 1.0 for x in points})

    @classmethod
    def from_dense(
        cls, ctx: GroupContext, arr: np.ndarray, zero_clamp: float = 0.0
    ) -> "SparseFunction":
        arr = np.asarray(arr)
        if arr.shape != (ctx.p,) * ctx.d:
            raise ValueError(f"dense array shape {arr.shape} does not match {ctx}")
        entries = {}
        for idx in np.argwhere(np.abs(arr) > zero_clamp):
            pt = tuple(int(i) for i in idx)
            entries[pt] = complex(arr[tuple(idx)])
        return cls(ctx, entries)

    @property
    def entries(self):
        return MappingProxyType(self._entries)

    def __getitem__(self, x) -> complex:
        return self._entries.get(self.ctx.point(x), 0j)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(sorted(self._entries))

    @property
    def support(self) -> frozenset[Point]:
        return frozenset(self._entries)

    @property
    def support_size(self) -> int:
        return len(self._entries)

    @property
    def max_abs(self) -> float:
        return max((abs(v) for v in self._entries.values()), default=0.0)

    @property
    def l2_norm(self) -> float:
        return float(np.sqrt(sum(abs(v) ** 2 for v in self._entries.values())))

    @property
    def density(self) -> float:
        return self.support_size / self.ctx.size

    def to_dense(self, budget: int = DEFAULT_CONFIG.dense_budget) -> np.ndarray:
        self.ctx.check_dense_budget(budget)
        arr = np.zeros((self.ctx.p,) * self.ctx.d, dtype=np.complex128)
        for pt, v in self._entries.items():
            arr[pt] = v
        return arr

    def pointwise_mul(self, other: "SparseFunction") -> "SparseFunction":
        if other.ctx != self.ctx:
            raise ValueError("functions live on different groups")
        small, big = sorted((self, other), key=lambda f: f.support_size)
        entries = {
            pt: v * big._entries[pt]
            for pt, v in small._entries.items()
            if pt in big._entries
        }
        return SparseFunction(self.ctx, entries)

    def restrict(self, points) -> "SparseFunction":
        """Q(x) * f(x) for a set Q of points."""
        keep = {self.ctx.point(x) for x in points}
        return SparseFunction(
            self.ctx, {pt: v for pt, v in self._entries.items() if pt in keep}
        )

    def scale(self, c: complex) -> "SparseFunction":
        return SparseFunction(self.ctx, {pt: c * v for pt, v in self._entries.items()})

    def __repr__(self) -> str:
        return (
            f"SparseFunction(p={self.ctx.p}, d={self.ctx.d}, "
            f"support={self.support_size})"
        )


class Spectrum:
    """Dense table of Fourier coefficients over Z_p^d."""

    def __init__(self, ctx: GroupContext, coefficients: np.ndarray):
        coefficients = np.asarray(coefficients, dtype=np.complex128)
        if coefficients.shape != (ctx.p,) * ctx.d:
            raise ValueError(
                f"coefficient table shape {coefficients.shape} does not match {ctx}"
            )
        self.ctx = ctx
        self.coefficients = coefficients

    def __getitem__(self, xi) -> complex:
        return complex(self.coefficients[self.ctx.point(xi)])

    @property
    def l1(self) -> float:
        """The Wiener norm; accumulated in fixed C order for reproducibility."""
        return float(np.abs(self.coefficients.ravel(order="C")).sum())

    @property
    def l2_sq(self) -> float:
        return float((np.abs(self.coefficients.ravel(order="C")) ** 2).sum())


# ---------------------------------------------------------------------------
# power-of-two kernel
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _bitrev(n: int) -> np.ndarray:
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for _ in range(n.bit_length() - 1):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    return rev


@lru_cache(maxsize=64)
def _twiddle(size: int) -> np.ndarray:
    return np.exp(-2j * np.pi * np.arange(size // 2) / size)


def _fft_pow2(a: np.ndarray) -> np.ndarray:
    """Iterative radix-2 DFT along the last axis; length must be a power of two."""
    n = a.shape[-1]
    if n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    x = np.ascontiguousarray(a, dtype=np.complex128)[..., _bitrev(n)]
    size = 2
    while size <= n:
        half = size // 2
        w = _twiddle(size)
        xv = x.reshape(x.shape[:-1] + (n // size, size))
        t = xv[..., half:] * w
        xv[..., half:] = xv[..., :half] - t
        xv[..., :half] += t
        size *= 2
    return x


def _ifft_pow2(a: np.ndarray) -> np.ndarray:
    return np.conj(_fft_pow2(np.conj(a))) / a.shape[-1]


# ---------------------------------------------------------------------------
# prime-length transforms (unnormalized: X[k] = sum_n v[n] w^{kn})
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _smallest_primitive_root(p: int) -> int:
    factors = []
    m = p - 1
    f = 2
    while f * f <= m:
        if m % f == 0:
            factors.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        factors.append(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root found; {p} is not prime")


@lru_cache(maxsize=32)
def _rader_plan(p: int):
    g = _smallest_primitive_root(p)
    n = p - 1
    pow_g = np.empty(n, dtype=np.int64)
    v = 1
    for m in range(n):
        pow_g[m] = v
        v = v * g % p
    # gather order for a_q = v[g^{-q} mod p]
    inv_idx = pow_g[(n - np.arange(n)) % n]
    conv_len = 1
    while conv_len < 2 * n - 1:
        conv_len *= 2
    omega = np.exp(-2j * np.pi * np.arange(p) / p)
    kernel = np.zeros(conv_len, dtype=np.complex128)
    kernel[:n] = omega[pow_g]
    return pow_g, inv_idx, conv_len, _fft_pow2(kernel)


def _dft1d_fast(values: np.ndarray) -> np.ndarray:
    """Rader transform of prime length p along the last axis.

    Nonzero frequencies X[g^m] = v[0] + (a * b)[m], a cyclic convolution of
    length p-1 computed as a zero-padded linear convolution folded back.
    """
    p = values.shape[-1]
    pow_g, inv_idx, conv_len, kernel_hat = _rader_plan(p)
    n = p - 1
    a = np.zeros(values.shape[:-1] + (conv_len,), dtype=np.complex128)
    a[..., :n] = values[..., inv_idx]
    lin = _ifft_pow2(_fft_pow2(a) * kernel_hat)
    cyc = lin[..., :n].copy()
    cyc[..., : n - 1] += lin[..., n : 2 * n - 1]
    out = np.empty(values.shape[:-1] + (p,), dtype=np.complex128)
    out[..., 0] = values.sum(axis=-1)
    out[..., pow_g] = values[..., 0][..., None] + cyc
    return out


def _dft1d_naive(values: np.ndarray) -> np.ndarray:
    """Quadratic-time transform; exponents are reduced mod p before exp()."""
    p = values.shape[-1]
    omega = np.exp(-2j * np.pi * np.arange(p) / p)
    ns = np.arange(p, dtype=np.int64)
    out = np.empty(values.shape[:-1] + (p,), dtype=np.complex128)
    chunk = max(1, min(p, (1 << 22) // p))
    for lo in range(0, p, chunk):
        ks = np.arange(lo, min(lo + chunk, p), dtype=np.int64)
        w = omega[(ks[:, None] * ns[None, :]) % p]
        out[..., lo : lo + len(ks)] = values @ w.T
    return out


def _dft1d(values: np.ndarray, method: str, fast_min_p: int) -> np.ndarray:
    p = values.shape[-1]
    if method == "naive" or (method == "auto" and p <= fast_min_p):
        return _dft1d_naive(values)
    if method in ("fast", "auto"):
        return _dft1d_fast(values)
    raise ValueError(f"unknown method {method!r}")


def dft_prime_fast(values: np.ndarray) -> np.ndarray:
    """Normalized fast transform of a dense length-p table (p an odd prime)."""
    values = np.asarray(values, dtype=np.complex128)
    p = values.shape[-1]
    return _dft1d_fast(values) / p


def dft_prime_naive(values: np.ndarray) -> np.ndarray:
    """Normalized quadratic-time oracle for the 1-d transform."""
    values = np.asarray(values, dtype=np.complex128)
    p = values.shape[-1]
    return _dft1d_naive(values) / p


# ---------------------------------------------------------------------------
# public transforms
# ---------------------------------------------------------------------------


def dft(
    f: SparseFunction,
    method: str = "auto",
    fast_min_p: int = DEFAULT_CONFIG.fast_min_p,
    budget: int = DEFAULT_CONFIG.dense_budget,
) -> Spectrum:
    """Forward transform, tensorized axis by axis for d > 1."""
    arr = f.to_dense(budget)
    for axis in range(f.ctx.d):
        arr = np.moveaxis(_dft1d(np.moveaxis(arr, axis, -1), method, fast_min_p), -1, axis)
    return Spectrum(f.ctx, arr / f.ctx.size)


def dft_direct_sum(f: SparseFunction) -> Spectrum:
    """O(p^{2d}) double-sum oracle, independent of the tensorized paths."""
    ctx = f.ctx
    if ctx.size**2 > 1 << 26:
        raise BudgetError("direct-sum oracle is limited to tiny instances")
    coeffs = np.zeros((ctx.p,) * ctx.d, dtype=np.complex128)
    for xi in ctx.points():
        acc = 0j
        for x in ctx.points():
            v = f[x]
            if v:
                acc += v * np.exp(-2j * np.pi * ctx.dot(xi, x) / ctx.p)
        coeffs[xi] = acc / ctx.size
    return Spectrum(ctx, coeffs)


def inverse_dft(
    spectrum: Spectrum,
    zero_clamp: float = DEFAULT_CONFIG.zero_clamp,
    method: str = "auto",
    fast_min_p: int = DEFAULT_CONFIG.fast_min_p,
    budget: int = DEFAULT_CONFIG.dense_budget,
) -> SparseFunction:
    """Inverse transform; values below zero_clamp are dropped from the result."""
    ctx = spectrum.ctx
    ctx.check_dense_budget(budget)
    arr = np.conj(spectrum.coefficients)
    for axis in range(ctx.d):
        arr = np.moveaxis(_dft1d(np.moveaxis(arr, axis, -1), method, fast_min_p), -1, axis)
    return SparseFunction.from_dense(ctx, np.conj(arr), zero_clamp=zero_clamp)


def wiener_norm(
    f: SparseFunction,
    method: str = "auto",
    fast_min_p: int = DEFAULT_CONFIG.fast_min_p,
    budget: int = DEFAULT_CONFIG.dense_budget,
) -> float:
    """l1 norm of the Fourier transform."""
    return dft(f, method=method, fast_min_p=fast_min_p, budget=budget).l1


def compose_affine(f: SparseFunction, t) -> SparseFunction:
    """f after t, i.e. x -> f(t(x)), for an invertible affine map t."""
    tinv = t.inverse()
    return SparseFunction(f.ctx, {tinv(x): v for x, v in f.entries.items()})
