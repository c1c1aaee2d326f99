"""Arithmetic over Z_p^d: canonical residues, direction enumeration, affine maps,
lines and hyperplanes.

Points of Z_p^d are plain tuples of residues in [0, p); every public operation
returns fully reduced tuples so mixed representations never circulate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from numbers import Integral
from typing import Iterator

from .config import DEFAULT_CONFIG
from .errors import BudgetError, SingularMapError

Point = tuple[int, ...]


def is_odd_prime(n: int) -> bool:
    """Trial-division primality test, restricted to odd primes >= 3."""
    if n < 3 or n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def canonical_abs(x: int, p: int) -> int:
    """min |z| over integers z congruent to x mod p; always <= (p-1)/2."""
    r = x % p
    return min(r, p - r)


def signed_rep(x: int, p: int) -> int:
    """The representative of x mod p in [-(p-1)/2, (p-1)/2]."""
    r = x % p
    return r if r <= (p - 1) // 2 else r - p


@dataclass(frozen=True)
class GroupContext:
    """The group Z_p^d for an odd prime p and dimension d >= 1."""

    p: int
    d: int = 1

    def __post_init__(self):
        if not isinstance(self.p, Integral) or not is_odd_prime(int(self.p)):
            raise ValueError(f"p must be an odd prime >= 3, got {self.p!r}")
        if not isinstance(self.d, Integral) or self.d < 1:
            raise ValueError(f"d must be an integer >= 1, got {self.d!r}")
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "d", int(self.d))

    @property
    def size(self) -> int:
        return self.p**self.d

    def check_dense_budget(self, budget: int = DEFAULT_CONFIG.dense_budget) -> None:
        if self.size > budget:
            raise BudgetError(
                f"dense table of size p^d = {self.size} exceeds budget {budget}"
            )

    def point(self, x) -> Point:
        """Normalize an int (d = 1) or an iterable of ints to a reduced tuple."""
        if isinstance(x, Integral):
            if self.d != 1:
                raise ValueError(f"scalar point {x} given for d = {self.d}")
            return (int(x) % self.p,)
        coords = tuple(int(c) % self.p for c in x)
        if len(coords) != self.d:
            raise ValueError(f"point {x!r} has {len(coords)} coords, expected {self.d}")
        return coords

    def points(self) -> Iterator[Point]:
        """All p^d points in lexicographic order."""
        return itertools.product(range(self.p), repeat=self.d)

    def zero(self) -> Point:
        return (0,) * self.d

    def add(self, a: Point, b: Point) -> Point:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: Point, b: Point) -> Point:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: Point) -> Point:
        return tuple((-x) % self.p for x in a)

    def scale(self, c: int, a: Point) -> Point:
        return tuple((c * x) % self.p for x in a)

    def dot(self, a: Point, b: Point) -> int:
        return sum(x * y for x, y in zip(a, b)) % self.p

    def abs(self, x: int) -> int:
        return canonical_abs(x, self.p)

    def signed(self, x: int) -> int:
        return signed_rep(x, self.p)

    def signed_point(self, a: Point) -> tuple[int, ...]:
        return tuple(signed_rep(x, self.p) for x in a)


def enumerate_directions(
    ctx: GroupContext, cap: int = DEFAULT_CONFIG.direction_cap
) -> list[Point]:
    """One canonical representative per projective direction of Z_p^d.

    Returns exactly (p^d - 1)/(p - 1) vectors, each with first nonzero
    coordinate equal to 1, in lexicographic order.  Every nonzero vector of
    Z_p^d is a scalar multiple of exactly one of them.
    """
    p, d = ctx.p, ctx.d
    r = (p**d - 1) // (p - 1)
    if r > cap:
        raise BudgetError(f"direction count {r} exceeds cap {cap}")
    out: list[Point] = []
    # Vectors with more leading zeros sort first, so emit blocks by the
    # position of the leading 1, from the last coordinate backwards.
    for lead in range(d - 1, -1, -1):
        prefix = (0,) * lead + (1,)
        for tail in itertools.product(range(p), repeat=d - 1 - lead):
            out.append(prefix + tail)
    return out


def canonical_direction(ctx: GroupContext, v: Point) -> Point:
    """The representative of v's direction with first nonzero coordinate 1."""
    for i, c in enumerate(v):
        if c % ctx.p != 0:
            inv = pow(c, -1, ctx.p)
            return ctx.scale(inv, v)
    raise ValueError("zero vector has no direction")


def _det_mod(rows: list[list[int]], p: int) -> int:
    """Determinant over Z_p by Gaussian elimination with first-nonzero pivoting."""
    m = [row[:] for row in rows]
    n = len(m)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] % p != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = (-det) % p
        det = det * m[col][col] % p
        inv = pow(m[col][col], -1, p)
        for r in range(col + 1, n):
            factor = m[r][col] * inv % p
            if factor:
                m[r] = [(a - factor * b) % p for a, b in zip(m[r], m[col])]
    return det % p


def _inv_mod(rows: list[list[int]], p: int) -> list[list[int]]:
    """Matrix inverse over Z_p by Gauss-Jordan; raises SingularMapError."""
    n = len(rows)
    m = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] % p != 0), None)
        if pivot is None:
            raise SingularMapError("matrix is singular mod p")
        m[col], m[pivot] = m[pivot], m[col]
        inv = pow(m[col][col], -1, p)
        m[col] = [a * inv % p for a in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [(a - factor * b) % p for a, b in zip(m[r], m[col])]
    return [row[n:] for row in m]


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix @ x + shift over Z_p^d."""

    ctx: GroupContext
    matrix: tuple[tuple[int, ...], ...]
    shift: Point = None  # type: ignore[assignment]

    def __post_init__(self):
        d, p = self.ctx.d, self.ctx.p
        rows = tuple(tuple(int(c) % p for c in row) for row in self.matrix)
        if len(rows) != d or any(len(row) != d for row in rows):
            raise ValueError(f"matrix must be {d}x{d}")
        object.__setattr__(self, "matrix", rows)
        shift = self.ctx.zero() if self.shift is None else self.ctx.point(self.shift)
        object.__setattr__(self, "shift", shift)

    @classmethod
    def identity(cls, ctx: GroupContext) -> "AffineMap":
        eye = tuple(
            tuple(1 if i == j else 0 for j in range(ctx.d)) for i in range(ctx.d)
        )
        return cls(ctx, eye)

    @classmethod
    def dilation(cls, ctx: GroupContext, q: int) -> "AffineMap":
        """x -> q*x (q times the identity matrix), the 1x1 case being x -> qx."""
        q = q % ctx.p
        rows = tuple(
            tuple(q if i == j else 0 for j in range(ctx.d)) for i in range(ctx.d)
        )
        return cls(ctx, rows)

    @classmethod
    def translation(cls, ctx: GroupContext, shift) -> "AffineMap":
        return cls.identity(ctx)._replace_shift(ctx.point(shift))

    def _replace_shift(self, shift: Point) -> "AffineMap":
        return AffineMap(self.ctx, self.matrix, shift)

    def __call__(self, x) -> Point:
        pt = self.ctx.point(x)
        p = self.ctx.p
        return tuple(
            (sum(r * c for r, c in zip(row, pt)) + s) % p
            for row, s in zip(self.matrix, self.shift)
        )

    def apply_linear(self, x) -> Point:
        """Matrix part only (directions transform without the shift)."""
        pt = self.ctx.point(x)
        p = self.ctx.p
        return tuple(sum(r * c for r, c in zip(row, pt)) % p for row in self.matrix)

    def determinant(self) -> int:
        return _det_mod([list(row) for row in self.matrix], self.ctx.p)

    def is_invertible(self) -> bool:
        return self.determinant() != 0

    def inverse(self) -> "AffineMap":
        """The map sending matrix@x + shift back to x; raises if singular."""
        inv = _inv_mod([list(row) for row in self.matrix], self.ctx.p)
        p = self.ctx.p
        inv_shift = tuple(
            (-sum(r * s for r, s in zip(row, self.shift))) % p for row in inv
        )
        return AffineMap(self.ctx, tuple(tuple(row) for row in inv), inv_shift)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other: x -> self(other(x))."""
        p = self.ctx.p
        rows = tuple(
            tuple(
                sum(self.matrix[i][k] * other.matrix[k][j] for k in range(self.ctx.d))
                % p
                for j in range(self.ctx.d)
            )
            for i in range(self.ctx.d)
        )
        return AffineMap(self.ctx, rows, self(other.shift))


@dataclass(frozen=True)
class Hyperplane:
    """{x in Z_p^d : x . eta = u} for a nonzero normal eta."""

    ctx: GroupContext
    eta: Point
    u: int

    def __post_init__(self):
        eta = self.ctx.point(self.eta)
        if all(c == 0 for c in eta):
            raise ValueError("hyperplane normal must be nonzero")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "u", int(self.u) % self.ctx.p)

    def contains(self, x) -> bool:
        return self.ctx.dot(self.ctx.point(x), self.eta) == self.u

    def points(self) -> list[Point]:
        """All p^(d-1) points; intended for desk-scale exhaustive checks."""
        self.ctx.check_dense_budget()
        return [x for x in self.ctx.points() if self.contains(x)]


@dataclass(frozen=True)
class Line:
    """{u*direction + base : u in Z_p}, a one-dimensional affine subset."""

    ctx: GroupContext
    direction: Point
    base: Point = None  # type: ignore[assignment]

    def __post_init__(self):
        b = self.ctx.point(self.direction)
        if all(c == 0 for c in b):
            raise ValueError("line direction must be nonzero")
        object.__setattr__(self, "direction", b)
        base = self.ctx.zero() if self.base is None else self.ctx.point(self.base)
        object.__setattr__(self, "base", base)

    def point_at(self, u: int) -> Point:
        return self.ctx.add(self.ctx.scale(u, self.direction), self.base)

    def points(self) -> list[Point]:
        return [self.point_at(u) for u in range(self.ctx.p)]

    def contains(self, x) -> bool:
        pt = self.ctx.point(x)
        pivot = next(i for i, c in enumerate(self.direction) if c != 0)
        u = (pt[pivot] - self.base[pivot]) * pow(self.direction[pivot], -1, self.ctx.p)
        return self.point_at(u % self.ctx.p) == pt
