"""Linear algebra over GF(2) with int bitsets, and mod-4 quadratic refinements.

A vector of length n is an int whose bit i is coordinate i.  Subspaces keep a
reduced row-echelon basis (pivot = lowest set bit, each pivot bit appearing in
exactly one basis vector, sorted by pivot), so equal subspaces compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Sequence

Pairing = Callable[[int, int], int]


class F2Error(ValueError):
    pass


def to_bits(v: Sequence[int]) -> int:
    out = 0
    for i, x in enumerate(v):
        if x & 1:
            out |= 1 << i
    return out


def from_bits(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(n))


def _lowbit(x: int) -> int:
    return (x & -x).bit_length() - 1


def _rref(vectors: Iterable[int]) -> tuple[int, ...]:
    basis: dict[int, int] = {}
    for x in vectors:
        for p, b in basis.items():
            if (x >> p) & 1:
                x ^= b
        if not x:
            continue
        p = _lowbit(x)
        for q in basis:
            if (basis[q] >> p) & 1:
                basis[q] ^= x
        basis[p] = x
    return tuple(basis[p] for p in sorted(basis))


@dataclass(frozen=True)
class F2Subspace:
    ambient_dim: int
    basis: tuple[int, ...]

    @classmethod
    def from_vectors(cls, vectors: Iterable[int], ambient_dim: int) -> "F2Subspace":
        vectors = list(vectors)
        if any(v >> ambient_dim for v in vectors):
            raise F2Error("vector longer than ambient dimension")
        return cls(ambient_dim, _rref(vectors))

    @classmethod
    def zero(cls, ambient_dim: int) -> "F2Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "F2Subspace":
        return cls(ambient_dim, tuple(1 << i for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_lowbit(b) for b in self.basis)

    def coordinates(self, x: int) -> tuple[int, ...] | None:
        """Coefficients of x on the basis, or None if x is not in the span.

        With a reduced basis the coefficient of basis[i] is just bit pivot_i of x.
        """
        coeffs = tuple((x >> p) & 1 for p in self.pivots)
        y = x
        for c, b in zip(coeffs, self.basis):
            if c:
                y ^= b
        return None if y else coeffs

    def __contains__(self, x: int) -> bool:
        return self.coordinates(x) is not None

    def elements(self):
        for coeffs in product((0, 1), repeat=self.dim):
            x = 0
            for c, b in zip(coeffs, self.basis):
                if c:
                    x ^= b
            yield x

    def __add__(self, other: "F2Subspace") -> "F2Subspace":
        _check_ambient(self, other)
        return F2Subspace(self.ambient_dim, _rref(self.basis + other.basis))

    def __le__(self, other: "F2Subspace") -> bool:
        return all(b in other for b in self.basis)

    def __str__(self) -> str:
        rows = ["".join(str(c) for c in from_bits(b, self.ambient_dim)) for b in self.basis]
        return "<" + ", ".join(rows) + ">"


def _check_ambient(a: F2Subspace, b: F2Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise F2Error(f"ambient dimension mismatch: {a.ambient_dim} != {b.ambient_dim}")


def span_mod2(vectors: Sequence[Sequence[int]], ambient_dim: int) -> F2Subspace:
    for v in vectors:
        if len(v) != ambient_dim:
            raise F2Error(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    return F2Subspace(ambient_dim, _rref(to_bits(v) for v in vectors))


def _kernel_combinations(rows: Sequence[int], width: int) -> list[int]:
    """Bitmasks m over len(rows) with XOR of rows[i] (i in m) equal to zero."""
    tagged = [r | (1 << (width + i)) for i, r in enumerate(rows)]
    low = (1 << width) - 1
    return [x >> width for x in _rref(tagged) if not x & low]


def intersect(a: F2Subspace, b: F2Subspace) -> F2Subspace:
    """Zassenhaus: reduce (u, u) for u in a and (w, 0) for w in b."""
    _check_ambient(a, b)
    n = a.ambient_dim
    low = (1 << n) - 1
    tagged = [u | (u << n) for u in a.basis] + list(b.basis)
    return F2Subspace(n, _rref(x >> n for x in _rref(tagged) if not x & low))


def orthogonal_complement_in(pairing: Pairing, inside: F2Subspace, of: F2Subspace) -> F2Subspace:
    """{x in inside : pairing(x, y) = 0 for all y in of}."""
    _check_ambient(inside, of)
    m = of.dim
    rows = [sum(pairing(u, y) << j for j, y in enumerate(of.basis)) for u in inside.basis]
    out = []
    for mask in _kernel_combinations(rows, m):
        x = 0
        for i, u in enumerate(inside.basis):
            if (mask >> i) & 1:
                x ^= u
        out.append(x)
    return F2Subspace(inside.ambient_dim, _rref(out))


def matrix_pairing(matrix: Sequence[Sequence[int]]) -> Pairing:
    """x^T M y over GF(2) on ambient coordinates."""
    rows = [to_bits(r) for r in matrix]

    def pairing(x: int, y: int) -> int:
        acc = 0
        i = 0
        while x:
            if x & 1:
                acc ^= bin(rows[i] & y).count("1") & 1
            x >>= 1
            i += 1
        return acc

    return pairing


def rank_f2(rows: Iterable[int]) -> int:
    return len(_rref(rows))


class F2Solver:
    """Solve sum c_i g_i = target over GF(2) for a fixed list of generators."""

    def __init__(self, generators: Sequence[int], ambient_dim: int):
        self.n = ambient_dim
        self.count = len(generators)
        self._rows: dict[int, int] = {}
        low = (1 << ambient_dim) - 1
        for x in _rref(g | (1 << (ambient_dim + i)) for i, g in enumerate(generators)):
            if x & low:
                self._rows[_lowbit(x)] = x

    def solve(self, target: int) -> tuple[int, ...] | None:
        acc = target
        for p, row in self._rows.items():
            if (acc >> p) & 1:
                acc ^= row
        low = (1 << self.n) - 1
        if acc & low:
            return None
        mask = acc >> self.n
        return tuple((mask >> i) & 1 for i in range(self.count))


@dataclass(frozen=True)
class Mod4Quadratic:
    """Quadratic form q: V -> Z/4 refining the GF(2) bilinear form b.

    Stored on the basis of ``space`` and extended by
    q(x + y) = q(x) + q(y) + 2 b(x, y) (mod 4).
    """

    space: F2Subspace
    values: tuple[int, ...]
    bilinear: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = self.space.dim
        if len(self.values) != d or len(self.bilinear) != d:
            raise F2Error("quadratic data does not match the space dimension")
        for i in range(d):
            for j in range(d):
                if self.bilinear[i][j] != self.bilinear[j][i]:
                    raise F2Error("bilinear form is not symmetric")
            if (self.values[i] - self.bilinear[i][i]) % 2:
                raise F2Error("q(x) mod 2 must equal b(x, x)")

    def _coords(self, x: int) -> tuple[int, ...]:
        c = self.space.coordinates(x)
        if c is None:
            raise F2Error("vector outside the quadratic space")
        return c

    def pair(self, x: int, y: int) -> int:
        cx, cy = self._coords(x), self._coords(y)
        return sum(self.bilinear[i][j] for i, a in enumerate(cx) if a
                   for j, b in enumerate(cy) if b) % 2

    def value(self, x: int) -> int:
        c = [i for i, a in enumerate(self._coords(x)) if a]
        total = sum(self.values[i] for i in c)
        total += 2 * sum(self.bilinear[i][j] for k, i in enumerate(c) for j in c[k + 1:])
        return total % 4

    def radical(self) -> F2Subspace:
        return orthogonal_complement_in(self.pair, self.space, self.space)

    def is_nondegenerate(self) -> bool:
        return self.radical().dim == 0

    def is_even(self) -> bool:
        """True iff every value lies in 2Z/4Z (q mod 2 is linear, so the basis decides)."""
        return all(v % 2 == 0 for v in self.values)

    def tabulate(self, limit: int = 12) -> dict[int, int]:
        """All 2^d values, walking a Gray code one basis vector at a time."""
        d = self.space.dim
        if d > limit:
            raise F2Error(f"refusing to tabulate 2^{d} values")
        table = {0: 0}
        x = 0
        qx = 0
        for step in range(1, 1 << d):
            i = _lowbit(step)
            bi = self.space.basis[i]
            qx = (qx + self.values[i] + 2 * self.pair(x, bi)) % 4
            x ^= bi
            table[x] = qx
        return table
