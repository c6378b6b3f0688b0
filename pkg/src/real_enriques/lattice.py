"""Integral lattices given by symmetric Gram matrices.

Everything here is exact: Python integers for determinants and kernels,
``fractions.Fraction`` for the congruence diagonalization behind the
signature.  Matrices are tuples of tuples of ints so lattices are hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

Matrix = tuple[tuple[int, ...], ...]


class LatticeError(ValueError):
    pass


class Signature(NamedTuple):
    positive_count: int
    negative_count: int

    def __str__(self) -> str:
        return f"({self.positive_count},{self.negative_count})"


class LatticeProperties(NamedTuple):
    even: bool
    unimodular: bool
    det: int
    signature: Signature


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination; the empty matrix has determinant 1."""
    n = len(m)
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def rank(m: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals."""
    rows = [[Fraction(x) for x in row] for row in m]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def inertia(gram: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(positive, negative, null) counts via symmetric congruence over Q."""
    a = [[Fraction(x) for x in row] for row in gram]
    n = len(a)
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue  # x_k is in the radical of the trailing block
                # x_k <- x_k + x_j turns the zero diagonal into 2*a[k][j]
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for row in a:
                    row[k] += row[j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
        for i in range(k + 1, n):
            a[i][k] = a[k][i] = Fraction(0)
    return pos, neg, n - pos - neg


@dataclass(frozen=True)
class IntegerLattice:
    gram: Matrix

    def __post_init__(self):
        gram = as_matrix(self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(f"Gram matrix not symmetric at ({i},{j})")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return determinant(self.gram)

    @property
    def signature(self) -> Signature:
        pos, neg, _ = inertia(self.gram)
        return Signature(pos, neg)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(xi * gij * yj
                   for xi, row in zip(x, self.gram) if xi
                   for gij, yj in zip(row, y) if yj)

    def sublattice_gram(self, basis: Sequence[Sequence[int]]) -> Matrix:
        return matmul(matmul(basis, self.gram), transpose(basis)) if basis else ()


def lattice_properties(l: IntegerLattice) -> LatticeProperties:
    det = l.det
    if det == 0:
        raise LatticeError("degenerate lattice")
    return LatticeProperties(l.is_even, abs(det) == 1, det, l.signature)


# Bourbaki numbering: 1-3-4-5-6-7-8 is the long chain, node 2 hangs off node 4.
_E8_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


def _e8_gram() -> Matrix:
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for i, j in _E8_EDGES:
        g[i - 1][j - 1] = g[j - 1][i - 1] = 1
    return as_matrix(g)


def direct_sum(a: IntegerLattice, b: IntegerLattice) -> IntegerLattice:
    n, m = a.rank, b.rank
    rows = [list(row) + [0] * m for row in a.gram]
    rows += [[0] * n + list(row) for row in b.gram]
    return IntegerLattice(as_matrix(rows))


def twist(l: IntegerLattice, k: int) -> IntegerLattice:
    """The lattice l(k): every inner product multiplied by k."""
    if k == 0:
        raise LatticeError("degenerate twist")
    return IntegerLattice(tuple(tuple(k * x for x in row) for row in l.gram))


EMPTY = IntegerLattice(())
U = IntegerLattice(((0, 1), (1, 0)))
E8 = IntegerLattice(_e8_gram())


def standard_lattice(name: str) -> IntegerLattice:
    """U, E8 (negative definite), K3 = U+U+U+E8+E8, ENRIQUES = U+E8."""
    if name == "U":
        return U
    if name == "E8":
        return E8
    if name == "K3":
        out = EMPTY
        for part in (U, U, U, E8, E8):
            out = direct_sum(out, part)
        return out
    if name == "ENRIQUES":
        return direct_sum(U, E8)
    raise LatticeError(f"unknown standard lattice: {name!r}")


# --- integer kernels -------------------------------------------------------

def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis (as rows) of {x in Z^n : m x = 0}.

    Row-reduces [m^T | I] with unimodular integer row operations; the identity
    part of each row whose left part vanishes is a kernel vector, and since the
    transform is unimodular the resulting basis is saturated (primitive).
    """
    n = len(m[0]) if m else (ncols or 0)
    nrows = len(m)
    work = [[m[i][j] for i in range(nrows)] + [int(j == k) for k in range(n)] for j in range(n)]
    top = 0
    for c in range(nrows):
        while True:
            nz = [i for i in range(top, n) if work[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(work[i][c]))
            work[top], work[piv] = work[piv], work[top]
            done = True
            for i in range(top + 1, n):
                if work[i][c]:
                    q = work[i][c] // work[top][c]
                    work[i] = [x - q * y for x, y in zip(work[i], work[top])]
                    if work[i][c]:
                        done = False
            if done:
                top += 1
                break
        if top == n:
            break
    basis = [row[nrows:] for row in work[top:]]
    return _size_reduce(basis)


def _size_reduce(basis: list[list[int]]) -> Matrix:
    # cosmetic: subtract rounded multiples of earlier vectors to keep entries small
    basis = [list(v) for v in basis]
    for _ in range(3):
        changed = False
        for i, v in enumerate(basis):
            for j, w in enumerate(basis):
                if i == j:
                    continue
                ww = sum(x * x for x in w)
                if not ww:
                    continue
                q = round(Fraction(sum(x * y for x, y in zip(v, w)), ww))
                if q:
                    v = [x - q * y for x, y in zip(v, w)]
                    changed = True
            basis[i] = v
        if not changed:
            break
    return as_matrix(basis)


def saturation(basis: Sequence[Sequence[int]], n: int) -> Matrix:
    """Basis of (span_Q basis) ∩ Z^n."""
    if not basis:
        return ()
    return integer_kernel(integer_kernel(basis), n)


def solve_rational(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction] | None:
    """Coefficients c with sum c_i basis_i = v over Q, or None."""
    k = len(basis)
    n = len(v)
    # augmented system: columns are basis vectors
    rows = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(n)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, n)):
        return None
    coeffs = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        coeffs[c] = rows[i][k]
    return coeffs


def is_primitive(basis: Sequence[Sequence[int]], n: int) -> bool:
    """True iff the basis spans a primitive (saturated) sublattice of Z^n."""
    if not basis:
        return True
    if rank(basis) != len(basis):
        return False
    sat = saturation(basis, n)
    # express the given basis in the saturated basis; index = |det| of that change
    change = []
    for v in basis:
        c = solve_rational(sat, v)
        change.append([int(x) for x in c])
    return abs(determinant(change)) == 1


# --- text format -----------------------------------------------------------

def parse_matrix_text(text: str) -> Matrix:
    """First nonblank line gives the row count k; then k rows of integers."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise LatticeError("empty matrix file")
    try:
        k = int(lines[0])
        rows = [tuple(int(tok) for tok in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise LatticeError(f"malformed matrix file: {exc}") from None
    if k < 0 or len(rows) != k:
        raise LatticeError(f"expected {k} rows, found {len(rows)}")
    if rows and len({len(r) for r in rows}) != 1:
        raise LatticeError("rows have different lengths")
    return tuple(rows)


def format_matrix_text(m: Sequence[Sequence[int]]) -> str:
    lines = [str(len(m))] + [" ".join(str(x) for x in row) for row in m]
    return "\n".join(lines) + "\n"


def parse_lattice(text: str) -> IntegerLattice:
    gram = parse_matrix_text(text)
    if gram and len(gram[0]) != len(gram):
        raise LatticeError("Gram matrix must be square")
    return IntegerLattice(gram)


def format_lattice(l: IntegerLattice) -> str:
    return format_matrix_text(l.gram)
