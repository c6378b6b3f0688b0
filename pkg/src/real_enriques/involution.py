"""Invariants of involutions of even unimodular lattices.

For an involution phi of L we use the primitive eigenlattices
L_+ = ker(phi - 1) and L_- = ker(phi + 1), the group
A(phi) = L_+/2L_+ ∩ L_-/2L_- taken inside L/2L, the quadratic form
q(v + 2L_+) = v.v/2 mod 4 on A(phi) with bilinear form b = v.w/2 mod 2, and the
characteristic class s_phi with x.phi(x) = s_phi.x mod 2.

Relative to a phi-invariant primitive sublattice S we also compute
H_± = (S_±/2S_±) ∩ A(phi), the rank defect gamma of the b-pairing
H_+ x H_- -> Z/2, alpha = a - h_+ - h_-, and the two position flags of s_phi.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from .f2 import (F2Solver, F2Subspace, Mod4Quadratic, from_bits, intersect,
                 orthogonal_complement_in, span_mod2, to_bits)
from .lattice import (IntegerLattice, Matrix, Signature, as_matrix, determinant,
                      identity, integer_kernel, is_primitive, matmul, matvec, rank,
                      transpose)


class InvolutionError(ValueError):
    pass


class K3Triple(NamedTuple):
    r: int
    a: int
    delta: int

    def __str__(self) -> str:
        return f"({self.r},{self.a},{self.delta})"

    @classmethod
    def parse(cls, text: str) -> "K3Triple":
        parts = text.strip().strip("()").split(",")
        if len(parts) != 3:
            raise ValueError(f"expected r,a,d but got {text!r}")
        r, a, d = (int(p) for p in parts)
        if d not in (0, 1):
            raise ValueError(f"delta must be 0 or 1, got {d}")
        return cls(r, a, d)


@dataclass(frozen=True)
class LatticeInvolution:
    lattice: IntegerLattice
    matrix: Matrix

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return matvec(self.matrix, v)

    def __mul__(self, other: "LatticeInvolution") -> "LatticeInvolution":
        """Composition self∘other; only an involution when the factors commute."""
        return validate_involution(self.lattice, matmul(self.matrix, other.matrix))

    def __neg__(self) -> "LatticeInvolution":
        return LatticeInvolution(self.lattice, tuple(tuple(-x for x in row) for row in self.matrix))


@dataclass(frozen=True)
class ExtensionInvariants:
    h_plus: int
    h_minus: int
    gamma: int
    alpha: int
    delta_sigma_S: int
    delta_sigma_cap: int
    s_sigma_class: tuple[int, ...] | None


def validate_involution(l: IntegerLattice, m: Sequence[Sequence[int]]) -> LatticeInvolution:
    m = as_matrix(m)
    n = l.rank
    if len(m) != n or any(len(row) != n for row in m):
        raise InvolutionError(f"matrix shape does not match lattice rank {n}")
    if matmul(m, m) != identity(n):
        raise InvolutionError("not an involution")
    if matmul(matmul(transpose(m), l.gram), m) != l.gram:
        raise InvolutionError("not an isometry")
    return LatticeInvolution(l, m)


def reflection(l: IntegerLattice, v: Sequence[int]) -> Matrix:
    """Matrix of x -> x - 2 (x.v)/(v.v) v; integral when v.v = ±1 or ±2 on an even lattice."""
    vv = l.dot(v, v)
    if vv == 0:
        raise InvolutionError("cannot reflect in an isotropic vector")
    gv = matvec(l.gram, v)  # x.v = (G v) . x
    cols = []
    for j in range(l.rank):
        num = 2 * gv[j]
        if any((num * vi) % vv for vi in v):
            raise InvolutionError("reflection is not integral")
        cols.append([int(i == j) - num * vi // vv for i, vi in enumerate(v)])
    return transpose(cols)


def eigenlattice(inv: LatticeInvolution, sign: int) -> Matrix:
    """Basis rows of the primitive sublattice {x : phi(x) = sign * x}."""
    if sign not in (1, -1):
        raise InvolutionError("sign must be +1 or -1")
    n = inv.lattice.rank
    shifted = [[inv.matrix[i][j] - sign * (i == j) for j in range(n)] for i in range(n)]
    return tuple(_positive(v) for v in integer_kernel(shifted, n))


def _positive(v: Sequence[int]) -> tuple[int, ...]:
    """Flip v so that its first nonzero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def _sub_eigenlattice(inv: LatticeInvolution, basis: Sequence[Sequence[int]], sign: int) -> Matrix:
    """S ∩ L^{sign·phi} for the sublattice S spanned by ``basis`` (assumed primitive)."""
    if not basis:
        return ()
    n = inv.lattice.rank
    shifted = [[inv.matrix[i][j] - sign * (i == j) for j in range(n)] for i in range(n)]
    coeff_kernel = integer_kernel(matmul(shifted, transpose(basis)), len(basis))
    return matmul(coeff_kernel, basis) if coeff_kernel else ()


class _Analysis:
    """Everything derived from one involution; built once and cached."""

    def __init__(self, inv: LatticeInvolution):
        l = inv.lattice
        n = l.rank
        self.inv = inv
        self.n = n
        self.plus = eigenlattice(inv, 1)
        self.minus = eigenlattice(inv, -1)
        self.plus_mod2 = span_mod2(self.plus, n)
        self.minus_mod2 = span_mod2(self.minus, n)
        self.A = intersect(self.plus_mod2, self.minus_mod2)
        self._plus_solver = F2Solver([to_bits(v) for v in self.plus], n)
        lifts = [self.lift_plus(x) for x in self.A.basis]
        d = self.A.dim
        self.q_values = tuple((l.dot(v, v) // 2) % 4 for v in lifts)
        self.b_matrix = tuple(tuple((l.dot(lifts[i], lifts[j]) // 2) % 2 for j in range(d))
                              for i in range(d))

    def lift_plus(self, x: int) -> tuple[int, ...]:
        """A vector of L_+ reducing to the class x of L_+/2L_+ in L/2L."""
        coeffs = self._plus_solver.solve(x)
        if coeffs is None:
            raise InvolutionError("class does not come from L_+")
        v = [0] * self.n
        for c, b in zip(coeffs, self.plus):
            if c:
                v = [p + q for p, q in zip(v, b)]
        return tuple(v)

    @property
    def quadratic(self) -> Mod4Quadratic:
        return Mod4Quadratic(self.A, self.q_values, self.b_matrix)


@lru_cache(maxsize=256)
def _analyse(inv: LatticeInvolution) -> _Analysis:
    return _Analysis(inv)


def discriminant_form(inv: LatticeInvolution) -> Mod4Quadratic:
    """(A(phi), q(phi), b(phi)) as a mod-4 quadratic form on a subspace of L/2L."""
    return _analyse(inv).quadratic


def lift_to_plus(inv: LatticeInvolution, x: int) -> tuple[int, ...]:
    return _analyse(inv).lift_plus(x)


def characteristic_element(inv: LatticeInvolution) -> int:
    """s_phi in L/2L as a bitset: x.phi(x) = s_phi.x (mod 2) for all x."""
    l = inv.lattice
    if not l.is_unimodular:
        raise InvolutionError("characteristic element requires unimodular lattice")
    n = l.rank
    gm = matmul(l.gram, inv.matrix)
    # x -> x.phi(x) mod 2 is linear; its value on e_i is (G M)_ii
    f = to_bits([gm[i][i] for i in range(n)])
    columns = [to_bits([l.gram[i][j] for i in range(n)]) for j in range(n)]
    s = F2Solver(columns, n).solve(f)
    return to_bits(s)


def _require_even_unimodular(l: IntegerLattice) -> None:
    if not l.is_even or not l.is_unimodular:
        raise InvolutionError("ambient lattice must be even and unimodular")


def k3_triple(inv: LatticeInvolution) -> K3Triple:
    l = inv.lattice
    _require_even_unimodular(l)
    an = _analyse(inv)
    r = len(an.plus)
    a = an.A.dim
    delta_q = int(not an.quadratic.is_even())
    delta_s = int(characteristic_element(inv) != 0)
    if delta_q != delta_s:
        raise InvolutionError(
            f"invariant computation inconsistent: delta from q is {delta_q}, from s_phi {delta_s}")
    if abs(determinant(l.sublattice_gram(an.plus))) != 2 ** a:
        raise InvolutionError("invariant computation inconsistent: |det L_+| != 2^a")
    return K3Triple(r, a, delta_q)


def delta_from_quadratic(inv: LatticeInvolution) -> int:
    return int(not _analyse(inv).quadratic.is_even())


def delta_from_characteristic(inv: LatticeInvolution) -> int:
    return int(characteristic_element(inv) != 0)


def eigen_signatures(inv: LatticeInvolution) -> tuple[Signature, Signature]:
    """Signatures of L_+ and L_- (the real invariants of the action)."""
    an = _analyse(inv)
    out = []
    for basis in (an.plus, an.minus):
        sub = IntegerLattice(inv.lattice.sublattice_gram(basis))
        out.append(sub.signature)
    return out[0], out[1]


def is_hyperbolic(inv: LatticeInvolution) -> bool:
    """L^phi has signature (1, t)."""
    return eigen_signatures(inv)[0].positive_count == 1


def extension_invariants(inv_sigma: LatticeInvolution,
                         s_basis: Sequence[Sequence[int]]) -> ExtensionInvariants:
    l = inv_sigma.lattice
    n = l.rank
    if not l.is_unimodular:
        raise InvolutionError("extension invariants require a unimodular lattice")
    s_basis = as_matrix(s_basis)
    if any(len(v) != n for v in s_basis):
        raise InvolutionError("sublattice vectors have the wrong length")
    if not is_primitive(s_basis, n):
        raise InvolutionError("sublattice S is not primitive")
    k = len(s_basis)
    for v in s_basis:
        if rank(list(s_basis) + [inv_sigma.apply(v)]) != k:
            raise InvolutionError("sublattice S is not invariant under the involution")

    an = _analyse(inv_sigma)
    A = an.A
    s_plus = _sub_eigenlattice(inv_sigma, s_basis, 1)
    s_minus = _sub_eigenlattice(inv_sigma, s_basis, -1)
    s_plus_mod2 = span_mod2(s_plus, n)
    s_minus_mod2 = span_mod2(s_minus, n)
    h_plus = intersect(s_plus_mod2, A)
    h_minus = intersect(s_minus_mod2, A)

    b = an.quadratic.pair
    perp = orthogonal_complement_in(b, h_minus, h_plus)
    gamma = h_minus.dim - perp.dim
    alpha = A.dim - h_plus.dim - h_minus.dim
    if alpha not in (0, 1):
        raise InvolutionError(f"excess a - h_+ - h_- = {alpha} is not 0 or 1")

    s = characteristic_element(inv_sigma)
    s_mod2 = span_mod2(s_basis, n)
    cap = intersect(s_plus_mod2, s_minus_mod2)
    delta_S = int(s not in s_mod2)
    delta_cap = int(s not in cap)
    s_class = None
    if not delta_S:
        coeffs = F2Solver([to_bits(v) for v in s_basis], n).solve(s)
        s_class = tuple(coeffs)
    return ExtensionInvariants(h_plus.dim, h_minus.dim, gamma, alpha, delta_S, delta_cap, s_class)


def extension_subspaces(inv_sigma: LatticeInvolution,
                        s_basis: Sequence[Sequence[int]]) -> dict[str, F2Subspace]:
    """The subspaces A, H_+, H_- and (S_+ ∩ S_-) mod 2 inside L/2L, for reports and tests."""
    n = inv_sigma.lattice.rank
    an = _analyse(inv_sigma)
    s_plus_mod2 = span_mod2(_sub_eigenlattice(inv_sigma, s_basis, 1), n)
    s_minus_mod2 = span_mod2(_sub_eigenlattice(inv_sigma, s_basis, -1), n)
    return {
        "A": an.A,
        "H+": intersect(s_plus_mod2, an.A),
        "H-": intersect(s_minus_mod2, an.A),
        "cap": intersect(s_plus_mod2, s_minus_mod2),
    }


def format_bits(x: int, n: int) -> str:
    return "".join(str(c) for c in from_bits(x, n))
