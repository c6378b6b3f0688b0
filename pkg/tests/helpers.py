"""Fixture involutions and random isometries shared by the tests."""

from __future__ import annotations

import random
from functools import lru_cache

from real_enriques.involution import LatticeInvolution, reflection, validate_involution
from real_enriques.lattice import (E8, U, IntegerLattice, as_matrix, direct_sum, identity,
                                   matmul, matvec, standard_lattice)

I2 = identity(2)
N2 = ((-1, 0), (0, -1))
SW = ((0, 1), (1, 0))
NSW = ((0, -1), (-1, 0))
U_MOVES = {"I": I2, "N": N2, "SW": SW, "NSW": NSW}

UU = direct_sum(U, U)
UE8 = direct_sum(U, E8)
K3 = standard_lattice("K3")
ENRIQUES = standard_lattice("ENRIQUES")


def blockdiag(*ms):
    n = sum(len(m) for m in ms)
    out = [[0] * n for _ in range(n)]
    o = 0
    for m in ms:
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                out[o + i][o + j] = x
        o += len(m)
    return as_matrix(out)


def pairswap(m: int):
    """Swap the two halves of V + V with rank V = m."""
    out = [[0] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        out[i][m + i] = out[m + i][i] = 1
    return as_matrix(out)


def negate(m):
    return tuple(tuple(-x for x in row) for row in m)


@lru_cache(maxsize=None)
def e8_roots() -> tuple[tuple[int, ...], ...]:
    simple = [tuple(int(i == j) for j in range(8)) for i in range(8)]
    refl = [reflection(E8, s) for s in simple]
    roots, frontier = set(simple), list(simple)
    while frontier:
        new = []
        for r in frontier:
            for m in refl:
                x = matvec(m, r)
                if x not in roots:
                    roots.add(x)
                    new.append(x)
        frontier = new
    return tuple(sorted(roots))


def orthogonal_roots(k: int, seed: int) -> list[tuple[int, ...]]:
    """k mutually orthogonal E8 roots (greedy, retried until it reaches k <= 8)."""
    rnd = random.Random(seed)
    roots = list(e8_roots())
    while True:
        rnd.shuffle(roots)
        chosen: list[tuple[int, ...]] = []
        for r in roots:
            if len(chosen) == k:
                return chosen
            if all(E8.dot(r, c) == 0 for c in chosen):
                chosen.append(r)
        if len(chosen) == k:
            return chosen


def e8_involution(k: int, seed: int = 0, sign: int = 1):
    """Product of reflections in k orthogonal roots, times sign."""
    m = identity(8)
    for v in orthogonal_roots(k, seed):
        m = matmul(m, reflection(E8, v))
    return m if sign == 1 else negate(m)


def enriques_tau():
    """tau on K3 = U + U + U + E8 + E8: -1 on the first U, swaps of the other two pairs."""
    return validate_involution(K3, blockdiag(N2, pairswap(2), pairswap(8)))


def tau_invariant_basis():
    """Basis of L^tau written as the image of the standard basis of U + E8."""
    out = []
    for i in range(10):
        v = [0] * 22
        if i < 2:
            v[2 + i] = v[4 + i] = 1
        else:
            v[6 + i - 2] = v[14 + i - 2] = 1
        out.append(tuple(v))
    return out


def gamma_action(eps, psi, phi, swap_u: bool, swap_e: bool):
    """(sigma, tau*sigma, theta) for sigma = eps + (psi,psi)[swap] + (phi,phi)[swap]."""
    a = blockdiag(psi, psi)
    if swap_u:
        a = matmul(a, pairswap(2))
    b = blockdiag(phi, phi)
    if swap_e:
        b = matmul(b, pairswap(8))
    sigma = validate_involution(K3, blockdiag(eps, a, b))
    return sigma, sigma * enriques_tau(), validate_involution(ENRIQUES, blockdiag(psi, phi))


def random_root(l: IntegerLattice, rnd: random.Random, spread: int = 1) -> tuple[int, ...]:
    while True:
        v = tuple(rnd.randint(-spread, spread) for _ in range(l.rank))
        if l.dot(v, v) in (2, -2):
            return v


def random_isometry(l: IntegerLattice, rnd: random.Random, steps: int = 3):
    """(g, g^-1) for a product of reflections in random (+-2)-vectors."""
    g = ginv = identity(l.rank)
    for _ in range(steps):
        r = reflection(l, random_root(l, rnd))
        g = matmul(g, r)
        ginv = matmul(r, ginv)
    return g, ginv


def conjugate(inv: LatticeInvolution, rnd: random.Random, steps: int = 3) -> LatticeInvolution:
    g, ginv = random_isometry(inv.lattice, rnd, steps)
    return validate_involution(inv.lattice, matmul(matmul(g, inv.matrix), ginv))


def fixture_involutions() -> list[LatticeInvolution]:
    """Hand-built involutions on U+U, U+E8 and K3."""
    out = []
    for a in U_MOVES.values():
        for b in U_MOVES.values():
            out.append(validate_involution(UU, blockdiag(a, b)))
    out.append(validate_involution(UU, pairswap(2)))
    out.append(validate_involution(UU, negate(pairswap(2))))
    for name, a in U_MOVES.items():
        for k in (0, 1, 4, 8):
            out.append(validate_involution(UE8, blockdiag(a, e8_involution(k, k))))
    out.append(validate_involution(K3, identity(22)))
    out.append(enriques_tau())
    for eps, psi, k, su, se in (("I", "SW", 2, 0, 1), ("N", "NSW", 3, 1, 0), ("SW", "I", 5, 1, 1),
                                ("NSW", "N", 0, 0, 0)):
        s, ts, _ = gamma_action(U_MOVES[eps], U_MOVES[psi], e8_involution(k, k), su, se)
        out += [s, ts]
    return out
