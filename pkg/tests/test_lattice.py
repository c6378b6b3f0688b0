import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from real_enriques.lattice import (E8, EMPTY, U, IntegerLattice, LatticeError, determinant,
                                   direct_sum, format_lattice, integer_kernel, is_primitive,
                                   lattice_properties, matmul, parse_lattice, saturation,
                                   standard_lattice, twist)

STANDARD = ("U", "E8", "K3", "ENRIQUES")


def numpy_signature(gram):
    ev = np.linalg.eigvalsh(np.array(gram, dtype=float))
    return int((ev > 1e-9).sum()), int((ev < -1e-9).sum())


def test_u():
    p = lattice_properties(U)
    assert (p.even, p.unimodular, p.det, tuple(p.signature)) == (True, True, -1, (1, 1))


def test_e8_negative_definite():
    p = lattice_properties(E8)
    assert p.even and p.unimodular and abs(p.det) == 1
    assert tuple(p.signature) == (0, 8)
    assert all(E8.gram[i][i] == -2 for i in range(8))


@pytest.mark.parametrize("name,rank,sig", [("K3", 22, (3, 19)), ("ENRIQUES", 10, (1, 9))])
def test_big_standard_lattices(name, rank, sig):
    l = standard_lattice(name)
    assert l.rank == rank and l.is_even and abs(l.det) == 1
    assert tuple(l.signature) == sig


def test_k3_is_block_sum():
    chain = U
    for part in (U, U, E8, E8):
        chain = direct_sum(chain, part)
    assert chain.gram == standard_lattice("K3").gram


def test_unknown_name():
    with pytest.raises(LatticeError, match="unknown standard lattice"):
        standard_lattice("D4")


def test_direct_sum_examples():
    assert direct_sum(U, U).rank == 4 and direct_sum(U, U).det == 1
    assert tuple(direct_sum(U, E8).signature) == (1, 9)
    assert direct_sum(EMPTY, U) == U


def test_twist_examples():
    assert twist(U, 2).gram == ((0, 2), (2, 0)) and twist(U, 2).det == -4
    assert twist(U, 1) == U
    p = lattice_properties(twist(standard_lattice("ENRIQUES"), 2))
    assert p.even and not p.unimodular and abs(p.det) == 2 ** 10
    assert tuple(p.signature) == (1, 9)
    with pytest.raises(LatticeError, match="degenerate twist"):
        twist(U, 0)


def test_degenerate():
    with pytest.raises(LatticeError, match="degenerate lattice"):
        lattice_properties(IntegerLattice(((2, 2), (2, 2))))


def test_det_of_sums_is_product():
    for a, b in itertools.product(STANDARD, repeat=2):
        la, lb = standard_lattice(a), standard_lattice(b)
        assert direct_sum(la, lb).det == la.det * lb.det


@pytest.mark.parametrize("name", STANDARD)
def test_against_sympy_and_numpy(name):
    l = standard_lattice(name)
    assert l.det == sympy.Matrix(l.gram).det()
    assert tuple(l.signature) == numpy_signature(l.gram)


sym_matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.integers(-4, 4), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2)
    .map(lambda xs, n=n: _symmetric(n, xs)))


def _symmetric(n, xs):
    it = iter(xs)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = next(it)
    return tuple(tuple(r) for r in m)


@settings(max_examples=150, deadline=None)
@given(sym_matrices)
def test_det_and_signature_oracles(gram):
    l = IntegerLattice(gram)
    assert determinant(gram) == sympy.Matrix(gram).det()
    if l.det != 0:
        assert tuple(l.signature) == numpy_signature(gram)
        assert sum(l.signature) == l.rank


@settings(max_examples=50, deadline=None)
@given(sym_matrices, st.integers(-3, 3).filter(bool), st.integers(-3, 3).filter(bool))
def test_twist_composes(gram, a, b):
    l = IntegerLattice(gram)
    assert twist(twist(l, a), b) == twist(l, a * b)


int_rows = st.integers(1, 4).flatmap(lambda r: st.integers(r, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=r, max_size=r)))


@settings(max_examples=100, deadline=None)
@given(int_rows)
def test_integer_kernel(rows):
    n = len(rows[0])
    ker = integer_kernel(rows, n)
    m = sympy.Matrix(rows)
    assert len(ker) == n - m.rank()
    for v in ker:
        assert all(x == 0 for x in m * sympy.Matrix(v))
    if ker:
        # saturated: the basis has trivial elementary divisors
        snf = smith_normal_form(sympy.Matrix(ker), domain=sympy.ZZ)
        assert all(abs(snf[i, i]) == 1 for i in range(len(ker)))


def test_primitivity():
    assert is_primitive([(1, 0, 0)], 3)
    assert not is_primitive([(2, 0, 0)], 3)
    assert not is_primitive([(1, 1, 0), (1, -1, 0)], 3)
    assert saturation([(2, 4, 0)], 3) in (((1, 2, 0),), ((-1, -2, 0),))


def test_file_round_trip():
    text = "# comment\n2\n0 1\n1 0\n"
    l = parse_lattice(text)
    assert l == U
    assert format_lattice(l) == "2\n0 1\n1 0\n"
    assert parse_lattice(format_lattice(E8)) == E8


def test_file_errors():
    with pytest.raises(LatticeError):
        parse_lattice("2\n0 1\n")
    with pytest.raises(LatticeError):
        parse_lattice("2\n0 1\n2 0\n")
    with pytest.raises(LatticeError):
        parse_lattice("x\n")


def test_gram_of_sublattice():
    k3 = standard_lattice("K3")
    basis = [tuple(int(i == j) for j in range(22)) for i in (0, 1)]
    assert k3.sublattice_gram(basis) == U.gram
    assert matmul(((1, 0), (0, 1)), U.gram) == U.gram
