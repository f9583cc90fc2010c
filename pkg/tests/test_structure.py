from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF, Matrix, Poly, symbols

from oddrep.action import MatGroup, extraspecial_example, singer_cycle
from oddrep.catalog import monic_irreducible_factors
from oddrep.structure import (
    HypothesisError,
    build_semilinear,
    check_e_exclusion,
    conway_polynomial,
    distinct_degree_factors,
    field_table,
    is_homogeneous,
    is_primitive_poly,
    minimal_polynomial,
    primitive_polynomial,
    quasi_primitive_data,
    scalars_fixed_point_free,
    semilinear_matrices,
)
from oddrep.smallfield import FieldMatrix, block_diag

x = symbols("x")


def low_to_high(poly: Poly, p: int) -> list[int]:
    return [int(c) % p for c in reversed(poly.all_coeffs())]


def sympy_factors(f: list[int], p: int) -> list[list[int]]:
    P = Poly(list(reversed(f)), x, modulus=p)
    return sorted(low_to_high(g, p) for g, _ in P.factor_list()[1])


def monic(f, p):
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def eval_at_matrix(f: list[int], g: FieldMatrix) -> np.ndarray:
    a = np.array(g.rows, dtype=np.int64)
    acc = np.zeros_like(a)
    for c in reversed(f):
        acc = (acc @ a + c * np.eye(g.n, dtype=np.int64)) % g.p
    return acc


# Standard Conway polynomial values (low-to-high coefficients)
CONWAY = {
    (2, 3): [1, 1, 0, 1],
    (2, 4): [1, 1, 0, 0, 1],
    (2, 5): [1, 0, 1, 0, 0, 1],
    (2, 8): [1, 0, 1, 1, 1, 0, 0, 0, 1],
    (3, 2): [2, 2, 1],
    (3, 3): [1, 2, 0, 1],
    (5, 2): [2, 4, 1],
    (7, 2): [3, 6, 1],
}


@pytest.mark.parametrize("pm", sorted(CONWAY))
def test_conway_polynomials_from_definition(pm):
    p, m = pm
    assert conway_polynomial(p, m) == CONWAY[pm]
    assert primitive_polynomial(p, m) == CONWAY[pm]


def test_shipped_table_matches_definition_where_cheap():
    from oddrep.structure import _poly_table

    for key, f in _poly_table()["polynomials"].items():
        p, m = map(int, key.split(","))
        if p ** m <= 2 ** 12:
            assert conway_polynomial(p, m) == f, key
        assert is_primitive_poly(f, p)


@st.composite
def square(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 4))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n, max_size=n))
    return FieldMatrix(rows, p)


@settings(max_examples=60, deadline=None)
@given(square())
def test_minimal_polynomial_against_sympy_charpoly(g):
    p = g.p
    mp = minimal_polynomial(g)
    assert mp[-1] == 1
    assert not eval_at_matrix(mp, g).any()
    cp = Poly(Matrix(g.rows).charpoly(x).as_expr(), x, modulus=p)
    mpp = Poly(list(reversed(mp)), x, modulus=p)
    assert cp.rem(mpp).is_zero
    # minimality: dropping any irreducible factor no longer annihilates g
    for f in sympy_factors(mp, p):
        q = mpp.quo(Poly(list(reversed(f)), x, modulus=p))
        assert eval_at_matrix(low_to_high(q, p), g).any()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 11]), st.lists(st.integers(0, 10), min_size=1, max_size=7))
def test_irreducible_factors_against_sympy(p, tail):
    f = [c % p for c in tail] + [1]
    assert sorted(monic_irreducible_factors(f, p)) == sorted(monic(g, p) for g in sympy_factors(f, p))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(0, 4), min_size=1, max_size=6))
def test_distinct_degree_factors(p, tail):
    f = [c % p for c in tail] + [1]
    P = Poly(list(reversed(f)), x, modulus=p)
    # squarefree precondition; Poly.is_sqf misreports x^4 over GF(2), so use multiplicities
    if any(mult > 1 for _, mult in P.sqf_list()[1]):
        return
    got = distinct_degree_factors(f, p)
    want = {}
    for g in sympy_factors(f, p):
        d = len(g) - 1
        want[d] = want.get(d, Poly(1, x, modulus=p)) * Poly(list(reversed(g)), x, modulus=p)
    assert {d: monic(v, p) for d, v in got.items()} == {d: monic(low_to_high(v, p), p) for d, v in want.items()}


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)])
def test_field_and_semilinear_group(q, m):
    F = field_table(q, m)
    size = F.size
    # the multiplicative group is cyclic of order q^m - 1 and mul is associative
    assert sorted(F.exp.tolist()) == list(range(1, size))
    for a, b, c in [(1, 2, 3), (size - 1, 2, size - 2)]:
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    S = build_semilinear(q, m)
    assert S.order == (q ** m - 1) * m
    assert scalars_fixed_point_free(S)
    mult, frob = semilinear_matrices(q, m)
    assert MatGroup([mult, frob]).order == S.order
    assert mult.order() == q ** m - 1


def test_quasi_primitive_chain_examples():
    s3 = singer_cycle(3, 2)
    d = quasi_primitive_data(MatGroup([s3]))
    assert d.ok and d.e == 1 and d.T.order == 7 and d.W_dim == 3
    d = quasi_primitive_data(MatGroup(list(semilinear_matrices(2, 3))))
    assert d.ok and d.e == 1 and d.F.order == 7 and d.group_order == 21
    d = quasi_primitive_data(extraspecial_example())
    assert d.ok and d.e == 5 and d.E.order == 125 and d.Z.order == 5


def test_chain_rejects_bad_hypotheses():
    s = singer_cycle(2, 2)
    with pytest.raises(HypothesisError):
        quasi_primitive_data(MatGroup([block_diag(s, s)]))
    with pytest.raises(HypothesisError):
        quasi_primitive_data(MatGroup([FieldMatrix([[0, 1], [1, 0]], 3)]))


def test_homogeneity():
    s = singer_cycle(2, 2)
    assert is_homogeneous([block_diag(s, s)], 4, 2)
    assert not is_homogeneous([block_diag(s, FieldMatrix.identity(2, 2))], 4, 2)


def test_e_exclusion():
    rep = check_e_exclusion([("Z7", MatGroup([singer_cycle(3, 2)]))])
    assert rep["passed"]
    assert rep["irreducible_odd_orders"] == {"GL(2,3)": [], "GL(2,7)": []}
