from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import matrix_elements_bruteforce, to_sympy
from oddrep.action import (
    MatGroup,
    as_perm_group,
    extraspecial_example,
    fixed_space_dimensions,
    orbit_count_burnside,
    orbit_decomposition,
    regular_orbit_count,
    regular_orbit_count_bruteforce,
    set_orbit_stats,
    set_orbit_stats_bruteforce,
    singer_cycle,
    spanning_perm_group,
    strongly_regular_lower_bound,
    verify_regular_orbit_bound,
)
from oddrep.groupcore import PermGroup, ResourceError, cyclic_group, parse_perm_list, symmetric_group
from oddrep.smallfield import FieldMatrix, vec_index


def naive_orbits(gens, n, p):
    """Orbits on vectors, by breadth-first search with explicit row-vector products."""
    mats = [np.array(g.rows) for g in gens]
    seen, out = set(), []
    for v in itertools.product(range(p), repeat=n):
        if v in seen:
            continue
        orb, queue = {v}, [v]
        while queue:
            w = queue.pop()
            for m in mats:
                u = tuple((np.array(w) @ m % p).tolist())
                if u not in orb:
                    orb.add(u)
                    queue.append(u)
        seen |= orb
        out.append(orb)
    return out


@st.composite
def small_mat_groups(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 3 if p < 5 else 2))
    gens = []
    for _ in range(draw(st.integers(1, 2))):
        rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n, max_size=n))
        m = FieldMatrix(rows, p)
        if m.determinant():
            gens.append(m)
    if not gens:
        gens = [FieldMatrix.identity(n, p)]
    return MatGroup(gens)


@settings(max_examples=40, deadline=None)
@given(small_mat_groups())
def test_orbits_order_and_regular_count_against_naive(M):
    elems = matrix_elements_bruteforce(M.generators, M.n, M.p)
    assert M.order == len(elems)
    dec = orbit_decomposition(M)
    naive = naive_orbits(M.generators, M.n, M.p)
    assert sorted(dec.sizes) == sorted(len(o) for o in naive)
    reps = sorted(vec_index(min(o, key=lambda v: vec_index(v, M.p)), M.p) for o in naive)
    assert [r.index for r in dec.representatives] == reps
    assert regular_orbit_count(M) == regular_orbit_count_bruteforce(M)
    assert len(dec) == orbit_count_burnside(M)


def test_z3_in_gl22_has_one_regular_orbit():
    g = FieldMatrix([[0, 1], [1, 1]], 2)
    rep = verify_regular_orbit_bound(MatGroup([g]), 2)
    assert rep["regular_orbits"] == 1
    assert not rep["passed"]
    assert "counterexample" in rep


def test_singer_cycle_is_transitive_on_nonzero_vectors():
    for n in (2, 3, 4):
        M = MatGroup([singer_cycle(n, 2)])
        assert M.order == 2 ** n - 1
        assert sorted(orbit_decomposition(M).sizes) == [1, 2 ** n - 1]


def test_spanning_perm_group_is_faithful():
    M = MatGroup([singer_cycle(3, 2)])
    P, pts = spanning_perm_group(M)
    assert P.order == M.order
    assert as_perm_group(M).order == M.order


def test_domain_cap():
    with pytest.raises(ResourceError):
        orbit_decomposition(MatGroup([singer_cycle(4, 2)]), domain_cap=8)


def test_fixed_space_histogram_sums_to_order():
    M = MatGroup([singer_cycle(3, 2)])
    assert fixed_space_dimensions(M) == {0: 6, 3: 1}


@pytest.mark.parametrize("G", [
    cyclic_group(5),
    symmetric_group(4),
    PermGroup(parse_perm_list("(0 1 2 3 4 5 6), (1 2 4)(3 6 5)"), 7),
], ids=["Z5", "S4", "F21"])
def test_set_orbit_stats_against_bruteforce_and_sympy(G):
    total, regular, strong = set_orbit_stats(G)
    assert (total, regular, strong) == set_orbit_stats_bruteforce(G)
    S = to_sympy(G)
    d = G.degree
    # orbit count on subsets, by Burnside with sympy's element list
    fix = sum(2 ** len(g.cyclic_form + [[i] for i in range(d) if g(i) == i]) for g in S.elements)
    assert total == fix // S.order()


def test_strongly_regular_lower_bound():
    assert [strongly_regular_lower_bound(d) for d in (1, 13, 25, 26, 50, 51)] == [1, 1, 1, 2, 2, 3]


def test_extraspecial_example_structure_and_orbits():
    M = extraspecial_example()
    assert (M.n, M.p, M.order) == (5, 11, 375)
    assert M.is_irreducible()
    dec = orbit_decomposition(M)
    assert sum(dec.sizes) == 11 ** 5
    assert dec.regular_count >= 212
    # orbit-counting lemma as an independent count
    assert len(dec) == orbit_count_burnside(M)
