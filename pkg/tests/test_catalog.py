from __future__ import annotations

import functools
import itertools
import json

import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from conftest import matrix_elements_bruteforce
from oddrep.action import MatGroup, singer_cycle
from oddrep.catalog import (
    build_catalog,
    catalog_lines,
    catalog_path,
    compute_f,
    conjugate_subgroups,
    enumerate_odd_subgroups_glp,
    enumerate_odd_subgroups_sym,
    lemma22_summary,
    read_catalog,
    write_catalog,
)
from oddrep.groupcore import ResourceError
from oddrep.semidirect import AbelianGroup2, build_affine
from oddrep.smallfield import FieldMatrix, is_irreducible


def gl_elements(n, p):
    out = []
    for rows in itertools.product(itertools.product(range(p), repeat=n), repeat=n):
        m = FieldMatrix(rows, p)
        if m.determinant():
            out.append(m)
    return out


@functools.lru_cache(maxsize=None)
def odd_subgroup_classes_bruteforce(n, p):
    """Odd-order subgroups of GL(n,p) generated by at most two elements, up to conjugacy.

    Every odd-order subgroup of the small GL(n,p) used here is 2-generated.
    """
    elems = gl_elements(n, p)
    cyclic = {}
    for g in elems:
        if g.order() % 2:
            key = frozenset((g ** k).rows for k in range(g.order()))
            cyclic.setdefault(key, g)
    subs = set()
    for a, b in itertools.combinations_with_replacement(list(cyclic.values()), 2):
        H = matrix_elements_bruteforce([a, b], n, p)
        if len(H) % 2:
            subs.add(frozenset(h.rows for h in H))
    classes = []
    seen = set()
    for S in sorted(subs, key=lambda s: (len(s), sorted(s))):
        if S in seen:
            continue
        mats = [FieldMatrix(r, p) for r in S]
        conj = {frozenset((x.inverse() * h * x).rows for h in mats) for x in elems}
        seen |= conj
        classes.append(mats)
    return classes


@pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (2, 3), (2, 5), (2, 7)])
def test_odd_subgroup_classes_against_bruteforce(n, p):
    oracle = odd_subgroup_classes_bruteforce(n, p)
    if p == 2:
        got = sorted(e.order for e in build_catalog(n).entries)
    else:
        got = sorted(r.order for r in enumerate_odd_subgroups_glp(n, p))
    assert got == sorted(len(c) for c in oracle)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_irreducible_orders_gl2_against_bruteforce(p):
    oracle = odd_subgroup_classes_bruteforce(2, p)
    want = sorted({len(c) for c in oracle if is_irreducible(c)})
    assert lemma22_summary(2, p)["irreducible_orders"] == want


def test_f_table(catalogs):
    assert [compute_f(n, catalog=catalogs[n]).value for n in range(5)] == [1, 2, 4, 8, 8]
    for n, cat in catalogs.items():
        assert cat.complete
        assert cat.oracle_certified is True
        assert all(e.k_gv > n for e in cat.entries)


def test_k_gv_against_sympy(catalogs):
    for n in range(1, 5):
        for e in catalogs[n].entries:
            if e.order * 2 ** n > 2000:
                continue
            aff = build_affine(e.mat_group(), AbelianGroup2([2] * n))
            S = PermutationGroup([Permutation(list(g.images)) for g in aff.group.generators])
            assert len(S.conjugacy_classes()) == e.k_gv


def test_entry_invariants(catalogs):
    for n in range(1, 5):
        for e in catalogs[n].entries:
            M = e.mat_group()
            assert M.order == e.order and e.order % 2 == 1
            assert e.irreducible == M.is_irreducible()
            assert sum(c for _, _, c in e.element_data) == e.order
            assert sum(e.class_size_multiset) == e.order


def test_catalog_roundtrip_and_determinism(tmp_path, catalogs):
    cat = catalogs[3]
    path = catalog_path(tmp_path, 3)
    write_catalog(cat, path)
    again = read_catalog(path)
    assert catalog_lines(again) == catalog_lines(cat)
    head = json.loads(path.read_text().splitlines()[0])
    assert head["kind"] == "header" and head["complete"] and head["entries"] == len(cat.entries)
    assert catalog_lines(build_catalog(3, threads=3)) == catalog_lines(cat)


def test_conjugacy_search():
    s = singer_cycle(3, 2)
    x = FieldMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]], 2)
    H1, H2 = MatGroup([s]), MatGroup([x.inverse() * s * x])
    c = conjugate_subgroups(H1, H2)
    assert c is not None
    assert MatGroup([c * s * c.inverse()]).order == 7
    assert all(H2.contains(c * g * c.inverse()) for g in H1.generators)
    assert conjugate_subgroups(MatGroup([s]), MatGroup([s ** 3])) is not None
    assert conjugate_subgroups(MatGroup([s]), MatGroup([FieldMatrix.identity(3, 2)])) is None


def test_resource_cap():
    with pytest.raises(ResourceError):
        build_catalog(6)


def odd_subgroup_max_order_sym_bruteforce(m):
    from itertools import permutations

    cyclic = {}
    for p in permutations(range(m)):
        g = Permutation(list(p))
        if g.order() % 2:
            cyclic.setdefault(frozenset(tuple((g ** k).array_form) for k in range(g.order())), g)
    best = 1
    for a, b in itertools.combinations_with_replacement(list(cyclic.values()), 2):
        G = PermutationGroup([a, b])
        o = G.order()
        if o % 2:
            best = max(best, o)
    return best


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_sym_max_against_bruteforce(m):
    assert enumerate_odd_subgroups_sym(m).max_order == odd_subgroup_max_order_sym_bruteforce(m)


def test_sym_bound_and_equality_cases():
    res = [enumerate_odd_subgroups_sym(m) for m in range(1, 10)]
    assert all(r.bound_holds() for r in res)
    assert [r.m for r in res if r.is_equality()] == [1, 3, 9]
    r9 = res[-1]
    G = PermutationGroup([Permutation(list(g.images)) for g in r9.witness])
    assert G.order() == 81


def test_gl43_irreducible_order():
    assert lemma22_summary(4, 3)["irreducible_orders"] == [5]
