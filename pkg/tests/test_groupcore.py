from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import to_sympy
from oddrep.groupcore import (
    Perm,
    PermGroup,
    ResourceError,
    alternating_group,
    center,
    centralizer,
    class_number,
    conjugacy_classes,
    cyclic_group,
    derived_subgroup,
    element_order_counts,
    fitting_subgroup,
    is_normal,
    is_primitive,
    is_solvable,
    normalizer,
    parse_perm,
    parse_perm_list,
    quotient_group,
    set_element_cap,
    set_stabilizer_order,
    sylow_subgroup,
    symmetric_group,
)
from oddrep.mckay import named_groups

NAMED = named_groups()
SMALL = [(n, G) for n, G in NAMED if G.order <= 720]


@st.composite
def perm_groups(draw):
    d = draw(st.integers(2, 7))
    k = draw(st.integers(1, 3))
    gens = [Perm(draw(st.permutations(range(d)))) for _ in range(k)]
    return PermGroup(gens, d)


def test_composition_applies_left_factor_first():
    p = parse_perm("(0 1 2)", 3)
    q = parse_perm("(0 1)", 3)
    assert (p * q).images == (0, 2, 1)
    # conjugation g^-1 x g relabels points of x by g
    x = parse_perm("(0 1)", 3)
    assert x.conjugate(p) == parse_perm("(1 2)", 3)


def test_parse_errors_and_degree():
    assert parse_perm_list("(0 1), (2 3)")[0].degree == 4
    with pytest.raises(ValueError):
        parse_perm_list("(0 1")


@settings(max_examples=40, deadline=None)
@given(perm_groups())
def test_order_and_classes_match_sympy(G):
    S = to_sympy(G)
    assert G.order == S.order()
    assert class_number(G) == len(S.conjugacy_classes())
    assert sorted(conjugacy_classes(G).sizes) == sorted(len(c) for c in S.conjugacy_classes())
    assert derived_subgroup(G).order == S.derived_subgroup().order()
    assert center(G).order == S.center().order()
    assert is_solvable(G) == S.is_solvable


@pytest.mark.parametrize("name,G", SMALL, ids=[n for n, _ in SMALL])
def test_named_groups_against_sympy(name, G):
    S = to_sympy(G)
    assert G.order == S.order()
    assert class_number(G) == len(S.conjugacy_classes())
    for p in (2, 3):
        P = sylow_subgroup(G, p)
        assert P.order == S.sylow_subgroup(p).order()
        pset = set(to_sympy(P).elements)
        want = sum(1 for g in S.elements if {x ^ g for x in pset} == pset)
        assert normalizer(G, P).order == want
    if G.is_transitive():
        assert is_primitive(G) == S.is_primitive()


def test_first_class_is_identity_and_reps_lex_minimal():
    G = symmetric_group(4)
    cd = conjugacy_classes(G)
    assert cd.representatives[0].is_identity()
    elems = G.elements()
    for r, label in zip(cd.representatives, range(len(cd))):
        cls = [g for g in elems if any(g == r.conjugate(h) for h in elems)]
        assert r == min(cls)


def test_quotient_group_order_and_structure():
    G = symmetric_group(4)
    V = PermGroup(parse_perm_list("(0 1)(2 3), (0 2)(1 3)", 4), 4)
    assert is_normal(G, V)
    Q = quotient_group(G, V)
    assert Q.order == 6
    assert class_number(Q) == 3          # S3
    with pytest.raises(ValueError):
        quotient_group(G, PermGroup([parse_perm("(0 1)", 4)], 4))


def test_centralizer_fitting_and_orders():
    G = symmetric_group(4)
    g = parse_perm("(0 1 2 3)", 4)
    assert centralizer(G, g).order == 4
    assert fitting_subgroup(G).order == 4
    assert element_order_counts(G) == {1: 1, 2: 9, 3: 8, 4: 6}
    assert fitting_subgroup(alternating_group(5)).order == 1


def test_set_stabilizer_bruteforce():
    G = cyclic_group(6)
    for subset in ([0], [0, 3], [0, 2, 4], [0, 1]):
        want = sum(1 for g in G.elements() if {g(i) for i in subset} == set(subset))
        assert set_stabilizer_order(G, subset) == want


def test_element_cap_raises():
    set_element_cap(100)
    try:
        with pytest.raises(ResourceError):
            symmetric_group(6).elements()
    finally:
        set_element_cap(10 ** 6)
