from __future__ import annotations

import json

import pytest

from conftest import to_sympy
from oddrep.groupcore import PermGroup, parse_perm_list
from oddrep.mckay import (
    affine_corpus,
    characters_with_kernel_containing,
    corpus_text,
    format_report_line,
    local_data,
    named_group,
    named_groups,
    verify_malle_spath,
    verify_theorem_1_2,
)

NAMED = named_groups()


def local_count_bruteforce(G: PermGroup) -> tuple[int, int]:
    """(|P/P'|, k(N_G(P)/P')) from sympy element lists.

    Classes of N/P' are the orbits of N acting by conjugation on the cosets of P'.
    """
    S = to_sympy(G)
    P = S.sylow_subgroup(2)
    Pd = set(P.derived_subgroup().elements)
    pset = set(P.elements)
    N = [g for g in S.elements if {x ^ g for x in pset} == pset]
    cosets = {}
    for x in N:
        cosets.setdefault(frozenset(x * d for d in Pd), x)
    seen, classes = set(), 0
    for c, x in cosets.items():
        if c in seen:
            continue
        classes += 1
        for g in N:
            y = x ^ g
            seen.add(frozenset(y * d for d in Pd))
    return P.order() // len(Pd), classes


@pytest.mark.parametrize("name,G", NAMED, ids=[n for n, _ in NAMED])
def test_local_data_against_bruteforce(name, G):
    d = local_data(G)
    ab, k = local_count_bruteforce(G)
    assert d.abelianization_order == ab
    assert d.local_count == k
    assert d.local_count_kernel == k
    assert d.global_count == k            # the global/local equality


def test_corpus_has_expected_orders():
    data = json.loads(corpus_text())
    assert len(data["groups"]) >= 15
    for (name, G), rec in zip(NAMED, data["groups"]):
        assert to_sympy(G).order() == rec["order"] == G.order, name


def test_affine_corpus():
    groups = affine_corpus(4)
    assert len(groups) == 1 + 2 + 4 + 8
    for name, G in groups:
        rep = verify_malle_spath(G, name)
        assert rep["pass"], rep
        assert verify_theorem_1_2(G, name)["pass"]


def test_reports():
    G = named_group("S4")
    rep = verify_theorem_1_2(G, "S4")
    # S4: P = D8, |P/P'| = 4, odd-degree characters 1,1,3,3
    assert (rep["abelianization"], rep["global"], rep["pass"], rep["burnside"]) == (4, 4, True, True)
    line = format_report_line(rep)
    assert line.startswith("S4") and line.endswith("PASS")
    assert verify_malle_spath(G, "S4")["local"] == 4


def test_two_groups_count_equals_abelianization():
    for name in ("Z2", "Z4", "V4", "D8", "Q8", "Z2^3", "D16"):
        d = local_data(named_group(name))
        assert d.global_count == d.abelianization_order, name


def test_odd_order_group_has_only_trivial_local_data():
    d = local_data(named_group("F21"))
    assert d.P.order == 1 and d.abelianization_order == 1
    assert d.global_count == d.local_count == 5      # degrees 1, 1, 1, 3, 3


def test_kernel_characters():
    G = named_group("S4")
    V = PermGroup(parse_perm_list("(0 1)(2 3), (0 2)(1 3)", 4), 4)
    assert characters_with_kernel_containing(G, V) == 3      # the characters of S3
    assert characters_with_kernel_containing(G, G) == 1


def test_unknown_name():
    with pytest.raises(KeyError):
        named_group("nope")
