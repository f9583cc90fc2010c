from __future__ import annotations

import itertools

import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from oddrep.action import MatGroup, singer_cycle
from oddrep.groupcore import ResourceError, class_number
from oddrep.semidirect import (
    AbelianGroup2,
    NoFaithfulActionError,
    automorphism_group_order,
    build_affine,
    hartley_turull_witness,
    k_semidirect_bruteforce,
    k_semidirect_formula,
    require_faithful_order,
)


def aut_count_bruteforce(factors):
    """Automorphisms of A counted as bijective images of the standard generators."""
    A = AbelianGroup2(factors)
    elems = [A.element(i) for i in range(A.order)]
    count = 0
    for imgs in itertools.product(elems, repeat=len(factors)):
        # the generator of Z_c must go to an element of order dividing c
        if any(any((c * x) % f for x, f in zip(img, factors)) for img, c in zip(imgs, factors)):
            continue
        seen = {tuple((sum(k * img[j] for k, img in zip(coef, imgs))) % factors[j] for j in range(len(factors)))
                for coef in (A.element(i) for i in range(A.order))}
        count += len(seen) == A.order
    return count


@pytest.mark.parametrize("factors", [[2], [4], [2, 2], [2, 4], [4, 4], [2, 2, 2], [2, 8]])
def test_automorphism_group_order(factors):
    assert automorphism_group_order(factors) == aut_count_bruteforce(factors)


def test_no_faithful_action():
    with pytest.raises(NoFaithfulActionError):
        require_faithful_order(5, AbelianGroup2([2, 2]))
    assert require_faithful_order(3, AbelianGroup2([2, 2])) == 6


def test_affine_group_orders_and_classes_against_sympy():
    for n in (2, 3):
        M = MatGroup([singer_cycle(n, 2)])
        aff = build_affine(M, AbelianGroup2([2] * n))
        S = PermutationGroup([Permutation(list(g.images)) for g in aff.group.generators])
        assert aff.order == S.order() == M.order * 2 ** n
        assert class_number(aff.group) == len(S.conjugacy_classes())
        assert k_semidirect_formula(M) == len(S.conjugacy_classes())


def test_formula_equals_bruteforce_on_known_values():
    # Z3 on GF(2)^2 gives A4 (4 classes); Z7 on GF(2)^3 gives 2^3:7 (8 classes)
    assert k_semidirect_formula(MatGroup([singer_cycle(2, 2)])) == 4
    assert k_semidirect_bruteforce(MatGroup([singer_cycle(2, 2)])) == 4
    assert k_semidirect_formula(MatGroup([singer_cycle(3, 2)])) == 8
    assert k_semidirect_bruteforce(MatGroup([singer_cycle(3, 2)])) == 8


def test_non_elementary_extension():
    A = AbelianGroup2([4, 4])
    aut = A.automorphism_from_matrix([[0, 1], [3, 3]])
    assert A.is_automorphism(aut)
    aff = build_affine([aut], A)
    S = PermutationGroup([Permutation(list(g.images)) for g in aff.group.generators])
    assert aff.order == 48
    ht = hartley_turull_witness([aut], A)
    assert ht["k_GA"] == len(S.conjugacy_classes())
    assert ht["found"] and ht["k_GB"] == ht["k_GA"]


def test_affine_cap():
    from oddrep.groupcore import set_element_cap

    set_element_cap(10)
    try:
        with pytest.raises(ResourceError):
            build_affine(MatGroup([singer_cycle(2, 2)]), AbelianGroup2([2, 2]))
    finally:
        set_element_cap(10 ** 6)
