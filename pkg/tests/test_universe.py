from __future__ import annotations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from oddrep.smallfield import FieldMatrix, gl_order, rank, vec_index
from oddrep.universe import GL2Universe, MatUniverse, OddSubgroupSearch, SymUniverse, batch_rank, join_closure_search, odd_part


def test_odd_part():
    assert [odd_part(n) for n in (1, 2, 12, 45, 64)] == [1, 1, 3, 45, 1]


@settings(max_examples=30)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.data())
def test_batch_rank_matches_scalar_rank(p, n, data):
    mats = data.draw(st.lists(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n, max_size=n), min_size=1, max_size=5))
    got = batch_rank(np.array(mats), p)
    want = [rank([vec_index(r, p) for r in m], n, p) for m in mats]
    assert got.tolist() == want


def test_universe_sizes_and_roundtrip():
    for n in (1, 2, 3, 4):
        U = GL2Universe(n)
        assert len(U.codes) == gl_order(n, 2)
        g = U.to_matrix(int(U.codes[len(U.codes) // 2]))
        assert U.to_matrix(U.from_matrix(g)) == g
        # multiplication agrees with matrix products
        a, b = U.codes[0], U.codes[-1]
        assert U.to_matrix(int(U.mul(a, b))) == U.to_matrix(int(a)) * U.to_matrix(int(b))
    M = MatUniverse.general_linear(2, 3)
    assert M.order == 48
    assert SymUniverse(4).order == 24


def test_search_agrees_with_join_oracle():
    for U in (GL2Universe(3), MatUniverse.general_linear(2, 5), SymUniverse(6)):
        a = sorted(s.order for s in OddSubgroupSearch(U).run())
        b = sorted(s.order for s in join_closure_search(U))
        assert a == b


def test_search_is_thread_independent():
    U = GL2Universe(4)
    one = [tuple(s.codes.tolist()) for s in OddSubgroupSearch(U, threads=1).run()]
    four = [tuple(s.codes.tolist()) for s in OddSubgroupSearch(U, threads=4).run()]
    assert one == four
