from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import settings
from sympy.combinatorics import Permutation, PermutationGroup

from oddrep.groupcore import PermGroup
from oddrep.smallfield import FieldMatrix

# fixed example sequence so repeated runs are reproducible
settings.register_profile("repro", derandomize=True)
settings.load_profile("repro")


def to_sympy(G: PermGroup) -> PermutationGroup:
    gens = [Permutation(list(g.images)) for g in G.generators] or [Permutation(list(range(max(G.degree, 1))))]
    return PermutationGroup(gens)


def matrix_elements_bruteforce(gens, n, p):
    """All products of generators, by breadth-first closure on row tuples."""
    ident = FieldMatrix.identity(n, p)
    seen = {ident.rows: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g
                if b.rows not in seen:
                    seen[b.rows] = b
                    nxt.append(b)
        frontier = nxt
    return list(seen.values())


def all_vectors(n, p):
    return list(itertools.product(range(p), repeat=n))


def np_mat(m: FieldMatrix) -> np.ndarray:
    return np.array(m.rows, dtype=np.int64)


@pytest.fixture(scope="session")
def catalogs():
    from oddrep.catalog import build_catalog

    return {n: build_catalog(n) for n in range(5)}


# acceptance-criterion ledger, printed at the end of the run
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def record_acceptance(key: str, ok: bool, detail: str = "") -> bool:
    prev = ACCEPTANCE.get(key)
    if prev is not None:
        ok = ok and prev[0]
        detail = f"{prev[1]}; {detail}" if detail else prev[1]
    ACCEPTANCE[key] = (ok, detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split()[0]), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
