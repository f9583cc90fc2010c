"""One test per acceptance criterion, each at its stated tolerance.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

from __future__ import annotations

import io
import time
from pathlib import Path

import pytest

from conftest import record_acceptance
from oddrep.action import (
    MatGroup,
    extraspecial_example,
    regular_orbit_count,
    regular_orbit_count_bruteforce,
    set_orbit_stats,
    set_orbit_stats_bruteforce,
    strongly_regular_lower_bound,
)
from oddrep.catalog import (
    build_catalog,
    enumerate_odd_subgroups_glp,
    enumerate_odd_subgroups_sym,
    lemma22_summary,
    read_catalog,
)
from oddrep.chartab import character_table, column_orthogonality, count_odd_degree, row_orthogonality
from oddrep.cli import main
from oddrep.groupcore import class_number, is_primitive
from oddrep.mckay import affine_corpus, local_data, named_groups
from oddrep.replay import (
    certify_case,
    check_step5,
    enumerate_step7_cases,
    exponent_bound,
    lemma42_inequality,
)
from oddrep.semidirect import AbelianGroup2, build_affine, k_semidirect_formula
from oddrep.verify import odd_primitive_actions


def cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def corpus():
    named = named_groups()
    return named, affine_corpus(4)


@pytest.fixture(scope="module")
def gl2_catalogs():
    return {n: build_catalog(n) for n in range(5)}


def test_c01_f_table(tmp_path):
    t0 = time.perf_counter()
    values = []
    for n in range(5):
        code, text = cli("compute-f", "--n", str(n), "--catalog-dir", str(tmp_path))
        assert code == 0
        values.append(int(text.splitlines()[0].split("=")[1]))
    elapsed = time.perf_counter() - t0
    ok = values == [1, 2, 4, 8, 8] and elapsed < 300
    record_acceptance("1", ok, f"f(0..4) = {values} in {elapsed:.0f} s")
    assert ok


@pytest.mark.slow
def test_c01_stretch_f5(tmp_path):
    t0 = time.perf_counter()
    code, text = cli("compute-f", "--n", "5", "--catalog-dir", str(tmp_path))
    elapsed = time.perf_counter() - t0
    cat = read_catalog(tmp_path / "odd_gl5_2.jsonl")
    ok = code == 0 and text.splitlines()[0] == "f(5) = 16" and cat.complete and elapsed < 3600
    record_acceptance("1", ok, f"stretch f(5) = 16 in {elapsed:.0f} s")
    bound = all(e.k_gv > 5 for e in cat.entries)
    record_acceptance("2", bound, f"stretch n = 5: {len(cat.entries)} entries, all k(GV) > 5")
    assert ok and bound


def test_c02_class_number_bound(gl2_catalogs):
    viol = [(n, e.canonical_id) for n, c in gl2_catalogs.items() for e in c.entries if not e.k_gv > n]
    total = sum(len(c.entries) for c in gl2_catalogs.values())
    complete = all(c.complete for c in gl2_catalogs.values())
    ok = not viol and complete
    record_acceptance("2", ok, f"{total} entries for n <= 4, {len(viol)} violations")
    assert ok


def test_c03_formula_vs_bruteforce(gl2_catalogs):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for n, cat in gl2_catalogs.items():
        for e in cat.entries:
            if e.order * 2 ** n > 10 ** 5 or n == 0:
                continue
            M = e.mat_group()
            brute = class_number(build_affine(M, AbelianGroup2([2] * n)).group)
            checked += 1
            if brute != k_semidirect_formula(M) or brute != e.k_gv:
                bad.append(e.canonical_id)
    elapsed = time.perf_counter() - t0
    ok = not bad and checked > 0 and elapsed < 600
    record_acceptance("3", ok, f"{checked} entries equal, {len(bad)} mismatches, {elapsed:.1f} s")
    assert ok


def test_c04_global_equals_local(corpus):
    named, affine = corpus
    bad = []
    for name, G in named + affine:
        d = local_data(G)
        if not (d.global_count == d.local_count == d.local_count_kernel):
            bad.append(name)
    ok = not bad and len(named) >= 15 and len(affine) == 15
    record_acceptance("4", ok, f"{len(named)} named + {len(affine)} affine groups, failures {bad}")
    assert ok


def test_c05_odd_degree_bound(corpus):
    named, affine = corpus
    bad = [name for name, G in named + affine if not 2 ** count_odd_degree(G) > local_data(G).abelianization_order]
    record_acceptance("5", not bad, f"{len(named) + len(affine)} groups, failures {bad}")
    assert not bad


def test_c06_table_invariants(corpus):
    named, affine = corpus
    bad = []
    two_groups = even = 0
    for name, G in named + affine:
        t = character_table(G)
        if sum(d * d for d in t.degrees) != G.order or not row_orthogonality(t) or not column_orthogonality(t):
            bad.append(f"{name}: table")
        odd = sum(d % 2 for d in t.degrees)
        if G.order & (G.order - 1) == 0:
            two_groups += 1
            if odd != local_data(G).abelianization_order:
                bad.append(f"{name}: 2-group count")
        if G.order % 2 == 0:
            even += 1
            if odd < 2:
                bad.append(f"{name}: even order")
    record_acceptance("6", not bad, f"{len(named) + len(affine)} tables, {two_groups} 2-groups, {even} even-order, failures {bad}")
    assert not bad


def test_c07_symmetric_groups():
    res = [enumerate_odd_subgroups_sym(m) for m in range(1, 10)]
    eq = [r.m for r in res if r.is_equality()]
    ok = all(r.bound_holds() for r in res) and eq == [1, 3, 9]
    record_acceptance("7", ok, f"maxima {[r.max_order for r in res]}, equality at {eq}")
    assert ok


def test_c08_irreducible_odd_subgroups():
    got = {f"GL({n},{p})": lemma22_summary(n, p)["irreducible_orders"] for n, p in [(2, 3), (2, 7), (2, 5), (4, 3)]}
    want = {"GL(2,3)": [], "GL(2,7)": [], "GL(2,5)": [3], "GL(4,3)": [5]}
    record_acceptance("8", got == want, str(got))
    assert got == want


def test_c09_step5_false_beyond_15():
    t0 = time.perf_counter()
    wrong = [n for n in range(16, 1001) if check_step5(n)]
    ok = not wrong and time.perf_counter() - t0 < 60
    record_acceptance("9", ok, f"step5 false for 16..1000 (exceptions {wrong})")
    assert ok


def test_c09_step5_true_up_to_15():
    false_at = [n for n in range(1, 16) if not check_step5(n)]
    record_acceptance("9", not false_at, f"step5 true for 1..15: false at n = {false_at}")
    assert not false_at, f"the inequality is false at n = {false_at}"


def test_c09_step7_and_lemma():
    t0 = time.perf_counter()
    pairs = [(c.n, c.k) for c in enumerate_step7_cases()]
    golden = [(15, 3), (15, 5), (14, 2), (12, 4), (12, 2), (10, 2), (9, 3), (6, 2)]
    certs = [certify_case(c)["certified"] for c in enumerate_step7_cases()]
    l42 = all(lemma42_inequality(n) for n in range(25, 1001))
    eb = str(exponent_bound(3, 3))
    elapsed = time.perf_counter() - t0
    ok = str(pairs) == str(golden) and all(certs) and l42 and eb == "5/9" and elapsed < 60
    record_acceptance("9", ok, f"step7 list exact, {sum(certs)}/8 certified, lemma n >= 25 {l42}, exponent {eb}")
    assert ok


def test_c10_orbit_machinery(gl2_catalogs):
    lin = [e.mat_group() for n in range(1, 5) for e in gl2_catalogs[n].entries]
    for n, p in [(2, 3), (2, 5), (2, 7), (3, 3), (4, 3)]:
        lin += [MatGroup(r.generators, n=n, p=p) for r in enumerate_odd_subgroups_glp(n, p)]
    lin = [M for M in lin if M.p ** M.n <= 2 ** 16]
    bad_lin = sum(regular_orbit_count(M) != regular_orbit_count_bruteforce(M) for M in lin)
    perms = [G for _, G in named_groups() if G.degree <= 13] + [G for _, G in odd_primitive_actions()]
    bad_set = sum(tuple(set_orbit_stats(G)) != tuple(set_orbit_stats_bruteforce(G)) for G in perms)
    prim = [G for G in perms if G.order % 2 == 1 and G.degree > 1 and is_primitive(G)]
    bad_bound = sum(set_orbit_stats(G)[2] < strongly_regular_lower_bound(G.degree) for G in prim)
    ok = not (bad_lin or bad_set or bad_bound) and prim
    record_acceptance("10", bool(ok), f"{len(lin)} linear and {len(perms)} permutation actions agree; bound on {len(prim)} odd primitive actions")
    assert ok


def test_c11_extraspecial_regular_orbits():
    t0 = time.perf_counter()
    M = extraspecial_example()
    count = regular_orbit_count(M)
    elapsed = time.perf_counter() - t0
    ok = M.order == 375 and count >= 212 and elapsed < 300
    record_acceptance("11", ok, f"|G| = {M.order}, {count} regular orbits on 11^5 vectors, {elapsed:.1f} s")
    assert ok


def test_c12_determinism(tmp_path):
    code1, a = cli("verify", "--suite", "all", "--threads", "1", "--catalog-dir", str(tmp_path / "t1"))
    code4, b = cli("verify", "--suite", "all", "--threads", "4", "--catalog-dir", str(tmp_path / "t4"))
    files1 = {p.name: p.read_bytes() for p in sorted((tmp_path / "t1").iterdir())}
    files4 = {p.name: p.read_bytes() for p in sorted((tmp_path / "t4").iterdir())}
    ok = a == b and code1 == code4 and files1 == files4 and len(files1) == 5
    record_acceptance("12", ok, f"reports identical ({len(a.splitlines())} lines), {len(files1)} catalog files identical")
    assert ok
