"""Verification suites: each returns a list of PASS/FAIL checks.

Suites are deterministic: the same inputs give the same report text
regardless of the worker count, because work items are mapped in order
and results are collected in input order.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .action import (
    MatGroup,
    extraspecial_example,
    regular_orbit_count,
    regular_orbit_count_bruteforce,
    set_orbit_stats,
    set_orbit_stats_bruteforce,
    singer_cycle,
    strongly_regular_lower_bound,
    verify_regular_orbit_bound,
)
from .catalog import (
    Catalog,
    build_catalog,
    catalog_lines,
    catalog_path,
    compute_f,
    enumerate_odd_subgroups_glp,
    enumerate_odd_subgroups_sym,
    lemma22_summary,
    read_catalog,
    write_catalog,
)
from .chartab import character_table, column_orthogonality, row_orthogonality
from .config import RunConfig
from .groupcore import Perm, PermGroup, is_primitive
from .mckay import affine_corpus, local_data, named_groups, verify_malle_spath, verify_theorem_1_2
from .replay import (
    CertificationError,
    case_log,
    certify_case,
    check_step5,
    check_step6,
    enumerate_step7_cases,
    exponent_bound,
    lemma42_inequality,
)
from .semidirect import AbelianGroup2, hartley_turull_witness, k_semidirect_bruteforce
from .structure import check_e_exclusion, semilinear_matrices

SUITES = ("theorem1", "theorem3", "mckay", "lemmas", "orbits", "replay")
EXPECTED_F = {0: 1, 1: 2, 2: 4, 3: 8, 4: 8}
STEP7_CASES = [(15, 3), (15, 5), (14, 2), (12, 4), (12, 2), (10, 2), (9, 3), (6, 2)]
FORMULA_BRUTE_CAP = 10 ** 5
EXTRASPECIAL_CLAIM = 212


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.suite}/{self.name}: {self.detail}".rstrip()

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "passed": self.passed, "detail": self.detail, "data": self.data}


def pmap(fn: Callable, items: Sequence, threads: int = 1) -> list:
    """Ordered map, optionally over a thread pool."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(fn, items))


def _names(pairs: Iterable[tuple[str, object]]) -> list[str]:
    return [n for n, _ in pairs]


def corpus(cfg: RunConfig, max_n: int = 4) -> list[tuple[str, PermGroup]]:
    return named_groups(cfg.corpus_path) + affine_corpus(max_n)


# ---------------------------------------------------------------------------
# odd-degree characters

def suite_theorem1(cfg: RunConfig) -> list[Check]:
    groups = corpus(cfg)
    reps = pmap(lambda item: verify_theorem_1_2(item[1], item[0]), groups, cfg.threads)
    fails = [r["name"] for r in reps if not r["pass"]]
    tight = min(reps, key=lambda r: r["global"] - (r["abelianization"].bit_length() - 1))
    out = [Check(
        "theorem1", "odd-degree count exceeds log2|P/P'|", not fails,
        f"{len(reps)} groups, tightest {tight['name']} ({tight['margin']})" + (f", failures {fails}" if fails else ""),
        {"groups": len(reps), "failures": fails},
    )]
    even = [r for r in reps if r["order"] % 2 == 0]
    bad = [r["name"] for r in even if not r["burnside"]]
    out.append(Check(
        "theorem1", "even order gives a nontrivial odd-degree character", not bad,
        f"{len(even)} even-order groups" + (f", failures {bad}" if bad else ""),
        {"groups": len(even), "failures": bad},
    ))
    # a non-elementary abelian 2-group replaced by an elementary one
    A = AbelianGroup2([4, 4])
    aut = A.automorphism_from_matrix([[0, 1], [3, 3]])
    ht = hartley_turull_witness([aut], A)
    out.append(Check(
        "theorem1", "Z3 on Z4 x Z4 has an elementary abelian model", ht["found"],
        f"k(GA) = {ht['k_GA']}, k(GB) = {ht.get('k_GB')}",
        {"k_GA": ht["k_GA"], "k_GB": ht.get("k_GB"), "witness": ht["witness"]},
    ))
    return out


def sync_catalog(cat: Catalog, directory: str | Path) -> tuple[bool, str]:
    """Write the catalog file, or validate an existing one against ``cat``.

    A complete file must match the recomputation exactly; a partial one is
    replaced when the new catalog is complete.
    """
    path = catalog_path(directory, cat.n)
    lines = catalog_lines(cat)
    if path.exists():
        old = read_catalog(path)
        old_lines = path.read_text(encoding="utf-8").splitlines()
        if old_lines == lines:
            return True, f"{path.name} validated"
        if old.complete:
            return False, f"{path.name} disagrees with the recomputation"
        if not cat.complete:
            return True, f"{path.name} kept (both partial)"
    write_catalog(cat, path)
    return True, f"{path.name} written"


def suite_theorem3(cfg: RunConfig, max_n: int = 4) -> list[Check]:
    out = []
    cats = [build_catalog(n, threads=cfg.threads) for n in range(max_n + 1)]
    for cat in cats:
        ok, msg = sync_catalog(cat, cfg.catalog_dir)
        out.append(Check("theorem3", f"catalog n={cat.n}", ok and cat.complete and cat.oracle_certified is not False,
                         f"{len(cat.entries)} classes, complete={cat.complete}, oracle={cat.oracle_certified}, {msg}"))
    fv = [compute_f(cat.n, catalog=cat) for cat in cats]
    values = {f.n: f.value for f in fv}
    want = {n: v for n, v in EXPECTED_F.items() if n <= max_n}
    out.append(Check("theorem3", "f table", values == want,
                     ", ".join(f"f({n}) = {v}" for n, v in values.items()),
                     {"f": {str(n): v for n, v in values.items()}, "witness": [f.witness for f in fv]}))
    viol = [(e.n, e.canonical_id) for cat in cats for e in cat.entries if e.k_gv <= e.n]
    total = sum(len(c.entries) for c in cats)
    out.append(Check("theorem3", "k(GV) > n", not viol, f"{total} catalog entries, {len(viol)} violations",
                     {"violations": viol}))
    small = [e for cat in cats for e in cat.entries if e.order * 2 ** e.n <= FORMULA_BRUTE_CAP]
    brute = pmap(lambda e: k_semidirect_bruteforce(e.mat_group()), small, cfg.threads)
    bad = [e.canonical_id for e, b in zip(small, brute) if b != e.k_gv]
    out.append(Check("theorem3", "orbit formula equals brute-force class number", not bad,
                     f"{len(small)} entries with |G| 2^n <= {FORMULA_BRUTE_CAP}", {"mismatches": bad}))
    return out


# ---------------------------------------------------------------------------
# global/local counts and table invariants

def suite_mckay(cfg: RunConfig) -> list[Check]:
    groups = corpus(cfg)
    datas = pmap(lambda item: local_data(item[1]), groups, cfg.threads)
    reps = [verify_malle_spath(G, name, d) for (name, G), d in zip(groups, datas)]
    bad = [r["name"] for r in reps if not r["pass"]]
    named = len(named_groups(cfg.corpus_path))
    out = [Check("mckay", "global count equals local count", not bad,
                 f"{named} named + {len(groups) - named} affine groups" + (f", failures {bad}" if bad else ""),
                 {"groups": [[r["name"], r["order"], r["global"], r["local"], r["local_kernel"]] for r in reps]})]
    tables = pmap(lambda item: character_table(item[1]), groups, cfg.threads)
    inv_bad = []
    for (name, G), t in zip(groups, tables):
        if not (sum(d * d for d in t.degrees) == G.order and row_orthogonality(t) and column_orthogonality(t)):
            inv_bad.append(name)
    out.append(Check("mckay", "sum of squared degrees and orthogonality", not inv_bad,
                     f"{len(tables)} tables" + (f", failures {inv_bad}" if inv_bad else "")))
    two = [(name, d) for (name, G), d in zip(groups, datas) if G.order & (G.order - 1) == 0]
    two_bad = [n for n, d in two if d.global_count != d.abelianization_order]
    out.append(Check("mckay", "2-groups: odd-degree count equals |P:P'|", not two_bad,
                     f"{len(two)} 2-groups" + (f", failures {two_bad}" if two_bad else "")))
    even = [(name, d) for (name, G), d in zip(groups, datas) if G.order % 2 == 0]
    even_bad = [n for n, d in even if d.global_count < 2]
    out.append(Check("mckay", "even order: odd-degree count >= 2", not even_bad,
                     f"{len(even)} even-order groups" + (f", failures {even_bad}" if even_bad else "")))
    return out


# ---------------------------------------------------------------------------
# lemmas on odd-order permutation and linear groups

LEMMA22_EXPECTED = {(2, 3): [], (2, 5): [3], (2, 7): [], (4, 3): [5]}
LEMMA23_FIELDS = [(2, 3), (2, 5), (2, 7), (3, 3), (4, 3)]


def quasi_primitive_corpus() -> list[tuple[str, MatGroup]]:
    s3, s4 = singer_cycle(3, 2), singer_cycle(4, 2)
    return [
        ("Singer Z7 <= GL(3,2)", MatGroup([s3])),
        ("Singer Z15 <= GL(4,2)", MatGroup([s4])),
        ("Z5 <= GL(4,2)", MatGroup([s4 ** 3])),
        ("Gamma(2^3) <= GL(3,2)", MatGroup(list(semilinear_matrices(2, 3)))),
        ("5^(1+2):3 <= GL(5,11)", extraspecial_example()),
    ]


def suite_lemmas(cfg: RunConfig) -> list[Check]:
    out = []
    sym = pmap(enumerate_odd_subgroups_sym, list(range(1, 10)), cfg.threads)
    maxima = [r.max_order for r in sym]
    eq = [r.m for r in sym if r.is_equality()]
    out.append(Check("lemmas", "odd subgroups of S_m have order <= sqrt(3)^(m-1), m <= 9",
                     all(r.bound_holds() for r in sym) and eq == [1, 3, 9],
                     f"maxima {maxima}, equality at m = {eq}", {"maxima": maxima, "equality": eq}))
    for (n, p), want in LEMMA22_EXPECTED.items():
        s = lemma22_summary(n, p)
        got = s["irreducible_orders"]
        out.append(Check("lemmas", f"irreducible odd subgroups of GL({n},{p})", got == want,
                         f"orders {got} (expected {want}), {s['records']} classes listed"))
    checked, bad = 0, []
    for n, p in LEMMA23_FIELDS:
        for r in enumerate_odd_subgroups_glp(n, p):
            if r.completely_reducible:
                checked += 1
                if not r.lemma23_holds():
                    bad.append((n, p, r.order))
    out.append(Check("lemmas", "completely reducible odd G: |G| <= |V|^1.5 / 24^(1/3)", not bad,
                     f"{checked} groups over {len(LEMMA23_FIELDS)} spaces", {"failures": bad}))
    ex = check_e_exclusion(quasi_primitive_corpus())
    out.append(Check("lemmas", "quasi-primitive odd groups: e is not 3 or 7", ex["passed"],
                     ", ".join(f"{k}: e={v}" for k, v in ex["e_values"].items()), {"e_values": ex["e_values"]}))
    return out


# ---------------------------------------------------------------------------
# orbit machinery

def _affine_line_group(p: int, d: int) -> PermGroup:
    """x -> x + 1 and x -> a x with a of multiplicative order d, on GF(p)."""
    gens = [Perm([(x + 1) % p for x in range(p)])]
    if d > 1:
        a = next(a for a in range(2, p) if pow(a, d, p) == 1 and all(pow(a, e, p) != 1 for e in range(1, d)))
        gens.append(Perm([(a * x) % p for x in range(p)]))
    return PermGroup(gens, p)


def odd_primitive_actions(max_degree: int = 13) -> list[tuple[str, PermGroup]]:
    """Odd-order primitive groups of prime degree: Z_p : Z_d with d odd, d | p - 1."""
    out = []
    for p in (3, 5, 7, 11, 13):
        if p > max_degree:
            break
        for d in range(1, p, 2):
            if (p - 1) % d == 0:
                out.append((f"{p}:{d}" if d > 1 else f"Z{p}", _affine_line_group(p, d)))
    return out


def suite_orbits(cfg: RunConfig) -> list[Check]:
    out = []
    mats: list[tuple[str, MatGroup]] = []
    for n in range(1, 5):
        cat = build_catalog(n, threads=cfg.threads, certify=False)
        mats += [(f"GL({n},2) #{i}", e.mat_group()) for i, e in enumerate(cat.entries)]
    for n, p in [(2, 3), (2, 5), (2, 7), (3, 3), (4, 3)]:
        mats += [(f"GL({n},{p}) #{i}", MatGroup(r.generators, n=n, p=p)) for i, r in enumerate(enumerate_odd_subgroups_glp(n, p))]
    mats = [(k, M) for k, M in mats if M.p ** M.n <= 2 ** 16]
    pairs = pmap(lambda item: (regular_orbit_count(item[1], cfg.domain_cap), regular_orbit_count_bruteforce(item[1])), mats, cfg.threads)
    bad = [k for (k, _), (a, b) in zip(mats, pairs) if a != b]
    out.append(Check("orbits", "regular orbit count equals per-element scan", not bad,
                     f"{len(mats)} linear actions", {"mismatches": bad}))
    perms = [(n, G) for n, G in named_groups(cfg.corpus_path) if G.degree <= 13] + odd_primitive_actions()
    stats = pmap(lambda item: (set_orbit_stats(item[1]), set_orbit_stats_bruteforce(item[1])), perms, cfg.threads)
    bad = [n for (n, _), (a, b) in zip(perms, stats) if tuple(a) != tuple(b)]
    out.append(Check("orbits", "set orbit statistics equal per-element scan", not bad,
                     f"{len(perms)} permutation actions", {"mismatches": bad}))
    prim = [(n, G, s) for (n, G), (s, _) in zip(perms, stats) if G.order % 2 == 1 and G.degree > 1 and is_primitive(G)]
    lows = {n: [s[2], strongly_regular_lower_bound(G.degree)] for n, G, s in prim}
    bad = [n for n, (got, need) in lows.items() if got < need]
    out.append(Check("orbits", "odd primitive actions: strongly regular set orbits >= ceil(|Omega|/25)", not bad and bool(prim),
                     ", ".join(f"{n}: {g} >= {w}" for n, (g, w) in lows.items()), {"actions": lows}))
    rep = verify_regular_orbit_bound(extraspecial_example(), EXTRASPECIAL_CLAIM, cfg.domain_cap)
    out.append(Check("orbits", f"5^(1+2):3 on GF(11)^5 has >= {EXTRASPECIAL_CLAIM} regular orbits", rep["passed"],
                     f"{rep['regular_orbits']} regular of {rep['orbits']} orbits", rep))
    return out


# ---------------------------------------------------------------------------
# exact replay of the numeric case analysis

def suite_replay(cfg: RunConfig, n_max: int = 1000) -> list[Check]:
    out = []
    bits = cfg.precision_bits
    truth = {n: check_step5(n, bits) for n in range(1, n_max + 1)}
    true_set = [n for n, v in truth.items() if v]
    out.append(Check("replay", f"step5 false for 16 <= n <= {n_max}", all(not truth[n] for n in range(16, n_max + 1)),
                     f"true exactly for n in {true_set}"))
    low_fail = [n for n in range(1, 16) if not truth[n]]
    out.append(Check("replay", "step5 true for 1 <= n <= 15", not low_fail,
                     "all true" if not low_fail else f"false at n = {low_fail}"))
    s6 = check_step6(n_max)
    out.append(Check("replay", "step6 contradiction has no solution; x + c/x minimized at sqrt(c)", s6["pass"],
                     f"solutions {s6['solutions']}, AM-GM samples {len(s6['amgm'])}"))
    try:
        cases = enumerate_step7_cases(cfg.ledger_path)
        pairs = [(c.n, c.k) for c in cases]
        out.append(Check("replay", "step7 case list", pairs == STEP7_CASES, " ".join(f"({n},{k})" for n, k in pairs)))
        for c in cases:
            cert = certify_case(c)
            final = [l["claim"] for l in cert["lines"] if l["value"]][-1]
            out.append(Check("replay", f"step7 case ({c.n},{c.k})", True, final, {"log": case_log(cert).splitlines(), "certificate": cert}))
    except CertificationError as exc:
        out.append(Check("replay", "step7 certificates", False, str(exc)))
    l42 = {n: lemma42_inequality(n) for n in range(1, n_max + 1)}
    fails = [n for n, v in l42.items() if not v]
    out.append(Check("replay", f"power-set orbit inequality for 25 <= n <= {n_max}", all(l42[n] for n in range(25, n_max + 1)),
                     f"fails exactly for n in {fails}"))
    eb = exponent_bound(3, 3)
    out.append(Check("replay", "(p + o - 1)/(op) at p = o = 3", str(eb) == "5/9", f"{eb}"))
    return out


SUITE_FUNCS = {
    "theorem1": suite_theorem1,
    "theorem3": suite_theorem3,
    "mckay": suite_mckay,
    "lemmas": suite_lemmas,
    "orbits": suite_orbits,
    "replay": suite_replay,
}


def run_suite(name: str, cfg: RunConfig) -> list[Check]:
    names = SUITES if name == "all" else (name,)
    out: list[Check] = []
    for n in names:
        out += SUITE_FUNCS[n](cfg)
    return out


def report_text(checks: Sequence[Check]) -> str:
    passed = sum(c.passed for c in checks)
    lines = [c.line() for c in checks]
    lines.append(f"{passed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"


def report_json(checks: Sequence[Check]) -> str:
    body = {"checks": [c.to_json() for c in checks], "passed": all(c.passed for c in checks)}
    return json.dumps(body, sort_keys=True, indent=1, default=str) + "\n"
