"""Catalogs of odd-order linear and permutation groups, and the minimum f(n).

``enumerate_odd_subgroups_gl(n)`` lists the odd-order subgroups of GL(n,2)
up to conjugacy, each with k(GV) for V = GF(2)^n; ``compute_f(n)`` is the
minimum of k(GV) over that list.  Restricting to faithful actions on
elementary abelian groups loses nothing: a non-faithful action factors
through a quotient with no more classes, and a general abelian 2-group can
be replaced by an elementary abelian one with the same class number.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .action import MatGroup
from .groupcore import Perm, ResourceError
from .semidirect import k_semidirect_formula
from .smallfield import (
    FieldMatrix,
    all_subspaces,
    gl_order,
    is_invariant,
    is_irreducible,
    rank,
)
from .universe import (
    GL2Universe,
    MatUniverse,
    OddSubgroupSearch,
    Subgroup,
    SymUniverse,
    _isin_sorted,
    batch_rank,
    conjugating_element,
    fingerprint,
    join_closure_search,
    minimal_generators,
    odd_part,
)

MAX_GL2_DIM = 5


@dataclass
class CatalogEntry:
    n: int
    generators: list[FieldMatrix]
    order: int
    faithful: bool
    irreducible: bool
    class_size_multiset: list[int]
    k_gv: int
    canonical_id: str
    exponent: int = 1
    element_data: list[list[int]] = field(default_factory=list)   # (order, fixed dim, count)

    def mat_group(self) -> MatGroup:
        return MatGroup(self.generators, n=self.n, p=2)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "generators": [g.to_text() for g in self.generators],
            "order": self.order,
            "faithful": self.faithful,
            "irreducible": self.irreducible,
            "class_size_multiset": self.class_size_multiset,
            "k_gv": self.k_gv,
            "canonical_id": self.canonical_id,
            "exponent": self.exponent,
            "element_data": self.element_data,
        }

    @classmethod
    def from_json(cls, d: dict) -> "CatalogEntry":
        return cls(
            n=d["n"],
            generators=[FieldMatrix.from_text(t, 2) for t in d["generators"]],
            order=d["order"],
            faithful=d["faithful"],
            irreducible=d["irreducible"],
            class_size_multiset=list(d["class_size_multiset"]),
            k_gv=d["k_gv"],
            canonical_id=d["canonical_id"],
            exponent=d.get("exponent", 1),
            element_data=[list(x) for x in d.get("element_data", [])],
        )


@dataclass
class Catalog:
    n: int
    entries: list[CatalogEntry]
    complete: bool
    oracle_certified: bool | None = None
    order_cap: int | None = None

    def header(self) -> dict:
        return {
            "kind": "header",
            "n": self.n,
            "tool_version": __version__,
            "complete": self.complete,
            "oracle_certified": self.oracle_certified,
            "order_cap": self.order_cap,
            "entries": len(self.entries),
        }


@dataclass
class FValue:
    n: int
    value: int
    witness: str
    complete: bool
    witness_order: int = 1

    def to_json(self) -> dict:
        return {"n": self.n, "value": self.value, "witness": self.witness, "complete": self.complete, "witness_order": self.witness_order}


@lru_cache(maxsize=None)
def gl2_universe(n: int) -> GL2Universe:
    return GL2Universe(n)


def _canonical_id(n: int, p: int, codes: np.ndarray) -> str:
    h = hashlib.sha256(f"{n}:{p}:".encode() + np.asarray(codes, dtype="<i8").tobytes())
    return h.hexdigest()[:16]


def _entry_from_subgroup(U: GL2Universe, s: Subgroup) -> CatalogEntry:
    gens = [U.to_matrix(c) for c in s.gens]
    M = MatGroup(gens, n=U.n, p=2)
    fp = s.fingerprint or fingerprint(U, s.codes, s.gens)
    irreducible = is_irreducible(gens or [FieldMatrix.identity(U.n, 2)])
    return CatalogEntry(
        n=U.n,
        generators=gens,
        order=s.order,
        faithful=True,
        irreducible=irreducible,
        class_size_multiset=list(fp[2]),
        k_gv=k_semidirect_formula(M),
        canonical_id=_canonical_id(U.n, 2, s.codes),
        exponent=fp[1],
        element_data=[list(x) for x in fp[3]],
    )


def _check_gl2_dim(n: int) -> None:
    if n < 0:
        raise ValueError("dimension must be non-negative")
    if n > MAX_GL2_DIM:
        raise ResourceError(
            f"GL({n},2) has {gl_order(n, 2)} elements; enumeration is supported for n <= {MAX_GL2_DIM}"
        )


def build_catalog(n: int, order_cap: int | None = None, threads: int = 1, time_budget: float | None = None, certify: bool | None = None) -> Catalog:
    """Odd-order subgroups of GL(n,2) up to conjugacy, with k(GV).

    ``certify`` (default: n <= 4) cross-checks the list against the
    independent join-closure enumeration.
    """
    _check_gl2_dim(n)
    if n == 0:
        trivial = CatalogEntry(0, [], 1, True, True, [1], 1, _canonical_id(0, 2, np.zeros(1, dtype=np.int64)), 1, [[1, 0, 1]])
        return Catalog(0, [trivial], True, True, order_cap)
    U = gl2_universe(n)
    search = OddSubgroupSearch(U, order_cap=order_cap, threads=threads, time_budget=time_budget)
    subs = search.run()
    entries = [_entry_from_subgroup(U, s) for s in subs]
    certified = None
    if certify is None:
        certify = n <= 4
    if certify and search.complete and order_cap is None:
        certified = certify_against_joins(U, subs)
    return Catalog(n, entries, search.complete, certified, order_cap)


def enumerate_odd_subgroups_gl(n: int, order_cap: int | None = None, threads: int = 1) -> list[CatalogEntry]:
    return _cached_catalog(n, order_cap, threads).entries


@lru_cache(maxsize=None)
def _cached_catalog(n: int, order_cap: int | None, threads: int = 1) -> Catalog:
    return build_catalog(n, order_cap=order_cap, threads=threads, certify=False)


def certify_against_joins(U, subs: Sequence[Subgroup]) -> bool:
    """True iff the join-closure oracle finds exactly the same classes."""
    oracle = join_closure_search(U)
    if len(oracle) != len(subs):
        return False
    hits = [0] * len(oracle)
    for s in subs:
        key = tuple(s.codes.tolist())
        found = [i for i, o in enumerate(oracle) if key in o.conjugates]
        if len(found) != 1:
            return False
        hits[found[0]] += 1
    return all(h == 1 for h in hits)


def compute_f(n: int, threads: int = 1, catalog: Catalog | None = None) -> FValue:
    """min k(GV) over odd-order G <= GL(n,2); flagged incomplete if the search was cut short."""
    if catalog is None:
        catalog = _cached_catalog(n, None, threads)
    best = min(catalog.entries, key=lambda e: (e.k_gv, e.order, e.canonical_id))
    return FValue(n, best.k_gv, best.canonical_id, catalog.complete, best.order)


def conjugate_subgroups(H1: MatGroup, H2: MatGroup) -> FieldMatrix | None:
    """Some x with x H1 x^-1 = H2, or None if the groups are not conjugate."""
    if (H1.n, H1.p) != (H2.n, H2.p):
        raise ValueError("groups act on different spaces")
    U = _universe_for(H1.n, H1.p)
    a = _as_subgroup(U, H1)
    b = _as_subgroup(U, H2)
    if a.order != b.order:
        return None
    if fingerprint(U, a.codes, a.gens) != fingerprint(U, b.codes, b.gens):
        return None
    u = conjugating_element(U, a, b)
    if u is None:
        return None
    # u^-1 H1 u = H2, so x = u^-1
    return U.to_matrix(int(U.inv(np.int64(u))))


def _universe_for(n: int, p: int):
    if p == 2:
        _check_gl2_dim(n)
        return gl2_universe(n)
    return _glp_universe(n, p)


@lru_cache(maxsize=None)
def _glp_universe(n: int, p: int) -> MatUniverse:
    if p ** (n * n) > 2 ** 22:
        raise ResourceError(f"GL({n},{p}) is too large to list")
    return MatUniverse.general_linear(n, p)


def _as_subgroup(U, M: MatGroup) -> Subgroup:
    gens = [U.from_matrix(g) for g in M.generators]
    codes = U.closure(gens)
    return Subgroup(codes, tuple(gens))


# ---------------------------------------------------------------------------
# persistence

def _dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def catalog_lines(cat: Catalog) -> list[str]:
    return [_dumps(cat.header())] + [_dumps(e.to_json()) for e in cat.entries]


def write_catalog(cat: Catalog, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(catalog_lines(cat)) + "\n", encoding="utf-8")


def read_catalog(path: str | Path) -> Catalog:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"empty catalog file {path}")
    head = json.loads(lines[0])
    if head.get("kind") != "header":
        raise ValueError("catalog file lacks a header line")
    entries = [CatalogEntry.from_json(json.loads(x)) for x in lines[1:] if x.strip()]
    if len(entries) != head.get("entries", len(entries)):
        raise ValueError("catalog entry count does not match its header")
    return Catalog(head["n"], entries, head["complete"], head.get("oracle_certified"), head.get("order_cap"))


def catalog_path(directory: str | Path, n: int) -> Path:
    return Path(directory) / f"odd_gl{n}_2.jsonl"


# ---------------------------------------------------------------------------
# symmetric groups

@dataclass
class SymResult:
    m: int
    max_order: int
    witness: list[Perm]
    orders: list[int]

    def bound_holds(self) -> bool:
        """max_order <= sqrt(3)^(m-1), compared as squares."""
        return self.max_order ** 2 <= 3 ** (self.m - 1)

    def is_equality(self) -> bool:
        return self.max_order ** 2 == 3 ** (self.m - 1)


def enumerate_odd_subgroups_sym(m: int) -> SymResult:
    """Odd-order subgroups of S_m up to conjugacy; reports the largest order."""
    if m < 1:
        raise ValueError("m must be positive")
    if m > 9:
        raise ResourceError("symmetric groups are supported up to m = 9")
    if m == 1:
        return SymResult(1, 1, [], [1])
    U = SymUniverse(m)
    subs = OddSubgroupSearch(U).run()
    best = max(subs, key=lambda s: (s.order, -len(s.gens)))
    return SymResult(m, best.order, [U.to_perm(g) for g in best.gens], sorted(s.order for s in subs))


# ---------------------------------------------------------------------------
# odd characteristic

@dataclass
class GLpRecord:
    n: int
    p: int
    order: int
    generators: list[FieldMatrix]
    irreducible: bool
    completely_reducible: bool
    faithful: bool = True

    def lemma23_holds(self) -> bool:
        """|G| <= |V|^1.5 / 24^(1/3), i.e. 24^2 |G|^6 <= |V|^9."""
        return 576 * self.order ** 6 <= (self.p ** self.n) ** 9


def invariant_subspaces(gens: Sequence[FieldMatrix], n: int, p: int) -> list[tuple[int, ...]]:
    return [s for s in all_subspaces(n, p) if is_invariant(s, gens)]


def is_completely_reducible(gens: Sequence[FieldMatrix], n: int, p: int) -> bool:
    """Every invariant subspace has an invariant complement (exhaustive)."""
    inv = invariant_subspaces(gens, n, p)
    for w in inv:
        if 0 < len(w) < n:
            if not any(len(u) == n - len(w) and rank(list(w) + list(u), n, p) == n for u in inv):
                return False
    return True


def _glp_record(U: MatUniverse, s: Subgroup) -> GLpRecord:
    gens = [U.to_matrix(c) for c in s.gens]
    g_or_id = gens or [FieldMatrix.identity(U.n, U.p)]
    return GLpRecord(U.n, U.p, s.order, gens, is_irreducible(g_or_id), is_completely_reducible(g_or_id, U.n, U.p))


def enumerate_odd_subgroups_glp(n: int, p: int) -> list[GLpRecord]:
    """Odd-order subgroups of GL(n,p), p odd, up to conjugacy.

    GL(n,p) is listed in full when it is small.  For (4,3) the listing is
    restricted to subgroups with a normal subgroup of prime order r != 3,
    which contains every irreducible one (see ``_gl43_local_records``).
    """
    if p == 2:
        raise ValueError("use enumerate_odd_subgroups_gl for p = 2")
    if (n, p) == (4, 3):
        return _gl43_local_records()
    U = _glp_universe(n, p)
    return [_glp_record(U, s) for s in OddSubgroupSearch(U).run()]


def _poly_mulmod(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_divides(d: list[int], f: list[int], p: int) -> bool:
    f = f[:]
    inv = pow(d[-1], -1, p)
    while len(f) >= len(d) and any(f):
        c = f[-1] * inv % p
        shift = len(f) - len(d)
        for i, x in enumerate(d):
            f[shift + i] = (f[shift + i] - c * x) % p
        while f and f[-1] == 0:
            f.pop()
    return not any(f)


def monic_irreducible_factors(f: list[int], p: int) -> list[list[int]]:
    """Distinct monic irreducible factors (low-to-high coefficients) of monic f.

    Candidates are tried by increasing degree and divided out completely, so
    any monic divisor found has no smaller factor left and is irreducible;
    once twice the degree exceeds what is left, the rest is irreducible.
    """
    out = []
    rest = f[:]
    deg = 1
    while len(rest) > 1:
        if 2 * deg > len(rest) - 1:
            out.append(rest)
            break
        for tail in np.ndindex(*([p] * deg)):
            cand = [int(x) for x in tail] + [1]
            if _poly_divides(cand, rest, p):
                out.append(cand)
                while len(rest) > 1 and _poly_divides(cand, rest, p):
                    rest = _poly_quot(rest, cand, p)
        deg += 1
    return out


def _poly_quot(f: list[int], d: list[int], p: int) -> list[int]:
    f = f[:]
    q = [0] * (len(f) - len(d) + 1)
    inv = pow(d[-1], -1, p)
    for k in range(len(q) - 1, -1, -1):
        c = f[k + len(d) - 1] * inv % p
        q[k] = c
        for i, x in enumerate(d):
            f[k + i] = (f[k + i] - c * x) % p
    return q


def _companion_block(coeffs: list[int], p: int) -> list[list[int]]:
    d = len(coeffs) - 1
    rows = []
    for i in range(d - 1):
        rows.append([int(j == i + 1) for j in range(d)])
    rows.append([(-c) % p for c in coeffs[:-1]])
    return rows


def _block_diag_rows(blocks: list[list[list[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, x in enumerate(r):
                out[off + i][off + j] = x
        off += len(b)
    return out


def prime_order_classes(n: int, p: int, r: int) -> list[FieldMatrix]:
    """Representatives of the classes of elements of prime order r != p in GL(n,p).

    Such elements are semisimple; their rational canonical form is a direct
    sum of companion blocks of irreducible factors of x^r - 1.
    """
    factors = monic_irreducible_factors([p - 1] + [0] * (r - 1) + [1], p)
    one = [p - 1, 1]
    nontrivial = [f for f in factors if f != one]
    reps = []

    def rec(start: int, dim: int, chosen: list[list[int]]):
        if dim == n:
            if any(c != one for c in chosen):
                reps.append(FieldMatrix(_block_diag_rows([_companion_block(c, p) for c in chosen]), p))
            return
        pool = [one] + nontrivial
        for i in range(start, len(pool)):
            if dim + len(pool[i]) - 1 <= n:
                rec(i, dim + len(pool[i]) - 1, chosen + [pool[i]])

    rec(0, 0, [])
    return reps


def _solution_space(m: FieldMatrix, target: FieldMatrix) -> list[list[int]]:
    """Basis of {x : m x = x target} over GF(p) as flattened n*n vectors."""
    from .action import _nullspace_mod_p

    n, p = m.n, m.p
    a, b = m.rows, target.rows
    eqs = []
    for i in range(n):
        for j in range(n):
            eq = [0] * (n * n)
            for k in range(n):
                eq[k * n + j] += a[i][k]
                eq[i * n + k] -= b[k][j]
            eqs.append([x % p for x in eq])
    return _nullspace_mod_p(eqs, n * n, p)


def cyclic_normalizer_codes(U_probe: MatUniverse, m: FieldMatrix, r: int) -> np.ndarray:
    """All codes of N_GL(<m>) for m of prime order r, by solving m x = x m^j."""
    n, p = m.n, m.p
    out = []
    for j in range(1, r):
        basis = _solution_space(m, m ** j)
        if not basis:
            continue
        bmat = np.array(basis, dtype=np.int64)
        coeffs = np.array(list(np.ndindex(*([p] * len(basis)))), dtype=np.int64)
        flat = coeffs @ bmat % p
        mats = flat.reshape(-1, n, n)
        ok = batch_rank(mats, p) == n
        out.append(U_probe.encode(mats[ok]))
    return np.unique(np.concatenate(out))


def _gl43_local_records() -> list[GLpRecord]:
    """Odd subgroups H of GL(4,3) with a normal subgroup of prime order r != 3.

    If H <= GL(4,3) is odd and irreducible then O_3(H) = 1 (its fixed space
    would be a proper invariant subspace), so a minimal normal subgroup of H
    is an elementary abelian r-group with r in {5, 13}; as r^2 does not
    divide |GL(4,3)| it is cyclic of order r, and H lies in its normalizer.
    Each such normalizer is listed exactly (it is small) and searched
    completely, keeping the subgroups that contain the chosen Z_r.
    """
    n, p = 4, 3
    glo = gl_order(n, p)
    primes = [r for r in range(5, 100, 2) if all(r % q for q in range(3, int(r ** 0.5) + 1, 2)) and r != p and glo % r == 0]
    probe = MatUniverse(n, p, np.zeros(1, dtype=np.int64))
    records: list[GLpRecord] = []
    seen: set[tuple] = set()
    for r in primes:
        if glo % (r * r) == 0:
            raise AssertionError("r^2 divides |GL(4,3)|; the cyclic reduction does not apply")
        for m in prime_order_classes(n, p, r):
            codes = cyclic_normalizer_codes(probe, m, r)
            U = MatUniverse(n, p, codes, label=f"N(<{m.to_text()}>)")
            mcode = U.from_matrix(m)
            for s in OddSubgroupSearch(U).run():
                if not _isin_sorted(np.array([mcode]), s.codes)[0]:
                    continue
                key = (r, m.to_text(), tuple(s.codes.tolist()))
                if key in seen:
                    continue
                seen.add(key)
                records.append(_glp_record(U, s))
    return records


def lemma22_summary(n: int, p: int) -> dict:
    recs = enumerate_odd_subgroups_glp(n, p)
    irr = sorted({r.order for r in recs if r.irreducible})
    return {"n": n, "p": p, "records": len(recs), "irreducible_orders": irr}
