"""Sylow 2-local data and the odd-degree character counts built on it.

For a group G with Sylow 2-subgroup P the local count is k(N_G(P)/P'),
computed as the class number of an explicit quotient group and, as a
second route, as the number of characters of N_G(P) with P' in their
kernel.  The global count is the number of odd-degree irreducible
characters of G from its exact character table.  The two counts are
equal for every finite group, so any mismatch is an implementation bug.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .chartab import character_table, count_odd_degree
from .groupcore import (
    PermGroup,
    class_number,
    conjugacy_classes,
    derived_subgroup,
    normalizer,
    parse_perm_list,
    quotient_group,
    subgroup_mask,
    sylow2,
)


@dataclass
class LocalData:
    order: int
    P: PermGroup
    P_derived: PermGroup
    N: PermGroup
    abelianization_order: int        # |P/P'|
    local_count: int                 # k(N_G(P)/P') via the quotient group
    local_count_kernel: int          # characters of N_G(P) with P' in the kernel
    global_count: int                # odd-degree characters of G

    @property
    def log2_abelianization(self) -> int:
        return self.abelianization_order.bit_length() - 1


def characters_with_kernel_containing(G: PermGroup, K: PermGroup) -> int:
    """Number of irreducible characters chi of G with K <= ker(chi)."""
    t = character_table(G)
    cd = conjugacy_classes(G)
    mask = subgroup_mask(G, K)
    classes = sorted({int(c) for c in cd.labels[mask]})
    return sum(1 for d, row in zip(t.degrees, t.values) if all(row[c] == d for c in classes))


def local_data(G: PermGroup) -> LocalData:
    P = sylow2(G)
    Pd = derived_subgroup(P)
    N = normalizer(G, P)
    local = class_number(quotient_group(N, Pd))
    kernel_count = characters_with_kernel_containing(N, Pd)
    return LocalData(
        order=G.order,
        P=P,
        P_derived=Pd,
        N=N,
        abelianization_order=P.order // Pd.order,
        local_count=local,
        local_count_kernel=kernel_count,
        global_count=count_odd_degree(G),
    )


def verify_theorem_1_2(G: PermGroup, name: str = "", data: LocalData | None = None) -> dict:
    """Odd-degree count exceeds log2 |P/P'|, checked as 2^count > |P/P'|."""
    d = data or local_data(G)
    ok = 2 ** d.global_count > d.abelianization_order
    return {
        "name": name,
        "order": d.order,
        "abelianization": d.abelianization_order,
        "global": d.global_count,
        "local": d.local_count,
        "margin": f"{d.global_count} - log2({d.abelianization_order}) = {d.global_count - d.log2_abelianization}",
        "burnside": d.order % 2 == 1 or d.global_count >= 2,
        "pass": ok,
    }


def verify_malle_spath(G: PermGroup, name: str = "", data: LocalData | None = None) -> dict:
    """Global odd-degree count equals the local count (both local routes agree)."""
    d = data or local_data(G)
    ok = d.global_count == d.local_count == d.local_count_kernel
    return {
        "name": name,
        "order": d.order,
        "abelianization": d.abelianization_order,
        "global": d.global_count,
        "local": d.local_count,
        "local_kernel": d.local_count_kernel,
        "pass": ok,
    }


def format_report_line(rep: dict) -> str:
    margin = rep.get("margin", f"{rep['global']} vs {rep['local']}")
    return (
        f"{rep['name']:<28} |G|={rep['order']:<6} |P/P'|={rep['abelianization']:<4} "
        f"global={rep['global']:<3} local={rep['local']:<3} {margin:<24} {'PASS' if rep['pass'] else 'FAIL'}"
    ).rstrip()


# ---------------------------------------------------------------------------
# corpus

def corpus_text(path=None) -> str:
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    return resources.files("oddrep").joinpath("data/corpus.json").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _parse_corpus(text: str) -> tuple[tuple[str, str, int], ...]:
    data = json.loads(text)
    return tuple((g["name"], g["generators"], int(g["degree"])) for g in data["groups"])


def named_groups(path=None) -> list[tuple[str, PermGroup]]:
    """The named permutation groups of the corpus file, in file order."""
    return [(name, PermGroup(parse_perm_list(gens, deg), deg)) for name, gens, deg in _parse_corpus(corpus_text(path))]


def named_group(name: str, path=None) -> PermGroup:
    for n, G in named_groups(path):
        if n == name:
            return G
    raise KeyError(f"no corpus group named {name!r}")


def affine_corpus(max_n: int = 4) -> list[tuple[str, PermGroup]]:
    """Affine groups G V for every odd-order G <= GL(n, 2) of the catalog, n <= max_n."""
    from .catalog import enumerate_odd_subgroups_gl
    from .semidirect import AbelianGroup2, build_affine

    out = []
    for n in range(1, max_n + 1):
        A = AbelianGroup2([2] * n)
        for i, e in enumerate(enumerate_odd_subgroups_gl(n)):
            out.append((f"GV[n={n},#{i},|G|={e.order}]", build_affine(e.mat_group(), A).group))
    return out


def full_corpus(path=None, max_n: int = 4) -> list[tuple[str, PermGroup]]:
    return named_groups(path) + affine_corpus(max_n)
