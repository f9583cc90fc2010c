"""Minimum class number of odd-order affine groups over GF(2)^n.

For each n we enumerate the odd-order subgroups G of GL(n,2) up to
conjugacy, compute k(GV) for the affine group GV, and report the minimum
f(n).  The orbit-counting formula is checked against a direct class count.
"""

# %%
from __future__ import annotations

from oddrep.catalog import build_catalog, compute_f
from oddrep.groupcore import class_number
from oddrep.semidirect import AbelianGroup2, build_affine, k_semidirect_formula

# %% Build catalogs for n = 0..4 and read off f(n)
catalogs = {n: build_catalog(n) for n in range(5)}
for n, cat in catalogs.items():
    fv = compute_f(n, catalog=cat)
    print(f"n={n}: {len(cat.entries)} classes, f(n) = {fv.value}, witness order {fv.witness_order}")

# %% Every entry satisfies k(GV) > n
for n, cat in catalogs.items():
    print(n, sorted(e.k_gv for e in cat.entries))

# %% Orbit formula versus building GV and counting classes directly
for e in catalogs[3].entries:
    M = e.mat_group()
    direct = class_number(build_affine(M, AbelianGroup2([2] * 3)).group)
    print(f"|G| = {e.order:3d}  formula {k_semidirect_formula(M):3d}  direct {direct:3d}")
