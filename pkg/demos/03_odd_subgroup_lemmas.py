"""Odd-order subgroups of symmetric and small linear groups.

The largest odd-order subgroup of S_m is compared with sqrt(3)^(m-1), and
the irreducible odd-order subgroups of GL(2,3), GL(2,5), GL(2,7), GL(4,3)
are listed.
"""

# %%
from __future__ import annotations

from oddrep.catalog import enumerate_odd_subgroups_sym, lemma22_summary

# %% Symmetric groups: equality holds exactly at m = 1, 3, 9
for m in range(1, 10):
    r = enumerate_odd_subgroups_sym(m)
    print(f"m={m}: max odd order {r.max_order:3d}  bound holds {r.bound_holds()}  equality {r.is_equality()}")

# %% Irreducible odd-order subgroups of small general linear groups
for n, p in [(2, 3), (2, 5), (2, 7), (4, 3)]:
    print(f"GL({n},{p}):", lemma22_summary(n, p)["irreducible_orders"])
