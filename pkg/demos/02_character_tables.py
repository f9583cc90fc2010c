"""Exact character tables and the odd-degree count.

Tables are computed with the Dixon-Schneider method and stored with exact
cyclotomic values.  The number of odd-degree irreducible characters is then
compared with the count of linear characters of a Sylow 2-normalizer that
contain the commutator subgroup of the Sylow 2-subgroup in their kernel.
"""

# %%
from __future__ import annotations

from oddrep.chartab import character_table, column_orthogonality, row_orthogonality
from oddrep.mckay import format_report_line, local_data, named_group, named_groups, verify_malle_spath

# %% A table printed exactly
t = character_table(named_group("S4"))
print(t.dump())
print("rows orthogonal:", row_orthogonality(t), " columns orthogonal:", column_orthogonality(t))

# %% Global and local counts across the named corpus
for name, G in named_groups():
    print(format_report_line(verify_malle_spath(G, name)))

# %% The abelianization bound: 2^(odd-degree count) exceeds |P/P'|
for name, G in named_groups()[:8]:
    d = local_data(G)
    print(f"{name:10s} odd-degree {d.global_count:3d}  |P/P'| {d.abelianization_order}")
