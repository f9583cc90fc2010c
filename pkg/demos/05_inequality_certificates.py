"""Certified numeric inequalities.

Real inequalities are decided with outward-rounded rational intervals,
refining precision until the answer is forced.  The finite case list is
replayed from a data file and each case is certified exactly.
"""

# %%
from __future__ import annotations

from oddrep.replay import (
    case_log,
    certify_case,
    check_step5,
    check_step6,
    enumerate_step7_cases,
    exponent_bound,
    lemma42_inequality,
)

# %% Where the orbit-count inequality holds
holds = [n for n in range(1, 1001) if check_step5(n)]
print("holds for n in", holds)

# %% The minimization step has no integer solution
print(check_step6())

# %% The finite case list, each certified by exact rational arithmetic
for case in enumerate_step7_cases():
    print(case_log(certify_case(case)))

# %% Power-set bound and the exponent value
print("fails for n <=1000 at", [n for n in range(1, 1001) if not lemma42_inequality(n)])
print("exponent at p = o = 3:", exponent_bound(3, 3))
