"""Regular orbits of linear groups and of permutation groups on subsets.

Orbit counts come from a vectorized union-find over generator images; a
per-element scan gives an independent count.  The last cell treats the
order-375 group 5^(1+2):3 acting on GF(11)^5.
"""

# %%
from __future__ import annotations

import time

from oddrep.action import (
    extraspecial_example,
    regular_orbit_count,
    regular_orbit_count_bruteforce,
    set_orbit_stats,
    singer_cycle,
    strongly_regular_lower_bound,
    MatGroup,
)
from oddrep.verify import odd_primitive_actions

# %% A Singer cycle of GL(4,2) acts regularly on the 15 nonzero vectors
M = MatGroup([singer_cycle(4)], n=4, p=2)
print("|G| =", M.order, " regular orbits:", regular_orbit_count(M), "=", regular_orbit_count_bruteforce(M))

# %% Odd primitive permutation groups on subsets of the domain
for name, G in odd_primitive_actions():
    orbits, regular, strong = set_orbit_stats(G)
    print(f"{name:6s} degree {G.degree:2d}: {orbits} set orbits, {regular} regular, "
          f"{strong} strongly regular (bound {strongly_regular_lower_bound(G.degree)})")

# %% The extraspecial example
t0 = time.perf_counter()
E = extraspecial_example()
print(f"|G| = {E.order}, regular orbits on 11^5 vectors: {regular_orbit_count(E)} ({time.perf_counter() - t0:.1f} s)")
