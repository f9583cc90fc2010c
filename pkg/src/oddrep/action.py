"""Matrix groups acting on GF(p)^n and permutation groups acting on subsets.

Vectors are identified with their little-endian base-p index, so an orbit
computation over the whole space is a graph problem on ``p**n`` integer
nodes; "least vector" always means least index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .groupcore import Perm, PermGroup, ResourceError, StabChain
from .smallfield import FieldMatrix, FieldVec, companion, is_irreducible, mat_inv

DEFAULT_DOMAIN_CAP = 2 ** 22
MAX_SET_DOMAIN = 22


def _first_moved_basis_point(g: FieldMatrix) -> int:
    for i in range(g.n):
        v = g.p ** i
        if g.act(v) != v:
            return v
    raise ValueError("identity has no moved point")


class MatGroup:
    """A subgroup of GL(n,p) given by generators."""

    def __init__(self, gens: Sequence[FieldMatrix], n: int | None = None, p: int | None = None):
        gens = list(gens)
        if gens:
            n = gens[0].n if n is None else n
            p = gens[0].p if p is None else p
        if n is None or p is None:
            raise ValueError("n and p are required for a group without generators")
        for g in gens:
            if g.n != n or g.p != p:
                raise ValueError("generators over different spaces")
            if g.determinant() == 0:
                raise ValueError("generator is not invertible")
        self.n, self.p = n, p
        self.generators = tuple(gens)
        self.identity = FieldMatrix.identity(n, p)

    def __repr__(self):
        return f"MatGroup(n={self.n}, p={self.p}, order={self.order})"

    @cached_property
    def chain(self) -> StabChain:
        gens = [g for g in self.generators if not g.is_identity()]
        return StabChain(gens, self.identity, _first_moved_basis_point)

    @property
    def order(self) -> int:
        return self.chain.order

    @property
    def domain_size(self) -> int:
        return self.p ** self.n

    def contains(self, g: FieldMatrix) -> bool:
        return self.chain.contains(g)

    def elements(self, cap: int = 10 ** 5) -> list[FieldMatrix]:
        if self.order > cap:
            raise ResourceError(f"group order {self.order} exceeds {cap}")
        elems = [self.identity]
        for trans in reversed(self.chain.transversals):
            elems = [e * t for t in trans.values() for e in elems]
        return sorted(elems)

    def is_irreducible(self) -> bool:
        gens = list(self.generators) or [self.identity]
        return is_irreducible(gens)

    def vector_images(self) -> list[np.ndarray]:
        """For each generator, the array ``v -> index(v * g)``."""
        return [matrix_image_array(g) for g in self.generators]


def vector_digits(n: int, p: int) -> np.ndarray:
    idx = np.arange(p ** n, dtype=np.int64)
    return (idx[:, None] // (p ** np.arange(n, dtype=np.int64))[None, :]) % p


def matrix_image_array(g: FieldMatrix) -> np.ndarray:
    n, p = g.n, g.p
    dig = vector_digits(n, p)
    a = np.array(g.rows, dtype=np.int64)
    img = dig @ a % p
    return img @ (p ** np.arange(n, dtype=np.int64))


def _check_domain(M: MatGroup, cap: int) -> None:
    if M.domain_size > cap:
        raise ResourceError(f"domain of {M.domain_size} vectors exceeds cap {cap}")


def as_perm_group(M: MatGroup, domain_cap: int = DEFAULT_DOMAIN_CAP) -> PermGroup:
    """Faithful permutation group on all ``p**n`` vectors."""
    _check_domain(M, domain_cap)
    perms = [Perm(img.tolist()) for img in M.vector_images()]
    return PermGroup(perms, M.domain_size)


def spanning_perm_group(M: MatGroup) -> tuple[PermGroup, list[int]]:
    """Faithful action on the union of the orbits of the basis vectors.

    Much smaller than the full vector space for big fields; returns the group
    and the list of vector indices that form its domain.
    """
    points = []
    seen = set()
    for i in range(M.n):
        v = M.p ** i
        if v in seen:
            continue
        orbit = [v]
        seen.add(v)
        for x in orbit:
            for g in M.generators:
                y = g.act(x)
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
        points.extend(orbit)
    points.sort()
    pos = {v: i for i, v in enumerate(points)}
    perms = [Perm([pos[g.act(v)] for v in points]) for g in M.generators]
    return PermGroup(perms, len(points)), points


@dataclass
class OrbitDecomposition:
    representatives: list[FieldVec]
    sizes: list[int]
    stabilizer_orders: list[int]
    group_order: int

    def __len__(self):
        return len(self.sizes)

    @property
    def regular_count(self) -> int:
        return sum(1 for s in self.stabilizer_orders if s == 1)


def orbit_labels(images: Sequence[np.ndarray], size: int) -> np.ndarray:
    """Label every point by the least point of its orbit."""
    ar = np.arange(size)
    if images:
        src = np.concatenate([ar] * len(images))
        dst = np.concatenate(list(images))
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    g = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size, size)).tocsr()
    _, labels = connected_components(g, directed=True, connection="weak")
    first = np.full(labels.max() + 1, size, dtype=np.int64)
    np.minimum.at(first, labels, ar)
    return first[labels]


def orbit_decomposition(M: MatGroup, domain_cap: int = DEFAULT_DOMAIN_CAP) -> OrbitDecomposition:
    _check_domain(M, domain_cap)
    labels = orbit_labels(M.vector_images(), M.domain_size)
    reps, sizes = np.unique(labels, return_counts=True)
    order = M.order
    stab = []
    for s in sizes:
        if order % int(s):
            raise AssertionError("orbit size does not divide the group order")
        stab.append(order // int(s))
    return OrbitDecomposition(
        [FieldVec.from_index(int(r), M.n, M.p) for r in reps],
        [int(s) for s in sizes],
        stab,
        order,
    )


def regular_orbit_count(M: MatGroup, domain_cap: int = DEFAULT_DOMAIN_CAP) -> int:
    return orbit_decomposition(M, domain_cap).regular_count


def regular_orbit_count_bruteforce(M: MatGroup) -> int:
    """Count vectors with trivial stabilizer by testing every group element."""
    elems = [matrix_image_array(g) for g in M.elements()]
    size = M.domain_size
    fixed_by_some = np.zeros(size, dtype=bool)
    ar = np.arange(size)
    for img in elems:
        if np.array_equal(img, ar):
            continue
        fixed_by_some |= img == ar
    free = int(np.count_nonzero(~fixed_by_some))
    return free // M.order


def verify_regular_orbit_bound(M: MatGroup, claim: int, domain_cap: int = DEFAULT_DOMAIN_CAP) -> dict:
    """Check that the number of regular orbits is at least ``claim``.

    The hypotheses under which such a claim is expected to hold are the
    caller's responsibility; this only counts.
    """
    dec = orbit_decomposition(M, domain_cap)
    count = dec.regular_count
    report = {
        "n": M.n,
        "p": M.p,
        "group_order": dec.group_order,
        "orbits": len(dec),
        "regular_orbits": count,
        "claim": claim,
        "passed": count >= claim,
    }
    if count < claim:
        stab_hist: dict[int, int] = {}
        for s in dec.stabilizer_orders:
            stab_hist[s] = stab_hist.get(s, 0) + 1
        report["counterexample"] = {
            "stabilizer_order_histogram": {str(k): v for k, v in sorted(stab_hist.items())},
        }
    return report


# ---------------------------------------------------------------------------
# subsets

def subset_images(G: PermGroup) -> list[np.ndarray]:
    """Action of each generator on all ``2**d`` subsets encoded as bitmasks."""
    d = G.degree
    if d > MAX_SET_DOMAIN:
        raise ResourceError(f"subset action on {d} points exceeds cap {MAX_SET_DOMAIN}")
    masks = np.arange(1 << d, dtype=np.int64)
    out = []
    for g in G.generators:
        img = np.zeros_like(masks)
        for i, j in enumerate(g.images):
            img |= ((masks >> i) & 1) << j
        out.append(img)
    return out


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    count = np.zeros(x.shape, dtype=np.int64)
    while np.any(x):
        count += (x & np.uint64(1)).astype(np.int64)
        x = x >> np.uint64(1)
    return count


def set_orbit_stats(G: PermGroup) -> tuple[int, int, int]:
    """(set orbits, regular set orbits, strongly regular set orbits).

    A set orbit is regular when the set stabilizer is trivial, and strongly
    regular when in addition the sets have size different from half the domain.
    """
    d = G.degree
    labels = orbit_labels(subset_images(G), 1 << d)
    reps, sizes = np.unique(labels, return_counts=True)
    regular = sizes == G.order
    half = _popcount(reps) * 2 == d
    return int(reps.size), int(regular.sum()), int((regular & ~half).sum())


def set_orbit_stats_bruteforce(G: PermGroup) -> tuple[int, int, int]:
    """Same counts from explicit set stabilizers (Burnside for the total)."""
    d = G.degree
    if d > 16:
        raise ResourceError("brute-force subset scan limited to 16 points")
    elems = G.elements()
    masks = np.arange(1 << d, dtype=np.int64)
    fixcount = np.zeros(1 << d, dtype=np.int64)
    for g in elems:
        img = np.zeros_like(masks)
        for i, j in enumerate(g.images):
            img |= ((masks >> i) & 1) << j
        fixcount += img == masks
    total, rem = divmod(int(fixcount.sum()), len(elems))
    if rem:
        raise AssertionError("Burnside count is not an integer")
    free = fixcount == 1
    pop = _popcount(masks)
    regular = int(free.sum()) // len(elems)
    strong = int((free & (2 * pop != d)).sum()) // len(elems)
    return total, regular, strong


def strongly_regular_lower_bound(degree: int) -> int:
    """The ceil(|Omega| / 25) lower bound for strongly regular set orbits."""
    return -(-degree // 25)


# ---------------------------------------------------------------------------
# the extraspecial example 5^(1+2):3 inside GL(5,11)

def _scalar(n: int, p: int, c: int) -> FieldMatrix:
    return FieldMatrix([[c if i == j else 0 for j in range(n)] for i in range(n)], p)


def _solve_intertwiner(pairs, n: int, p: int) -> list[FieldMatrix]:
    """Basis of {T : A T = T B for all (A, B) in pairs} over GF(p)."""
    rows = []
    for a, b in pairs:
        ar, br = a.rows, b.rows
        for i in range(n):
            for j in range(n):
                # (A T)_{ij} - (T B)_{ij} = sum_k A_ik T_kj - T_ik B_kj
                eq = [0] * (n * n)
                for k in range(n):
                    eq[k * n + j] += ar[i][k]
                    eq[i * n + k] -= br[k][j]
                rows.append([x % p for x in eq])
    sols = _nullspace_mod_p(rows, n * n, p)
    return [FieldMatrix([s[i * n:(i + 1) * n] for i in range(n)], p) for s in sols]


def _nullspace_mod_p(rows: list[list[int]], width: int, p: int) -> list[list[int]]:
    a = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(a)) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * width
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-a[i][f]) % p
        basis.append(v)
    return basis


def extraspecial_example() -> MatGroup:
    """The group 5^(1+2):3 of order 375 acting irreducibly on GF(11)^5.

    The extraspecial part is generated by the cyclic shift X and the diagonal
    matrix Y = diag(w^i) with w = 3 of multiplicative order 5 mod 11.  An
    element of order 3 normalizing it is found as an intertwiner realizing the
    order-3 symplectic map X -> Y, Y -> (XY)^-1 (up to scalars), normalized
    so that the full group has order 375.
    """
    n, p, w = 5, 11, 3
    X = FieldMatrix([[1 if j == (i + 1) % n else 0 for j in range(n)] for i in range(n)], p)
    Y = FieldMatrix([[pow(w, i, p) if i == j else 0 for j in range(n)] for i in range(n)], p)
    E = MatGroup([X, Y])
    xy_inv = mat_inv(X * Y)
    for a in range(5):
        for b in range(5):
            target_x = Y * _scalar(n, p, pow(w, a, p))
            target_y = xy_inv * _scalar(n, p, pow(w, b, p))
            sols = _solve_intertwiner([(X, target_x), (Y, target_y)], n, p)
            # X T = T target_x  <=>  T^-1 X T = target_x
            for T in sols:
                if T.determinant() == 0:
                    continue
                for c in range(1, p):
                    Tc = T * _scalar(n, p, c)
                    if (Tc ** 3).is_identity() or E.contains(Tc ** 3):
                        G = MatGroup([X, Y, Tc])
                        if G.order == 375:
                            return G
    raise AssertionError("no order-3 normalizing element found")


def singer_cycle(n: int, p: int = 2) -> FieldMatrix:
    """Companion matrix of a primitive polynomial of degree n over GF(p)."""
    from .structure import primitive_polynomial

    coeffs = primitive_polynomial(p, n)
    return companion(coeffs[:-1], p)


def fixed_space_dimensions(M: MatGroup) -> dict[int, int]:
    """Histogram of dim C_V(g) over the elements of M."""
    from .smallfield import fixed_space

    hist: dict[int, int] = {}
    for g in M.elements():
        d = len(fixed_space(g))
        hist[d] = hist.get(d, 0) + 1
    return dict(sorted(hist.items()))


def orbit_count_burnside(M: MatGroup) -> int:
    """Number of orbits on V by the orbit-counting lemma (independent of BFS)."""
    total = 0
    for g in M.elements():
        from .smallfield import fixed_space

        total += M.p ** len(fixed_space(g))
    q, r = divmod(total, M.order)
    if r:
        raise AssertionError("non-integral orbit count")
    return q


def lcm_orders(M: MatGroup) -> int:
    return math.lcm(*(g.order() for g in M.elements()))
