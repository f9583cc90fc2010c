"""Split extensions G.A of an abelian 2-group A by a group acting on it.

``k_semidirect_formula`` counts classes of the extension as the sum, over
orbit representatives a of G on A, of the class numbers of the stabilizers
C_G(a).  ``build_affine`` realizes the extension as the permutation group
a -> g(a) + t on the elements of A, so the same number can be obtained by
brute-force class enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .action import MatGroup, as_perm_group, orbit_labels
from .groupcore import Perm, PermGroup, ResourceError, class_number, element_cap, point_stabilizer
from .smallfield import FieldMatrix


class AbelianGroup2:
    """Z_{c1} x ... x Z_{ck} with every c_i a power of two.

    Elements are residue tuples, indexed in mixed radix with the first
    factor least significant.
    """

    def __init__(self, cyclic_factors: Sequence[int]):
        factors = tuple(int(c) for c in cyclic_factors)
        for c in factors:
            if c < 2 or c & (c - 1):
                raise ValueError(f"cyclic factor {c} is not a power of two > 1")
        self.factors = factors
        self.order = math.prod(factors)

    def __repr__(self):
        return "AbelianGroup2(" + "x".join(f"Z{c}" for c in self.factors) + ")"

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def log2_order(self) -> int:
        return self.order.bit_length() - 1

    def is_elementary(self) -> bool:
        return all(c == 2 for c in self.factors)

    def element(self, index: int) -> tuple[int, ...]:
        out = []
        for c in self.factors:
            index, r = divmod(index, c)
            out.append(r)
        return tuple(out)

    def index(self, elem: Sequence[int]) -> int:
        idx, w = 0, 1
        for r, c in zip(elem, self.factors):
            idx += (r % c) * w
            w *= c
        return idx

    @cached_property
    def elements_array(self) -> np.ndarray:
        idx = np.arange(self.order)
        cols = []
        for c in self.factors:
            cols.append(idx % c)
            idx = idx // c
        return np.stack(cols, axis=1) if cols else np.zeros((1, 0), dtype=np.int64)

    def index_array(self, elems: np.ndarray) -> np.ndarray:
        w = np.cumprod((1,) + self.factors[:-1]) if self.factors else np.zeros(0, dtype=np.int64)
        return (elems % np.array(self.factors)) @ w if self.factors else np.zeros(len(elems), dtype=np.int64)

    @cached_property
    def addition_table(self) -> np.ndarray:
        e = self.elements_array
        s = e[:, None, :] + e[None, :, :]
        return self.index_array(s.reshape(-1, self.rank)).reshape(self.order, self.order)

    def generator_indices(self) -> list[int]:
        return [self.index(tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank)]

    def automorphism_from_matrix(self, m: Sequence[Sequence[int]]) -> Perm:
        """The map x -> x * m on residue row vectors (homocyclic A only)."""
        if len(set(self.factors)) > 1:
            raise ValueError("matrix automorphisms need a homocyclic group")
        mod = self.factors[0]
        mat = np.array(m, dtype=np.int64) % mod
        img = self.elements_array @ mat % mod
        return Perm(self.index_array(img).tolist())

    def is_automorphism(self, perm: Perm) -> bool:
        if perm.degree != self.order:
            return False
        f = np.array(perm.images)
        t = self.addition_table
        return bool(np.array_equal(f[t], t[f[:, None], f[None, :]]))


def automorphism_group_order(factors: Sequence[int]) -> int:
    """|Aut(A)| for an abelian p-group, from the standard counting formula.

    With A = prod Z_{p^{e_i}}, e_1 <= ... <= e_k, d_j = max{l : e_l = e_j}
    and c_j = min{l : e_l = e_j}:
    |Aut A| = prod_j (p^{d_j} - p^{j-1}) * prod_j p^{e_j (k - d_j)} * prod_j p^{(e_j - 1)(k - c_j + 1)}.
    """
    if not factors:
        return 1
    p = min(q for q in range(2, factors[0] + 1) if factors[0] % q == 0)
    es = sorted(int(round(math.log(c, p))) for c in factors)
    for c, e in zip(sorted(factors), es):
        if p ** e != c:
            raise ValueError("factors must be powers of one prime")
    k = len(es)
    out = 1
    for j in range(1, k + 1):
        e = es[j - 1]
        d = max(l for l in range(1, k + 1) if es[l - 1] == e)
        c = min(l for l in range(1, k + 1) if es[l - 1] == e)
        out *= p ** d - p ** (j - 1)
        out *= p ** (e * (k - d))
        out *= p ** ((e - 1) * (k - c + 1))
    return out


class NoFaithfulActionError(ValueError):
    """No group of the requested order can act faithfully on A."""


def require_faithful_order(order: int, A: AbelianGroup2) -> int:
    """Raise unless ``order`` divides |Aut(A)|; returns |Aut(A)|."""
    aut_order = automorphism_group_order(A.factors)
    if aut_order % order:
        raise NoFaithfulActionError(
            f"no faithful action: {order} does not divide |Aut(A)| = {aut_order}"
        )
    return aut_order


@dataclass
class AffineGroup:
    group: PermGroup                  # acting on the |A| elements of A
    linear_order: int
    translations: PermGroup
    A: AbelianGroup2

    @property
    def order(self) -> int:
        return self.group.order


def _translation_perms(A: AbelianGroup2) -> list[Perm]:
    t = A.addition_table
    return [Perm(t[:, g].tolist()) for g in A.generator_indices()]


def _linear_perms(G, A: AbelianGroup2) -> list[Perm]:
    if isinstance(G, MatGroup):
        if G.p != 2 or not A.is_elementary() or A.rank != G.n:
            raise ValueError("matrix groups act on elementary abelian A of matching rank")
        return [Perm(img.tolist()) for img in G.vector_images()]
    perms = list(G)
    for g in perms:
        if not A.is_automorphism(g):
            raise ValueError("action is not by automorphisms")
    return perms


def build_affine(G, A: AbelianGroup2) -> AffineGroup:
    """The group {a -> g(a) + t} on the elements of A.

    ``G`` is a MatGroup over GF(2) (for elementary abelian A, vector index =
    residue index) or a list of automorphisms of A given as permutations.
    """
    lin = _linear_perms(G, A)
    lin_group = PermGroup(lin, A.order)
    if lin_group.order * A.order > element_cap():
        raise ResourceError("affine group exceeds the element cap")
    trans = _translation_perms(A)
    full = PermGroup(lin + trans, A.order)
    T = PermGroup(trans, A.order)
    if full.order != lin_group.order * A.order:
        raise AssertionError("affine group has unexpected order")
    return AffineGroup(full, lin_group.order, T, A)


def orbit_stabilizer_data(L: PermGroup) -> list[tuple[int, int, int]]:
    """(orbit representative, orbit size, k(stabilizer)) for L acting on its points."""
    images = [np.array(g.images) for g in L.generators]
    labels = orbit_labels(images, L.degree)
    reps, sizes = np.unique(labels, return_counts=True)
    out = []
    for r, s in zip(reps, sizes):
        stab = point_stabilizer(L, int(r)) if L.order > 1 else L
        out.append((int(r), int(s), class_number(stab)))
    return out


def k_formula_from_perms(L: PermGroup) -> int:
    """Sum of k(C_L(a)) over orbit representatives a (L acting on A)."""
    return sum(k for _, _, k in orbit_stabilizer_data(L))


def k_semidirect_formula(G: MatGroup, n: int | None = None) -> int:
    """k(G V) for V = GF(p)^n from orbit representatives and their stabilizers."""
    if n is not None and n != G.n:
        raise ValueError("dimension mismatch")
    if G.n == 0:
        return 1
    return k_formula_from_perms(as_perm_group(G))


def k_semidirect_bruteforce(G: MatGroup) -> int:
    A = AbelianGroup2([2] * G.n) if G.n else None
    if A is None:
        return 1
    return class_number(build_affine(G, A).group)


def hartley_turull_witness(auts: Sequence[Perm], A: AbelianGroup2, candidates=None) -> dict:
    """Find an elementary abelian model B with the same orbit data and k(GB) = k(GA).

    ``candidates`` is an iterable of MatGroup over GF(2) of dimension
    log2|A|; by default the odd-order catalog of that dimension is used.
    """
    lin = PermGroup(list(auts), A.order) if auts else PermGroup([], A.order)
    for g in auts:
        if not A.is_automorphism(g):
            raise ValueError("action is not by automorphisms")
    g_order = lin.order
    require_faithful_order(g_order, A)
    data_a = orbit_stabilizer_data(lin)
    k_ga = sum(k for _, _, k in data_a)
    signature = sorted((s, k) for _, s, k in data_a)
    n = A.log2_order
    if A.is_elementary():
        return {"found": True, "k_GA": k_ga, "k_GB": k_ga, "witness": "identity", "signature": signature}
    if candidates is None:
        from .catalog import enumerate_odd_subgroups_gl

        candidates = [e.mat_group() for e in enumerate_odd_subgroups_gl(n)]
    for M in candidates:
        if M.order != g_order:
            continue
        data_b = orbit_stabilizer_data(as_perm_group(M))
        if sorted((s, k) for _, s, k in data_b) != signature:
            continue
        k_gb = sum(k for _, _, k in data_b)
        if k_gb == k_ga:
            return {
                "found": True,
                "k_GA": k_ga,
                "k_GB": k_gb,
                "witness": [g.to_text() for g in M.generators],
                "signature": signature,
            }
    return {"found": False, "k_GA": k_ga, "signature": signature, "witness": None}
