"""Normal-subgroup chain of quasi-primitive linear groups and semi-linear groups.

For an odd-order irreducible G <= GL(V) the chain is

    Z = Soc(T) <= T = Z(F) <= F = F(G) <= A = C_G(Z) <= G,

with F = E T a central product, |F:T| = e^2, and W an irreducible
T-submodule of V.  Everything is computed from the group (Fitting subgroup,
centres, centralizers); only quasi-primitivity itself is taken on trust,
and every consequence that can be checked is checked.

GF(q^m) is realized from a fixed primitive polynomial per (q, m) (the Conway
polynomial, shipped in ``data/conway.json``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Sequence

import numpy as np

from .action import MatGroup, _nullspace_mod_p, spanning_perm_group
from .groupcore import (
    Perm,
    PermGroup,
    ResourceError,
    center,
    centralizer,
    fitting_subgroup,
    intersection,
    is_normal,
    normal_closure,
    p_core,
    prime_factors,
    subgroup_from_mask,
    subgroup_mask,
)
from .smallfield import FieldMatrix, is_irreducible, left_kernel, rank, span_elements, spin

MAX_FIELD_SIZE = 2 ** 16


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists low-to-high

def _trim(a: list[int]) -> list[int]:
    a = a[:]
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    m = _trim(m)
    inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        shift = len(a) - len(m)
        for i, x in enumerate(m):
            a[shift + i] = (a[shift + i] - c * x) % p
        a = _trim(a)
    return a


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(a, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = poly_mod(poly_mul(base, base, p), m, p)
    return result


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def poly_add(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x + y) % p for x, y in zip(a, b)])


def poly_eval_in(f: list[int], y: list[int], m: list[int], p: int) -> list[int]:
    """f(y) reduced modulo m (Horner)."""
    acc: list[int] = []
    for c in reversed(f):
        acc = poly_add(poly_mod(poly_mul(acc, y, p), m, p), [c % p], p)
    return acc


def is_primitive_poly(f: list[int], p: int) -> bool:
    """x has multiplicative order p^m - 1 modulo the monic f of degree m."""
    m = len(f) - 1
    if m < 1 or f[0] % p == 0:
        return False
    order = p ** m - 1
    if poly_powmod([0, 1], order, f, p) != [1]:
        return False
    return all(poly_powmod([0, 1], order // q, f, p) != [1] for q in prime_factors(order))


def conway_polynomial(p: int, m: int, known: dict | None = None) -> list[int]:
    """Compute the Conway polynomial of degree m over GF(p) from its definition.

    It is the least primitive polynomial (in the alternating-sign
    lexicographic order) whose root, raised to (p^m-1)/(p^d-1), is a root of
    the Conway polynomial of degree d for every proper divisor d of m.
    """
    known = {} if known is None else known
    subs = {}
    for d in range(1, m):
        if m % d == 0:
            subs[d] = known.get(d) or conway_polynomial(p, d, known)
            known[d] = subs[d]
    order = p ** m - 1
    # enumerate sort keys in increasing order and decode them into coefficients
    for key in np.ndindex(*([p] * m)):
        tail = [0] * m
        for pos, k in enumerate(key):
            i = m - 1 - pos
            tail[i] = (int(k) * (-1) ** (m - i)) % p
        f = tail + [1]
        if not is_primitive_poly(f, p):
            continue
        ok = True
        for d, g in subs.items():
            y = poly_powmod([0, 1], order // (p ** d - 1), f, p)
            if poly_eval_in(g, y, f, p):
                ok = False
                break
        if ok:
            known[m] = f
            return f
    raise AssertionError("no Conway polynomial found")


@lru_cache(maxsize=None)
def _poly_table() -> dict:
    text = resources.files("oddrep").joinpath("data/conway.json").read_text(encoding="utf-8")
    return json.loads(text)


def primitive_polynomial(p: int, m: int) -> list[int]:
    """The shipped primitive polynomial of degree m over GF(p), low-to-high, monic."""
    key = f"{p},{m}"
    table = _poly_table()["polynomials"]
    if key not in table:
        if p ** m > MAX_FIELD_SIZE:
            raise ResourceError(f"GF({p}^{m}) exceeds the field size cap")
        return conway_polynomial(p, m)
    return list(table[key])


def minimal_polynomial(g: FieldMatrix) -> list[int]:
    """Monic minimal polynomial of a matrix (low-to-high)."""
    n, p = g.n, g.p
    powers = [FieldMatrix.identity(n, p)]
    while True:
        flat = [[x for row in m.rows for x in row] for m in powers]
        cur = g ** len(powers)
        # look for a dependency c_0 I + ... + c_{k-1} g^{k-1} + g^k = 0
        target = [x for row in cur.rows for x in row]
        cols = list(zip(*flat)) if flat else []
        sols = _nullspace_mod_p([list(c) + [t] for c, t in zip(cols, target)], len(powers) + 1, p)
        for s in sols:
            if s[-1] % p:
                inv = pow(s[-1], -1, p)
                return [x * inv % p for x in s]
        powers.append(cur)
        if len(powers) > n + 1:
            raise AssertionError("minimal polynomial degree exceeds n")


def distinct_degree_factors(f: list[int], p: int) -> dict[int, list[int]]:
    """Degree d -> product of the irreducible factors of degree d (f squarefree monic)."""
    out = {}
    rest = f[:]
    d = 1
    xp = [0, 1]
    while len(rest) - 1 >= 2 * d:
        xp = poly_powmod(xp, p, rest, p)
        g = poly_gcd(rest, poly_add(xp, [0, p - 1], p), p)
        if len(g) > 1:
            out[d] = g
            rest = _poly_div_exact(rest, g, p)
            xp = poly_mod(xp, rest, p)
        d += 1
    if len(rest) > 1:
        out[len(rest) - 1] = rest
    return out


def _poly_div_exact(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    q = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], -1, p)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] * inv % p
        q[k] = c
        for i, x in enumerate(b):
            a[k + i] = (a[k + i] - c * x) % p
    if _trim(a):
        raise AssertionError("inexact polynomial division")
    return q


# ---------------------------------------------------------------------------
# GF(q^m) and the semi-linear group

@dataclass
class FieldTable:
    q: int
    m: int
    poly: list[int]
    exp: np.ndarray      # exp[i] = index of x^i, i < q^m - 1
    log: np.ndarray      # log[exp[i]] = i, log[0] = -1

    @property
    def size(self) -> int:
        return self.q ** self.m

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.size - 1)])


def field_table(q: int, m: int) -> FieldTable:
    size = q ** m
    if size > MAX_FIELD_SIZE:
        raise ResourceError(f"GF({q}^{m}) exceeds the field size cap")
    f = primitive_polynomial(q, m)
    low = [(-c) % q for c in f[:-1]]            # x^m = sum low_i x^i
    weights = [q ** i for i in range(m)]
    exp = np.zeros(size - 1, dtype=np.int64)
    coeffs = [1] + [0] * (m - 1)
    for i in range(size - 1):
        exp[i] = sum(c * w for c, w in zip(coeffs, weights))
        top = coeffs[-1]
        coeffs = [0] + coeffs[:-1]
        if top:
            coeffs = [(c + top * l) % q for c, l in zip(coeffs, low)]
    log = np.full(size, -1, dtype=np.int64)
    log[exp] = np.arange(size - 1)
    if np.count_nonzero(log[1:] < 0):
        raise AssertionError("polynomial is not primitive")
    return FieldTable(q, m, f, exp, log)


@dataclass
class SemilinearGroup:
    q: int
    m: int
    group: PermGroup      # on the q^m field elements
    scalars: PermGroup    # multiplications, cyclic of order q^m - 1
    field: FieldTable

    @property
    def order(self) -> int:
        return self.group.order


def build_semilinear(q: int, m: int) -> SemilinearGroup:
    """Gamma(q^m) = {x -> a x^sigma} as a permutation group on GF(q^m)."""
    F = field_table(q, m)
    size = F.size
    cyc = size - 1
    mult = np.zeros(size, dtype=np.int64)
    frob = np.zeros(size, dtype=np.int64)
    i = np.arange(cyc)
    mult[F.exp[i]] = F.exp[(i + 1) % cyc]
    frob[F.exp[i]] = F.exp[(i * q) % cyc]
    gens_mult = [Perm(mult.tolist())] if cyc > 1 else []
    gens_frob = [Perm(frob.tolist())] if m > 1 else []
    G = PermGroup(gens_mult + gens_frob, size)
    S = PermGroup(gens_mult, size)
    return SemilinearGroup(q, m, G, S, F)


def semilinear_matrices(q: int, m: int) -> tuple[FieldMatrix, FieldMatrix]:
    """(multiplication by a primitive element, Frobenius) as m x m matrices over GF(q)."""
    F = field_table(q, m)

    def coords(idx: int) -> list[int]:
        return [(idx // q ** k) % q for k in range(m)]

    cyc = F.size - 1
    mult = FieldMatrix([coords(int(F.exp[(i + 1) % cyc])) for i in range(m)], q)
    frob = FieldMatrix([coords(int(F.exp[(i * q) % cyc])) for i in range(m)], q)
    return mult, frob


def scalars_fixed_point_free(S: SemilinearGroup) -> bool:
    """Gamma_0 is regular on the nonzero field elements."""
    orbit = {1}
    frontier = [1]
    for x in frontier:
        for g in S.scalars.generators:
            y = g.images[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return S.scalars.order == S.field.size - 1 and len(orbit) == S.field.size - 1


# ---------------------------------------------------------------------------
# the chain

class HypothesisError(ValueError):
    """The supplied group does not satisfy the asserted hypotheses."""


@dataclass
class QuasiPrimitiveData:
    n: int
    p: int
    group_order: int
    F: PermGroup
    T: PermGroup
    Z: PermGroup
    E: PermGroup
    A: PermGroup
    e: int
    W_dim: int
    b: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is True or v is None for v in self.checks.values())

    def summary(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "|G|": self.group_order,
            "|F|": self.F.order,
            "|T|": self.T.order,
            "|Z|": self.Z.order,
            "|E|": self.E.order,
            "|A|": self.A.order,
            "e": self.e,
            "dim W": self.W_dim,
            "b": self.b,
            "checks": self.checks,
        }


def _socle_of_abelian(G: PermGroup, T: PermGroup) -> PermGroup:
    """Elements of squarefree order in the abelian group T."""
    mask = subgroup_mask(G, T)
    orders = G.table.element_orders
    rad = math.prod(prime_factors(T.order)) if T.order > 1 else 1
    keep = mask & (rad % orders == 0)
    return subgroup_from_mask(G, keep)


def _product(G: PermGroup, *groups: PermGroup) -> PermGroup:
    gens = [g for H in groups for g in H.generators]
    return PermGroup(gens, G.degree)


def _is_cyclic(H: PermGroup) -> bool:
    if H.order == 1:
        return True
    return int(H.table.element_orders.max()) == H.order


def _perm_to_matrix(points: list[int], perm: Perm, M: MatGroup) -> FieldMatrix:
    """Recover the matrix of a permutation of the spanning set (images of basis vectors)."""
    pos = {v: i for i, v in enumerate(points)}
    rows = []
    for i in range(M.n):
        img = points[perm.images[pos[M.p ** i]]]
        rows.append([(img // M.p ** k) % M.p for k in range(M.n)])
    return FieldMatrix(rows, M.p)


def _restricted_action(basis: Sequence[int], g: FieldMatrix) -> list[list[int]]:
    """Matrix of g on the invariant subspace spanned by ``basis`` (in that basis)."""
    n, p = g.n, g.p
    vecs = [[(b // p ** k) % p for k in range(n)] for b in basis]
    out = []
    for b in basis:
        img = g.act(b)
        target = [(img // p ** k) % p for k in range(n)]
        # solve sum c_j vecs_j = target
        eqs = [[vecs[j][k] for j in range(len(basis))] + [(-target[k]) % p] for k in range(n)]
        sols = _nullspace_mod_p(eqs, len(basis) + 1, p)
        sol = next(s for s in sols if s[-1] % p)
        inv = pow(sol[-1], -1, p)
        out.append([x * inv % p for x in sol[:-1]])
    return out


def _hom_dim(a_mats: list[list[list[int]]], b_mats: list[FieldMatrix], da: int, n: int, p: int) -> int:
    """dim of {X (da x n) : A_i X = X B_i for all i}."""
    eqs = []
    for A, B in zip(a_mats, b_mats):
        br = B.rows
        for i in range(da):
            for j in range(n):
                eq = [0] * (da * n)
                for k in range(da):
                    eq[k * n + j] += A[i][k]
                for k in range(n):
                    eq[i * n + k] -= br[k][j]
                eqs.append([x % p for x in eq])
    if not eqs:
        return da * n
    return len(_nullspace_mod_p(eqs, da * n, p))


def is_homogeneous(gens: Sequence[FieldMatrix], n: int, p: int) -> bool | None:
    """Whether V restricted to <gens> is a sum of copies of one irreducible.

    Exact for groups of order prime to p (then V is semisimple): take an
    irreducible submodule W0 and compare k dim W0 with n, where
    k = dim Hom(W0, V) / dim End(W0).  Returns None when p divides the order.
    """
    gens = [g for g in gens if not g.is_identity()]
    if not gens:
        return True
    order = MatGroup(gens).order
    if order % p == 0:
        return None
    w0 = _minimal_submodule(gens, n, p)
    d = len(w0)
    a_mats = [_restricted_action(w0, g) for g in gens]
    hom = _hom_dim(a_mats, gens, d, n, p)
    end_basis_eqs = _hom_dim(a_mats, [FieldMatrix(a, p) for a in a_mats], d, d, p)
    k, r = divmod(hom, end_basis_eqs)
    if r:
        raise AssertionError("Hom dimension is not a multiple of End dimension")
    return k * d == n


def _matrix_poly(f: list[int], g: FieldMatrix) -> FieldMatrix:
    """f(g) by Horner's rule."""
    n, p = g.n, g.p
    acc = [[0] * n for _ in range(n)]
    gr = g.rows
    for c in reversed(f):
        acc = [[sum(acc[i][k] * gr[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)]
        for i in range(n):
            acc[i][i] = (acc[i][i] + c) % p
    return FieldMatrix(acc, p)


def _minimal_submodule(gens: Sequence[FieldMatrix], n: int, p: int) -> tuple[int, ...]:
    """An invariant subspace of least dimension, found by spinning vectors.

    A minimal submodule meets the kernel of f(g) for some irreducible factor
    f of the minimal polynomial of g, so only vectors from the kernels of the
    irreducible factors of one generator need to be spun.
    """
    from .catalog import monic_irreducible_factors

    pool: list[int] | None = None
    for g in gens:
        kernels = [left_kernel(_matrix_poly(f, g)) for f in monic_irreducible_factors(minimal_polynomial(g), p)]
        size = sum(p ** len(k) for k in kernels)
        if pool is None or size < len(pool):
            pool = [v for k in kernels for v in span_elements(k, n, p) if v]
    best = None
    for v in sorted(set(pool)):
        s = spin(v, gens, n, p)
        if best is None or len(s) < len(best):
            best = s
            if len(best) == 1:
                break
    return best


def quasi_primitive_data(G: MatGroup, asserted_quasi_primitive: bool = True) -> QuasiPrimitiveData:
    """Compute the chain Z <= T <= F <= A <= G and check its stated properties."""
    if not asserted_quasi_primitive:
        raise HypothesisError("quasi-primitivity must be asserted by the caller")
    order = G.order
    if order % 2 == 0:
        raise HypothesisError("group order is even")
    gens = [g for g in G.generators if not g.is_identity()]
    if G.n > 1 and (not gens or len(_minimal_submodule(gens, G.n, G.p)) < G.n):
        raise HypothesisError("group is not irreducible")
    P, points = spanning_perm_group(G)
    F = fitting_subgroup(P)
    T = center(F)
    Z = _socle_of_abelian(P, T)
    outside = [p_core(F, r) for r in prime_factors(F.order)]
    outside = [S for S in outside if not all(T.contains(g) for g in S.generators)]
    E = _product(P, Z, *outside)
    A = centralizer(P, Z)
    checks: dict = {}
    index_ft = F.order // T.order
    e = math.isqrt(index_ft)
    checks["|F:T| is a square e^2"] = e * e == index_ft
    checks["e divides dim V"] = G.n % e == 0
    checks["F = E T"] = _product(P, E, T).order == F.order
    checks["Z = E meet T"] = intersection(P, E, T).order == Z.order and all(E.contains(z) and T.contains(z) for z in Z.generators)
    zE = center(E)
    checks["Z = Z(E)"] = zE.order == Z.order and all(Z.contains(g) for g in zE.generators)
    checks["T cyclic"] = _is_cyclic(T)
    for name, H in (("F", F), ("T", T), ("Z", Z), ("E", E), ("A", A)):
        checks[f"{name} normal in G"] = is_normal(P, H)
    w_dim = 0
    b = 0
    if checks["T cyclic"]:
        if T.order == 1:
            w_dim = 1
        else:
            gen = next(_perm_to_matrix(points, P.table.perm(int(i)), G) for i in np.flatnonzero(subgroup_mask(P, T)) if P.table.element_orders[int(i)] == T.order)
            mp = minimal_polynomial(gen)
            degs = distinct_degree_factors(mp, G.p)
            w_dim = min(degs)
            checks["V homogeneous for T (minimal polynomial irreducible)"] = len(degs) == 1 and list(degs.values())[0] == mp and len(mp) - 1 == w_dim
        checks["|T| divides |W| - 1"] = (G.p ** w_dim - 1) % T.order == 0
        checks["|G:A| divides dim W"] = w_dim % (order // A.order) == 0
        checks["dim W * b * e = dim V"] = w_dim > 0 and G.n % (w_dim * e) == 0
        b = G.n // (w_dim * e) if checks["dim W * b * e = dim V"] else 0
    for name, H in (("F", F), ("Z", Z), ("E", E), ("A", A)):
        mats = [_perm_to_matrix(points, g, G) for g in H.generators]
        checks[f"V homogeneous for {name}"] = is_homogeneous(mats, G.n, G.p) if mats else True
    return QuasiPrimitiveData(G.n, G.p, order, F, T, Z, E, A, e, w_dim, b, checks)


def check_e_exclusion(corpus: Sequence[tuple[str, MatGroup]]) -> dict:
    """e is never 3 or 7 on the supplied quasi-primitive corpus, and the
    underlying reason holds at desk scale: GL(2,3) and GL(2,7) have no
    irreducible subgroup of odd order."""
    from .catalog import lemma22_summary

    values = {}
    for name, G in corpus:
        values[name] = quasi_primitive_data(G).e
    mech = {f"GL(2,{p})": lemma22_summary(2, p)["irreducible_orders"] for p in (3, 7)}
    passed = all(e not in (3, 7) for e in values.values()) and all(not v for v in mech.values())
    return {"e_values": values, "irreducible_odd_orders": mech, "passed": passed}
