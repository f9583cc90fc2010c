"""Finite groups held as flat arrays of integer element codes.

A *universe* is a group small enough to list completely.  Elements are
int64 codes, kept sorted, with vectorized multiplication, so normalizer and
conjugacy scans over the whole group are a handful of numpy passes.

Three encodings are provided:

* ``GL2Universe(n)``  GL(n,2), bit ``n*i + j`` of the code is entry (i, j).
* ``SymUniverse(m)``  S_m, image of point i in the 4-bit nibble i.
* ``MatUniverse``     any explicitly listed group of matrices over GF(p),
  entries as little-endian base-p digits.

``OddSubgroupSearch`` enumerates odd-order subgroups of a universe up to
conjugacy by cyclic extension: every group of odd order is solvable, so it
has a normal subgroup of prime index, which is again of odd order.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .groupcore import Perm, PermGroup, prime_factors
from .smallfield import FieldMatrix

_SEED = 20240917


def _isin_sorted(values: np.ndarray, sorted_set: np.ndarray) -> np.ndarray:
    if sorted_set.size == 0:
        return np.zeros(np.shape(values), dtype=bool)
    idx = np.searchsorted(sorted_set, values)
    idx = np.minimum(idx, sorted_set.size - 1)
    return sorted_set[idx] == values


def odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks over GF(p) of a stack of matrices with shape (N, r, c)."""
    m = np.array(mats, dtype=np.int64) % p
    count, nrows, ncols = m.shape
    inv_tab = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    row = np.zeros(count, dtype=np.int64)
    ar = np.arange(nrows)
    for c in range(ncols):
        valid = (ar[None, :] >= row[:, None]) & (m[:, :, c] != 0)
        has = valid.any(axis=1)
        idx = np.flatnonzero(has)
        if idx.size == 0:
            continue
        r0 = row[idx]
        r1 = np.argmax(valid[idx], axis=1)
        a = m[idx, r0].copy()
        m[idx, r0] = m[idx, r1]
        m[idx, r1] = a
        piv = m[idx, r0, c]
        m[idx, r0] = m[idx, r0] * inv_tab[piv][:, None] % p
        fac = m[idx, :, c].copy()
        fac[ar[None, :] <= r0[:, None]] = 0
        m[idx] = (m[idx] - fac[:, :, None] * m[idx, r0][:, None, :]) % p
        row[idx] += 1
    return row


def _components(n: int, src: list[np.ndarray], dst: list[np.ndarray]) -> np.ndarray:
    """Labels = smallest node index of the (weak) component."""
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    s = np.concatenate(src) if src else np.zeros(0, dtype=np.int64)
    d = np.concatenate(dst) if dst else np.zeros(0, dtype=np.int64)
    g = coo_matrix((np.ones(len(s), dtype=np.int8), (s, d)), shape=(n, n)).tocsr()
    _, labels = connected_components(g, directed=True, connection="weak")
    first = np.full(labels.max() + 1, n, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(n))
    return first[labels]


class Universe:
    """Base class; subclasses provide ``codes``, ``identity`` and ``mul``."""

    codes: np.ndarray
    identity: int
    label = "universe"

    @property
    def order(self) -> int:
        return int(self.codes.size)

    def mul(self, a, b) -> np.ndarray:
        raise NotImplementedError

    def fix(self, a: np.ndarray) -> np.ndarray:
        """Fixed-space dimension (matrices) or fixed-point count (perms)."""
        raise NotImplementedError

    # --- generic helpers built on mul
    def index(self, a) -> np.ndarray:
        return np.searchsorted(self.codes, a)

    def power(self, a: np.ndarray, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        result = np.full(a.shape, self.identity, dtype=np.int64)
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def element_orders(self, a: np.ndarray, limit: int | None = None) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        orders = np.zeros(a.shape, dtype=np.int64)
        cur = a.copy()
        k = 1
        orders[cur == self.identity] = 1
        while (orders == 0).any():
            k += 1
            if limit is not None and k > limit:
                raise RuntimeError("element order exceeds limit")
            cur = self.mul(cur, a)
            orders[(cur == self.identity) & (orders == 0)] = k
        return orders

    @property
    def inv_codes(self) -> np.ndarray:
        got = self.__dict__.get("_inv")
        if got is None:
            got = self._compute_inverses(self.codes)
            self.__dict__["_inv"] = got
        return got

    def _compute_inverses(self, a: np.ndarray) -> np.ndarray:
        orders = self.element_orders(a)
        out = np.empty_like(a)
        for o in np.unique(orders):
            sel = orders == o
            out[sel] = self.power(a[sel], int(o) - 1)
        return out

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return self.inv_codes[self.index(a)]

    def closure(self, gens, max_size: int | None = None, odd_only: bool = False) -> np.ndarray | None:
        """Sorted codes of the subgroup generated by ``gens``.

        Returns None when ``max_size`` is exceeded or, with ``odd_only``,
        as soon as an element of even order would be needed.
        """
        gens = [int(g) for g in gens if int(g) != self.identity]
        elems = np.array([self.identity], dtype=np.int64)
        frontier = elems
        while frontier.size:
            new = np.unique(np.concatenate([self.mul(frontier, g) for g in gens])) if gens else frontier[:0]
            new = new[~_isin_sorted(new, elems)]
            if new.size == 0:
                break
            elems = np.union1d(elems, new)
            if max_size is not None and elems.size > max_size:
                return None
            frontier = new
        if odd_only and elems.size % 2 == 0:
            return None
        return elems

    def group_order(self, gens) -> int:
        got = self.closure(gens)
        return int(got.size)

    def generators_of(self, subset: np.ndarray, seed: int = _SEED) -> list[int]:
        """A short deterministic generating list for the subgroup ``subset``."""
        target = int(subset.size)
        if target == 1:
            return []
        rng = np.random.default_rng(seed)
        gens: list[int] = []
        for attempt in range(64):
            if len(gens) >= 2 + attempt // 8:
                gens = gens[: max(1, len(gens) - 1)]
            gens.append(int(subset[rng.integers(subset.size)]))
            if self.group_order(gens) == target:
                return sorted(set(gens))
        raise RuntimeError("failed to find generators")

    def describe(self, code: int) -> str:
        return str(code)


# ---------------------------------------------------------------------------
# GL(n, 2), packed bits

class GL2Universe(Universe):
    """GL(n,2) for n <= 5 with codes ``sum(row_i << n*i)``."""

    def __init__(self, n: int):
        if not 1 <= n <= 5:
            raise ValueError("GL(n,2) universes are supported for 1 <= n <= 5")
        self.n = n
        self.mask = (1 << n) - 1
        self.identity = sum(1 << (n * i + i) for i in range(n))
        self.codes = self._enumerate()
        self.label = f"GL({n},2)"

    def _enumerate(self) -> np.ndarray:
        n = self.n
        size = 1 << n
        codes = np.zeros(1, dtype=np.int64)
        span = np.ones(1, dtype=np.int64)  # bit v set iff vector v in span
        bfly = []
        for b in range(n):
            m = 0
            for v in range(size):
                if not (v >> b) & 1:
                    m |= 1 << v
            bfly.append((1 << b, m))
        for i in range(n):
            parts_c, parts_s = [], []
            for r in range(1, size):
                sel = ((span >> r) & 1) == 0
                c = codes[sel] | (r << (n * i))
                parts_c.append(c)
                if i < n - 1:
                    s = span[sel]
                    t = s
                    for b in range(n):
                        if (r >> b) & 1:
                            sh, m = bfly[b]
                            t = ((t & m) << sh) | ((t >> sh) & m)
                    parts_s.append(s | t)
            codes = np.concatenate(parts_c)
            if i < n - 1:
                span = np.concatenate(parts_s)
        return np.sort(codes)

    def rows(self, a: np.ndarray) -> list[np.ndarray]:
        return [(a >> (self.n * i)) & self.mask for i in range(self.n)]

    def mul(self, a, b) -> np.ndarray:
        n, mask = self.n, self.mask
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if b.ndim == 0:
            bv = int(b)
            brow = [(bv >> (n * j)) & mask for j in range(n)]
            table = np.zeros(1 << n, dtype=np.int64)
            for v in range(1, 1 << n):
                low = (v & -v).bit_length() - 1
                table[v] = table[v & (v - 1)] ^ brow[low]
            out = np.zeros(a.shape, dtype=np.int64)
            for i in range(n):
                out |= table[(a >> (n * i)) & mask] << (n * i)
            return out
        brows = self.rows(b)
        if a.ndim == 0:
            av = int(a)
            out = np.zeros(b.shape, dtype=np.int64)
            for i in range(n):
                r = (av >> (n * i)) & mask
                acc = np.zeros(b.shape, dtype=np.int64)
                for j in range(n):
                    if (r >> j) & 1:
                        acc ^= brows[j]
                out |= acc << (n * i)
            return out
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(n):
            ra = (a >> (n * i)) & mask
            acc = 0
            for j in range(n):
                acc = acc ^ (-((ra >> j) & 1) & brows[j])
            out |= acc << (n * i)
        return out

    def _compute_inverses(self, a: np.ndarray) -> np.ndarray:
        n = self.n
        rows = self.rows(a)
        inv = [np.full(a.shape, 1 << i, dtype=np.int64) for i in range(n)]
        for c in range(n):
            piv = np.full(a.shape, -1, dtype=np.int64)
            for r in reversed(range(c, n)):
                piv = np.where((rows[r] >> c) & 1 == 1, r, piv)
            if (piv < 0).any():
                raise ValueError("singular matrix in GL universe")
            for r in range(c + 1, n):
                sel = piv == r
                if sel.any():
                    rows[c], rows[r] = np.where(sel, rows[r], rows[c]), np.where(sel, rows[c], rows[r])
                    inv[c], inv[r] = np.where(sel, inv[r], inv[c]), np.where(sel, inv[c], inv[r])
            for r in range(n):
                if r == c:
                    continue
                h = -((rows[r] >> c) & 1)
                rows[r] = rows[r] ^ (h & rows[c])
                inv[r] = inv[r] ^ (h & inv[c])
        out = np.zeros(a.shape, dtype=np.int64)
        for i in range(n):
            out |= inv[i] << (n * i)
        return out

    def fix(self, a: np.ndarray) -> np.ndarray:
        n = self.n
        a = np.asarray(a, dtype=np.int64)
        basis = [np.zeros(a.shape, dtype=np.int64) for _ in range(n)]
        for i in range(n):
            x = ((a >> (n * i)) & self.mask) ^ (1 << i)
            for c in range(n):
                bit = (x >> c) & 1 == 1
                has = basis[c] != 0
                red = bit & has
                x = np.where(red, x ^ basis[c], x)
                new = bit & ~has
                basis[c] = np.where(new, x, basis[c])
                x = np.where(new, 0, x)
        rank = sum((b != 0).astype(np.int64) for b in basis)
        return n - rank

    def to_matrix(self, code: int) -> FieldMatrix:
        code = int(code)
        return FieldMatrix([(code >> (self.n * i)) & self.mask for i in range(self.n)], 2, self.n, packed=True)

    def from_matrix(self, m: FieldMatrix) -> int:
        return sum(r << (self.n * i) for i, r in enumerate(m.row_indices))

    def to_perm(self, code: int) -> Perm:
        rows = [(int(code) >> (self.n * i)) & self.mask for i in range(self.n)]
        images = []
        for v in range(1 << self.n):
            w = 0
            for i in range(self.n):
                if (v >> i) & 1:
                    w ^= rows[i]
            images.append(w)
        return Perm(images)

    def group_order(self, gens) -> int:
        return PermGroup([self.to_perm(g) for g in gens], 1 << self.n).order

    def describe(self, code: int) -> str:
        return self.to_matrix(code).to_text()


# ---------------------------------------------------------------------------
# S_m

class SymUniverse(Universe):
    def __init__(self, m: int):
        if not 1 <= m <= 9:
            raise ValueError("symmetric universes are supported for m <= 9")
        self.m = m
        self.identity = self._encode(np.arange(m)[None, :])[0]
        perms = np.array(list(permutations(range(m))), dtype=np.int64).reshape(-1, m)
        self.codes = np.sort(self._encode(perms))
        self.label = f"S{m}"

    def _encode(self, arr: np.ndarray) -> np.ndarray:
        shifts = 4 * np.arange(self.m, dtype=np.int64)
        return np.sum(arr.astype(np.int64) << shifts, axis=-1)

    def _decode(self, codes: np.ndarray) -> np.ndarray:
        shifts = 4 * np.arange(self.m, dtype=np.int64)
        return (np.asarray(codes, dtype=np.int64)[..., None] >> shifts) & 15

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        shape = np.broadcast(a, b).shape
        da = np.broadcast_to(self._decode(a), shape + (self.m,))
        db = np.broadcast_to(self._decode(b), shape + (self.m,))
        return self._encode(np.take_along_axis(db, da, axis=-1))

    def _compute_inverses(self, a: np.ndarray) -> np.ndarray:
        return self._encode(np.argsort(self._decode(a), axis=-1))

    def fix(self, a: np.ndarray) -> np.ndarray:
        return np.sum(self._decode(a) == np.arange(self.m), axis=-1)

    def to_perm(self, code: int) -> Perm:
        return Perm(self._decode(np.array(code)).tolist())

    def from_perm(self, p: Perm) -> int:
        return int(self._encode(np.array(p.images)[None, :])[0])

    def group_order(self, gens) -> int:
        return PermGroup([self.to_perm(g) for g in gens], self.m).order

    def describe(self, code: int) -> str:
        return str(self.to_perm(code))


# ---------------------------------------------------------------------------
# explicit matrix groups over GF(p)

class MatUniverse(Universe):
    """A matrix group over GF(p) given by the full list of its element codes."""

    def __init__(self, n: int, p: int, codes: np.ndarray, label: str = "matrix group"):
        self.n, self.p = n, p
        self.weights = p ** np.arange(n * n, dtype=np.int64)
        self.identity = int(self.encode(np.eye(n, dtype=np.int64)[None])[0])
        self.codes = np.unique(np.asarray(codes, dtype=np.int64))
        self.label = label

    @classmethod
    def general_linear(cls, n: int, p: int) -> "MatUniverse":
        total = p ** (n * n)
        if total > 2 ** 22:
            raise ValueError("GL(n,p) too large to list")
        allc = np.arange(total, dtype=np.int64)
        probe = cls(n, p, np.zeros(1, dtype=np.int64))
        ranks = batch_rank(probe.decode(allc), p)
        return cls(n, p, allc[ranks == n], label=f"GL({n},{p})")

    @classmethod
    def from_matrices(cls, mats, label: str = "matrix group") -> "MatUniverse":
        mats = list(mats)
        n, p = mats[0].n, mats[0].p
        probe = cls(n, p, np.zeros(1, dtype=np.int64))
        codes = [probe.from_matrix(m) for m in mats]
        return cls(n, p, np.array(codes), label=label)

    def encode(self, arr: np.ndarray) -> np.ndarray:
        flat = np.asarray(arr, dtype=np.int64).reshape(arr.shape[:-2] + (self.n * self.n,))
        return flat @ self.weights

    def decode(self, codes) -> np.ndarray:
        c = np.asarray(codes, dtype=np.int64)
        digits = (c[..., None] // self.weights) % self.p
        return digits.reshape(c.shape + (self.n, self.n))

    def mul(self, a, b) -> np.ndarray:
        prod = np.matmul(self.decode(a), self.decode(b)) % self.p
        return self.encode(prod)

    def fix(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        m = self.decode(a.ravel()) - np.eye(self.n, dtype=np.int64)
        return (self.n - batch_rank(m, self.p)).reshape(a.shape)

    def to_matrix(self, code: int) -> FieldMatrix:
        return FieldMatrix(self.decode(np.array(code)).tolist(), self.p)

    def from_matrix(self, m: FieldMatrix) -> int:
        return int(self.encode(np.array(m.rows, dtype=np.int64)[None])[0])

    def describe(self, code: int) -> str:
        return self.to_matrix(code).to_text()


# ---------------------------------------------------------------------------
# subgroup records and the cyclic-extension search

@dataclass
class Subgroup:
    codes: np.ndarray              # sorted element codes
    gens: tuple[int, ...]
    fingerprint: tuple = field(default=())
    conjugates: set | None = None  # element tuples of all conjugates, when listed

    @property
    def order(self) -> int:
        return int(self.codes.size)


def class_sizes(U: Universe, codes: np.ndarray, gens) -> list[int]:
    """Conjugacy class sizes of the subgroup with sorted ``codes``."""
    n = codes.size
    ar = np.arange(n)
    src, dst = [], []
    for g in gens:
        conj = U.mul(U.mul(U.inv(np.int64(g)), codes), np.int64(g))
        src.append(ar)
        dst.append(np.searchsorted(codes, conj))
    labels = _components(n, src, dst)
    return sorted(np.bincount(labels)[np.unique(labels)].tolist())


def fingerprint(U: Universe, codes: np.ndarray, gens) -> tuple:
    """(order, exponent, class sizes, multiset of (element order, fix))."""
    orders = U.element_orders(codes)
    fixes = U.fix(codes)
    pairs, counts = np.unique(np.stack([orders, fixes], axis=1), axis=0, return_counts=True)
    om = tuple((int(a), int(b), int(c)) for (a, b), c in zip(pairs, counts))
    exponent = math.lcm(*map(int, np.unique(orders)))
    return (int(codes.size), exponent, tuple(class_sizes(U, codes, gens)), om)


def conjugating_element(U: Universe, a: Subgroup, b: Subgroup) -> int | None:
    """Some u with u^-1 a u = b, scanning the whole universe, else None."""
    if a.order != b.order:
        return None
    mask = np.ones(U.codes.size, dtype=bool)
    for g in a.gens:
        conj = U.mul(U.mul(U.inv_codes, np.int64(g)), U.codes)
        mask &= _isin_sorted(conj, b.codes)
        if not mask.any():
            return None
    hit = np.flatnonzero(mask)
    return int(U.codes[hit[0]]) if hit.size else None


def normalizer_codes(U: Universe, h: Subgroup) -> np.ndarray:
    if h.order == 1:
        return U.codes
    mask = np.ones(U.codes.size, dtype=bool)
    for g in h.gens:
        conj = U.mul(U.mul(U.inv_codes, np.int64(g)), U.codes)
        mask &= _isin_sorted(conj, h.codes)
    return U.codes[mask]


def minimal_generators(U: Universe, codes: np.ndarray) -> tuple[int, ...]:
    """Greedy generators: repeatedly take the least element not yet generated."""
    gens: list[int] = []
    have = np.array([U.identity], dtype=np.int64)
    while have.size < codes.size:
        rest = codes[~_isin_sorted(codes, have)]
        gens.append(int(rest[0]))
        have = U.closure(gens)
    return tuple(gens)


class OddSubgroupSearch:
    """Odd-order subgroups of ``U`` up to U-conjugacy by cyclic extension."""

    def __init__(self, U: Universe, order_cap: int | None = None, threads: int = 1, time_budget: float | None = None):
        self.U = U
        self.time_budget = time_budget
        self.complete = False
        self.odd = odd_part(U.order)
        self.order_cap = self.odd if order_cap is None else min(order_cap, self.odd)
        self.threads = max(1, int(threads))
        self.primes = [q for q in prime_factors(self.odd)]
        self._store: dict[tuple, list[Subgroup]] = {}
        self.results: list[Subgroup] = []

    def _new_subgroup(self, codes: np.ndarray, gens) -> Subgroup:
        gens = minimal_generators(self.U, codes)
        return Subgroup(codes, gens, fingerprint(self.U, codes, gens))

    def _normalizer_gens(self, ncodes: np.ndarray) -> list[int]:
        if ncodes.size == 1:
            return []
        return self.U.generators_of(ncodes)

    def extensions(self, h: Subgroup) -> list[np.ndarray]:
        """Element sets of the subgroups <h, x> with x of prime order mod h."""
        U = self.U
        ncodes = normalizer_codes(U, h)
        out = []
        outside = ncodes[~_isin_sorted(ncodes, h.codes)]
        if outside.size == 0:
            return out
        ngens = None
        for p in self.primes:
            if (h.order * p) > self.order_cap or self.odd % (h.order * p):
                continue
            xp = U.power(outside, p)
            cand = np.sort(outside[_isin_sorted(xp, h.codes)])
            if cand.size == 0:
                continue
            if ngens is None:
                ngens = self._normalizer_gens(ncodes)
            m = cand.size
            ar = np.arange(m)
            src, dst = [], []
            for g in ngens:
                conj = U.mul(U.mul(U.inv(np.int64(g)), cand), np.int64(g))
                src.append(ar)
                dst.append(np.searchsorted(cand, conj))
            r = _primitive_root(p)
            src.append(ar)
            dst.append(np.searchsorted(cand, U.power(cand, r)))
            for g in h.gens:
                src.append(ar)
                dst.append(np.searchsorted(cand, U.mul(cand, np.int64(g))))
            labels = _components(m, src, dst)
            for rep in np.unique(labels):
                x = int(cand[rep])
                codes = U.closure(list(h.gens) + [x])
                if codes.size != h.order * p:
                    raise AssertionError("extension has unexpected order")
                out.append(codes)
        return out

    def _admit(self, codes: np.ndarray) -> Subgroup | None:
        k = self._new_subgroup(codes, ())
        bucket = self._store.setdefault(k.fingerprint, [])
        for other in bucket:
            if conjugating_element(self.U, k, other) is not None:
                return None
        bucket.append(k)
        return k

    def run(self) -> list[Subgroup]:
        U = self.U
        trivial = np.array([U.identity], dtype=np.int64)
        layers: dict[int, list[Subgroup]] = {}
        first = self._admit(trivial)
        layers[1] = [first]
        done: list[Subgroup] = []
        start = time.monotonic()
        while layers:
            if self.time_budget is not None and time.monotonic() - start > self.time_budget:
                # everything found so far is kept; the list is flagged partial
                for rest in layers.values():
                    done.extend(rest)
                self.results = done
                return done
            order = min(layers)
            current = sorted(layers.pop(order), key=lambda s: (s.fingerprint, tuple(s.codes.tolist())))
            done.extend(current)
            if self.threads > 1 and len(current) > 1:
                with ThreadPoolExecutor(self.threads) as pool:
                    exts = list(pool.map(self.extensions, current))
            else:
                exts = [self.extensions(h) for h in current]
            for group_exts in exts:
                for codes in group_exts:
                    k = self._admit(codes)
                    if k is not None:
                        layers.setdefault(k.order, []).append(k)
        self.results = done
        self.complete = True
        return done


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fs):
            return g
    raise ValueError(p)


def join_closure_search(U: Universe, max_order: int | None = None) -> list[Subgroup]:
    """Independent enumeration: joins of class representatives with odd cyclic subgroups.

    Conjugacy is decided by listing every conjugate of each new class, so this path shares no code with ``OddSubgroupSearch``
    beyond the universe arithmetic.  Only meant for small universes.
    """
    odd = odd_part(U.order)
    cap = odd if max_order is None else max_order
    orders = U.element_orders(U.codes)
    odd_elems = U.codes[orders % 2 == 1]
    cyclic = {}
    for x in odd_elems:
        c = U.closure([int(x)])
        cyclic.setdefault(tuple(c.tolist()), int(x))
    cyc_gens = sorted(cyclic.values())

    def conjugates(codes: np.ndarray) -> set[tuple]:
        conj = U.mul(U.mul(U.inv_codes[:, None], codes[None, :]), U.codes[:, None])
        conj.sort(axis=1)
        return set(map(tuple, np.unique(conj, axis=0).tolist()))

    trivial = np.array([U.identity], dtype=np.int64)
    seen = [trivial]
    conj_sets = [conjugates(trivial)]
    known: set[tuple] = set(conj_sets[0])
    queue = [trivial]
    while queue:
        k = queue.pop(0)
        kg = minimal_generators(U, k)
        for x in cyc_gens:
            if _isin_sorted(np.array([x]), k)[0]:
                continue
            j = U.closure(list(kg) + [x], max_size=cap, odd_only=True)
            if j is None or odd % j.size:
                continue
            if tuple(j.tolist()) in known:
                continue
            # every conjugate of a recorded class is in `known`, so j is new
            cs = conjugates(j)
            conj_sets.append(cs)
            known |= cs
            seen.append(j)
            queue.append(j)
    out = []
    for v in seen:
        key = tuple(v.tolist())
        out.append(Subgroup(v, minimal_generators(U, v), conjugates=next(c for c in conj_sets if key in c)))
    return out
