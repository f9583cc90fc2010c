"""Permutation groups: stabilizer chains, element tables and the usual subgroups.

Permutations act on the right: ``i^(p*q) = (i^p)^q``, i.e. ``p * q`` applies
``p`` first.  Conjugation is ``x^g = g^-1 x g``.

Everything that needs elements (classes, centralizers, normalizers, ...)
works on an explicit sorted element table, so it is only available for
groups below the enumeration cap.
"""

from __future__ import annotations

import math
import re
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

DEFAULT_ELEMENT_CAP = 10 ** 6


class ResourceError(RuntimeError):
    """A configured size cap was exceeded."""


class NotInGroupError(ValueError):
    pass


_settings = {"element_cap": DEFAULT_ELEMENT_CAP}


def set_element_cap(cap: int) -> None:
    if cap <= 0:
        raise ValueError("cap must be positive")
    _settings["element_cap"] = int(cap)


def element_cap() -> int:
    return _settings["element_cap"]


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


# ---------------------------------------------------------------------------
# permutations

class Perm:
    """A permutation of ``{0..d-1}`` given by its image list."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = None

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Perm":
        p = object.__new__(cls)
        p.images = images
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int = 0) -> "Perm":
        return parse_perm(text, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def act(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        if len(other.images) != len(self.images):
            raise ValueError("degree mismatch")
        oi = other.images
        return Perm._raw(tuple(oi[i] for i in self.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm._raw(tuple(inv))

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, g: "Perm") -> "Perm":
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self.images)):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.images else 1

    def moved_point(self) -> int | None:
        return next((i for i, j in enumerate(self.images) if i != j), None)

    def extend(self, degree: int) -> "Perm":
        return Perm._raw(self.images + tuple(range(len(self.images), degree)))

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __str__(self):
        return format_perm(self)

    def __repr__(self):
        return f"Perm({format_perm(self)!r})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, degree: int = 0) -> Perm:
    """Parse disjoint-cycle notation on 0-based points, e.g. ``"(0 1 2)(3 4)"``."""
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty permutation text")
    cycles = []
    pos = 0
    for m in _CYCLE_RE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise ValueError(f"could not parse permutation {text!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            cycles.append([int(x) for x in body])
        except ValueError as exc:
            raise ValueError(f"could not parse permutation {text!r}") from exc
        pos = m.end()
    if stripped[pos:].strip() or not cycles:
        raise ValueError(f"could not parse permutation {text!r}")
    pts = [x for c in cycles for x in c]
    if len(pts) != len(set(pts)) or any(x < 0 for x in pts):
        raise ValueError(f"cycles are not disjoint in {text!r}")
    degree = max(degree, max(pts, default=-1) + 1)
    images = list(range(degree))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            images[a] = b
    return Perm(images)


def parse_perm_list(text: str, degree: int = 0) -> list[Perm]:
    """Parse comma- or whitespace-separated permutations in cycle notation."""
    chunks = re.findall(r"(?:\([^()]*\)\s*)+", text)
    if not chunks:
        raise ValueError(f"no permutations in {text!r}")
    perms = [parse_perm(c) for c in chunks]
    d = max([degree] + [p.degree for p in perms])
    return [p.extend(d) for p in perms]


def format_perm(p: Perm) -> str:
    out = ["(" + " ".join(map(str, c)) + ")" for c in p.cycles() if len(c) > 1]
    return "".join(out) if out else "()"


# ---------------------------------------------------------------------------
# stabilizer chains (generic over any element type with *, inverse(), act())

class StabChain:
    """Deterministic Schreier-Sims for groups acting on integer points.

    ``moved_point(g)`` must return a point moved by a non-identity ``g``.
    """

    def __init__(self, gens: Sequence, identity, moved_point: Callable):
        self.identity = identity
        self._moved = moved_point
        self.base: list[int] = []
        self.strong: list = []
        self.level_gens: list[list] = []
        self.transversals: list[dict] = []
        gens = [g for g in gens if g != identity]
        for g in gens:
            self._add_strong(g)
        self._complete()

    def _fixes_base_prefix(self, g, k: int) -> bool:
        return all(g.act(b) == b for b in self.base[:k])

    def _add_strong(self, g) -> None:
        if g in self.strong:
            return
        self.strong.append(g)
        if self._fixes_base_prefix(g, len(self.base)):
            self.base.append(self._moved(g))
            self.level_gens.append([])
            self.transversals.append({})
        for i in range(len(self.base)):
            if self._fixes_base_prefix(g, i) and g not in self.level_gens[i]:
                self.level_gens[i].append(g)

    def _orbit(self, i: int) -> None:
        b = self.base[i]
        trans = {b: self.identity}
        queue = [b]
        gens = self.level_gens[i]
        for pt in queue:
            u = trans[pt]
            for s in gens:
                q = s.act(pt)
                if q not in trans:
                    trans[q] = u * s
                    queue.append(q)
        self.transversals[i] = trans

    def strip(self, g, start: int = 0):
        for i in range(start, len(self.base)):
            beta = g.act(self.base[i])
            u = self.transversals[i].get(beta)
            if u is None:
                return g, i
            g = g * u.inverse()
        return g, len(self.base)

    def _complete(self) -> None:
        for i in range(len(self.base)):
            self._orbit(i)
        i = len(self.base) - 1
        while i >= 0:
            h, j = self._first_failure(i)
            if h is None:
                i -= 1
                continue
            self.strong.append(h)
            if j == len(self.base):
                self.base.append(self._moved(h))
                self.level_gens.append([])
                self.transversals.append({})
            for k in range(i + 1, j + 1):
                self.level_gens[k].append(h)
                self._orbit(k)
            i = j

    def _first_failure(self, i: int):
        trans = self.transversals[i]
        b = self.base[i]
        for u in list(trans.values()):
            for s in self.level_gens[i]:
                us = u * s
                sg = us * trans[us.act(b)].inverse()
                if sg == self.identity:
                    continue
                h, j = self.strip(sg, i + 1)
                if h != self.identity:
                    return h, j
        return None, None

    @property
    def order(self) -> int:
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    def contains(self, g) -> bool:
        h, _ = self.strip(g)
        return h == self.identity


# ---------------------------------------------------------------------------
# element tables

def _row_keys(arr: np.ndarray) -> np.ndarray:
    """Byte keys whose sort order is the lexicographic order of the rows."""
    arr = np.ascontiguousarray(arr.astype(">u2" if arr.shape[1] and arr.max(initial=0) < 65535 else ">u4"))
    width = arr.dtype.itemsize * arr.shape[1]
    return arr.view(f"S{width}").ravel()


class ElementTable:
    """Sorted element list of a permutation group with index lookups."""

    def __init__(self, arr: np.ndarray):
        keys = _row_keys(arr)
        order = np.argsort(keys, kind="stable")
        self.arr = np.ascontiguousarray(arr[order])
        self.keys = keys[order]
        self.size, self.degree = self.arr.shape
        self._conj_cache: dict[tuple[int, ...], np.ndarray] = {}

    def index_rows(self, rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(rows)
        k = _row_keys(rows.astype(self.arr.dtype))
        idx = np.searchsorted(self.keys, k)
        idx = np.minimum(idx, self.size - 1)
        if not np.all(self.keys[idx] == k):
            raise NotInGroupError("element not in group")
        return idx

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(rows)
        k = _row_keys(rows.astype(self.arr.dtype))
        idx = np.minimum(np.searchsorted(self.keys, k), self.size - 1)
        return self.keys[idx] == k

    def index(self, g: Perm) -> int:
        return int(self.index_rows(np.array([g.images]))[0])

    def perm(self, i: int) -> Perm:
        return Perm._raw(tuple(int(x) for x in self.arr[i]))

    def mul_right(self, idx: np.ndarray, g: np.ndarray) -> np.ndarray:
        """Indices of ``x * g`` for x in ``idx``."""
        return self.index_rows(g[self.arr[idx]])

    def mul_left(self, g: np.ndarray, idx: np.ndarray) -> np.ndarray:
        """Indices of ``g * x`` for x in ``idx``."""
        return self.index_rows(self.arr[idx][:, g])

    def conj_map(self, g: np.ndarray) -> np.ndarray:
        """Index permutation ``i -> index(x_i^g)``."""
        key = tuple(int(x) for x in g)
        got = self._conj_cache.get(key)
        if got is None:
            ginv = np.argsort(g)
            got = self.index_rows(g[self.arr[:, ginv]])
            self._conj_cache[key] = got
        return got

    def inverse_map(self) -> np.ndarray:
        inv = np.empty_like(self.arr)
        rows = np.arange(self.size)[:, None]
        inv[rows, self.arr] = np.arange(self.degree)[None, :]
        return self.index_rows(inv)

    def power_rows(self, k: int) -> np.ndarray:
        """Row array of ``x^k`` for every element."""
        ident = np.broadcast_to(np.arange(self.degree), self.arr.shape)
        result = np.array(ident)
        base = self.arr.copy()
        while k:
            if k & 1:
                result = np.take_along_axis(base, result, axis=1)
            base = np.take_along_axis(base, base, axis=1)
            k >>= 1
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.ones(self.size, dtype=np.int64)
        ident = np.arange(self.degree)
        cur = self.arr.copy()
        done = np.all(cur == ident, axis=1)
        k = 1
        while not done.all():
            k += 1
            cur = np.take_along_axis(self.arr, cur, axis=1)
            now = np.all(cur == ident, axis=1) & ~done
            orders[now] = k
            done |= now
        return orders


# ---------------------------------------------------------------------------
# permutation groups

class PermGroup:
    """A permutation group with a stabilizer chain; immutable."""

    def __init__(self, gens: Sequence[Perm], degree: int | None = None):
        gens = list(gens)
        if degree is None:
            if not gens:
                raise ValueError("degree required for the trivial group without generators")
            degree = gens[0].degree
        for g in gens:
            if not isinstance(g, Perm):
                raise TypeError("generators must be Perm")
            if g.degree != degree:
                raise ValueError("generators act on different domains")
        self.degree = degree
        self.generators = tuple(gens)
        self.identity = Perm.identity(degree)
        self.chain = StabChain(self.generators, self.identity, lambda g: g.moved_point())
        self.order = self.chain.order

    def __repr__(self):
        return f"PermGroup(order={self.order}, degree={self.degree})"

    def __len__(self):
        return self.order

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        return self.chain.contains(g)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return self.order == 1

    @cached_property
    def table(self) -> ElementTable:
        cap = element_cap()
        if self.order > cap:
            raise ResourceError(f"group order {self.order} exceeds element cap {cap}")
        d = self.degree
        dtype = np.int16 if d < 2 ** 15 else np.int32
        elems = np.arange(d, dtype=dtype)[None, :]
        for trans in reversed(self.chain.transversals):
            reps = [np.array(u.images, dtype=dtype) for u in trans.values()]
            elems = np.concatenate([t[elems] for t in reps])
        return ElementTable(elems)

    def elements(self) -> list[Perm]:
        t = self.table
        return [t.perm(i) for i in range(t.size)]

    def gen_arrays(self) -> list[np.ndarray]:
        return [np.array(g.images) for g in self.generators]

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for a in gs for b in gs)

    def orbits(self) -> list[list[int]]:
        return orbits_of(self.generators, self.degree)

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def exponent(self) -> int:
        return math.lcm(*map(int, np.unique(self.table.element_orders)))


def build_group(gens: Sequence[Perm], degree: int | None = None) -> PermGroup:
    return PermGroup(gens, degree)


def orbits_of(gens: Sequence[Perm], degree: int) -> list[list[int]]:
    seen = [False] * degree
    out = []
    for s in range(degree):
        if seen[s]:
            continue
        orb = [s]
        seen[s] = True
        for x in orb:
            for g in gens:
                y = g.images[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        out.append(sorted(orb))
    return out


def _components(n: int, edges_from: list[np.ndarray], edges_to: list[np.ndarray]) -> np.ndarray:
    """Connected-component labels, relabelled by smallest member index."""
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if edges_from:
        src = np.concatenate(edges_from)
        dst = np.concatenate(edges_to)
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n)).tocsr()
    _, labels = connected_components(graph, directed=True, connection="weak")
    first = np.full(labels.max() + 1, n, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(n))
    return first[labels]


# ---------------------------------------------------------------------------
# subgroups from element masks

def _closure_mask(table: ElementTable, gen_idx: Sequence[int]) -> np.ndarray:
    mask = np.zeros(table.size, dtype=bool)
    ident = table.index_rows(np.arange(table.degree)[None, :])[0]
    mask[ident] = True
    frontier = np.array([ident])
    gens = [table.arr[i] for i in gen_idx]
    while frontier.size:
        new = []
        for g in gens:
            img = table.mul_right(frontier, g)
            img = img[~mask[img]]
            img = np.unique(img)
            mask[img] = True
            new.append(img)
        frontier = np.unique(np.concatenate(new)) if new else np.zeros(0, dtype=np.int64)
    return mask


def subgroup_from_mask(G: PermGroup, mask: np.ndarray) -> PermGroup:
    """The subgroup whose elements are ``G.table`` rows selected by ``mask``.

    Generators are chosen greedily in lexicographic order, so the result is
    deterministic.
    """
    table = G.table
    gens: list[int] = []
    have = _closure_mask(table, gens)
    while True:
        rest = np.flatnonzero(mask & ~have)
        if rest.size == 0:
            break
        gens.append(int(rest[0]))
        have = _closure_mask(table, gens)
    if np.any(have & ~mask):
        raise ValueError("mask is not closed under multiplication")
    return PermGroup([table.perm(i) for i in gens], G.degree)


def subgroup_mask(G: PermGroup, H: PermGroup) -> np.ndarray:
    """Boolean mask over ``G.table`` selecting the elements of ``H``."""
    table = G.table
    if H.degree != G.degree:
        raise ValueError("degree mismatch")
    idx = table.index_rows(H.table.arr)
    mask = np.zeros(table.size, dtype=bool)
    mask[idx] = True
    return mask


def is_subgroup(H: PermGroup, G: PermGroup) -> bool:
    return H.degree == G.degree and all(G.contains(h) for h in H.generators)


def generate(G: PermGroup, elems: Iterable[Perm]) -> PermGroup:
    gens = list(elems)
    return PermGroup(gens, G.degree)


# ---------------------------------------------------------------------------
# conjugacy classes

class ClassData:
    """Conjugacy classes, ordered by their lexicographically least element."""

    def __init__(self, group_order: int, representatives: list[Perm], sizes: list[int], labels: np.ndarray, rep_index: list[int]):
        self.group_order = group_order
        self.representatives = representatives
        self.sizes = sizes
        self.centralizer_orders = [group_order // s for s in sizes]
        self.labels = labels          # class number of every table element
        self.rep_index = rep_index    # table index of every representative

    def __len__(self):
        return len(self.sizes)

    def __repr__(self):
        return f"ClassData(k={len(self)}, sizes={self.sizes})"


def conjugacy_classes(G: PermGroup) -> ClassData:
    got = G.__dict__.get("_classes")
    if got is not None:
        return got
    table = G.table
    n = table.size
    src, dst = [], []
    ar = np.arange(n)
    for g in G.gen_arrays():
        src.append(ar)
        dst.append(table.conj_map(g))
    comp = _components(n, src, dst)
    reps = np.unique(comp)
    relabel = np.full(n, -1, dtype=np.int64)
    relabel[reps] = np.arange(len(reps))
    labels = relabel[comp]
    sizes = np.bincount(labels, minlength=len(reps))
    data = ClassData(G.order, [table.perm(int(r)) for r in reps], [int(s) for s in sizes], labels, [int(r) for r in reps])
    G.__dict__["_classes"] = data
    return data


def class_number(G: PermGroup) -> int:
    return len(conjugacy_classes(G))


# ---------------------------------------------------------------------------
# centralizers, normalizers, ...

def _require_member(G: PermGroup, g: Perm) -> None:
    if not G.contains(g):
        raise NotInGroupError(f"{g} is not in the group")


def centralizer_mask(G: PermGroup, elems: Sequence[Perm]) -> np.ndarray:
    arr = G.table.arr
    mask = np.ones(len(arr), dtype=bool)
    for g in elems:
        ga = np.array(g.images)
        mask &= np.all(ga[arr] == arr[:, ga], axis=1)
    return mask


def centralizer(G: PermGroup, g: Perm | PermGroup) -> PermGroup:
    """``C_G(g)`` for an element, or ``C_G(H)`` for a subgroup."""
    elems = g.generators if isinstance(g, PermGroup) else [g]
    if not isinstance(g, PermGroup):
        _require_member(G, g)
    return subgroup_from_mask(G, centralizer_mask(G, elems))


def center(G: PermGroup) -> PermGroup:
    return centralizer(G, G)


def normalizer_mask(G: PermGroup, H: PermGroup) -> np.ndarray:
    table = G.table
    hmask = subgroup_mask(G, H)
    arr = table.arr
    inv = np.empty_like(arr)
    inv[np.arange(table.size)[:, None], arr] = np.arange(table.degree)[None, :]
    mask = np.ones(table.size, dtype=bool)
    for h in H.generators:
        ha = np.array(h.images)
        # x^-1 h x as rows: i -> x[h[xinv[i]]]
        conj = np.take_along_axis(arr, ha[inv], axis=1)
        ok = table.contains_rows(conj)
        idx = np.flatnonzero(ok)
        ok[idx] = hmask[table.index_rows(conj[idx])]
        mask &= ok
    return mask


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    if not is_subgroup(H, G):
        raise NotInGroupError("H is not a subgroup of G")
    return subgroup_from_mask(G, normalizer_mask(G, H))


def is_normal(G: PermGroup, H: PermGroup) -> bool:
    return all(H.contains(h.conjugate(g)) for h in H.generators for g in G.generators)


def normal_closure(G: PermGroup, elems: Sequence[Perm]) -> PermGroup:
    gens = [e for e in elems if not e.is_identity()]
    N = PermGroup(gens, G.degree)
    changed = True
    while changed:
        changed = False
        for h in list(N.generators):
            for g in G.generators:
                c = h.conjugate(g)
                if not N.contains(c):
                    N = PermGroup(list(N.generators) + [c], G.degree)
                    changed = True
    return N


def commutator(a: Perm, b: Perm) -> Perm:
    return a.inverse() * b.inverse() * a * b


def derived_subgroup(G: PermGroup) -> PermGroup:
    gs = G.generators
    comms = [commutator(a, b) for i, a in enumerate(gs) for b in gs[i + 1:]]
    return normal_closure(G, comms)


def is_solvable(G: PermGroup) -> bool:
    H = G
    while H.order > 1:
        D = derived_subgroup(H)
        if D.order == H.order:
            return False
        H = D
    return True


def sylow_subgroup(G: PermGroup, p: int) -> PermGroup:
    """A Sylow p-subgroup, built up one p-element at a time."""
    target = p_part(G.order, p)
    table = G.table
    orders = table.element_orders
    pmask = orders == 1
    q = orders.copy()
    while True:
        nxt = q % p == 0
        if not nxt.any():
            break
        q[nxt] //= p
    pmask = q == 1
    P = PermGroup([], G.degree)
    while P.order < target:
        inP = subgroup_mask(G, P)
        cand = pmask & ~inP
        if P.order > 1:
            cand &= normalizer_mask(G, P)
        i = int(np.flatnonzero(cand)[0])
        P = PermGroup(list(P.generators) + [table.perm(i)], G.degree)
    return P


def sylow2(G: PermGroup) -> PermGroup:
    return sylow_subgroup(G, 2)


def core(G: PermGroup, H: PermGroup) -> PermGroup:
    """Largest normal subgroup of G contained in H."""
    table = G.table
    mask = subgroup_mask(G, H)
    maps = [table.conj_map(g) for g in G.gen_arrays()]
    while True:
        new = mask.copy()
        for m in maps:
            # element i survives if its conjugate lies in the current set
            new &= mask[m]
        if np.array_equal(new, mask):
            break
        mask = new
    return subgroup_from_mask(G, mask)


def p_core(G: PermGroup, p: int) -> PermGroup:
    if G.order % p:
        return PermGroup([], G.degree)
    return core(G, sylow_subgroup(G, p))


def fitting_subgroup(G: PermGroup) -> PermGroup:
    gens = []
    for p in prime_factors(G.order):
        gens.extend(p_core(G, p).generators)
    return PermGroup(gens, G.degree)


def is_nilpotent(G: PermGroup) -> bool:
    return fitting_subgroup(G).order == G.order


def intersection(G: PermGroup, A: PermGroup, B: PermGroup) -> PermGroup:
    return subgroup_from_mask(G, subgroup_mask(G, A) & subgroup_mask(G, B))


def quotient_group(G: PermGroup, N: PermGroup) -> PermGroup:
    """``G/N`` acting on the right cosets ``N x`` by right multiplication."""
    if not is_subgroup(N, G):
        raise NotInGroupError("N is not a subgroup of G")
    if not is_normal(G, N):
        raise ValueError("N is not normal in G")
    table = G.table
    n = table.size
    ar = np.arange(n)
    src, dst = [], []
    for h in N.gen_arrays():
        src.append(ar)
        dst.append(table.mul_left(h, ar))
    comp = _components(n, src, dst)
    reps = np.unique(comp)
    relabel = np.full(n, -1, dtype=np.int64)
    relabel[reps] = np.arange(len(reps))
    cos = relabel[comp]
    gens = []
    for g in G.gen_arrays():
        img = cos[table.mul_right(reps, g)]
        gens.append(Perm(img.tolist()))
    Q = PermGroup(gens, len(reps))
    if Q.order * N.order != G.order:
        raise AssertionError("coset action is not faithful on G/N")
    return Q


def element_order_counts(G: PermGroup) -> dict[int, int]:
    vals, counts = np.unique(G.table.element_orders, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def is_primitive(G: PermGroup) -> bool:
    """Transitive and no nontrivial block system."""
    if not G.is_transitive():
        return False
    d = G.degree
    if d <= 2:
        return True
    for b in range(1, d):
        # minimal block containing {0, b}
        parent = list(range(d))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx == ry:
                return False
            parent[max(rx, ry)] = min(rx, ry)
            return True

        union(0, b)
        queue = [(0, b)]
        while queue:
            x, y = queue.pop()
            for g in G.generators:
                gx, gy = g.images[x], g.images[y]
                if union(gx, gy):
                    queue.append((gx, gy))
                elif find(gx) == find(gy):
                    pass
            # pairs already merged propagate through representatives
        changed = True
        while changed:
            changed = False
            for x in range(d):
                rx = find(x)
                for g in G.generators:
                    if union(g.images[x], g.images[rx]):
                        changed = True
        if len({find(x) for x in range(d)}) > 1:
            return False
    return True


def point_stabilizer(G: PermGroup, point: int) -> PermGroup:
    arr = G.table.arr
    return subgroup_from_mask(G, arr[:, point] == point)


def set_stabilizer_order(G: PermGroup, subset: Iterable[int]) -> int:
    s = np.zeros(G.degree, dtype=bool)
    s[list(subset)] = True
    arr = G.table.arr
    # g stabilizes S iff g maps every point of S into S (S is finite)
    members = np.flatnonzero(s)
    return int(np.all(s[arr[:, members]], axis=1).sum())


# ---------------------------------------------------------------------------
# named small groups (used by tests and the corpus)

def symmetric_group(m: int) -> PermGroup:
    if m <= 1:
        return PermGroup([], max(m, 1))
    if m == 2:
        return PermGroup([parse_perm("(0 1)", 2)])
    return PermGroup([parse_perm("(0 1)", m), parse_perm("(" + " ".join(map(str, range(m))) + ")", m)])


def alternating_group(m: int) -> PermGroup:
    if m <= 2:
        return PermGroup([], max(m, 1))
    gens = [parse_perm(f"(0 1 {i})", m) for i in range(2, m)]
    return PermGroup(gens)


def cyclic_group(m: int) -> PermGroup:
    if m == 1:
        return PermGroup([], 1)
    return PermGroup([parse_perm("(" + " ".join(map(str, range(m))) + ")", m)])
