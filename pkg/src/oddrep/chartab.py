"""Exact character tables of small permutation groups.

The method is the class-algebra one: class multiplication coefficients
give commuting matrices whose common eigenvectors over GF(q) are the
central characters.  Degrees follow from the first orthogonality relation,
and each value chi(g) is lifted to an exact cyclotomic integer from the
multiplicities of the eigenvalues of g, computed mod q.

Values are stored as integer coefficient vectors in the basis
1, z, ..., z^{phi(e)-1} of Z[z], z = exp(2 pi i / e), e = exponent(G),
reduced modulo the cyclotomic polynomial Phi_e.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .groupcore import ClassData, PermGroup, ResourceError, conjugacy_classes, format_perm, prime_factors
from .structure import poly_gcd, poly_mul, poly_powmod

DEFAULT_CAP = 5000


# ---------------------------------------------------------------------------
# cyclotomic integers

def _int_divmod_monic(a: list[int], m: list[int]) -> list[int]:
    """Remainder of the integer polynomial a modulo the monic m."""
    a = list(a)
    d = len(m) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] -= c * m[j]
    out = a[:d] + [0] * max(0, d - len(a))
    return out


def cyclotomic_polynomial(e: int) -> list[int]:
    """Phi_e as integer coefficients, low to high."""
    num = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            num = _int_exact_div(num, cyclotomic_polynomial(d))
    return num


def _int_exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, x in enumerate(b):
            a[i + j] -= c * x
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


class Cyclotomic:
    """Exact element of Z[exp(2 pi i / e)] in reduced coefficient form."""

    __slots__ = ("e", "coeffs")
    _phi_cache: dict[int, list[int]] = {}

    def __init__(self, e: int, coeffs):
        self.e = e
        phi = self.phi(e)
        self.coeffs = tuple(_int_divmod_monic(list(coeffs), phi))

    @classmethod
    def phi(cls, e: int) -> list[int]:
        got = cls._phi_cache.get(e)
        if got is None:
            got = cls._phi_cache[e] = cyclotomic_polynomial(e)
        return got

    @classmethod
    def from_exponents(cls, e: int, counts: dict[int, int]) -> "Cyclotomic":
        """sum of counts[j] * z^j."""
        vec = [0] * e
        for j, c in counts.items():
            vec[j % e] += c
        return cls(e, vec)

    @classmethod
    def integer(cls, e: int, n: int) -> "Cyclotomic":
        return cls(e, [n])

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Cyclotomic(self.e, [x + y for x, y in zip(a, b)])

    def __mul__(self, other: "Cyclotomic") -> "Cyclotomic":
        if isinstance(other, int):
            return Cyclotomic(self.e, [x * other for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Cyclotomic(self.e, out)

    def conjugate(self) -> "Cyclotomic":
        return Cyclotomic.from_exponents(self.e, {(-j) % self.e: c for j, c in enumerate(self.coeffs) if c})

    def __eq__(self, other):
        if isinstance(other, int):
            other = Cyclotomic.integer(self.e, other)
        return self.e == other.e and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.e, self.coeffs))

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError("not a rational integer")
        return self.coeffs[0] if self.coeffs else 0

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
                continue
            mono = "z" if j == 1 else f"z^{j}"
            terms.append(mono if c == 1 else "-" + mono if c == -1 else f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    __repr__ = __str__


# ---------------------------------------------------------------------------
# arithmetic mod q

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def choose_prime(exponent: int, bound: float) -> int:
    """Least prime q = 1 (mod exponent) with q > bound."""
    q = (int(bound) // exponent + 1) * exponent + 1
    while not _is_prime(q):
        q += exponent
    return q


def _primitive_root(q: int) -> int:
    fs = prime_factors(q - 1)
    g = 2
    while any(pow(g, (q - 1) // f, q) == 1 for f in fs):
        g += 1
    return g


def _rref_mod(m: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    a = m.copy() % q
    rows, cols = a.shape
    piv = []
    r = 0
    for c in range(cols):
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, q) % q
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % q
        piv.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], piv


def _left_kernel_mod(m: np.ndarray, q: int) -> np.ndarray:
    """Rows c with c @ m = 0 (mod q), in reduced echelon form."""
    t, piv = _rref_mod(m.T, q)
    n = m.shape[0]
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for r, c in enumerate(piv):
            out[k, c] = (-t[r, f]) % q
    if len(out):
        out, _ = _rref_mod(out, q)
    return out


def _charpoly_mod(m: np.ndarray, q: int) -> list[int]:
    """Characteristic polynomial (low to high) via Hessenberg reduction."""
    h = [[int(x) % q for x in row] for row in m]
    n = len(h)
    for c in range(n - 2):
        i = next((i for i in range(c + 1, n) if h[i][c]), None)
        if i is None:
            continue
        if i != c + 1:
            h[i], h[c + 1] = h[c + 1], h[i]
            for row in h:
                row[i], row[c + 1] = row[c + 1], row[i]
        inv = pow(h[c + 1][c], -1, q)
        for i in range(c + 2, n):
            u = h[i][c] * inv % q
            if not u:
                continue
            h[i] = [(x - u * y) % q for x, y in zip(h[i], h[c + 1])]
            for row in h:
                row[c + 1] = (row[c + 1] + u * row[i]) % q
    polys = [[1]]
    for k in range(n):
        cur = poly_mul([(-h[k][k]) % q, 1], polys[k], q) or [0]
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * h[i + 1][i] % q
            if not prod:
                break
            term = [x * h[i][k] % q * prod % q for x in polys[i]]
            cur = [(a - b) % q for a, b in zip(cur + [0] * (len(term) - len(cur)), term + [0] * (len(cur) - len(term)))]
        polys.append(cur)
    return polys[n]


def _split_roots(f: list[int], q: int) -> list[int]:
    """Distinct roots in GF(q) of f, assumed to split into linear factors."""
    f = _derivative_free(f, q)
    roots = []
    if len(f) > 1 and f[0] == 0:
        roots.append(0)
        f = f[1:]
    stack = [f]
    a = 1
    while stack:
        g = stack.pop()
        if len(g) <= 1:
            continue
        if len(g) == 2:
            roots.append((-g[0]) * pow(g[1], -1, q) % q)
            continue
        while True:
            t = poly_powmod([a, 1], (q - 1) // 2, g, q)
            a += 1
            t = t + [0] * (1 - len(t)) if t else [0]
            t[0] = (t[0] - 1) % q
            h = poly_gcd(g, t, q)
            if 1 < len(h) < len(g):
                stack.append(h)
                stack.append(_poly_quot_mod(g, h, q))
                break
    return sorted(roots)


def _derivative_free(f: list[int], q: int) -> list[int]:
    """The squarefree part of f (characteristic exceeds deg f)."""
    df = [(i * c) % q for i, c in enumerate(f)][1:]
    g = poly_gcd(f, df, q)
    return _poly_quot_mod(f, g, q)


def _poly_quot_mod(f: list[int], d: list[int], q: int) -> list[int]:
    f = list(f)
    out = [0] * (len(f) - len(d) + 1)
    inv = pow(d[-1], -1, q)
    for k in range(len(out) - 1, -1, -1):
        c = f[k + len(d) - 1] * inv % q
        out[k] = c
        for j, x in enumerate(d):
            f[k + j] = (f[k + j] - c * x) % q
    return out


# ---------------------------------------------------------------------------
# character tables

@dataclass
class CharacterTable:
    order: int
    exponent: int
    classes: ClassData
    degrees: list[int]
    values: list[list[Cyclotomic]]      # values[i][j] = chi_i(class j)
    element_orders: list[int]
    inverse_class: list[int]
    prime: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.degrees)

    def is_consistent(self) -> bool:
        """Degrees square-sum, divisibility, trivial first row, exact orthogonality."""
        if sum(d * d for d in self.degrees) != self.order:
            return False
        if any(self.order % d for d in self.degrees):
            return False
        if any(v != 1 for v in self.values[0]):
            return False
        return row_orthogonality(self) and column_orthogonality(self)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "exponent": self.exponent,
            "classes": [
                {"representative": format_perm(r), "size": s, "element_order": o}
                for r, s, o in zip(self.classes.representatives, self.classes.sizes, self.element_orders)
            ],
            "degrees": self.degrees,
            "values": [[str(v) for v in row] for row in self.values],
            "coefficients": [[list(v.coeffs) for v in row] for row in self.values],
        }

    def dump(self) -> str:
        """Text table: classes as columns, characters as rows."""
        e = self.exponent
        head = [f"{o}{_class_letter(j, self)}" for j, o in enumerate(self.element_orders)]
        reps = [format_perm(r) for r in self.classes.representatives]
        sizes = [str(s) for s in self.classes.sizes]
        rows = [[str(v) for v in row] for row in self.values]
        cols = [head] + [[reps[j], sizes[j]] + [r[j] for r in rows] for j in range(self.k)]
        widths = [max(len(head[j]), *(len(c) for c in cols[j + 1])) for j in range(self.k)]
        label_w = max(9, len(f"X.{self.k} (d={max(self.degrees)})"))

        def line(label, cells):
            return (label.ljust(label_w) + "  " + "  ".join(c.rjust(w) for c, w in zip(cells, widths))).rstrip()

        out = [f"order {self.order}, {self.k} classes, z = exp(2 pi i/{e})"]
        out.append(line("class", head))
        out.append(line("rep", reps))
        out.append(line("size", sizes))
        for i, row in enumerate(rows):
            out.append(line(f"X.{i + 1} (d={self.degrees[i]})", row))
        return "\n".join(out) + "\n"

    def dumps_json(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _class_letter(j: int, t: CharacterTable) -> str:
    # classes of equal element order are lettered a, b, c, ... in table order
    o = t.element_orders[j]
    rank = sum(1 for i in range(j) if t.element_orders[i] == o)
    return chr(ord("a") + rank) if rank < 26 else f"_{rank}"


def row_orthogonality(t: CharacterTable) -> bool:
    """sum_j |C_j| chi(g_j) conj(psi(g_j)) = |G| delta(chi, psi), exactly."""
    sizes = t.classes.sizes
    conj = [[v.conjugate() for v in row] for row in t.values]
    for a in range(t.k):
        for b in range(a, t.k):
            acc = Cyclotomic.integer(t.exponent, 0)
            for j in range(t.k):
                acc = acc + t.values[a][j] * conj[b][j] * sizes[j]
            if acc != (t.order if a == b else 0):
                return False
    return True


def column_orthogonality(t: CharacterTable) -> bool:
    """sum_chi chi(g_r) conj(chi(g_s)) = |C_G(g_r)| delta(r, s), exactly."""
    cents = t.classes.centralizer_orders
    for r in range(t.k):
        for s in range(r, t.k):
            acc = Cyclotomic.integer(t.exponent, 0)
            for i in range(t.k):
                acc = acc + t.values[i][r] * t.values[i][s].conjugate()
            if acc != (cents[r] if r == s else 0):
                return False
    return True


def class_coefficients(G: PermGroup, cd: ClassData) -> np.ndarray:
    """a[r, j, s] = #{(x, y) in C_r x C_j : x y = g_s}."""
    table = G.table
    k = len(cd)
    inv = table.inverse_map()
    labels = cd.labels
    a = np.zeros((k, k, k), dtype=np.int64)
    for s, z in enumerate(cd.rep_index):
        y = table.mul_right(inv, table.arr[z])
        flat = labels * k + labels[y]
        a[:, :, s] = np.bincount(flat, minlength=k * k).reshape(k, k)
    return a


def _central_characters(a: np.ndarray, q: int) -> list[np.ndarray]:
    """Common eigenvectors (first entry 1) of the class matrices over GF(q)."""
    k = a.shape[0]
    spaces = [np.eye(k, dtype=np.int64)]
    for r in range(1, k):
        if all(len(b) == 1 for b in spaces):
            break
        act = a[r].T % q                   # row vectors: w -> w @ act
        nxt = []
        for basis in spaces:
            if len(basis) == 1:
                nxt.append(basis)
                continue
            basis, piv = _rref_mod(basis, q)
            restricted = (basis @ act % q)[:, piv]
            found = 0
            for lam in _split_roots(_charpoly_mod(restricted, q), q):
                shifted = (restricted - lam * np.eye(len(basis), dtype=np.int64)) % q
                ker = _left_kernel_mod(shifted, q)
                if len(ker):
                    sub, _ = _rref_mod(ker @ basis % q, q)
                    nxt.append(sub)
                    found += len(sub)
            if found != len(basis):
                raise ArithmeticError("class matrix is not diagonalizable over GF(q)")
        spaces = nxt
    if any(len(b) != 1 for b in spaces):
        raise ArithmeticError("central characters not separated")
    out = []
    for b in spaces:
        w = b[0] % q
        out.append(w * pow(int(w[0]), -1, q) % q)
    return out


def character_table(G: PermGroup, cap: int = DEFAULT_CAP) -> CharacterTable:
    """The exact character table of G (|G| <= cap)."""
    order = G.order
    if order > cap:
        raise ResourceError(f"character table limited to |G| <= {cap}")
    cd = conjugacy_classes(G)
    table = G.table
    e = G.exponent()
    k = len(cd)
    orders = [int(table.element_orders[i]) for i in cd.rep_index]
    inv_cls = [int(cd.labels[i]) for i in table.inverse_map()[cd.rep_index]]
    if k == 1:
        return CharacterTable(order, e, cd, [1], [[Cyclotomic.integer(e, 1)]], orders, inv_cls, 0)
    bound = 2 * math.sqrt(order) * max(cd.sizes)
    q = choose_prime(e, bound)
    a = class_coefficients(G, cd)
    omegas = _central_characters(a, q)

    # power maps: class of g_s^l for l < o(g_s)
    power_cls = []
    for s, z in enumerate(cd.rep_index):
        rep = np.array(table.arr[z])
        cur = np.arange(table.degree)
        seq = []
        for _ in range(orders[s]):
            seq.append(int(cd.labels[table.index_rows(cur)[0]]))
            cur = rep[cur]
        power_cls.append(seq)

    zq = pow(_primitive_root(q), (q - 1) // e, q)
    size_inv = [pow(s, -1, q) for s in cd.sizes]
    degrees, rows = [], []
    for w in omegas:
        ssum = sum(int(w[s]) * int(w[inv_cls[s]]) % q * size_inv[s] for s in range(k)) % q
        d2 = order * pow(ssum, -1, q) % q
        d = math.isqrt(d2)
        if d * d != d2:
            raise ArithmeticError("degree is not an integer; prime too small")
        chi_mod = [d * int(w[s]) % q * size_inv[s] % q for s in range(k)]
        row = []
        for s in range(k):
            o = orders[s]
            step = e // o
            zo_inv = pow(zq, -step, q)
            o_inv = pow(o, -1, q)
            counts = {}
            for j in range(o):
                acc = 0
                base = pow(zo_inv, j, q)
                t = 1
                for l in range(o):
                    acc += chi_mod[power_cls[s][l]] * t
                    t = t * base % q
                m = acc % q * o_inv % q
                if m > d:
                    raise ArithmeticError("eigenvalue multiplicity out of range")
                if m:
                    counts[j * step] = m
            if sum(counts.values()) != d:
                raise ArithmeticError("eigenvalue multiplicities do not sum to the degree")
            row.append(Cyclotomic.from_exponents(e, counts))
        degrees.append(d)
        rows.append(row)

    def key(i):
        trivial = all(v == 1 for v in rows[i])
        return (degrees[i], not trivial, [v.coeffs for v in rows[i]])

    perm = sorted(range(k), key=key)
    return CharacterTable(order, e, cd, [degrees[i] for i in perm], [rows[i] for i in perm], orders, inv_cls, q)


def count_odd_degree(G: PermGroup, cap: int = DEFAULT_CAP) -> int:
    """Number of irreducible characters of odd degree."""
    return sum(d % 2 for d in character_table(G, cap).degrees)
