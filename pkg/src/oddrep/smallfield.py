"""Linear algebra over small prime fields GF(p).

Vectors are indexed by integers (little-endian base-p digits), so for p = 2
a vector index is exactly its bitmask.  Matrices act on row vectors from the
right: ``v -> v * A``.  For p = 2 rows are stored as packed integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)


class NotInvertibleError(ValueError):
    """Raised when inverting a singular matrix."""


def _check_prime(p: int) -> None:
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"unsupported modulus {p}")


# ---------------------------------------------------------------------------
# vectors

@dataclass(frozen=True)
class FieldVec:
    p: int
    entries: tuple[int, ...]

    def __post_init__(self):
        _check_prime(self.p)
        if any(not 0 <= e < self.p for e in self.entries):
            raise ValueError("vector entry out of range")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def index(self) -> int:
        return vec_index(self.entries, self.p)

    @classmethod
    def from_index(cls, index: int, n: int, p: int) -> "FieldVec":
        return cls(p, vec_entries(index, n, p))

    def __str__(self):
        return "".join(str(e) for e in self.entries)


def vec_index(entries: Sequence[int], p: int) -> int:
    if p == 2:
        return sum(1 << i for i, e in enumerate(entries) if e)
    out = 0
    for e in reversed(entries):
        out = out * p + e
    return out


def vec_entries(index: int, n: int, p: int) -> tuple[int, ...]:
    if p == 2:
        return tuple((index >> i) & 1 for i in range(n))
    out = []
    for _ in range(n):
        index, r = divmod(index, p)
        out.append(r)
    return tuple(out)


# ---------------------------------------------------------------------------
# matrices

class FieldMatrix:
    """Square matrix over GF(p); immutable and hashable."""

    __slots__ = ("p", "n", "_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]] | Iterable[int], p: int = 2, n: int | None = None, packed: bool = False):
        _check_prime(p)
        self.p = p
        if packed:
            if p != 2:
                raise ValueError("packed rows only for p = 2")
            rows = tuple(int(r) for r in rows)
            if n is None:
                n = len(rows)
            if len(rows) != n or any(r >> n for r in rows):
                raise ValueError("packed row out of range")
            self.n = n
            self._rows = rows
        else:
            rows = [tuple(int(x) % p for x in r) for r in rows]
            self.n = len(rows)
            if any(len(r) != self.n for r in rows):
                raise ValueError("matrix must be square")
            if p == 2:
                self._rows = tuple(vec_index(r, 2) for r in rows)
            else:
                self._rows = tuple(rows)
        self._hash = None

    # --- construction helpers
    @classmethod
    def identity(cls, n: int, p: int = 2) -> "FieldMatrix":
        if p == 2:
            return cls([1 << i for i in range(n)], 2, n, packed=True)
        return cls([[int(i == j) for j in range(n)] for i in range(n)], p)

    @classmethod
    def from_text(cls, text: str, p: int = 2) -> "FieldMatrix":
        """Parse ``"110/011/001"``; leftmost digit is coordinate 0."""
        rows = [r.strip() for r in text.strip().split("/")]
        try:
            return cls([[int(c) for c in r] for r in rows], p)
        except ValueError as exc:
            raise ValueError(f"bad matrix text {text!r}") from exc

    @classmethod
    def from_row_indices(cls, rows: Sequence[int], n: int, p: int) -> "FieldMatrix":
        if p == 2:
            return cls(rows, 2, n, packed=True)
        return cls([vec_entries(r, n, p) for r in rows], p)

    def to_text(self) -> str:
        return "/".join("".join(str(x) for x in r) for r in self.rows)

    # --- views
    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        if self.p == 2:
            return tuple(vec_entries(r, self.n, 2) for r in self._rows)
        return self._rows

    @property
    def row_indices(self) -> tuple[int, ...]:
        if self.p == 2:
            return self._rows
        return tuple(vec_index(r, self.p) for r in self._rows)

    def __getitem__(self, ij):
        i, j = ij
        if self.p == 2:
            return (self._rows[i] >> j) & 1
        return self._rows[i][j]

    def __eq__(self, other):
        return isinstance(other, FieldMatrix) and self.p == other.p and self.n == other.n and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.n, self._rows))
        return self._hash

    def __lt__(self, other):
        return self.row_indices < other.row_indices

    def __repr__(self):
        return f"FieldMatrix({self.to_text()!r}, p={self.p})"

    # --- arithmetic
    def __mul__(self, other: "FieldMatrix") -> "FieldMatrix":
        return mat_mul(self, other)

    def __pow__(self, k: int) -> "FieldMatrix":
        if k < 0:
            return mat_inv(self) ** (-k)
        result = FieldMatrix.identity(self.n, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "FieldMatrix":
        return mat_inv(self)

    def is_identity(self) -> bool:
        return self == FieldMatrix.identity(self.n, self.p)

    def act(self, v: int) -> int:
        """Image of the vector with index ``v`` under ``v -> v * self``."""
        return vec_times_matrix(v, self)

    def transpose(self) -> "FieldMatrix":
        r = self.rows
        return FieldMatrix([[r[j][i] for j in range(self.n)] for i in range(self.n)], self.p)

    def order(self) -> int:
        k, x = 1, self
        ident = FieldMatrix.identity(self.n, self.p)
        while x != ident:
            x = x * self
            k += 1
        return k

    def determinant(self) -> int:
        return _det(self)


def _check_compatible(a: FieldMatrix, b: FieldMatrix) -> None:
    if a.p != b.p:
        raise ValueError(f"modulus mismatch: {a.p} vs {b.p}")
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def vec_times_matrix(v: int, a: FieldMatrix) -> int:
    if a.p == 2:
        out = 0
        rows = a._rows
        i = 0
        while v:
            if v & 1:
                out ^= rows[i]
            v >>= 1
            i += 1
        return out
    p, n = a.p, a.n
    coords = vec_entries(v, n, p)
    acc = [0] * n
    for c, row in zip(coords, a._rows):
        if c:
            for j in range(n):
                acc[j] += c * row[j]
    return vec_index([x % p for x in acc], p)


def mat_mul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    _check_compatible(a, b)
    if a.p == 2:
        return FieldMatrix([vec_times_matrix(r, b) for r in a._rows], 2, a.n, packed=True)
    p, n = a.p, a.n
    bt = list(zip(*b._rows))
    return FieldMatrix([[sum(x * y for x, y in zip(r, col)) % p for col in bt] for r in a._rows], p)


def _det(a: FieldMatrix) -> int:
    p, n = a.p, a.n
    m = [list(r) for r in a.rows]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv % p
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
    return det % p


def mat_inv(a: FieldMatrix) -> FieldMatrix:
    p, n = a.p, a.n
    if p == 2:
        rows = list(a._rows)
        inv = [1 << i for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if (rows[r] >> c) & 1), None)
            if piv is None:
                raise NotInvertibleError("matrix is not invertible")
            rows[c], rows[piv] = rows[piv], rows[c]
            inv[c], inv[piv] = inv[piv], inv[c]
            for r in range(n):
                if r != c and (rows[r] >> c) & 1:
                    rows[r] ^= rows[c]
                    inv[r] ^= inv[c]
        return FieldMatrix(inv, 2, n, packed=True)
    m = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a.rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            raise NotInvertibleError("matrix is not invertible")
        m[c], m[piv] = m[piv], m[c]
        s = pow(m[c][c], -1, p)
        m[c] = [x * s % p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
    return FieldMatrix([row[n:] for row in m], p)


def companion(coeffs: Sequence[int], p: int = 2) -> FieldMatrix:
    """Companion matrix of the monic polynomial ``x^d + c_{d-1} x^{d-1} + ... + c_0``.

    ``coeffs`` lists ``c_0 .. c_{d-1}``.  Acting on row vectors, e_i -> e_{i+1}
    and e_{d-1} -> -(c_0, ..., c_{d-1}).
    """
    d = len(coeffs)
    rows = []
    for i in range(d - 1):
        rows.append([int(j == i + 1) for j in range(d)])
    rows.append([(-c) % p for c in coeffs])
    return FieldMatrix(rows, p)


def block_diag(*blocks: FieldMatrix) -> FieldMatrix:
    p = blocks[0].p
    n = sum(b.n for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b.rows:
            rows.append([0] * off + list(r) + [0] * (n - off - b.n))
        off += b.n
    return FieldMatrix(rows, p)


# ---------------------------------------------------------------------------
# subspaces (canonical reduced row echelon bases, stored as vector indices)

def rref(vectors: Iterable[int], n: int, p: int) -> tuple[int, ...]:
    """Reduced row echelon basis of the span, pivots on the lowest coordinate.

    The result is canonical: equal spans give equal tuples.
    """
    if p == 2:
        basis: list[int] = []
        for v in vectors:
            for b in basis:
                low = b & -b
                if v & low:
                    v ^= b
            if v:
                low = v & -v
                basis = [b ^ v if b & low else b for b in basis]
                basis.append(v)
        basis.sort(key=lambda b: b & -b)
        return tuple(basis)
    rows: list[list[int]] = []
    pivots: list[int] = []
    for v in vectors:
        e = list(vec_entries(v, n, p))
        for r, c in zip(rows, pivots):
            if e[c]:
                f = e[c]
                e = [(x - f * y) % p for x, y in zip(e, r)]
        c = next((i for i, x in enumerate(e) if x), None)
        if c is None:
            continue
        s = pow(e[c], -1, p)
        e = [x * s % p for x in e]
        for k, (r, pc) in enumerate(zip(rows, pivots)):
            if r[c]:
                f = r[c]
                rows[k] = [(x - f * y) % p for x, y in zip(r, e)]
        rows.append(e)
        pivots.append(c)
    order = sorted(range(len(rows)), key=lambda k: pivots[k])
    return tuple(vec_index(rows[k], p) for k in order)


def rank(vectors: Iterable[int], n: int, p: int) -> int:
    return len(rref(vectors, n, p))


def in_span(v: int, basis: Sequence[int], n: int, p: int) -> bool:
    return len(rref(list(basis) + [v], n, p)) == len(rref(basis, n, p))


def span_elements(basis: Sequence[int], n: int, p: int) -> list[int]:
    """All vectors of the span, as indices (sorted)."""
    out = {0}
    for b in basis:
        be = vec_entries(b, n, p)
        new = set()
        for v in out:
            ve = vec_entries(v, n, p)
            for c in range(1, p):
                new.add(vec_index([(x + c * y) % p for x, y in zip(ve, be)], p))
        out |= new
    return sorted(out)


def left_kernel(m: FieldMatrix) -> tuple[int, ...]:
    """Basis (rref) of ``{v : v * m = 0}``."""
    return _kernel_of_columns(m.transpose())


def _kernel_of_columns(m: FieldMatrix) -> tuple[int, ...]:
    # right kernel {x : m x = 0}, x as column
    p, n = m.p, m.n
    rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = pow(rows[r][c], -1, p)
        rows[r] = [x * s % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        x = [0] * n
        x[fc] = 1
        for i, pc in enumerate(pivots):
            x[pc] = (-rows[i][fc]) % p
        basis.append(vec_index(x, p))
    return rref(basis, n, p)


def mat_sub_identity(g: FieldMatrix) -> FieldMatrix:
    p = g.p
    return FieldMatrix([[(x - int(i == j)) % p for j, x in enumerate(r)] for i, r in enumerate(g.rows)], p)


def fixed_space(g: FieldMatrix) -> tuple[int, ...]:
    """Basis of ``C_V(g) = {v : v g = v}``; its length is the dimension."""
    return left_kernel(mat_sub_identity(g))


def image_of_subspace(basis: Sequence[int], g: FieldMatrix) -> tuple[int, ...]:
    return rref((g.act(b) for b in basis), g.n, g.p)


def is_invariant(basis: Sequence[int], gens: Sequence[FieldMatrix]) -> bool:
    if not gens:
        return True
    n, p = gens[0].n, gens[0].p
    canon = rref(basis, n, p)
    return all(rref(list(canon) + [g.act(b) for b in canon], n, p) == canon for g in gens)


def spin(v: int, gens: Sequence[FieldMatrix], n: int, p: int) -> tuple[int, ...]:
    """Smallest subspace containing ``v`` and stable under ``gens``."""
    basis = rref([v], n, p)
    queue = list(basis)
    while queue:
        w = queue.pop()
        for g in gens:
            img = g.act(w)
            new = rref(list(basis) + [img], n, p)
            if len(new) > len(basis):
                basis = new
                queue.append(img)
    return basis


def all_subspaces(n: int, p: int, dim: int | None = None) -> list[tuple[int, ...]]:
    """Every subspace of GF(p)^n (optionally of one dimension), as rref bases."""
    subs = _all_subspaces(n, p)
    if dim is not None:
        return [s for s in subs if len(s) == dim]
    return list(subs)


@lru_cache(maxsize=None)
def _all_subspaces(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    seen = {(): None}
    layer = [()]
    for _ in range(n):
        nxt = []
        for b in layer:
            for v in range(1, p ** n):
                s = rref(list(b) + [v], n, p)
                if len(s) == len(b) + 1 and s not in seen:
                    seen[s] = None
                    nxt.append(s)
        layer = nxt
    return tuple(sorted(seen, key=lambda s: (len(s), s)))


def _projective_points(n: int, p: int):
    # vectors whose last nonzero coordinate is 1, one per 1-dim subspace
    for v in range(1, p ** n):
        e = vec_entries(v, n, p)
        last = max(i for i, x in enumerate(e) if x)
        if e[last] == 1:
            yield v


def invariant_subspace(gens: Sequence[FieldMatrix], method: str = "auto") -> tuple[int, ...] | None:
    """A proper nonzero subspace stable under all ``gens``, or None if irreducible.

    ``method="exhaustive"`` checks every proper nonzero subspace (p = 2,
    n <= 6); ``method="spin"`` spins up every projective point.  Both are
    exact; "auto" uses the exhaustive path where it applies.
    """
    if not gens:
        raise ValueError("need at least one generator")
    n, p = gens[0].n, gens[0].p
    for g in gens:
        _check_compatible(gens[0], g)
        if g.determinant() == 0:
            raise NotInvertibleError("generators must be invertible")
    if n <= 1:
        return None
    if method == "auto":
        method = "exhaustive" if p == 2 and n <= 6 else "spin"
    if method == "exhaustive":
        if p ** n > 2 ** 6:
            raise ValueError("exhaustive subspace enumeration limited to p^n <= 64")
        for s in all_subspaces(n, p):
            if 0 < len(s) < n and is_invariant(s, gens):
                return s
        return None
    if method != "spin":
        raise ValueError(f"unknown method {method!r}")
    best = None
    for v in _projective_points(n, p):
        s = spin(v, gens, n, p)
        if len(s) < n and (best is None or (len(s), s) < (len(best), best)):
            best = s
            if len(s) == 1:
                break
    return best


def is_irreducible(gens: Sequence[FieldMatrix], method: str = "auto") -> bool:
    return invariant_subspace(gens, method) is None


def all_matrices(n: int, p: int):
    """Every n x n matrix over GF(p) (small cases only)."""
    for entries in product(range(p), repeat=n * n):
        yield FieldMatrix([entries[i * n:(i + 1) * n] for i in range(n)], p)


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out
