"""Exact linear algebra over GF(q), q an odd prime, and projective-space primitives.

Vectors are tuples of ints in ``range(q)``.  A :class:`Flat` is stored by its
reduced row echelon basis, which is unique, so flats compare and hash by value.
Bulk point enumeration goes through :class:`ProjectiveSpace`, which keeps a
lookup table from every nonzero vector code to its projective point index.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np


class UnsupportedField(ValueError):
    """Raised for field orders that are not odd primes."""


class NotAProjectivePoint(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_field(q: int) -> None:
    if not isinstance(q, int) or not is_prime(q) or q == 2:
        raise UnsupportedField(f"field order must be an odd prime, got {q!r}")


@dataclass(frozen=True)
class FieldTable:
    q: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int | None, ...]

    def is_square(self, a: int) -> bool:
        a %= self.q
        return a == 0 or pow(a, (self.q - 1) // 2, self.q) == 1


@lru_cache(maxsize=None)
def field_table(q: int) -> FieldTable:
    check_field(q)
    add = tuple(tuple((a + b) % q for b in range(q)) for a in range(q))
    mul = tuple(tuple(a * b % q for b in range(q)) for a in range(q))
    inv = (None,) + tuple(pow(a, -1, q) for a in range(1, q))
    return FieldTable(q, add, mul, inv)


def nonsquare(q: int) -> int:
    return next(a for a in range(2, q) if pow(a, (q - 1) // 2, q) == q - 1)


def normalize(v: Sequence[int], q: int) -> tuple[int, ...]:
    """Scale ``v`` so that its first nonzero entry is 1."""
    v = [x % q for x in v]
    for x in v:
        if x:
            inv = pow(x, -1, q)
            return tuple(y * inv % q for y in v)
    raise NotAProjectivePoint("the zero vector is not a projective point")


def enumerate_points(n: int, q: int) -> list[tuple[int, ...]]:
    """All points of PG(n, q) as normalized tuples, in lexicographic order."""
    check_field(q)
    pts = []
    for lead in range(n + 1):
        head = (0,) * lead + (1,)
        for tail in itertools.product(range(q), repeat=n - lead):
            pts.append(head + tail)
    pts.sort()
    return pts


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


# ---------------------------------------------------------------- row reduction

def rref(rows: Iterable[Sequence[int]], q: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Reduced row echelon form; zero rows are dropped.  Returns (rows, pivots)."""
    m = [[x % q for x in r] for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        if row[c] != 1:
            inv = pow(row[c], -1, q)
            row = m[r] = [x * inv % q for x in row]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [(x - f * y) % q for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows: Iterable[Sequence[int]], q: int) -> int:
    return len(rref(rows, q)[0])


def nullspace(rows: Sequence[Sequence[int]], ncols: int, q: int) -> list[tuple[int, ...]]:
    """Basis of {x : row . x = 0 for every row}."""
    red, pivots = rref(rows, q)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(red, pivots):
            v[p] = -row[f] % q
        basis.append(tuple(v))
    return basis


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], q: int) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % q for col in bt] for row in a]


# ---------------------------------------------------------------- flats

@dataclass(frozen=True)
class Flat:
    """Projective subspace of PG(n, q), stored by its unique RREF basis."""
    n: int
    q: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], n: int, q: int) -> "Flat":
        return cls(n, q, rref(rows, q)[0])

    @classmethod
    def whole(cls, n: int, q: int) -> "Flat":
        return cls(n, q, tuple(tuple(int(i == j) for j in range(n + 1)) for i in range(n + 1)))

    @classmethod
    def empty(cls, n: int, q: int) -> "Flat":
        return cls(n, q, ())

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.basis)

    def contains_vector(self, v: Sequence[int]) -> bool:
        v = [x % self.q for x in v]
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if f:
                v = [(x - f * y) % self.q for x, y in zip(v, row)]
        return not any(v)

    def contains(self, other: "Flat") -> bool:
        return all(self.contains_vector(r) for r in other.basis)

    def points(self) -> Iterator[tuple[int, ...]]:
        """Normalized points of the flat (not sorted)."""
        k = len(self.basis)
        for c in itertools.product(range(self.q), repeat=k):
            if any(c) and c[next(i for i, x in enumerate(c) if x)] == 1:
                yield tuple(sum(ci * row[j] for ci, row in zip(c, self.basis)) % self.q
                            for j in range(self.n + 1))

    def __repr__(self):
        return f"Flat(dim={self.dim}, basis={self.basis})"


def span(items: Iterable, n: int, q: int) -> Flat:
    """Least flat containing the given vectors and/or flats."""
    rows = []
    for it in items:
        if isinstance(it, Flat):
            rows.extend(it.basis)
        else:
            rows.append(tuple(it))
    return Flat.from_rows(rows, n, q)


def join(*flats: Flat) -> Flat:
    f0 = flats[0]
    return span(flats, f0.n, f0.q)


def meet(f1: Flat, f2: Flat) -> Flat:
    n, q = f1.n, f1.q
    if not f1.basis or not f2.basis:
        return Flat.empty(n, q)
    ann = nullspace(f1.basis, n + 1, q) + nullspace(f2.basis, n + 1, q)
    if not ann:
        return Flat.whole(n, q)
    return Flat.from_rows(nullspace(ann, n + 1, q), n, q)


@lru_cache(maxsize=None)
def echelon_coefficients(k: int, r: int, q: int) -> np.ndarray:
    """All (k+1) x r matrices in RREF of full rank, in deterministic order.

    Shape (N, k+1, r).  These parametrize the k-flats of PG(r-1, q).
    """
    mats = []
    rows = k + 1
    for pivots in itertools.combinations(range(r), rows):
        slots = [(i, j) for i in range(rows) for j in range(pivots[i] + 1, r) if j not in pivots]
        for vals in itertools.product(range(q), repeat=len(slots)):
            m = np.zeros((rows, r), dtype=np.int64)
            for i, p in enumerate(pivots):
                m[i, p] = 1
            for (i, j), v in zip(slots, vals):
                m[i, j] = v
            mats.append(m)
    if not mats:
        return np.zeros((0, rows, r), dtype=np.int64)
    return np.stack(mats)


def flats_of_dim(k: int, within: Flat) -> list[Flat]:
    """Every k-flat inside ``within``, each once, in deterministic order."""
    n, q = within.n, within.q
    if k < -1 or k > within.dim:
        return []
    if k == -1:
        return [Flat.empty(n, q)]
    coeffs = echelon_coefficients(k, len(within.basis), q)
    base = np.array(within.basis, dtype=np.int64)
    identity = within == Flat.whole(n, q)
    out = []
    for c in coeffs:
        if identity:
            out.append(Flat(n, q, tuple(tuple(int(x) for x in row) for row in c)))
        else:
            out.append(Flat.from_rows((c @ base % q).tolist(), n, q))
    return out


def complement_rows(sub: Flat, within: Flat) -> list[tuple[int, ...]]:
    """Rows extending a basis of ``sub`` to a basis of ``within``."""
    rows = list(sub.basis)
    extra = []
    for r in within.basis:
        if rank(rows + [r], sub.q) > len(rows):
            rows.append(r)
            extra.append(r)
    return extra


def flats_between(lower: Flat, upper: Flat, k: int) -> list[Flat]:
    """All k-flats F with lower <= F <= upper."""
    n, q = upper.n, upper.q
    comp = complement_rows(lower, upper)
    if k < lower.dim or k > upper.dim:
        return []
    cflat = Flat.from_rows(comp, n, q) if comp else Flat.empty(n, q)
    out = []
    for g in flats_of_dim(k - lower.dim - 1, cflat):
        out.append(span([lower, g], n, q))
    return out


# ---------------------------------------------------------------- bulk point indexing

class ProjectiveSpace:
    """PG(n, q) with indexed points and vectorized span -> point-index maps."""

    def __init__(self, n: int, q: int):
        check_field(q)
        self.n, self.q = n, q
        self.points = enumerate_points(n, q)
        self.index = {p: i for i, p in enumerate(self.points)}
        self.coords = np.array(self.points, dtype=np.int64)
        self.weights = q ** np.arange(n, -1, -1, dtype=np.int64)
        table = np.full(q ** (n + 1), -1, dtype=np.int64)
        for i, p in enumerate(self.points):
            v = np.array(p, dtype=np.int64)
            for lam in range(1, q):
                table[int(((v * lam) % q) @ self.weights)] = i
        self.vec_index = table

    def __len__(self):
        return len(self.points)

    @staticmethod
    @lru_cache(maxsize=None)
    def _all_coeffs(r: int, q: int) -> np.ndarray:
        c = np.array(list(itertools.product(range(q), repeat=r)), dtype=np.int64)
        return c[1:]

    def point_indices(self, basis: Sequence[Sequence[int]]) -> np.ndarray:
        """Sorted indices of all points in the span of ``basis``."""
        if len(basis) == 0:
            return np.zeros(0, dtype=np.int64)
        b = np.asarray(basis, dtype=np.int64)
        vecs = self._all_coeffs(len(b), self.q) @ b % self.q
        return np.unique(self.vec_index[vecs @ self.weights])

    def index_of(self, v: Sequence[int]) -> int:
        return int(self.vec_index[int(np.asarray(v, dtype=np.int64) % self.q @ self.weights)])


# ---------------------------------------------------------------- quadratic forms

@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = x^T gram x with a symmetric gram matrix (characteristic != 2)."""
    q: int
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.gram
        if any(g[i][j] % self.q != g[j][i] % self.q for i in range(len(g)) for j in range(len(g))):
            raise ValueError("gram matrix must be symmetric")

    @property
    def size(self) -> int:
        return len(self.gram)

    def value(self, x: Sequence[int]) -> int:
        return self.bilinear(x, x)

    def bilinear(self, x: Sequence[int], y: Sequence[int]) -> int:
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(len(x)) if x[i]
                   for j in range(len(y)) if y[j]) % self.q

    def restricted(self, rows: Sequence[Sequence[int]]) -> list[list[int]]:
        """Gram matrix of the form on the span of ``rows`` (in those coordinates)."""
        return matmul(matmul(rows, self.gram, self.q), list(zip(*rows)), self.q) if rows else []


def diagonalize(gram: Sequence[Sequence[int]], q: int) -> list[int]:
    """Diagonal entries of a congruent diagonal form (zeros included)."""
    a = [[x % q for x in row] for row in gram]
    n = len(a)
    diag = []
    active = list(range(n))
    while active:
        i = next((i for i in active if a[i][i]), None)
        if i is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j]), None)
            if pair is None:
                diag.extend([0] * len(active))
                break
            i, j = pair
            # e_i <- e_i + e_j makes the diagonal entry 2*a_ij != 0
            for k in range(n):
                a[i][k] = (a[i][k] + a[j][k]) % q
            for k in range(n):
                a[k][i] = (a[k][i] + a[k][j]) % q
        piv = a[i][i]
        inv = pow(piv, -1, q)
        for j in active:
            if j != i and a[j][i]:
                f = a[j][i] * inv % q
                for k in range(n):
                    a[j][k] = (a[j][k] - f * a[i][k]) % q
                for k in range(n):
                    a[k][j] = (a[k][j] - f * a[k][i]) % q
        diag.append(piv)
        active.remove(i)
    return diag


def witt_index_of_gram(gram: Sequence[Sequence[int]], q: int) -> tuple[int, int]:
    """(rank, vector-space Witt index) of a symmetric bilinear form."""
    if not gram:
        return 0, 0
    d = diagonalize(gram, q)
    nz = [x for x in d if x]
    r = len(nz)
    radical = len(d) - r
    if r == 0:
        nd = 0
    elif r % 2:
        nd = (r - 1) // 2
    else:
        h = r // 2
        disc = (-1) ** h
        for x in nz:
            disc *= x
        nd = h if pow(disc % q, (q - 1) // 2, q) == 1 else h - 1
    return r, radical + nd


def witt_index(form: QuadraticForm, carrier: Flat) -> tuple[int, int]:
    return witt_index_of_gram(form.restricted(carrier.basis), form.q)


def standard_form(kind: str, size: int, q: int) -> QuadraticForm:
    """Canonical nondegenerate form on GF(q)^size of the given kind."""
    half = (q + 1) // 2
    g = [[0] * size for _ in range(size)]

    def hyp(i):
        g[i][i + 1] = g[i + 1][i] = half

    if kind == "hyperbolic":
        if size % 2:
            raise ValueError("hyperbolic quadric needs an even number of coordinates")
        for i in range(0, size, 2):
            hyp(i)
    elif kind == "parabolic":
        if size % 2 == 0:
            raise ValueError("parabolic quadric needs an odd number of coordinates")
        g[0][0] = 1
        for i in range(1, size, 2):
            hyp(i)
    elif kind == "elliptic":
        if size % 2 or size < 2:
            raise ValueError("elliptic quadric needs an even number of coordinates")
        g[0][0] = 1
        g[1][1] = -nonsquare(q) % q
        for i in range(2, size, 2):
            hyp(i)
    else:
        raise ValueError(f"unknown quadric kind {kind!r}")
    return QuadraticForm(q, tuple(tuple(r) for r in g))
