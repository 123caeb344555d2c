"""The generalized Laguerre space on a projective cone with its vertex deleted.

Coordinates of the ambient PG(n, q) are ordered (vertex part | base part): the
first ``a = vertex_dim + 1`` coordinates span the vertex flat T, the remaining
``base_dim + 1`` span the base flat B.  The cone form is Q applied to the base
part, so its radical is exactly T and S0 is its singular locus.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import (Flat, ProjectiveSpace, QuadraticForm, UnsupportedField, check_field,
                      echelon_coefficients, flats_of_dim, rank, standard_form, witt_index)

QUADRIC_KINDS = ("hyperbolic", "parabolic", "elliptic")


class ConfigError(ValueError):
    """An invalid model configuration; the message names the violated invariant."""


@dataclass(frozen=True)
class ModelConfig:
    q: int
    vertex_dim: int
    base_dim: int
    quadric: str = "hyperbolic"

    def validate(self) -> None:
        try:
            check_field(self.q)
        except UnsupportedField as e:
            raise ConfigError(str(e)) from None
        if self.vertex_dim < 0:
            raise ConfigError("vertex_dim must be >= 0")
        if self.base_dim < 1:
            raise ConfigError("base_dim must be >= 1")
        if self.quadric not in QUADRIC_KINDS:
            raise ConfigError(f"quadric must be one of {', '.join(QUADRIC_KINDS)}")
        try:
            form = standard_form(self.quadric, self.base_dim + 1, self.q)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        _, w = witt_index(form, Flat.whole(self.base_dim, self.q))
        if w < 2:
            raise ConfigError("quadric must be ruled (generator dimension t >= 1)")


@dataclass(frozen=True, eq=False)
class Line:
    id: int
    kind: str               # "A" (affine, meets T) or "G" (projective, misses T)
    flat: Flat              # projective closure
    points: tuple[int, ...]  # S positions, sorted
    mask: int
    tpoint: int = -1        # ambient index of closure ∩ T for affine lines


@dataclass(frozen=True, eq=False)
class Cycle:
    id: int
    flat: Flat
    points: tuple[int, ...]
    mask: int


def mask_of(positions) -> int:
    m = 0
    for p in positions:
        m |= 1 << int(p)
    return m


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Model:
    """Immutable after construction; heavy families are computed lazily and cached."""

    def __init__(self, cfg: ModelConfig):
        cfg.validate()
        self.cfg = cfg
        q = self.q = cfg.q
        self.a = cfg.vertex_dim + 1
        self.nu = cfg.base_dim + 1
        self.n = n = cfg.vertex_dim + cfg.base_dim + 1
        self.base_form = standard_form(cfg.quadric, self.nu, q)
        g = [[0] * (n + 1) for _ in range(n + 1)]
        for i in range(self.nu):
            for j in range(self.nu):
                g[self.a + i][self.a + j] = self.base_form.gram[i][j]
        self.form = QuadraticForm(q, tuple(tuple(r) for r in g))
        self.gram = np.array(g, dtype=np.int64)
        self.T = Flat.from_rows([[int(i == j) for j in range(n + 1)] for i in range(self.a)], n, q)
        self.B = Flat.from_rows([[int(i == j) for j in range(n + 1)] for i in range(self.a, n + 1)], n, q)
        _, w = witt_index(self.base_form, Flat.whole(cfg.base_dim, q))
        self.t = w - 1
        # dimension of the base quadric as a variety; plays the role of the
        # "nu" appearing in the subspace-class formulas
        self.quadric_dim = cfg.base_dim - 1

        self.space = sp = ProjectiveSpace(n, q)
        c = sp.coords
        qv = np.einsum("ij,jk,ik->i", c, self.gram, c) % q
        self.in_T = ~c[:, self.a:].any(axis=1)
        self.in_S0 = qv == 0
        self.in_S = self.in_S0 & ~self.in_T
        self.s_ambient = np.flatnonzero(self.in_S)
        self.spos = np.full(len(sp), -1, dtype=np.int64)
        self.spos[self.s_ambient] = np.arange(len(self.s_ambient))
        self.t_points = np.flatnonzero(self.in_T)
        self.full_mask = (1 << len(self.s_ambient)) - 1

    # ------------------------------------------------------------ basics
    @property
    def params(self) -> dict:
        return {"nu": self.nu, "t": self.t, "a": self.a}

    @property
    def num_points(self) -> int:
        return len(self.s_ambient)

    def point_coords(self, pos: int) -> tuple[int, ...]:
        return self.space.points[int(self.s_ambient[pos])]

    def s_positions(self, flat: Flat) -> np.ndarray:
        """Sorted S positions of the points of ``flat`` lying in S."""
        idx = self.space.point_indices(flat.basis)
        p = self.spos[idx]
        return p[p >= 0]

    def section_mask(self, flat: Flat) -> int:
        return mask_of(self.s_positions(flat))

    def in_s0_flat(self, flat: Flat) -> bool:
        return bool(self.in_S0[self.space.point_indices(flat.basis)].all())

    def bilinear(self, x, y) -> int:
        return self.form.bilinear(x, y)

    # ------------------------------------------------------------ generators
    @cached_property
    def _totally_singular(self):
        return {}

    def totally_singular_base_flats(self, d: int) -> list[Flat]:
        """Flats of B of dimension d on which Q vanishes identically."""
        cache = self._totally_singular
        if d not in cache:
            q, nu = self.q, self.nu
            coeffs = echelon_coefficients(d, nu, q)
            g = np.array(self.base_form.gram, dtype=np.int64)
            grams = np.einsum("nij,jk,nlk->nil", coeffs, g, coeffs) % q
            keep = ~grams.reshape(len(coeffs), -1).any(axis=1)
            pad = np.zeros((int(keep.sum()), d + 1, self.a), dtype=np.int64)
            full = np.concatenate([pad, coeffs[keep]], axis=2)
            cache[d] = [Flat(self.n, q, tuple(tuple(int(x) for x in r) for r in m)) for m in full]
        return cache[d]

    def generators(self, m: int, d: int):
        """All flats G inside S0 with dim(G ∩ T) = m-1 and dim G = m+d (d >= 0).

        Every such flat is T' + graph of a linear map from a totally singular
        d-flat W of B into a fixed complement of T' in T; each appears once.
        """
        n, q = self.n, self.q
        if m > self.a or d < 0:
            return
        for tsub in flats_of_dim(m - 1, self.T):
            piv = set(tsub.pivots)
            comp = [tuple(int(i == j) for j in range(n + 1)) for i in range(self.a) if i not in piv]
            for w in self.totally_singular_base_flats(d):
                for vals in itertools.product(range(q), repeat=(d + 1) * len(comp)):
                    rows = list(tsub.basis)
                    for i, wr in enumerate(w.basis):
                        r = list(wr)
                        for j, cr in enumerate(comp):
                            f = vals[i * len(comp) + j]
                            if f:
                                r = [(x + f * y) % q for x, y in zip(r, cr)]
                        rows.append(r)
                    yield Flat.from_rows(rows, n, q)

    # ------------------------------------------------------------ lines
    @cached_property
    def lines(self) -> list[Line]:
        found = []
        for kind, (m, d) in (("A", (1, 0)), ("G", (0, 1))):
            for f in self.generators(m, d):
                pos = self.s_positions(f)
                tp = -1
                if kind == "A":
                    idx = self.space.point_indices(f.basis)
                    tp = int(idx[self.in_T[idx]][0])
                found.append((kind, tuple(int(p) for p in pos), f, tp))
        found.sort(key=lambda x: (x[0], x[1]))
        return [Line(i, k, f, pts, mask_of(pts), tp) for i, (k, pts, f, tp) in enumerate(found)]

    @property
    def affine_lines(self) -> list[Line]:
        return [L for L in self.lines if L.kind == "A"]

    @property
    def projective_lines(self) -> list[Line]:
        return [L for L in self.lines if L.kind == "G"]

    @cached_property
    def line_index(self) -> dict[Flat, int]:
        return {L.flat: L.id for L in self.lines}

    @cached_property
    def star_index(self) -> list[list[int]]:
        """S position -> ids of lines through it."""
        st = [[] for _ in range(self.num_points)]
        for L in self.lines:
            for p in L.points:
                st[p].append(L.id)
        return st

    def parallel(self, l1: Line, l2: Line) -> bool:
        if l1.kind != "A" or l2.kind != "A":
            raise ValueError("parallelism is defined on affine lines only")
        return l1.tpoint == l2.tpoint

    def pi_adjacent(self, k1: Line, k2: Line) -> bool:
        return k1 is not k2 and k1.id != k2.id and bool(k1.mask & k2.mask)

    # ------------------------------------------------------------ cycles
    @cached_property
    def cycles(self) -> list[Cycle]:
        """Nondegenerate plane sections: planes of B carrying a conic, lifted along T."""
        q, n, a = self.q, self.n, self.a
        coeffs = echelon_coefficients(2, self.nu, q)
        g = np.array(self.base_form.gram, dtype=np.int64)
        grams = np.einsum("nij,jk,nlk->nil", coeffs, g, coeffs) % q
        dets = np.round(np.linalg.det(grams.astype(float))).astype(np.int64) % q
        found = []
        for c in coeffs[dets != 0]:
            for vals in itertools.product(range(q), repeat=3 * a):
                rows = np.concatenate([np.array(vals, dtype=np.int64).reshape(3, a), c], axis=1)
                f = Flat.from_rows(rows.tolist(), n, q)
                pos = tuple(int(p) for p in self.s_positions(f))
                found.append((pos, f))
        found.sort(key=lambda x: x[0])
        return [Cycle(i, f, pts, mask_of(pts)) for i, (pts, f) in enumerate(found)]

    @cached_property
    def cycle_index(self) -> dict[Flat, int]:
        return {C.flat: C.id for C in self.cycles}

    def tangent_line(self, cycle: Cycle, pos: int) -> Flat:
        """Tangent of the conic ``cycle`` at the point with S position ``pos``."""
        p = self.point_coords(pos)
        rows = cycle.flat.basis
        coeffs = [self.form.bilinear(p, r) for r in rows]
        # {x in plane : B(p, x) = 0}
        from .algebra import nullspace
        sol = nullspace([coeffs], len(rows), self.q)
        vecs = [[sum(c * r[j] for c, r in zip(s, rows)) % self.q for j in range(self.n + 1)] for s in sol]
        return Flat.from_rows(vecs, self.n, self.q)

    @cached_property
    def tangent_classes(self) -> dict[tuple[int, Flat], list[int]]:
        """(point, tangent line) -> ids of cycles touching that line at that point."""
        groups: dict = {}
        for C in self.cycles:
            for p in C.points:
                groups.setdefault((p, self.tangent_line(C, p)), []).append(C.id)
        return groups

    def tangent(self, c1: Cycle, c2: Cycle) -> bool:
        common = c1.mask & c2.mask
        if c1.id == c2.id or common.bit_count() != 1:
            return False
        p = common.bit_length() - 1
        return self.tangent_line(c1, p) == self.tangent_line(c2, p)


def build_model(cfg: ModelConfig) -> Model:
    return Model(cfg)


# ------------------------------------------------------------ oracles

def scan_lines(model: Model) -> tuple[set, set]:
    """Independent full scan over all lines of the ambient space.

    Returns (affine, projective) as sets of frozensets of S positions.
    """
    sp, q = model.space, model.q
    aff, proj = set(), set()
    for c in echelon_coefficients(1, model.n + 1, q):
        idx = sp.point_indices(c)
        if not model.in_S0[idx].all():
            continue
        nt = int(model.in_T[idx].sum())
        pts = frozenset(int(p) for p in model.spos[idx] if p >= 0)
        if nt == 0:
            proj.add(pts)
        elif nt == 1:
            aff.add(pts)
    return aff, proj


def scan_cycles(model: Model) -> set:
    """Independent plane-by-plane section test: q+1 points of S, no three collinear."""
    sp, q = model.space, model.q
    out = set()
    for c in echelon_coefficients(2, model.n + 1, q):
        idx = sp.point_indices(c)
        sidx = idx[model.in_S[idx]]
        if len(sidx) != q + 1:
            continue
        pts = [sp.points[i] for i in sidx]
        if all(rank(tr, q) == 3 for tr in itertools.combinations(pts, 3)):
            out.add(frozenset(int(model.spos[i]) for i in sidx))
    return out
