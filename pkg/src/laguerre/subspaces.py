"""Subspaces of a Laguerre space as flat sections, and their classification.

A subspace is represented by the section S ∩ F together with its carrier, the
span of the section.  Class tags follow the cone taxonomy:

* ``s(m, m', d, w)``: affine cone with m-dimensional affine generator over a
  projective cone with m'-dimensional projective generator whose nondegenerate
  base quadric has (variety) dimension d and generator dimension w;
* ``g(m, d)``: an (m+d)-dimensional generator with m-dimensional affine part;
* ``point``.

``l^m_{d,w} = s(m, w, d, w)`` and ``d^m_{d,w} = s(0, m, d, w)``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (Flat, complement_rows, echelon_coefficients, flats_of_dim, meet, nullspace, rank,
                      span, witt_index_of_gram)
from .model import Model, bits, mask_of
from .report import CERTIFIED, VerificationReport, timed


@dataclass(frozen=True, order=True)
class ClassTag:
    kind: str  # "s", "g" or "point"
    m: int = 0
    m2: int = 0
    d: int = 0
    w: int = 0

    @classmethod
    def l(cls, m, d, w):
        return cls("s", m, w, d, w)

    @classmethod
    def dcone(cls, m, d, w):
        return cls("s", 0, m, d, w)

    @classmethod
    def g(cls, m, d):
        return cls("g", m, 0, d, 0)

    @property
    def name(self) -> str:
        if self.kind == "point":
            return "point"
        if self.kind == "g":
            return f"g^{self.m}_{self.d}"
        if self.m2 == self.w:
            return f"l^{self.m}_{self.d},{self.w}"
        if self.m == 0:
            return f"d^{self.m2}_{self.d},{self.w}"
        return f"s^{self.m},{self.m2}_{self.d},{self.w}"

    @property
    def params(self) -> list[int]:
        if self.kind == "point":
            return []
        if self.kind == "g":
            return [self.m, self.d]
        return [self.m, self.m2, self.d, self.w]

    @property
    def nickname(self) -> str:
        return NICKNAMES.get(self, self.name)

    def __str__(self):
        return self.name


POINT = ClassTag("point")
AFFINE_LINE = ClassTag.g(1, 0)
PROJECTIVE_LINE = ClassTag.g(0, 1)
CYCLE = ClassTag.l(0, 1, 0)
PROJECTIVE_PLANE = ClassTag.g(0, 2)
SEMIAFFINE_PLANE = ClassTag.g(1, 1)
AFFINE_PLANE = ClassTag.g(2, 0)
LAGUERRE_PLANE = ClassTag.l(1, 1, 0)
CONIC_CONE = ClassTag.dcone(1, 1, 0)
MOBIUS_PLANE = ClassTag.l(0, 2, 0)
MINKOWSKI_PLANE = ClassTag.l(0, 2, 1)
TWO_PLANES = ClassTag("s", 1, 1, 0, 0)

PSUB2_TAGS = (PROJECTIVE_PLANE, SEMIAFFINE_PLANE, AFFINE_PLANE, LAGUERRE_PLANE,
              CONIC_CONE, MOBIUS_PLANE, MINKOWSKI_PLANE)

NICKNAMES = {
    POINT: "point", AFFINE_LINE: "affine line", PROJECTIVE_LINE: "projective line",
    CYCLE: "cycle", PROJECTIVE_PLANE: "projective plane", SEMIAFFINE_PLANE: "semiaffine plane",
    AFFINE_PLANE: "affine plane", LAGUERRE_PLANE: "Laguerre plane", CONIC_CONE: "conic cone",
    MOBIUS_PLANE: "Moebius plane", MINKOWSKI_PLANE: "Minkowski plane",
    TWO_PLANES: "pair of semiaffine planes",
}

SEMIAFFINE = "semiaffine"


@dataclass(frozen=True, eq=False)
class LSub:
    mask: int
    carrier: Flat
    tag: ClassTag

    @property
    def points(self) -> list[int]:
        return bits(self.mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()


class EmptySubspace(ValueError):
    pass


def carrier_of(model: Model, mask: int) -> Flat:
    return Flat.from_rows([model.point_coords(p) for p in bits(mask)], model.n, model.q)


def classify_carrier(model: Model, carrier: Flat) -> ClassTag:
    if not carrier.basis:
        raise EmptySubspace("cannot classify the empty subspace")
    q, a = model.q, model.a
    m = meet(carrier, model.T).dim + 1
    proj = Flat.from_rows([r[a:] for r in carrier.basis], model.nu - 1, q)
    gram = model.base_form.restricted(proj.basis)
    r, wt = witt_index_of_gram(gram, q)
    rad = len(proj.basis) - r
    if r == 0:
        if carrier.dim == 0:
            return POINT
        return ClassTag.g(m, carrier.dim - m)
    w = (wt - rad) - 1
    return ClassTag("s", m, w + rad, r - 2, w)


def section(model: Model, flat: Flat) -> LSub | None:
    mask = model.section_mask(flat)
    if not mask:
        return None
    carrier = carrier_of(model, mask)
    return LSub(mask, carrier, classify_carrier(model, carrier))


def classify(model: Model, x: LSub) -> ClassTag:
    if not x.mask:
        raise EmptySubspace("cannot classify the empty subspace")
    return classify_carrier(model, x.carrier)


def dim_of(tag: ClassTag) -> int:
    if tag.kind == "point":
        return 0
    if tag.kind == "g":
        return tag.m + tag.d
    return tag.d + (tag.m2 - tag.w) + tag.m


def restriction_params(tag: ClassTag):
    """(quadric dimension, t, a) of the restricted Laguerre space, or SEMIAFFINE."""
    if tag.kind != "s":
        return SEMIAFFINE
    return (tag.d + tag.m2 - tag.w, tag.m2, tag.m)


# ------------------------------------------------------------ axiom checker

def is_axiom_closed(model: Model, x: int) -> bool:
    """Evaluate the four closure conditions on the point set ``x`` (a mask)."""
    for L in model.lines:
        if (L.mask & x).bit_count() >= 2 and L.mask & ~x:
            return False
    inside_dirs = {L.tpoint for L in model.affine_lines if not L.mask & ~x}
    for L in model.affine_lines:
        if L.mask & x and L.tpoint in inside_dirs and L.mask & ~x:
            return False
    for C in model.cycles:
        if (C.mask & x).bit_count() >= 3 and C.mask & ~x:
            return False
    touching = _tangent_neighbours(model)
    for C in model.cycles:
        if C.mask & ~x:
            continue
        for other in touching[C.id]:
            A = model.cycles[other]
            if (A.mask & x).bit_count() >= 2 and A.mask & ~x:
                return False
    return True


_TANGENT_CACHE: dict[int, list[list[int]]] = {}


def _tangent_neighbours(model: Model) -> list[list[int]]:
    key = id(model)
    if key not in _TANGENT_CACHE:
        nb = [[] for _ in model.cycles]
        for group in model.tangent_classes.values():
            for i in group:
                for j in group:
                    if i != j and (model.cycles[i].mask & model.cycles[j].mask).bit_count() == 1:
                        nb[i].append(j)
        _TANGENT_CACHE[key] = nb
    return _TANGENT_CACHE[key]


# ------------------------------------------------------------ enumeration

def _flat_sections(model: Model, k: int):
    """(flat, mask) for every k-flat whose section spans it."""
    sp, q = model.space, model.q
    coeffs = echelon_coefficients(k, model.n + 1, q)
    for c in coeffs:
        idx = sp.point_indices(c)
        sidx = idx[model.in_S[idx]]
        if len(sidx) < k + 1:
            continue
        if rank([sp.points[i] for i in sidx], q) != k + 1:
            continue
        f = Flat(model.n, q, tuple(tuple(int(v) for v in r) for r in c))
        yield f, mask_of(model.spos[sidx])


def scan_psub2(model: Model) -> tuple[list[LSub], dict[ClassTag, int]]:
    """All 2-dimensional subspaces by a sweep over planes and 3-flats.

    Returns (kept, excluded-counts) where excluded are dim-2 sections whose class
    lies outside the seven admissible plane classes.
    """
    kept, excluded = [], {}
    for k in (2, 3):
        for f, mask in _flat_sections(model, k):
            tag = classify_carrier(model, f)
            if dim_of(tag) != 2:
                continue
            if tag in PSUB2_TAGS:
                kept.append(LSub(mask, f, tag))
            else:
                excluded[tag] = excluded.get(tag, 0) + 1
    kept.sort(key=lambda z: (PSUB2_TAGS.index(z.tag), bits(z.mask)))
    return kept, excluded


_PSUB_CACHE: dict[int, tuple] = {}
_SCAN_CACHE: dict[int, tuple] = {}


def enumerate_psub(model: Model, k: int) -> list[LSub]:
    """℘1 (lines then cycles) or ℘2 (built class by class)."""
    if k == 1:
        out = [LSub(L.mask, L.flat, AFFINE_LINE if L.kind == "A" else PROJECTIVE_LINE)
               for L in model.lines]
        out += [LSub(C.mask, C.flat, CYCLE) for C in model.cycles]
        return out
    if k == 2:
        key = id(model)
        if key not in _PSUB_CACHE:
            _PSUB_CACHE[key] = (model, structured_psub2(model))
        return list(_PSUB_CACHE[key][1])
    raise ValueError("only k = 1 and k = 2 are supported")


def scanned_psub2(model: Model) -> tuple[list[LSub], dict[ClassTag, int]]:
    """Cached result of the plane and 3-flat sweep."""
    key = id(model)
    if key not in _SCAN_CACHE:
        _SCAN_CACHE[key] = (model, scan_psub2(model))
    return _SCAN_CACHE[key][1]


def excluded_psub2(model: Model) -> dict[ClassTag, int]:
    return dict(scanned_psub2(model)[1])


# ------------------------------------------------------------ structured routes

@dataclass
class ConeTable:
    """All conic cones, one row per cone.

    vertex: S position of the vertex; bases: (N, 4, n+1) carrier bases (vertex
    first); members: (N, q+1) ids of the projective lines through the vertex.
    """
    vertex: np.ndarray
    bases: np.ndarray
    members: np.ndarray

    def __len__(self):
        return len(self.vertex)

    def carrier(self, model: Model, i: int) -> Flat:
        return Flat.from_rows(self.bases[i].tolist(), model.n, model.q)


def _det3(g: np.ndarray) -> np.ndarray:
    return (g[:, 0, 0] * (g[:, 1, 1] * g[:, 2, 2] - g[:, 1, 2] * g[:, 2, 1])
            - g[:, 0, 1] * (g[:, 1, 0] * g[:, 2, 2] - g[:, 1, 2] * g[:, 2, 0])
            + g[:, 0, 2] * (g[:, 1, 0] * g[:, 2, 1] - g[:, 1, 1] * g[:, 2, 0]))


_CONES: dict[int, tuple] = {}


def conic_cones(model: Model) -> ConeTable:
    """Cones a + π over a nondegenerate plane π in a complement of a inside a^⊥.

    For a fixed vertex a the map π -> a + π is a bijection onto the cones with
    vertex a, so every cone is produced exactly once.
    """
    key = id(model)
    if key in _CONES:
        return _CONES[key][1]
    q, n, sp = model.q, model.n, model.space
    g = model.gram
    pc = _normalized_coeffs(3, q)
    verts, bases, members = [], [], []
    for pos in range(model.num_points):
        a = model.point_coords(pos)
        av = np.array(a, dtype=np.int64)
        perp = Flat.from_rows(nullspace([(av @ g % q).tolist()], n + 1, q), n, q)
        u = np.array(complement_rows(Flat.from_rows([a], n, q), perp), dtype=np.int64)
        if len(u) < 3:
            continue
        planes = echelon_coefficients(2, len(u), q) @ u % q
        grams = np.einsum("nij,jk,nlk->nil", planes, g, planes) % q
        planes = planes[_det3(grams) % q != 0]
        if not len(planes):
            continue
        vecs = np.einsum("pk,nkj->npj", pc, planes) % q
        vals = np.einsum("npj,jk,npk->np", vecs, g, vecs) % q
        idx = sp.vec_index[vecs @ sp.weights]
        through = {}
        for lid in model.star_index[pos]:
            L = model.lines[lid]
            if L.kind == "G":
                for p in L.points:
                    if p != pos:
                        through[int(model.s_ambient[p])] = lid
        for k in range(len(planes)):
            conic = idx[k][vals[k] == 0]
            ids = sorted(through[int(x)] for x in conic)
            verts.append(pos)
            bases.append(np.concatenate([av[None, :], planes[k]]))
            members.append(ids)
    w = q + 1
    table = ConeTable(np.array(verts, dtype=np.int64),
                      np.array(bases, dtype=np.int64).reshape(-1, 4, n + 1),
                      np.array(members, dtype=np.int64).reshape(-1, w))
    _CONES[key] = (model, table)
    return table


def _lsub(model: Model, f: Flat, tag: ClassTag) -> LSub:
    return LSub(model.section_mask(f), f, tag)


def laguerre_planes(model: Model) -> list[Flat]:
    out = set()
    for t in model.t_points:
        tp = model.space.points[int(t)]
        for C in model.cycles:
            out.add(Flat.from_rows(list(C.flat.basis) + [tp], model.n, model.q))
    return list(out)


def quadric_solids(model: Model, witt: int) -> list[Flat]:
    """3-flats missing T whose section is a Moebius (witt=1) or Minkowski (witt=2) plane."""
    q, a, n = model.q, model.a, model.n
    coeffs = echelon_coefficients(3, model.nu, q)
    out = []
    for c in coeffs:
        r, wi = witt_index_of_gram(model.base_form.restricted(c.tolist()), q)
        if r != 4 or wi != witt:
            continue
        for vals in itertools.product(range(q), repeat=4 * a):
            rows = np.concatenate([np.array(vals, dtype=np.int64).reshape(4, a), c], axis=1)
            out.append(Flat.from_rows(rows.tolist(), n, q))
    return out


def structured_psub2(model: Model, tags=PSUB2_TAGS) -> list[LSub]:
    """2-dimensional subspaces of the requested classes, built class by class."""
    out = []
    for tag in tags:
        if tag.kind == "g":
            flats = list(model.generators(tag.m, tag.d))
        elif tag == LAGUERRE_PLANE:
            flats = laguerre_planes(model)
        elif tag == CONIC_CONE:
            ct = conic_cones(model)
            flats = [ct.carrier(model, i) for i in range(len(ct))]
        elif tag == MOBIUS_PLANE:
            flats = quadric_solids(model, 1)
        elif tag == MINKOWSKI_PLANE:
            flats = quadric_solids(model, 2)
        else:
            raise ValueError(f"no structured route for {tag.name}")
        out.extend(_lsub(model, f, tag) for f in flats)
    out.sort(key=lambda z: (PSUB2_TAGS.index(z.tag), bits(z.mask)))
    return out


# ------------------------------------------------------------ oracles

def is_regular(tag: ClassTag) -> bool:
    """Points, generators and cones whose base quadric has dimension >= 1.

    Cones over 0-spheres (two points, two lines, two planes through a common
    line, ...) are left out: they are unions of smaller pieces and would
    otherwise lengthen chains without raising the dimension.
    """
    return tag.kind != "s" or tag.d >= 1


def chain_height(model: Model, x: LSub, memo: dict | None = None) -> int:
    """Longest chain of regular subspaces from a point up to ``x``, minus one.

    Every proper subspace sits inside the section of some hyperplane of the
    carrier, so the recursion only visits hyperplane sections.
    """
    if memo is None:
        memo = {}
    return _chain_length(model, x.carrier, x.mask, memo) - 1


def _chain_length(model: Model, carrier: Flat, mask: int, memo: dict) -> int:
    """Memoized on the point set, so each section's carrier is computed once."""
    if mask in memo:
        return memo[mask]
    if carrier.dim <= 0:
        memo[mask] = 1
        return 1
    best = 0
    for h in _hyperplanes(carrier):
        sm = model.section_mask(h)
        if not sm:
            continue
        got = memo.get(sm)
        if got is None:
            got = _chain_length(model, carrier_of(model, sm), sm, memo)
        best = max(best, got)
    here = best + (1 if is_regular(classify_carrier(model, carrier)) else 0)
    memo[mask] = here
    return here


def _hyperplanes(f: Flat) -> list[Flat]:
    return flats_of_dim(f.dim - 1, f)


@lru_cache(maxsize=None)
def _normalized_coeffs(r: int, q: int) -> np.ndarray:
    import itertools
    rows = [c for c in itertools.product(range(q), repeat=r)
            if any(c) and c[next(i for i, v in enumerate(c) if v)] == 1]
    return np.array(rows, dtype=np.int64)


def _subflat_points(model: Model, f: Flat, k: int) -> np.ndarray:
    """Point indices of every k-flat inside f, shape (N, points per k-flat)."""
    q = model.q
    fb = np.array(f.basis, dtype=np.int64)
    coeffs = echelon_coefficients(k, len(f.basis), q)
    bases = coeffs @ fb % q
    pc = _normalized_coeffs(k + 1, q)
    vecs = np.einsum("pk,nkj->npj", pc, bases) % q
    return model.space.vec_index[vecs @ model.space.weights]


def intrinsic_restriction(model: Model, x: LSub) -> tuple[int, int, int]:
    """(quadric dimension, t, a) of the cone X read off from its generators.

    a is the largest dimension of a flat in S0 whose trace on T is a
    hyperplane of it, t the largest dimension of a flat in S0 missing T; both
    are found by searching sub-flats of the carrier point-wise.
    """
    f = x.carrier
    q = model.q
    a_x, t_x = 0, -1
    for k in range(f.dim, -1, -1):
        pts = _subflat_points(model, f, k)
        in_s0 = model.in_S0[pts].all(axis=1)
        nt = model.in_T[pts].sum(axis=1)
        if t_x < 0 and (in_s0 & (nt == 0)).any():
            t_x = k
        if a_x == 0 and k >= 1 and (in_s0 & (nt == (q ** k - 1) // (q - 1))).any():
            a_x = k
        if t_x >= 0 and (a_x or k == 0):
            break
    return (f.dim - a_x - 1, t_x, a_x)


def random_sections(model: Model, count: int, dims, seed: int = 0) -> list[LSub]:
    """Sections of random flats of the given dimensions (nonempty, deduplicated)."""
    rng = random.Random(seed)
    out, seen = [], set()
    tries = 0
    while len(out) < count and tries < 100 * count:
        tries += 1
        k = rng.choice(list(dims))
        rows = [[rng.randrange(model.q) for _ in range(model.n + 1)] for _ in range(k + 1)]
        f = Flat.from_rows(rows, model.n, model.q)
        if f.dim != k:
            continue
        x = section(model, f)
        if x is None or x.carrier in seen:
            continue
        seen.add(x.carrier)
        out.append(x)
    return out


# ------------------------------------------------------------ maximal subspaces

def maximal_classes(model: Model) -> dict[str, ClassTag]:
    a, t, nu = model.a, model.t, model.quadric_dim
    return {
        "l^a_{nu-1,t-1}": ClassTag.l(a, nu - 1, t - 1),
        "l^a_{nu-1,t}": ClassTag.l(a, nu - 1, t),
        "l^{a-1}_{nu,t}": ClassTag.l(a - 1, nu, t),
        "s^{a,t}_{nu-2,t-1}": ClassTag("s", a, t, nu - 2, t - 1),
    }


def maximal_proper_check(model: Model) -> VerificationReport:
    """Classify the section of every hyperplane that is a maximal proper subspace."""
    rep = VerificationReport("fact31", CERTIFIED)
    allowed = maximal_classes(model)
    by_tag = {v: k for k, v in allowed.items()}
    counts: dict[str, int] = {}
    non_spanning = 0
    with timed(rep):
        for h, mask in _all_hyperplane_sections(model):
            if mask is None:
                non_spanning += 1
                continue
            tag = classify_carrier(model, h)
            label = by_tag.get(tag)
            rep.check(label is not None, {"hyperplane": [list(r) for r in h.basis], "class": tag.name})
            key = label or tag.name
            counts[key] = counts.get(key, 0) + 1
    rep.universe = {"hyperplanes": sum(counts.values()) + non_spanning}
    rep.details = {"classes": dict(sorted(counts.items())), "non_spanning": non_spanning,
                   "a_minus_one_case": counts.get("l^{a-1}_{nu,t}", 0),
                   "allowed": {k: v.name for k, v in allowed.items()}}
    return rep


def _all_hyperplane_sections(model: Model):
    sp, q, k = model.space, model.q, model.n - 1
    for c in echelon_coefficients(k, model.n + 1, q):
        idx = sp.point_indices(c)
        sidx = idx[model.in_S[idx]]
        f = Flat(model.n, q, tuple(tuple(int(v) for v in r) for r in c))
        if rank([sp.points[i] for i in sidx], q) != k + 1:
            yield f, None
        else:
            yield f, mask_of(model.spos[sidx])


# ------------------------------------------------------------ property checks

def all_sections(model: Model, dims=None):
    """Every distinct nonempty section, keyed by carrier (each carrier once)."""
    dims = range(0, model.n + 1) if dims is None else dims
    for k in dims:
        for f, mask in _flat_sections(model, k):
            yield LSub(mask, f, classify_carrier(model, f))


def axiom_closure_check(model: Model, dims=None) -> VerificationReport:
    """Every flat section is closed under the four closure conditions."""
    rep = VerificationReport("axioms", CERTIFIED)
    with timed(rep):
        n = 0
        for x in all_sections(model, dims):
            n += 1
            rep.check(is_axiom_closed(model, x.mask), {"carrier": [list(r) for r in x.carrier.basis]})
    rep.universe = {"sections": n}
    return rep


def dimension_check(model: Model, count: int = 30, seed: int = 0,
                    psub2: bool = False) -> VerificationReport:
    """dim_of = d + m against the chain-height oracle on random l-class sections
    (and, with psub2, on every element of the plane census)."""
    rep = VerificationReport("dimension", CERTIFIED)
    memo: dict = {}
    with timed(rep):
        pool = random_sections(model, 4 * count, range(1, model.n + 1), seed=seed)
        picked = [x for x in pool if x.tag.kind == "s" and x.tag.m2 == x.tag.w][:count]
        for x in picked:
            h = chain_height(model, x, memo)
            rep.check(h == x.tag.d + x.tag.m == dim_of(x.tag),
                      {"class": x.tag.name, "chain": h, "formula": dim_of(x.tag)})
        planes = enumerate_psub(model, 2) if psub2 else []
        for x in planes:
            h = chain_height(model, x, memo)
            rep.check(h == dim_of(x.tag) == 2, {"class": x.tag.name, "chain": h, "formula": dim_of(x.tag)})
    rep.universe = {"sections": len(picked), "psub2": len(planes)}
    return rep


def nested_class_check(model: Model, outer_dims=None) -> VerificationReport:
    """Every section nested in an l^m_{d,w} section has parameters bounded by it."""
    rep = VerificationReport("fact33", CERTIFIED)
    outer_dims = range(1, model.n + 1) if outer_dims is None else outer_dims
    seen: dict[Flat, ClassTag] = {}
    outers = 0
    with timed(rep):
        for x in all_sections(model, outer_dims):
            o = x.tag
            if o.kind != "s" or o.m2 != o.w:
                continue
            outers += 1
            for k in range(0, x.carrier.dim):
                for g in flats_of_dim(k, x.carrier):
                    mask = model.section_mask(g)
                    if not mask:
                        continue
                    c = carrier_of(model, mask)
                    if c not in seen:
                        seen[c] = classify_carrier(model, c)
                    t = seen[c]
                    ok = t.kind != "s" or (t.m <= o.m and t.m2 <= o.w and t.d <= o.d and t.w <= o.w)
                    rep.check(ok, {"outer": o.name, "inner": t.name})
    rep.universe = {"outer_sections": outers, "inner_sections": len(seen)}
    return rep


def restriction_check(model: Model, count: int = 60, seed: int = 0,
                      psub2: bool = False) -> VerificationReport:
    """restriction_params agrees with parameters read off the cone's own generators."""
    rep = VerificationReport("thm34", CERTIFIED)
    with timed(rep):
        xs = [model_full_section(model)]
        xs += random_sections(model, count, range(1, model.n + 1), seed=seed)
        if psub2:
            xs += enumerate_psub(model, 2)
        for x in xs:
            rp = restriction_params(x.tag)
            if rp == SEMIAFFINE:
                continue
            got = intrinsic_restriction(model, x)
            rep.check(got == rp, {"class": x.tag.name, "formula": list(rp), "intrinsic": list(got)})
    rep.universe = {"sections": len(xs)}
    return rep


def model_full_section(model: Model) -> LSub:
    return section(model, Flat.whole(model.n, model.q))


def semiaffine_check(model: Model, dims=None) -> VerificationReport:
    """Generator sections carry no cycle and any two points share at most one line."""
    rep = VerificationReport("thm35", CERTIFIED)
    n = 0
    with timed(rep):
        for x in all_sections(model, dims):
            if x.tag.kind != "g":
                continue
            n += 1
            inside = [L for L in model.lines if not L.mask & ~x.mask]
            cyc = sum(1 for C in model.cycles if not C.mask & ~x.mask)
            pairs: set = set()
            dup = 0
            for L in inside:
                pts = bits(L.mask)
                for i in range(len(pts)):
                    for j in range(i + 1, len(pts)):
                        if (pts[i], pts[j]) in pairs:
                            dup += 1
                        pairs.add((pts[i], pts[j]))
            rep.check(cyc == 0 and dup == 0, {"class": x.tag.name, "cycles": cyc, "shared_pairs": dup})
    rep.universe = {"generator_sections": n}
    return rep
