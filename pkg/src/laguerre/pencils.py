"""The Grassmann space of lines and cycles versus 2-subspaces, stars and pencils."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .algebra import Flat, flats_between
from .model import Model, bits
from .report import CERTIFIED, VerificationReport, timed
from .subspaces import (AFFINE_PLANE, CONIC_CONE, CYCLE, LAGUERRE_PLANE, PROJECTIVE_PLANE,
                        SEMIAFFINE_PLANE, LSub, conic_cones, dim_of, enumerate_psub, laguerre_planes,
                        section)

PROPER_AFFINE = "PROPER_AFFINE"
CONIC = "CONIC"
PROPER_PROJECTIVE = "PROPER_PROJECTIVE"
PROPER_SEMIAFFINE = "PROPER_SEMIAFFINE"
CYLINDER = "CYLINDER"
PARALLEL_SEMIAFFINE = "PARALLEL_SEMIAFFINE"
PARALLEL_AFFINE = "PARALLEL_AFFINE"

STAR_KINDS = (PROPER_AFFINE, CONIC, PROPER_PROJECTIVE, PROPER_SEMIAFFINE)
PARALLEL_KINDS = (CYLINDER, PARALLEL_SEMIAFFINE, PARALLEL_AFFINE)
PENCIL_KINDS = STAR_KINDS + PARALLEL_KINDS

ALL = "ALL"
PROJECTIVE_ONLY = "PROJECTIVE_ONLY"


# ------------------------------------------------------------ Grassmann space

@dataclass
class Grassmann:
    """Incidence of ℘1 (lines, then cycles) and ℘2 under inclusion.

    ``kinds`` holds the claimed sort of each ℘1 element ("A", "G" or "C");
    the definability checks compare formulas evaluated on ``contains`` /
    ``zs_of`` against these claims.
    """
    p1: list[LSub]
    kinds: list[str]
    p2: list[LSub]
    contains: list[list[int]] = field(default_factory=list)
    zs_of: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.contains:
            self._index()

    def _index(self):
        point_z: dict[int, int] = {}
        for zi, z in enumerate(self.p2):
            bit = 1 << zi
            for p in bits(z.mask):
                point_z[p] = point_z.get(p, 0) | bit
        self.zs_of = []
        self.contains = [[] for _ in self.p2]
        for yi, y in enumerate(self.p1):
            acc = -1
            for p in bits(y.mask):
                acc &= point_z.get(p, 0)
                if not acc:
                    break
            zs = bits(acc) if acc > 0 else []
            self.zs_of.append(zs)
            for zi in zs:
                self.contains[zi].append(yi)

    @property
    def lines(self) -> list[int]:
        return [i for i, k in enumerate(self.kinds) if k in "AG"]

    def with_p2(self, p2: list[LSub]) -> "Grassmann":
        return Grassmann(self.p1, list(self.kinds), list(p2))

    def with_kinds(self, kinds: list[str]) -> "Grassmann":
        return replace(self, kinds=list(kinds))


_GR_CACHE: dict[int, tuple] = {}


def build_grassmann(model: Model) -> Grassmann:
    key = id(model)
    if key not in _GR_CACHE:
        p1 = enumerate_psub(model, 1)
        kinds = [L.kind for L in model.lines] + ["C"] * len(model.cycles)
        _GR_CACHE[key] = (model, Grassmann(p1, kinds, enumerate_psub(model, 2)))
    return _GR_CACHE[key][1]


def gr_incident(y: LSub, z: LSub) -> bool:
    return not y.mask & ~z.mask


# ------------------------------------------------------------ stars and pencils

class NotAPointOfS(ValueError):
    pass


@dataclass(frozen=True)
class Star:
    center: int
    members: tuple[int, ...]


def star(model: Model, a: int, restrict: str = ALL) -> Star:
    if not 0 <= a < model.num_points:
        raise NotAPointOfS(f"{a} is not a point of S")
    ids = model.star_index[a]
    if restrict == PROJECTIVE_ONLY:
        ids = [i for i in ids if model.lines[i].kind == "G"]
    return Star(a, tuple(sorted(ids)))


@dataclass(frozen=True)
class Pencil:
    kind: str
    carrier: Flat
    anchor: int              # S position for star pencils, T point index for parallel ones
    members: tuple[int, ...]
    restricted: bool = False


def lines_in(model: Model, mask: int) -> list[int]:
    """Ids of lines whose points all lie in ``mask``."""
    cand = set()
    for p in bits(mask):
        cand.update(model.star_index[p])
    return sorted(i for i in cand if not model.lines[i].mask & ~mask)


class DimensionMismatch(ValueError):
    pass


def k_pencil(model: Model, x: LSub, z: LSub, k: int) -> list[LSub]:
    """{ Y : X ⊆ Y ⊆ Z, dim Y = k } by walking the flats between the carriers."""
    if dim_of(x.tag) != k - 1 or dim_of(z.tag) != k + 1:
        raise DimensionMismatch("k-pencil needs dim X = k-1 and dim Z = k+1")
    if x.mask & ~z.mask:
        raise DimensionMismatch("X is not contained in Z")
    out: dict[int, LSub] = {}
    for j in range(x.carrier.dim + 1, z.carrier.dim + 1):
        for f in flats_between(x.carrier, z.carrier, j):
            y = section(model, f)
            if y is None or y.carrier != f or dim_of(y.tag) != k:
                continue
            out.setdefault(y.mask, y)
    return [out[m] for m in sorted(out)]


def _star_pencils(model: Model, carriers, kind: str, restricted=False) -> list[Pencil]:
    out = []
    for z in carriers:
        inside = lines_in(model, z.mask)
        for a in bits(z.mask):
            mem = [i for i in inside if model.lines[i].mask >> a & 1]
            if restricted:
                mem = [i for i in mem if model.lines[i].kind == "G"]
            out.append(Pencil(kind, z.carrier, a, tuple(mem), restricted))
    return out


def _parallel_pencils(model: Model, carriers, kind: str) -> list[Pencil]:
    out = []
    for z in carriers:
        classes: dict[int, list[int]] = {}
        for i in lines_in(model, z.mask):
            L = model.lines[i]
            if L.kind == "A":
                classes.setdefault(L.tpoint, []).append(i)
        for t, mem in sorted(classes.items()):
            out.append(Pencil(kind, z.carrier, t, tuple(mem)))
    return out


def _laguerre_carriers(model: Model) -> list[LSub]:
    zs = [LSub(model.section_mask(f), f, LAGUERRE_PLANE) for f in laguerre_planes(model)]
    return sorted(zs, key=lambda z: bits(z.mask))


def _generator_carriers(model: Model, m: int, d: int, tag) -> list[LSub]:
    return [LSub(model.section_mask(f), f, tag) for f in model.generators(m, d)]


def enumerate_pencils(model: Model, kind: str, restricted: bool = False) -> list[Pencil]:
    """All pencils of one kind, deduplicated by member set, in member order.

    ``restricted`` applies to PROPER_SEMIAFFINE only and keeps the projective
    members.
    """
    if kind == PROPER_AFFINE:
        ps = _star_pencils(model, _generator_carriers(model, 2, 0, AFFINE_PLANE), kind)
    elif kind == PROPER_PROJECTIVE:
        ps = _star_pencils(model, _generator_carriers(model, 0, 2, PROJECTIVE_PLANE), kind)
    elif kind == PROPER_SEMIAFFINE:
        ps = _star_pencils(model, _generator_carriers(model, 1, 1, SEMIAFFINE_PLANE), kind, restricted)
    elif kind == CONIC:
        ct = conic_cones(model)
        ps = [Pencil(kind, ct.carrier(model, i), int(ct.vertex[i]), tuple(int(x) for x in ct.members[i]))
              for i in range(len(ct))]
    elif kind == CYLINDER:
        ps = _parallel_pencils(model, _laguerre_carriers(model), kind)
    elif kind == PARALLEL_SEMIAFFINE:
        ps = _parallel_pencils(model, _generator_carriers(model, 1, 1, SEMIAFFINE_PLANE), kind)
    elif kind == PARALLEL_AFFINE:
        ps = _parallel_pencils(model, _generator_carriers(model, 2, 0, AFFINE_PLANE), kind)
    else:
        raise ValueError(f"unknown pencil kind {kind}")
    seen: dict[tuple, Pencil] = {}
    for p in ps:
        seen.setdefault(p.members, p)
    return [seen[k] for k in sorted(seen)]


def is_antichain(pencils: list[Pencil]) -> tuple | None:
    """First pair (i, j) with members(i) a proper subset of members(j), or None."""
    by_line: dict[int, list[int]] = {}
    sets = [frozenset(p.members) for p in pencils]
    for i, s in enumerate(sets):
        for x in s:
            by_line.setdefault(x, []).append(i)
    for i, s in enumerate(sets):
        first = min(s)
        for j in by_line[first]:
            if j != i and len(sets[j]) > len(s) and s < sets[j]:
                return (i, j)
    return None


def pencil_sanity(model: Model, kinds=PENCIL_KINDS) -> VerificationReport:
    """Size, antichain, kind-specific membership and adjacency of every pencil."""
    rep = VerificationReport("pencil_sanity", CERTIFIED)
    counts = {}
    lines = model.lines
    with timed(rep):
        for kind in kinds:
            variants = [False, True] if kind == PROPER_SEMIAFFINE else [False]
            for restricted in variants:
                ps = enumerate_pencils(model, kind, restricted)
                label = kind + ("_RESTRICTED" if restricted else "")
                counts[label] = len(ps)
                bad = is_antichain(ps)
                rep.check(bad is None, {"kind": label, "subset_pair": bad})
                for p in ps:
                    mem = [lines[i] for i in p.members]
                    w = {"kind": label, "anchor": p.anchor, "members": list(p.members)}
                    rep.check(len(mem) >= 3, w)
                    if kind in STAR_KINDS:
                        rep.check(all(L.mask >> p.anchor & 1 for L in mem), w)
                    else:
                        rep.check(all(L.kind == "A" and L.tpoint == p.anchor for L in mem), w)
                    if kind in (CONIC, PROPER_PROJECTIVE):
                        rep.check(all(L.kind == "G" for L in mem), w)
                    if kind == PROPER_AFFINE:
                        rep.check(all(L.kind == "A" for L in mem), w)
                    if kind == PROPER_SEMIAFFINE:
                        n_aff = sum(L.kind == "A" for L in mem)
                        rep.check(n_aff == (0 if restricted else 1), w)
                    if kind == PARALLEL_SEMIAFFINE:
                        dirs = {L.tpoint for L in lines if L.kind == "A" and not L.mask & ~model.section_mask(p.carrier)}
                        rep.check(len(dirs) == 1, dict(w, directions=len(dirs)))
    rep.universe = counts
    return rep


def conic_pencil_routes_agree(model: Model, limit: int | None = None) -> VerificationReport:
    """Each conic pencil equals the 1-pencil of (vertex, cone) cut down to projective lines."""
    rep = VerificationReport("conic_routes", CERTIFIED)
    ct = conic_cones(model)
    n = len(ct) if limit is None else min(limit, len(ct))
    with timed(rep):
        for i in range(n):
            f = ct.carrier(model, i)
            z = section(model, f)
            v = int(ct.vertex[i])
            x = section(model, Flat.from_rows([model.point_coords(v)], model.n, model.q))
            ys = k_pencil(model, x, z, 1)
            got = sorted(model.line_index[y.carrier] for y in ys
                         if y.carrier in model.line_index and model.lines[model.line_index[y.carrier]].kind == "G")
            rep.check(z.tag == CONIC_CONE and got == [int(m) for m in ct.members[i]],
                      {"cone": i, "pencil": got, "members": ct.members[i].tolist()})
    rep.universe = {"cones": n}
    return rep
