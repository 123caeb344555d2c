"""Planar pencil spaces on lines, their maximal cliques, and what those cliques look like."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import Flat
from .model import Model, bits
from .pencils import (PROPER_AFFINE, PROPER_PROJECTIVE, PROPER_SEMIAFFINE, enumerate_pencils)
from .report import CERTIFIED, SAMPLED, VerificationReport, timed
from .subspaces import (AFFINE_PLANE, PROJECTIVE_PLANE, SEMIAFFINE_PLANE, ClassTag, section)

CASES = ("a", "b", "c")

T_OF_Z = "T_OF_Z"
A_Y = "A_Y"
SELECTOR = "SELECTOR"
SEMIAFFINE_AUG = "SEMIAFFINE_AUG"
UNRECOGNIZED = "UNRECOGNIZED"


class NotPartialLinear(ValueError):
    def __init__(self, pair, blocks):
        super().__init__(f"points {pair} lie on two blocks {blocks}")
        self.pair = pair
        self.blocks = blocks


@dataclass
class PencilSpace:
    case: str
    points: list[int]                 # model line ids
    blocks: list[tuple[int, ...]]     # local point numbers
    adj: list[int] = field(default_factory=list)
    block_masks: list[int] = field(default_factory=list)

    def __post_init__(self):
        n = len(self.points)
        self.adj = [0] * n
        self.block_masks = []
        for b in self.blocks:
            m = 0
            for x in b:
                m |= 1 << x
            self.block_masks.append(m)
            for x in b:
                self.adj[x] |= m
        for x in range(n):
            self.adj[x] &= ~(1 << x)


def build_pencil_space(model: Model, case: str) -> PencilSpace:
    """case a: projective lines with projective pencils; b: adds restricted
    semiaffine pencils; c: all lines with the full pencils of projective,
    semiaffine and affine planes."""
    if case == "a":
        pencils = enumerate_pencils(model, PROPER_PROJECTIVE)
        universe = [L.id for L in model.projective_lines]
    elif case == "b":
        pencils = (enumerate_pencils(model, PROPER_PROJECTIVE)
                   + enumerate_pencils(model, PROPER_SEMIAFFINE, restricted=True))
        universe = [L.id for L in model.projective_lines]
    elif case == "c":
        pencils = (enumerate_pencils(model, PROPER_PROJECTIVE)
                   + enumerate_pencils(model, PROPER_SEMIAFFINE)
                   + enumerate_pencils(model, PROPER_AFFINE))
        universe = [L.id for L in model.lines]
    else:
        raise ValueError(f"unknown case {case!r}")
    local = {lid: i for i, lid in enumerate(universe)}
    blocks = sorted({tuple(sorted(local[x] for x in p.members)) for p in pencils})
    owner: dict[tuple[int, int], int] = {}
    for bi, b in enumerate(blocks):
        for i in range(len(b)):
            for j in range(i + 1, len(b)):
                key = (b[i], b[j])
                if key in owner:
                    raise NotPartialLinear((universe[b[i]], universe[b[j]]), (owner[key], bi))
                owner[key] = bi
    return PencilSpace(case, universe, blocks)


# ------------------------------------------------------------ maximal cliques

def _bron_kerbosch(adj: list[int], r: list[int], p: int, x: int, out: list) -> None:
    if not p and not x:
        out.append(tuple(sorted(r)))
        return
    px = p | x
    pivot, best = -1, -1
    for u in bits(px):
        c = (adj[u] & p).bit_count()
        if c > best:
            pivot, best = u, c
    for v in bits(p & ~adj[pivot]):
        r.append(v)
        _bron_kerbosch(adj, r, p & adj[v], x & adj[v], out)
        r.pop()
        p &= ~(1 << v)
        x |= 1 << v


def maximal_cliques(ps: PencilSpace, vertex: int | None = None) -> list[tuple[int, ...]]:
    """All maximal cliques (vertex None) or all maximal cliques containing ``vertex``."""
    out: list = []
    if vertex is None:
        _bron_kerbosch(ps.adj, [], (1 << len(ps.points)) - 1, 0, out)
    else:
        _bron_kerbosch(ps.adj, [vertex], ps.adj[vertex], 0, out)
    return sorted(out)


# ------------------------------------------------------------ classification

@dataclass(frozen=True)
class CliqueLabel:
    kind: str
    carrier: str = ""                # class of the spanned subspace
    anchor: int = -1                 # common point for A_Y
    note: str = ""


def _span_section(model: Model, lids):
    rows = [r for lid in lids for r in model.lines[lid].flat.basis]
    return section(model, Flat.from_rows(rows, model.n, model.q))


def _lines_in(model: Model, mask: int, universe: set[int]) -> set[int]:
    out = set()
    for p in bits(mask):
        out.update(i for i in model.star_index[p] if i in universe and not model.lines[i].mask & ~mask)
    return out


def classify_clique(model: Model, ps: PencilSpace, clique) -> CliqueLabel:
    lids = [ps.points[i] for i in clique]
    universe = set(ps.points)
    members = set(lids)
    z = _span_section(model, lids)
    common = -1
    for L in lids:
        common &= model.lines[L].mask
    common_pts = bits(common) if common > 0 else []
    name = z.tag.name
    t, a = model.t, model.a
    max_gen = ClassTag.g(0, t) if ps.case == "a" else ClassTag.g(a, t)
    plane_tags = {"a": (PROJECTIVE_PLANE,), "b": (PROJECTIVE_PLANE, SEMIAFFINE_PLANE),
                  "c": (PROJECTIVE_PLANE,)}[ps.case]
    inside = _lines_in(model, z.mask, universe)
    if z.tag in plane_tags and members == inside:
        return CliqueLabel(T_OF_Z, name)
    if z.tag == max_gen:
        for p in common_pts:
            through = {i for i in inside if model.lines[i].mask >> p & 1}
            if members == through:
                return CliqueLabel(A_Y, name, p)
    if ps.case == "c" and z.tag == AFFINE_PLANE:
        dirs = {model.lines[i].tpoint for i in inside}
        got = [model.lines[i].tpoint for i in lids]
        if members <= inside and sorted(got) == sorted(dirs):
            return CliqueLabel(SELECTOR, name)
    if ps.case == "c" and z.tag == SEMIAFFINE_PLANE:
        proj = {i for i in inside if model.lines[i].kind == "G"}
        extra = members - proj
        if proj <= members and len(extra) == 1 and model.lines[next(iter(extra))].kind == "A":
            return CliqueLabel(SEMIAFFINE_AUG, name)
    note = f"span {name}, {len(lids)} lines"
    if len(common_pts) == 1:
        note += f", all through point {common_pts[0]}"
    return CliqueLabel(UNRECOGNIZED, name, common_pts[0] if len(common_pts) == 1 else -1, note)


# ------------------------------------------------------------ induced dimension

def is_strong_subspace(ps: PencilSpace, clique) -> bool:
    m = 0
    for x in clique:
        m |= 1 << x
    return all((b & m).bit_count() < 2 or not b & ~m for b in ps.block_masks)


def _closure(ps: PencilSpace, m: int, blocks: list[int]) -> int:
    changed = True
    while changed:
        changed = False
        for b in blocks:
            if (b & m).bit_count() >= 2 and b & ~m:
                m |= b
                changed = True
    return m


def induced_dimension(ps: PencilSpace, clique) -> int:
    """Generators needed to close up to the clique, minus one (greedy, in point order)."""
    target = 0
    for x in clique:
        target |= 1 << x
    blocks = [b & target for b in ps.block_masks if (b & target).bit_count() >= 2]
    cur, gens = 0, 0
    for x in sorted(clique):
        if not cur >> x & 1:
            cur = _closure(ps, cur | 1 << x, blocks)
            gens += 1
        if cur == target:
            break
    return gens - 1


def spans_plane_lines(model: Model, ps: PencilSpace, clique) -> bool:
    """The clique generates, inside the pencil space, all lines of its spanned plane."""
    m = 0
    for x in clique:
        m |= 1 << x
    got = _closure(ps, m, ps.block_masks)
    z = _span_section(model, [ps.points[i] for i in clique])
    local = {lid: i for i, lid in enumerate(ps.points)}
    want = 0
    for lid in _lines_in(model, z.mask, set(ps.points)):
        want |= 1 << local[lid]
    return got == want


def plane_type(q: int, dim: int, size: int) -> str:
    holes = (q ** (dim + 1) - 1) // (q - 1) - size
    if holes == 0:
        return "projective"
    if holes == 1:
        return "semiaffine"
    if holes >= q:
        return "affine"
    return f"holes={holes}"


def expected_dimension(model: Model, case: str, kind: str) -> int | None:
    if kind == T_OF_Z:
        return 2
    if kind == A_Y:
        return model.t - 1 if case == "a" else model.t + model.a - 1
    return None


# ------------------------------------------------------------ verification

def clique_report(model: Model, case: str, scope: str | None = None, vertices: int = 20,
                  seed: int = 0) -> VerificationReport:
    """Enumerate maximal cliques, classify each one, and check dimensions of strong ones.

    scope "full" enumerates every maximal clique; "neighbourhood" only those
    through ``vertices`` random points of the pencil space.
    """
    ps = build_pencil_space(model, case)
    n = len(ps.points)
    if scope is None:
        scope = "full" if n <= 100 else "neighbourhood"
    rep = VerificationReport(f"cliques_{case}", CERTIFIED if scope == "full" else SAMPLED)
    labels: dict[str, int] = {}
    types: dict[str, set] = {}
    dims: dict[str, set] = {}
    with timed(rep):
        if scope == "full":
            centres = [None]
        else:
            rng = random.Random(seed)
            centres = sorted(rng.sample(range(n), min(vertices, n))) if n else []
        seen = set()
        for v in centres:
            for cl in maximal_cliques(ps, v):
                if cl in seen:
                    continue
                seen.add(cl)
                lab = classify_clique(model, ps, cl)
                labels[lab.kind] = labels.get(lab.kind, 0) + 1
                witness = {"clique": [ps.points[i] for i in cl], "label": lab.kind,
                           "span": lab.carrier, "note": lab.note}
                if not rep.check(lab.kind != UNRECOGNIZED, witness):
                    continue
                if case == "c" and lab.kind == SELECTOR:
                    dirs = [model.lines[ps.points[i]].tpoint for i in cl]
                    rep.check(len(set(dirs)) == len(dirs), dict(witness, directions=dirs))
                if case == "c" and lab.kind in (SELECTOR, SEMIAFFINE_AUG):
                    rep.check(spans_plane_lines(model, ps, cl), dict(witness, reason="span in the pencil space"))
                if is_strong_subspace(ps, cl):
                    d = induced_dimension(ps, cl)
                    dims.setdefault(lab.kind, set()).add(d)
                    types.setdefault(lab.kind, set()).add(plane_type(model.q, d, len(cl)))
                    want = expected_dimension(model, case, lab.kind)
                    if want is not None:
                        rep.check(d == want, dict(witness, dimension=d, expected=want))
    rep.universe = {"points": n, "blocks": len(ps.blocks), "cliques": len(seen)}
    rep.details = {
        "scope": scope,
        "labels": dict(sorted(labels.items())),
        "dimensions": {k: sorted(v) for k, v in sorted(dims.items())},
        "types": {k: sorted(v) for k, v in sorted(types.items())},
        "distinguishable": _distinguishable(types),
    }
    return rep


def _distinguishable(types: dict[str, set]) -> bool | None:
    if T_OF_Z not in types or A_Y not in types:
        return None
    return types[T_OF_Z] != types[A_Y]
