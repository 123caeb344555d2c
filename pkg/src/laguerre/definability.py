"""Formulas over the Grassmann space and over the cone structure, evaluated by indexed loops.

Every ``define_*`` function reads incidence only.  The matching ``check_*``
function compares the result with the classes the model itself claims.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .algebra import Flat, complement_rows, flats_between, rank
from .model import Model, bits
from .pencils import Grassmann
from .report import CERTIFIED, SAMPLED, VerificationReport, timed
from .subspaces import (CONIC_CONE, LAGUERRE_PLANE, MINKOWSKI_PLANE, PSUB2_TAGS, classify_carrier,
                        conic_cones, dim_of, scanned_psub2, section)

CONE_TAGS = (LAGUERRE_PLANE, CONIC_CONE)
CONE_PAIR = "CONE_PAIR"
PLANE_PAIR = "PLANE_PAIR"


# ------------------------------------------------------------ Grassmann formulas

@dataclass
class PairCover:
    """Pairs of ℘1 elements lying together in some 2-subspace.

    ``keys`` are pair codes i*N+j (i<j), ``zs`` the 2-subspace of each
    occurrence; both sorted by key.
    """
    n: int
    keys: np.ndarray
    zs: np.ndarray

    @classmethod
    def of(cls, gr: Grassmann) -> "PairCover":
        n = len(gr.p1)
        ks, zs = [], []
        for zi, mem in enumerate(gr.contains):
            if len(mem) < 2:
                continue
            a = np.array(mem, dtype=np.int64)
            i, j = np.triu_indices(len(a), 1)
            ks.append(a[i] * n + a[j])
            zs.append(np.full(len(i), zi, dtype=np.int64))
        keys = np.concatenate(ks) if ks else np.zeros(0, dtype=np.int64)
        zarr = np.concatenate(zs) if zs else np.zeros(0, dtype=np.int64)
        order = np.lexsort((zarr, keys))
        return cls(n, keys[order], zarr[order])

    def multiplicity(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(unique keys, first occurrence, count)."""
        return np.unique(self.keys, return_index=True, return_counts=True)

    def doubly_covered(self) -> np.ndarray:
        u, _, c = self.multiplicity()
        return u[c >= 2]


def check_two_in_two(model: Model, gr: Grassmann) -> VerificationReport:
    """Two ℘1 elements in two common 2-subspaces: lines in cones or Minkowski planes, ∥ or π."""
    rep = VerificationReport("two_in_two", CERTIFIED)
    allowed = set(CONE_TAGS) | {MINKOWSKI_PLANE}
    with timed(rep):
        cover = PairCover.of(gr)
        u, first, cnt = cover.multiplicity()
        for key, f, c in zip(u[cnt >= 2], first[cnt >= 2], cnt[cnt >= 2]):
            i, j = divmod(int(key), cover.n)
            zs = [int(z) for z in cover.zs[f:f + c]]
            ki, kj = gr.kinds[i], gr.kinds[j]
            lines_ok = ki in "AG" and kj in "AG"
            tags_ok = all(gr.p2[z].tag in allowed for z in zs)
            rel_ok = False
            if lines_ok:
                li, lj = model.lines[i], model.lines[j]
                par = li.kind == "A" and lj.kind == "A" and li.tpoint == lj.tpoint
                rel_ok = par or model.pi_adjacent(li, lj)
            for _ in range(c * (c - 1) // 2):
                rep.check(lines_ok and tags_ok and rel_ok,
                          {"Y": i, "Y2": j, "Z": zs, "kinds": [ki, kj],
                           "classes": [gr.p2[z].tag.name for z in zs]})
    rep.universe = {"p1": len(gr.p1), "p2": len(gr.p2)}
    rep.details = {"doubly_covered_pairs": int((cnt >= 2).sum())}
    return rep


def define_lines(gr: Grassmann, cover: PairCover | None = None) -> set[int]:
    cover = cover or PairCover.of(gr)
    d = cover.doubly_covered()
    return set((d // cover.n).tolist()) | set((d % cover.n).tolist())


def define_cones_and_minkowski(gr: Grassmann, lines: set[int] | None = None,
                               cover: PairCover | None = None) -> tuple[set[int], set[int]]:
    cover = cover or PairCover.of(gr)
    lines = define_lines(gr, cover) if lines is None else lines
    double = set(cover.doubly_covered().tolist())
    n = cover.n
    cones, mink = set(), set()
    for zi, mem in enumerate(gr.contains):
        ls = [y for y in mem if y in lines]
        pairs = [ls[a] * n + ls[b] for a in range(len(ls)) for b in range(a + 1, len(ls))]
        if not pairs:
            continue
        covered = [p in double for p in pairs]
        if all(covered):
            cones.add(zi)
        elif any(covered):
            mink.add(zi)
    return cones, mink


def define_line_split(gr: Grassmann):
    """(G*, A*, projective cones*, affine cones*) from incidence alone."""
    cover = PairCover.of(gr)
    lines = define_lines(gr, cover)
    cones, mink = define_cones_and_minkowski(gr, lines, cover)
    g_star = {y for z in mink for y in gr.contains[z] if y in lines}
    a_star = lines - g_star
    proj = {z for z in cones if any(y in g_star for y in gr.contains[z])}
    return g_star, a_star, proj, cones - proj


def _compare(rep: VerificationReport, name: str, got: set, truth: set) -> None:
    for x in sorted(got | truth):
        rep.check((x in got) == (x in truth), {"set": name, "element": x,
                                              "formula": x in got, "truth": x in truth})


def check_define_lines(gr: Grassmann) -> VerificationReport:
    rep = VerificationReport("define_lines", CERTIFIED)
    with timed(rep):
        got = define_lines(gr)
        truth = {i for i, k in enumerate(gr.kinds) if k in "AG"}
        _compare(rep, "lines", got, truth)
    rep.universe = {"p1": len(gr.p1), "p2": len(gr.p2)}
    rep.details = {"selected": len(got)}
    return rep


def check_cones_minkowski(gr: Grassmann) -> VerificationReport:
    rep = VerificationReport("define_cones_minkowski", CERTIFIED)
    with timed(rep):
        cones, mink = define_cones_and_minkowski(gr)
        _compare(rep, "cones", cones, {i for i, z in enumerate(gr.p2) if z.tag in CONE_TAGS})
        _compare(rep, "minkowski", mink, {i for i, z in enumerate(gr.p2) if z.tag == MINKOWSKI_PLANE})
    rep.universe = {"p1": len(gr.p1), "p2": len(gr.p2)}
    rep.details = {"cones": len(cones), "minkowski": len(mink)}
    return rep


def check_line_split(gr: Grassmann) -> VerificationReport:
    rep = VerificationReport("line_split", CERTIFIED)
    with timed(rep):
        g_star, a_star, proj, aff = define_line_split(gr)
        _compare(rep, "G", g_star, {i for i, k in enumerate(gr.kinds) if k == "G"})
        _compare(rep, "A", a_star, {i for i, k in enumerate(gr.kinds) if k == "A"})
        _compare(rep, "projective_cones", proj, {i for i, z in enumerate(gr.p2) if z.tag == CONIC_CONE})
        _compare(rep, "affine_cones", aff, {i for i, z in enumerate(gr.p2) if z.tag == LAGUERRE_PLANE})
    rep.universe = {"p1": len(gr.p1), "p2": len(gr.p2)}
    rep.details = {"G": len(g_star), "A": len(a_star), "projective_cones": len(proj),
                   "affine_cones": len(aff)}
    return rep


def census_check(model: Model, gr: Grassmann) -> VerificationReport:
    """Every 2-subspace has dimension 2 and the family equals an independent flat sweep."""
    rep = VerificationReport("fact32", CERTIFIED)
    with timed(rep):
        for zi, z in enumerate(gr.p2):
            t = classify_carrier(model, z.carrier)
            rep.check(t == z.tag and dim_of(t) == 2 and z.mask == model.section_mask(z.carrier),
                      {"Z": zi, "claimed": z.tag.name, "classified": t.name})
        swept, _ = scanned_psub2(model)
        have = {(z.mask, z.tag) for z in gr.p2}
        want = {(z.mask, z.tag) for z in swept}
        for key in sorted(have ^ want, key=lambda k: (k[1].name, k[0])):
            rep.fail({"p2_element": bits(key[0]), "class": key[1].name,
                      "in_model": key in have, "in_sweep": key in want})
        rep.check(len(gr.p2) == len(swept), {"model_p2": len(gr.p2), "sweep_p2": len(swept)})
    rep.universe = {"p2": len(gr.p2), "swept": len(swept)}
    counts: dict[str, int] = {}
    for z in gr.p2:
        counts[z.tag.name] = counts.get(z.tag.name, 0) + 1
    rep.details = {"classes": dict(sorted(counts.items()))}
    return rep


def minkowski_descent(model: Model, line_ids=None) -> VerificationReport:
    """Reach a Minkowski plane containing each projective line by hyperplane steps.

    Start from a complement of T through the line, then repeatedly pass to a
    hyperplane of the current carrier that contains the line and whose section
    is again a ruled nondegenerate quadric.  At most dim(B) steps are allowed.
    """
    rep = VerificationReport("minkowski_descent", CERTIFIED)
    n, q = model.n, model.q
    bound = model.nu - 1
    ids = [L.id for L in model.projective_lines] if line_ids is None else list(line_ids)
    steps_hist: dict[int, int] = {}
    with timed(rep):
        for lid in ids:
            L = model.lines[lid]
            rows = list(L.flat.basis) + complement_rows(L.flat, _complement_of_t(model, L.flat))
            cur = Flat.from_rows(rows, n, q)
            tag = classify_carrier(model, cur)
            steps = 0
            while tag != MINKOWSKI_PLANE and steps < bound:
                nxt = None
                for h in flats_between(L.flat, cur, cur.dim - 1):
                    t = classify_carrier(model, h)
                    if t.kind == "s" and t.m == 0 and t.m2 == t.w and t.w >= 1 and t.d == tag.d - 1:
                        nxt = (h, t)
                        break
                if nxt is None:
                    break
                cur, tag = nxt
                steps += 1
            steps_hist[steps] = steps_hist.get(steps, 0) + 1
            rep.check(tag == MINKOWSKI_PLANE, {"line": lid, "steps": steps, "reached": tag.name})
    rep.universe = {"lines": len(ids)}
    rep.details = {"steps": dict(sorted(steps_hist.items())), "bound": bound}
    return rep


def _complement_of_t(model: Model, flat: Flat) -> Flat:
    """A complement of T containing ``flat`` (which must miss T)."""
    rows = list(flat.basis)
    tb = list(model.T.basis)
    for i in range(model.a, model.n + 1):
        e = [int(j == i) for j in range(model.n + 1)]
        if rank(rows + [e] + tb, model.q) > len(rows) + len(tb):
            rows.append(e)
    return Flat.from_rows(rows, model.n, model.q)


# ------------------------------------------------------------ cone structure

class ConeHypothesisUnmet(ValueError):
    pass


@dataclass
class ConicStructure:
    """⟨G, conic cones, ⊆⟩ with lines renumbered 0..g-1.

    ``members`` holds local line numbers; ``line_ids`` maps them back to the
    model for comparisons with geometric ground truth.
    """
    line_ids: np.ndarray
    members: np.ndarray
    missing_vertices: list[int]
    _rho: sparse.csr_matrix | None = None

    @property
    def g(self) -> int:
        return len(self.line_ids)

    def rho(self) -> sparse.csr_matrix:
        if self._rho is None:
            self._rho = define_adjacency(self)
        return self._rho


def conic_structure(model: Model, strict: bool = True) -> ConicStructure:
    if model.nu < 3:
        raise ConeHypothesisUnmet("the cone structure needs a base of dimension at least 2")
    ct = conic_cones(model)
    gids = np.array([L.id for L in model.projective_lines], dtype=np.int64)
    local = np.full(len(model.lines), -1, dtype=np.int64)
    local[gids] = np.arange(len(gids))
    have = set(ct.vertex.tolist())
    missing = [p for p in range(model.num_points) if p not in have]
    if strict and missing:
        raise ConeHypothesisUnmet(f"point {missing[0]} is the vertex of no conic cone "
                                  f"({len(missing)} such points)")
    members = local[ct.members] if len(ct) else np.zeros((0, model.q + 1), dtype=np.int64)
    return ConicStructure(gids, members, missing)


def define_adjacency(c: ConicStructure) -> sparse.csr_matrix:
    """L1 ρ L2: a common cone, or two lines M1 ≠ M2 sharing a cone with each of them."""
    g, k = c.g, c.members.shape[1] if len(c.members) else 0
    if not len(c.members):
        return sparse.csr_matrix((g, g), dtype=bool)
    ncone = len(c.members)
    rows = np.repeat(np.arange(ncone), k)
    inc = sparse.csr_matrix((np.ones(ncone * k, dtype=np.int32), (c.members.ravel(), rows)), shape=(g, ncone))
    co = inc @ inc.T
    i, j = np.triu_indices(k, 1)
    pm = np.sort(c.members[:, np.stack([i, j], axis=1)], axis=2)
    codes = (pm[:, :, 0] * g + pm[:, :, 1])                # (ncone, npairs)
    lines = np.repeat(c.members[:, None, :], codes.shape[1], axis=1).ravel()
    pcodes = np.repeat(codes[:, :, None], k, axis=2).ravel()
    uniq = np.unique(pcodes * g + lines)
    pair_col = np.unique(uniq // g, return_inverse=True)[1]
    pin = sparse.csr_matrix((np.ones(len(uniq), dtype=np.int32), (uniq % g, pair_col)),
                            shape=(g, int(pair_col.max()) + 1))
    rho = ((co + pin @ pin.T) > 0).tolil()
    rho.setdiag(False)
    return rho.tocsr()


def _pi_matrix(model: Model, c: ConicStructure) -> sparse.csr_matrix:
    g = c.g
    r, col = [], []
    for li, lid in enumerate(c.line_ids):
        for p in model.lines[int(lid)].points:
            r.append(li)
            col.append(p)
    inc = sparse.csr_matrix((np.ones(len(r), dtype=np.int32), (r, col)), shape=(g, model.num_points))
    pi = (inc @ inc.T > 0).tolil()
    pi.setdiag(False)
    return pi.tocsr()


def _vertex_coverage(rep: VerificationReport, c: ConicStructure) -> None:
    for p in c.missing_vertices:
        rep.fail({"point": p, "reason": "vertex of no conic cone"})


def _sample(n: int, k: int | None, seed: int) -> list[int]:
    if k is None or k >= n:
        return list(range(n))
    return sorted(random.Random(seed).sample(range(n), k))


def check_adjacency(model: Model, c: ConicStructure, mode=CERTIFIED, seed=0, samples=None) -> VerificationReport:
    """ρ equals π on projective lines (all pairs, or sampled rows against every column)."""
    rep = VerificationReport("adjacency", mode)
    with timed(rep):
        _vertex_coverage(rep, c)
        rho = c.rho()
        pi = _pi_matrix(model, c)
        outer = _sample(c.g, samples if mode == SAMPLED else None, seed)
        for i in outer:
            a = set(rho.indices[rho.indptr[i]:rho.indptr[i + 1]].tolist())
            b = set(pi.indices[pi.indptr[i]:pi.indptr[i + 1]].tolist())
            start = i + 1 if mode == CERTIFIED else 0
            bad = sorted(j for j in a ^ b if j >= start)
            for j in bad:
                rep.fail({"L1": int(c.line_ids[i]), "L2": int(c.line_ids[j]),
                          "rho": j in a, "pi": j in b})
            rep.instantiations += c.g - start - (0 if start else 1)
    rep.universe = {"G": c.g, "cones": len(c.members)}
    rep.details = {"rho_pairs": int(rho.nnz // 2), "pi_pairs": int(pi.nnz // 2)}
    return rep


def vertex_test(c: ConicStructure, cone: int, line: int) -> bool:
    """Every line of the cone is the given line or ρ-adjacent to it."""
    rho = c.rho()
    row = set(rho.indices[rho.indptr[line]:rho.indptr[line + 1]].tolist())
    return all(m == line or int(m) in row for m in c.members[cone])


def _vertex_sets(c: ConicStructure, cones) -> dict[int, np.ndarray]:
    """cone -> boolean vector of lines passing the vertex test."""
    rho = c.rho()
    out = {}
    for s in cones:
        acc = np.ones(c.g, dtype=bool)
        for m in c.members[s]:
            row = np.zeros(c.g, dtype=bool)
            row[rho.indices[rho.indptr[m]:rho.indptr[m + 1]]] = True
            row[m] = True
            acc &= row
        out[s] = acc
    return out


def _cone_vertices(model: Model) -> np.ndarray:
    return conic_cones(model).vertex


def _line_point_matrix(model: Model, c: ConicStructure) -> np.ndarray:
    m = np.zeros((c.g, model.num_points), dtype=bool)
    for li, lid in enumerate(c.line_ids):
        m[li, list(model.lines[int(lid)].points)] = True
    return m


def check_vertex_test(model: Model, c: ConicStructure, mode=CERTIFIED, seed=0, samples=None) -> VerificationReport:
    """vertex_test(S', L) holds exactly when the vertex of S' lies on L."""
    rep = VerificationReport("vertex_test", mode)
    with timed(rep):
        _vertex_coverage(rep, c)
        cones = _sample(len(c.members), samples if mode == SAMPLED else None, seed)
        vs = _vertex_sets(c, cones)
        on = _line_point_matrix(model, c)
        verts = _cone_vertices(model)
        for s in cones:
            truth = on[:, verts[s]]
            bad = np.flatnonzero(vs[s] != truth)
            for li in bad:
                rep.fail({"cone": s, "line": int(c.line_ids[li]), "formula": bool(vs[s][li]),
                          "vertex_on_line": bool(truth[li])})
            rep.instantiations += c.g
    rep.universe = {"G": c.g, "cones": len(c.members)}
    return rep


def check_two_generator_lemma(model: Model, c: ConicStructure, mode=CERTIFIED, seed=0,
                              samples=None) -> VerificationReport:
    """A line ρ-adjacent to two distinct generators of a cone passes through its vertex."""
    rep = VerificationReport("two_generators", mode)
    rho = c.rho()
    with timed(rep):
        _vertex_coverage(rep, c)
        cones = _sample(len(c.members), samples if mode == SAMPLED else None, seed)
        on = _line_point_matrix(model, c)
        verts = _cone_vertices(model)
        for s in cones:
            mem = c.members[s]
            hits = np.asarray(rho[mem].sum(axis=0)).ravel()
            hits[mem] = 0
            for li in range(c.g):
                if hits[li] >= 2:
                    rep.check(bool(on[li, verts[s]]), {"cone": s, "line": int(c.line_ids[li])})
                else:
                    rep.instantiations += 1
    rep.universe = {"G": c.g, "cones": len(c.members)}
    return rep


def reconstruct_point_line(model: Model, c: ConicStructure, mode=CERTIFIED, seed=0,
                           samples=None) -> VerificationReport:
    """Vertex-test sets of cones, deduplicated, against the projective stars of points."""
    rep = VerificationReport("reconstruction", mode)
    with timed(rep):
        _vertex_coverage(rep, c)
        cones = _sample(len(c.members), samples if mode == SAMPLED else None, seed)
        vs = _vertex_sets(c, cones)
        pstar: dict[bytes, list[int]] = {}
        for s in cones:
            pstar.setdefault(np.packbits(vs[s]).tobytes(), []).append(s)
        on = _line_point_matrix(model, c)
        stars = {np.packbits(on[:, p]).tobytes(): p for p in range(model.num_points)}
        verts = _cone_vertices(model)
        image: dict[int, bytes] = {}
        for key, cs in pstar.items():
            p = stars.get(key)
            rep.check(p is not None, {"reason": "element is not a star", "cones": cs[:3]})
            if p is not None:
                image[p] = key
                rep.check(all(verts[s] == p for s in cs), {"reason": "cone vertex differs", "point": p})
        rep.instantiations += c.g * len(cones)
        if mode == CERTIFIED:
            for p in range(model.num_points):
                rep.check(p in image, {"reason": "point without image", "point": p})
            rep.check(len(pstar) == model.num_points, {"P*": len(pstar), "S": model.num_points})
        for p, key in sorted(image.items()):
            vec = np.unpackbits(np.frombuffer(key, dtype=np.uint8))[:c.g].astype(bool)
            rep.check(bool((vec == on[:, p]).all()), {"reason": "incidence differs", "point": p})
    rep.universe = {"G": c.g, "cones": len(cones), "S": model.num_points}
    rep.details = {"P*": len(pstar)}
    return rep


def classify_adjacent_pair(c: ConicStructure, l1: int, l2: int) -> str:
    """CONE_PAIR when every two lines adjacent to both l1 and l2 are adjacent or equal."""
    return _pair_formula(c, l1, l2)[0]


def _pair_formula(c: ConicStructure, l1: int, l2: int) -> tuple[str, int]:
    """(label, number of (K1, K2) instances evaluated)."""
    rho = c.rho()
    r1 = set(rho.indices[rho.indptr[l1]:rho.indptr[l1 + 1]].tolist())
    if l2 not in r1:
        raise ValueError("lines are not adjacent")
    r2 = set(rho.indices[rho.indptr[l2]:rho.indptr[l2 + 1]].tolist())
    common = sorted(r1 & r2)
    evaluated = 0
    for x in common:
        rx = set(rho.indices[rho.indptr[x]:rho.indptr[x + 1]].tolist())
        for y in common:
            evaluated += 1
            if y != x and y not in rx:
                return PLANE_PAIR, evaluated
    return CONE_PAIR, evaluated


def check_adjacent_pairs(model: Model, c: ConicStructure, mode=CERTIFIED, seed=0,
                         samples=None) -> VerificationReport:
    """CONE_PAIR exactly when the two lines span a plane not contained in S0."""
    rep = VerificationReport("adjac2cone", mode)
    rho = c.rho()
    counts = {CONE_PAIR: 0, PLANE_PAIR: 0}
    with timed(rep):
        _vertex_coverage(rep, c)
        coo = sparse.triu(rho, 1).tocoo()
        pairs = sorted(zip(coo.row.tolist(), coo.col.tolist()))
        picked = [pairs[i] for i in _sample(len(pairs), samples if mode == SAMPLED else None, seed)]
        inner = 0
        for i, j in picked:
            got, k = _pair_formula(c, i, j)
            inner += k
            counts[got] += 1
            f1, f2 = model.lines[int(c.line_ids[i])].flat, model.lines[int(c.line_ids[j])].flat
            plane = Flat.from_rows(list(f1.basis) + list(f2.basis), model.n, model.q)
            truth = PLANE_PAIR if model.in_s0_flat(plane) else CONE_PAIR
            rep.check(got == truth, {"L1": int(c.line_ids[i]), "L2": int(c.line_ids[j]),
                                     "formula": got, "truth": truth})
    rep.universe = {"G": c.g, "adjacent_pairs": len(pairs)}
    # one instantiation per evaluated (L1, L2, K1, K2) body
    rep.instantiations = inner
    rep.details = dict(counts, pairs_checked=len(picked))
    return rep
