import pytest

from laguerre.algebra import Flat
from laguerre.pencils import (ALL, CONIC, CYLINDER, PARALLEL_AFFINE, PARALLEL_SEMIAFFINE,
                              PENCIL_KINDS, PROJECTIVE_ONLY, PROPER_AFFINE, PROPER_SEMIAFFINE,
                              DimensionMismatch, NotAPointOfS, Pencil, build_grassmann,
                              conic_pencil_routes_agree, enumerate_pencils, is_antichain, k_pencil,
                              pencil_sanity, star)
from laguerre.subspaces import SEMIAFFINE_PLANE, enumerate_psub, section

from conftest import M0, M1, model_for


def point_section(m, p):
    return section(m, Flat.from_rows([m.point_coords(p)], m.n, m.q))


def test_star_sizes_m0(m0):
    for a in range(m0.num_points):
        full = star(m0, a)
        proj = star(m0, a, PROJECTIVE_ONLY)
        assert len(full.members) == len(proj.members) + 1
        # two base generators through the image point, q lifts of each through a
        assert len(proj.members) == 2 * m0.q


def test_star_rejects_outside_points(m0):
    with pytest.raises(NotAPointOfS):
        star(m0, m0.num_points)
    with pytest.raises(NotAPointOfS):
        star(m0, -1)


@pytest.mark.parametrize("cfg,kind,count", [
    (M0, PROPER_SEMIAFFINE, 96), (M0, CYLINDER, 24), (M0, PARALLEL_SEMIAFFINE, 8),
    (M0, CONIC, 0), (M0, PROPER_AFFINE, 0), (M0, PARALLEL_AFFINE, 0),
    (M1, PROPER_SEMIAFFINE, 3456), (M1, CYLINDER, 2592), (M1, PARALLEL_SEMIAFFINE, 288),
    (M1, PROPER_AFFINE, 144), (M1, PARALLEL_AFFINE, 64),
])
def test_pencil_counts(cfg, kind, count):
    assert len(enumerate_pencils(model_for(cfg), kind)) == count


def test_semiaffine_pencils_match_k_pencil_walk(m0):
    got = {p.members for p in enumerate_pencils(m0, PROPER_SEMIAFFINE)}
    want = set()
    for z in enumerate_psub(m0, 2):
        if z.tag != SEMIAFFINE_PLANE:
            continue
        for a in z.points:
            ys = k_pencil(m0, point_section(m0, a), z, 1)
            ids = sorted(m0.line_index[y.carrier] for y in ys if y.carrier in m0.line_index)
            want.add(tuple(ids))
    assert got == want


def test_restricted_semiaffine_pencils_drop_the_affine_line(m0):
    full = enumerate_pencils(m0, PROPER_SEMIAFFINE)
    restricted = enumerate_pencils(m0, PROPER_SEMIAFFINE, restricted=True)
    assert {tuple(i for i in p.members if m0.lines[i].kind == "G") for p in full} == \
        {p.members for p in restricted}


@pytest.mark.parametrize("cfg", [M0, M1])
def test_pencil_sanity(cfg):
    rep = pencil_sanity(model_for(cfg))
    assert rep.success, rep.first_counterexample


def test_antichain_detects_nesting():
    f = Flat.empty(1, 3)
    ps = [Pencil("X", f, 0, (1, 2, 3)), Pencil("X", f, 0, (1, 2, 3, 4)), Pencil("X", f, 0, (5, 6, 7))]
    assert is_antichain(ps) == (0, 1)
    assert is_antichain([ps[0], ps[2]]) is None


def test_k_pencil_dimension_guard(m0):
    z = next(z for z in enumerate_psub(m0, 2) if z.tag == SEMIAFFINE_PLANE)
    with pytest.raises(DimensionMismatch):
        k_pencil(m0, z, z, 1)
    outside = next(p for p in range(m0.num_points) if not z.mask >> p & 1)
    with pytest.raises(DimensionMismatch):
        k_pencil(m0, point_section(m0, outside), z, 1)


def test_grassmann_incidence_is_containment(m0):
    gr = build_grassmann(m0)
    assert len(gr.p1) == len(m0.lines) + len(m0.cycles)
    assert gr.lines == list(range(len(m0.lines)))
    for zi, z in enumerate(gr.p2[:30]):
        want = [yi for yi, y in enumerate(gr.p1) if not y.mask & ~z.mask]
        assert gr.contains[zi] == want


def test_conic_routes_agree_m2(m2):
    rep = conic_pencil_routes_agree(m2, limit=15)
    assert rep.success and rep.instantiations == 15


def test_all_kinds_known(m0):
    with pytest.raises(ValueError):
        enumerate_pencils(m0, "SPIRAL")
    assert len(PENCIL_KINDS) == 7 and ALL != PROJECTIVE_ONLY
