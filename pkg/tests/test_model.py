import itertools

import pytest

from laguerre.algebra import Flat
from laguerre.model import ConfigError, ModelConfig, build_model, scan_cycles, scan_lines

from conftest import M0, M1, M3, model_for


def quadric_points(kind_size_q):
    """Points on the base quadric, counted by brute force."""
    from laguerre.algebra import enumerate_points, standard_form
    kind, size, q = kind_size_q
    f = standard_form(kind, size, q)
    return sum(1 for p in enumerate_points(size - 1, q) if f.value(p) == 0)


@pytest.mark.parametrize("cfg,size", [(M0, 48), (M1, 144), (M3, 180)])
def test_point_count(cfg, size):
    m = model_for(cfg)
    assert m.num_points == size
    assert size == m.q ** m.a * quadric_points((cfg.quadric, cfg.base_dim + 1, cfg.q))


def test_point_count_m2(m2):
    assert m2.num_points == 390


def test_params_m0(m0):
    assert m0.params == {"nu": 4, "t": 1, "a": 1}
    assert m0.n == 4 and m0.quadric_dim == 2


def test_params_m2(m2):
    assert m2.params == {"nu": 6, "t": 2, "a": 1}


@pytest.mark.parametrize("cfg", [M0, M1, M3])
def test_lines_match_full_scan(cfg):
    m = model_for(cfg)
    aff, proj = scan_lines(m)
    assert {frozenset(L.points) for L in m.affine_lines} == aff
    assert {frozenset(L.points) for L in m.projective_lines} == proj
    assert len(m.lines) == len(aff) + len(proj)


def test_line_counts_m0(m0):
    assert len(m0.affine_lines) == 16
    assert len(m0.projective_lines) == 72
    assert all(len(L.points) == 3 for L in m0.affine_lines)
    assert all(len(L.points) == 4 for L in m0.projective_lines)


def test_cycles_match_plane_scan(m0):
    assert {frozenset(C.points) for C in m0.cycles} == scan_cycles(m0)
    # 40 planes of PG(3,3), 16 tangent to the hyperbolic quadric, 27 lifts each
    assert len(m0.cycles) == (40 - 16) * 27


def test_affine_lines_through_a_point_match_t_points(m0, m1):
    for m in (m0, m1):
        through = [0] * m.num_points
        for L in m.affine_lines:
            for p in L.points:
                through[p] += 1
        assert set(through) == {(m.q ** m.a - 1) // (m.q - 1)}


def test_parallel_is_equivalence_with_q_classes(m0):
    aff = m0.affine_lines
    classes = {}
    for L in aff:
        classes.setdefault(L.tpoint, []).append(L)
    for grp in classes.values():
        assert all(m0.parallel(x, y) for x, y in itertools.combinations(grp, 2))
    for x, y in itertools.product(aff, aff):
        assert m0.parallel(x, y) == (x.tpoint == y.tpoint)
    with pytest.raises(ValueError):
        m0.parallel(m0.projective_lines[0], aff[0])


def test_pi_adjacency_is_sharing_a_point(m0):
    g = m0.projective_lines
    pairs = sum(1 for x, y in itertools.combinations(g, 2) if m0.pi_adjacent(x, y))
    assert pairs == sum(1 for x, y in itertools.combinations(g, 2) if set(x.points) & set(y.points))
    assert not m0.pi_adjacent(g[0], g[0])


def test_tangency_is_symmetric_and_touches_once(m0):
    cs = m0.cycles[:60]
    for c1, c2 in itertools.product(cs, cs):
        t = m0.tangent(c1, c2)
        assert t == m0.tangent(c2, c1)
        if t:
            assert len(set(c1.points) & set(c2.points)) == 1


def test_tangent_line_meets_conic_once(m0):
    for C in m0.cycles[:40]:
        for p in C.points:
            tl = m0.tangent_line(C, p)
            assert tl.dim == 1
            assert m0.section_mask(tl) & C.mask == 1 << p


@pytest.mark.parametrize("cfg,msg", [
    (ModelConfig(4, 0, 3), "odd prime"),
    (ModelConfig(2, 0, 3), "odd prime"),
    (ModelConfig(3, 0, 3, "elliptic"), "ruled"),
    (ModelConfig(3, 0, 2, "parabolic"), "ruled"),
    (ModelConfig(3, 0, 3, "spherical"), "quadric must be one of"),
    (ModelConfig(3, -1, 3), "vertex_dim"),
])
def test_bad_configs(cfg, msg):
    with pytest.raises(ConfigError, match=msg):
        cfg.validate()


def test_parabolic_base_builds():
    m = build_model(ModelConfig(3, 0, 4, "parabolic"))
    assert m.params["t"] == 1
    aff, proj = scan_lines(m)
    assert len(m.lines) == len(aff) + len(proj)


def test_whole_space_flat_is_consistent(m0):
    assert m0.section_mask(Flat.whole(m0.n, m0.q)) == (1 << m0.num_points) - 1
