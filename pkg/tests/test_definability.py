import itertools

import pytest

from laguerre import definability as dfn
from laguerre.pencils import build_grassmann
from laguerre.report import SAMPLED
from laguerre.suites import mutate

from conftest import M0, M1, model_for


@pytest.mark.parametrize("cfg", [M0, M1])
def test_two_in_two(cfg):
    m = model_for(cfg)
    rep = dfn.check_two_in_two(m, build_grassmann(m))
    assert rep.success, rep.first_counterexample
    assert rep.instantiations > 0


@pytest.mark.parametrize("cfg", [M0, M1])
def test_defined_sets_match_ground_truth(cfg):
    gr = build_grassmann(model_for(cfg))
    for rep in (dfn.check_define_lines(gr), dfn.check_cones_minkowski(gr), dfn.check_line_split(gr)):
        assert rep.success, (rep.lemma, rep.first_counterexample)


def test_define_lines_m0(m0):
    gr = build_grassmann(m0)
    assert dfn.define_lines(gr) == set(range(len(m0.lines)))


def test_pair_cover_brute_force(m0):
    gr = build_grassmann(m0)
    cover = dfn.PairCover.of(gr)
    counts = {}
    for zs in gr.contains:
        for a, b in itertools.combinations(sorted(zs), 2):
            counts[(a, b)] = counts.get((a, b), 0) + 1
    doubled = {k for k, v in counts.items() if v >= 2}
    assert {divmod(int(k), cover.n) for k in cover.doubly_covered()} == doubled
    assert doubled


def test_census_against_sweep(m0):
    rep = dfn.census_check(m0, build_grassmann(m0))
    assert rep.success, rep.first_counterexample


def test_minkowski_descent_m0(m0):
    rep = dfn.minkowski_descent(m0)
    assert rep.success and rep.instantiations == len(m0.projective_lines)


@pytest.mark.parametrize("mutation,check", [
    ("duplicate_p2", lambda m, gr: dfn.check_two_in_two(m, gr)),
    ("drop_cone", lambda m, gr: dfn.check_cones_minkowski(gr)),
    ("mislabel_line", lambda m, gr: dfn.check_line_split(gr)),
])
def test_mutations_are_caught(m0, mutation, check):
    gr = build_grassmann(m0)
    assert check(m0, gr).success
    assert not check(m0, mutate(gr, mutation)).success


def test_cone_hypothesis_fails_without_conic_cones(m0):
    with pytest.raises(dfn.ConeHypothesisUnmet):
        dfn.conic_structure(m0)
    c = dfn.conic_structure(m0, strict=False)
    assert len(c.missing_vertices) == m0.num_points


@pytest.fixture(scope="module")
def cone_m2(m2):
    return dfn.conic_structure(m2)


def test_rho_matches_intersection_sampled(m2, cone_m2):
    rep = dfn.check_adjacency(m2, cone_m2, mode=SAMPLED, seed=3, samples=40)
    assert rep.success, rep.first_counterexample


def test_vertex_test_on_a_cone(m2, cone_m2):
    c = cone_m2
    members = set(c.members[0].tolist())
    through = {i for i, lid in enumerate(c.line_ids.tolist())
               if m2.lines[lid].mask & m2.lines[c.line_ids[c.members[0][0]]].mask
               and m2.lines[lid].mask & m2.lines[c.line_ids[c.members[0][1]]].mask}
    # lines through the cone vertex pass; a line of the cone passes too
    for x in list(members)[:2]:
        assert dfn.vertex_test(c, 0, x)
    assert any(not dfn.vertex_test(c, 0, x) for x in range(c.g) if x not in through)


@pytest.mark.parametrize("check", [dfn.check_vertex_test, dfn.check_two_generator_lemma,
                                   dfn.reconstruct_point_line, dfn.check_adjacent_pairs])
def test_cone_checks_sampled(m2, cone_m2, check):
    rep = check(m2, cone_m2, mode=SAMPLED, seed=11, samples=10)
    assert rep.success, rep.first_counterexample
    assert rep.instantiations > 0


def test_descent_reaches_minkowski_plane_m2(m2):
    ids = [L.id for L in m2.projective_lines[:25]]
    rep = dfn.minkowski_descent(m2, ids)
    assert rep.success, rep.first_counterexample
