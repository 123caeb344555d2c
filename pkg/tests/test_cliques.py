import itertools

import pytest
from hypothesis import given, settings, strategies as st

from laguerre.cliques import (A_Y, SELECTOR, SEMIAFFINE_AUG, T_OF_Z, UNRECOGNIZED, NotPartialLinear,
                              PencilSpace, build_pencil_space, clique_report, induced_dimension,
                              is_strong_subspace, maximal_cliques, plane_type)

from conftest import M0, M1, model_for


def brute_maximal_cliques(n, adj):
    cl = [set(c) for k in range(1, n + 1) for c in itertools.combinations(range(n), k)
          if all(adj[a] >> b & 1 for a, b in itertools.combinations(c, 2))]
    return sorted(tuple(sorted(c)) for c in cl if not any(c < d for d in cl))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.data())
def test_bron_kerbosch_matches_brute_force(n, data):
    edges = data.draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
    blocks = [(a, b) for a, b in edges if a < b]
    ps = PencilSpace("t", list(range(n)), blocks)
    isolated = [x for x in range(n) if not ps.adj[x]]
    got = maximal_cliques(ps)
    assert got == brute_maximal_cliques(n, ps.adj)
    for x in isolated:
        assert (x,) in got


def test_planted_clique_is_found():
    # a 5-clique planted in a 10-cycle
    n = 10
    blocks = [(i, (i + 1) % n) for i in range(n)]
    blocks = [tuple(sorted(b)) for b in blocks] + [b for b in itertools.combinations((0, 2, 4, 6, 8), 2)]
    ps = PencilSpace("t", list(range(n)), blocks)
    assert (0, 2, 4, 6, 8) in maximal_cliques(ps)
    assert all(0 in c for c in maximal_cliques(ps, 0))


def test_projective_plane_dimension():
    # Fano plane: closure of any non-collinear triple is everything
    lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    ps = PencilSpace("t", list(range(7)), lines)
    whole = tuple(range(7))
    assert maximal_cliques(ps) == [whole]
    assert is_strong_subspace(ps, whole)
    assert induced_dimension(ps, whole) == 2
    assert plane_type(2, 2, 7) == "projective"


@pytest.mark.parametrize("q,size,kind", [(3, 13, "projective"), (3, 12, "semiaffine"),
                                         (3, 9, "affine"), (3, 11, "holes=2")])
def test_plane_types(q, size, kind):
    assert plane_type(q, 2, size) == kind


@pytest.mark.parametrize("cfg", [M0, M1])
@pytest.mark.parametrize("case", ["a", "b", "c"])
def test_pencil_spaces_are_partial_linear(cfg, case):
    ps = build_pencil_space(model_for(cfg), case)
    assert ps.points
    seen = set()
    for b in ps.blocks:
        for pair in itertools.combinations(b, 2):
            assert pair not in seen
            seen.add(pair)


def test_unknown_case(m0):
    with pytest.raises(ValueError):
        build_pencil_space(m0, "d")
    assert issubclass(NotPartialLinear, ValueError)


@pytest.mark.parametrize("case", ["a", "b", "c"])
def test_cliques_m0_full(m0, case):
    rep = clique_report(m0, case, scope="full")
    assert rep.success, rep.first_counterexample
    assert UNRECOGNIZED not in rep.details["labels"]


def test_cliques_m0_case_a_are_singletons(m0):
    rep = clique_report(m0, "a", scope="full")
    assert rep.details["labels"] == {A_Y: len(m0.projective_lines)}
    assert rep.details["dimensions"] == {A_Y: [0]}


def test_cliques_m1_case_b_indistinguishable(m1):
    rep = clique_report(m1, "b", scope="neighbourhood", vertices=10, seed=0)
    assert rep.success, rep.first_counterexample
    assert set(rep.details["labels"]) == {A_Y, T_OF_Z}
    assert rep.details["types"] == {A_Y: ["affine"], T_OF_Z: ["affine"]}
    assert rep.details["distinguishable"] is False


def test_cliques_m1_case_c_forms(m1):
    rep = clique_report(m1, "c", scope="neighbourhood", vertices=10, seed=0)
    assert rep.success, rep.first_counterexample
    assert {SELECTOR, SEMIAFFINE_AUG} <= set(rep.details["labels"])
