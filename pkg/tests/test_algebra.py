import itertools

import pytest
from hypothesis import given, settings, strategies as st

from laguerre.algebra import (Flat, NotAProjectivePoint, ProjectiveSpace, UnsupportedField,
                              check_field, echelon_coefficients, enumerate_points, flats_of_dim,
                              gaussian_binomial, meet, normalize, nullspace, rank, rref, span,
                              standard_form, witt_index_of_gram)

primes = st.sampled_from([3, 5, 7])


def matrices(q, max_rows=4, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c),
                           min_size=1, max_size=max_rows))


def brute_rank(rows, q):
    """Size of the row space, read as a power of q."""
    vecs = set()
    for c in itertools.product(range(q), repeat=len(rows)):
        vecs.add(tuple(sum(ci * r[j] for ci, r in zip(c, rows)) % q for j in range(len(rows[0]))))
    k = 0
    while q ** k < len(vecs):
        k += 1
    return k


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_rank_matches_row_space_size(data):
    q = data.draw(primes)
    rows = data.draw(matrices(q, max_rows=3, max_cols=4))
    assert rank(rows, q) == brute_rank(rows, q)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_rref_is_idempotent_and_spans_the_same_space(data):
    q = data.draw(primes)
    rows = data.draw(matrices(q))
    red, piv = rref(rows, q)
    assert rref(red, q) == (red, piv)
    assert rank(list(red) + rows, q) == len(red)
    for r, p in zip(red, piv):
        assert r[p] == 1 and all(x == 0 for x in r[:p])


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_nullspace_is_orthogonal_and_complementary(data):
    q = data.draw(primes)
    rows = data.draw(matrices(q))
    ncols = len(rows[0])
    ns = nullspace(rows, ncols, q)
    for v in ns:
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) % q == 0
    assert len(ns) + rank(rows, q) == ncols


@given(primes, st.lists(st.integers(-20, 20), min_size=1, max_size=5), st.integers(1, 6))
def test_normalize_is_scale_invariant(q, v, lam):
    if not any(x % q for x in v) or lam % q == 0:
        with pytest.raises(NotAProjectivePoint):
            normalize([x * lam for x in v] if any(x % q for x in v) else v, q)
        return
    a = normalize(v, q)
    assert a == normalize([x * lam for x in v], q)
    assert next(x for x in a if x) == 1


@pytest.mark.parametrize("n,q", [(1, 3), (2, 3), (3, 3), (4, 3), (2, 5), (3, 5)])
def test_point_count_is_gaussian(n, q):
    pts = enumerate_points(n, q)
    assert len(pts) == (q ** (n + 1) - 1) // (q - 1) == gaussian_binomial(n + 1, 1, q)
    assert pts == sorted(set(pts))


@pytest.mark.parametrize("n,k,q", [(3, 1, 3), (4, 1, 3), (4, 2, 3), (3, 1, 5), (4, 3, 3)])
def test_flat_counts_are_gaussian(n, k, q):
    whole = Flat.whole(n, q)
    flats = flats_of_dim(k, whole)
    assert len(flats) == len(set(flats)) == gaussian_binomial(n + 1, k + 1, q)
    assert len(echelon_coefficients(k, n + 1, q)) == len(flats)


def test_gaussian_binomial_values():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(5, 2, 3) == 1210
    assert gaussian_binomial(3, 0, 7) == 1
    assert gaussian_binomial(3, 4, 7) == 0


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_meet_and_join_dimension_formula(data):
    q = data.draw(st.sampled_from([3, 5]))
    n = 3
    a = data.draw(matrices(q, max_rows=3, max_cols=n + 1).filter(lambda m: len(m[0]) == n + 1))
    b = data.draw(matrices(q, max_rows=3, max_cols=n + 1).filter(lambda m: len(m[0]) == n + 1))
    fa, fb = Flat.from_rows(a, n, q), Flat.from_rows(b, n, q)
    j, m = span([fa, fb], n, q), meet(fa, fb)
    assert len(j.basis) + len(m.basis) == len(fa.basis) + len(fb.basis)
    assert fa.contains(m) and fb.contains(m) and j.contains(fa) and j.contains(fb)


def test_point_indices_agree_with_flat_points():
    sp = ProjectiveSpace(3, 3)
    f = Flat.from_rows([(1, 0, 1, 2), (0, 1, 1, 0)], 3, 3)
    assert sorted(sp.points[i] for i in sp.point_indices(f.basis)) == sorted(f.points())


def brute_witt(gram, q):
    """Largest totally singular vector subspace, by search over all flats."""
    n = len(gram) - 1
    whole = Flat.whole(n, q)
    best = 0
    for k in range(n + 1):
        for f in flats_of_dim(k, whole):
            rows = f.basis
            if all(sum(r[i] * gram[i][j] * s[j] for i in range(n + 1) for j in range(n + 1)) % q == 0
                   for r in rows for s in rows):
                best = k + 1
                break
    return best


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_witt_index_matches_search(data):
    q = data.draw(st.sampled_from([3, 5]))
    size = data.draw(st.integers(1, 4))
    upper = data.draw(st.lists(st.integers(0, q - 1), min_size=size * (size + 1) // 2,
                               max_size=size * (size + 1) // 2))
    g = [[0] * size for _ in range(size)]
    it = iter(upper)
    for i in range(size):
        for j in range(i, size):
            g[i][j] = g[j][i] = next(it)
    r, w = witt_index_of_gram(g, q)
    assert r == rank(g, q)
    assert w == brute_witt(g, q)


@pytest.mark.parametrize("kind,size,witt", [("hyperbolic", 4, 2), ("elliptic", 4, 1),
                                            ("parabolic", 5, 2), ("hyperbolic", 6, 3),
                                            ("elliptic", 6, 2), ("parabolic", 3, 1)])
@pytest.mark.parametrize("q", [3, 5])
def test_standard_forms(kind, size, witt, q):
    f = standard_form(kind, size, q)
    assert witt_index_of_gram(f.gram, q) == (size, witt)


@pytest.mark.parametrize("q", [4, 9, 1, 0, 2])
def test_unsupported_fields(q):
    with pytest.raises(UnsupportedField):
        check_field(q)
