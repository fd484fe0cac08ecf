import itertools

import pytest

import arthurcalc.weyl as W
from arthurcalc.errors import DomainError


def test_restricted_roots_b2_identity_theta():
    datum = W.RootDatum(W.TYPE_B, 2)
    res = W.restricted_roots(datum)
    assert len(res.roots) == 8  # full system survives
    assert len(res.simples) == 2
    assert len(res.weyl) == 8


def test_restricted_roots_a3_folding():
    datum = W.RootDatum(W.TYPE_A, 3, twisted=True)
    res = W.restricted_roots(datum)
    # folding of the rank-three simply laced system is of type C2
    assert sorted(res.positives) == sorted(
        [(1, -1), (1, 1), (2, 0), (0, 2)])
    assert len(res.weyl) == 8


def test_restricted_roots_a2_folding():
    datum = W.RootDatum(W.TYPE_A, 2, twisted=True)
    res = W.restricted_roots(datum)
    # rank-two odd case folds to the non-reduced rank-one system
    assert sorted(res.positives) == [(1,), (2,)]
    assert len(res.weyl) == 2


def test_restricted_roots_d3_folding():
    datum = W.RootDatum(W.TYPE_D, 3, twisted=True)
    res = W.restricted_roots(datum)
    assert sorted(res.positives) == sorted(
        [(1, -1), (1, 1), (1, 0), (0, 1)])
    assert len(res.weyl) == 8  # hyperoctahedral of rank two


def test_gl_flip_is_pinned():
    # the flip with trivial torus part fixes every simple root vector
    for rank in (2, 3):
        datum = W.RootDatum(W.TYPE_A, rank, twisted=True)
        n = datum.matrix_size
        gamma = W._gamma_matrices(datum, (1,) * n)
        for i in range(n - 1):
            e = W._basis_matrix(n, {(i, i + 1): 1})
            img = gamma(e)
            tgt = W._basis_matrix(n, {(n - 2 - i, n - 1 - i): 1})
            assert img == tgt


def test_so_flip_is_pinned():
    datum = W.RootDatum(W.TYPE_D, 3, twisted=True)
    gamma = W._gamma_matrices(datum, (1, 1, 1))
    basis = W._algebra_basis(datum)
    images = set()
    for weight, mat in basis:
        img = gamma(mat)
        neg = tuple(tuple(-c for c in r) for r in img)
        assert img in {m for _, m in basis} or neg in {m for _, m in basis}


def test_coset_counts_b2():
    datum = W.RootDatum(W.TYPE_B, 2)
    res = W.restricted_roots(datum)
    full = W.build_split_data(datum, res, W.EndoscopicSplit((1, 1)))
    assert len(full.d_h) == 1
    so4 = W.build_split_data(datum, res, W.EndoscopicSplit((-1, -1)))
    assert len(so4.w_h) == 4 and len(so4.d_h) == 2
    # the trivial Levi has the whole group as representatives
    assert len(W._d_m_theta(res, W.LeviG(()))) == len(res.weyl)


def test_levi_counts_divide():
    datum = W.RootDatum(W.TYPE_B, 3)
    res = W.restricted_roots(datum)
    for levi in W.levi_g_all(res):
        wm = W._w_m_theta(res, levi)
        dm = W._d_m_theta(res, levi)
        assert len(wm) * len(dm) == len(res.weyl)


def test_a_count_identity_cases():
    datum = W.RootDatum(W.TYPE_B, 2)
    res = W.restricted_roots(datum)
    data = W.build_split_data(datum, res, W.EndoscopicSplit((1, 1)))
    # H = G and M' = M: exactly the identity double coset
    for levi in W.levi_g_all(res):
        assert W.a_count(data, levi, levi.simples) == 1
    # a Levi that never arises
    assert W.a_count(data, W.LeviG((res.simples[0],)),
                     (res.simples[1],)) == 0


def test_identities_on_catalog_subset():
    for datum in [W.RootDatum(W.TYPE_B, 2), W.RootDatum(W.TYPE_C, 2),
                  W.RootDatum(W.TYPE_A, 3, twisted=True),
                  W.RootDatum(W.TYPE_D, 3, twisted=True)]:
        res = W.restricted_roots(datum)
        for data in W.catalog_split_data(datum, res):
            assert W.verify_identity_A(data)
            assert W.verify_identity_B(data)
            assert W.verify_alternating_sum(data).all_pass()
            assert W.verify_coset_representatives(data)


def test_intersection_and_algebraic_props_small_catalog():
    for datum in [W.RootDatum(W.TYPE_B, 2), W.RootDatum(W.TYPE_C, 2),
                  W.RootDatum(W.TYPE_A, 3, twisted=True),
                  W.RootDatum(W.TYPE_D, 3, twisted=True)]:
        res = W.restricted_roots(datum)
        for data in W.catalog_split_data(datum, res):
            for levi in W.levi_g_all(res):
                assert W.verify_intersection_prop(data, levi)
                assert W.verify_algebraic_identity(data, levi)


def test_tilde_characterization_via_levi_of_invariants():
    # on Galois-fixed elements the tilde condition matches the sandwich
    # of positive systems through the invariant Levi
    datum = W.RootDatum(W.TYPE_B, 2)
    res = W.restricted_roots(datum)
    for data in W.catalog_split_data(datum, res):
        g = data.galois_h()
        fixed = [w for w in res.weyl
                 if g is None or g * w == w * g]
        mh_pos = [b for b in W._root_span(res, data.mh_simples)
                  if b in set(res.positives)]
        for levi in W.levi_g_all(res):
            tilde = W._d_m_tilde(res, levi, data)
            levi_pos = [b for b in W._levi_g_roots(res, levi)
                        if b in set(res.positives)]
            for w in fixed:
                in_tilde = w in tilde
                sandwich = all(
                    tuple(w.apply(b)) in set(levi_pos) for b in mh_pos) and \
                    all(W._positive_in(res, w.inv().apply(b))
                        for b in levi_pos)
                assert in_tilde == sandwich


def test_signed_perm_algebra():
    a = W.SignedPerm((1, 0), (1, -1))
    b = W.SignedPerm((0, 1), (-1, 1))
    assert (a * b).apply((1, 0)) == tuple(a.apply(b.apply((1, 0))))
    assert (a * a.inv()).is_identity()
    refl = W._reflection((1, -1))
    assert refl.apply((1, 0)) == (0, 1)
    assert refl.apply((1, 1)) == (1, 1)


def test_subspace_exact():
    s = W.Subspace.of([(1, 0, 1), (0, 1, 0)], 3)
    assert s.contains((1, 1, 1))
    assert not s.contains((1, 0, 0))
    t = W.Subspace.of([(2, 0, 2), (0, 3, 0)], 3)
    assert s == t  # canonical reduced form


def test_catalog_shapes():
    catalog = W.datum_catalog()
    assert len(catalog) == 8
    counts = {}
    for datum in catalog:
        tag = f"{datum.gtype}{datum.rank}"
        counts[tag] = len(W.catalog_split_data(datum))
    assert counts["B2"] == 5 and counts["C2"] == 3
    assert counts["B3"] == 7 and counts["C3"] == 4
    assert counts["D3"] == 6 and counts["D4"] == 8


def test_coset_reps_tuple():
    datum = W.RootDatum(W.TYPE_B, 2)
    res = W.restricted_roots(datum)
    data = W.build_split_data(datum, res, W.EndoscopicSplit((-1, -1)))
    for levi in W.levi_g_all(res):
        d_h, d_m, d_m_t, d_hm, d_hm_t = W.coset_reps(data, levi)
        assert len(d_h) * len(data.w_h) == len(res.weyl)
        assert len(d_m) * len(W._w_m_theta(res, levi)) == len(res.weyl)
        assert d_m_t <= d_m
        assert d_hm_t <= d_hm
        assert d_hm <= d_h
