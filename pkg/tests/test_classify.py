import itertools

import numpy as np
import pytest

from shtukalab import hopf as h
from shtukalab import linalg as la
from shtukalab.balance import is_balanced
from shtukalab.classify import (alpha_q_power, fixed_vector_count, is_connected, is_etale, point_count,
                                reassemble, structure_decompose)
from shtukalab.errors import CapExceeded, NotBalanced
from shtukalab.functors import GroupScheme, drinfeld
from shtukalab.samples import balanced_shtuka, std_field
from shtukalab.shtuka import Shtuka, random_shtuka


def brute_points(K, emb, P):
    """Oracle: scalar loops over K^n using only FqField.pow/add/mul."""
    n = len(P.generators)
    count = 0
    for y in itertools.product(range(K.order), repeat=n):
        ok = True
        for i, g in enumerate(P.generators):
            rhs = 0
            for j, lam in g.relation:
                rhs = K.add(rhs, K.mul(int(emb[lam]), y[j]))
            if K.pow(y[i], g.trunc) != rhs:
                ok = False
                break
        count += ok
    return count


# -- structure theorem -----------------------------------------------------------------


def test_structure_examples(field):
    q = field.q
    rep = structure_decompose(drinfeld(Shtuka(field, [[1, 0], [0, 0]])))
    assert (rep.etale_order, rep.connected_exponents) == (q, [1])
    rep = structure_decompose(drinfeld(Shtuka(field, [[0, 1], [0, 0]])))
    assert (rep.etale_order, rep.connected_exponents) == (1, [2])
    rep = structure_decompose(drinfeld(Shtuka(field, la.identity(2))))
    assert (rep.etale_order, rep.connected_exponents, rep.constancy_degree) == (q**2, [], 1)


def test_structure_expression(F4):
    rep = structure_decompose(drinfeld(Shtuka(F4, [[1, 0, 0], [0, 0, 1], [0, 0, 0]])))
    assert rep.expression() == "G ≅ (etale of order 4, constant over F_4) × alpha_{q^2}"
    rep = structure_decompose(drinfeld(Shtuka(F4, [[0]])))
    assert rep.expression() == "G ≅ alpha_q"


def test_structure_rejects_unbalanced(F4):
    with pytest.raises(NotBalanced):
        structure_decompose(GroupScheme.from_presentation(h.alpha(F4, 1)))


def test_constancy_cap():
    k = std_field(4)
    # x^3 = g^-1 needs 9 | 4^m - 1, i.e. m = 3
    M = Shtuka(k, [[k.gen]])
    rep = structure_decompose(drinfeld(M), cap=2)
    assert rep.constancy_degree == "exceeds cap"
    assert "exceeds cap" in rep.expression()
    with pytest.raises(CapExceeded):
        structure_decompose(drinfeld(M), cap=2, strict=True)
    rep = structure_decompose(drinfeld(M))
    assert rep.constancy_degree == 3
    assert rep.expression() == "G ≅ (etale of order 4, constant over F_64)"
    assert [fixed_vector_count(M, m) for m in (1, 2, 3)] == [1, 1, 4]


def test_constancy_beyond_field_cap():
    k = std_field(8)
    # here the degree is 7 and F_{8^7} is beyond the field cap
    rep = structure_decompose(drinfeld(Shtuka(k, [[k.gen]])))
    assert rep.constancy_degree == "exceeds cap"


def test_order_law_on_random_balanced():
    rng = np.random.default_rng(51)
    for _ in range(15):
        M = balanced_shtuka(rng, order_cap=1024)
        G = drinfeld(M)
        rep = structure_decompose(G)
        assert rep.total_order == G.order
        assert rep.total_order == rep.etale_order * rep.q ** sum(rep.connected_exponents)
        assert all(s > 0 for s in rep.connected_exponents)
        assert rep.connected_exponents == sorted(rep.connected_exponents, reverse=True)


def test_reassembly_matches_invariants():
    rng = np.random.default_rng(52)
    for _ in range(10):
        M = balanced_shtuka(rng, order_cap=256)
        G = drinfeld(M)
        rep = structure_decompose(G)
        R = reassemble(rep)
        assert R.order == G.order
        assert h.eigen_profile(R.hopf) == h.eigen_profile(G.hopf)
        assert is_balanced(R.hopf).flags == is_balanced(G.hopf).flags
        for m in (1, 2, 3):
            assert point_count(R, m) == point_count(G, m)


def test_cyclic_block_is_alpha_q_power():
    for q in (2, 3, 4):
        k = std_field(q)
        for s in (1, 2):
            J = la.zeros(s)
            for i in range(s - 1):
                J[i, i + 1] = 1
            G = drinfeld(Shtuka(k, J))
            P = h.single(k, q**s)
            maps, _ = h.hopf_homs(P, G.hopf)
            assert any(la.rank(k, h.extend_hom(P, G.hopf, m)) == G.order for m in maps)
            assert structure_decompose(G).connected_exponents == [s]


# -- point counts --------------------------------------------------------------------


def test_point_count_examples(field):
    for m in (1, 2):
        assert point_count(GroupScheme.from_presentation(h.single(field, field.q)), m) == 1
        assert point_count(GroupScheme.from_presentation(h.constant_fq(field)), m) == field.q
    F4 = std_field(4)
    assert point_count(drinfeld(Shtuka(F4, [[F4.gen]])), 1) == 1


def test_point_count_methods_agree_with_brute_force():
    rng = np.random.default_rng(53)
    for q in (2, 3, 4, 5, 9):
        k = std_field(q)
        for _ in range(4):
            M = random_shtuka(k, int(rng.integers(1, 3)), rng)
            G = drinfeld(M, verify=False)
            for m in (1, 2):
                K, emb = k.extension(m)
                if K.order ** M.n > 4096:
                    continue
                expected = brute_points(K, emb, G.presentation)
                assert point_count(G, m, "enumerate") == expected
                assert point_count(G, m, "linear") == expected


def test_point_count_equals_group_likes_of_dual():
    """Points over k are the group-like elements of the dual algebra."""
    cases = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (5, 1)]
    rng = np.random.default_rng(54)
    for q, n in cases:
        k = std_field(q)
        for _ in range(3):
            G = drinfeld(random_shtuka(k, n, rng))
            D = h.cartier_dual(G.hopf)
            assert point_count(G, 1) == len(h.group_likes(D))


def test_point_count_is_etale_part_and_stabilises():
    rng = np.random.default_rng(55)
    for _ in range(12):
        M = balanced_shtuka(rng, order_cap=256)
        G = drinfeld(M)
        rep = structure_decompose(G)
        for m in (1, 2, 3):
            assert point_count(G, m) == fixed_vector_count(rep.etale_shtuka, m)
        deg = rep.constancy_degree
        if isinstance(deg, int):
            for m in (deg, 2 * deg):
                assert point_count(G, m) == rep.etale_order


def test_alpha_q_power_has_one_point(F4):
    G = alpha_q_power(F4, 2)
    assert G.order == 16
    assert [point_count(G, m) for m in (1, 2, 3)] == [1, 1, 1]


# -- etale / connected -------------------------------------------------------------------


def test_etale_connected_predicates():
    rng = np.random.default_rng(56)
    for q in (2, 3, 4, 9):
        k = std_field(q)
        E = drinfeld(random_shtuka(k, 2 if q < 9 else 1, rng, "etale"))
        N = drinfeld(random_shtuka(k, 2 if q < 9 else 1, rng, "nilpotent"))
        assert is_etale(E) and not is_connected(E)
        assert is_connected(N) and not is_etale(N)
        assert point_count(N, 1) == 1
        mixed = drinfeld(Shtuka(k, [[1, 0], [0, 0]]))
        assert not is_etale(mixed) and not is_connected(mixed)
