import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shtukalab import hopf as h
from shtukalab import linalg as la
from shtukalab.errors import TooLarge
from shtukalab.functors import (GroupScheme, adjunction_dims, dieudonne, drinfeld, drinfeld_morphism,
                                restriction_iso, roundtrip, _is_coalgebra_map)
from shtukalab.hopf import Generator, HopfPresentation
from shtukalab.samples import shtuka_sample, std_field
from shtukalab.shtuka import (Shtuka, ShtukaMorphism, fq_combination, hom_space, is_isomorphic,
                              random_shtuka)


def rank1(k, c):
    return Shtuka(k, [[c]])


def random_morphism(M, N, rng):
    basis = hom_space(M, N)
    k = M.field
    if not basis:
        return ShtukaMorphism(M, N, la.zeros(N.n, M.n))
    sub = k.subfield_elements()
    coeffs = [int(rng.choice(sub)) for _ in basis]
    return ShtukaMorphism(M, N, fq_combination(k, basis, coeffs))


def augmentation_is_nil(H):
    e = H.field.p
    while e < H.dim:
        e *= H.field.p
    return all(H.power({i: 1}, e) == {} for i in range(1, H.dim))


# -- drinfeld / dieudonne examples ------------------------------------------------


def test_drinfeld_examples(field):
    A = drinfeld(rank1(field, 0)).hopf
    assert A.dim == field.q and A.power({1: 1}, field.q) == {}
    C = drinfeld(rank1(field, 1)).hopf
    assert C.dim == field.q and C.power({1: 1}, field.q) == {1: 1}
    rng = np.random.default_rng(0)
    for _ in range(3):
        M = random_shtuka(field, 2, rng)
        assert drinfeld(M).order == field.q**2


def test_drinfeld_too_large(F4):
    with pytest.raises(TooLarge):
        drinfeld(random_shtuka(F4, 7, np.random.default_rng(0)))


def test_dieudonne_examples(field):
    alpha_q = GroupScheme.from_presentation(h.single(field, field.q))
    M = dieudonne(alpha_q)
    assert M.n == 1 and M.F.tolist() == [[0]]
    const = GroupScheme.from_presentation(h.constant_fq(field))
    M = dieudonne(const)
    assert M.n == 1 and M.F.tolist() == [[1]]


def test_dieudonne_of_drinfeld_is_isomorphic():
    rng = np.random.default_rng(7)
    for _ in range(24):
        M = shtuka_sample(rng, max_n=3, order_cap=4096)
        G = drinfeld(M)
        assert G.order == M.field.q**M.n
        iso, _, witness = is_isomorphic(M, dieudonne(G), rng=rng)
        assert iso
        assert witness is None or la.is_invertible(M.field, witness)


def test_dieudonne_is_deterministic(F4):
    M = Shtuka.from_strings(F4, [["g", "1"], ["0", "g+1"]])
    a, b = dieudonne(drinfeld(M)), dieudonne(drinfeld(M))
    assert np.array_equal(a.F, b.F)


# -- round trips ----------------------------------------------------------------


def test_roundtrip_shtuka_rank_le_2():
    rng = np.random.default_rng(3)
    for q in (2, 3, 4, 5, 8, 9):
        k = std_field(q)
        for n in (1, 2):
            rep = roundtrip(random_shtuka(k, n, rng))
            assert rep.counit_iso
            assert rep.details["order"] == q**n


def test_roundtrip_alpha_q(field):
    rep = roundtrip(GroupScheme.from_presentation(h.single(field, field.q)))
    assert rep.unit_iso


def test_roundtrip_alpha_p_power_six():
    k = std_field(4)
    G = GroupScheme.from_presentation(h.power_presentation(h.alpha(k, 1), 6))
    rep = roundtrip(G)
    assert rep.unit_iso is False
    assert (rep.details["order_roundtrip"], rep.details["order"]) == (4**6, 2**6)


def test_roundtrip_group_of_drinfeld():
    rng = np.random.default_rng(4)
    for _ in range(10):
        M = shtuka_sample(rng, max_n=3, order_cap=1024)
        assert roundtrip(drinfeld(M)).unit_iso


# -- adjunction ---------------------------------------------------------------------------


def test_adjunction_examples(field):
    alpha_q = GroupScheme.from_presentation(h.single(field, field.q))
    const = GroupScheme.from_presentation(h.constant_fq(field))
    r = adjunction_dims(alpha_q, rank1(field, 0))
    assert (r.dim_grp_hom, r.dim_sht_hom) == (1, 1)
    assert r.witness["is_morphism"]
    r = adjunction_dims(alpha_q, rank1(field, 1))
    assert (r.dim_grp_hom, r.dim_sht_hom) == (0, 0)
    r = adjunction_dims(const, rank1(field, 1))
    assert (r.dim_grp_hom, r.dim_sht_hom) == (1, 1)


def unbalanced_groups(k):
    yield GroupScheme.from_presentation(h.alpha(k, 1))
    yield GroupScheme.from_presentation(h.power_presentation(h.alpha(k, 1), 2))
    if k.r > 1:
        gens = tuple(Generator(f"x{i}", k.p**i, k.p) for i in range(k.r))
        yield GroupScheme.from_presentation(HopfPresentation(k, gens))
        yield GroupScheme.from_presentation(h.alpha(k, k.r + 1))


def test_adjunction_on_unbalanced_groups():
    rng = np.random.default_rng(9)
    for q in (4, 8, 9):
        k = std_field(q)
        for G in unbalanced_groups(k):
            for n in (1, 2):
                rep = adjunction_dims(G, random_shtuka(k, n, rng))
                assert rep.equal, (q, G.hopf.dim, rep)


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_adjunction_on_random_pairs(seed):
    rng = np.random.default_rng(seed)
    q = int(rng.choice([2, 3, 4, 5, 9]))
    k = std_field(q)
    M = random_shtuka(k, int(rng.integers(1, 3)), rng)
    N = random_shtuka(k, int(rng.integers(1, 3)), rng)
    rep = adjunction_dims(drinfeld(N), M)
    assert rep.equal
    assert rep.dim_sht_hom == len(hom_space(M, N))


# -- functoriality --------------------------------------------------------------------------


def test_identity_goes_to_identity(F4):
    M = random_shtuka(F4, 2, np.random.default_rng(1))
    phi = ShtukaMorphism(M, M, la.identity(2))
    A = drinfeld_morphism(phi)
    assert np.array_equal(A, la.identity(F4.q**2))


def test_functoriality_on_random_triples():
    rng = np.random.default_rng(12)
    checked = 0
    for q in (2, 3, 4, 5):
        k = std_field(q)
        for _ in range(6):
            ranks = rng.integers(1, 3, 3)
            kinds = rng.choice(["etale", "nilpotent", "any"], 1)[0]
            M1, M2, M3 = (random_shtuka(k, int(n), rng, kind=kinds) for n in ranks)
            phi, psi = random_morphism(M1, M2, rng), random_morphism(M2, M3, rng)
            G1, G2, G3 = drinfeld(M1), drinfeld(M2), drinfeld(M3)
            A_phi = drinfeld_morphism(phi, G1, G2)
            A_psi = drinfeld_morphism(psi, G2, G3)
            A_comp = drinfeld_morphism(psi.compose(phi), G1, G3)
            assert np.array_equal(A_comp, la.matmul(k, A_psi, A_phi))
            assert _is_coalgebra_map(G1.hopf, G2.hopf, A_phi)
            checked += 1
    assert checked == 24


# -- invariants of the Drinfeld functor ----------------------------------------------------


def test_etale_and_connected_match_shtuka():
    rng = np.random.default_rng(21)
    for q in (2, 3, 4, 5, 8, 9):
        k = std_field(q)
        for kind in ("etale", "nilpotent", "any"):
            M = random_shtuka(k, 2 if q <= 5 else 1, rng, kind=kind)
            H = drinfeld(M).hopf
            etale = la.rank(k, h.frobenius_matrix(H)) == H.dim
            assert etale == M.is_etale()
            assert augmentation_is_nil(H) == M.is_nilpotent()


def test_cotangent_dim_is_coker_dim():
    rng = np.random.default_rng(22)
    for _ in range(20):
        M = shtuka_sample(rng, max_n=3, order_cap=1024)
        assert h.cotangent_dim(drinfeld(M).hopf) == M.coker_dim()


# -- restriction of scalars -------------------------------------------------------------------


@pytest.mark.parametrize("q,n", [(4, 2), (9, 2), (8, 3)])
def test_restriction_iso(q, n):
    k = std_field(q)
    rng = np.random.default_rng(q)
    for _ in range(3):
        M = random_shtuka(k, 1, rng)
        out = restriction_iso(M, n)
        assert out["iso"], out["checks"]
        assert out["shtuka"].field.q ** n == q


def test_restriction_iso_rank_two():
    k = std_field(4)
    rng = np.random.default_rng(0)
    out = restriction_iso(random_shtuka(k, 2, rng), 2)
    assert out["iso"] and out["target"].dim == 16
