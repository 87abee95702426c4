"""The functors between shtukas and group schemes of F_q-additive type.

``drinfeld`` sends (M, f) to Spec Sym(M)/(x^q - f(x)); ``dieudonne`` sends
G to its weight-1 primitives with the q-power map.  Both are contravariant
on the group side, so a shtuka map M -> M' gives an algebra map
B_{G(M)} -> B_{G(M')}.
"""
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import hopf
from . import linalg as la
from .errors import QPowerLeavesSubspace, TooLarge
from .hopf import FiniteHopf, Generator, HopfPresentation
from .shtuka import Shtuka, ShtukaMorphism, hom_space, is_isomorphic, is_morphism, restrict_scalars


@dataclass
class GroupScheme:
    """A finite F_q-module scheme given by its Hopf algebra."""

    hopf: FiniteHopf
    presentation: HopfPresentation = None

    @classmethod
    def from_presentation(cls, P, **kw):
        return cls(hopf.expand(P, **kw), P)

    @property
    def field(self):
        return self.hopf.field

    @property
    def order(self):
        return self.hopf.dim


def as_hopf(G):
    return G.hopf if isinstance(G, GroupScheme) else G


def drinfeld_presentation(M, trunc=None):
    """One weight-1 generator per basis vector with x_j^q = f(e_j)."""
    k = M.field
    trunc = k.q if trunc is None else trunc
    gens = []
    for j in range(M.n):
        rel = tuple((i, int(M.F[i, j])) for i in range(M.n) if M.F[i, j])
        gens.append(Generator(f"x{j + 1}", 1, trunc, rel))
    return HopfPresentation(k, tuple(gens))


def drinfeld(M, verify=True, cap=None):
    P = drinfeld_presentation(M)
    if M.field.q ** M.n > (hopf.dim_cap() if cap is None else cap):
        raise TooLarge(f"order q^{M.n} = {M.field.q ** M.n} exceeds the dimension cap")
    return GroupScheme(hopf.expand(P, verify=verify, cap=cap), P)


def _coords(H, basis, vec):
    """Coordinates of a sparse vector in the span of sparse basis vectors, or None."""
    keys = sorted({key for v in basis for key in v} | set(vec))
    pos = {key: r for r, key in enumerate(keys)}
    A = la.zeros(len(keys), len(basis))
    for c, v in enumerate(basis):
        for key, x in v.items():
            A[pos[key], c] = x
    b = np.zeros(len(keys), dtype=np.int64)
    for key, x in vec.items():
        b[pos[key]] = x
    return la.solve(H.field, A, b)


def q_power(H, x):
    for _ in range(H.field.r):
        x = H.frob_elem(x)
    return x


def dieudonne(G, return_basis=False):
    """The shtuka (Prim_1(B_G), x -> x^q) in the echelon Prim_1 basis."""
    H = as_hopf(G)
    k = H.field
    basis = hopf.prim_one(H)
    n = len(basis)
    F = la.zeros(n)
    for j, z in enumerate(basis):
        c = _coords(H, basis, q_power(H, z))
        if c is None:
            raise QPowerLeavesSubspace(f"q-th power of Prim_1 basis vector {j} leaves Prim_1")
        F[:, j] = c
    M = Shtuka(k, F)
    return (M, basis) if return_basis else M


@dataclass
class RoundtripReport:
    unit_iso: bool = None
    counit_iso: bool = None
    details: dict = dc_field(default_factory=dict)


def roundtrip_shtuka(M, rng=None):
    """Check v_M: M -> M(G(M)), e_j -> x_j, is an isomorphism of shtukas."""
    G = drinfeld(M)
    M2, basis = dieudonne(G, return_basis=True)
    H = G.hopf
    n = M.n
    C = la.zeros(M2.n, n)
    ok = M2.n == n
    for j in range(n):
        strides = [1] * n
        for i in range(n - 2, -1, -1):
            strides[i] = strides[i + 1] * M.field.q
        x_j = {strides[j]: 1}
        c = _coords(H, basis, x_j) if ok else None
        if c is None:
            ok = False
            break
        C[:, j] = c
    bij = ok and is_morphism(M, M2, C) and la.is_invertible(M.field, C)
    iso, how, _ = is_isomorphic(M, M2, rng=rng) if M2.n == n else (False, "exact", None)
    return RoundtripReport(counit_iso=bool(bij), details={
        "rank": n, "order": H.dim, "expected_order": M.field.q ** n,
        "dieudonne_rank": M2.n, "isomorphic": iso, "iso_certainty": how})


def roundtrip_group(G, cap=None):
    """Check u_G: B_{G(M(G))} -> B_G is bijective."""
    H = as_hopf(G)
    k = H.field
    M, basis = dieudonne(H, return_basis=True)
    order_back = k.q ** M.n
    details = {"order": H.dim, "order_roundtrip": order_back, "prim1_rank": M.n}
    if order_back != H.dim:
        return RoundtripReport(unit_iso=False, details=details)
    P = drinfeld_presentation(M)
    A = hopf.extend_hom(P, H, basis)
    ech = la.SparseEchelon(k)
    for c in range(A.shape[1]):
        col = {int(t): int(A[t, c]) for t in np.flatnonzero(A[:, c])}
        ech.insert(col)
    details["rank_u"] = len(ech)
    return RoundtripReport(unit_iso=len(ech) == H.dim, details=details)


def roundtrip(obj, **kw):
    if isinstance(obj, Shtuka):
        return roundtrip_shtuka(obj, **kw)
    return roundtrip_group(obj, **kw)


@dataclass
class AdjunctionReport:
    dim_grp_hom: int
    dim_sht_hom: int
    witness: object = None

    @property
    def equal(self):
        return self.dim_grp_hom == self.dim_sht_hom


def adjunction_dims(G, M):
    """F_q-dimensions of Hom(B_{G(M)}, B_G) and Hom(M, M(G))."""
    H = as_hopf(G)
    maps, dim_left = hopf.hopf_homs(drinfeld_presentation(M), H)
    MG, basis = dieudonne(H, return_basis=True)
    dim_right = len(hom_space(M, MG)) if M.n and MG.n else 0
    witness = None
    if maps:
        C = la.zeros(MG.n, M.n)
        for j, y in enumerate(maps[0]):
            C[:, j] = _coords(H, basis, y) if y else 0
        witness = {"images": maps[0], "matrix": C, "is_morphism": is_morphism(M, MG, C)}
    return AdjunctionReport(dim_left, dim_right, witness)


def drinfeld_morphism(phi, Gsrc=None, Gtgt=None):
    """Matrix of the algebra map B_{G(M)} -> B_{G(M')} induced by phi: M -> M'."""
    M, N = phi.source, phi.target
    Gsrc = drinfeld(M, verify=False) if Gsrc is None else Gsrc
    Gtgt = drinfeld(N, verify=False) if Gtgt is None else Gtgt
    strides = [1] * N.n
    for i in range(N.n - 2, -1, -1):
        strides[i] = strides[i + 1] * N.field.q
    images = []
    for j in range(M.n):
        images.append({strides[i]: int(phi.C[i, j]) for i in range(N.n) if phi.C[i, j]})
    return hopf.extend_hom(Gsrc.presentation, Gtgt.hopf, images)


def relations_hold(P, H, images):
    k = H.field
    for i, g in enumerate(P.generators):
        lhs = H.power(images[i], g.trunc)
        rhs = {}
        for j, lam in g.relation:
            la.sp_axpy(k, rhs, lam, images[j])
        if lhs != rhs:
            return False
    return True


def restriction_iso(M, n):
    """Compare G(res M) with G(M) viewed over the smaller q.

    The copy of M sits in the last slot of res M, so the generator of slot s
    and column j is sent to x_j^(q^(n-1-s)).  Returns a dict with the map and
    the checks: relations, primitivity, weights, bijectivity, coproducts.
    """
    N = restrict_scalars(M, n)
    k = N.field
    d = M.n
    P_res = drinfeld_presentation(N)
    H_res = hopf.expand(P_res, verify=False)
    P_big = drinfeld_presentation(Shtuka(k, M.F), trunc=k.q**n)
    H_big = hopf.expand(P_big, verify=False)
    strides = [1] * d
    for i in range(d - 2, -1, -1):
        strides[i] = strides[i + 1] * k.q**n
    images = []
    for s in range(n):
        for j in range(d):
            images.append({strides[j] * k.q ** (n - 1 - s): 1})
    A = hopf.extend_hom(P_res, H_big, images)
    checks = {
        "relations": relations_hold(P_res, H_big, images),
        "primitive": all(hopf.is_primitive(H_big, y) for y in images),
        "weights": all(int(H_big.weights[next(iter(y))]) == g.weight % max(k.q - 1, 1)
                       for y, g in zip(images, P_res.generators)),
        "dims": H_res.dim == H_big.dim,
    }
    checks["bijective"] = checks["dims"] and la.rank(k, A) == H_big.dim if H_big.dim <= 1024 else _sparse_full_rank(k, A)
    if H_res.dim <= 256:
        checks["coalgebra"] = _is_coalgebra_map(H_res, H_big, A)
    return {"shtuka": N, "source": H_res, "target": H_big, "matrix": A, "images": images, "checks": checks,
            "iso": all(checks.values())}


def _sparse_full_rank(k, A):
    ech = la.SparseEchelon(k)
    for c in range(A.shape[1]):
        ech.insert({int(t): int(A[t, c]) for t in np.flatnonzero(A[:, c])})
    return len(ech) == A.shape[0]


def _is_coalgebra_map(H1, H2, A):
    k = H1.field
    cols = [{int(t): int(A[t, c]) for t in np.flatnonzero(A[:, c])} for c in range(A.shape[1])]
    for b in range(H1.dim):
        lhs = H2.comult_vec(cols[b])
        rhs = {}
        for (i, j), c in H1.comult(b).items():
            for u, cu in cols[i].items():
                for v, cv in cols[j].items():
                    key = (u, v)
                    s = k.add(rhs.get(key, 0), k.mul(c, k.mul(cu, cv)))
                    if s:
                        rhs[key] = s
                    else:
                        rhs.pop(key, None)
        if lhs != rhs:
            return False
    return True
