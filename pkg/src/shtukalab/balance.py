"""Balance and quasi-balance, eigenrank counting and the S(X) series."""
from dataclasses import dataclass

import numpy as np
import sympy

from . import hopf
from . import linalg as la
from .errors import LengthMismatch, TooLarge


def split_q(q):
    """(p, r) with q = p^r."""
    fac = sympy.factorint(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, r), = fac.items()
    return int(p), int(r)


@dataclass
class BalanceReport:
    additive_type: bool
    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    cond_iv: bool
    prim_ranks: tuple
    order: int

    @property
    def flags(self):
        return (self.cond_i, self.cond_ii, self.cond_iii, self.cond_iv)

    @property
    def flags_agree(self):
        return len(set(self.flags)) == 1

    @property
    def balanced(self):
        return self.additive_type and all(self.flags)


def _matrix_in_basis(H, images, basis):
    """Coordinates (columns) of sparse vectors in a sparse basis, or None."""
    if not images:
        return la.zeros(len(basis), 0)
    keys = sorted({key for v in basis for key in v} | {key for v in images for key in v})
    pos = {key: i for i, key in enumerate(keys)}
    B = la.zeros(len(keys), len(basis))
    for c, v in enumerate(basis):
        for key, x in v.items():
            B[pos[key], c] = x
    out = la.zeros(len(basis), len(images))
    for c, v in enumerate(images):
        b = np.zeros(len(keys), dtype=np.int64)
        for key, x in v.items():
            b[pos[key]] = x
        sol = la.solve(H.field, B, b) if basis else (np.zeros(0, np.int64) if not v else None)
        if sol is None:
            return None
        out[:, c] = sol
    return out


def p_power_maps(H):
    """Linearised matrices of f_t: Prim_{p^t} -> Prim_{p^{t+1}}, x -> x^p, t < r-1."""
    by_power = hopf.primitives(H).by_power
    maps = []
    for t in range(H.field.r - 1):
        images = [H.frob_elem(z) for z in by_power[t]]
        maps.append(_matrix_in_basis(H, images, by_power[t + 1]))
    return maps


def generated_subalgebra_dim(H, gens):
    """Dimension of the subalgebra generated by sparse vectors ``gens``."""
    k = H.field
    ech = la.SparseEchelon(k)
    ech.insert({0: 1})
    frontier = [{0: 1}]
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = H.mul(v, g)
                red, _ = ech.reduce(w)
                if red:
                    ech.insert(red)
                    new.append(red)
        frontier = new
        if len(ech) == H.dim:
            break
    return len(ech)


def is_balanced(G):
    H = G.hopf if hasattr(G, "hopf") else G
    k = H.field
    prim = hopf.primitives(H)
    ranks = tuple(len(b) for b in prim.by_power)
    p1 = prim.by_power[0]
    additive = generated_subalgebra_dim(H, p1) == H.dim
    cond_i = True
    for A in p_power_maps(H):
        if A is None or A.shape[0] != A.shape[1] or not la.is_invertible(k, A):
            cond_i = False
    imgs = []
    for z in p1:
        for _ in range(k.r - 1):
            z = H.frob_elem(z)
        imgs.append(z)
    if imgs:
        keys = sorted({key for v in imgs for key in v})
        pos = {key: i for i, key in enumerate(keys)}
        A = la.zeros(len(keys), len(imgs))
        for c, v in enumerate(imgs):
            for key, x in v.items():
                A[pos[key], c] = x
        cond_ii = la.rank(k, A) == len(imgs) if keys else False
    else:
        cond_ii = True
    cond_iii = len(set(ranks)) == 1
    cond_iv = H.dim == k.q ** ranks[0]
    return BalanceReport(additive, cond_i, cond_ii, cond_iii, cond_iv, ranks, H.dim)


def is_quasi_balanced(G):
    H = G.hopf if hasattr(G, "hopf") else G
    ranks = hopf.eigen_profile(H)
    return len(set(ranks)) <= 1, ranks


@dataclass
class EigenCount:
    q: int
    s_list: tuple
    S_coeffs: list
    ranks: tuple

    @property
    def quasi_balanced(self):
        return len(set(self.ranks)) <= 1


def fold(coeffs, q):
    """Fold coefficients of X^a, a >= 1, into classes j = 1..q-1 (a = 0 mod q-1 -> q-1)."""
    m = q - 1
    out = [0] * m
    for a in range(1, len(coeffs)):
        out[(a - 1) % m] += int(coeffs[a])
    return tuple(out)


def s_series(s_list, q, cap=2**20):
    p, _ = split_q(q)
    s_list = tuple(int(s) for s in s_list)
    order = p ** sum(s_list)
    if order > cap:
        raise TooLarge(f"order {order} exceeds {cap}")
    S = np.array([1], dtype=np.int64)
    for s in s_list:
        S = np.convolve(S, np.ones(p**s, dtype=np.int64))
    return EigenCount(q, s_list, [int(c) for c in S], fold(S, q))


def count_eigen_tuples(n, q, j, mode="formula"):
    """#{0 != e in {0..q-1}^n : sum e_i = j mod q-1}."""
    if mode == "formula":
        return (q**n - 1) // (q - 1)
    if q**n > 10**7:
        raise TooLarge(f"{q}^{n} tuples exceed the enumeration cap")
    sums = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        sums = (sums[:, None] + np.arange(q)[None, :]).ravel()
    hits = (sums[1:] - j) % (q - 1) == 0
    return int(hits.sum())


@dataclass
class LisaVerdict:
    quasi_balanced: bool
    reason: str


def lisa_criterion(s_list, q):
    p, r = split_q(q)
    s_list = [int(s) for s in s_list]
    if q != 4:
        bad = [s for s in s_list if s % r]
        if bad:
            return LisaVerdict(False, f"r={r} does not divide exponents {bad}")
        return LisaVerdict(True, f"r={r} divides every exponent")
    odd = sum(1 for s in s_list if s % 2)
    if odd % 6:
        return LisaVerdict(False, f"q=4 and {odd} exponents are odd, not a multiple of 6")
    return LisaVerdict(True, f"q=4 and {odd} exponents are odd, a multiple of 6")


def product_rank_formula(profile_g, profile_h, q):
    """Eigenranks of G x H from those of G and H, with I_0 taken to be A."""
    m = q - 1
    if len(profile_g) != m or len(profile_h) != m:
        raise LengthMismatch(f"profiles must have length q-1={m}")
    a = [1] + list(profile_g)
    b = [1] + list(profile_h)
    out = [0] * m
    for k_ in range(q):
        for l in range(q):
            if k_ == 0 and l == 0:
                continue
            j = (k_ + l) % m
            out[(j - 1) % m] += a[k_] * b[l]
    return tuple(int(x) for x in out)
