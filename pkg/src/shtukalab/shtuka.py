"""Finite F_q-shtukas (M, f) over k with f(v) = F . v^[q].

A morphism C: (M, F) -> (M', F') satisfies C F = F' C^[q], and a change of
basis P turns F into P^-1 F P^[q].
"""
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .errors import DegreeMismatch, DimensionMismatch, FieldMismatch, NotNilpotent


class Shtuka:
    def __init__(self, field, F):
        F = np.asarray(F, dtype=np.int64)
        if F.size == 0:
            F = np.zeros((0, 0), np.int64)
        if F.ndim != 2 or F.shape[0] != F.shape[1]:
            raise DimensionMismatch(f"shtuka matrix must be square, got shape {F.shape}")
        if F.size and (F.min() < 0 or F.max() >= field.order):
            raise ValueError("matrix entries are not codes of the field")
        self.field = field
        self.F = F
        self.F.setflags(write=False)
        self.n = F.shape[0]

    @classmethod
    def from_strings(cls, field, rows):
        return cls(field, [[field.parse(e) for e in row] for row in rows])

    def __repr__(self):
        rows = [[self.field.to_str(a) for a in row] for row in self.F]
        return f"Shtuka(q={self.field.q}, n={self.n}, F={rows})"

    def __eq__(self, other):
        return isinstance(other, Shtuka) and self.field == other.field and np.array_equal(self.F, other.F)

    def apply(self, v):
        return apply(self, v)

    def iterate(self, t):
        """Matrix F_t with f^t(v) = F_t . v^[q^t]."""
        k = self.field
        Ft = la.identity(self.n)
        for i in range(t):
            Ft = la.matmul(k, Ft, la.twist(k, self.F, i))
        return Ft

    def conjugate(self, P):
        """The same shtuka written in the basis given by the columns of P."""
        k = self.field
        Pinv = la.inverse(k, P)
        if Pinv is None:
            raise ValueError("change of basis is singular")
        return Shtuka(k, la.matmul(k, Pinv, la.matmul(k, self.F, la.twist(k, P))))

    def is_etale(self):
        return la.is_invertible(self.field, self.F)

    def is_nilpotent(self):
        return not self.iterate(self.n).any()

    def coker_dim(self):
        return self.n - la.rank(self.field, self.F)

    def direct_sum(self, other):
        n1, n2 = self.n, other.n
        F = la.zeros(n1 + n2)
        F[:n1, :n1] = self.F
        F[n1:, n1:] = other.F
        return Shtuka(self.field, F)


@dataclass(frozen=True)
class ShtukaMorphism:
    source: Shtuka
    target: Shtuka
    C: np.ndarray

    def __post_init__(self):
        k = self.source.field
        C = np.asarray(self.C, dtype=np.int64).reshape(self.target.n, self.source.n)
        object.__setattr__(self, "C", C)
        if not is_morphism(self.source, self.target, C):
            raise ValueError("matrix does not commute with the semilinear maps")

    def compose(self, other):
        """self o other."""
        return ShtukaMorphism(other.source, self.target, la.matmul(self.source.field, self.C, other.C))

    def is_iso(self):
        return la.is_invertible(self.source.field, self.C)


def apply(M, v):
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (M.n,):
        raise DimensionMismatch(f"vector of length {v.shape} for rank {M.n}")
    k = M.field
    return la.matmul(k, M.F, la.twist(k, v))


def is_morphism(M, N, C):
    k = M.field
    C = np.asarray(C, dtype=np.int64)
    return np.array_equal(la.matmul(k, C, M.F), la.matmul(k, N.F, la.twist(k, C)))


def _check_fields(M, N):
    if M.field != N.field:
        raise FieldMismatch(f"{M.field!r} vs {N.field!r}")


def fq_span_basis(field, mats):
    """Pick an F_q-basis of the F_q-span of code arrays whose F_p-span is
    already closed under F_q; ``mats`` is an F_p-basis of that span."""
    fq = field.fp_basis_of_fq()
    p = field.p
    chosen, rows = [], np.zeros((0, 0), np.int64)
    for X in mats:
        flat = field.digits(X.ravel()).ravel()
        if rows.size and la.fp_rank(np.vstack([rows, flat]), p) == rows.shape[0]:
            continue
        chosen.append(X)
        new = np.array([field.digits(field.vmul(X.ravel(), z)).ravel() for z in fq])
        rows = new if not rows.size else np.vstack([rows, new])
    return chosen


def hom_space(M, N):
    """F_q-basis (list of matrices) of Hom(M, N) = {C : C F = F' C^[q]}."""
    _check_fields(M, N)
    k = M.field
    n, n2, N_ = M.n, N.n, k.n
    if n == 0 or n2 == 0:
        return []
    gpow = [k.pow(k.gen, d) for d in range(N_)] if k.n > 1 else [1]
    cols = []
    for a in range(n2):
        for b in range(n):
            for d in range(N_):
                c = gpow[d]
                img = la.zeros(n2, n)
                img[a, :] = k.vmul(M.F[b, :], c)
                img = k.vsub(img, _outer_col(k, N.F[:, a], k.frob_q(c), b, n2, n))
                cols.append(k.digits(img.ravel()).ravel())
    A = np.array(cols).T
    ker = la.fp_nullspace(A, k.p)
    mats = []
    for row in ker:
        coeffs = row.reshape(n2, n, N_)
        mats.append(k.from_digits(coeffs))
    return fq_span_basis(k, mats)


def _outer_col(k, col, c, b, n2, n):
    out = la.zeros(n2, n)
    out[:, b] = k.vmul(col, c)
    return out


def hom_dim(M, N):
    return len(hom_space(M, N))


def fq_combination(k, basis, coeffs):
    acc = np.zeros_like(basis[0])
    for c, X in zip(coeffs, basis):
        if c:
            acc = k.vadd(acc, k.vmul(X, c))
    return acc


def is_isomorphic(M, N, rng=None, exhaustive_limit=4096, samples=10**4):
    """Decide M = N by searching Hom(M, N) for an invertible element.

    Returns (verdict, how, witness) where how is "exact" or "probable".
    """
    _check_fields(M, N)
    k = M.field
    if M.n != N.n:
        return False, "exact", None
    if M.n == 0:
        return True, "exact", la.zeros(0)
    basis = hom_space(M, N)
    if not basis:
        return False, "exact", None
    rng = np.random.default_rng(0) if rng is None else rng
    sub = k.subfield_elements()
    for _ in range(32):
        C = fq_combination(k, basis, rng.choice(sub, len(basis)))
        if la.is_invertible(k, C):
            return True, "exact", C
    h = len(basis)
    if k.q**h <= exhaustive_limit:
        for idx in np.ndindex(*([k.q] * h)):
            C = fq_combination(k, basis, sub[list(idx)])
            if la.is_invertible(k, C):
                return True, "exact", C
        return False, "exact", None
    for _ in range(samples):
        C = fq_combination(k, basis, rng.choice(sub, h))
        if la.is_invertible(k, C):
            return True, "exact", C
    return False, "probable", None


def ss_nil_split(M):
    """Return (M_ss, M_nil, P): columns of P are a basis of M_ss followed
    by a basis of M_nil, and M.conjugate(P) is block diagonal."""
    k, n = M.field, M.n
    if n == 0:
        return M, M, la.zeros(0)
    Fn = M.iterate(n)
    S = la.colspace(k, Fn)
    Nn = la.twist(k, la.nullspace(k, Fn), -n)
    P = np.hstack([S, Nn])
    B = M.conjugate(P).F
    d = S.shape[1]
    assert not B[:d, d:].any() and not B[d:, :d].any()
    return Shtuka(k, B[:d, :d]), Shtuka(k, B[d:, d:]), P


def kernel_of_power(M, t):
    """Basis (columns) of ker f^t."""
    k = M.field
    return la.twist(k, la.nullspace(k, M.iterate(t)), -t)


def cyclic_decompose(M, with_basis=False):
    """Exponents s_1 >= ... >= s_h of the cyclic blocks of a nilpotent shtuka.

    With ``with_basis`` also return P such that M.conjugate(P) is the block
    matrix with ones on the superdiagonal of each block.
    """
    k, n = M.field, M.n
    if not M.is_nilpotent():
        raise NotNilpotent("f is not nilpotent")
    kers = [la.zeros(n, 0)]
    t = 0
    while kers[-1].shape[1] < n:
        t += 1
        kers.append(kernel_of_power(M, t))
    dims = [K.shape[1] for K in kers]
    top = len(dims) - 1
    at_least = [dims[t] - dims[t - 1] for t in range(1, top + 1)]
    exps = []
    for t in range(top, 0, -1):
        more = at_least[t] if t < top else 0
        exps += [t] * (at_least[t - 1] - more)
    if not with_basis:
        return exps
    chains = []
    level = []
    for t in range(top, 0, -1):
        current = [kers[t - 1][:, j] for j in range(dims[t - 1])] + level
        base = np.array(current).T if current else la.zeros(n, 0)
        rk = la.rank(k, base.T) if current else 0
        new = []
        for j in range(dims[t]):
            cand = kers[t][:, j]
            trial = np.hstack([base, cand[:, None]]) if base.size else cand[:, None]
            if la.rank(k, trial.T) > rk:
                base, rk = trial, rk + 1
                new.append(cand)
        for v in new:
            chain = [v]
            for _ in range(t - 1):
                chain.append(apply(M, chain[-1]))
            chains.append(chain)
        level = [apply(M, v) for v in level + new]
        level = [v for v in level if v.any()]
    cols = [v for chain in chains for v in reversed(chain)]
    P = np.array(cols).T if cols else la.zeros(0)
    return exps, P


def restrict_scalars(M, n):
    """Regard a q^n-shtuka as a q-shtuka of rank n.rk(M).

    The matrix has identity blocks on the block superdiagonal and F in the
    lower-left block; the copy of M sits in the last slot.
    """
    k = M.field
    if n < 1 or k.r % n:
        raise DegreeMismatch(f"q-degree {k.r} of the shtuka is not divisible by n={n}")
    target = k.reinterpret(k.r // n)
    d = M.n
    B = la.zeros(n * d)
    for i in range(n - 1):
        B[i * d:(i + 1) * d, (i + 1) * d:(i + 2) * d] = la.identity(d)
    B[(n - 1) * d:, :d] = M.F
    return Shtuka(target, B)


def random_shtuka(field, n, rng, kind="any"):
    """Random rank-n shtuka; kind is any, etale or nilpotent."""
    if kind == "etale":
        while True:
            F = rng.integers(0, field.order, (n, n))
            if la.is_invertible(field, F):
                return Shtuka(field, F)
    if kind == "nilpotent":
        U = np.triu(rng.integers(0, field.order, (n, n)), 1)
        while True:
            P = rng.integers(0, field.order, (n, n))
            if la.is_invertible(field, P):
                return Shtuka(field, U).conjugate(P)
    return Shtuka(field, rng.integers(0, field.order, (n, n)))


def random_base_change(field, n, rng):
    while True:
        P = rng.integers(0, field.order, (n, n))
        if la.is_invertible(field, P):
            return P
