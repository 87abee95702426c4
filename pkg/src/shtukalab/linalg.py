"""Exact linear algebra over k (code arrays) and over F_p (integer arrays).

Dense matrices are numpy int64 arrays of field codes.  Sparse vectors are
dicts mapping a hashable key to a nonzero code.
"""
import numpy as np


def asmat(F, rows, ncols=None):
    a = np.asarray(rows, dtype=np.int64)
    if a.size == 0:
        return np.zeros((len(rows) if ncols is None or a.ndim < 2 else a.shape[0], ncols or 0), np.int64)
    return a


def zeros(n, m=None):
    return np.zeros((n, n if m is None else m), dtype=np.int64)


def identity(n):
    return np.eye(n, dtype=np.int64)


def matmul(F, A, B):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.ndim == 1:
        return matmul(F, A[None, :], B)[0]
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    if A.shape[1] == 0:
        out = np.zeros((A.shape[0], B.shape[1]), np.int64)
    else:
        out = F.vsum(F.vmul(A[:, :, None], B[None, :, :]), axis=1)
    return out[:, 0] if vec else out


def twist(F, A, t=1):
    """Raise every entry to the q^t-th power (t may be negative)."""
    return F.vfrob_q(np.asarray(A, dtype=np.int64), t)


def scale(F, c, A):
    return F.vmul(np.full(np.shape(A), c, dtype=np.int64), A)


def rref(F, A, order=None):
    """Reduced row echelon form.

    ``order`` lists the column indices in the order they are preferred as
    pivots (default left to right).  Returns (R, pivots) with R having only
    the nonzero rows.
    """
    R = np.array(A, dtype=np.int64, copy=True)
    if R.ndim != 2 or R.shape[0] == 0:
        return R.reshape(0, R.shape[1] if R.ndim == 2 else 0), []
    nrows, ncols = R.shape
    cols = range(ncols) if order is None else order
    pivots = []
    row = 0
    for c in cols:
        if row == nrows:
            break
        nz = np.flatnonzero(R[row:, c])
        if nz.size == 0:
            continue
        k = row + int(nz[0])
        if k != row:
            R[[row, k]] = R[[k, row]]
        inv = F.inv(int(R[row, c]))
        if inv != 1:
            R[row] = F.vmul(R[row], inv)
        others = np.flatnonzero(R[:, c])
        others = others[others != row]
        if others.size:
            factors = R[others, c]
            R[others] = F.vsub(R[others], F.vmul(factors[:, None], R[row][None, :]))
        pivots.append(c)
        row += 1
    return R[:row], pivots


def rank(F, A):
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F, A, ncols=None):
    """Basis of {x : A x = 0}, returned as the columns of a matrix."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1] if A.ndim == 2 else (ncols or 0)
    if A.size == 0:
        return identity(n)
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    N = np.zeros((n, len(free)), dtype=np.int64)
    for j, c in enumerate(free):
        N[c, j] = 1
        for i, pc in enumerate(piv):
            N[pc, j] = F.neg(int(R[i, c]))
    return N


def colspace(F, A):
    """Basis of the column space (as columns), in echelon form."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return np.zeros((A.shape[0], 0), np.int64)
    R, _ = rref(F, A.T)
    return R.T


def inverse(F, A):
    """Inverse of a square matrix, or None if singular."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if n == 0:
        return zeros(0)
    R, piv = rref(F, np.hstack([A, identity(n)]))
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return R[:, n:]


def is_invertible(F, A):
    A = np.asarray(A, dtype=np.int64)
    return A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]


def solve(F, A, b):
    """One solution x of A x = b, or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    aug = np.hstack([A, b[:, None]])
    R, piv = rref(F, aug)
    n = A.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, n]
    return x


def complement(F, S, n):
    """Columns extending the column basis S of a subspace to a basis of k^n."""
    S = np.asarray(S, dtype=np.int64).reshape(n, -1)
    _, piv = rref(F, S.T)
    missing = [c for c in range(n) if c not in set(piv)]
    return identity(n)[:, missing]


# -- F_p linear algebra ----------------------------------------------------


def fp_rref(A, p):
    R = np.array(A, dtype=np.int64, copy=True) % p
    if R.ndim != 2 or R.shape[0] == 0:
        return R.reshape(0, R.shape[1] if R.ndim == 2 else 0), []
    nrows, ncols = R.shape
    pivots, row = [], 0
    for c in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(R[row:, c])
        if nz.size == 0:
            continue
        k = row + int(nz[0])
        if k != row:
            R[[row, k]] = R[[k, row]]
        R[row] = (R[row] * pow(int(R[row, c]), -1, p)) % p
        others = np.flatnonzero(R[:, c])
        others = others[others != row]
        if others.size:
            R[others] = (R[others] - R[others, c][:, None] * R[row][None, :]) % p
        pivots.append(c)
        row += 1
    return R[:row], pivots


def fp_rank(A, p):
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(fp_rref(A, p)[1])


def fp_nullspace(A, p, ncols=None):
    """Basis of the F_p-kernel as the rows of a matrix."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1] if A.ndim == 2 else (ncols or 0)
    if A.size == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = fp_rref(A, p)
    pset = set(piv)
    free = [c for c in range(n) if c not in pset]
    N = np.zeros((len(free), n), dtype=np.int64)
    for j, c in enumerate(free):
        N[j, c] = 1
        for i, pc in enumerate(piv):
            N[j, pc] = (-R[i, c]) % p
    return N


# -- sparse vectors ------------------------------------------------------------


def sp_axpy(F, y, c, x):
    """y += c*x in place for sparse vectors."""
    if not c:
        return y
    add, mul = F.add, F.mul
    for key, val in x.items():
        s = add(y.get(key, 0), mul(c, val))
        if s:
            y[key] = s
        else:
            y.pop(key, None)
    return y


def sp_scale(F, c, x):
    if not c:
        return {}
    return {key: F.mul(c, val) for key, val in x.items()}


class SparseEchelon:
    """Incremental echelon basis of sparse vectors over k.

    Each stored row is normalised so its largest key has coefficient 1.
    When ``track`` is set, every row carries the combination of inserted
    vectors that produced it, so dependent insertions yield kernel vectors.
    """

    def __init__(self, F, track=False):
        self.F = F
        self.rows = {}
        self.track = track

    def reduce(self, vec, comb=None):
        F = self.F
        vec = dict(vec)
        comb = dict(comb) if comb is not None else None
        while vec:
            key = max(vec)
            row = self.rows.get(key)
            if row is None:
                break
            c = F.neg(vec[key])
            sp_axpy(F, vec, c, row[0])
            if comb is not None:
                sp_axpy(F, comb, c, row[1])
        return vec, comb

    def insert(self, vec, tag=None):
        """Insert a vector; returns None if independent, else the kernel
        combination (dict tag -> coefficient) it witnesses."""
        comb = {tag: 1} if self.track else None
        vec, comb = self.reduce(vec, comb)
        if not vec:
            return comb if self.track else {}
        key = max(vec)
        inv = self.F.inv(vec[key])
        vec = sp_scale(self.F, inv, vec)
        if comb is not None:
            comb = sp_scale(self.F, inv, comb)
        self.rows[key] = (vec, comb)
        return None

    def contains(self, vec):
        return not self.reduce(vec)[0]

    def __len__(self):
        return len(self.rows)


def sparse_kernel(F, vectors, tags):
    """Kernel of the linear map e_tag -> vectors[tag], as sparse combos."""
    ech = SparseEchelon(F, track=True)
    kernel = []
    for tag, vec in zip(tags, vectors):
        comb = ech.insert(vec, tag)
        if comb is not None:
            kernel.append(comb)
    return kernel
