"""Structure of balanced group schemes: etale part times connected alphas."""
from dataclasses import dataclass

import numpy as np

from . import hopf
from . import linalg as la
from .balance import is_balanced
from .errors import CapExceeded, NotBalanced, TooLarge
from .functors import GroupScheme, dieudonne, drinfeld
from .shtuka import ss_nil_split, cyclic_decompose

ENUMERATION_CAP = 2**16


def alpha_q_power(field, s):
    """alpha_{q^s} = Spec k[x]/(x^(q^s)) with x primitive of weight 1."""
    return GroupScheme.from_presentation(hopf.single(field, field.q**s))


def _presentation(G):
    P = G.presentation if isinstance(G, GroupScheme) else G.presentation
    if P is None:
        raise ValueError("point counting needs a presented group scheme")
    return P


def _linear_count(K, emb, P):
    """p^dim of the kernel of y -> (y_i^{e_i} - sum lambda_ij y_j)_i on K^n."""
    n = len(P.generators)
    if n == 0:
        return 1
    N = K.n
    gpow = [K.pow(K.gen, t) for t in range(N)] if N > 1 else [1]
    cols = []
    for i, g in enumerate(P.generators):
        for c in gpow:
            img = np.zeros(n, dtype=np.int64)
            img[i] = K.pow(c, g.trunc)
            for i2, g2 in enumerate(P.generators):
                for j, lam in g2.relation:
                    if j == i:
                        img[i2] = K.sub(int(img[i2]), K.mul(int(emb[lam]), c))
            cols.append(K.digits(img).ravel())
    A = np.array(cols).T
    return K.p ** (A.shape[1] - la.fp_rank(A, K.p))


def _enumerate_count(K, emb, P):
    n = len(P.generators)
    if n == 0:
        return 1
    if K.order**n > ENUMERATION_CAP * 16:
        raise TooLarge(f"{K.order}^{n} candidate points")
    grids = np.indices((K.order,) * n).reshape(n, -1)
    ok = np.ones(grids.shape[1], dtype=bool)
    for i, g in enumerate(P.generators):
        y = grids[i]
        lhs = np.where(y == 0, 0, K._t.exp_np[(np.clip(K._t.log_np[y], 0, None) * g.trunc) % max(K.order - 1, 1)])
        rhs = np.zeros_like(y)
        for j, lam in g.relation:
            rhs = K.vadd(rhs, K.vmul(grids[j], int(emb[lam])))
        ok &= lhs == rhs
    return int(ok.sum())


def point_count(G, m=1, method="auto"):
    """Number of algebra maps B_G -> K with [K : k] = m."""
    P = _presentation(G)
    K, emb = P.field.extension(m)
    n = len(P.generators)
    if method == "auto":
        method = "enumerate" if K.order**n <= ENUMERATION_CAP else "linear"
    if method == "enumerate":
        return _enumerate_count(K, emb, P)
    return _linear_count(K, emb, P)


def fixed_vector_count(M, m):
    """#{v in K^n : F v^[q] = v} over the degree-m extension K of k."""
    k = M.field
    K, emb = k.extension(m)
    n = M.n
    if n == 0:
        return 1
    F = emb[M.F]
    gpow = [K.pow(K.gen, t) for t in range(K.n)] if K.n > 1 else [1]
    cols = []
    for j in range(n):
        for c in gpow:
            v = np.zeros(n, dtype=np.int64)
            v[j] = c
            img = K.vsub(la.matmul(K, F, K.vfrob_q(v)), v)
            cols.append(K.digits(img).ravel())
    A = np.array(cols).T
    return K.p ** (A.shape[1] - la.fp_rank(A, K.p))


@dataclass
class StructureReport:
    etale_order: int
    connected_exponents: list
    constancy_degree: object
    total_order: int
    q: int
    etale_shtuka: object = None
    balance: object = None
    k_order: int = None

    def expression(self):
        k_deg = self.constancy_degree
        if isinstance(k_deg, int):
            const = f"constant over F_{(self.k_order or self.q) ** k_deg}"
        else:
            const = "constancy degree exceeds cap"
        parts = []
        if self.etale_order > 1:
            parts.append(f"(etale of order {self.etale_order}, {const})")
        parts += [f"alpha_{{q^{s}}}" if s > 1 else "alpha_q" for s in self.connected_exponents]
        return "G ≅ " + (" × ".join(parts) if parts else "trivial group")


def structure_decompose(G, cap=8, strict=False):
    H = G.hopf if isinstance(G, GroupScheme) else G
    rep = is_balanced(H)
    if not rep.balanced:
        raise NotBalanced(f"group scheme is not balanced: {rep}")
    k = H.field
    M = dieudonne(H)
    ss, nil, _ = ss_nil_split(M)
    exps = cyclic_decompose(nil) if nil.n else []
    target = k.q**ss.n
    degree = None
    for m in range(1, cap + 1):
        if k.order**m > 2**20:
            break
        if fixed_vector_count(ss, m) == target:
            degree = m
            break
    if degree is None:
        if strict:
            raise CapExceeded(f"etale part not constant over extensions of degree <= {cap}")
        degree = "exceeds cap"
    total = target * k.q ** sum(exps)
    return StructureReport(target, sorted(exps, reverse=True), degree, total, k.q, ss, rep, k.order)


def reassemble(report, field=None):
    """drinfeld(M_ss) x prod alpha_{q^s}, as a tensor product."""
    field = report.etale_shtuka.field if field is None else field
    G = drinfeld(report.etale_shtuka, verify=False)
    H, P = G.hopf, G.presentation
    for s in report.connected_exponents:
        A = alpha_q_power(field, s)
        H = hopf.tensor_product(H, A.hopf, verify=False)
        P = P.concat(A.presentation)
    return GroupScheme(H, P)


def is_etale(G):
    """B_G is reduced, i.e. x -> x^p is injective."""
    H = G.hopf if isinstance(G, GroupScheme) else G
    return la.rank(H.field, hopf.frobenius_matrix(H)) == H.dim


def is_connected(G):
    """Every element of the augmentation ideal is nilpotent."""
    H = G.hopf if isinstance(G, GroupScheme) else G
    p = H.field.p
    steps = 1
    while p**steps < H.dim:
        steps += 1
    for i in range(1, H.dim):
        x = {i: 1}
        for _ in range(steps):
            x = H.frob_elem(x)
            if not x:
                break
        if x:
            return False
    return True
