"""Finite commutative Hopf algebras over k on explicit bases.

Structure maps are kept as functions returning sparse vectors so that large
monomial algebras are only materialised on demand:

* ``mult(i, j)``  -> {k: c}        with b_i b_j = sum c b_k
* ``comult(k)``   -> {(i, j): c}   with Delta(b_k) = sum c b_i (x) b_j
* ``antipode(k)`` -> {i: c}

Every algebra built here uses the same normalisation: b_0 is the unit and the
counit is the coordinate at b_0.  Each basis vector is homogeneous for the
F_q^x-action, [a]* b = a^w b, with w = ``weights[i]`` taken mod q-1.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from . import linalg as la
from .errors import AxiomViolation, NonConfluent, TooLarge, WeightIncompatibleRelation

DIM_CAP = 4096
DUAL_CAP = 1024


def dim_cap():
    env = os.environ.get("SHTUKALAB_CAP")
    return int(env) if env else DIM_CAP


def _is_p_power(e, p):
    while e > 1 and e % p == 0:
        e //= p
    return e == 1


@dataclass(frozen=True)
class Generator:
    name: str
    weight: int
    trunc: int
    relation: tuple = ()  # ((generator index, code), ...)


@dataclass(frozen=True)
class HopfPresentation:
    """Primitive generators x_i of weight w_i with x_i^{e_i} = sum lambda_ij x_j."""

    field: object
    generators: tuple = dc_field(default=())

    @property
    def dim(self):
        d = 1
        for g in self.generators:
            d *= g.trunc
        return d

    def relation_matrix(self):
        """Lambda with Lambda[j, i] = coefficient of x_j in the image of x_i^{e_i}."""
        n = len(self.generators)
        L = la.zeros(n)
        for i, g in enumerate(self.generators):
            for j, c in g.relation:
                L[j, i] = c
        return L

    def concat(self, other):
        shift = len(self.generators)
        gens = list(self.generators)
        for g in other.generators:
            gens.append(Generator(g.name, g.weight, g.trunc, tuple((j + shift, c) for j, c in g.relation)))
        return HopfPresentation(self.field, tuple(gens))

    def validate(self):
        k = self.field
        p, qm1 = k.p, k.q - 1
        n = len(self.generators)
        for i, g in enumerate(self.generators):
            if g.trunc < p or not _is_p_power(g.trunc, p):
                raise ValueError(f"truncation {g.trunc} of {g.name} is not a p-power >= p")
            for j, c in g.relation:
                if not 0 <= j < n:
                    raise ValueError(f"relation of {g.name} refers to unknown generator {j}")
                if c and (g.trunc * g.weight - self.generators[j].weight) % qm1:
                    raise WeightIncompatibleRelation(
                        f"{g.name}^{g.trunc} has weight {g.trunc * g.weight % qm1} mod {qm1} "
                        f"but {self.generators[j].name} has weight {self.generators[j].weight % qm1}")


def single(field, trunc, relation=0, weight=1, name="x"):
    """One generator with x^trunc = relation * x."""
    rel = ((0, relation),) if relation else ()
    return HopfPresentation(field, (Generator(name, weight, trunc, rel),))


def alpha(field, s):
    """alpha_{p^s}: k[x]/(x^{p^s}) with x primitive of weight 1."""
    return single(field, field.p**s)


def constant_fq(field):
    """The constant group F_q: k[x]/(x^q - x)."""
    return single(field, field.q, 1)


def power_presentation(P, n):
    out = HopfPresentation(P.field, ())
    for _ in range(n):
        out = out.concat(P)
    return out


class FiniteHopf:
    def __init__(self, field, dim, weights, labels, mult, comult, antipode,
                 provenance, presentation=None, monomial=False):
        self.field = field
        self.dim = int(dim)
        self.weights = np.asarray(weights, dtype=np.int64) % max(field.q - 1, 1)
        self.labels = list(labels)
        self._mult_fn, self._comult_fn, self._antipode_fn = mult, comult, antipode
        self._mult_cache, self._comult_cache = {}, {}
        self.provenance = provenance
        self.presentation = presentation
        self.monomial = monomial
        self._prim = None

    def __repr__(self):
        return f"FiniteHopf(dim={self.dim}, q={self.field.q}, provenance={self.provenance!r})"

    @property
    def order(self):
        return self.dim

    # structure maps -----------------------------------------------------
    def mult(self, i, j):
        key = (i, j) if i <= j else (j, i)
        out = self._mult_cache.get(key)
        if out is None:
            out = self._mult_fn(*key)
            self._mult_cache[key] = out
        return out

    def comult(self, k):
        out = self._comult_cache.get(k)
        if out is None:
            out = self._comult_fn(k)
            self._comult_cache[k] = out
        return out

    def antipode(self, k):
        return self._antipode_fn(k)

    def class_of(self, i):
        return int(self.weights[i])

    # sparse element arithmetic -------------------------------------------
    def mul(self, x, y):
        F = self.field
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                la.sp_axpy(F, out, F.mul(a, b), self.mult(i, j))
        return out

    def power(self, x, e):
        result = {0: 1}
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def frob_elem(self, x):
        """x^p, computed as sum c^p b_i^p."""
        F = self.field
        out = {}
        for i, c in x.items():
            la.sp_axpy(F, out, F.frob(c, 1), self.basis_pth_power(i))
        return out

    def basis_pth_power(self, i):
        cache = self.__dict__.setdefault("_pth", {})
        if i not in cache:
            cache[i] = self.power({i: 1}, self.field.p)
        return cache[i]

    def comult_vec(self, x):
        out = {}
        for k, c in x.items():
            la.sp_axpy(self.field, out, c, self.comult(k))
        return out

    def tensor_mul(self, X, Y):
        F = self.field
        out = {}
        for (a, b), c in X.items():
            for (e, f), d in Y.items():
                cd = F.mul(c, d)
                left, right = self.mult(a, e), self.mult(b, f)
                for u, cu in left.items():
                    for v, cv in right.items():
                        key = (u, v)
                        s = F.add(out.get(key, 0), F.mul(cd, F.mul(cu, cv)))
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
        return out

    def counit(self, x):
        return x.get(0, 0)

    # dense views ------------------------------------------------------------
    def mult_tensor(self):
        d = self.dim
        T = np.zeros((d, d, d), dtype=np.int64)
        for i in range(d):
            for j in range(i, d):
                for k, c in self.mult(i, j).items():
                    T[i, j, k] = T[j, i, k] = c
        return T

    def comult_tensor(self):
        d = self.dim
        T = np.zeros((d, d, d), dtype=np.int64)
        for k in range(d):
            for (i, j), c in self.comult(k).items():
                T[k, i, j] = c
        return T

    def order_key(self, i):
        lab = self.labels[i]
        if isinstance(lab, tuple) and all(isinstance(a, int) for a in lab):
            return (sum(lab), lab)
        return (i,)


def _check_cap(d, cap=None):
    cap = dim_cap() if cap is None else cap
    if d > cap:
        raise TooLarge(f"dimension {d} exceeds cap {cap}")


def expand(P, verify=True, cap=None):
    """Expand a presentation to its monomial-basis Hopf algebra.

    Basis: exponent vectors a with 0 <= a_i < e_i in mixed radix, the first
    generator most significant.  Products are reduced with the rewriting
    x_i^{e_i} -> sum lambda_ij x_j, whose heads are powers of distinct
    variables and hence form a Groebner basis.
    """
    P.validate()
    k = P.field
    p = k.p
    gens = P.generators
    n = len(gens)
    truncs = [g.trunc for g in gens]
    d = P.dim
    _check_cap(d, cap)
    strides = [1] * n
    for i in range(n - 2, -1, -1):
        strides[i] = strides[i + 1] * truncs[i + 1]
    labels = [tuple(int(a) for a in idx) for idx in np.ndindex(*truncs)] if n else [()]
    weights = [sum(a * g.weight for a, g in zip(lab, gens)) for lab in labels]

    def index(a):
        return sum(x * s for x, s in zip(a, strides))

    nf_cache = {}
    pending = set()

    def normal_form(c):
        out = nf_cache.get(c)
        if out is not None:
            return out
        if c in pending:
            raise NonConfluent(f"rewriting loops at exponent {c}")
        pending.add(c)
        for i, (ci, e) in enumerate(zip(c, truncs)):
            if ci >= e:
                out = {}
                base = list(c)
                base[i] -= e
                for j, lam in gens[i].relation:
                    nxt = list(base)
                    nxt[j] += 1
                    la.sp_axpy(k, out, lam, normal_form(tuple(nxt)))
                break
        else:
            out = {index(c): 1}
        pending.discard(c)
        nf_cache[c] = out
        return out

    def mult(i, j):
        return normal_form(tuple(a + b for a, b in zip(labels[i], labels[j])))

    binom_cache = {}

    def binom(a, b):
        key = (a, b)
        if key not in binom_cache:
            binom_cache[key] = comb(a, b) % p
        return binom_cache[key]

    def comult(kk):
        a = labels[kk]
        terms = {(): 1}
        for ai in a:
            nxt = {}
            for pre, c in terms.items():
                for bi in range(ai + 1):
                    cb = binom(ai, bi)
                    if cb:
                        nxt[pre + (bi,)] = c * cb % p
            terms = nxt
        out = {}
        for b, c in terms.items():
            rest = tuple(x - y for x, y in zip(a, b))
            out[(index(b), index(rest))] = c
        return out

    def antipode(kk):
        return {kk: 1 if sum(labels[kk]) % 2 == 0 else k.minus_one}

    H = FiniteHopf(k, d, weights, labels, mult, comult, antipode, "presentation",
                   presentation=P, monomial=True)
    if verify:
        verify_axioms(H, generators=strides)
    return H


# -- axioms ---------------------------------------------------------------


def verify_axioms(H, limit=32, samples=12, seed=0, generators=None):
    """Check the Hopf algebra identities on all basis elements and pairs when
    d <= limit, otherwise on a seeded sample; raises AxiomViolation.

    For large algebras generated by the basis vectors ``generators`` the
    sampled pairs pair a generator with an arbitrary basis vector, which is
    enough for multiplicativity of the coproduct by induction on degree."""
    k = H.field
    d = H.dim
    rng = np.random.default_rng(seed)
    if d <= limit:
        singles = range(d)
        pairs = [(i, j) for i in range(d) for j in range(d)]
    else:
        singles = rng.integers(0, d, samples).tolist()
        if generators:
            pairs = [(g, int(j)) for g in generators for j in rng.integers(0, d, samples)]
        else:
            pairs = [tuple(map(int, t)) for t in rng.integers(0, d, (samples, 2))]
    for i in singles:
        if H.mult(0, i) != {i: 1}:
            raise AxiomViolation(f"unit law fails on b_{i}")
        D = H.comult(i)
        left, right = {}, {}
        for (a, b), c in D.items():
            if a == 0:
                right[b] = c
            if b == 0:
                left[a] = c
        if left != {i: 1} or right != {i: 1}:
            raise AxiomViolation(f"counit law fails on b_{i}")
        lhs = {}
        for (a, b), c in D.items():
            for (a2, b2), c2 in H.comult(a).items():
                key = (a2, b2, b)
                s = k.add(lhs.get(key, 0), k.mul(c, c2))
                lhs[key] = s
        rhs = {}
        for (a, b), c in D.items():
            for (a2, b2), c2 in H.comult(b).items():
                key = (a, a2, b2)
                rhs[key] = k.add(rhs.get(key, 0), k.mul(c, c2))
        if {x: v for x, v in lhs.items() if v} != {x: v for x, v in rhs.items() if v}:
            raise AxiomViolation(f"coassociativity fails on b_{i}")
        s_side = {}
        for (a, b), c in D.items():
            for a2, c2 in H.antipode(a).items():
                la.sp_axpy(k, s_side, k.mul(c, c2), H.mult(a2, b))
        if s_side != ({0: 1} if i == 0 else {}):
            raise AxiomViolation(f"antipode law fails on b_{i}")
    for i, j in pairs:
        for kk in H.mult(i, j):
            if (H.weights[kk] - H.weights[i] - H.weights[j]) % max(k.q - 1, 1):
                raise AxiomViolation(f"grading not multiplicative on (b_{i}, b_{j})")
        for l in ([int(rng.integers(0, d))] if d > limit else range(d)):
            if H.mul(H.mult(i, j), {l: 1}) != H.mul({i: 1}, H.mult(j, l)):
                raise AxiomViolation(f"associativity fails on (b_{i}, b_{j}, b_{l})")
        lhs = H.comult_vec(H.mult(i, j))
        rhs = H.tensor_mul(H.comult(i), H.comult(j))
        if lhs != rhs:
            raise AxiomViolation(f"bialgebra law fails on (b_{i}, b_{j})")
    return True


# -- primitives and gradings ------------------------------------------------------


@dataclass
class Primitives:
    """Primitive elements: ``all`` plus the bases per weight class and per
    character p^s (``by_power[s]``), each in reduced echelon form."""

    all: list
    by_class: dict
    by_power: list

    @property
    def dim(self):
        return len(self.all)


def _rref_sparse(H, vecs):
    """Reduced echelon basis with pivots preferred in graded-lex order."""
    if not vecs:
        return []
    keys = sorted({key for v in vecs for key in v}, key=H.order_key)
    pos = {key: c for c, key in enumerate(keys)}
    A = np.zeros((len(vecs), len(keys)), dtype=np.int64)
    for r, v in enumerate(vecs):
        for key, c in v.items():
            A[r, pos[key]] = c
    R, _ = la.rref(H.field, A)
    return [{keys[c]: int(x) for c, x in enumerate(row) if x} for row in R]


def primitives_generic(H):
    """Prim by solving the reduced-coproduct system with sparse elimination."""
    by_class = {}
    for cls in sorted(set(H.weights[1:].tolist())):
        tags = [i for i in range(1, H.dim) if H.weights[i] == cls]
        vecs = []
        for i in tags:
            vecs.append({key: c for key, c in H.comult(i).items() if key[0] and key[1]})
        ker = la.sparse_kernel(H.field, vecs, tags)
        if ker:
            by_class[cls] = _rref_sparse(H, ker)
    return by_class


def primitives_monomial(H):
    """Prim for monomial algebras: the reduced coproducts of distinct
    monomials have disjoint supports, so Prim is spanned by the monomials
    with vanishing reduced coproduct, which by Lucas' theorem are the
    x_i^(p^t)."""
    by_class = {}
    p = H.field.p
    for i in range(1, H.dim):
        nz = [a for a in H.labels[i] if a]
        if len(nz) == 1 and _is_p_power(nz[0], p):
            by_class.setdefault(int(H.weights[i]), []).append({i: 1})
    for cls in by_class:
        by_class[cls].sort(key=lambda v: H.order_key(next(iter(v))))
    return by_class


def primitives(H, method="auto"):
    if H._prim is not None and method == "auto":
        return H._prim
    k = H.field
    if method == "generic" or (method == "auto" and not H.monomial):
        by_class = primitives_generic(H)
    else:
        by_class = primitives_monomial(H)
    qm1 = max(k.q - 1, 1)
    by_power = [by_class.get(k.p**s % qm1, []) for s in range(k.r)]
    allp = [v for cls in sorted(by_class) for v in by_class[cls]]
    out = Primitives(allp, by_class, by_power)
    if method == "auto":
        H._prim = out
    return out


def prim_one(H):
    """Basis of Prim_1, the weight-1 primitives."""
    return primitives(H).by_power[0]


def eigen_profile(H):
    """(rk I_1, ..., rk I_{q-1}); nonconstant weight-0 vectors count as j = q-1."""
    q = H.field.q
    if q == 2:
        return (H.dim - 1,)
    counts = np.bincount(H.weights[1:], minlength=q - 1)
    return tuple(int(counts[j % (q - 1)]) for j in range(1, q))


def eigen_idempotents(H):
    """Diagonals of e_j = (q-1)^-1 sum_a a^-j [a]*, restricted to I, j = 1..q-1."""
    k = H.field
    q = k.q
    sub = [a for a in k.subfield_elements().tolist() if a]
    inv_qm1 = k.inv(k.from_coeffs([(q - 1) % k.p]))
    out = []
    for j in range(1, q):
        diag = np.zeros(H.dim, dtype=np.int64)
        for i in range(1, H.dim):
            s = 0
            w = int(H.weights[i])
            for a in sub:
                s = k.add(s, k.mul(k.pow(k.inv(a), j), k.pow(a, w)))
            diag[i] = k.mul(inv_qm1, s)
        out.append(diag)
    return out


# -- duality, Frobenius, tensor products -----------------------------------------


def cartier_dual(H, verify=True, cap=DUAL_CAP, weights="transpose"):
    """Linear dual with transposed structure maps.

    The F_q-action on the dual is the transpose of [a]*, so a dual basis
    vector keeps the weight of its partner.  ``weights="inverse"`` negates
    the weights instead; that grading is only compatible with an F_q-module
    structure when q <= 3.
    """
    k = H.field
    d = H.dim
    _check_cap(d, cap)
    table = {}
    for kk in range(d):
        for key, c in H.comult(kk).items():
            table.setdefault(key, {})[kk] = c
    comult_table = {}

    def mult(i, j):
        return dict(table.get((i, j), {}))

    def comult(kk):
        if not comult_table:
            for i in range(d):
                for j in range(d):
                    for t, c in H.mult(i, j).items():
                        comult_table.setdefault(t, {})[(i, j)] = c
        return dict(comult_table.get(kk, {}))

    anti = {}

    def antipode(kk):
        if not anti:
            for i in range(d):
                for t, c in H.antipode(i).items():
                    anti.setdefault(t, {})[i] = c
        return dict(anti.get(kk, {}))

    if weights == "transpose":
        w = H.weights
    elif weights == "inverse":
        w = (-H.weights) % max(k.q - 1, 1)
    else:
        raise ValueError(f"unknown weight convention {weights!r}")
    D = FiniteHopf(k, d, w, H.labels, mult, comult, antipode, "dual")
    if verify:
        verify_axioms(D, limit=16)
    return D


def frobenius_verschiebung(H):
    """(F_mat, V_mat): column i of F_mat holds b_i^p; V_mat is the transpose
    of the Frobenius matrix of the dual."""
    d = H.dim
    Fm = la.zeros(d)
    for i in range(d):
        for t, c in H.basis_pth_power(i).items():
            Fm[t, i] = c
    D = cartier_dual(H, verify=False)
    Fd = la.zeros(d)
    for i in range(d):
        for t, c in D.basis_pth_power(i).items():
            Fd[t, i] = c
    return Fm, Fd.T


def frobenius_matrix(H):
    d = H.dim
    Fm = la.zeros(d)
    for i in range(d):
        for t, c in H.basis_pth_power(i).items():
            Fm[t, i] = c
    return Fm


def tensor_product(H1, H2, verify=True, cap=None):
    if H1.field != H2.field:
        from .errors import FieldMismatch
        raise FieldMismatch("tensor factors over different fields")
    k = H1.field
    d1, d2 = H1.dim, H2.dim
    d = d1 * d2
    _check_cap(d, cap)

    def split(i):
        return divmod(i, d2)

    def mult(i, j):
        (a1, a2), (b1, b2) = split(i), split(j)
        out = {}
        for u, cu in H1.mult(a1, b1).items():
            for v, cv in H2.mult(a2, b2).items():
                out[u * d2 + v] = k.mul(cu, cv)
        return out

    def comult(i):
        a1, a2 = split(i)
        out = {}
        for (u1, v1), c1 in H1.comult(a1).items():
            for (u2, v2), c2 in H2.comult(a2).items():
                out[(u1 * d2 + u2, v1 * d2 + v2)] = k.mul(c1, c2)
        return out

    def antipode(i):
        a1, a2 = split(i)
        out = {}
        for u, cu in H1.antipode(a1).items():
            for v, cv in H2.antipode(a2).items():
                out[u * d2 + v] = k.mul(cu, cv)
        return out

    weights = (H1.weights[:, None] + H2.weights[None, :]).ravel()
    labels = []
    for l1 in H1.labels:
        for l2 in H2.labels:
            if isinstance(l1, tuple) and isinstance(l2, tuple):
                labels.append(l1 + l2)
            else:
                labels.append((l1, l2))
    pres = None
    if H1.presentation is not None and H2.presentation is not None:
        pres = H1.presentation.concat(H2.presentation)
    H = FiniteHopf(k, d, weights, labels, mult, comult, antipode, "tensor",
                   presentation=pres, monomial=H1.monomial and H2.monomial)
    if verify:
        verify_axioms(H, limit=16)
    return H


# -- derived invariants ----------------------------------------------------------------


def cotangent_dim(H):
    """dim I/I^2."""
    k = H.field
    d = H.dim
    if d == 1:
        return 0
    ech = la.SparseEchelon(k)
    for i in range(1, d):
        for j in range(i, d):
            if len(ech) == d - 1:
                return 0
            ech.insert({t: c for t, c in H.mult(i, j).items() if t})
    return d - 1 - len(ech)


def lie_dim_of_dual(H):
    return cotangent_dim(cartier_dual(H, verify=False))


def group_likes(H, cap=2**16):
    """All x with Delta(x) = x (x) x and counit 1, by exhaustive search."""
    k = H.field
    d = H.dim
    if k.order ** (d - 1) > cap:
        raise TooLarge(f"{k.order}^{d - 1} candidates exceed cap {cap}")
    T = H.comult_tensor()
    found = []
    for tail in np.ndindex(*([k.order] * (d - 1))):
        x = np.array((1,) + tail, dtype=np.int64)
        lhs = k.vsum(k.vmul(x[:, None, None], T), axis=0)
        rhs = k.vmul(x[:, None], x[None, :])
        if np.array_equal(lhs, rhs):
            found.append(x)
    return found


def hopf_homs(P, H):
    """F_p-basis of the graded Hopf maps expand(P) -> H, as lists of
    generator images (sparse vectors), plus the F_q-dimension.

    Images of x_i range over the primitives of H of weight w_i subject to
    y_i^{e_i} = sum lambda_ij y_j; the conditions are additive in the y_i.
    """
    k = H.field
    prim = primitives(H)
    qm1 = max(k.q - 1, 1)
    gens = P.generators
    spaces = [prim.by_class.get(g.weight % qm1, []) for g in gens]
    gpow = [k.pow(k.gen, t) for t in range(k.n)] if k.n > 1 else [1]
    unknowns = []
    for i, space in enumerate(spaces):
        for l, z in enumerate(space):
            for t, c in enumerate(gpow):
                unknowns.append((i, l, c))
    if not unknowns:
        return [], 0
    zpow = {}
    columns = []
    for i, l, c in unknowns:
        g = gens[i]
        key = (i, l)
        if key not in zpow:
            zpow[key] = H.power(spaces[i][l], g.trunc)
        img = {}
        la.sp_axpy(k, img, k.pow(c, g.trunc), {(i, t): v for t, v in zpow[key].items()})
        for i2, g2 in enumerate(gens):
            for j, lam in g2.relation:
                if j == i:
                    la.sp_axpy(k, img, k.neg(k.mul(lam, c)), {(i2, t): v for t, v in spaces[i][l].items()})
        columns.append(img)
    keys = sorted({key for col in columns for key in col})
    pos = {key: r for r, key in enumerate(keys)}
    A = np.zeros((len(keys) * k.n, len(columns)), dtype=np.int64)
    for cidx, col in enumerate(columns):
        for key, v in col.items():
            A[pos[key] * k.n:(pos[key] + 1) * k.n, cidx] = k.digits(v)
    ker = la.fp_nullspace(A, k.p, len(columns))
    maps = []
    for row in ker:
        images = [dict() for _ in gens]
        for coef, (i, l, c) in zip(row.tolist(), unknowns):
            if coef:
                la.sp_axpy(k, images[i], k.mul(coef % k.p, c), spaces[i][l])
        maps.append(images)
    assert len(maps) % k.r == 0
    return maps, len(maps) // k.r


def extend_hom(P, H, images):
    """Matrix (columns = basis of expand(P)) of the algebra map x_i -> images[i]."""
    k = H.field
    truncs = [g.trunc for g in P.generators]
    labels = [tuple(idx) for idx in np.ndindex(*truncs)] if truncs else [()]
    powers = []
    for i, g in enumerate(P.generators):
        pw = [{0: 1}]
        for _ in range(g.trunc - 1):
            pw.append(H.mul(pw[-1], images[i]))
        powers.append(pw)
    A = la.zeros(H.dim, len(labels))
    for c, a in enumerate(labels):
        v = {0: 1}
        for i, ai in enumerate(a):
            if ai:
                v = H.mul(v, powers[i][ai])
        for t, x in v.items():
            A[t, c] = x
    return A


def is_primitive(H, x):
    D = H.comult_vec(x)
    expect = {}
    for i, c in x.items():
        la.sp_axpy(H.field, expect, c, {(i, 0): 1})
        la.sp_axpy(H.field, expect, c, {(0, i): 1})
    return D == expect


def dump(H):
    """Deterministic text dump of the structure constants."""
    k = H.field
    lines = [f"dim {H.dim}", f"q {k.q}", f"provenance {H.provenance}"]
    for i in range(H.dim):
        lines.append(f"basis {i} label={H.labels[i]} weight={int(H.weights[i])}")
    for i in range(H.dim):
        for j in range(H.dim):
            for t, c in sorted(H.mult(i, j).items()):
                lines.append(f"mult {i} {j} {t} {k.to_str(c)}")
    for t in range(H.dim):
        for (i, j), c in sorted(H.comult(t).items()):
            lines.append(f"comult {t} {i} {j} {k.to_str(c)}")
    return "\n".join(lines) + "\n"
