"""The acceptance suite: twelve criteria, each returning a CriterionResult.

Each check stops at its first counterexample and attaches a replayable job.
"""
import time
from dataclasses import dataclass

import numpy as np

from . import balance, classify, functors, hopf
from . import linalg as la
from .jobs import make_job
from .samples import (STANDARD, additive_presentation, alpha_product, balanced_shtuka, shtuka_sample,
                      std_field)
from .shtuka import Shtuka, cyclic_decompose, is_isomorphic, ss_nil_split


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    counterexample: dict = None
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.name} ({self.detail}; {self.seconds:.1f}s)"


class _Fail(Exception):
    def __init__(self, detail, job=None):
        super().__init__(detail)
        self.detail, self.job = detail, job


def _check(cond, detail, job=None):
    if not cond:
        raise _Fail(detail, job)


# 1 ---------------------------------------------------------------------------------


def c01_roundtrip(seed):
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    for i in range(200):
        M = shtuka_sample(rng, max_n=3)
        rep = functors.roundtrip(M, rng=rng)
        job = make_job("roundtrip", M.field, shtuka=M, expect_iso=True)
        _check(rep.counit_iso, f"v_M not an isomorphism on sample {i}", job)
        _check(rep.details["isomorphic"] and rep.details["iso_certainty"] == "exact",
               f"dieudonne(drinfeld(M)) not isomorphic to M on sample {i}", job)
    elapsed = time.perf_counter() - start
    _check(elapsed < 60, f"took {elapsed:.1f}s, limit 60s")
    return "200 shtukas, limit 60s"


# 2 ---------------------------------------------------------------------------------


def c02_orders(seed):
    rng = np.random.default_rng(seed)
    for i in range(100):
        M = shtuka_sample(rng, max_n=3)
        G = functors.drinfeld(M, verify=False)
        _check(G.order == M.field.q ** M.n, f"order {G.order} != q^{M.n}", make_job("drinfeld", M.field, shtuka=M))
    for i in range(100):
        P, _ = additive_presentation(rng, order_cap=256)
        H = hopf.expand(P)
        dim = hopf.primitives(H, method="generic").dim
        _check(H.dim == P.field.p**dim, f"order {H.dim} != p^{dim}", make_job("balance", P.field, presentation=P))
    return "100 Drinfeld groups, 100 additive presentations"


# 3 ---------------------------------------------------------------------------------


def c03_q4_example(seed):
    start = time.perf_counter()
    k = std_field(4)
    P = alpha_product(k, [1] * 6)
    H = hopf.expand(P)
    quasi, ranks = balance.is_quasi_balanced(H)
    rep = balance.is_balanced(H)
    elapsed = time.perf_counter() - start
    job = make_job("quasibalance", k, presentation=P)
    _check(ranks == (21, 21, 21), f"ranks {ranks}", job)
    _check(quasi, "not quasi-balanced", job)
    _check(not rep.balanced, "reported balanced", make_job("balance", k, presentation=P))
    _check(elapsed < 5, f"took {elapsed:.1f}s, limit 5s")
    return f"ranks {ranks}, quasi-balanced, not balanced, {elapsed:.2f}s of 5s"


# 4 ---------------------------------------------------------------------------------


def c04_alpha_balance(seed):
    count = 0
    for q in (2, 4, 3, 9):
        k = std_field(q)
        for s in range(1, 5):
            P = hopf.alpha(k, s)
            rep = balance.is_balanced(hopf.expand(P))
            _check(rep.balanced == (s % k.r == 0), f"alpha_{{{k.p}^{s}}} over q={q}: balanced={rep.balanced}",
                   make_job("balance", k, presentation=P))
            count += 1
    return f"{count} cases"


# 5 ---------------------------------------------------------------------------------


def c05_balequiv(seed):
    rng = np.random.default_rng(seed)
    nbal = 0
    for i in range(300):
        P, _ = additive_presentation(rng, order_cap=256)
        rep = balance.is_balanced(hopf.expand(P, verify=False))
        job = make_job("balance", P.field, presentation=P)
        _check(rep.additive_type, f"sample {i} not of additive type", job)
        _check(rep.flags_agree, f"flags {rep.flags} disagree on sample {i}", job)
        nbal += rep.balanced
    return f"300 groups, {nbal} balanced"


# 6 ---------------------------------------------------------------------------------


def _alpha_families(rng):
    out = []
    for q in STANDARD:
        k = std_field(q)
        for _ in range(12):
            s_list, order = [], 1
            for _ in range(int(rng.integers(1, 7))):
                s = int(rng.integers(1, 4))
                if order * k.p**s > 4096:
                    break
                s_list.append(s)
                order *= k.p**s
            if s_list:
                out.append((k, s_list))
    k4 = std_field(4)
    out += [(k4, [1] * 6), (k4, [1] * 6 + [2]), (k4, [1] * 6 + [2, 2]), (k4, [3] * 2 + [1] * 4),
            (k4, [1, 1, 1]), (k4, [3, 1, 1, 1, 1, 1])]
    return out


def c06_quasi_vs_balanced(seed):
    rng = np.random.default_rng(seed)
    discrepancies = 0
    total = 0
    for k, s_list in _alpha_families(rng):
        P = alpha_product(k, s_list)
        H = hopf.expand(P, verify=False)
        quasi, _ = balance.is_quasi_balanced(H)
        bal = balance.is_balanced(H).balanced
        lisa = balance.lisa_criterion(s_list, k.q)
        job = make_job("quasibalance", k, presentation=P)
        _check(lisa.quasi_balanced == quasi, f"criterion says {lisa.quasi_balanced}, ranks say {quasi}", job)
        if k.q != 4:
            _check(quasi == bal, f"q={k.q}: quasi-balanced={quasi}, balanced={bal}", job)
        elif quasi != bal:
            odd = sum(1 for s in s_list if s % k.r)
            _check(odd > 0 and odd % 6 == 0, f"q=4 discrepancy with {odd} odd exponents", job)
            discrepancies += 1
        total += 1
    for i in range(60):
        M = shtuka_sample(rng, max_n=3, order_cap=4096)
        H = functors.drinfeld(M, verify=False).hopf
        quasi, _ = balance.is_quasi_balanced(H)
        bal = balance.is_balanced(H).balanced
        job = make_job("quasibalance", M.field, shtuka=M)
        _check(bal, "Drinfeld group not balanced", job)
        _check(quasi, "balanced group not quasi-balanced", job)
        total += 1
    return f"{total} groups, {discrepancies} q=4 discrepancies all explained"


# 7 ---------------------------------------------------------------------------------


def _partitions(total_max, part_max):
    """Multisets of positive integers with sum <= total_max."""
    out = [[]]

    def rec(prefix, remaining, largest):
        for s in range(min(largest, remaining), 0, -1):
            cur = prefix + [s]
            out.append(cur)
            rec(cur, remaining - s, s)

    rec([], total_max, part_max)
    return out[1:]


def c07_counting(seed):
    rng = np.random.default_rng(seed)
    for q in (2, 3, 4, 5):
        for n in range(1, 5):
            for j in range(1, q):
                a = balance.count_eigen_tuples(n, q, j, mode="exhaustive")
                b = balance.count_eigen_tuples(n, q, j)
                _check(a == b, f"#E_{j}^({n}) for q={q}: {a} vs {b}")
    instances = 0
    for q in STANDARD:
        k = std_field(q)
        smax = 0
        while k.p ** (smax + 1) <= 4096:
            smax += 1
        for s_list in _partitions(smax, smax):
            P = alpha_product(k, s_list)
            prof = hopf.eigen_profile(hopf.expand(P, verify=False))
            ser = balance.s_series(s_list, q).ranks
            _check(prof == ser, f"s_series {ser} vs eigen_profile {prof}", make_job("sseries", exponents=s_list, q=q))
            instances += 1
    for i in range(50):
        q = int(rng.choice(list(STANDARD)))
        P1, _ = additive_presentation(rng, qs=(q,), order_cap=64)
        P2, _ = additive_presentation(rng, qs=(q,), order_cap=64)
        H1, H2 = hopf.expand(P1, verify=False), hopf.expand(P2, verify=False)
        T = hopf.tensor_product(H1, H2, verify=False)
        pred = balance.product_rank_formula(hopf.eigen_profile(H1), hopf.eigen_profile(H2), q)
        _check(pred == hopf.eigen_profile(T), f"pair {i}: formula {pred} vs tensor {hopf.eigen_profile(T)}",
               make_job("quasibalance", P1.field, presentation=P1.concat(P2)))
    return f"tuple counts, {instances} series, 50 products"


# 8 ---------------------------------------------------------------------------------


def _find_iso(P, H):
    """An isomorphism expand(P) -> H among Hopf maps, or None."""
    maps, _ = hopf.hopf_homs(P, H)
    k = H.field
    src = hopf.expand(P, verify=False)
    for images in maps:
        A = hopf.extend_hom(P, H, images)
        if src.dim == H.dim and la.is_invertible(k, A) and functors._is_coalgebra_map(src, H, A):
            return A
    return None


def c08_duality(seed):
    rng = np.random.default_rng(seed)
    for i in range(50):
        P, _ = additive_presentation(rng, order_cap=64)
        H = hopf.expand(P, verify=False)
        DD = hopf.cartier_dual(hopf.cartier_dual(H))
        job = make_job("balance", P.field, presentation=P)
        _check(np.array_equal(DD.mult_tensor(), H.mult_tensor()), f"mult tensors differ on sample {i}", job)
        _check(np.array_equal(DD.comult_tensor(), H.comult_tensor()), f"comult tensors differ on sample {i}", job)
        _check(np.array_equal(DD.weights, H.weights), f"weights differ on sample {i}", job)
    for q in (2, 3, 5):
        k = std_field(q)
        P = hopf.alpha(k, 1)
        D = hopf.cartier_dual(hopf.expand(P))
        _check(_find_iso(P, D) is not None, f"dual of alpha_p over F_{q} not isomorphic to alpha_p",
               make_job("balance", k, presentation=P))
        C = hopf.expand(hopf.constant_fq(k))
        Dc = hopf.cartier_dual(C)
        _check(hopf.primitives(Dc, method="generic").dim == 0, f"dual of constant F_{q} has primitives")
        ok = False
        for g in hopf.group_likes(Dc):
            gv = {i: int(c) for i, c in enumerate(g) if c}
            powers = [{0: 1}]
            for _ in range(q):
                powers.append(Dc.mul(powers[-1], gv))
            span = np.array([[pw.get(i, 0) for i in range(Dc.dim)] for pw in powers[:q]])
            if powers[q] == {0: 1} and all(powers[e] != {0: 1} for e in range(1, q)) and la.rank(k, span) == q:
                ok = True
        _check(ok, f"no group-like generator of order {q} in the dual of constant F_{q}")
    return "50 biduals, alpha_p self-dual, mu_p for p=2,3,5"


# 9 ---------------------------------------------------------------------------------


def c09_verschiebung(seed):
    rng = np.random.default_rng(seed)
    checked = 0
    for i in range(60):
        P, _ = additive_presentation(rng, order_cap=128)
        H = hopf.expand(P, verify=False)
        job = make_job("balance", P.field, presentation=P)
        _, V = hopf.frobenius_verschiebung(H)
        _check(not V[:, 1:].any(), f"V nonzero on I for sample {i}", job)
        _check(V[0, 0] == 1 and not V[1:, 0].any(), f"V does not fix the unit on sample {i}", job)
        samples = [H]
        if H.dim <= 64:
            samples.append(hopf.cartier_dual(H, verify=False))
        for X in samples:
            prim = hopf.primitives(X, method="generic")
            lie = hopf.lie_dim_of_dual(X)
            _check(prim.dim == lie, f"dim Prim != dim Lie of dual on sample {i}", job)
            checked += 1
    for q in (2, 3, 5):
        C = hopf.expand(hopf.constant_fq(std_field(q)))
        _, V = hopf.frobenius_verschiebung(hopf.cartier_dual(C))
        _check(la.is_invertible(C.field, V), f"V of mu_{q} not invertible")
    return f"60 additive samples, {checked} Prim/Lie comparisons"


# 10 --------------------------------------------------------------------------------


def c10_functor_props(seed):
    rng = np.random.default_rng(seed)
    for i in range(60):
        M = shtuka_sample(rng, qs=(2, 3, 4, 5), max_n=3, order_cap=256)
        G = functors.drinfeld(M, verify=False)
        job = make_job("classify", M.field, shtuka=M)
        etale, conn = M.is_etale(), M.is_nilpotent()
        _check(classify.is_etale(G) == etale, f"etale mismatch on sample {i}", job)
        _check(classify.is_connected(G) == conn, f"connected mismatch on sample {i}", job)
        ss, nil, _ = ss_nil_split(M)
        _check((ss.n == M.n) == etale and (nil.n == M.n) == conn, f"split mismatch on sample {i}", job)
        counts = [classify.point_count(G, m) for m in (1, 2, 3)]
        lin = [classify.point_count(G, m, method="linear") for m in (1, 2, 3)]
        _check(counts == lin, f"point counts disagree {counts} vs {lin}", job)
        if conn:
            _check(counts == [1, 1, 1], f"connected group has points {counts}", job)
        fixed = [classify.fixed_vector_count(ss, m) for m in (1, 2, 3)]
        _check(counts == fixed, f"point counts {counts} vs etale part {fixed}", job)
        if etale:
            deg = next((m for m in (1, 2, 3) if counts[m - 1] == G.order), None)
            if deg is not None:
                _check(all(counts[m - 1] == G.order for m in (1, 2, 3) if m % deg == 0),
                       f"point counts not stable at degree {deg}", job)
        _check(hopf.cotangent_dim(G.hopf) == M.coker_dim(),
               f"dim I/I^2 {hopf.cotangent_dim(G.hopf)} != dim coker f {M.coker_dim()}", job)
    return "60 Drinfeld groups"


# 11 --------------------------------------------------------------------------------


def c11_restriction(seed):
    rng = np.random.default_rng(seed)
    from .gf import FqField
    cases = 0
    for q, (p, mod) in ((2, (2, [1, 1, 1])), (3, (3, [2, 2, 1]))):
        K = FqField(p, 2, 1, mod)
        mats = [[[a]] for a in range(K.order)]
        mats += [rng.integers(0, K.order, (2, 2)).tolist() for _ in range(12)]
        mats += [[[0, 1], [0, 0]], [[1, 0], [0, 1]], [[0, 0], [0, 0]]]
        for F in mats:
            M = Shtuka(K, F)
            R = functors.restriction_iso(M, 2)
            _check(R["iso"], f"restriction map not a Hopf isomorphism: {R['checks']}",
                   make_job("drinfeld", K, shtuka=M))
            cases += 1
    return f"{cases} cases"


# 12 --------------------------------------------------------------------------------


def c12_structure(seed):
    rng = np.random.default_rng(seed)
    for i in range(100):
        M = balanced_shtuka(rng, order_cap=4096)
        k = M.field
        G = functors.drinfeld(M, verify=False)
        job = make_job("classify", k, shtuka=M)
        rep = classify.structure_decompose(G)
        _check(rep.total_order == rep.etale_order * k.q ** sum(rep.connected_exponents) == G.order,
               f"order law fails: {rep}", job)
        R = classify.reassemble(rep)
        _check(hopf.eigen_profile(R.hopf) == hopf.eigen_profile(G.hopf), "eigen profiles differ", job)
        b1, b2 = balance.is_balanced(G), balance.is_balanced(R)
        _check((b1.flags, b1.prim_ranks, b1.order, b1.additive_type) ==
               (b2.flags, b2.prim_ranks, b2.order, b2.additive_type), "balance reports differ", job)
        for m in (1, 2, 3):
            if k.order**m > 2**20:
                continue
            a, b = classify.point_count(G, m), classify.point_count(R, m)
            _check(a == b, f"point counts over degree {m}: {a} vs {b}", job)
    return "100 balanced groups"


CRITERIA = [
    (1, "round trip M -> G(M) -> M(G(M))", c01_roundtrip),
    (2, "order formulas", c02_orders),
    (3, "q=4 quasi-balanced but unbalanced example", c03_q4_example),
    (4, "balance of alpha_{p^s}", c04_alpha_balance),
    (5, "equivalence of the four balance conditions", c05_balequiv),
    (6, "quasi-balanced versus balanced", c06_quasi_vs_balanced),
    (7, "eigenrank counting", c07_counting),
    (8, "Cartier duality", c08_duality),
    (9, "Verschiebung and Lie algebra of the dual", c09_verschiebung),
    (10, "etale/connected criteria and cotangent space", c10_functor_props),
    (11, "restriction of scalars", c11_restriction),
    (12, "structure theorem", c12_structure),
]


def run_criterion(number, seed=1):
    _, name, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        detail = fn(seed)
        passed, job = True, None
    except _Fail as exc:
        detail, passed, job = exc.detail, False, exc.job
    return CriterionResult(number, name, passed, detail, job, time.perf_counter() - start)


def run_all(seed=1, fail_fast=False, emit=print):
    results = []
    for number, _, _ in CRITERIA:
        res = run_criterion(number, seed)
        results.append(res)
        if emit:
            emit(res.line())
        if fail_fast and not res.passed:
            break
    return results
