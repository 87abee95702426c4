"""Seeded sample generators shared by the self-test and the test suite.

All randomness flows through ``numpy.random.default_rng(seed)`` (PCG64), so a
seed reproduces the same objects on every platform.
"""
import numpy as np

from . import hopf
from .gf import FqField
from .hopf import Generator, HopfPresentation
from .shtuka import Shtuka, random_base_change, random_shtuka

# q -> (p, r, modulus over F_p of degree r); k = F_q throughout the suites
STANDARD = {
    2: (2, 1, (1, 1)),
    3: (3, 1, (1, 1)),
    4: (2, 2, (1, 1, 1)),
    5: (5, 1, (2, 1)),
    8: (2, 3, (1, 1, 0, 1)),
    9: (3, 2, (2, 2, 1)),
}


def std_field(q):
    p, r, mod = STANDARD[q]
    return FqField(p, r, 1, list(mod))


def max_rank(q, order_cap):
    n = 0
    while q ** (n + 1) <= order_cap:
        n += 1
    return n


def shtuka_sample(rng, qs=tuple(STANDARD), max_n=3, order_cap=4096, min_n=1):
    q = int(rng.choice(qs))
    k = std_field(q)
    n = int(rng.integers(min_n, min(max_n, max_rank(q, order_cap)) + 1))
    kind = rng.choice(["any", "any", "etale", "nilpotent", "mixed"])
    if kind == "mixed" and n >= 2:
        a = int(rng.integers(1, n))
        E = random_shtuka(k, a, rng, "etale")
        N = random_shtuka(k, n - a, rng, "nilpotent")
        M = E.direct_sum(N).conjugate(random_base_change(k, n, rng))
    else:
        M = random_shtuka(k, n, rng, kind if kind != "mixed" else "any")
    return M


def additive_presentation(rng, qs=tuple(STANDARD), order_cap=256, max_gens=3):
    """Random presentation of additive type: weight-1 primitive generators
    x_i with x_i^(p^s_i) either 0 or a random weight-compatible linear form."""
    q = int(rng.choice(qs))
    k = std_field(q)
    p = k.p
    gens_s = []
    budget = order_cap
    for _ in range(int(rng.integers(1, max_gens + 1))):
        choices = [s for s in range(1, 13) if p**s <= budget]
        if not choices:
            break
        s = int(rng.choice(choices))
        gens_s.append(s)
        budget //= p**s
    n = len(gens_s)
    gens = []
    for i, s in enumerate(gens_s):
        rel = []
        compatible = (p**s - 1) % (q - 1) == 0 if q > 2 else True
        if compatible and rng.random() < 0.7:
            for j in range(n):
                if rng.random() < 0.6:
                    c = int(rng.integers(0, k.order))
                    if c:
                        rel.append((j, c))
        gens.append(Generator(f"x{i + 1}", 1, p**s, tuple(rel)))
    return HopfPresentation(k, tuple(gens)), gens_s


def alpha_product(field, s_list):
    """Presentation of prod alpha_{p^s_i}."""
    gens = tuple(Generator(f"x{i + 1}", 1, field.p**s) for i, s in enumerate(s_list))
    return HopfPresentation(field, gens)


def balanced_shtuka(rng, order_cap=4096):
    """Shtuka whose Drinfeld group is a random balanced group of order <= cap."""
    q = int(rng.choice(list(STANDARD)))
    k = std_field(q)
    n = int(rng.integers(1, max_rank(q, order_cap) + 1))
    e = int(rng.integers(0, n + 1))
    parts = []
    if e:
        parts.append(random_shtuka(k, e, rng, "etale"))
    if n - e:
        parts.append(random_shtuka(k, n - e, rng, "nilpotent"))
    M = parts[0]
    for other in parts[1:]:
        M = M.direct_sum(other)
    return M.conjugate(random_base_change(k, n, rng))
