"""Exact arithmetic in finite fields F_{p^n}, n = r*m, with p^n <= 2**20.

An element is encoded as an integer code 0 <= a < p**n whose base-p digits
are the coefficients of its representing polynomial, lowest degree first.
The class of the variable ``x`` modulo the modulus is written ``g``; for n > 1
its code is p.  Scalar routines take and return Python ints, the ``v*``
routines take and return numpy int64 arrays of codes.

The field keeps two views of itself: the prime field F_p, the subfield
F_q (q = p^r) acting on shtukas and group schemes, and the working field
k = F_{q^m} that all coefficients live in.
"""
from __future__ import annotations

import re
from functools import lru_cache

import numpy as np
import sympy

from .errors import BadElement, DegreeMismatch, NotPrime, ReducibleModulus, TooLarge

FIELD_CAP = 2**20


def is_irreducible(p, coeffs):
    """Irreducibility of the polynomial with ascending coefficients over F_p."""
    if len(coeffs) <= 2:
        return len(coeffs) == 2 and coeffs[-1] % p != 0
    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed([c % p for c in coeffs])), x, modulus=p).is_irreducible


def _polymulmod(a, b, modulus, p):
    n = len(modulus) - 1
    prod = [0] * (2 * n)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(2 * n - 1, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * modulus[i]) % p
    return prod[:n]


def _polypowmod(a, e, modulus, p):
    n = len(modulus) - 1
    result = [1] + [0] * (n - 1)
    while e:
        if e & 1:
            result = _polymulmod(result, a, modulus, p)
        a = _polymulmod(a, a, modulus, p)
        e >>= 1
    return result


class _Tables:
    """Lookup tables for one (p, modulus); shared by every FqField over it."""

    def __init__(self, p, modulus):
        n = len(modulus) - 1
        Q = p**n
        self.Q = Q
        self.M = Q - 1
        codes = np.arange(Q, dtype=np.int64)
        self.pw = p ** np.arange(n, dtype=np.int64)
        digits = (codes[:, None] // self.pw[None, :]) % p
        self.digits = digits
        top = digits[:, n - 1]
        sh = np.zeros_like(digits)
        sh[:, 1:] = digits[:, :-1]
        sh = (sh - top[:, None] * np.asarray(modulus[:n], dtype=np.int64)) % p
        mulg = sh @ self.pw
        self.gen = int(mulg[1])

        prim = self._find_primitive(p, modulus, n, Q)
        # multiplication-by-prim table, then walk the cyclic group
        acc = np.zeros_like(digits)
        cur = codes
        pdig = digits[prim]
        for i in range(n):
            if pdig[i]:
                acc = acc + pdig[i] * digits[cur]
            cur = mulg[cur]
        mul_prim = ((acc % p) @ self.pw).tolist()
        exp = [1] * max(Q - 1, 1)
        v = 1
        for k in range(1, Q - 1):
            v = mul_prim[v]
            exp[k] = v
        self.exp_np = np.array(exp + exp, dtype=np.int64)
        log = np.full(Q, -1, dtype=np.int64)
        log[np.array(exp, dtype=np.int64)] = np.arange(len(exp), dtype=np.int64)
        if Q == 2:
            log[1] = 0
        self.log_np = log
        self.exp = self.exp_np.tolist()
        self.log = log.tolist()
        self.neg_np = ((-digits) % p) @ self.pw
        self.neg = self.neg_np.tolist()
        add1 = codes - digits[:, 0] + (digits[:, 0] + 1) % p
        self.zech_np = log[add1[self.exp_np[: self.M]]] if self.M else np.zeros(0, np.int64)
        self.zech = self.zech_np.tolist()
        frob = np.zeros(Q, dtype=np.int64)
        nz = codes[1:]
        frob[1:] = self.exp_np[(log[nz] * p) % max(self.M, 1)]
        self.frob_np = frob

    @staticmethod
    def _find_primitive(p, modulus, n, Q):
        if Q == 2:
            return 1
        primes = list(sympy.factorint(Q - 1))
        candidates = [p] + [c for c in range(2, Q) if c != p] if n > 1 else range(1, Q)
        for c in candidates:
            cd = [(c // p**i) % p for i in range(n)]
            if all(_polypowmod(cd, (Q - 1) // ell, modulus, p) != [1] + [0] * (n - 1) for ell in primes):
                return c
        raise AssertionError("no primitive element; modulus not irreducible")


@lru_cache(maxsize=None)
def _tables(p, modulus):
    return _Tables(p, modulus)


class FqField:
    """The field k = F_{q^m}, q = p^r, given by an explicit modulus over F_p.

    >>> F4 = FqField(2, 2, 1, [1, 1, 1])
    >>> F4.to_str(F4.frob(F4.gen, 1))
    'g+1'
    """

    def __init__(self, p, r, m, modulus):
        if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
            raise NotPrime(f"p={p} is not prime")
        if r < 1 or m < 1:
            raise DegreeMismatch(f"r={r}, m={m} must be positive")
        modulus = tuple(int(c) % p for c in modulus)
        n = r * m
        if len(modulus) - 1 != n:
            raise DegreeMismatch(f"modulus has degree {len(modulus) - 1}, expected r*m={n}")
        if modulus[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if p**n > FIELD_CAP:
            raise TooLarge(f"field of size {p}^{n} exceeds 2^20")
        if not is_irreducible(p, modulus):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p, self.r, self.m, self.n = p, r, m, n
        self.q = p**r
        self.order = p**n
        self.modulus = modulus
        t = _tables(p, modulus)
        self._t = t
        self.gen = t.gen
        self._M = t.M
        self._exp, self._log, self._zech, self._neg = t.exp, t.log, t.zech, t.neg
        if p == 2:
            self.add = self._add2
            self.vadd = np.bitwise_xor
        elif n == 1:
            self.add = self._addp
            self.vadd = self._vaddp
        else:
            self.add = self._addz
            self.vadd = self._vaddz
        self.minus_one = self._neg[1]

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"FqField(p={self.p}, r={self.r}, m={self.m}, modulus={list(self.modulus)})"

    def same_k(self, other):
        """True if both describe the same working field k (possibly different q)."""
        return (self.p, self.modulus) == (other.p, other.modulus)

    def reinterpret(self, r):
        """The same k viewed as an extension of F_{p^r}."""
        if self.n % r:
            raise DegreeMismatch(f"r={r} does not divide [k:F_p]={self.n}")
        return FqField(self.p, r, self.n // r, self.modulus)

    # scalar arithmetic ----------------------------------------------------
    @staticmethod
    def _add2(a, b):
        return a ^ b

    def _addp(self, a, b):
        return (a + b) % self.p

    def _addz(self, a, b):
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._M]
        return 0 if z < 0 else self._exp[la + z]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self._M - self._log[a]) % self._M] if self._M else 1

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e == 0:
            return 1
        if not a:
            return 0
        return self._exp[(self._log[a] * e) % self._M] if self._M else 1

    def frob(self, a, t=1):
        """a^(p^t)."""
        if not a or not self._M:
            return a
        return self._exp[(self._log[a] * pow(self.p, t % self.n, self._M)) % self._M]

    def frob_q(self, a, t=1):
        """a^(q^t); t may be negative since the Frobenius is bijective."""
        return self.frob(a, (self.r * t) % self.n)

    # vector arithmetic ------------------------------------------------------
    def _vaddp(self, a, b):
        return (np.asarray(a) + np.asarray(b)) % self.p

    def _vaddz(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        la = self._t.log_np[a]
        lb = self._t.log_np[b]
        z = self._t.zech_np[(lb - la) % self._M]
        s = np.where(z < 0, 0, self._t.exp_np[np.clip(la + z, 0, None)])
        return np.where(a == 0, b, np.where(b == 0, a, s))

    def vneg(self, a):
        return self._t.neg_np[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        s = self._t.exp_np[np.clip(self._t.log_np[a] + self._t.log_np[b], 0, None)]
        return np.where((a == 0) | (b == 0), 0, s)

    def vfrob(self, a, t=1):
        a = np.asarray(a, dtype=np.int64)
        if not self._M:
            return a.copy()
        e = pow(self.p, t % self.n, self._M)
        s = self._t.exp_np[(np.clip(self._t.log_np[a], 0, None) * e) % self._M]
        return np.where(a == 0, 0, s)

    def vfrob_q(self, a, t=1):
        return self.vfrob(a, (self.r * t) % self.n)

    def vsum(self, a, axis=0):
        """Field sum along an axis."""
        a = np.moveaxis(np.asarray(a, dtype=np.int64), axis, 0)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=0) if a.shape[0] else np.zeros(a.shape[1:], np.int64)
        if self.n == 1:
            return a.sum(axis=0) % self.p
        acc = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            acc = self.vadd(acc, row)
        return acc

    # coordinates --------------------------------------------------------------
    def digits(self, a):
        """Coefficients over F_p (ascending) of one code or an array of codes."""
        return self._t.digits[np.asarray(a, dtype=np.int64)]

    def from_digits(self, d):
        return np.asarray(d, dtype=np.int64) % self.p @ self._t.pw

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            extra = coeffs[self.n:]
            if any(c % self.p for c in extra):
                raise BadElement(f"coefficient list {coeffs} longer than degree {self.n}")
            coeffs = coeffs[: self.n]
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def coeffs(self, a):
        return [int(c) for c in self._t.digits[a]]

    # subfield ----------------------------------------------------------------
    def subfield_elements(self):
        """Codes of F_q inside k: the fixed points of a -> a^q."""
        codes = np.arange(self.order, dtype=np.int64)
        return codes[self.vfrob_q(codes) == codes]

    def fp_basis_of_fq(self):
        """An F_p-basis of F_q (powers of a generator of F_q^x)."""
        if self.r == 1:
            return [1]
        zeta = self.pow(self._exp[1], (self.order - 1) // (self.q - 1))
        return [self.pow(zeta, i) for i in range(self.r)] if self._is_fp_basis(zeta) else self._fallback_fq_basis()

    def _is_fp_basis(self, zeta):
        from .linalg import fp_rank
        rows = [self.digits(self.pow(zeta, i)) for i in range(self.r)]
        return fp_rank(np.array(rows), self.p) == self.r

    def _fallback_fq_basis(self):
        from .linalg import fp_rank
        basis, rows = [], []
        for a in self.subfield_elements().tolist():
            trial = rows + [self.digits(a)]
            if fp_rank(np.array(trial), self.p) == len(trial):
                basis.append(a)
                rows = trial
            if len(basis) == self.r:
                break
        return basis

    # parsing and printing ------------------------------------------------------
    _TERM = re.compile(r"^(\d*)\*?(?:(g)(?:(?:\^|\*\*)(\d+))?)?$")

    def parse(self, text):
        """Parse an element: int code of an F_p value, coefficient list, or a
        polynomial string in ``g`` such as ``"g^2+2g+1"``."""
        if isinstance(text, (list, tuple)):
            if not all(isinstance(c, int) for c in text):
                raise BadElement(f"bad coefficient list {text!r}")
            return self.from_coeffs(text)
        if isinstance(text, bool) or not isinstance(text, (str, int)):
            raise BadElement(f"cannot parse {text!r}")
        if isinstance(text, int):
            return text % self.p
        s = text.replace(" ", "")
        if not s:
            raise BadElement("empty element string")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"([+-])([^+-]+)", s)
        if "".join(sign + body for sign, body in terms) != s:
            raise BadElement(f"cannot parse {text!r}")
        total = 0
        for sign, body in terms:
            match = self._TERM.match(body)
            if not match or (not match.group(1) and not match.group(2)):
                raise BadElement(f"bad term {body!r} in {text!r}")
            coeff = int(match.group(1)) if match.group(1) else 1
            term = coeff % self.p
            if match.group(2):
                e = int(match.group(3)) if match.group(3) else 1
                term = self.mul(term, self.pow(self.gen, e))
            total = self.add(total, term if sign == "+" else self.neg(term))
        return total

    def to_str(self, a):
        a = int(a)
        if self.n == 1:
            return str(a)
        if a == 0:
            return "0"
        parts = []
        for e, c in reversed(list(enumerate(self.coeffs(a)))):
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                mono = "g" if e == 1 else f"g^{e}"
                parts.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(parts)

    def __call__(self, value):
        return FqElem(self, self.parse(value) if not isinstance(value, FqElem) else value.code)

    def element(self, code):
        return FqElem(self, int(code))

    def elements(self):
        return [FqElem(self, a) for a in range(self.order)]

    # extensions ------------------------------------------------------------------
    def extension(self, degree):
        """The degree-``degree`` extension K of k and the embedding k -> K.

        K's modulus is the least monic irreducible polynomial of degree
        n*degree over F_p in the ordering by ascending coefficient lists read
        as base-p integers; the embedding sends g to the least root of k's
        modulus in K.  Returns (K, emb) with emb a code array indexed by k.
        """
        return _extension(self, degree)


@lru_cache(maxsize=None)
def _extension(field, degree):
    if degree == 1:
        return field, np.arange(field.order, dtype=np.int64)
    p, N = field.p, field.n * degree
    if p**N > FIELD_CAP:
        raise TooLarge(f"extension of size {p}^{N} exceeds 2^20")
    mod = least_irreducible(p, N)
    K = FqField(p, field.r, field.m * degree, mod)
    xs = np.arange(K.order, dtype=np.int64)
    acc = np.zeros_like(xs)
    for c in reversed(field.modulus):
        acc = K.vadd(K.vmul(acc, xs), np.full_like(xs, c))
    root = int(np.flatnonzero(acc == 0)[0])
    powers = [1]
    for _ in range(field.n - 1):
        powers.append(K.mul(powers[-1], root))
    digs = field.digits(np.arange(field.order))
    emb = np.zeros(field.order, dtype=np.int64)
    for i, pw in enumerate(powers):
        emb = K.vadd(emb, K.vmul(digs[:, i], np.full(field.order, pw)))
    return K, emb


@lru_cache(maxsize=None)
def least_irreducible(p, N):
    """Least monic irreducible polynomial of degree N over F_p (ascending coefficients)."""
    for c in range(p**N):
        low = [(c // p**i) % p for i in range(N)]
        if N > 1 and low[0] == 0:
            continue
        if is_irreducible(p, low + [1]):
            return tuple(low + [1])
    raise AssertionError("unreachable")


class FqElem:
    """A field element bound to its field, with operator overloading."""

    __slots__ = ("owner", "code")

    def __int__(self):
        return self.code

    def __init__(self, owner, code):
        self.owner = owner
        self.code = int(code)

    @property
    def coeffs(self):
        return self.owner.coeffs(self.code)

    def _other(self, other):
        if isinstance(other, FqElem):
            if not other.owner.same_k(self.owner):
                raise ValueError("elements of different fields")
            return other.code
        return self.owner.parse(other)

    def __add__(self, other):
        return FqElem(self.owner, self.owner.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElem(self.owner, self.owner.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FqElem(self.owner, self.owner.sub(self._other(other), self.code))

    def __neg__(self):
        return FqElem(self.owner, self.owner.neg(self.code))

    def __mul__(self, other):
        return FqElem(self.owner, self.owner.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FqElem(self.owner, self.owner.div(self.code, self._other(other)))

    def __pow__(self, e):
        if e < 0:
            return FqElem(self.owner, self.owner.pow(self.owner.inv(self.code), -e))
        return FqElem(self.owner, self.owner.pow(self.code, e))

    def inverse(self):
        return FqElem(self.owner, self.owner.inv(self.code))

    def frob(self, t=1):
        return FqElem(self.owner, self.owner.frob(self.code, t))

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.owner.same_k(other.owner) and self.code == other.code
        try:
            return self.code == self.owner.parse(other)
        except BadElement:
            return NotImplemented

    def __hash__(self):
        return hash((self.owner.p, self.owner.modulus, self.code))

    def __bool__(self):
        return self.code != 0

    def __str__(self):
        return self.owner.to_str(self.code)

    def __repr__(self):
        return f"FqElem({self.owner.to_str(self.code)!r})"


def field_create(p, r, m, modulus):
    return FqField(p, r, m, modulus)


def frob(x, t):
    """x^(p^t) for an FqElem."""
    return x.frob(t)
