"""Cyclotomic cosets, minimal/generator polynomials, and the defining-set
algebra of cyclic codes over a prime field: duals, sums, extension by a
parity coordinate, and irreducible cyclic codes from trace evaluations.

A cyclic code of length n over GF(p) (gcd(n, p) = 1) is pinned down by its
defining set: the exponents i such that g(x) vanishes at the i-th power of
a fixed primitive n-th root of unity.  All derived operations manipulate
defining sets and are verified against brute-force matrix oracles in the
test suite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .finite_field import FieldTable, TableTooLarge, field
from .gf3_linalg import GenMatrixCode, LengthMismatch, rref


class NotCoprime(Exception):
    pass


class FieldTooSmall(Exception):
    pass


class InvalidRoot(Exception):
    pass


# ---------------------------------------------------------------------------
# cyclotomic cosets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclotomicCoset:
    n: int
    q: int
    leader: int
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)


def cyclotomic_coset(s: int, n: int, q: int) -> CyclotomicCoset:
    """Orbit of s under multiplication by q modulo n."""
    if math.gcd(n, q) != 1:
        raise NotCoprime(f"gcd({n}, {q}) != 1")
    s %= n
    orbit = [s]
    v = s * q % n
    while v != s:
        orbit.append(v)
        v = v * q % n
    return CyclotomicCoset(n, q, min(orbit), tuple(sorted(orbit)))


def cyclotomic_cosets(n: int, q: int) -> list[CyclotomicCoset]:
    """All distinct q-cyclotomic cosets mod n, ordered by leader."""
    if math.gcd(n, q) != 1:
        raise NotCoprime(f"gcd({n}, {q}) != 1")
    seen = np.zeros(n, dtype=bool)
    out = []
    for s in range(n):
        if not seen[s]:
            cos = cyclotomic_coset(s, n, q)
            for m in cos.members:
                seen[m] = True
            out.append(cos)
    return out


# ---------------------------------------------------------------------------
# polynomials over GF(p): coefficient tuples, lowest degree first
# ---------------------------------------------------------------------------

def poly_trim(a) -> tuple[int, ...]:
    a = [int(c) for c in a]
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(a, b, p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    return poly_trim(np.convolve(np.asarray(a, dtype=np.int64),
                                 np.asarray(b, dtype=np.int64)) % p)


def poly_divmod(a, b, p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a, b = list(poly_trim(a)), list(poly_trim(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a = list(poly_trim(a))
        if not a:
            break
    return poly_trim(q), poly_trim(a)


def x_pow_n_minus_1(n: int, p: int) -> tuple[int, ...]:
    return tuple([p - 1] + [0] * (n - 1) + [1])


# ---------------------------------------------------------------------------
# cyclic code specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicCodeSpec:
    """Cyclic [n, n - |T|] code over GF(p) with defining set T (exponents of
    the zeros of the generator polynomial, a union of p-cyclotomic cosets)."""

    n: int
    p: int
    defining_set: tuple[int, ...]

    def __post_init__(self):
        if math.gcd(self.n, self.p) != 1:
            raise NotCoprime(f"gcd({self.n}, {self.p}) != 1")
        t = sorted({i % self.n for i in self.defining_set})
        tset = set(t)
        for i in t:
            if (i * self.p) % self.n not in tset:
                raise ValueError(f"defining set not closed under *{self.p} mod {self.n}")
        object.__setattr__(self, "defining_set", tuple(t))

    @property
    def dimension(self) -> int:
        return self.n - len(self.defining_set)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "p": self.p,
                           "defining_set": list(self.defining_set)})

    @classmethod
    def from_json(cls, text: str) -> "CyclicCodeSpec":
        d = json.loads(text)
        return cls(int(d["n"]), int(d["p"]), tuple(d["defining_set"]))


def dimension(spec: CyclicCodeSpec) -> int:
    return spec.dimension


def splitting_field(n: int, p: int) -> FieldTable:
    """GF(p^r) with r the multiplicative order of p mod n, so that x^n - 1
    splits into linear factors."""
    if math.gcd(n, p) != 1:
        raise NotCoprime(f"gcd({n}, {p}) != 1")
    r, v = 1, p % n
    while v != 1:
        v = v * p % n
        r += 1
    try:
        return field(p, r)
    except TableTooLarge as ex:
        raise FieldTooSmall(f"splitting field GF({p}^{r}) exceeds the table cap") from ex


def minimal_polynomial(coset: CyclotomicCoset, fld: FieldTable) -> tuple[int, ...]:
    """Minimal polynomial over GF(p) of beta^s, where beta is the fixed
    primitive n-th root of unity inside `fld`: the product of (x - beta^i)
    over the coset."""
    n, p = coset.n, fld.p
    if fld.n % n != 0:
        raise FieldTooSmall(f"{n} does not divide {fld.p}^{fld.e} - 1")
    step = fld.n // n
    poly = [1]  # coefficients in fld, low degree first
    for i in coset.members:
        root = int(fld.exp[(step * i) % fld.n])
        shifted = [0] + poly  # x * poly
        scaled = [fld.mul(fld.neg(root), c) for c in poly] + [0]
        poly = [fld.add(a, b) for a, b in zip(shifted, scaled)]
    for c in poly:
        if c >= p:
            raise ValueError("minimal polynomial has a coefficient outside GF(p)")
    return poly_trim(poly)


def generator_poly(spec: CyclicCodeSpec) -> tuple[int, ...]:
    """g(x): the product of the minimal polynomials of the zeros named by
    the defining set; degree |T|, divides x^n - 1."""
    fld = splitting_field(spec.n, spec.p)
    g = (1,)
    remaining = set(spec.defining_set)
    while remaining:
        s = min(remaining)
        cos = cyclotomic_coset(s, spec.n, spec.p)
        remaining -= set(cos.members)
        g = poly_mul(g, minimal_polynomial(cos, fld), spec.p)
    return g


def dual_defining_set(spec: CyclicCodeSpec) -> CyclicCodeSpec:
    """Defining set of the dual code: the negatives (mod n) of the
    complement of the defining set."""
    t = set(spec.defining_set)
    dual_t = tuple(sorted((-i) % spec.n for i in range(spec.n) if i not in t))
    return CyclicCodeSpec(spec.n, spec.p, dual_t)


def sum_defining_set(specs) -> CyclicCodeSpec:
    """Defining set of the sum code C_1 + ... + C_k: the intersection."""
    specs = list(specs)
    first = specs[0]
    for s in specs[1:]:
        if (s.n, s.p) != (first.n, first.p):
            raise LengthMismatch("summands must share length and field")
    t = set(first.defining_set)
    for s in specs[1:]:
        t &= set(s.defining_set)
    return CyclicCodeSpec(first.n, first.p, tuple(sorted(t)))


def spec_to_code(spec: CyclicCodeSpec) -> GenMatrixCode:
    """Generator matrix from the cyclic shifts of g(x)."""
    g = generator_poly(spec)
    k = spec.dimension
    rows = np.zeros((k, spec.n), dtype=np.int8)
    for j in range(k):
        for i, c in enumerate(g):
            rows[j, (j + i) % spec.n] = c
    return rref(rows, p=spec.p, n=spec.n)


def extend_code(code: GenMatrixCode) -> GenMatrixCode:
    """Append an overall parity coordinate so every codeword sums to zero."""
    if code.k == 0:
        return rref(np.zeros((0, code.n + 1), dtype=np.int8), p=code.p, n=code.n + 1)
    parity = (-code.rows.sum(axis=1)) % code.p
    rows = np.concatenate([code.rows, parity[:, None].astype(np.int8)], axis=1)
    return rref(rows, p=code.p, n=code.n + 1)


def irreducible_cyclic_code(fld: FieldTable, gamma: int, n: int) -> GenMatrixCode:
    """The [n, s] irreducible cyclic code of trace evaluations of powers of
    gamma, an n-th root of unity of degree s over GF(p); its nonzeros are
    the Frobenius orbit of the inverse of gamma."""
    if gamma == 0 or fld.pow(gamma, n) != 1:
        raise InvalidRoot(f"{gamma} is not an n-th root of unity for n = {n}")
    i = np.arange(n, dtype=np.int64)
    lg = int(fld.log[gamma])
    rows = []
    for b in range(fld.e):  # a over the polynomial basis g^b
        vals = fld.exp[(b + lg * i) % fld.n]
        rows.append(fld.trace_tab[vals])
    return rref(np.asarray(rows, dtype=np.int8), p=fld.p, n=n)
