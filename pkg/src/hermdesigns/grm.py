"""Punctured and extended generalized Reed-Muller codes over a prime field.

The punctured order-l code in m variables is cyclic of length q^m - 1; its
defining set collects the exponents whose base-q digit sum falls below
(q-1)m - l.  The extended code evaluates the same function space over the
whole field (monomial traces plus constants), which is what the subcode
checks downstream need as an explicit matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cyclic import CyclicCodeSpec
from .finite_field import field
from .gf3_linalg import GenMatrixCode, rref


class OutOfRange(Exception):
    pass


def q_weight(i: int, q: int, m: int) -> int:
    """Base-q digit sum of i, for 0 <= i < q^m."""
    if not 0 <= i < q**m:
        raise OutOfRange(f"{i} outside [0, {q}^{m})")
    s = 0
    while i:
        s += i % q
        i //= q
    return s


def q_weights_upto(q: int, m: int) -> np.ndarray:
    """Digit sums of 0..q^m-1 in one vectorized sweep."""
    vals = np.arange(q**m, dtype=np.int64)
    s = np.zeros_like(vals)
    v = vals.copy()
    for _ in range(m):
        s += v % q
        v //= q
    return s


@dataclass(frozen=True)
class GrmParams:
    """Order-l generalized Reed-Muller code in m variables over GF(q)."""

    q: int
    l: int
    m: int

    def __post_init__(self):
        if not 0 <= self.l <= (self.q - 1) * self.m:
            raise OutOfRange(f"order {self.l} outside [0, {(self.q - 1) * self.m}]")

    @property
    def n(self) -> int:
        return self.q**self.m - 1

    @property
    def l1(self) -> int:
        return self.l // (self.q - 1)

    @property
    def l0(self) -> int:
        return self.l % (self.q - 1)


def grm_punctured_spec(params: GrmParams) -> CyclicCodeSpec:
    """Defining set {i in [1, n-1] : digit sum of i < (q-1)m - l}."""
    q, l, m = params.q, params.l, params.m
    w = q_weights_upto(q, m)
    cut = (q - 1) * m - l
    t = [int(i) for i in range(1, params.n) if w[i] < cut]
    return CyclicCodeSpec(params.n, q, tuple(t))


def grm_dimension_monomial_count(params: GrmParams) -> int:
    """The alternating-binomial double sum: the number of reduced monomials
    of degree <= l in m variables with exponents below q."""
    q, l, m = params.q, params.l, params.m
    k = 0
    for i in range(l + 1):
        for j in range(m + 1):
            top, bot = i - j * q + m - 1, i - j * q
            if bot < 0 or top < 0:
                continue
            k += (-1) ** j * math.comb(m, j) * math.comb(top, bot)
    return k


def grm_dimension_formula(params: GrmParams) -> int:
    """Dimension of the punctured (and of the extended) code.

    At the top order l = (q-1)m the monomial count exceeds the puncture
    length by one: the deleted-point indicator polynomial spans the kernel
    of the evaluation map, so one dimension is subtracted there.
    """
    k = grm_dimension_monomial_count(params)
    if params.l == (params.q - 1) * params.m:
        k -= 1
    return k


def grm_min_weight_formula(params: GrmParams) -> int:
    """(q - l0) * q^(m - l1 - 1) - 1 with l = l1(q-1) + l0, 0 <= l0 < q-1.
    The top order l = (q-1)m degenerates to the full space, distance 1."""
    if params.l == (params.q - 1) * params.m:
        return 1
    return (params.q - params.l0) * params.q ** (params.m - params.l1 - 1) - 1


def grm_dual_spec(params: GrmParams) -> CyclicCodeSpec:
    """Defining set of the dual of the punctured code: {0} together with
    the exponents of digit sum <= l.

    The 0 exponent belongs to the dual's defining set because 0 is never in
    the primal one; dropping it would overstate the dual dimension by one
    (the brute-force orthogonal-complement oracle pins this down).
    """
    q, l, m = params.q, params.l, params.m
    w = q_weights_upto(q, m)
    t = [0] + [int(j) for j in range(1, params.n) if w[j] <= l]
    return CyclicCodeSpec(params.n, q, tuple(t))


def grm_dual_params(params: GrmParams) -> tuple[int, int | None]:
    """(dual dimension, lower bound on the dual minimum weight).  The bound
    decomposes m(q-1) - 1 - l = l1'(q-1) + l0' with 0 <= l0' < q-1; a zero
    dual (l at the top order) reports bound None."""
    k_dual = params.n - grm_dimension_formula(params)
    rem = params.m * (params.q - 1) - 1 - params.l
    if rem < 0:
        return k_dual, None
    l1p, l0p = divmod(rem, params.q - 1)
    return k_dual, (params.q - l0p) * params.q ** (params.m - l1p - 1)


def punctured_grm_generator(params: GrmParams) -> GenMatrixCode:
    """Monomial-trace evaluation matrix over the nonzero field elements:
    the all-ones row plus Tr(b t^e) for e of digit sum <= l, b over the
    polynomial basis."""
    fld = field(params.q, params.m)
    n = params.n
    w = q_weights_upto(params.q, params.m)
    i = np.arange(n, dtype=np.int64)
    rows = [np.ones(n, dtype=np.int8)]
    for e in range(1, n):
        if w[e] > params.l:
            continue
        for b in range(fld.e):
            rows.append(fld.trace_tab[fld.exp[(b + e * i) % fld.n]])
    return rref(np.asarray(rows, dtype=np.int8), p=params.q, n=n)


def extended_grm_generator(q: int, l: int, m: int) -> GenMatrixCode:
    """The extended (full evaluation) order-l code of length q^m: monomial
    traces t -> Tr(b t^e) with digit sum of e at most l extended by value 0
    at t = 0, plus the constant row.  Coordinates follow the global point
    order (powers of the primitive root, then 0 last)."""
    params = GrmParams(q, l, m)
    fld = field(q, m)
    n = params.n
    w = q_weights_upto(q, m)
    i = np.arange(n, dtype=np.int64)
    rows = [np.ones(n + 1, dtype=np.int8)]
    for e in range(1, n):
        if w[e] > l:
            continue
        for b in range(fld.e):
            row = np.zeros(n + 1, dtype=np.int8)
            row[:n] = fld.trace_tab[fld.exp[(b + e * i) % fld.n]]
            rows.append(row)
    return rref(np.asarray(rows, dtype=np.int8), p=q, n=n + 1)
