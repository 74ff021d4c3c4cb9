"""Table-driven arithmetic for small finite fields GF(p^e).

Elements are plain ints in "value" form: v = sum(c_i * p**i) for the
coefficient vector (c_0, ..., c_{e-1}) of the element in the polynomial
basis of the shipped primitive polynomial.  0 is the zero element and the
values 0..p-1 are the prime subfield.  Multiplication runs on discrete-log
tables, addition on a Zech-logarithm table; a digit-vector table is kept
alongside and the two addition routes are cross-checked at build time.

Fields are capped at 3**12 elements; anything larger is rejected rather
than degraded.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 3**12

ZECH_NONE = -1  # zech[k] sentinel when 1 + g^k == 0


class FieldError(Exception):
    pass


class NotIrreducible(FieldError):
    pass


class NotPrimitive(FieldError):
    pass


class TableTooLarge(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class FieldMismatch(FieldError):
    pass


class NotInSubfield(FieldError):
    pass


class ZeroElement(FieldError):
    pass


# One validated primitive polynomial per (p, e) used by the package,
# coefficients low degree first, monic.  Every entry is re-checked for
# irreducibility and primitivity when the table is built, so a bad entry
# fails loudly.  (3, 2) is x^2 + 2x + 2, whose root g satisfies
# g^3 = 2g + 1 and Tr(g) = 1; the unit tests pin those values.
PRIMITIVE_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 0, 2, 1),
    (3, 4): (2, 0, 0, 1, 1),
    (3, 5): (1, 0, 0, 0, 2, 1),
    (3, 6): (2, 0, 0, 0, 0, 1, 1),
    (3, 7): (1, 0, 0, 0, 0, 1, 2, 1),
    (3, 8): (2, 0, 0, 0, 0, 1, 0, 0, 1),
    (3, 9): (1, 0, 0, 0, 0, 0, 2, 1, 0, 1),
    (3, 10): (2, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1),
    (3, 11): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 1),
    (3, 12): (2, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 1, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 1, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomial helpers over GF(p), coefficient lists low degree first --

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, f, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    df = len(f) - 1
    while len(res) > df:
        lead = res[-1]
        if lead:
            shift = len(res) - 1 - df
            for i in range(df + 1):
                res[shift + i] = (res[shift + i] - lead * f[i]) % p
        res.pop()
    return res + [0] * (df - len(res))


def _poly_powmod(a, n, f, p):
    df = len(f) - 1
    result = [1] + [0] * (df - 1)
    base = list(a) + [0] * (df - len(a))
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        n >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        r = list(a)
        while True:
            r = _poly_trim(r)
            if len(r) < len(b):
                break
            c = (r[-1] * inv_lead) % p
            shift = len(r) - len(b)
            for i, bi in enumerate(b):
                r[shift + i] = (r[shift + i] - c * bi) % p
        a, b = b, r
    return a


def is_irreducible(poly, p: int) -> bool:
    """Rabin test for a monic polynomial over GF(p)."""
    f = list(poly)
    e = len(f) - 1
    if e < 1 or f[-1] != 1:
        return False
    if e == 1:
        return True
    x = [0, 1] + [0] * (e - 2)
    xq = x
    for _ in range(e):
        xq = _poly_powmod(xq, p, f, p)
    if _poly_trim([(u - v) % p for u, v in zip(xq, x)]):
        return False
    for r in prime_factors(e):
        xq = x
        for _ in range(e // r):
            xq = _poly_powmod(xq, p, f, p)
        diff = [(u - v) % p for u, v in zip(xq, x)]
        g = _poly_gcd(diff, f, p)
        if len(_poly_trim(g)) > 1:
            return False
    return True


def is_primitive_poly(poly, p: int) -> bool:
    """True when the root of an irreducible monic poly generates GF(p^e)^*."""
    f = list(poly)
    e = len(f) - 1
    if not is_irreducible(f, p):
        return False
    order = p**e - 1
    if e == 1:
        g = (-f[0]) % p
        if g == 0:
            return False
        return all(pow(g, order // r, p) != 1 for r in prime_factors(order))
    x = [0, 1] + [0] * (e - 2)
    one = [1] + [0] * (e - 1)
    return all(_poly_powmod(x, order // r, f, p) != one for r in prime_factors(order))


def find_primitive_polynomial(p: int, e: int, skip: int = 0) -> tuple[int, ...]:
    """Search monic degree-e polynomials in lexicographic coefficient order;
    skip the first `skip` hits (used to obtain an alternative representation)."""
    found = 0
    for idx in range(p**e):
        coeffs = []
        v = idx
        for _ in range(e):
            coeffs.append(v % p)
            v //= p
        if coeffs[0] == 0:
            continue
        f = coeffs + [1]
        if is_primitive_poly(f, p):
            if found == skip:
                return tuple(f)
            found += 1
    raise NotPrimitive(f"no primitive polynomial of degree {e} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """Defining data of a field table: p prime, extension degree e, and a
    monic primitive polynomial of degree e (coefficients low degree first)."""

    p: int
    e: int
    prim_poly: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "prim_poly", tuple(int(c) % self.p for c in self.prim_poly))

    @property
    def order(self) -> int:
        return self.p**self.e

    def to_json(self) -> str:
        return json.dumps({"p": self.p, "e": self.e, "prim_poly": list(self.prim_poly)})

    @classmethod
    def from_json(cls, text: str) -> "FieldSpec":
        d = json.loads(text)
        return cls(int(d["p"]), int(d["e"]), tuple(d["prim_poly"]))

    @classmethod
    def default(cls, p: int, e: int) -> "FieldSpec":
        key = (p, e)
        if key in PRIMITIVE_POLYS:
            return cls(p, e, PRIMITIVE_POLYS[key])
        return cls(p, e, find_primitive_polynomial(p, e))


class FieldTable:
    """GF(p^e) realized by exp/log/Zech tables for a fixed primitive root g.

    Elements are ints 0..p^e-1 in value form; `gen` is the value of g (the
    root of the primitive polynomial, so its digit vector is (0,1,0,...)).
    """

    def __init__(self, spec: FieldSpec):
        p, e = spec.p, spec.e
        if not _is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if e < 1:
            raise FieldError(f"extension degree must be >= 1, got {e}")
        order = p**e
        if order > MAX_FIELD_SIZE:
            raise TableTooLarge(f"GF({p}^{e}) has {order} elements, cap is {MAX_FIELD_SIZE}")
        poly = spec.prim_poly
        if len(poly) != e + 1 or poly[-1] != 1:
            raise FieldError("prim_poly must be monic of degree e")
        if not is_irreducible(poly, p):
            raise NotIrreducible(f"{poly} is not irreducible over GF({p})")
        if not is_primitive_poly(poly, p):
            raise NotPrimitive(f"{poly} is irreducible but its root is not primitive")

        self.spec = spec
        self.p = p
        self.e = e
        self.order = order
        self.n = order - 1  # multiplicative group order

        # exp table: digits of g^k, one multiply-by-g step at a time
        p_pows = [p**i for i in range(e)]
        reducer = [(-c) % p for c in poly[:e]]  # g^e = sum reducer[i] g^i
        exp = np.empty(self.n, dtype=np.int64)
        digits = [0] * e
        digits[0] = 1
        for k in range(self.n):
            exp[k] = sum(d * w for d, w in zip(digits, p_pows))
            carry = digits[e - 1]
            digits = [0] + digits[: e - 1]
            if carry:
                digits = [(d + carry * r) % p for d, r in zip(digits, reducer)]
        if len(set(exp.tolist())) != self.n or exp[0] != 1:
            raise NotPrimitive(f"{poly}: root fails to enumerate the whole group")
        self.exp = exp
        log = np.full(order, -1, dtype=np.int64)
        log[exp] = np.arange(self.n)
        self.log = log
        self.gen = int(exp[1 % self.n]) if self.n > 1 else 1

        # digit vectors of every value, row v = (c_0, ..., c_{e-1})
        vals = np.arange(order)
        vec = np.empty((order, e), dtype=np.int8)
        for i in range(e):
            vec[:, i] = (vals // p_pows[i]) % p
        self.vec = vec
        self._p_pows = np.asarray(p_pows)

        # Zech logarithms: zech[k] = log(1 + g^k), ZECH_NONE when that is 0
        one_plus = self._add_vals(np.ones(self.n, dtype=np.int64), exp)
        zech = np.where(one_plus == 0, ZECH_NONE, log[one_plus])
        self.zech = zech

        # trace-to-prime-subfield table
        tr_basis = np.empty(e, dtype=np.int64)
        for i in range(e):
            acc = 0
            for j in range(e):
                acc = self._add2(acc, int(exp[(i * p**j) % self.n]))
            if acc >= p:
                raise FieldError("trace of basis element landed outside the prime field")
            tr_basis[i] = acc
        self.trace_tab = (vec.astype(np.int64) @ tr_basis % p).astype(np.int8)

        self._check_addition()

    # -- internal vectorized digit addition on value arrays --
    def _add_vals(self, a, b):
        s = (self.vec[a].astype(np.int16) + self.vec[b]) % self.p
        return s.astype(np.int64) @ self._p_pows

    def _add2(self, a: int, b: int) -> int:
        s = (self.vec[a].astype(np.int16) + self.vec[b]) % self.p
        return int(s.astype(np.int64) @ self._p_pows)

    def add_vals(self, a, b) -> np.ndarray:
        """Vectorized Zech-table addition on arrays of element values."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log[a]
        lb = self.log[b]
        z = self.zech[(lb - la) % self.n]
        out = np.where(z == ZECH_NONE, 0, self.exp[(la + z) % self.n])
        out = np.where(a == 0, b, out)
        out = np.where(b == 0, np.where(a == 0, 0, a), out)
        return out

    def _check_addition(self):
        """Zech addition must agree with digit-vector addition; exhaustive for
        fields up to 3^6 elements, randomized (seeded) beyond that."""
        if self.order <= 729:
            xs = np.repeat(np.arange(self.order), self.order)
            ys = np.tile(np.arange(self.order), self.order)
        else:
            rng = np.random.default_rng(0xF1E1D)
            xs = rng.integers(0, self.order, 20000)
            ys = rng.integers(0, self.order, 20000)
        if not np.array_equal(self._add_vals(xs, ys), self.add_vals(xs, ys)):
            raise FieldError("Zech-table addition disagrees with vector addition")
        for x, y in zip(xs[:200].tolist(), ys[:200].tolist()):
            if self.add(x, y) != self._add2(x, y):
                raise FieldError("scalar Zech addition disagrees with vector addition")

    # -- element checks --
    def _check(self, *xs):
        for x in xs:
            if not 0 <= x < self.order:
                raise FieldMismatch(f"value {x} outside GF({self.p}^{self.e})")

    # -- arithmetic --
    def add(self, x: int, y: int) -> int:
        self._check(x, y)
        if x == 0:
            return y
        if y == 0:
            return x
        a, b = int(self.log[x]), int(self.log[y])
        z = self.zech[(b - a) % self.n]
        if z == ZECH_NONE:
            return 0
        return int(self.exp[(a + z) % self.n])

    def neg(self, x: int) -> int:
        self._check(x)
        if x == 0 or self.p == 2:
            return x
        return int(self.exp[(self.log[x] + self.n // 2) % self.n])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        self._check(x, y)
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(self.log[x] + self.log[y]) % self.n])

    def inv(self, x: int) -> int:
        self._check(x)
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.exp[(-self.log[x]) % self.n])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, k: int) -> int:
        self._check(x)
        if x == 0:
            if k == 0:
                return 1
            if k < 0:
                raise DivisionByZero("negative power of zero")
            return 0
        return int(self.exp[(self.log[x] * k) % self.n])

    def frob(self, x: int, j: int = 1) -> int:
        """Frobenius x -> x^(p^j)."""
        return self.pow(x, self.p**j)

    # -- traces and subfields --
    def trace(self, x: int) -> int:
        """Absolute trace to GF(p): x + x^p + ... + x^(p^(e-1))."""
        self._check(x)
        return int(self.trace_tab[x])

    def element_order(self, x: int) -> int:
        self._check(x)
        if x == 0:
            raise ZeroElement("order of the zero element is undefined")
        return self.n // math.gcd(self.n, int(self.log[x]))

    def subfield_test(self, x: int, d: int) -> bool:
        """True when x lies in the subfield GF(p^d); requires d | e."""
        self._check(x)
        if d < 1 or self.e % d != 0:
            raise NotInSubfield(f"degree {d} does not divide {self.e}")
        return self.pow(x, self.p**d) == x

    def subfield_elements(self, d: int) -> list[int]:
        """All elements of the subfield GF(p^d), zero first then powers of
        the subfield generator g^((p^e-1)/(p^d-1))."""
        if d < 1 or self.e % d != 0:
            raise NotInSubfield(f"degree {d} does not divide {self.e}")
        sub_n = self.p**d - 1
        step = self.n // sub_n
        return [0] + [int(self.exp[(step * i) % self.n]) for i in range(sub_n)]

    def rel_trace(self, x: int, d: int) -> int:
        """Trace of the subfield GF(p^d) down to GF(p), for x in GF(p^d):
        x + x^p + ... + x^(p^(d-1)).  The result is a prime-field value."""
        if not self.subfield_test(x, d):
            raise NotInSubfield(f"{x} is not in GF({self.p}^{d})")
        acc = 0
        for i in range(d):
            acc = self.add(acc, self.pow(x, self.p**i))
        if acc >= self.p:
            raise NotInSubfield("relative trace landed outside the prime field")
        return acc

    def elements(self):
        return range(self.order)

    # -- formatting / io --
    def fmt(self, x: int) -> str:
        self._check(x)
        if x == 0:
            return "0"
        k = int(self.log[x])
        return "1" if k == 0 else f"g^{k}"

    def vec_of(self, x: int) -> tuple[int, ...]:
        self._check(x)
        return tuple(int(c) for c in self.vec[x])

    def __repr__(self):
        return f"FieldTable(GF({self.p}^{self.e}), poly={list(self.spec.prim_poly)})"


def build_field(spec: FieldSpec) -> FieldTable:
    return FieldTable(spec)


@lru_cache(maxsize=32)
def field(p: int, e: int) -> FieldTable:
    """Cached field table for the shipped primitive polynomial."""
    return FieldTable(FieldSpec.default(p, e))


def point_values(fld: FieldTable) -> np.ndarray:
    """The global evaluation order of the field: g^0, g^1, ..., g^(q-2), 0.

    Index i < q-1 holds the i-th power of the primitive root, so cyclic
    codes of length q-1 sit on the first q-1 coordinates and the zero
    element occupies the final (extension) coordinate.
    """
    out = np.empty(fld.order, dtype=np.int64)
    out[: fld.n] = fld.exp
    out[fld.n] = 0
    return out


def position_of(fld: FieldTable, values) -> np.ndarray:
    """Map element values to their positions in the global point order."""
    vals = np.atleast_1d(np.asarray(values, dtype=np.int64))
    pos = np.where(vals == 0, fld.n, fld.log[vals])
    return pos
