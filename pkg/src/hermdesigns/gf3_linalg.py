"""GF(3) (and small-prime) linear-algebra kernels.

Vectors over GF(3) pack into two bit-planes held in Python ints: digit 1
sets a bit in the low plane, digit 2 in the high plane.  Addition mod 3 is
carry-free boolean logic, negation swaps the planes, and Hamming weight is
a popcount of (lo | hi).  Row reduction for ternary matrices runs on this
packed form; a byte-wise numpy path covers other primes and doubles as the
reference implementation for differential tests.

Codes are kept as canonical reduced row-echelon generator matrices, so two
equal row spaces always produce bit-identical objects.  Exhaustive weight
enumeration and the information-set minimum-distance search
(Brouwer-Zimmermann style lower/upper bound convergence) operate on
vectorized batches of message vectors.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np


class LengthMismatch(Exception):
    pass


class DimensionOverBudget(Exception):
    pass


class BudgetExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# packed GF(3) vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PackedVec:
    """Length-n GF(3) vector as two bit-planes; bit i of `lo`/`hi` is the
    low/high bit of coordinate i.  lo & hi == 0 always (no invalid digit)."""

    n: int
    lo: int
    hi: int

    def __post_init__(self):
        mask = (1 << self.n) - 1
        if self.lo & self.hi:
            raise ValueError("invalid packed digit (both planes set)")
        if (self.lo | self.hi) & ~mask:
            raise ValueError("set bits beyond vector length")

    @classmethod
    def zeros(cls, n: int) -> "PackedVec":
        return cls(n, 0, 0)

    @classmethod
    def from_digits(cls, digits) -> "PackedVec":
        arr = np.asarray(digits, dtype=np.int8) % 3
        lo = _bits_to_int(arr == 1)
        hi = _bits_to_int(arr == 2)
        return cls(len(arr), lo, hi)

    def to_digits(self) -> np.ndarray:
        out = _int_to_bits(self.lo, self.n).astype(np.int8)
        out += 2 * _int_to_bits(self.hi, self.n).astype(np.int8)
        return out

    def weight(self) -> int:
        return (self.lo | self.hi).bit_count()

    def digit(self, j: int) -> int:
        return ((self.lo >> j) & 1) + 2 * ((self.hi >> j) & 1)

    def __add__(self, other: "PackedVec") -> "PackedVec":
        if self.n != other.n:
            raise LengthMismatch(f"{self.n} vs {other.n}")
        lo, hi = _padd(self.lo, self.hi, other.lo, other.hi)
        return PackedVec(self.n, lo, hi)

    def __neg__(self) -> "PackedVec":
        return PackedVec(self.n, self.hi, self.lo)

    def __sub__(self, other: "PackedVec") -> "PackedVec":
        return self + (-other)

    def scale(self, c: int) -> "PackedVec":
        c %= 3
        if c == 0:
            return PackedVec(self.n, 0, 0)
        if c == 1:
            return self
        return -self

    def is_zero(self) -> bool:
        return self.lo == 0 and self.hi == 0

    def dot(self, other: "PackedVec") -> int:
        if self.n != other.n:
            raise LengthMismatch(f"{self.n} vs {other.n}")
        pl = (self.lo & other.lo) | (self.hi & other.hi)
        ph = (self.lo & other.hi) | (self.hi & other.lo)
        return (pl.bit_count() + 2 * ph.bit_count()) % 3


def _padd(al: int, ah: int, bl: int, bh: int) -> tuple[int, int]:
    # digitwise (a + b) mod 3 on bit-planes; za/zb flag zero digits
    za = ~(al | ah)
    zb = ~(bl | bh)
    lo = (bl & za) | (al & zb) | (ah & bh)
    hi = (bh & za) | (ah & zb) | (al & bl)
    return lo, hi


def _bits_to_int(bits) -> int:
    b = np.asarray(bits, dtype=np.uint8)
    return int.from_bytes(np.packbits(b, bitorder="little").tobytes(), "little")


def _int_to_bits(x: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(x.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n]


def pack_rows(arr) -> list[PackedVec]:
    a = np.atleast_2d(np.asarray(arr, dtype=np.int8))
    return [PackedVec.from_digits(row) for row in a]


def unpack_rows(rows: list[PackedVec]) -> np.ndarray:
    if not rows:
        return np.zeros((0, 0), dtype=np.int8)
    return np.stack([r.to_digits() for r in rows])


# ---------------------------------------------------------------------------
# canonical generator matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenMatrixCode:
    """Linear [n, k] code over GF(p) held as a canonical RREF generator
    matrix; identical row spaces give identical objects."""

    p: int
    n: int
    rows: np.ndarray  # (k, n) int8, reduced row echelon form
    pivots: tuple[int, ...]

    def __post_init__(self):
        self.rows.flags.writeable = False

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    def contains(self, v) -> bool:
        return row_space_contains(self, v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def is_subcode_of(self, other: "GenMatrixCode") -> bool:
        return is_subcode(self, other)

    def dual(self) -> "GenMatrixCode":
        return orthogonal_complement(self)

    def packed_rows(self) -> list[PackedVec]:
        if self.p != 3:
            raise ValueError("packed rows are GF(3) only")
        return pack_rows(self.rows) if self.k else []

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GenMatrixCode)
            and self.p == other.p
            and self.n == other.n
            and self.pivots == other.pivots
            and np.array_equal(self.rows, other.rows)
        )

    def __repr__(self):
        return f"GenMatrixCode([{self.n}, {self.k}] over GF({self.p}))"

    def to_digit_lines(self) -> list[str]:
        return ["".join(str(int(d)) for d in row) for row in self.rows]


def _as_row_array(rows, n=None) -> np.ndarray:
    if isinstance(rows, GenMatrixCode):
        return np.asarray(rows.rows)
    if isinstance(rows, PackedVec):
        rows = [rows]
    if isinstance(rows, (list, tuple)) and rows and isinstance(rows[0], PackedVec):
        return unpack_rows(list(rows))
    a = np.atleast_2d(np.asarray(rows, dtype=np.int8))
    if a.size == 0:
        a = a.reshape(0, n if n is not None else a.shape[-1])
    return a


def rref(rows, p: int = 3, n: int | None = None) -> GenMatrixCode:
    """Canonical RREF code from any row collection (arrays, digit lists or
    PackedVec).  GF(3) runs on the packed kernel, other primes on numpy."""
    a = _as_row_array(rows, n)
    if n is None:
        n = a.shape[1]
    elif a.shape[1] != n:
        raise LengthMismatch(f"rows have length {a.shape[1]}, expected {n}")
    if p == 3:
        r, piv = _rref_packed(a)
    else:
        r, piv = rref_reference(a, p)
    return GenMatrixCode(p, n, r, piv)


def _rref_packed(a: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    n = a.shape[1]
    mask = (1 << n) - 1
    pivot_of: dict[int, tuple[int, int]] = {}  # col -> (lo, hi), pivot digit 1
    for row in a % 3:
        lo = _bits_to_int(row == 1)
        hi = _bits_to_int(row == 2)
        lo, hi = _reduce_packed(lo, hi, pivot_of)
        if lo | hi:
            c = _low_bit(lo | hi)
            if (lo >> c) & 1 == 0:  # leading digit 2: negate to make it 1
                lo, hi = hi, lo
            pivot_of[c] = (lo, hi)
    cols = sorted(pivot_of)
    # back-eliminate so every pivot column is a unit column
    for c in reversed(cols):
        plo, phi = pivot_of[c]
        for c2 in cols:
            if c2 >= c:
                break
            lo, hi = pivot_of[c2]
            d = ((lo >> c) & 1) + 2 * ((hi >> c) & 1)
            if d == 1:
                lo, hi = _padd(lo, hi, phi, plo)
            elif d == 2:
                lo, hi = _padd(lo, hi, plo, phi)
            pivot_of[c2] = (lo & mask, hi & mask)
    out = np.zeros((len(cols), n), dtype=np.int8)
    for i, c in enumerate(cols):
        lo, hi = pivot_of[c]
        out[i] = _int_to_bits(lo, n) + 2 * _int_to_bits(hi, n).astype(np.int8)
    return out, tuple(cols)


def _reduce_packed(lo: int, hi: int, pivot_of: dict[int, tuple[int, int]]) -> tuple[int, int]:
    while lo | hi:
        c = _low_bit(lo | hi)
        piv = pivot_of.get(c)
        if piv is None:
            return lo, hi
        plo, phi = piv
        if (lo >> c) & 1:  # digit 1: subtract pivot == add 2*pivot
            lo, hi = _padd(lo, hi, phi, plo)
        else:  # digit 2: add pivot
            lo, hi = _padd(lo, hi, plo, phi)
    return 0, 0


def _low_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def rref_reference(arr, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Plain numpy row reduction over GF(p); reference path for the packed
    kernel and the working path for p != 3."""
    a = (np.atleast_2d(np.asarray(arr)).astype(np.int64)) % p
    m, n = a.shape
    inv = [0] + [pow(x, p - 2, p) for x in range(1, p)]
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * inv[int(a[r, c])] % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r].astype(np.int8), tuple(pivots)


# ---------------------------------------------------------------------------
# row-space queries
# ---------------------------------------------------------------------------

def reduce_against(code: GenMatrixCode, v) -> np.ndarray:
    """Residual of v after eliminating every pivot coordinate of the code."""
    vv = np.asarray(v, dtype=np.int64).reshape(-1) % code.p
    if vv.shape[0] != code.n:
        raise LengthMismatch(f"vector length {vv.shape[0]}, code length {code.n}")
    if code.k == 0:
        return vv.astype(np.int8)
    coeffs = vv[list(code.pivots)]
    res = (vv - coeffs @ code.rows.astype(np.int64)) % code.p
    return res.astype(np.int8)


def row_space_contains(code: GenMatrixCode, v) -> bool:
    if isinstance(v, PackedVec):
        v = v.to_digits()
    return not np.any(reduce_against(code, v))


def row_space_equal(a: GenMatrixCode, b: GenMatrixCode) -> bool:
    return a == b


def is_subcode(a: GenMatrixCode, b: GenMatrixCode) -> bool:
    """True when every row of a lies in the row space of b."""
    if a.n != b.n:
        raise LengthMismatch(f"{a.n} vs {b.n}")
    if a.k == 0:
        return True
    if b.k == 0:
        return a.k == 0
    coeffs = a.rows[:, list(b.pivots)].astype(np.int64)
    res = (a.rows - coeffs @ b.rows.astype(np.int64)) % a.p
    return not np.any(res)


def orthogonal_complement(code: GenMatrixCode) -> GenMatrixCode:
    """The dual code: all vectors with zero inner product against every row."""
    n, k, p = code.n, code.k, code.p
    if k == 0:
        return rref(np.eye(n, dtype=np.int8), p=p)
    piv = list(code.pivots)
    free = [c for c in range(n) if c not in set(piv)]
    dual = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        dual[i, f] = 1
        dual[i, piv] = (-code.rows[:, f]) % p
    return rref(dual % p, p=p)


# ---------------------------------------------------------------------------
# weight enumeration
# ---------------------------------------------------------------------------

@dataclass
class WeightEnumerator:
    """Map weight -> number of codewords; `complete` marks exhaustive counts,
    otherwise the counts are exact only for weights <= truncation_bound."""

    counts: dict[int, int]
    complete: bool = True
    truncation_bound: int | None = None

    def multiplicity(self, w: int) -> int:
        return self.counts.get(w, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def sorted_items(self) -> list[tuple[int, int]]:
        return sorted(self.counts.items())

    def to_json_dict(self) -> dict:
        out = {"complete": self.complete,
               "counts": {str(w): c for w, c in self.sorted_items()}}
        if not self.complete:
            out["truncation_bound"] = self.truncation_bound
        return out

    @classmethod
    def from_pairs(cls, pairs, complete=True, truncation_bound=None):
        return cls({int(w): int(c) for w, c in pairs if c}, complete, truncation_bound)

    def __eq__(self, other):
        return (
            isinstance(other, WeightEnumerator)
            and self.complete == other.complete
            and {w: c for w, c in self.counts.items() if c} == {w: c for w, c in other.counts.items() if c}
        )


def weight_enumerator(code: GenMatrixCode, budget: int = 20) -> WeightEnumerator:
    """Exact weight distribution by exhaustive (chunked, vectorized)
    enumeration of all p^k codewords.  Refuses dimensions above `budget`."""
    k, n, p = code.k, code.n, code.p
    if k > budget:
        raise DimensionOverBudget(f"dimension {k} exceeds enumeration budget {budget}")
    if k == 0:
        return WeightEnumerator({0: 1})
    # expand the last kb rows into a table, iterate prefixes over the rest
    kb = k
    while p**kb * n > 2 * 10**7 and kb > 1:
        kb -= 1
    tbl = _expand_all(code.rows[k - kb:], p)
    counts = np.zeros(n + 1, dtype=np.int64)
    if kb == k:
        counts += np.bincount(np.count_nonzero(tbl, axis=1), minlength=n + 1)
    else:
        head = code.rows[: k - kb].astype(np.int16)
        for prefix in itertools.product(range(p), repeat=k - kb):
            word = (np.asarray(prefix, dtype=np.int16) @ head) % p
            chunk = (tbl + word) % p
            counts += np.bincount(np.count_nonzero(chunk, axis=1), minlength=n + 1)
    assert counts.sum() == p**k and counts[0] >= 1
    return WeightEnumerator.from_pairs(enumerate(counts.tolist()))


def _expand_all(rows: np.ndarray, p: int) -> np.ndarray:
    """All linear combinations of the given rows, (p^k, n) int8, in
    lexicographic coefficient order (first coefficient varies slowest)."""
    n = rows.shape[1]
    tbl = np.zeros((1, n), dtype=np.int8)
    for row in rows[::-1]:
        parts = [(tbl + (c * row) % p) % p for c in range(p)]
        tbl = np.concatenate(parts, axis=0)
    return tbl


# ---------------------------------------------------------------------------
# minimum-distance search
# ---------------------------------------------------------------------------

@dataclass
class MinWeightResult:
    d_lower: int
    d_upper: int
    exact: bool
    witness: PackedVec | np.ndarray | None
    lb_history: list[tuple[int, int]] = dc_field(default_factory=list)
    ops: int = 0
    count_at_d: int | None = None

    @property
    def d(self) -> int:
        if not self.exact:
            raise BudgetExceeded(
                f"search stopped with bounds [{self.d_lower}, {self.d_upper}]")
        return self.d_upper


@dataclass
class _InfoSet:
    cols: tuple[int, ...]
    gen: np.ndarray  # k x n systematic on this column set
    rank: int
    level: int = 0  # last fully enumerated message weight


def information_sets(code: GenMatrixCode) -> list[_InfoSet]:
    """Greedy disjoint information sets: repeatedly row-reduce with unused
    columns preferred, peel off the pivot columns."""
    n, k = code.n, code.k
    sets = []
    avail = list(range(n))
    base = code.rows
    while avail:
        order = avail + [c for c in range(n) if c not in set(avail)]
        permuted = base[:, order]
        r, piv = (rref_reference(permuted, code.p) if code.p != 3 else _rref_packed(permuted))
        gen = r[:, np.argsort(np.asarray(order))]  # undo the permutation
        cols = tuple(sorted(order[c] for c in piv if order[c] in set(avail)))
        rank = len(cols)
        if rank == 0:
            break
        sets.append(_InfoSet(cols=cols, gen=np.ascontiguousarray(gen), rank=rank))
        avail = [c for c in avail if c not in set(cols)]
    return sets


def _patterns(r: int, p: int) -> np.ndarray:
    """Nonzero-coefficient patterns of length r with the first entry fixed
    to 1 (one representative per scalar class)."""
    if r == 1:
        return np.ones((1, 1), dtype=np.int16)
    tail = np.asarray(list(itertools.product(range(1, p), repeat=r - 1)), dtype=np.int16)
    return np.concatenate([np.ones((len(tail), 1), dtype=np.int16), tail], axis=1)


def _combo_batches(k: int, r: int, batch: int):
    it = itertools.combinations(range(k), r)
    while True:
        block = list(itertools.islice(it, batch))
        if not block:
            return
        yield np.asarray(block, dtype=np.int64)


def _enumerate_level(gen: np.ndarray, r: int, p: int, workers: int,
                     collect_below: int | None):
    """Scan all weight-r messages against `gen`.  Returns (best weight,
    first witness codeword at best, ops, list of collected (word bytes,
    weight) with weight <= collect_below)."""
    k, n = gen.shape
    pats = _patterns(r, p)
    g16 = gen.astype(np.int16)
    batch = max(1, min(4096, (1 << 22) // (len(pats) * n)))

    def work(combos):
        rows = g16[combos]  # (B, r, n)
        words = np.matmul(pats[None, :, :], rows)  # (B, P, n)
        words %= p
        wts = np.count_nonzero(words, axis=2)
        ops = words.size * r
        flat = wts.reshape(-1)
        best_idx = int(np.argmin(flat))
        best_w = int(flat[best_idx])
        wit = words.reshape(-1, n)[best_idx].astype(np.int8)
        coll = []
        if collect_below is not None:
            hits = np.nonzero(flat <= collect_below)[0]
            if hits.size:
                sel = words.reshape(-1, n)[hits].astype(np.int8)
                coll = [(_canon_bytes(w, p), int(t)) for w, t in zip(sel, flat[hits])]
        return best_w, wit, ops, coll

    best_w, best_wit, total_ops = n + 1, None, 0
    collected = []
    batches = _combo_batches(k, r, batch)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = ex.map(work, batches)
            for w, wit, ops, coll in results:
                total_ops += ops
                collected.extend(coll)
                if 0 < w < best_w:
                    best_w, best_wit = w, wit
    else:
        for combos in batches:
            w, wit, ops, coll = work(combos)
            total_ops += ops
            collected.extend(coll)
            if 0 < w < best_w:
                best_w, best_wit = w, wit
    return best_w, best_wit, total_ops, collected


def _canon_bytes(word: np.ndarray, p: int) -> bytes:
    """Scale so the first nonzero coordinate is 1; canonical per scalar class."""
    nz = np.nonzero(word)[0]
    if nz.size == 0:
        return word.tobytes()
    lead = int(word[nz[0]])
    if lead != 1:
        word = (word * pow(lead, p - 2, p)) % p
    return word.astype(np.int8).tobytes()


def _lower_bound(sets: list[_InfoSet], k: int) -> int:
    return sum(max(0, s.level + 1 - (k - s.rank)) for s in sets)


def min_weight_search(code: GenMatrixCode, budget_ops: int = 10**10,
                      workers: int = 1) -> MinWeightResult:
    """Exact minimum distance with converging lower/upper bounds.

    Small codes are enumerated exhaustively.  Larger ones run the
    information-set search: all messages of weight <= r are scanned against
    each disjoint systematic generator; after finishing level r the distance
    is at least sum_i max(0, r + 1 - (k - rank_i)).  If the op budget runs
    out the result carries bounds with exact=False."""
    k, n, p = code.k, code.n, code.p
    if k < 1:
        raise ValueError("minimum distance needs a nonzero code")
    if p**k * n <= 2 * 10**7:
        enum = weight_enumerator(code, budget=k)
        d = min(w for w in enum.counts if w > 0)
        wit = _first_word_of_weight(code, d)
        return MinWeightResult(d, d, True, wit, [(k, d)], p**k * n, enum.counts[d])

    sets = information_sets(code)
    ub, witness = n + 1, None
    history = []
    ops = 0
    r = 0
    while True:
        lb = _lower_bound(sets, k)
        history.append((r, lb))
        if lb >= ub:
            return MinWeightResult(ub, ub, True, _to_packed(witness, p), history, ops)
        r += 1
        for s in sets:
            if r + 1 - (k - s.rank) <= 0:
                continue  # enumerating this set cannot raise the bound yet
            if ops > budget_ops:
                return MinWeightResult(_lower_bound(sets, k), ub, False,
                                       _to_packed(witness, p), history, ops)
            # the bound needs every level up to r scanned, so catch up any
            # levels skipped while the set was still unhelpful
            for lvl in range(s.level + 1, r + 1):
                w, wit, level_ops, _ = _enumerate_level(s.gen, lvl, p, workers, None)
                ops += level_ops
                if 0 < w < ub:
                    ub, witness = w, wit
            s.level = r


def _to_packed(word, p):
    if word is None:
        return None
    return PackedVec.from_digits(word) if p == 3 else np.asarray(word, dtype=np.int8)


def _first_word_of_weight(code: GenMatrixCode, w: int):
    k, p = code.k, code.p
    tbl = _expand_all(code.rows, p)
    wts = np.count_nonzero(tbl, axis=1)
    idx = int(np.nonzero(wts == w)[0][0])
    return _to_packed(tbl[idx], p)


def low_weight_census(code: GenMatrixCode, max_weight: int,
                      budget_ops: int = 10**11, workers: int = 1) -> WeightEnumerator:
    """All codewords of weight <= max_weight, counted exactly.

    Message levels advance in every information set until the residual
    lower bound exceeds max_weight, which guarantees no light codeword was
    missed; codewords are deduplicated per scalar class and the counts
    rescaled by p-1."""
    k, n, p = code.k, code.n, code.p
    if k < 1:
        return WeightEnumerator({0: 1}, complete=False, truncation_bound=max_weight)
    if p**k * n <= 2 * 10**7:
        enum = weight_enumerator(code, budget=k)
        counts = {w: c for w, c in enum.counts.items() if w <= max_weight}
        return WeightEnumerator(counts, complete=False, truncation_bound=max_weight)

    sets = information_sets(code)
    weights: dict[bytes, int] = {}
    ops = 0
    r = 0
    while _lower_bound(sets, k) <= max_weight:
        r += 1
        advanced = False
        for s in sets:
            if r + 1 - (k - s.rank) <= 0:
                continue
            if ops > budget_ops:
                raise BudgetExceeded(f"census spent {ops} ops before level {r}")
            for lvl in range(s.level + 1, r + 1):
                _, _, level_ops, coll = _enumerate_level(s.gen, lvl, p, workers, max_weight)
                ops += level_ops
                for word_bytes, wt in coll:
                    weights.setdefault(word_bytes, wt)
            advanced = True
            s.level = r
        if not advanced:
            break
    counts: dict[int, int] = {0: 1}
    for wt in weights.values():
        counts[wt] = counts.get(wt, 0) + (p - 1)
    return WeightEnumerator(counts, complete=False, truncation_bound=max_weight)
