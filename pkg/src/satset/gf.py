"""Arithmetic in GF(p^e), with field elements encoded as plain integers.

An element is an index in [0, q) whose base-p digits (c_0, ..., c_{e-1})
are the coefficients of c_0 + c_1*x + ... + c_{e-1}*x^(e-1).  Index 0 is
the additive identity and index 1 the multiplicative identity.  For e > 1
products are reduced modulo a canonical irreducible polynomial, chosen as
the monic irreducible of degree e whose non-leading coefficient vector
encodes to the smallest integer sum(c_j * p^j).  That choice makes every
derived index (points of PG(2,q), subfields, constructions) reproducible.
"""

from __future__ import annotations

import numpy as np

ORDER_CAP = 2**20          # largest supported field order p^e
_TABLE_CAP = 1024          # orders up to this get full lookup tables


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, p prime; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); coefficient lists low-to-high degree
# ---------------------------------------------------------------------------

def _digits(index: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(index % p)
        index //= p
    return out


def _undigits(coeffs, p: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = out * p + c
    return out


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_rem(a, m, p):
    """Remainder of a modulo monic m."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm]


def _trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _is_irreducible(m, p: int) -> bool:
    """Exhaustive trial division by all monic polynomials of degree <= deg/2."""
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for enc in range(p**d):
            div = _digits(enc, p, d) + [1]
            if not _trim(_poly_rem(m, div, p)):
                return False
    return True


def _canonical_irreducible(p: int, e: int) -> tuple[int, ...]:
    for enc in range(p**e):
        cand = _digits(enc, p, e) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise RuntimeError(f"no irreducible of degree {e} over GF({p})")  # unreachable


# ---------------------------------------------------------------------------
# field
# ---------------------------------------------------------------------------

class GaloisField:
    """GF(p^e) with integer-encoded elements and optional lookup tables.

    For q <= 1024 full add/mul/neg/inv tables are precomputed (the plane
    builder indexes them in tight loops); larger fields fall back to
    on-the-fly polynomial arithmetic.
    """

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if e < 1:
            raise ValueError(f"e={e} must be >= 1")
        q = p**e
        if q > ORDER_CAP:
            raise ValueError(f"field order {q} exceeds cap {ORDER_CAP}")
        self.p = p
        self.e = e
        self.q = q
        self.irreducible = _canonical_irreducible(p, e) if e > 1 else None
        self._tables = None
        if q <= _TABLE_CAP:
            self._build_tables()

    def __repr__(self):
        return f"GaloisField(p={self.p}, e={self.e})"

    def __eq__(self, other):
        return (isinstance(other, GaloisField)
                and (self.p, self.e) == (other.p, other.e))

    def __hash__(self):
        return hash((self.p, self.e))

    # -- raw arithmetic (no tables) ------------------------------------

    def _raw_add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        da = _digits(a, self.p, self.e)
        db = _digits(b, self.p, self.e)
        return _undigits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def _raw_neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return _undigits([(-c) % self.p for c in _digits(a, self.p, self.e)], self.p)

    def _raw_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        prod = _poly_mul(_digits(a, self.p, self.e), _digits(b, self.p, self.e), self.p)
        return _undigits(_poly_rem(prod, self.irreducible, self.p), self.p)

    def _raw_pow(self, a: int, k: int) -> int:
        result = 1
        base = a
        while k:
            if k & 1:
                result = self._raw_mul(result, base)
            base = self._raw_mul(base, base)
            k >>= 1
        return result

    def _generator(self) -> int:
        """Smallest multiplicative generator of GF(q)*."""
        order = self.q - 1
        factors = []
        m, d = order, 2
        while d * d <= m:
            if m % d == 0:
                factors.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            factors.append(m)
        for g in range(2, self.q):
            if all(self._raw_pow(g, order // f) != 1 for f in factors):
                return g
        return 1  # q = 2

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        idx = np.arange(q, dtype=np.int64)
        dig = np.empty((q, e), dtype=np.int64)
        rem = idx.copy()
        for j in range(e):
            dig[:, j] = rem % p
            rem //= p
        weights = p ** np.arange(e, dtype=np.int64)
        add = ((dig[:, None, :] + dig[None, :, :]) % p) @ weights
        neg = ((-dig) % p) @ weights
        # exp/log via a generator gives O(1) products and inverses
        exp = np.empty(q - 1, dtype=np.int64)
        g = self._generator()
        x = 1
        for k in range(q - 1):
            exp[k] = x
            x = self._raw_mul(x, g)
        log = np.empty(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        log[0] = -1
        mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        inv = np.zeros(q, dtype=np.int64)
        inv[exp] = exp[(-np.arange(q - 1)) % (q - 1)]
        self._tables = {"add": add, "neg": neg, "mul": mul, "inv": inv}

    # -- public ops ----------------------------------------------------

    def _check(self, a: int):
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element index of GF({self.q})")

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self._tables is not None:
            return int(self._tables["add"][a, b])
        return self._raw_add(a, b)

    def neg(self, a: int) -> int:
        self._check(a)
        if self._tables is not None:
            return int(self._tables["neg"][a])
        return self._raw_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self._tables is not None:
            return int(self._tables["mul"][a, b])
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._tables is not None:
            return int(self._tables["inv"][a])
        return self._raw_pow(a, self.q - 2)

    def pow(self, a: int, k: int) -> int:
        self._check(a)
        if k < 0:
            return self.pow(self.inv(a), -k)
        if a == 0:
            return 1 if k == 0 else 0
        result, base = 1, a
        if self._tables is not None:
            mul = self._tables["mul"]
            while k:
                if k & 1:
                    result = int(mul[result, base])
                base = int(mul[base, base])
                k >>= 1
            return result
        return self._raw_pow(a, k)


def field_new(p: int, e: int) -> GaloisField:
    """Construct GF(p^e) with the canonical irreducible polynomial."""
    return GaloisField(p, e)


def field_for_order(q: int) -> GaloisField:
    """Construct GF(q) for a prime power q."""
    p, e = factor_prime_power(q)
    return GaloisField(p, e)


def subfield_elements(field: GaloisField, s: int) -> list[int]:
    """The s elements of the subfield GF(s) inside GF(q), q = s^2.

    These are exactly the fixed points of x -> x^s, returned in ascending
    index order; the set is closed under add and mul and contains 0 and 1.
    """
    if s < 2 or s * s != field.q:
        raise ValueError(f"field order {field.q} is not the square of {s}")
    return [x for x in range(field.q) if field.pow(x, s) == x]
