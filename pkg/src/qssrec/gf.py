"""Small finite fields GF(p^m) with precomputed arithmetic tables.

Elements are integers in ``[0, q)``.  For an extension field the integer
``sum(c_i * p**i)`` encodes the polynomial ``sum(c_i * x**i)`` reduced modulo a
Conway polynomial, so ``0`` is the additive identity, ``1`` the multiplicative
identity and ``p`` the generator ``x``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_ORDER = 64

# Conway polynomials, coefficients listed from x^0 upwards (monic).
CONWAY_POLYNOMIALS = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def _is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def supported_orders(limit=MAX_ORDER):
    """All field orders ``q <= limit`` this module can build, ascending."""
    orders = [p for p in range(2, limit + 1) if _is_prime(p)]
    orders += [p**m for (p, m) in CONWAY_POLYNOMIALS if p**m <= limit]
    return sorted(orders)


def factor_prime_power(q):
    """Return ``(p, m)`` with ``q == p**m``; raise ``ValueError`` otherwise."""
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not _is_prime(p):
                break
            return p, m
    raise ValueError(f"{q} is not a prime power")


def _poly_mulmod(a, b, p, modulus):
    """Multiply coefficient lists a, b over F_p modulo a monic polynomial."""
    m = len(modulus) - 1
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            for i in range(m + 1):
                prod[d - m + i] = (prod[d - m + i] - c * modulus[i]) % p
    return prod[:m]


class FieldSpec:
    """The field F_q together with its addition, multiplication and inverse tables.

    Instances are cached per ``(p, m)``; build them with :func:`field_new` or
    :func:`GF`.  Tables are read-only numpy arrays so that vectorised lookups
    such as ``F.mul_table[a, b]`` work on whole coordinate arrays.
    """

    def __init__(self, p, m=1):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        q = p**m
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds the supported maximum {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = q
        if m == 1:
            self.irreducible_poly = ()
            idx = np.arange(q)
            add = (idx[:, None] + idx[None, :]) % p
            mul = (idx[:, None] * idx[None, :]) % p
        else:
            if (p, m) not in CONWAY_POLYNOMIALS:
                raise ValueError(f"no Conway polynomial tabulated for GF({p}^{m})")
            self.irreducible_poly = CONWAY_POLYNOMIALS[(p, m)]
            digits = [[(v // p**i) % p for i in range(m)] for v in range(q)]
            weights = p ** np.arange(m)
            dig = np.array(digits)
            add = ((dig[:, None, :] + dig[None, :, :]) % p) @ weights
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(a, q):
                    c = _poly_mulmod(digits[a], digits[b], p, self.irreducible_poly)
                    mul[a, b] = mul[b, a] = int(np.dot(c, weights))
        self.add_table = np.ascontiguousarray(add, dtype=np.int64)
        self.mul_table = np.ascontiguousarray(mul, dtype=np.int64)
        self.neg_table = np.argmin(self.add_table, axis=1).astype(np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(self.mul_table[a] == 1)[0])
        self.inv_table = inv
        self.sub_table = self.add_table[:, self.neg_table]
        for t in (self.add_table, self.mul_table, self.neg_table, self.inv_table, self.sub_table):
            t.setflags(write=False)

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))

    def __reduce__(self):
        return (field_new, (self.p, self.m))

    @property
    def is_prime(self):
        return self.m == 1

    def __call__(self, value):
        return FieldElement(self, value)

    def elements(self):
        return [FieldElement(self, v) for v in range(self.q)]

    # Scalar / array arithmetic on canonical integer encodings.
    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.sub_table[a, b]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.inv_table[a]

    def pow(self, a, e):
        result, base = 1, int(a)
        e = int(e)
        if e < 0:
            base, e = int(self.inv(base)), -e
        while e:
            if e & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            e >>= 1
        return result

    def dot(self, x, y, axis=-1):
        """Field inner product ``sum_i x_i*y_i`` along ``axis`` (broadcasting)."""
        prod = self.mul_table[x, y]
        return self.sum(prod, axis=axis)

    def sum(self, x, axis=-1):
        x = np.moveaxis(np.asarray(x), axis, -1)
        if self.is_prime:
            return x.sum(axis=-1) % self.p
        acc = np.zeros(x.shape[:-1], dtype=np.int64)
        for i in range(x.shape[-1]):
            acc = self.add_table[acc, x[..., i]]
        return acc


@lru_cache(maxsize=None)
def field_new(p, m=1):
    """Build (or fetch the cached) field ``GF(p**m)``."""
    return FieldSpec(p, m)


def GF(q):
    """Field of order ``q`` given as a prime power."""
    if q > MAX_ORDER:
        raise ValueError(f"field order {q} exceeds the supported maximum {MAX_ORDER}")
    p, m = factor_prime_power(q)
    return field_new(p, m)


class FieldElement:
    """A single element of a :class:`FieldSpec`, with operator overloads."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        value = int(value)
        if not 0 <= value < field.q:
            raise ValueError(f"{value} is not an element of {field!r}")
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return FieldElement(self.field, other).value
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add_table[self.value, o])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub_table[self.value, o])

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub_table[o, self.value])

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul_table[self.value, o])

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.field.neg_table[self.value])

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * self._wrap(self.field.inv(o))

    def __pow__(self, e):
        return self._wrap(self.field.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"{self.field!r}({self.value})"


def add(x, y):
    return x + y


def sub(x, y):
    return x - y


def mul(x, y):
    return x * y


def neg(x):
    return -x


def inv(x):
    return x.inverse()
