"""Small finite fields, enough for the linear and projective constructions.

Elements are integers ``0..q-1`` encoding polynomial coefficients in base
``p`` (digit ``i`` is the coefficient of ``x**i``).
"""

from __future__ import annotations

from functools import lru_cache

from .errors import UnsupportedField

# monic irreducible moduli, low coefficient first (leading 1 omitted)
_MODULI = {
    4: (2, (1, 1)),  # x^2 + x + 1
    8: (2, (1, 1, 0)),  # x^3 + x + 1
    9: (3, (1, 0)),  # x^2 + 1
    16: (2, (1, 1, 0, 0)),  # x^4 + x + 1
}
_PRIMES = {2, 3, 5, 7, 11, 13}


class GF:
    def __init__(self, q):
        if q in _PRIMES:
            self.p, self.e = q, 1
            low = ()
        elif q in _MODULI:
            self.p, low = _MODULI[q]
            self.e = len(low)
        else:
            raise UnsupportedField(f"GF({q}) is not supported")
        self.q = q
        p, e = self.p, self.e
        digits = [self._digits(a) for a in range(q)]
        self._add = [[self._num([(x + y) % p for x, y in zip(da, db)]) for db in digits] for da in digits]
        self._mul = [[self._num(self._polymul(da, db, low)) for db in digits] for da in digits]
        self._neg = [self._num([(-x) % p for x in da]) for da in digits]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
        self.primitive = next(a for a in range(2 if q > 2 else 1, q) if self.mult_order(a) == q - 1)

    def _digits(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _num(self, digits):
        return sum(c * self.p**i for i, c in enumerate(digits))

    def _polymul(self, a, b, low):
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce with x^e = -(low)
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, m in enumerate(low):
                    prod[k - e + i] = (prod[k - e + i] - c * m) % p
        return prod[:e]

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]

    def power(self, a, k):
        r = 1
        for _ in range(k):
            r = self._mul[r][a]
        return r

    def mult_order(self, a):
        if a == 0:
            return 0
        k, x = 1, a
        while x != 1:
            x = self._mul[x][a]
            k += 1
        return k

    def frobenius(self, a, k=1):
        """``a ** (p ** k)``."""
        return self.power(a, self.p**k)

    def is_square(self, a):
        return a == 0 or any(self._mul[x][x] == a for x in range(1, self.q))

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q):
    return GF(q)
