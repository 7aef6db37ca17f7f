"""Permutations of {0, ..., n-1} stored as image tuples.

Products are read left to right: ``p * q`` applies ``p`` first, then ``q``,
so ``(p * q)(i) == q(p(i))``.
"""

from __future__ import annotations

from .errors import DegreeMismatch, PointOutOfRange


class Permutation(tuple):
    """A bijection of ``range(n)``; entry ``i`` is the image of ``i``."""

    __slots__ = ()

    def __new__(cls, images=(), check=True):
        p = tuple.__new__(cls, images)
        if check and sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation: {tuple(p)}")
        return p

    @classmethod
    def _raw(cls, images):
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n):
        return cls._raw(range(n))

    @classmethod
    def from_cycles(cls, cycles, n):
        """Build from 0-indexed cycles, e.g. ``[(0, 1, 2), (3, 4)]``."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < n:
                    raise PointOutOfRange(f"point {a} outside degree {n}")
                if a in seen:
                    raise ValueError(f"point {a} repeated in cycles")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls._raw(img)

    @property
    def degree(self):
        return len(self)

    def __call__(self, i):
        return self[i]

    def __mul__(self, other):
        return compose(self, other)

    def __invert__(self):
        return inverse(self)

    def __pow__(self, e):
        if e < 0:
            return inverse(self) ** (-e)
        result = Permutation.identity(len(self))
        base = self
        while e:
            if e & 1:
                result = compose(result, base)
            base = compose(base, base)
            e >>= 1
        return result

    def is_identity(self):
        return all(i == x for i, x in enumerate(self))

    def support(self):
        return [i for i, x in enumerate(self) if i != x]

    def fixed_points(self):
        return [i for i, x in enumerate(self) if i == x]

    def cycles(self, include_fixed=False):
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self):
        from math import lcm

        return lcm(*(len(c) for c in self.cycles()), 1)

    def conjugate(self, g):
        """Return ``g^-1 * self * g``."""
        return compose(compose(inverse(g), self), g)

    def __repr__(self):
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation<{len(self)}>{body or '()'}"


def compose(p, q):
    """Apply ``p`` then ``q``."""
    if len(p) != len(q):
        raise DegreeMismatch(f"degrees {len(p)} and {len(q)} differ")
    return Permutation._raw(map(q.__getitem__, p))


def inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return Permutation._raw(inv)


def as_perm(p):
    return p if isinstance(p, Permutation) else Permutation(p)
