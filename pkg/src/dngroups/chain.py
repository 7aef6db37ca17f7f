"""Permutation groups, orbits and Schreier-Sims stabilizer chains."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegreeMismatch, OrderExceedsCap, PointOutOfRange
from .perm import Permutation, as_perm, compose, inverse

#: Elements scanned per vectorised block when streaming a group.
BLOCK_SIZE = 1 << 16


def orbit(gens, point, degree=None, witnesses=False):
    """Orbit of ``point`` under ``gens``.

    With ``witnesses=True`` return a dict mapping every orbit member ``x`` to a
    group element sending ``point`` to ``x`` (a Schreier tree unrolled into
    full permutations).
    """
    gens = list(gens)
    if degree is None:
        degree = len(gens[0]) if gens else point + 1
    if not 0 <= point < degree:
        raise PointOutOfRange(f"point {point} outside degree {degree}")
    if not witnesses:
        seen = {point}
        frontier = [point]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g[x]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen
    return _transversal(point, gens, degree)


def _transversal(point, gens, degree):
    trans = {point: Permutation.identity(degree)}
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            ux = trans[x]
            for g in gens:
                y = g[x]
                if y not in trans:
                    trans[y] = compose(ux, g)
                    nxt.append(y)
        frontier = nxt
    return trans


def orbits(gens, degree):
    """All orbits as sorted lists, ordered by smallest member."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(degree):
            a, b = find(x), find(g[x])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    cells = {}
    for x in range(degree):
        cells.setdefault(find(x), []).append(x)
    return [cells[k] for k in sorted(cells)]


@dataclass(frozen=True)
class ChainLevel:
    base_point: int
    generators: tuple
    transversal: dict
    inverse_transversal: dict

    @property
    def orbit(self):
        return sorted(self.transversal)

    def __len__(self):
        return len(self.transversal)


class StabilizerChain:
    """A verified base and strong generating set.

    ``levels[i].generators`` are the strong generators fixing
    ``base[:i]`` pointwise; ``levels[i].transversal[x]`` maps ``base[i]`` to
    ``x``. Instances are never mutated after :func:`build_chain` returns.
    """

    def __init__(self, degree, generators, base, levels):
        self.degree = degree
        self.generators = tuple(generators)
        self.base = tuple(base)
        self.levels = tuple(levels)
        self.order = math.prod(len(lv) for lv in self.levels)

    def __repr__(self):
        sizes = [len(lv) for lv in self.levels]
        return f"StabilizerChain(degree={self.degree}, base={list(self.base)}, orbits={sizes}, order={self.order})"

    @property
    def strong_generators(self):
        seen = []
        for lv in self.levels:
            for s in lv.generators:
                if s not in seen:
                    seen.append(s)
        return seen

    def sift(self, g, start=0):
        """Strip ``g`` through levels ``start...``.

        Returns ``(residue, level)`` where ``level`` is the first level whose
        orbit does not contain the image of its base point, or
        ``len(levels)`` if every level was passed.
        """
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            x = g[lv.base_point]
            uinv = lv.inverse_transversal.get(x)
            if uinv is None:
                return g, i
            g = Permutation._raw(map(uinv.__getitem__, g))
        return g, len(self.levels)

    def contains(self, p):
        if len(p) != self.degree:
            raise DegreeMismatch(f"permutation degree {len(p)} != chain degree {self.degree}")
        residue, level = self.sift(p)
        return level == len(self.levels) and residue.is_identity()

    __contains__ = contains

    def elements(self, cap=None):
        """Yield every group element exactly once.

        Raises :class:`OrderExceedsCap` (before yielding anything) when the
        group order exceeds ``cap``.
        """
        if cap is not None and self.order > cap:
            raise OrderExceedsCap(self.order, cap)
        return self._iter_elements()

    def _iter_elements(self):
        levels = self.levels

        def rec(i, prefix):
            if i < 0:
                yield prefix
                return
            for u in levels[i].transversal.values():
                yield from rec(i - 1, compose(prefix, u))

        yield from rec(len(levels) - 1, Permutation.identity(self.degree))

    def element_blocks(self, cap=None, block_size=BLOCK_SIZE):
        """Yield all elements as numpy blocks of shape ``(m, degree)``."""
        if cap is not None and self.order > cap:
            raise OrderExceedsCap(self.order, cap)
        n = self.degree
        levels = self.levels
        if not levels:
            yield np.arange(n, dtype=np.int16)[None, :]
            return
        # vectorise the deepest levels, loop over the shallow ones
        t = len(levels)
        size = 1
        while t > 0 and size * len(levels[t - 1]) <= block_size:
            t -= 1
            size *= len(levels[t])
        tail = np.arange(n, dtype=np.int16)[None, :]
        for i in range(len(levels) - 1, t - 1, -1):
            trans = np.array(list(levels[i].transversal.values()), dtype=np.int16)
            # (e * u)[x] = u[e[x]]
            tail = trans[:, tail].reshape(-1, n)
        if t == 0:
            yield tail
            return
        heads = [list(levels[i].transversal.values()) for i in range(t - 1, -1, -1)]
        for combo in itertools.product(*heads):
            h = Permutation.identity(n)
            for u in combo:
                h = compose(h, u)
            yield np.asarray(h, dtype=np.int16)[tail]

    def element_array(self, cap):
        return np.concatenate(list(self.element_blocks(cap)), axis=0)


def _first_moved(g):
    for i, x in enumerate(g):
        if i != x:
            return i
    return None


class _ChainBuilder:
    def __init__(self, degree, gens, base_prefix):
        self.degree = degree
        self.base = list(base_prefix)
        self.strong = list(gens)
        for g in self.strong:
            self._ensure_moved(g)
        self.level_gens = []
        self.trans = []
        self.inv_trans = []
        for i in range(len(self.base)):
            self._append_level()
            self._rebuild(i)

    def _ensure_moved(self, g):
        if all(g[b] == b for b in self.base):
            self.base.append(_first_moved(g))

    def _append_level(self):
        self.level_gens.append([])
        self.trans.append({})
        self.inv_trans.append({})

    def _rebuild(self, i):
        prefix = self.base[:i]
        gens = [s for s in self.strong if all(s[b] == b for b in prefix)]
        self.level_gens[i] = gens
        t = _transversal(self.base[i], gens, self.degree)
        self.trans[i] = t
        self.inv_trans[i] = {x: inverse(u) for x, u in t.items()}

    def sift(self, g, start):
        for i in range(start, len(self.base)):
            x = g[self.base[i]]
            uinv = self.inv_trans[i].get(x)
            if uinv is None:
                return g, i
            g = Permutation._raw(map(uinv.__getitem__, g))
        return g, len(self.base)

    def add_strong(self, h, j):
        """Add residue ``h`` (fixing ``base[:j]``) and refresh levels up to ``j``."""
        self.strong.append(h)
        if j == len(self.base):
            self.base.append(_first_moved(h))
            self._append_level()
        for lv in range(j + 1):
            self._rebuild(lv)

    def random_phase(self, rng, quiet_rounds=20):
        gens = self.strong
        if not gens:
            return
        state = [g for g in gens] * max(1, (10 + len(gens) - 1) // len(gens))
        acc = Permutation.identity(self.degree)

        def step():
            nonlocal acc
            a, b = rng.sample(range(len(state)), 2) if len(state) > 1 else (0, 0)
            if rng.random() < 0.5:
                state[a] = compose(state[a], state[b])
            else:
                state[a] = compose(state[b], state[a])
            acc = compose(acc, state[a])
            return acc

        for _ in range(30):
            step()
        quiet = 0
        while quiet < quiet_rounds:
            h, j = self.sift(step(), 0)
            if j < len(self.base) or not h.is_identity():
                self.add_strong(h, j)
                quiet = 0
            else:
                quiet += 1

    def verify(self):
        """Deterministic Schreier-generator pass; adds whatever is missing."""
        checked = [set() for _ in self.base]
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            for x, ux in list(self.trans[i].items()):
                for s in self.level_gens[i]:
                    sg = compose(compose(ux, s), self.inv_trans[i][s[x]])
                    if sg.is_identity() or sg in checked[i]:
                        continue
                    h, j = self.sift(sg, i + 1)
                    if j < len(self.base) or not h.is_identity():
                        self.add_strong(h, j)
                        while len(checked) < len(self.base):
                            checked.append(set())
                        i = j
                        restart = True
                        break
                    checked[i].add(sg)
                if restart:
                    break
            if not restart:
                i -= 1

    def finish(self, input_gens):
        levels = [
            ChainLevel(self.base[i], tuple(self.level_gens[i]), self.trans[i], self.inv_trans[i])
            for i in range(len(self.base))
        ]
        return StabilizerChain(self.degree, input_gens, self.base, levels)


def build_chain(group, base_prefix=(), seed=0):
    """Randomised Schreier-Sims followed by a deterministic verification pass.

    ``group`` is a :class:`PermutationGroup`. Base points listed in
    ``base_prefix`` are kept even when redundant, so the level after the prefix
    always holds the pointwise stabilizer of the prefix.
    """
    degree = group.degree
    for b in base_prefix:
        if not 0 <= b < degree:
            raise PointOutOfRange(f"base point {b} outside degree {degree}")
    gens = list(group.generators)
    builder = _ChainBuilder(degree, gens, base_prefix)
    builder.random_phase(random.Random(seed))
    builder.verify()
    return builder.finish(gens)


class PermutationGroup:
    """A group given by generators of a common degree.

    Identity generators and duplicates are dropped; the group with no
    generators left is the trivial group of the given degree.
    """

    def __init__(self, generators, degree=None):
        gens = [as_perm(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch(f"generator of degree {len(g)} in a group of degree {degree}")
        kept = []
        for g in gens:
            if not g.is_identity() and g not in kept:
                kept.append(g)
        self.degree = degree
        self.generators = tuple(kept)

    def __repr__(self):
        return f"PermutationGroup(degree={self.degree}, ngens={len(self.generators)})"

    @cached_property
    def chain(self):
        return build_chain(self)

    @property
    def order(self):
        return self.chain.order

    def __contains__(self, p):
        return self.chain.contains(as_perm(p))

    def orbit(self, point):
        return orbit(self.generators, point, self.degree)

    def orbits(self):
        return orbits(self.generators, self.degree)

    def is_trivial(self):
        return not self.generators

    def chain_with_base(self, base_prefix):
        return build_chain(self, base_prefix)


def contains(chain, p):
    return chain.contains(p)


def elements(chain, cap):
    return chain.elements(cap)


def point_stabilizer(chain_or_group, point):
    """Generators of the stabilizer of ``point`` as a new group."""
    if isinstance(chain_or_group, PermutationGroup):
        group = chain_or_group
        chain = group.chain
    else:
        chain = chain_or_group
        group = PermutationGroup(chain.generators, chain.degree)
    if not 0 <= point < chain.degree:
        raise PointOutOfRange(f"point {point} outside degree {chain.degree}")
    if not chain.base or chain.base[0] != point:
        chain = build_chain(group, (point,))
    gens = chain.levels[1].generators if len(chain.levels) > 1 else ()
    return PermutationGroup(gens, chain.degree)


def is_transitive(group):
    if group.degree <= 1:
        return True
    return len(orbit(group.generators, 0, group.degree)) == group.degree
