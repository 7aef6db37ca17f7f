"""Block systems, quotient actions and the primitive / quasiprimitive /
semiprimitive predicates.

The two normal-subgroup predicates reduce to a scan over prime-order
elements: every nontrivial normal subgroup contains an element ``g`` of
prime order together with its normal closure, and a normal subgroup that is
not semiregular contains a prime-order element with a fixed point. The
orbits of the normal closure of ``g`` form the finest ``G``-invariant
partition in which every cycle of ``g`` lies inside one cell, so
transitivity of the closure is a union-find computation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import PermutationGroup, build_chain, is_transitive, orbits
from .errors import (
    EqualPoints,
    NotInvariant,
    NotTransitive,
    OrderExceedsCap,
    PrimitiveInput,
    SeedNotInGroup,
)
from .perm import Permutation, as_perm

#: Default element-scan cap for the normal-subgroup predicates.
DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class BlockSystem:
    """A partition of ``range(degree)``; cells are sorted and numbered by
    their smallest point."""

    cells: tuple

    def __post_init__(self):
        cells = tuple(sorted(tuple(sorted(c)) for c in self.cells))
        object.__setattr__(self, "cells", cells)
        pts = [x for c in cells for x in c]
        if any(not c for c in cells) or sorted(pts) != list(range(len(pts))):
            raise ValueError("cells must be disjoint, nonempty and cover 0..n-1")

    @property
    def degree(self):
        return sum(len(c) for c in self.cells)

    @property
    def cell_of(self):
        out = [0] * self.degree
        for i, c in enumerate(self.cells):
            for x in c:
                out[x] = i
        return tuple(out)

    def __len__(self):
        return len(self.cells)

    def is_trivial(self):
        """One cell or all singletons."""
        return len(self.cells) in (1, self.degree)

    def is_invariant(self, group):
        cell_of = self.cell_of
        for g in group.generators:
            for c in self.cells:
                target = cell_of[g[c[0]]]
                if any(cell_of[g[x]] != target for x in c):
                    return False
        return True


def _merge_closure(gens, n, pairs):
    """Finest partition invariant under ``gens`` that joins every pair."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = []
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            queue.append((a, b))
    while queue:
        a, b = queue.pop()
        for g in gens:
            ra, rb = find(g[a]), find(g[b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
                queue.append((ra, rb))
    cells = {}
    for x in range(n):
        cells.setdefault(find(x), []).append(x)
    return list(cells.values())


def orbit_partition(group):
    return BlockSystem(tuple(tuple(c) for c in orbits(group.generators, group.degree)))


def minimal_block_system(group, omega, beta):
    """Finest ``G``-invariant partition with ``omega`` and ``beta`` in one cell."""
    if omega == beta:
        raise EqualPoints(f"points must differ, got {omega} twice")
    if not is_transitive(group):
        raise NotTransitive("minimal_block_system needs a transitive group")
    cells = _merge_closure(group.generators, group.degree, [(omega, beta)])
    return BlockSystem(tuple(tuple(c) for c in cells))


def is_primitive(group):
    """Transitive with no nontrivial invariant partition.

    Degree 1 is not primitive by convention; a transitive group of degree 2
    is primitive.
    """
    n = group.degree
    if n <= 1 or not is_transitive(group):
        return False
    return all(len(minimal_block_system(group, 0, b)) == 1 for b in range(1, n))


@dataclass(frozen=True)
class QuotientAction:
    """The action induced on the cells of a block system.

    ``generator_images[i]`` is the cell permutation induced by
    ``source.generators[i]``.
    """

    source: PermutationGroup
    blocks: BlockSystem
    generator_images: tuple
    image: PermutationGroup

    def image_of(self, g):
        cell_of = self.blocks.cell_of
        return Permutation._raw(cell_of[g[c[0]]] for c in self.blocks.cells)


def quotient_action(group, blocks):
    cell_of = blocks.cell_of
    images = []
    for g in group.generators:
        img = []
        for c in blocks.cells:
            target = cell_of[g[c[0]]]
            if any(cell_of[g[x]] != target for x in c):
                raise NotInvariant(f"generator {g!r} breaks cell {c}")
            img.append(target)
        images.append(Permutation._raw(img))
    image = PermutationGroup(images, len(blocks))
    return QuotientAction(group, blocks, tuple(images), image)


def _with_cells(group, blocks):
    """``group`` acting on points and cells at once (degree ``n + m``)."""
    n = group.degree
    q = quotient_action(group, blocks)
    gens = [Permutation._raw(list(g) + [n + x for x in img]) for g, img in zip(group.generators, q.generator_images)]
    return PermutationGroup(gens, n + len(blocks))


def kernel_of_block_action(group, blocks):
    """Subgroup fixing every cell setwise.

    The group acts on points and cells simultaneously; a stabilizer chain
    whose base starts with all cell points has the kernel as the stabilizer
    after that prefix.
    """
    n, m = group.degree, len(blocks)
    combined = _with_cells(group, blocks)
    chain = build_chain(combined, tuple(range(n, n + m)))
    if len(chain.levels) <= m:
        return PermutationGroup([], n)
    gens = [Permutation._raw(s[:n]) for s in chain.levels[m].generators]
    return PermutationGroup(gens, n)


def some_maximal_block_system(group):
    """A block system whose quotient action is primitive."""
    if not is_transitive(group):
        raise NotTransitive("group is not transitive")
    if is_primitive(group) or group.degree <= 1:
        raise PrimitiveInput("group is primitive; no nontrivial block system")
    n = group.degree
    point_to_cell = list(range(n))
    current = group
    while not is_primitive(current):
        for b in range(1, current.degree):
            sys_ = minimal_block_system(current, 0, b)
            if len(sys_) > 1:
                break
        q = quotient_action(current, sys_)
        cell_of = sys_.cell_of
        point_to_cell = [cell_of[c] for c in point_to_cell]
        current = q.image
    cells = {}
    for x, c in enumerate(point_to_cell):
        cells.setdefault(c, []).append(x)
    return BlockSystem(tuple(tuple(v) for v in cells.values()))


def normal_closure(group, seeds):
    """Smallest normal subgroup of ``group`` containing ``seeds``."""
    seeds = [as_perm(s) for s in seeds]
    for s in seeds:
        if s not in group:
            raise SeedNotInGroup(f"{s!r} is not in the group")
    gens = [s for s in seeds if not s.is_identity()]
    N = PermutationGroup(gens, group.degree)
    queue = list(N.generators)
    while queue:
        x = queue.pop()
        for g in group.generators:
            c = x.conjugate(g)
            if c not in N:
                N = PermutationGroup(list(N.generators) + [c], group.degree)
                queue.append(c)
    return N


def is_semiregular(group):
    order = group.order
    return all(len(o) == order for o in group.orbits())


# -- prime-order element scans ------------------------------------------------


def prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _compose_rows(a, b):
    """Row-wise product: apply ``a`` then ``b``."""
    return np.take_along_axis(b, a, axis=1)


def prime_order_blocks(chain, cap):
    """Yield ``(rows, orders)`` numpy pairs covering every prime-order element."""
    primes = prime_factors(chain.order)
    n = chain.degree
    ident = np.arange(n)
    for block in chain.element_blocks(cap):
        block = block.astype(np.intp)
        nonid = ~(block == ident).all(axis=1)
        for p in primes:
            pw = block
            for _ in range(p - 1):
                pw = _compose_rows(pw, block)
            mask = nonid & (pw == ident).all(axis=1)
            if mask.any():
                rows = block[mask]
                yield rows, np.full(len(rows), p)


def prime_order_elements(chain, cap):
    """Yield ``(g, has_fixed_point)`` for every element of prime order."""
    if chain.order > cap:
        raise OrderExceedsCap(chain.order, cap)
    ident = np.arange(chain.degree)
    for rows, _ in prime_order_blocks(chain, cap):
        fixes = (rows == ident).any(axis=1)
        for r, f in zip(rows.tolist(), fixes.tolist()):
            yield Permutation._raw(r), f


def _cycle_key(row):
    """Per-point smallest member of its cycle (shared by all powers)."""
    return tuple(min(c) for c in _cycle_map(row))


def _cycle_map(row):
    n = len(row)
    out = [None] * n
    for i in range(n):
        if out[i] is None:
            cyc = [i]
            j = row[i]
            while j != i:
                cyc.append(j)
                j = row[j]
            for x in cyc:
                out[x] = cyc
    return out


def closure_is_transitive(group, g):
    """Whether the normal closure of ``g`` in ``group`` is transitive."""
    n = group.degree
    cells = _merge_closure(group.generators, n, [(x, g[x]) for x in range(n)])
    return len(cells) == 1


def _scan(group, cap, require_fixed_point):
    """First prime-order element whose normal closure is intransitive, or None."""
    n = group.degree
    ident = np.arange(n)
    seen = set()
    for rows, _ in prime_order_blocks(group.chain, cap):
        if require_fixed_point:
            rows = rows[(rows == ident).any(axis=1)]
        for r in rows.tolist():
            key = _cycle_key(r)
            if key in seen:
                continue
            seen.add(key)
            if not closure_is_transitive(group, r):
                return Permutation._raw(r)
    return None


def _generator_prime_powers(group):
    for g in group.generators:
        o = g.order()
        for p in prime_factors(o):
            yield g ** (o // p)


def _predicate(group, cap, require_fixed_point):
    if group.degree <= 1:
        return True
    if not is_transitive(group):
        return False
    if is_primitive(group):
        return True
    if group.order > cap:
        for h in _generator_prime_powers(group):
            if require_fixed_point and not h.fixed_points():
                continue
            if not closure_is_transitive(group, h):
                return False
        raise OrderExceedsCap(group.order, cap, f"order {group.order} exceeds cap {cap}; verdict unknown")
    return _scan(group, cap, require_fixed_point) is None


def is_quasiprimitive(group, cap=DEFAULT_CAP):
    """Every nontrivial normal subgroup is transitive."""
    return _predicate(group, cap, require_fixed_point=False)


def is_semiprimitive(group, cap=DEFAULT_CAP):
    """Every normal subgroup is transitive or semiregular."""
    return _predicate(group, cap, require_fixed_point=True)


def intransitive_normal_witness(group, cap=DEFAULT_CAP, require_fixed_point=False):
    """A prime-order element whose normal closure is intransitive, or None."""
    return _scan(group, cap, require_fixed_point)
