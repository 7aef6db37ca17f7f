"""Distinguishing colorings: triviality tests, searches and the reductions
through a block system.

A coloring is fixed by ``g`` exactly when it is constant on every cycle of
``g``, and a nontrivial colorwise stabilizer always contains an element of
prime order. Both searches lean on that: the exhaustive route marks every
coloring fixed by some prime-order element, the per-coloring route checks
prime-order representatives (small groups) or backtracks through the
stabilizer chain (large groups).
"""

from __future__ import annotations

import math
import weakref
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .chain import PermutationGroup, build_chain, orbit
from .errors import BudgetExceeded, OrderExceedsCap, PreconditionFailed
from .perm import Permutation, compose
from .structure import is_semiregular, is_transitive, kernel_of_block_action, prime_factors, quotient_action

#: Groups up to this order are checked by scanning prime-order elements.
SCAN_ORDER = 10**5
#: Largest order enumerated for the exhaustive marking route.
ELEMENT_CAP = 10**6
DEFAULT_BUDGET = 1 << 25
DEFAULT_TRIALS = 1000


@dataclass(frozen=True)
class Coloring:
    """A labelled partition; ``color_of[i]`` is the color of point ``i``."""

    color_of: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.color_of)
        object.__setattr__(self, "color_of", c)
        if c and set(c) != set(range(max(c) + 1)):
            raise ValueError(f"colors must be exactly 0..k-1, got {sorted(set(c))}")

    @property
    def k(self):
        return max(self.color_of) + 1 if self.color_of else 0

    @property
    def degree(self):
        return len(self.color_of)

    def __len__(self):
        return len(self.color_of)

    def canonical(self):
        """Relabel so color ``i`` first appears before color ``i + 1``."""
        relabel = {}
        for x in self.color_of:
            relabel.setdefault(x, len(relabel))
        return Coloring(tuple(relabel[x] for x in self.color_of))

    def is_canonical(self):
        return self.canonical() == self

    def parts(self):
        out = [[] for _ in range(self.k)]
        for i, x in enumerate(self.color_of):
            out[x].append(i)
        return out

    def __str__(self):
        return ",".join(map(str, self.color_of))

    @classmethod
    def parse(cls, text):
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x != ""))

    @classmethod
    def from_labels(cls, labels):
        """Any labelling, normalised to canonical form."""
        relabel = {}
        out = []
        for x in labels:
            out.append(relabel.setdefault(x, len(relabel)))
        return cls(tuple(out))


def refine_to(coloring, k):
    """Split color classes until ``k`` colors are used (needs ``k <= n``)."""
    c = list(coloring.color_of)
    used = max(c) + 1 if c else 0
    while used < k:
        counts = {}
        for i, x in enumerate(c):
            counts.setdefault(x, []).append(i)
        big = next(pts for col, pts in sorted(counts.items()) if len(pts) >= 2)
        c[big[-1]] = used
        used += 1
    return Coloring(tuple(c))


# -- prime-order tables -------------------------------------------------------


class FixTable:
    """One prime-order element per distinct cycle partition.

    ``labels[r, i]`` is the smallest point on the cycle of ``rows[r]``
    through ``i``; all powers of a prime-order element share these labels.
    """

    def __init__(self, chain, cap):
        from .structure import prime_order_blocks

        n = chain.degree
        rows_all, labels_all = [], []
        for rows, orders in prime_order_blocks(chain, cap):
            p = int(orders[0])
            lab = np.arange(n)[None, :].repeat(len(rows), axis=0)
            cur = rows
            for _ in range(p - 1):
                lab = np.minimum(lab, cur)
                cur = np.take_along_axis(rows, cur, axis=1)
            lab, idx = np.unique(lab, axis=0, return_index=True)
            rows_all.append(rows[idx])
            labels_all.append(lab)
        if rows_all:
            labels = np.concatenate(labels_all)
            rows = np.concatenate(rows_all)
            labels, idx = np.unique(labels, axis=0, return_index=True)
            rows = rows[idx]
        else:
            labels = np.zeros((0, n), dtype=np.intp)
            rows = np.zeros((0, n), dtype=np.intp)
        self.degree = n
        self.rows = rows.astype(np.intp)
        self.labels = labels.astype(np.intp)

    def __len__(self):
        return len(self.rows)

    def cycles(self, r):
        lab = self.labels[r]
        out = {}
        for i, x in enumerate(lab.tolist()):
            out.setdefault(x, []).append(i)
        return list(out.values())

    def fixed_masks(self):
        ident = np.arange(self.degree)
        fixed = self.rows == ident
        return [sum(1 << i for i in np.flatnonzero(f).tolist()) for f in fixed]

    def first_fixing(self, colors):
        """Index of the first row fixing every color in ``colors`` (2-D batch
        or 1-D vector), or -1 per coloring."""
        c = np.atleast_2d(colors)
        out = np.full(len(c), -1)
        if not len(self.rows):
            return out if colors.ndim > 1 else out[0]
        step = max(1, (1 << 22) // max(1, len(self.rows) * self.degree))
        for s in range(0, len(c), step):
            chunk = c[s : s + step]
            hit = (chunk[:, self.rows] == chunk[:, None, :]).all(axis=2)
            anyhit = hit.any(axis=1)
            out[s : s + step] = np.where(anyhit, hit.argmax(axis=1), -1)
        return out if np.ndim(colors) > 1 else out[0]


_TABLES = weakref.WeakKeyDictionary()


def fix_table(chain, cap=ELEMENT_CAP):
    table = _TABLES.get(chain)
    if table is None:
        if chain.order > cap:
            raise OrderExceedsCap(chain.order, cap)
        table = FixTable(chain, cap)
        _TABLES[chain] = table
    return table


# -- triviality of the colorwise stabilizer -----------------------------------


_FIXED_AFTER = weakref.WeakKeyDictionary()


def _fixed_after(chain):
    """Per level ``j``, the points fixed by the stabilizer of ``base[:j+1]``."""
    out = _FIXED_AFTER.get(chain)
    if out is None:
        out = []
        levels = chain.levels
        for j in range(len(levels)):
            gens = levels[j + 1].generators if j + 1 < len(levels) else ()
            out.append([x for x in range(chain.degree) if all(g[x] == x for g in gens)])
        _FIXED_AFTER[chain] = out
    return out


def backtrack_fixer(chain, color):
    """A nonidentity element preserving ``color`` pointwise, or None.

    Elements are built as ``u_m * ... * u_1`` from transversal choices; after
    fixing the first ``j`` choices the images of all points fixed by the
    remaining stabilizer are determined, and any color clash prunes the node.
    """
    levels = chain.levels
    fixed_after = _fixed_after(chain)
    m = len(levels)

    def rec(j, h, moved):
        if j == m:
            return h if moved else None
        lv = levels[j]
        b = lv.base_point
        cb = color[b]
        fixed = fixed_after[j]
        for y, u in lv.transversal.items():
            if color[h[y]] != cb:
                continue
            nh = compose(u, h)
            if any(color[nh[x]] != color[x] for x in fixed):
                continue
            found = rec(j + 1, nh, moved or y != b)
            if found is not None:
                return found
        return None

    return rec(0, Permutation.identity(chain.degree), False)


def stabilizer_is_trivial(chain, coloring):
    """``(True, None)`` if only the identity preserves every color class,
    else ``(False, witness)``."""
    color = coloring.color_of if isinstance(coloring, Coloring) else tuple(coloring)
    if len(color) != chain.degree:
        raise ValueError(f"coloring has length {len(color)}, degree is {chain.degree}")
    if chain.order == 1:
        return True, None
    # a fixing generator makes the plainest witness (fewest points moved)
    moved = [
        (sum(g[i] != i for i in range(len(color))), j)
        for j, g in enumerate(chain.generators)
        if not g.is_identity() and all(color[g[i]] == color[i] for i in range(len(color)))
    ]
    if moved:
        return False, chain.generators[min(moved)[1]]
    if chain.order <= SCAN_ORDER:
        table = fix_table(chain)
        r = table.first_fixing(np.asarray(color))
        if r < 0:
            return True, None
        return False, Permutation._raw(table.rows[r].tolist())
    w = backtrack_fixer(chain, color)
    return w is None, w


# -- randomised search ----------------------------------------------------------


def _first_success(chain, batch):
    """Index of the first distinguishing row of ``batch`` or -1."""
    if chain.order <= SCAN_ORDER:
        hits = fix_table(chain).first_fixing(batch)
        ok = np.flatnonzero(hits < 0)
        return int(ok[0]) if len(ok) else -1
    for i, row in enumerate(batch.tolist()):
        if backtrack_fixer(chain, row) is None:
            return i
    return -1


def random_search(chain, k, trials=DEFAULT_TRIALS, seed=0, workers=1):
    """Sample uniform ``k``-colorings; return the first distinguishing one.

    Samples are drawn up front from ``seed``, so the answer does not depend
    on ``workers``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = chain.degree
    if chain.order == 1:
        return Coloring((0,) * n)
    if k == 1:
        return None
    rng = np.random.default_rng([seed, k])
    batch = rng.integers(0, k, size=(trials, n))
    if workers <= 1:
        idx = _first_success(chain, batch)
    else:
        if chain.order <= SCAN_ORDER:
            fix_table(chain)
        bounds = np.linspace(0, trials, workers + 1).astype(int)
        chunks = [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            found = list(pool.map(lambda ab: _first_success(chain, batch[ab[0] : ab[1]]), chunks))
        hits = [a + f for (a, _), f in zip(chunks, found) if f >= 0]
        idx = min(hits) if hits else -1
    if idx < 0:
        return None
    c = Coloring.from_labels(batch[idx].tolist())
    return refine_to(c, min(k, n))


# -- exhaustive refutation ------------------------------------------------------


@dataclass(frozen=True)
class Refutation:
    k: int
    refuted: bool
    examined: int
    mode: str
    coloring: Coloring | None = None


def stirling2(n, k):
    return sum((-1) ** i * math.comb(k, i) * (k - i) ** n for i in range(k + 1)) // math.factorial(k)


def restricted_growth(n, k):
    """Canonical colorings of length ``n`` using exactly ``k`` colors, in
    lexicographic order."""
    if k > n or k < 1:
        return
    c = [0] * n

    def rec(i, top):
        if n - i < k - 1 - top:
            return
        if i == n:
            if top == k - 1:
                yield tuple(c)
            return
        for x in range(min(top + 2, k)):
            c[i] = x
            yield from rec(i + 1, max(top, x))

    yield from rec(1, 0)


def _mark_fixed(table, k, n):
    marks = np.zeros(k**n, dtype=bool)
    powers = np.array([k**i for i in range(n)], dtype=np.int64)
    digits = np.arange(k, dtype=np.int64)
    for r in range(len(table)):
        idx = np.zeros(1, dtype=np.int64)
        for cyc in table.cycles(r):
            w = int(powers[cyc].sum())
            idx = (idx[:, None] + digits * w).ravel()
        marks[idx] = True
    return marks


def _decode(index, k, n):
    out = []
    for _ in range(n):
        out.append(index % k)
        index //= k
    return out


def exhaustive_refute(chain, k, budget=DEFAULT_BUDGET, element_cap=ELEMENT_CAP):
    """Decide whether a distinguishing coloring with ``k`` colors exists.

    Groups of order at most ``element_cap`` use the marking route: every
    labelled coloring fixed by a prime-order element is marked in a table of
    size ``k**n`` (for ``k = 2`` this is the subset bitmask sweep). Larger
    groups walk the canonical colorings with exactly ``k`` colors and
    backtrack on each. ``examined`` counts the colorings covered by the
    route taken; :class:`BudgetExceeded` is raised before any work when that
    count exceeds ``budget``.
    """
    n = chain.degree
    if k < 1:
        raise ValueError("k must be positive")
    if chain.order == 1:
        return Refutation(k, False, 1, "trivial", refine_to(Coloring((0,) * n), min(k, n)))
    if k >= n:
        return Refutation(k, False, 1, "discrete", Coloring(tuple(range(n))))
    if k == 1:
        return Refutation(k, True, 1, "monochrome")
    if chain.order <= element_cap:
        needed = k**n
        if needed > budget:
            raise BudgetExceeded(needed, budget)
        marks = _mark_fixed(fix_table(chain, element_cap), k, n)
        free = np.flatnonzero(~marks)
        if len(free):
            c = Coloring.from_labels(_decode(int(free[0]), k, n))
            return Refutation(k, False, needed, "marking", refine_to(c, k))
        return Refutation(k, True, needed, "marking")
    needed = stirling2(n, k)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    examined = 0
    for c in restricted_growth(n, k):
        examined += 1
        if backtrack_fixer(chain, c) is None:
            return Refutation(k, False, examined, "backtrack", Coloring(c))
    return Refutation(k, True, examined, "backtrack")


# -- the distinguishing number ----------------------------------------------------


@dataclass(frozen=True)
class Limits:
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    element_cap: int = ELEMENT_CAP
    workers: int = 1


@dataclass(frozen=True)
class DNumberResult:
    status: str  # "exact" or "bounds"
    lo: int
    hi: int
    certificate: Coloring | None
    refutations: tuple = ()
    note: str = ""

    @property
    def exact(self):
        return self.status == "exact"

    @property
    def value(self):
        return self.lo if self.exact else None

    def as_dict(self):
        return {
            "status": self.status,
            "D": self.lo if self.exact else None,
            "lo": self.lo,
            "hi": self.hi,
            "certificate": str(self.certificate) if self.certificate is not None else None,
            "refutations": [{"k": r.k, "mode": r.mode, "examined": r.examined} for r in self.refutations],
            "note": self.note,
        }


def _upper_certificate(group, start, limits):
    chain = group.chain
    n = group.degree
    base = base_size(chain, exact_cap=0)
    best = base_certificate(n, base.base)
    for kk in range(start, best.k):
        c = random_search(chain, kk, limits.trials, limits.seed, limits.workers)
        if c is not None:
            return c
    return best


def distinguishing_number(group, limits=Limits()):
    """Smallest ``k`` admitting a distinguishing ``k``-coloring.

    Ascends through ``k``: a random search looks for a certificate, the
    exhaustive route refutes. When a refutation is over budget the result
    carries bounds, never a guessed value.
    """
    chain = group.chain
    n = group.degree
    if chain.order == 1:
        return DNumberResult("exact", 1, 1, Coloring((0,) * n))
    refs = []
    k = 2
    while True:
        cert = random_search(chain, k, limits.trials, limits.seed, limits.workers)
        if cert is not None:
            return DNumberResult("exact", k, k, cert, tuple(refs))
        try:
            r = exhaustive_refute(chain, k, limits.budget, limits.element_cap)
        except BudgetExceeded as exc:
            cert = _upper_certificate(group, k + 1, limits)
            if cert.k <= k:
                return DNumberResult("exact", k, k, refine_to(cert, k), tuple(refs))
            note = f"refuting k={k} needs {exc.needed} colorings, budget {exc.budget}"
            return DNumberResult("bounds", k, cert.k, cert, tuple(refs), note)
        if not r.refuted:
            return DNumberResult("exact", k, k, r.coloring, tuple(refs))
        refs.append(r)
        k += 1


# -- reductions through a block system ------------------------------------------


def extend_partition(group, blocks, quotient_coloring):
    """Lift a distinguishing coloring of the cells to the points.

    Every point takes its cell's color; then one point ``alpha`` (smallest
    point of the first color-0 cell) moves to color 1. With a semiregular
    kernel the result is distinguishing. Singleton cells need no move.
    """
    pi = quotient_coloring if isinstance(quotient_coloring, Coloring) else Coloring(tuple(quotient_coloring))
    if len(pi) != len(blocks):
        raise PreconditionFailed(f"quotient coloring has length {len(pi)}, expected {len(blocks)}")
    if pi.k < 2:
        raise PreconditionFailed("quotient coloring must use at least two colors")
    if not is_semiregular(kernel_of_block_action(group, blocks)):
        raise PreconditionFailed("kernel of the block action is not semiregular")
    image = quotient_action(group, blocks).image
    ok, _ = stabilizer_is_trivial(image.chain, pi)
    if not ok:
        raise PreconditionFailed("quotient coloring is not distinguishing")
    cell_of = blocks.cell_of
    color = [pi.color_of[cell_of[x]] for x in range(group.degree)]
    if len(blocks) < group.degree:
        tau = next(c for i, c in enumerate(blocks.cells) if pi.color_of[i] == 0)
        color[tau[0]] = 1
    return Coloring(tuple(color))


def graded_subset(group, blocks):
    """2-coloring whose color-1 class meets cell ``i`` (numbered from 1) in
    ``i - 1`` points; distinguishing when the kernel is semiregular and every
    cell has at least ``len(blocks) - 1`` points."""
    m = len(blocks)
    if m < 2:
        raise PreconditionFailed("need at least two cells")
    small = [c for c in blocks.cells if len(c) < m - 1]
    if small:
        raise PreconditionFailed(f"cell {small[0]} has fewer than {m - 1} points")
    if not is_semiregular(kernel_of_block_action(group, blocks)):
        raise PreconditionFailed("kernel of the block action is not semiregular")
    color = [0] * group.degree
    for i, cell in enumerate(blocks.cells):
        for x in cell[:i]:
            color[x] = 1
    return Coloring(tuple(color))


# -- base size and bounds --------------------------------------------------------


@dataclass(frozen=True)
class BaseSize:
    size: int
    exact: bool
    base: tuple


def base_certificate(n, base):
    """Coloring giving each base point its own color and the rest color 0."""
    color = [0] * n
    for i, b in enumerate(base):
        color[b] = i + 1
    return Coloring.from_labels(color)


def _greedy_base(chain):
    group = PermutationGroup(chain.generators, chain.degree)
    base = []
    gens = list(group.generators)
    while gens:
        best = None
        for x in range(chain.degree):
            o = len(orbit(gens, x, chain.degree))
            if best is None or o > best[0]:
                best = (o, x)
        base.append(best[1])
        c = build_chain(group, tuple(base))
        gens = list(c.levels[len(base)].generators) if len(c.levels) > len(base) else []
    return tuple(base)


def base_size(chain, exact_cap=10**6, element_cap=ELEMENT_CAP):
    """Minimum base size; exact when the subset search finishes within
    ``exact_cap`` candidate sets, otherwise a greedy upper bound."""
    if chain.order == 1:
        return BaseSize(0, True, ())
    greedy = _greedy_base(chain)
    if exact_cap <= 0 or chain.order > element_cap:
        return BaseSize(len(greedy), False, greedy)
    n = chain.degree
    masks = fix_table(chain, element_cap).fixed_masks()
    reps = {min(o) for o in _orbit_list(chain) if len(o) > 1}
    nodes = 0
    for s in range(1, len(greedy)):
        for combo in combinations(range(n), s):
            if reps.isdisjoint(combo):
                continue
            nodes += 1
            if nodes > exact_cap:
                return BaseSize(len(greedy), False, greedy)
            bits = sum(1 << x for x in combo)
            if all(bits & ~f for f in masks):
                return BaseSize(s, True, combo)
    return BaseSize(len(greedy), True, greedy)


def _orbit_list(chain):
    from .chain import orbits

    return orbits(chain.generators, chain.degree)


@dataclass(frozen=True)
class BoundReport:
    D: int
    order: int
    degree: int
    lower: float | None
    upper: float | None
    lower_ok: bool | None
    upper_ok: bool | None
    base_size: int
    base_exact: bool
    base_ok: bool

    @property
    def ok(self):
        return all(x is not False for x in (self.lower_ok, self.upper_ok, self.base_ok))


def bound_checks(group, result, base=None):
    """Check ``|G|**(1/n) <= D <= 48 |G|**(1/n)`` (transitive groups) and
    ``D <= b(G) + 1``, comparing integer powers rather than roots."""
    if not result.exact:
        raise ValueError("bound checks need an exact distinguishing number")
    D = result.lo
    order = group.order
    n = group.degree
    if base is None:
        base = base_size(group.chain)
    if n > 1 and is_transitive(group):
        lower = order ** (1 / n)
        upper = 48 * lower
        lower_ok = D**n >= order
        upper_ok = D**n <= 48**n * order
    else:
        lower = upper = lower_ok = upper_ok = None
    return BoundReport(D, order, n, lower, upper, lower_ok, upper_ok, base.size, base.exact, D <= base.size + 1)
