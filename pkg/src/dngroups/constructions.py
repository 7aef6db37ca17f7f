"""Constructors for the permutation groups the catalog and tests need."""

from __future__ import annotations

from .chain import PermutationGroup
from .errors import DegreeTooLarge, UnsupportedField
from .fields import field
from .perm import Permutation, compose


def _perm(cycles, n):
    return Permutation.from_cycles([tuple(c) for c in cycles], n)


def symmetric_group(n):
    if n <= 1:
        return PermutationGroup([], max(n, 1))
    return PermutationGroup([_perm([(0, 1)], n), _perm([range(n)], n)], n)


def alternating_group(n):
    if n <= 2:
        return PermutationGroup([], max(n, 1))
    if n == 3:
        return PermutationGroup([_perm([(0, 1, 2)], 3)], 3)
    long = range(n) if n % 2 else range(1, n)
    return PermutationGroup([_perm([(0, 1, 2)], n), _perm([long], n)], n)


def cyclic_group(n):
    """Regular cyclic group of degree ``n``."""
    if n == 1:
        return PermutationGroup([], 1)
    return PermutationGroup([_perm([range(n)], n)], n)


def dihedral_group(n):
    """Dihedral group of order ``2n`` acting on the ``n`` vertices of a polygon."""
    if n <= 2:
        return symmetric_group(n)
    refl = Permutation([(-i) % n for i in range(n)])
    return PermutationGroup([_perm([range(n)], n), refl], n)


# -- linear algebra over small fields ---------------------------------------


def vector_list(d, q, include_zero=False):
    """Vectors of F_q^d, least significant coordinate first.

    Index ``v`` in the full list encodes ``sum(c_i * q**i)``.
    """
    out = []
    for v in range(0 if include_zero else 1, q**d):
        coords = []
        for _ in range(d):
            coords.append(v % q)
            v //= q
        out.append(tuple(coords))
    return out


def _encode(v, q):
    return sum(c * q**i for i, c in enumerate(v))


def _apply(F, M, v, frob=0):
    if frob:
        v = tuple(F.frobenius(c, frob) for c in v)
    out = []
    for row in M:
        s = 0
        for a, c in zip(row, v):
            if a and c:
                s = F.add(s, F.mul(a, c))
        out.append(s)
    return tuple(out)


def identity_matrix(d):
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def _elementary(d, i, j, a):
    return tuple(tuple((1 if r == c else 0) if (r, c) != (i, j) else a for c in range(d)) for r in range(d))


def _sl_generators(F, d):
    if d == 1:
        return []
    gens = [_elementary(d, 0, 1, 1)]
    # monomials x, x^2, ... span F_q over F_p
    for k in range(1, F.e):
        gens.append(_elementary(d, 0, 1, F.p**k))
    # e_j -> e_{j+1}, e_{d-1} -> (-1)^(d-1) e_0 (determinant one)
    sign = F.neg(1) if d % 2 == 0 else 1
    rows = [[0] * d for _ in range(d)]
    for j in range(d - 1):
        rows[j + 1][j] = 1
    rows[0][d - 1] = sign
    gens.append(tuple(tuple(r) for r in rows))
    return gens


def _diag(d, a):
    return tuple(tuple((a if i == 0 else 1) if i == j else 0 for j in range(d)) for i in range(d))


def _gl_generators(F, d):
    return [_diag(d, F.primitive)] + _sl_generators(F, d)


def _check_size(d, q):
    if q**d - 1 > 10**4:
        raise DegreeTooLarge(f"q^d - 1 = {q**d - 1} exceeds 10^4")


def linear_group_on_vectors(d, q, matrices, semilinear=()):
    """Group generated by ``matrices`` (and ``(matrix, frobenius_power)`` pairs)
    acting on the nonzero vectors of F_q^d."""
    F = field(q)
    _check_size(d, q)
    vecs = vector_list(d, q)
    maps = [(M, 0) for M in matrices] + list(semilinear)
    gens = [Permutation([_encode(_apply(F, M, v, k), q) - 1 for v in vecs]) for M, k in maps]
    return PermutationGroup(gens, len(vecs))


def general_linear_on_vectors(d, q):
    if q not in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16):
        raise UnsupportedField(f"GF({q}) is not supported")
    return linear_group_on_vectors(d, q, _gl_generators(field(q), d))


def special_linear_on_vectors(d, q):
    return linear_group_on_vectors(d, q, _sl_generators(field(q), d))


def affine_group(d, q, matrices, semilinear=()):
    """Translations of F_q^d together with the given linear maps; point
    ``v`` is the integer encoding of the vector (zero vector is point 0)."""
    F = field(q)
    vecs = vector_list(d, q, include_zero=True)
    gens = []
    for i in range(d):
        for k in range(F.e):
            c = F.p**k
            gens.append(Permutation([
                _encode(tuple(F.add(x, c) if j == i else x for j, x in enumerate(v)), q) for v in vecs
            ]))
    maps = [(M, 0) for M in matrices] + list(semilinear)
    for M, k in maps:
        gens.append(Permutation([_encode(_apply(F, M, v, k), q) for v in vecs]))
    return PermutationGroup(gens, len(vecs))


def projective_points(d, q):
    """Nonzero vectors whose first nonzero coordinate is 1, in vector order."""
    out = []
    for v in vector_list(d, q):
        lead = next(c for c in v if c)
        if lead == 1:
            out.append(v)
    return out


def _normalize(F, v):
    lead = next(c for c in v if c)
    inv = F.inv(lead)
    return tuple(F.mul(inv, c) for c in v)


def projective_group(d, q, linear="SL", frobenius=0, extra=()):
    """Action on the points of PG(d-1, q).

    ``linear`` is ``"SL"`` or ``"GL"``; ``frobenius=k`` adds the field
    automorphism ``x -> x**(p**k)``; ``extra`` is a list of
    ``(matrix, frobenius_power)`` semilinear maps.
    """
    F = field(q)
    pts = projective_points(d, q)
    index = {v: i for i, v in enumerate(pts)}
    mats = _sl_generators(F, d) if linear == "SL" else _gl_generators(F, d)
    maps = [(M, 0) for M in mats]
    if frobenius:
        maps.append((identity_matrix(d), frobenius))
    maps.extend(extra)
    gens = [Permutation([index[_normalize(F, _apply(F, M, v, k))] for v in pts]) for M, k in maps]
    return PermutationGroup(gens, len(pts))


_PSL2_Q = (5, 7, 8, 9, 11, 13, 16)


def psl2_on_projective_line(q, extension="PSL"):
    """PSL(2,q) on the q+1 points of the projective line, or an extension.

    ``extension`` is one of ``PSL``, ``PGL``, ``PSigmaL``, ``PGammaL``,
    ``PSL.2`` (field automorphism of order two, q = 16) or ``M10`` (q = 9).
    """
    if q not in _PSL2_Q:
        raise UnsupportedField(f"PSL(2,{q}) is not supported")
    F = field(q)
    if extension == "PSL":
        return projective_group(2, q, "SL")
    if extension == "PGL":
        return projective_group(2, q, "GL")
    if extension == "PSigmaL":
        return projective_group(2, q, "SL", frobenius=1)
    if extension == "PGammaL":
        return projective_group(2, q, "GL", frobenius=1)
    if extension == "PSL.2":
        if F.e % 2:
            raise UnsupportedField(f"GF({q}) has no field automorphism of order 2")
        return projective_group(2, q, "SL", frobenius=F.e // 2)
    if extension == "M10":
        if q != 9:
            raise UnsupportedField("M10 needs q = 9")
        nu = F.primitive  # a non-square
        return projective_group(2, q, "SL", extra=[(_diag(2, nu), 1)])
    raise ValueError(f"unknown extension {extension!r}")


# -- wreath products and derived actions --------------------------------------


def _as_group(g):
    return symmetric_group(g) if isinstance(g, int) else g


def wreath_imprimitive(bottom, top):
    """``bottom wr top`` on ``m*k`` points; point ``i*m + j`` is position ``j``
    of block ``i``. Integers stand for symmetric groups."""
    H, K = _as_group(bottom), _as_group(top)
    m, k = H.degree, K.degree
    if m * k > 100:
        raise DegreeTooLarge(f"degree {m * k} exceeds 100")
    n = m * k
    gens = []
    for h in H.generators:
        gens.append(Permutation([h[x] if x < m else x for x in range(n)]))
    for t in K.generators:
        gens.append(Permutation([t[x // m] * m + x % m for x in range(n)]))
    return PermutationGroup(gens, n)


def row_blocks(m, k):
    """The ``k`` blocks of the imprimitive wreath action, as point lists."""
    return [list(range(i * m, (i + 1) * m)) for i in range(k)]


def product_action(bottom, top):
    """``bottom wr top`` in product action on ``m**k`` points; point
    ``sum(x_i * m**i)`` is the tuple ``(x_0, ..., x_{k-1})``."""
    H, K = _as_group(bottom), _as_group(top)
    m, k = H.degree, K.degree
    n = m**k
    if n > 100:
        raise DegreeTooLarge(f"degree {n} exceeds 100")

    def coords(x):
        out = []
        for _ in range(k):
            out.append(x % m)
            x //= m
        return out

    def code(c):
        return sum(a * m**i for i, a in enumerate(c))

    pts = [coords(x) for x in range(n)]
    gens = []
    for h in H.generators:
        gens.append(Permutation([code([h[c[0]]] + c[1:]) for c in pts]))
    for t in K.generators:
        imgs = []
        for c in pts:
            new = [0] * k
            for i, a in enumerate(c):
                new[t[i]] = a
            imgs.append(code(new))
        gens.append(Permutation(imgs))
    return PermutationGroup(gens, n)


def induced_action(group, start, act):
    """Action of ``group`` on the orbit of ``start`` under ``act(obj, g)``.

    Returns ``(image_group, objects)`` where point ``i`` of the image is
    ``objects[i]``.
    """
    objs = [start]
    index = {start: 0}
    i = 0
    while i < len(objs):
        for g in group.generators:
            y = act(objs[i], g)
            if y not in index:
                index[y] = len(objs)
                objs.append(y)
        i += 1
    gens = [Permutation([index[act(o, g)] for o in objs]) for g in group.generators]
    return PermutationGroup(gens, len(objs)), objs


def action_on_subsets(group, k):
    start = frozenset(range(k))
    return induced_action(group, start, lambda s, g: frozenset(g[x] for x in s))


def action_on_set_partitions(group, partition):
    start = frozenset(frozenset(p) for p in partition)
    return induced_action(group, start, lambda P, g: frozenset(frozenset(g[x] for x in p) for p in P))


def coset_action(group, subgroup):
    """Action of ``group`` on the right cosets of ``subgroup`` by right
    multiplication. Point 0 is the trivial coset."""
    H = list(subgroup.chain.elements())

    def canon(x):
        return min(compose(h, x) for h in H)

    start = canon(Permutation.identity(group.degree))
    return induced_action(group, start, lambda c, g: canon(compose(c, g)))[0]


def regular_action(group):
    return coset_action(group, PermutationGroup([], group.degree))
