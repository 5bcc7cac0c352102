"""Ideal handles and ideal arithmetic in polynomial rings and their quotients.

Quotient rings are handled by representatives: every Groebner basis is
taken of the generators together with the ring's defining ideal.  The
``local_*`` functions work at the origin, i.e. after localizing at the
ideal generated by all variables.
"""
from __future__ import annotations

import threading
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Iterable, List, Sequence

from .groebner import (
    DEFAULT_PAIR_BUDGET,
    GroebnerBasis,
    ResourceLimitError,
    SyzygyMatrix,
    _Elt,
    _reduce,
    _Rk,
    buchberger,
    dimension_from_leading,
    standard_monomials,
    syzygy_terms,
)
from .kernel import AlgebraError, MonomialOrder, Polynomial, Ring

SATURATION_CAP = 64


class Ideal:
    """Ideal of a :class:`Ring` given by generators.

    Equality is ideal equality, decided with Groebner bases.  Bases are
    cached per monomial order and filled once under a per-handle lock.
    """

    def __init__(self, ring: Ring, gens: Iterable = ()):
        out = []
        for g in gens:
            if isinstance(g, str):
                g = ring(g)
            elif not isinstance(g, Polynomial):
                g = ring.const(g)
            elif g.ring != ring:
                raise AlgebraError("generator belongs to a different ring")
            if g:
                out.append(g)
        self.ring = ring
        self.gens = tuple(out)
        self._gb: Dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()
        self._local = None

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def groebner(self, order: MonomialOrder | None = None,
                 budget: int = DEFAULT_PAIR_BUDGET) -> GroebnerBasis:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            with self._lock:
                gb = self._gb.get(order)
                if gb is None:
                    gb = buchberger(list(self.gens) + list(self.ring.quotient), order,
                                    ring=self.ring, budget=budget)
                    self._gb[order] = gb
        return gb

    def contains(self, f) -> bool:
        if isinstance(f, str):
            f = self.ring(f)
        return self.groebner().contains(f)

    def __contains__(self, f):
        return self.contains(f)

    def issubset(self, other: "Ideal") -> bool:
        _same_ring(self, other)
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.issubset(other) and other.issubset(self)

    __hash__ = None

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        """True iff the ideal is zero in the (quotient) ring."""
        if not self.ring.is_quotient:
            return not self.gens
        q = Ideal(self.ring.ambient, [g.to_ring(self.ring.ambient) for g in self.ring.quotient])
        return all(q.contains(g.to_ring(self.ring.ambient)) for g in self.gens)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        """Generated by forms (also requires the defining ideal to be homogeneous)."""
        polys = list(self.gens) + list(self.ring.quotient)
        return all(g.is_homogeneous(weights) for g in polys)

    def is_monomial(self) -> bool:
        return not self.ring.is_quotient and all(g.is_monomial() for g in self.gens)

    def reduced_generators(self) -> List[Polynomial]:
        """Canonical generators: the reduced basis for the ring order, minus
        elements of the defining ideal."""
        gb = self.groebner()
        if not self.ring.is_quotient:
            return list(gb.generators)
        q = quotient_ideal(self.ring)
        return [g for g in gb.generators if not q.contains(g)]

    def canonical_strings(self) -> List[str]:
        """Reduced generators as strings, ascending by leading monomial."""
        key = self.ring.order.key
        gens = sorted(self.reduced_generators(), key=lambda g: key(g.lm()))
        return [str(g) for g in gens]

    def to_ring(self, ring: Ring) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring) for g in self.gens])


def _same_ring(*ideals: Ideal) -> Ring:
    ring = ideals[0].ring
    for I in ideals[1:]:
        if I.ring != ring:
            raise AlgebraError("ideals belong to different rings")
    return ring


def quotient_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, ring.quotient)


def origin_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, ring.gens())


def unit_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, [ring.one()])


# ---------------------------------------------------------------- arithmetic


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    return Ideal(ring, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    return Ideal(ring, _dedupe(f * g for f in I.gens for g in J.gens))


def ideal_power(I: Ideal, r: int) -> Ideal:
    if r < 0:
        raise AlgebraError("negative power")
    out = unit_ideal(I.ring)
    for _ in range(r):
        out = ideal_product(out, I)
    return out


def _dedupe(polys: Iterable[Polynomial]) -> List[Polynomial]:
    seen, out = set(), []
    for p in polys:
        if p and p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _monomial_gens(I: Ideal):
    return [g.lm() for g in I.gens]


def _minimal_monomials(ms):
    ms = sorted(set(ms), key=sum)
    out = []
    for m in ms:
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return out


def _from_monomials(ring: Ring, ms) -> Ideal:
    one = ring.field.convert(1)
    return Ideal(ring, [Polynomial(ring, {m: one}) for m in _minimal_monomials(ms)])


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J, by eliminating a tag variable s from s*I + (1 - s)*J."""
    ring = _same_ring(I, J)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    if not I.gens or not J.gens:
        return quotient_ideal(ring) if ring.is_quotient else Ideal(ring)
    if I.is_monomial() and J.is_monomial() and not ring.is_quotient:
        ms = [tuple(max(a, b) for a, b in zip(x, y))
              for x in _monomial_gens(I) for y in _monomial_gens(J)]
        return _from_monomials(ring, ms)
    (s,) = ring.fresh_names(["s"])
    T = ring.extend([s], [0])
    sv = T.var(s)
    gens = [sv * f.to_ring(T) for f in I.gens] + [(1 - sv) * g.to_ring(T) for g in J.gens]
    return _eliminate_polys(T, gens, [s], ring)


def _monomials_of_degree(nvars: int, k: int):
    if nvars == 1:
        yield (k,)
        return
    for e in range(k, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, k - e):
            yield (e,) + rest


def origin_power_exponent(A: Ideal) -> int:
    """Least K with m^K ⊆ A, for A primary to the origin (polynomial ring)."""
    if A.is_unit():
        return 0
    gb = A.groebner()
    bound = len(standard_monomials(gb.leading_monomials, A.ring.nvars))
    one = A.ring.field.convert(1)
    for k in range(1, bound + 1):
        if all(gb.contains(Polynomial(A.ring, {m: one})) for m in _monomials_of_degree(A.ring.nvars, k)):
            return k
    raise AlgebraError("ideal is not primary to the origin")


def _truncated_span(A: Ideal, K: int):
    """Spanning vectors of A/m^K: monomial multiples of generators, truncated."""
    ring = A.ring
    n = ring.nvars
    rows = []
    for g in A.gens:
        low = min(sum(m) for m in g.terms)
        for d in range(0, K - low):
            for a in _monomials_of_degree(n, d):
                row = {}
                for m, c in g.terms.items():
                    e = tuple(x + y for x, y in zip(m, a))
                    if sum(e) < K:
                        row[e] = c
                if row:
                    rows.append(row)
    return rows


def _echelon(rows, key, mod: int):
    """Row echelon form of sparse rows (dicts); returns {pivot: row}, pivot = max key."""
    from heapq import heapify, heappop, heappush
    pivots = {}
    for row in rows:
        r = dict(row)
        heap = [(tuple(-x for x in key(m)), m) for m in r]
        heapify(heap)
        while heap:
            _, m = heappop(heap)
            c = r.get(m)
            if c is None:
                continue
            prow = pivots.get(m)
            if prow is None:
                inv = pow(int(c), -1, mod) if mod else 1 / c
                pivots[m] = {t: (v * inv % mod if mod else v * inv) for t, v in r.items()}
                break
            for t, v in prow.items():
                x = r.get(t)
                if x is None:
                    x = -c * v
                    heappush(heap, (tuple(-y for y in key(t)), t))
                else:
                    x = x - c * v
                if mod:
                    x %= mod
                if x:
                    r[t] = x
                else:
                    r.pop(t, None)
    return pivots


def intersect_origin_primary(A: Ideal, B: Ideal) -> Ideal:
    """A ∩ B for ideals primary to the origin, by linear algebra in R/m^K.

    Both contain m^K for K the larger of their origin exponents, so the
    intersection is m^K plus the Zassenhaus intersection of A/m^K and B/m^K.
    """
    ring = _same_ring(A, B)
    if ring.is_quotient:
        raise AlgebraError("origin-primary intersection needs a polynomial ring")
    if A.is_unit():
        return B
    if B.is_unit():
        return A
    K = max(origin_power_exponent(A), origin_power_exponent(B))
    okey = ring.order.key
    mod = ring.field.p

    def key(m):
        side, e = m
        return (side,) + okey(e)

    rows = []
    for r in _truncated_span(A, K):
        row = {(1, e): c for e, c in r.items()}
        row.update({(0, e): c for e, c in r.items()})
        rows.append(row)
    for r in _truncated_span(B, K):
        rows.append({(1, e): c for e, c in r.items()})
    piv = _echelon(rows, key, mod)
    gens = [Polynomial(ring, {e: c for (side, e), c in row.items()})
            for (side, _), row in piv.items() if side == 0]
    one = ring.field.convert(1)
    gens += [Polynomial(ring, {m: one}) for m in _monomials_of_degree(ring.nvars, K)]
    return Ideal(ring, Ideal(ring, gens).reduced_generators())


def _eliminate_polys(T: Ring, gens: Sequence[Polynomial], names: Sequence[str],
                     target: Ring) -> Ideal:
    idx = [T.index(v) for v in names]
    order = MonomialOrder.elimination(T.nvars, idx, T.weights)
    G = buchberger(list(gens) + list(T.quotient), order, ring=T)
    keep = [g for g in G.generators if all(m[i] == 0 for m in g.terms for i in idx)]
    return Ideal(target, [g.to_ring(target) for g in keep])


def eliminate(I: Ideal, names: Iterable[str], target: Ring | None = None) -> Ideal:
    """I ∩ k[remaining variables], via a block elimination order."""
    names = list(names)
    for v in names:
        I.ring.index(v)
    target = target or I.ring.drop(names)
    return _eliminate_polys(I.ring, I.gens, names, target)


def exact_divide(h: Polynomial, g: Polynomial) -> Polynomial:
    """h / g, raising AlgebraError if g does not divide h."""
    ring = h.ring
    if g.is_monomial():
        (m, c), = g.terms.items()
        return h.div_monomial(m).scale(ring.field.inv(c))
    mod = ring.field.p
    lm = g.lm()
    gm = g.monic()
    elt = _Elt(lm, gm.terms, 0)
    quot = {}
    r = _reduce(h.terms, [elt], _Rk(ring.order), mod, quotients=quot)
    if r:
        raise AlgebraError("internal error: colon division left a remainder")
    q = Polynomial(ring, quot.get(0, {}))
    return q.scale(ring.field.inv(g.lc()))


def _graded_pair(I: Ideal, g: Polynomial) -> bool:
    return (all(w > 0 for w in I.ring.weights) and g.is_homogeneous()
            and I.is_homogeneous()
            and all(q.is_homogeneous() for q in I.ring.quotient))


def colon_power_chain(I: Ideal, g: Polynomial, upto: int,
                      leading: Sequence[str] = ()) -> List[Ideal]:
    """[I : g^0, I : g^1, ..., I : g^upto].

    For graded I and g this takes one Groebner basis: with z = g adjoined as
    the last variable of a weighted reverse lex order, a basis of J : z^k is
    obtained by dividing each basis element of J = I + (z - g) by z^k as far
    as it goes (Bayer-Stillman); substituting z -> g gives I : g^k.
    Variables named in ``leading`` are placed first in that order, which
    can shrink the basis considerably.
    """
    ring = I.ring
    if upto < 0:
        return []
    if not g or not _graded_pair(I, g) or g.degree(ring.weights) <= 0:
        out = [I]
        for _ in range(upto):
            out.append(colon_element(out[-1], g))
        return out
    (z,) = ring.fresh_names(["z"])
    lead = [v for v in leading if v in ring.names]
    rest = [v for v in ring.names if v not in lead]
    perm = lead + rest
    wmap = dict(zip(ring.names, ring.weights))
    T = Ring(perm + [z], [wmap[v] for v in perm] + [g.degree(ring.weights)], ring.field,
             allow_zero_weights=True)
    T = T.with_quotient([q.to_ring(T) for q in ring.quotient]) if ring.quotient else T
    order = MonomialOrder("wrevlex", T.nvars, T.weights)
    zT = T.var(z)
    J = Ideal(T, [h.to_ring(T) for h in I.gens] + [zT - g.to_ring(T)])
    back = ring.extend([z], [g.degree(ring.weights)], front=False)
    basis = [b.to_ring(back) for b in J.groebner(order).generators]
    n = ring.nvars
    powers = [ring.one()]

    def gpow(a):
        while len(powers) <= a:
            powers.append(powers[-1] * g)
        return powers[a]

    def image(p, k):
        d = min(k, min(e[n] for e in p.terms))
        out = ring.zero()
        for e, c in p.terms.items():
            out = out + gpow(e[n] - d).mul_monomial(e[:n], c)
        return out

    # elements not divisible by z map into I itself; the chain is stable past the top z-valuation
    lifted = [b for b in basis if min(e[n] for e in b.terms) > 0]
    top = max((min(e[n] for e in b.terms) for b in lifted), default=0)
    chain: List[Ideal] = [I]
    for k in range(1, upto + 1):
        if k > top:
            chain.append(chain[-1])
            continue
        chain.append(Ideal(ring, _dedupe(list(I.gens) + [image(b, k) for b in lifted])))
    return chain


def colon_element(I: Ideal, g: Polynomial) -> Ideal:
    """I : g computed as (I ∩ (g)) / g."""
    ring = I.ring
    if not g:
        return unit_ideal(ring)
    if I.contains(g):
        return unit_ideal(ring)
    if I.is_monomial() and g.is_monomial() and not ring.is_quotient:
        (gm, _), = g.terms.items()
        ms = [tuple(max(a - b, 0) for a, b in zip(m, gm)) for m in _monomial_gens(I)]
        return _from_monomials(ring, ms)
    if ring.is_quotient:
        # divide in the ambient ring, where multiples of g are genuine multiples
        amb = ring.ambient
        lifted = Ideal(amb, [h.to_ring(amb) for h in list(I.gens) + list(ring.quotient)])
        return colon_element(lifted, g.to_ring(amb)).to_ring(ring)
    K = ideal_intersection(I, Ideal(ring, [g]))
    return Ideal(ring, _dedupe(exact_divide(h, g) for h in K.gens))


def ideal_colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J as the intersection of I : g over the generators g of J."""
    ring = _same_ring(I, J)
    gens = [g for g in J.gens if not (ring.is_quotient and quotient_ideal(ring).contains(g))]
    if not gens:
        if not J.gens and not ring.is_quotient:
            raise AlgebraError("colon by the zero ideal")
        return unit_ideal(ring)
    out = None
    for g in sorted(gens, key=lambda g: (g.degree(), len(g.terms))):
        K = colon_element(I, g)
        out = K if out is None else ideal_intersection(out, K)
        if out == I:
            break
    return out


def ideal_saturation(I: Ideal, J: Ideal, cap: int = SATURATION_CAP) -> Ideal:
    """I : J^∞ by iterated colons until the chain stabilizes."""
    K = I
    for _ in range(cap):
        K2 = ideal_colon(K, J)
        if K2.issubset(K):
            return K
        K = K2
    raise ResourceLimitError(f"saturation did not stabilize within {cap} steps")


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I == J


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


# ---------------------------------------------------------------- radical / dimension


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """f ∈ √I, via 1 ∈ I + (1 - y f) with a fresh variable y."""
    ring = I.ring
    if not f:
        return True
    (y,) = ring.fresh_names(["y"])
    T = ring.extend([y], [1], front=False)
    yv = T.var(y)
    gens = [g.to_ring(T) for g in I.gens] + [1 - yv * f.to_ring(T)] + list(T.quotient)
    return buchberger(gens, ring=T).is_unit()


def krull_dimension(I: Ideal) -> int:
    """Dimension of ambient/(I + defining ideal); -1 for the unit ideal."""
    return dimension_from_leading(I.groebner().leading_monomials, I.ring.nvars)


def ring_dimension(ring: Ring) -> int:
    return krull_dimension(quotient_ideal(ring))


def height(I: Ideal) -> int:
    """dim(ring) - dim(ring/I); equals the height in the equidimensional catenary case."""
    d = krull_dimension(I)
    if d < 0:
        raise AlgebraError("height of the unit ideal")
    return ring_dimension(I.ring) - d


def vector_space_dimension(I: Ideal) -> int:
    """dim_k of ambient/(I + defining ideal), by counting standard monomials."""
    if krull_dimension(I) > 0:
        raise AlgebraError("ideal is not zero-dimensional")
    return len(standard_monomials(I.groebner().leading_monomials, I.ring.nvars))


def is_origin_primary(I: Ideal) -> bool:
    """√(I + defining ideal) equals the ideal of all variables."""
    if any(g.constant_term() for g in I.gens):
        return False
    return all(radical_membership(x, I) for x in I.ring.gens())


# ---------------------------------------------------------------- local at the origin


def _in_origin(I: Ideal) -> bool:
    return all(not g.constant_term() for g in I.gens)


def local_membership(f: Polynomial, N: Ideal, method: str = "colon") -> bool:
    """f ∈ N R_m, decided as (N : f) + m = (1).

    ``method="auto"`` answers from a global membership test when ``N`` is
    graded (such ideals are contracted from the origin) and from the cached
    local contraction when ``N`` is zero-dimensional.
    """
    if N.contains(f):
        return True
    if method == "auto":
        ring = N.ring
        if all(w > 0 for w in ring.weights) and N.is_homogeneous():
            return False
        if krull_dimension(N) == 0:
            if N._local is None:
                N._local = local_contraction_zero_dim(N, method="power")
            return N._local.contains(f)
    elif method != "colon":
        raise AlgebraError(f"unknown local membership method {method!r}")
    K = colon_element(N, f)
    return not _in_origin(K)


def local_contraction_zero_dim(N: Ideal, method: str = "colon") -> Ideal:
    """The origin-primary component N R_m ∩ R of a zero-dimensional ideal.

    ``colon`` computes N : (N : m^∞)^∞; ``power`` computes N + m^k for the
    first k at which this chain stabilizes (Nakayama makes that the answer).
    """
    if krull_dimension(N) != 0:
        raise AlgebraError("local contraction needs a zero-dimensional ideal")
    ring = N.ring
    m = origin_ideal(ring)
    if method == "colon":
        away = ideal_saturation(N, m)
        return ideal_saturation(N, away)
    if method != "power":
        raise AlgebraError(f"unknown contraction method {method!r}")
    if not _in_origin(N) and N.is_unit():
        return N
    one = ring.field.convert(1)

    def plus_power(k):
        mons = [Polynomial(ring, {e: one}) for e in _monomials_of_degree(ring.nvars, k)]
        # terms of degree >= k already lie in m^k
        cut = [Polynomial(ring, {e: c for e, c in g.terms.items() if sum(e) < k}) for g in N.gens]
        return Ideal(ring, mons + [g for g in cut if g])

    # N + m^k decreases in k; the first repeat is the answer
    k, cur = 1, plus_power(1)
    if cur.is_unit():
        return cur
    size = vector_space_dimension(cur)
    while True:
        k += 1
        if k > 4096:
            raise ResourceLimitError("local contraction did not stabilize")
        nxt = plus_power(k)
        nsize = vector_space_dimension(nxt)
        if nsize == size:
            return Ideal(ring, cur.reduced_generators())
        cur, size = nxt, nsize


# ---------------------------------------------------------------- syzygies / Fitting


def syzygies(I: Ideal, budget: int = DEFAULT_PAIR_BUDGET) -> SyzygyMatrix:
    """First syzygies of I's generators over the (quotient) ring."""
    ring = I.ring
    F = [g.terms for g in I.gens] + [q.terms for q in ring.quotient]
    rows = syzygy_terms(F, ring.order, ring.field.p, budget)
    n = len(I.gens)
    rows = [r[:n] for r in rows if any(r[:n])]
    return SyzygyMatrix(ring, I.gens, rows)


def _det(matrix: List[List[Polynomial]], ring: Ring) -> Polynomial:
    @lru_cache(maxsize=None)
    def det(rows, cols):
        if not rows:
            return ring.one()
        r0, rest = rows[0], rows[1:]
        out = ring.zero()
        for k, c in enumerate(cols):
            a = matrix[r0][c]
            if not a:
                continue
            sub = det(rest, cols[:k] + cols[k + 1:])
            out = out + a * sub if k % 2 == 0 else out - a * sub
        return out

    return det(tuple(range(len(matrix))), tuple(range(len(matrix[0]))))


def minors(matrix: List[List[Polynomial]], size: int, ring: Ring) -> List[Polynomial]:
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    if size == 0:
        return [ring.one()]
    if size > nrows or size > ncols:
        return []
    out = []
    for rs in combinations(range(nrows), size):
        for cs in combinations(range(ncols), size):
            sub = [[matrix[r][c] for c in cs] for r in rs]
            d = _det(sub, ring)
            if d:
                out.append(d)
    return _dedupe(out)


def fitting_ideal(I: Ideal, j: int) -> Ideal:
    """Fitt_j of I as a module: (n - j)-minors of its presentation matrix."""
    n = len(I.gens)
    if j < 0 or j > n:
        raise AlgebraError("Fitting index out of range")
    ring = I.ring
    if j == n:
        return unit_ideal(ring)
    syz = syzygies(I)
    # columns are syzygies, rows are generators
    matrix = [[row[i] for row in syz.rows] for i in range(n)] if syz.rows else [[] for _ in range(n)]
    return Ideal(ring, minors(matrix, n - j, ring))
