"""Buchberger's algorithm, normal forms, dimensions and syzygies."""
from __future__ import annotations

import os
from collections import Counter
from heapq import heapify, heappop, heappush
from itertools import combinations
from typing import List, Sequence, Tuple

from .kernel import AlgebraError, Exp, MonomialOrder, Polynomial, Ring, Terms

DEFAULT_PAIR_BUDGET = 200_000

# Work counters surfaced in reports; single-process, best effort.
COUNTERS: Counter = Counter()


def reset_counters() -> None:
    COUNTERS.clear()


class ResourceLimitError(RuntimeError):
    """A configured computation cap was exceeded; no partial result is returned."""


def _verify_enabled() -> bool:
    return os.environ.get("CORECALC_VERIFY_GB", "") not in ("", "0")


# ---------------------------------------------------------------- low level


class _Rk:
    """Memoized reversed sort keys for one order."""

    __slots__ = ("f", "memo")

    def __init__(self, order: MonomialOrder):
        self.f = order.rkey
        self.memo = {}

    def __call__(self, m):
        v = self.memo.get(m)
        if v is None:
            v = self.memo[m] = self.f(m)
        return v


def _leading(p: Terms, key) -> Exp:
    return max(p, key=key)


def _monic(p: Terms, lm: Exp, mod: int) -> Terms:
    c = p[lm]
    if c == 1:
        return p
    if mod:
        inv = pow(int(c), -1, mod)
        return {m: v * inv % mod for m, v in p.items()}
    inv = 1 / c
    return {m: v * inv for m, v in p.items()}


class _Elt:
    """Basis element: monic terms with cached leading monomial and tail."""

    __slots__ = ("lm", "terms", "tail", "sugar", "deg")

    def __init__(self, lm, terms, sugar):
        self.lm = lm
        self.terms = terms
        self.tail = [(m, c) for m, c in terms.items() if m != lm]
        self.sugar = sugar
        self.deg = sum(lm)


def _find_divisor(m, basis):
    for g in basis:
        lm = g.lm
        for a, b in zip(lm, m):
            if a > b:
                break
        else:
            return g
    return None


def _reduce(p: Terms, basis: Sequence[_Elt], rk, mod: int, full: bool = True,
            quotients: dict | None = None) -> Terms:
    """Remainder of ``p`` on division by ``basis`` (monic elements).

    With ``quotients`` (a dict from basis index to quotient terms), records
    ``p = sum q_i g_i + remainder``.
    """
    p = dict(p)
    heap = [(rk(m), m) for m in p]
    heapify(heap)
    rem: Terms = {}
    index = {id(g): i for i, g in enumerate(basis)} if quotients is not None else None
    while heap:
        _, m = heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        g = _find_divisor(m, basis)
        if g is None:
            rem[m] = c
            if not full:
                rem.update(p)
                break
            continue
        q = tuple(b - a for a, b in zip(g.lm, m))
        if quotients is not None:
            qd = quotients.setdefault(index[id(g)], {})
            qd[q] = (qd.get(q, 0) + c) % mod if mod else qd.get(q, 0) + c
        for mt, ct in g.tail:
            t = tuple(x + y for x, y in zip(mt, q))
            v = p.get(t)
            if v is None:
                v = -c * ct
                if mod:
                    v %= mod
                p[t] = v
                heappush(heap, (rk(t), t))
            else:
                v = v - c * ct
                if mod:
                    v %= mod
                if v:
                    p[t] = v
                else:
                    del p[t]
    return rem


def _spoly(a: _Elt, b: _Elt, mod: int) -> Tuple[Terms, Exp, Exp]:
    lcm = tuple(x if x > y else y for x, y in zip(a.lm, b.lm))
    qa = tuple(x - y for x, y in zip(lcm, a.lm))
    qb = tuple(x - y for x, y in zip(lcm, b.lm))
    out: Terms = {}
    for m, c in a.tail:
        out[tuple(x + y for x, y in zip(m, qa))] = c
    for m, c in b.tail:
        t = tuple(x + y for x, y in zip(m, qb))
        v = out.get(t, 0) - c
        if mod:
            v %= mod
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out, qa, qb


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a: Exp, b: Exp) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _coprime(a: Exp, b: Exp) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _interreduce(elts: List[_Elt], rk, key, mod: int) -> List[_Elt]:
    """Minimal, then fully reduced, monic basis sorted by decreasing leading monomial."""
    elts = sorted(elts, key=lambda g: key(g.lm))
    minimal: List[_Elt] = []
    for g in elts:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = _reduce(g.terms, others, rk, mod)
        out.append(_Elt(g.lm, _monic(r, g.lm, mod), g.sugar))
    out.sort(key=lambda g: key(g.lm), reverse=True)
    return out


def groebner_terms(polys: Sequence[Terms], order: MonomialOrder, mod: int,
                   budget: int = DEFAULT_PAIR_BUDGET) -> List[_Elt]:
    """Reduced Groebner basis of ``polys`` as basis elements.

    Pairs are pruned with the Gebauer-Moeller update (Buchberger's product
    and chain criteria) and selected by sugar degree, then by least lcm.
    """
    key = order.key
    rk = _Rk(order)
    basis: List[_Elt] = []
    active: List[int] = []        # indices of basis elements not made redundant
    pairs: list = []              # (sugar, lcm key, lcm, i, j)
    steps = 0

    def _pair(i, j, lcm):
        a, b = basis[i], basis[j]
        sugar = max(a.sugar - a.deg, b.sugar - b.deg) + sum(lcm)
        return (sugar, key(lcm), lcm, i, j)

    def add(h_terms: Terms, sugar: int):
        nonlocal pairs, active
        lm = _leading(h_terms, key)
        h = _Elt(lm, _monic(h_terms, lm, mod), sugar)
        hi = len(basis)
        basis.append(h)
        # Gebauer-Moeller update
        cands = [(hi, g) for g in active]
        keep = []
        lcms = {g: _lcm(lm, basis[g].lm) for g in active}
        for idx, (_, g1) in enumerate(cands):
            l1 = lcms[g1]
            if _coprime(lm, basis[g1].lm):
                keep.append(g1)
                continue
            dominated = False
            for _, g2 in cands[idx + 1:]:
                if _divides(lcms[g2], l1):
                    dominated = True
                    break
            if not dominated:
                for g2 in keep:
                    if _divides(lcms[g2], l1):
                        dominated = True
                        break
            if not dominated:
                keep.append(g1)
        new_pairs = [_pair(g, hi, lcms[g]) for g in keep if not _coprime(lm, basis[g].lm)]
        kept_old = []
        for pr in pairs:
            lab = pr[2]
            if (_divides(lm, lab) and _lcm(basis[pr[3]].lm, lm) != lab
                    and _lcm(basis[pr[4]].lm, lm) != lab):
                continue
            kept_old.append(pr)
        pairs = kept_old + new_pairs
        active = [g for g in active if not _divides(lm, basis[g].lm)] + [hi]

    for p in polys:
        if not p:
            continue
        r = _reduce(p, [basis[i] for i in active], rk, mod)
        if r:
            if len(r) == 1 and not any(next(iter(r))):
                return [_Elt((0,) * order.nvars, {(0,) * order.nvars: 1}, 0)]
            add(r, max(sum(m) for m in r))

    while pairs:
        i = min(range(len(pairs)), key=lambda k: pairs[k][:2])
        sugar, _, _, a, b = pairs.pop(i)
        steps += 1
        COUNTERS["pair_reductions"] += 1
        if steps > budget:
            raise ResourceLimitError(f"Groebner basis exceeded the budget of {budget} pair reductions")
        s, _, _ = _spoly(basis[a], basis[b], mod)
        if not s:
            continue
        r = _reduce(s, [basis[i] for i in active], rk, mod)
        if r:
            if len(r) == 1 and not any(next(iter(r))):
                return [_Elt((0,) * order.nvars, {(0,) * order.nvars: 1}, 0)]
            add(r, max(sugar, max(sum(m) for m in r)))

    COUNTERS["groebner_bases"] += 1
    out = _interreduce([basis[i] for i in active], rk, key, mod)
    if _verify_enabled():
        _check_spairs(out, rk, mod)
    return out


def _check_spairs(basis: List[_Elt], rk, mod: int) -> None:
    for a, b in combinations(basis, 2):
        s, _, _ = _spoly(a, b, mod)
        if s and _reduce(s, basis, rk, mod):
            raise AssertionError("S-pair does not reduce to zero: basis is not Groebner")


# ---------------------------------------------------------------- public API


class GroebnerBasis:
    """Reduced Groebner basis of an ideal for a fixed monomial order.

    ``generators`` are monic and sorted by decreasing leading monomial.
    """

    def __init__(self, ring: Ring, order: MonomialOrder, elts: List[_Elt], source=None):
        self.ring = ring
        self.order = order
        self._elts = elts
        self._rk = _Rk(order)
        self.source = source
        self.generators = tuple(Polynomial(ring, g.terms) for g in elts)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.generators]}, {self.order!r})"

    @property
    def leading_monomials(self) -> List[Exp]:
        return [g.lm for g in self._elts]

    def is_unit(self) -> bool:
        return any(not any(g.lm) for g in self._elts)

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise AlgebraError("polynomial and basis belong to different rings")
        return Polynomial(self.ring, _reduce(f.terms, self._elts, self._rk, self.ring.field.p))

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise AlgebraError("polynomial and basis belong to different rings")
        return not _reduce(f.terms, self._elts, self._rk, self.ring.field.p, full=False)

    def spairs_reduce_to_zero(self) -> bool:
        try:
            _check_spairs(self._elts, self._rk, self.ring.field.p)
        except AssertionError:
            return False
        return True


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
               ring: Ring | None = None, budget: int = DEFAULT_PAIR_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    if ring is None:
        if not gens:
            raise AlgebraError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise AlgebraError("generators belong to different rings")
    order = order or ring.order
    if order.nvars != ring.nvars:
        raise AlgebraError("order does not match ring")
    elts = groebner_terms([g.terms for g in gens], order, ring.field.p, budget)
    return GroebnerBasis(ring, order, elts, source=tuple(gens))


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.reduce(f)


# ---------------------------------------------------------------- dimension


def dimension_from_leading(lms: Sequence[Exp], nvars: int) -> int:
    """Krull dimension of k[x]/in(I): largest variable set independent mod in(I)."""
    if any(not any(m) for m in lms):
        return -1
    supports = set()
    for m in lms:
        supports.add(sum(1 << i for i, e in enumerate(m) if e))
    # keep only minimal supports
    sup = [s for s in supports if not any(t != s and t & s == t for t in supports)]
    best = 0

    def search(i, chosen, size):
        nonlocal best
        if size + (nvars - i) <= best:
            return
        if i == nvars:
            best = max(best, size)
            return
        with_i = chosen | (1 << i)
        if not any(s & with_i == s for s in sup):
            search(i + 1, with_i, size + 1)
        search(i + 1, chosen, size)

    search(0, 0, 0)
    return best


def standard_monomials(lms: Sequence[Exp], nvars: int) -> List[Exp]:
    """Monomials outside the leading-term ideal; the ideal must be zero-dimensional."""
    if any(not any(m) for m in lms):
        return []
    bounds = [None] * nvars
    for m in lms:
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            i = nz[0]
            bounds[i] = m[i] if bounds[i] is None else min(bounds[i], m[i])
    if any(b is None for b in bounds):
        raise AlgebraError("ideal is not zero-dimensional")
    out = []
    cur = [0] * nvars

    def divisible():
        return any(all(a <= b for a, b in zip(m, cur)) for m in lms)

    def rec(i):
        if i == nvars:
            out.append(tuple(cur))
            return
        for e in range(bounds[i]):
            cur[i] = e
            if divisible():
                break
            rec(i + 1)
        cur[i] = 0

    rec(0)
    return out


# ---------------------------------------------------------------- syzygies


def _cofactor_basis(F: Sequence[Terms], order: MonomialOrder, mod: int, budget: int):
    """Groebner basis with each element written in terms of ``F``.

    Returns (elements, cofactor rows); row i lists ``F``-coefficients of element i.
    Every pair is processed; used only at the small sizes Fitting ideals need.
    """
    key = order.key
    rk = _Rk(order)
    n = len(F)
    basis: List[_Elt] = []
    cof: List[List[Terms]] = []
    zero = (0,) * order.nvars

    def combine(rows_q, extra=None):
        # sum_i q_i * cof[i] (+ extra)
        acc = [dict(x) for x in extra] if extra else [dict() for _ in range(n)]
        for i, q in rows_q.items():
            for k in range(n):
                if cof[i][k]:
                    _axpy(acc[k], q, cof[i][k], mod, -1)
        return acc

    def push(terms, vec):
        lm = _leading(terms, key)
        c = terms[lm]
        inv = pow(int(c), -1, mod) if mod else 1 / c
        basis.append(_Elt(lm, _scale(terms, inv, mod), 0))
        cof.append([_scale(v, inv, mod) for v in vec])

    for j, f in enumerate(F):
        if not f:
            continue
        quot = {}
        r = _reduce(f, basis, rk, mod, quotients=quot)
        if r:
            unit = [dict() for _ in range(n)]
            unit[j] = {zero: 1}
            push(r, combine(quot, unit))
    todo = list(combinations(range(len(basis)), 2))
    steps = 0
    while todo:
        a, b = todo.pop(0)
        steps += 1
        if steps > budget:
            raise ResourceLimitError(f"syzygy computation exceeded the budget of {budget} pair reductions")
        s, qa, qb = _spoly(basis[a], basis[b], mod)
        quot = {}
        r = _reduce(s, basis, rk, mod, quotients=quot)
        if r:
            vec = [dict() for _ in range(n)]
            for k in range(n):
                _axpy(vec[k], {qa: 1}, cof[a][k], mod, 1)
                _axpy(vec[k], {qb: 1}, cof[b][k], mod, -1)
            push(r, combine(quot, vec))
            todo.extend((i, len(basis) - 1) for i in range(len(basis) - 1))
    return basis, cof, rk


def _scale(t: Terms, c, mod):
    if mod:
        return {m: v * c % mod for m, v in t.items()}
    return {m: v * c for m, v in t.items()}


def _axpy(acc: Terms, q: Terms, v: Terms, mod: int, sign: int):
    """acc += sign * q * v in place."""
    for mq, cq in q.items():
        for mv, cv in v.items():
            t = tuple(x + y for x, y in zip(mq, mv))
            x = acc.get(t, 0) + sign * cq * cv
            if mod:
                x %= mod
            if x:
                acc[t] = x
            else:
                acc.pop(t, None)


def syzygy_terms(F: Sequence[Terms], order: MonomialOrder, mod: int,
                 budget: int = DEFAULT_PAIR_BUDGET) -> List[List[Terms]]:
    """Generators of the first syzygy module of the sequence ``F``.

    Uses Schreyer's lifting of S-pair reductions plus the relations that
    express each input in terms of the basis.
    """
    n = len(F)
    basis, cof, rk = _cofactor_basis(F, order, mod, budget)
    rows: List[List[Terms]] = []
    zero = (0,) * order.nvars
    for a, b in combinations(range(len(basis)), 2):
        s, qa, qb = _spoly(basis[a], basis[b], mod)
        quot = {}
        r = _reduce(s, basis, rk, mod, quotients=quot)
        assert not r
        vec = [dict() for _ in range(n)]
        for k in range(n):
            _axpy(vec[k], {qa: 1}, cof[a][k], mod, 1)
            _axpy(vec[k], {qb: 1}, cof[b][k], mod, -1)
            for i, q in quot.items():
                _axpy(vec[k], q, cof[i][k], mod, -1)
        rows.append(vec)
    for j, f in enumerate(F):
        quot = {}
        r = _reduce(f, basis, rk, mod, quotients=quot)
        assert not r
        vec = [dict() for _ in range(n)]
        vec[j] = {zero: 1}
        for i, q in quot.items():
            for k in range(n):
                _axpy(vec[k], q, cof[i][k], mod, -1)
        rows.append(vec)
    out, seen = [], set()
    for v in rows:
        if not any(v):
            continue
        sig = tuple(frozenset(x.items()) for x in v)
        if sig not in seen:
            seen.add(sig)
            out.append(v)
    return out


class SyzygyMatrix:
    """Rows ``(a_1..a_n)`` with ``sum a_j f_j = 0`` generating all first syzygies."""

    def __init__(self, ring: Ring, generators: Sequence[Polynomial], rows):
        self.ring = ring
        self.generators = tuple(generators)
        self.rows = tuple(tuple(Polynomial(ring, c) for c in r) for r in rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def annihilates(self, modulus=None) -> bool:
        """Check every row against the generators exactly (optionally mod a basis)."""
        for row in self.rows:
            s = self.ring.zero()
            for a, f in zip(row, self.generators):
                s = s + a * f
            if modulus is not None:
                s = modulus.reduce(s)
            if s:
                return False
        return True
