"""Exact coefficient fields, monomial orders, rings and sparse polynomials."""
from __future__ import annotations

import re
from fractions import Fraction
from operator import mul
from typing import Dict, Iterable, Sequence, Tuple

import gmpy2
from gmpy2 import mpq

Exp = Tuple[int, ...]
Terms = Dict[Exp, object]

DEFAULT_PRIME = 2**31 - 1


class AlgebraError(ValueError):
    """Raised on context mismatches and malformed algebraic input."""


# ---------------------------------------------------------------- fields


class Field:
    """Coefficient field: the rationals (``p == 0``) or a prime field F_p.

    Rational coefficients are gmpy2 ``mpq`` values, which are always kept in
    lowest terms with a positive denominator.  Prime-field coefficients are
    Python ints in ``[0, p)``.
    """

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p:
            if p < 2 or not gmpy2.is_prime(p):
                raise AlgebraError(f"modulus {p} is not prime")
        self.p = int(p)

    @classmethod
    def QQ(cls) -> "Field":
        return cls(0)

    @classmethod
    def GF(cls, p: int = DEFAULT_PRIME) -> "Field":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p == 0 else f"Fp{self.p}"

    def convert(self, x):
        """Coerce an int, Fraction, mpq or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p == 0:
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, (Fraction,)) or type(x).__name__ == "mpq":
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise AlgebraError(f"denominator divisible by {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / a
        return pow(int(a), -1, self.p)

    def norm(self, a):
        return a % self.p if self.p else a

    def random_element(self, rng, bound: int = 10_000):
        if self.p == 0:
            return mpq(rng.randint(-bound, bound))
        return rng.randrange(self.p)

    def fmt(self, a) -> str:
        if self.p == 0:
            if a.denominator == 1:
                return str(a.numerator)
            return f"{a.numerator}/{a.denominator}"
        return str(int(a))


QQ = Field(0)


# ---------------------------------------------------------------- monomials


def weighted_degree(exp: Sequence[int], weights: Sequence[int]) -> int:
    if len(exp) != len(weights):
        raise AlgebraError("exponent/weight length mismatch")
    if any(w <= 0 for w in weights):
        raise AlgebraError("weights must be positive")
    return sum(e * w for e, w in zip(exp, weights))


def divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


class MonomialOrder:
    """A monomial order given by a sort key on exponent tuples.

    ``kind`` is one of ``grevlex``, ``lex``, ``wgrevlex`` (weighted degree,
    then total degree, then reverse lexicographic), ``wrevlex`` (weighted
    degree, then reverse lexicographic) or ``block``.  A block
    order is an ordered list of ``(variable indices, sub-order)`` pairs where
    earlier blocks dominate; it eliminates the variables of the first block.

    ``key(m)`` grows with the order; ``rkey(m)`` shrinks with it and is used
    for min-heaps.
    """

    def __init__(self, kind: str, nvars: int, weights: Sequence[int] | None = None,
                 blocks: Sequence[Tuple[Sequence[int], "MonomialOrder"]] | None = None):
        self.kind = kind
        self.nvars = nvars
        self.weights = tuple(weights) if weights is not None else None
        self.blocks = tuple((tuple(ix), sub) for ix, sub in blocks) if blocks else None
        # rkey(m) is key(m) negated componentwise, written out for speed
        if kind == "grevlex":
            def key(m):
                return (sum(m),) + tuple(-e for e in reversed(m))

            def rkey(m):
                return (-sum(m),) + m[::-1]
        elif kind == "lex":
            def key(m):
                return m

            def rkey(m):
                return tuple(-e for e in m)
        elif kind in ("wgrevlex", "wrevlex"):
            w = self.weights
            positive = kind == "wrevlex"
            if w is None or len(w) != nvars or any(x < 0 or (positive and x == 0) for x in w):
                raise AlgebraError(f"{kind} needs one {'positive' if positive else 'non-negative'}"
                                   " weight per variable")
            if positive:
                # weighted degree then reverse lex; a monomial order only for positive weights
                def key(m):
                    return (sum(map(mul, m, w)),) + tuple(-e for e in reversed(m))

                def rkey(m):
                    return (-sum(map(mul, m, w)),) + m[::-1]
            else:
                def key(m):
                    return (sum(map(mul, m, w)), sum(m)) + tuple(-e for e in reversed(m))

                def rkey(m):
                    return (-sum(map(mul, m, w)), -sum(m)) + m[::-1]
        elif kind == "block":
            if not self.blocks:
                raise AlgebraError("block order needs blocks")
            seen = sorted(i for ix, _ in self.blocks for i in ix)
            if seen != list(range(nvars)):
                raise AlgebraError("blocks must partition the variables")
            parts = [(ix, sub.key) for ix, sub in self.blocks]
            rparts = [(ix, sub.rkey) for ix, sub in self.blocks]

            def key(m):
                out = ()
                for ix, k in parts:
                    out += k(tuple(m[i] for i in ix))
                return out

            def rkey(m):
                out = ()
                for ix, k in rparts:
                    out += k(tuple(m[i] for i in ix))
                return out
        else:
            raise AlgebraError(f"unknown order kind {kind!r}")
        self.key = key
        self.rkey = rkey

    def compare(self, m1: Exp, m2: Exp) -> int:
        if len(m1) != len(m2) or len(m1) != self.nvars:
            raise AlgebraError("exponent length mismatch")
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def _sig(self):
        return (self.kind, self.nvars, self.weights,
                tuple((ix, sub._sig()) for ix, sub in self.blocks) if self.blocks else None)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        if self.kind == "block":
            return "block(" + ", ".join(f"{list(ix)}:{sub!r}" for ix, sub in self.blocks) + ")"
        if self.kind == "wgrevlex":
            return f"wgrevlex{list(self.weights)}"
        return self.kind

    @classmethod
    def elimination(cls, nvars: int, eliminate: Iterable[int],
                    weights: Sequence[int] | None = None) -> "MonomialOrder":
        """Block order with ``eliminate`` first (grevlex) and the rest after."""
        first = sorted(set(eliminate))
        rest = [i for i in range(nvars) if i not in set(first)]
        if not first or not rest:
            raise AlgebraError("elimination needs a proper non-empty variable subset")
        if weights is None:
            rest_order = cls("grevlex", len(rest))
        else:
            rest_order = cls("wgrevlex", len(rest), [weights[i] for i in rest])
        return cls("block", nvars, blocks=[(first, cls("grevlex", len(first))), (rest, rest_order)])


# ---------------------------------------------------------------- rings


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Ring:
    """Polynomial ring k[x_1..x_n], optionally modulo a defining ideal.

    Polynomials of a quotient ring are stored as representatives in the
    ambient polynomial ring; ideal computations add the defining ideal.
    Auxiliary rings built with :meth:`extend` may carry zero weights.
    """

    def __init__(self, names: Sequence[str], weights: Sequence[int] | None = None,
                 field: Field = QQ, quotient: Sequence = (), *, allow_zero_weights=False):
        names = tuple(names)
        if not names:
            raise AlgebraError("ring needs at least one variable")
        for v in names:
            if not _IDENT.match(v):
                raise AlgebraError(f"bad variable name {v!r}")
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate variable names")
        weights = tuple(int(w) for w in weights) if weights is not None else (1,) * len(names)
        if len(weights) != len(names):
            raise AlgebraError("weight/variable count mismatch")
        if any(w < 0 or (w == 0 and not allow_zero_weights) for w in weights):
            raise AlgebraError("weights must be positive")
        self.names = names
        self.weights = weights
        self.field = field
        self.nvars = len(names)
        self.order = MonomialOrder("wgrevlex", self.nvars, weights)
        self._index = {v: i for i, v in enumerate(names)}
        qt = []
        for q in quotient:
            if isinstance(q, str):
                q = parse_poly(q, Ring(names, weights, field, allow_zero_weights=True))
            if isinstance(q, Polynomial):
                q = q.terms
            q = {m: field.convert(c) for m, c in q.items() if c != 0}
            if q:
                qt.append(tuple(sorted(q.items(), key=lambda mc: self.order.key(mc[0]), reverse=True)))
        for q in qt:
            if any(sum(m) == 0 for m, _ in q):
                raise AlgebraError("defining ideal must lie in the origin ideal")
        self._quotient = tuple(qt)

    # structural identity
    def _sig(self):
        return (self.names, self.weights, self.field, self._quotient)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        s = f"{self.field!r}[{','.join(self.names)}]"
        if any(w != 1 for w in self.weights):
            s += f" weights {list(self.weights)}"
        if self._quotient:
            s += " quotient [" + ", ".join(str(q) for q in self.quotient) + "]"
        return s

    @property
    def is_quotient(self) -> bool:
        return bool(self._quotient)

    @property
    def quotient(self) -> Tuple["Polynomial", ...]:
        return tuple(Polynomial(self, dict(q)) for q in self._quotient)

    @property
    def ambient(self) -> "Ring":
        """The same polynomial ring without the defining ideal."""
        if not self._quotient:
            return self
        return Ring(self.names, self.weights, self.field, allow_zero_weights=True)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraError(f"unknown variable {name!r}") from None

    def gens(self) -> Tuple["Polynomial", ...]:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(Polynomial(self, {tuple(e): self.field.convert(1)}))
        return tuple(out)

    def var(self, name: str) -> "Polynomial":
        return self.gens()[self.index(name)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c != 0 else {})

    def __call__(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            return text.to_ring(self)
        if isinstance(text, str):
            return parse_poly(text, self)
        return self.const(text)

    def fresh_names(self, stems: Sequence[str]) -> Tuple[str, ...]:
        """Rename ``stems`` so that none clashes with an existing variable."""
        out = []
        taken = set(self.names)
        for s in stems:
            name = s
            while name in taken:
                name = "_" + name
            taken.add(name)
            out.append(name)
        return tuple(out)

    def extend(self, names: Sequence[str], weights: Sequence[int] | None = None,
               front: bool = True) -> "Ring":
        """Adjoin new variables; the defining ideal is carried along."""
        names = tuple(names)
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        if front:
            all_names, all_w = names + self.names, weights + self.weights
        else:
            all_names, all_w = self.names + names, self.weights + weights
        base = Ring(all_names, all_w, self.field, allow_zero_weights=True)
        return Ring(all_names, all_w, self.field,
                    [q.to_ring(base) for q in self.quotient], allow_zero_weights=True)

    def drop(self, names: Iterable[str]) -> "Ring":
        """Remove variables; defining-ideal generators using them are discarded."""
        gone = set(names)
        keep = [i for i, v in enumerate(self.names) if v not in gone]
        base = Ring([self.names[i] for i in keep], [self.weights[i] for i in keep],
                    self.field, allow_zero_weights=True)
        kept = []
        for q in self.quotient:
            if all(all(m[i] == 0 for i in range(self.nvars) if i not in keep) for m in q.terms):
                kept.append(q.to_ring(base))
        return Ring(base.names, base.weights, self.field, kept, allow_zero_weights=True)

    def with_quotient(self, gens) -> "Ring":
        return Ring(self.names, self.weights, self.field, list(self.quotient) + list(gens),
                    allow_zero_weights=True)


# ---------------------------------------------------------------- polynomials


class Polynomial:
    """Sparse polynomial over a :class:`Ring`; immutable once built.

    ``terms`` maps exponent tuples to non-zero coefficients.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: Ring, terms: Iterable[Tuple[Exp, object]]) -> "Polynomial":
        d: Terms = {}
        f = ring.field
        for m, c in terms:
            m = tuple(m)
            if len(m) != ring.nvars or any(e < 0 for e in m):
                raise AlgebraError("bad exponent vector")
            c = d.get(m, 0) + f.convert(c)
            c = f.norm(c)
            if c:
                d[m] = c
            else:
                d.pop(m, None)
        return cls(ring, d)

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                if other.ring.field != self.ring.field:
                    raise AlgebraError("cannot mix coefficient fields")
                raise AlgebraError("polynomials belong to different rings")
            return other
        return self.ring.const(other)

    # arithmetic
    def __add__(self, other):
        other = self._check(other)
        d = dict(self.terms)
        mod = self.ring.field.p
        for m, c in other.terms.items():
            v = d.get(m, 0) + c
            if mod:
                v %= mod
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        mod = self.ring.field.p
        return Polynomial(self.ring, {m: (-c % mod if mod else -c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return Polynomial(self.ring, poly_mul(self.terms, other.terms, self.ring.field.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def scale(self, c) -> "Polynomial":
        c = self.ring.field.convert(c)
        return Polynomial(self.ring, scale_terms(self.terms, c, self.ring.field.p))

    def mul_monomial(self, m: Exp, c=1) -> "Polynomial":
        c = self.ring.field.convert(c)
        mod = self.ring.field.p
        out = {}
        for e, a in self.terms.items():
            v = a * c
            if mod:
                v %= mod
            if v:
                out[mono_mul(e, m)] = v
        return Polynomial(self.ring, out)

    def div_monomial(self, m: Exp) -> "Polynomial":
        """Exact division by a monomial; raises if some term is not divisible."""
        out = {}
        for e, c in self.terms.items():
            if not divides(m, e):
                raise AlgebraError("monomial does not divide polynomial")
            out[mono_div(e, m)] = c
        return Polynomial(self.ring, out)

    # structure
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpq":
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self, order: MonomialOrder | None = None):
        key = (order or self.ring.order).key
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def lm(self, order: MonomialOrder | None = None) -> Exp:
        if not self.terms:
            raise AlgebraError("zero polynomial has no leading monomial")
        return max(self.terms, key=(order or self.ring.order).key)

    def lc(self, order: MonomialOrder | None = None):
        return self.terms[self.lm(order)]

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc(order)))

    def degree(self, weights: Sequence[int] | None = None) -> int:
        w = weights if weights is not None else self.ring.weights
        if not self.terms:
            return -1
        return max(sum(e * x for e, x in zip(m, w)) for m in self.terms)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        w = weights if weights is not None else self.ring.weights
        return len({sum(e * x for e, x in zip(m, w)) for m in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return tuple(self.ring.names[i] for i in sorted(used))

    def to_ring(self, ring: Ring) -> "Polynomial":
        """Re-express in another ring, matching variables by name."""
        if ring == self.ring:
            return Polynomial(ring, self.terms)
        if ring.field != self.ring.field:
            raise AlgebraError("cannot change coefficient field")
        pos = []
        for i, v in enumerate(self.ring.names):
            pos.append(ring._index.get(v))
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                if k:
                    if pos[i] is None:
                        raise AlgebraError(f"variable {self.ring.names[i]} missing in target ring")
                    e[pos[i]] = k
            out[tuple(e)] = c
        return Polynomial(ring, out)

    def substitute_zero(self, names: Iterable[str]) -> "Polynomial":
        """Set the given variables to zero."""
        idx = [self.ring.index(v) for v in names]
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if all(m[i] == 0 for i in idx)})

    def evaluate(self, values: Dict[str, "Polynomial"]) -> "Polynomial":
        """Substitute polynomials (same ring) for variables."""
        out = self.ring.zero()
        for m, c in self.terms.items():
            t = self.ring.const(c)
            rest = list(m)
            for v, val in values.items():
                i = self.ring.index(v)
                if rest[i]:
                    t = t * val ** rest[i]
                    rest[i] = 0
            out = out + t.mul_monomial(tuple(rest))
        return out

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def poly_mul(a: Terms, b: Terms, mod: int) -> Terms:
    if len(a) > len(b):
        a, b = b, a
    out: Terms = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = get(m, 0) + ca * cb
    if mod:
        return {m: c % mod for m, c in out.items() if c % mod}
    return {m: c for m, c in out.items() if c}


def scale_terms(a: Terms, c, mod: int) -> Terms:
    if not c:
        return {}
    if mod:
        return {m: v * c % mod for m, v in a.items()}
    return {m: v * c for m, v in a.items()}


# ---------------------------------------------------------------- text syntax


def format_poly(f: Polynomial, order: MonomialOrder | None = None) -> str:
    if not f.terms:
        return "0"
    field = f.ring.field
    names = f.ring.names
    pieces = []
    for m, c in f.sorted_terms(order):
        if field.p:
            sign, mag = "+", int(c)
        else:
            sign, mag = ("-", -c) if c < 0 else ("+", c)
        factors = []
        for v, e in zip(names, m):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        cs = field.fmt(mag)
        if factors:
            body = "*".join(factors) if cs == "1" else cs + "*" + "*".join(factors)
        else:
            body = cs
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


class ParseError(AlgebraError):
    def __init__(self, msg: str, text: str = "", pos: int = 0, line: int = 1, col_offset: int = 0):
        self.text, self.pos, self.line = text, pos, line
        self.col = col_offset + pos + 1
        super().__init__(f"line {line}, column {self.col}: {msg}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("var", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


def parse_poly(text: str, ring: Ring, line: int = 1, col_offset: int = 0) -> Polynomial:
    """Parse ``3*U^2*V - 1/2*W`` style text into a polynomial of ``ring``."""
    try:
        toks = _tokenize(text)
    except ParseError as e:
        raise ParseError(str(e).split(": ", 1)[1], text, e.pos, line, col_offset) from None
    i = 0

    def err(msg, tok):
        raise ParseError(msg, text, tok[2], line, col_offset)

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def expr():
        neg = False
        if peek()[0] == "op" and peek()[1] in "+-":
            neg = take()[1] == "-"
        acc = term()
        if neg:
            acc = -acc
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = take()
            rhs = power()
            if op[1] == "/":
                c = rhs.constant_term()
                if len(rhs.terms) != 1 or not c:
                    err("division only by non-zero constants", op)
                acc = acc.scale(ring.field.inv(c))
            else:
                acc = acc * rhs
        return acc

    def power():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            t = take()
            if t[0] != "num":
                err("exponent must be a non-negative integer", t)
            base = base ** t[1]
        return base

    def atom():
        t = take()
        if t[0] == "num":
            return ring.const(t[1])
        if t[0] == "var":
            if t[1] not in ring._index:
                err(f"unknown variable {t[1]!r}", t)
            return ring.var(t[1])
        if t[0] == "op" and t[1] == "(":
            v = expr()
            if take()[1] != ")":
                err("expected ')'", toks[i - 1])
            return v
        if t[0] == "op" and t[1] == "-":
            return -power()
        err("unexpected " + ("end of input" if t[0] == "end" else repr(t[1])), t)

    if toks[0][0] == "end":
        raise ParseError("empty polynomial", text, 0, line, col_offset)
    out = expr()
    if peek()[0] != "end":
        err(f"unexpected {peek()[1]!r}", peek())
    return out
