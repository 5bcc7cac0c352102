"""Random generators and brute-force oracles shared by the test modules."""
from fractions import Fraction
from itertools import combinations_with_replacement

from corecalc import Ideal, Polynomial, QQ, Ring


def monomials(nvars, d):
    """All exponent tuples of total degree d."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def random_poly(ring, rng, degree, terms=3, homogeneous=False, coeff=5):
    n = ring.nvars
    pool = monomials(n, degree) if homogeneous else [
        m for d in range(degree + 1) for m in monomials(n, d)]
    chosen = rng.sample(pool, min(terms, len(pool)))
    return Polynomial.from_terms(ring, [(m, rng.choice([c for c in range(-coeff, coeff + 1) if c]))
                                        for m in chosen])


def random_ideal(ring, rng, gens=(1, 3), degree=(1, 3), terms=(1, 3), homogeneous=False):
    k = rng.randint(*gens)
    return Ideal(ring, [random_poly(ring, rng, rng.randint(*degree), rng.randint(*terms),
                                    homogeneous) for _ in range(k)])


def rank(rows):
    """Rank of a list of dict-rows (column -> Fraction) by Gaussian elimination."""
    rows = [dict(r) for r in rows if r]
    r = 0
    pivots = []
    basis = []
    for row in rows:
        row = dict(row)
        for col, b in zip(pivots, basis):
            if col in row:
                c = row[col]
                for k, v in b.items():
                    nv = row.get(k, 0) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if row:
            col = min(row)
            inv = 1 / Fraction(row[col])
            row = {k: Fraction(v) * inv for k, v in row.items()}
            # keep the basis fully reduced on pivot columns
            for b in basis:
                if col in b:
                    c = b[col]
                    for k, v in row.items():
                        nv = b.get(k, 0) - c * v
                        if nv:
                            b[k] = nv
                        else:
                            b.pop(k, None)
            pivots.append(col)
            basis.append(row)
            r += 1
    return r


def _fr(c):
    return Fraction(int(c.numerator), int(c.denominator)) if hasattr(c, "numerator") else Fraction(c)


def graded_member_oracle(f, I):
    """f in I for homogeneous f and homogeneous generators, by linear algebra in degree deg f."""
    ring = f.ring
    d = f.degree()
    span = []
    for g in I.gens:
        e = d - g.degree()
        if e < 0:
            continue
        for m in monomials(ring.nvars, e):
            span.append({k: _fr(v) for k, v in g.mul_monomial(m).terms.items()})
    target = {k: _fr(v) for k, v in f.terms.items()}
    return rank(span + [target]) == rank(span)


def newton_multiplicity(exps):
    """e(I) for an origin-primary monomial ideal in two variables:
    twice the area under the lower convex hull of the exponent set."""
    pts = sorted(set(exps))
    a = min(x for x, y in pts if y == 0)
    b = min(y for x, y in pts if x == 0)
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    # hull runs from (0, b) to (a, 0); keep the part between them
    hull = [p for p in hull if p[0] <= a]
    area2 = 0
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        area2 += (x2 - x1) * (y1 + y2)
    return area2


def random_monomial_primary(rng):
    """Origin-primary monomial ideal in two variables: pure powers plus mixed terms,
    at most 4 generators, degrees at most 6."""
    a, b = rng.randint(2, 6), rng.randint(2, 6)
    gens = [(a, 0), (0, b)]
    for _ in range(2):
        i, j = rng.randint(1, a - 1) if a > 1 else 1, rng.randint(1, b - 1) if b > 1 else 1
        if i + j <= 6:
            gens.append((i, j))
    minimal = [m for m in set(gens)
               if not any(o != m and o[0] <= m[0] and o[1] <= m[1] for o in gens)]
    return sorted(minimal)


def mono_str(e, names=("U", "V")):
    parts = [f"{v}^{k}" if k > 1 else v for v, k in zip(names, e) if k]
    return "*".join(parts) or "1"


UV = Ring(["U", "V"], None, QQ)
