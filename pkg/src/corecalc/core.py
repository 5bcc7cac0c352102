"""Core of an ideal: general-reduction intersection and the universal colon formula."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .ideals import (
    Ideal,
    colon_element,
    colon_power_chain,
    eliminate,
    fitting_ideal,
    ideal_colon,
    ideal_intersection,
    ideal_membership,
    ideal_power,
    ideal_saturation,
    intersect_origin_primary,
    is_origin_primary,
    krull_dimension,
    local_contraction_zero_dim,
    local_membership,
    quotient_ideal,
    radical_membership,
    ring_dimension,
)
from .kernel import AlgebraError, Polynomial, Ring
from .reductions import (
    HypothesisReport,
    ReductionCertificate,
    analytic_spread,
    classify_hypotheses,
    general_combinations,
    make_rng,
    multiplicity,
    reduction_number,
    sample_general_reduction,
)

T_MAX = 16
ESCALATION_CAP = 4


class CoreError(RuntimeError):
    """A pipeline could not certify its answer (caps, disagreement)."""


class UnsupportedInput(CoreError):
    pass


class HypothesisViolation(CoreError):
    """The classifier reports violated hypotheses and the run was not forced."""

    def __init__(self, report: HypothesisReport):
        self.report = report
        super().__init__("hypotheses violated: " + "; ".join(report.warnings[1:] or report.warnings)
                         + " (use --force to run anyway)")


@dataclass
class CoreResult:
    core: Ideal
    method: str
    seed: object
    t_used: Optional[int] = None
    exponent_used: Optional[int] = None
    certificates: List[ReductionCertificate] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    hypothesis_report: Optional[HypothesisReport] = None
    certified: bool = True
    notes: List[str] = field(default_factory=list)
    candidates: Dict[str, List[str]] = field(default_factory=dict)

    def generators(self) -> List[str]:
        return self.core.canonical_strings()

    def to_dict(self) -> dict:
        return {
            "generators": self.generators(),
            "method": self.method,
            "seed": self.seed,
            "t_used": self.t_used,
            "exponent_used": self.exponent_used,
            "certified": self.certified,
            "notes": list(self.notes),
            "candidates": dict(self.candidates),
            "certificates": [c.to_dict() for c in self.certificates],
        }


# ---------------------------------------------------------------- probabilistic


def core_probabilistic(I: Ideal, seed=0, t_max: int = T_MAX, confirmations: int = 1,
                       r_max: int = 20) -> CoreResult:
    """Intersect local contractions of general minimal reductions until stable.

    Stops at the first t where one more reduction (``confirmations`` more, in
    a row) leaves the intersection unchanged; t is reported as ``t_used``.
    """
    if not is_origin_primary(I):
        raise UnsupportedInput("the probabilistic pipeline needs an ideal primary to the origin")
    rng = make_rng(seed, "probabilistic")
    ell = analytic_spread(I)
    certs: List[ReductionCertificate] = []
    C = None
    t_used = None
    agree = 0
    for t in range(1, t_max + 2):
        cert = sample_general_reduction(I, ell, rng, r_max=r_max, seed=seed)
        certs.append(cert)
        local = local_contraction_zero_dim(cert.J, method="power")
        if C is None:
            C = local
            continue
        nxt = intersect_origin_primary(C, local)
        if C.issubset(nxt):
            agree += 1
            if t_used is None:
                t_used = t - 1
            if agree >= confirmations:
                return CoreResult(Ideal(I.ring, C.reduced_generators()), "probabilistic", seed,
                                  t_used=t_used, certificates=certs)
        else:
            agree, t_used = 0, None
            C = nxt
    raise CoreError(f"intersection did not stabilize within t_max={t_max}")


# ---------------------------------------------------------------- deterministic


@dataclass
class UniversalSetup:
    ring: Ring                  # base ring with the X_jl adjoined after its variables
    x_names: List[str]
    B: Ideal
    f: Optional[Polynomial]     # in the base ring; None if not requested
    h: Optional[Polynomial] = None
    x_weights: List[int] = field(default_factory=list)

    def lift(self, p: Polynomial) -> Polynomial:
        return p.to_ring(self.ring)


def is_nonzerodivisor(f: Polynomial) -> bool:
    """(Q0 : f) = Q0 in the ambient ring; any non-zero f in a polynomial ring."""
    ring = f.ring
    if not ring.is_quotient:
        return bool(f)
    q = quotient_ideal(ring)
    if q.contains(f):
        return False
    return colon_element(q, f).issubset(q)


def _x_names(ring: Ring, n: int, ell: int) -> List[str]:
    if n < 10 and ell < 10:
        stems = [f"X{j + 1}{l + 1}" for l in range(ell) for j in range(n)]
    else:
        stems = [f"X{j + 1}_{l + 1}" for l in range(ell) for j in range(n)]
    return list(ring.fresh_names(stems))


def build_universal(I: Ideal, ell: int, rng: random.Random | None = None,
                    f_choice: str = "generator", want_h: bool = False,
                    need_f: bool = True) -> UniversalSetup:
    """Adjoin X_jl and form B = (sum_j X_jl f_j : l = 1..ell).

    When I's generators are forms, X_jl has degree D - deg f_j (D the top
    generator degree; recorded in ``x_weights``) so every generator of B is
    a form.  The ring itself uses D + 1 - deg f_j, which grades B just as
    well and keeps every weight positive.

    ``need_f=False`` skips the nonzerodivisor search, leaving ``f`` as None.
    """
    ring = I.ring
    rng = rng or make_rng(0, "universal")
    n = len(I.gens)
    names = _x_names(ring, n, ell)
    if I.is_homogeneous():
        D = max(g.degree() for g in I.gens)
        xw = [D - g.degree() for _ in range(ell) for g in I.gens]
        shift = 1
    else:
        xw, shift = [1] * (n * ell), 0
    T = ring.extend(names, [w + shift for w in xw], front=False)
    B = Ideal(T, [sum((T.var(names[l * n + j]) * I.gens[j].to_ring(T) for j in range(n)),
                      T.zero()) for l in range(ell)])
    f = _choose_element(I, rng, f_choice) if need_f else None
    h = None
    if want_h:
        F = fitting_ideal(I, ell)
        if F.is_unit():
            h = ring.one()
        else:
            # a lowest-degree basis element keeps B : h^inf graded when I is
            gens = sorted(F.reduced_generators(), key=lambda g: (g.degree(), len(g.terms)))
            h = next((g for g in gens if is_nonzerodivisor(g)), None)
        for _ in range(5 if h is None else 0):
            (cand,), _ = general_combinations(F, 1, rng)
            if cand and is_nonzerodivisor(cand):
                h = cand
                break
        if h is None:
            raise CoreError("no non-zerodivisor found in the Fitting ideal")
    return UniversalSetup(T, names, B, f, h, xw)


def _choose_element(I: Ideal, rng: random.Random, how: str) -> Polynomial:
    if how == "generator":
        for g in sorted(I.gens, key=lambda g: (g.degree(), len(g.terms))):
            if is_nonzerodivisor(g):
                return g
    elif how != "random":
        raise AlgebraError(f"unknown element choice {how!r}")
    for _ in range(5):
        (cand,), _ = general_combinations(I, 1, rng)
        if cand and is_nonzerodivisor(cand):
            return cand
    raise CoreError("no non-zerodivisor found in I (I consists of zerodivisors)")


def _finalize(G: Ideal) -> Ideal:
    """Contract X-free part to the origin: graded ideals are already contracted."""
    ring = G.ring
    if all(w > 0 for w in ring.weights) and G.is_homogeneous():
        return Ideal(ring, G.reduced_generators())
    if krull_dimension(G) == 0:
        return local_contraction_zero_dim(G, method="power")
    raise UnsupportedInput("result is neither graded nor zero-dimensional; "
                           "local contraction is unavailable")


def _kernel(rows, field):
    """Null combinations of sparse rows: list of {row index: coefficient}."""
    mod = field.p
    pivots = []                       # (column, data, combination)
    out = []
    for idx, row in enumerate(rows):
        data, comb = dict(row), {idx: field.convert(1)}
        for col, pdata, pcomb in pivots:
            c = data.get(col)
            if not c:
                continue
            for k, v in pdata.items():
                x = data.get(k, 0) - c * v
                x = x % mod if mod else x
                if x:
                    data[k] = x
                else:
                    data.pop(k, None)
            for k, v in pcomb.items():
                x = comb.get(k, 0) - c * v
                x = x % mod if mod else x
                if x:
                    comb[k] = x
                else:
                    comb.pop(k, None)
        if not data:
            out.append(comb)
            continue
        col = max(data)
        inv = field.inv(data[col])
        scale = (lambda v: v * inv % mod) if mod else (lambda v: v * inv)
        pivots.append((col, {k: scale(v) for k, v in data.items()},
                       {k: scale(v) for k, v in comb.items()}))
    return out


def graded_zero_part(B: Ideal, D: Ideal, base: Ring, max_degree: int = 400) -> Ideal | None:
    """{h in base : h D ⊆ B} for graded B ⊆ D in an extension of ``base``.

    Works one weighted degree of ``base`` at a time: h·d ∈ B is tested
    through normal forms modulo a basis of B, and NF(x h d) = NF(x NF(h d))
    lets each degree reuse the previous ones.  Stops once a window of
    consecutive degrees (as wide as the largest weight) lies entirely in
    the answer, which is then origin-primary and generated below that point.
    Returns None if that does not happen by ``max_degree``.
    """
    T = B.ring
    gb = B.groebner()
    ds = list(D.reduced_generators())
    pos = [T.index(v) for v in base.names]
    w = base.weights
    width = max(w)
    field = base.field

    def lift(e):
        out = [0] * T.nvars
        for i, a in zip(pos, e):
            out[i] = a
        return tuple(out)

    zero = (0,) * base.nvars
    nf = {zero: [q for q in (gb.reduce(d) for d in ds) if q]}
    by_degree = {0: [zero]}
    gens: List[Polynomial] = []
    full_run = 0
    for t in range(max_degree + 1):
        if t:
            mons = set()
            for i, wi in enumerate(w):
                for m in by_degree.get(t - wi, ()):
                    mons.add(m[:i] + (m[i] + 1,) + m[i + 1:])
            mons = sorted(mons, reverse=True)
            by_degree[t] = mons
            for m in mons:
                i = next(k for k in range(base.nvars) if m[k] and m[:k] + (m[k] - 1,) + m[k + 1:] in nf)
                prev = m[:i] + (m[i] - 1,) + m[i + 1:]
                step = tuple(1 if k == pos[i] else 0 for k in range(T.nvars))
                nf[m] = [gb.reduce(q.mul_monomial(step)) for q in nf[prev]]
            for old in [d for d in by_degree if d < t - width]:
                for m in by_degree.pop(old):
                    nf.pop(m, None)
        mons = by_degree[t]
        if not mons:
            continue
        rows = [{(k, e): c for k, q in enumerate(nf[m]) for e, c in q.terms.items()}
                for m in mons]
        kernel = _kernel(rows, field)
        for comb in kernel:
            gens.append(Polynomial(base, {mons[i]: c for i, c in comb.items()}))
        full_run = full_run + 1 if len(kernel) == len(mons) else 0
        if full_run >= width:
            return Ideal(base, Ideal(base, gens).reduced_generators())
    return None


def core_deterministic(I: Ideal, variant: str = "fpower", exponent: int | None = None,
                       seed=0, f_choice: str = "generator",
                       escalation_cap: int = ESCALATION_CAP) -> CoreResult:
    """core(I) = [B : (B : f^N)]_0 (or with B : h^∞ I), contracted to the base ring."""
    homogeneous = all(w > 0 for w in I.ring.weights) and I.is_homogeneous()
    if not homogeneous and not is_origin_primary(I):
        raise UnsupportedInput("the deterministic pipeline needs a graded or origin-primary ideal")
    rng = make_rng(seed, "deterministic")
    ell = analytic_spread(I)
    setup = build_universal(I, ell, rng, f_choice=f_choice, want_h=(variant == "hsat"))
    B = setup.B
    certs: List[ReductionCertificate] = []
    notes: List[str] = []

    linear = homogeneous and is_origin_primary(I)

    def contract(D: Ideal) -> Ideal:
        if linear:
            G = graded_zero_part(B, D, I.ring)
            if G is not None:
                return G
        H = ideal_colon(B, Ideal(D.ring, D.reduced_generators()))
        G = eliminate(H, setup.x_names, target=I.ring)
        return _finalize(G)

    if variant == "hsat":
        hT = setup.lift(setup.h)
        D = ideal_saturation(B, Ideal(setup.ring, [hT]))
        D = ideal_colon(D, I.to_ring(setup.ring))
        core = contract(D)
        return CoreResult(core, "deterministic", seed, certificates=certs,
                          notes=[f"variant=hsat, h={setup.h}, f={setup.f}"])
    if variant != "fpower":
        raise AlgebraError(f"unknown variant {variant!r}")

    if exponent is None:
        if is_origin_primary(I):
            exponent = multiplicity(I, make_rng(seed, "multiplicity"))
            notes.append(f"exponent = multiplicity e(I) = {exponent}")
        else:
            cert = sample_general_reduction(I, ell, make_rng(seed, "exponent"), seed=seed)
            certs.append(cert)
            exponent = cert.r + 1
            notes.append(f"exponent = r + 1 = {exponent} from a sampled reduction")
    fT = setup.lift(setup.f)
    N = exponent
    # B : f^k for every k that escalation may need; a stable tail repeats one object
    chain = colon_power_chain(B, fT, N + escalation_cap + 2, leading=I.ring.names)
    results: Dict[int, Ideal] = {}

    def result_at(k: int) -> Ideal:
        # identical colon ideals give identical results
        for j, R in results.items():
            if chain[j] is chain[k]:
                return R
        results[k] = contract(chain[k])
        return results[k]

    for _ in range(escalation_cap + 1):
        a, b = result_at(N), result_at(N + 1)
        if a == b:
            notes.append(f"f = {setup.f}")
            out = CoreResult(a, "deterministic", seed, exponent_used=N,
                             certificates=certs, notes=notes)
            out.checks["exponent_stable"] = result_at(N + 2) == a
            return out
        notes.append(f"exponent {N} disagrees with {N + 1}; escalating")
        N += 1
    raise CoreError(f"exponent escalation did not settle within {escalation_cap} steps")


# ---------------------------------------------------------------- verification


def verify_core(I: Ideal, C: Ideal, d: int | None = None, n_samples: int = 5, seed=0,
                reductions: List[Ideal] | None = None) -> Dict[str, bool]:
    """Structural checks a core must pass; failures are reported, never raised."""
    ring = I.ring
    checks: Dict[str, bool] = {}
    checks["contained_in_I"] = C.issubset(I)
    checks["radical_equal"] = (all(radical_membership(g, C) for g in I.gens)
                               and all(radical_membership(g, I) for g in C.gens))
    if not ring.is_quotient:
        d = ring_dimension(ring) if d is None else d
        N = ideal_power(I, d)
        checks["briancon_skoda"] = all(local_membership(g, C, method="auto") for g in N.gens)
    if reductions is None:
        rng = make_rng(seed, "verify")
        ell = analytic_spread(I)
        reductions = [sample_general_reduction(I, ell, rng, seed=seed).J for _ in range(n_samples)]
    checks["in_sampled_reductions"] = all(
        all(local_membership(g, J, method="auto") for g in C.gens) for J in reductions)
    if I.is_monomial():
        checks["monomial"] = all(g.is_monomial() for g in C.reduced_generators())
    if all(w > 0 for w in ring.weights) and I.is_homogeneous():
        checks["homogeneous"] = all(g.is_homogeneous() for g in C.reduced_generators())
    return checks


# ---------------------------------------------------------------- orchestration


def compute_core(I: Ideal, method: str = "both", seed=0, t_max: int = T_MAX, r_max: int = 20,
                 exponent: int | None = None, variant: str = "fpower", force: bool = False,
                 verify: bool = True, n_samples: int = 5) -> CoreResult:
    report = classify_hypotheses(I)
    if report.violated and not force:
        raise HypothesisViolation(report)
    results = {}
    notes = []
    if method in ("prob", "probabilistic") or (method == "both" and is_origin_primary(I)):
        results["probabilistic"] = core_probabilistic(I, seed, t_max, r_max=r_max)
    elif method == "both":
        notes.append("probabilistic pipeline skipped: ideal is not primary to the origin")
    if method in ("det", "deterministic", "both"):
        results["deterministic"] = core_deterministic(I, variant, exponent, seed)
    if not results:
        raise AlgebraError(f"unknown method {method!r}")
    if len(results) == 2:
        p, d = results["probabilistic"], results["deterministic"]
        out = CoreResult(d.core, "both", seed, t_used=p.t_used, exponent_used=d.exponent_used,
                         certificates=p.certificates + d.certificates, notes=p.notes + d.notes)
        if not p.core == d.core:
            out.certified = False
            out.candidates = {"probabilistic": p.generators(), "deterministic": d.generators()}
            out.notes.append("pipelines disagree")
    else:
        out = next(iter(results.values()))
    out.notes.extend(notes)
    pipeline_checks = {k: v for r in results.values() for k, v in r.checks.items()}
    out.hypothesis_report = report
    if report.violated:
        out.certified = False
        out.notes.append("not a certified core: hypotheses violated (forced run)")
    if verify:
        out.checks = verify_core(I, out.core, n_samples=n_samples, seed=seed)
    out.checks.update(pipeline_checks)
    return out


# ---------------------------------------------------------------- the quotient-ring counterexample


def core_negative_fixture(samples: int = 5, seed=0) -> dict:
    """The one-dimensional Gorenstein quotient where general principal
    reductions do not cut out the core.

    R = k[U,V,W]/(U^2 + V^2, VW), I = (u, v): core(I) = I^2 = (u) ∩ (v), yet
    every general (a u + b v) contains u w, which is not in I^2.
    """
    ring = Ring(["U", "V", "W"], quotient=["U^2 + V^2", "V*W"])
    u, v, w = ring.gens()
    I = Ideal(ring, [u, v])
    I2 = ideal_power(I, 2)
    rep = {"intersection_equals_I2": ideal_intersection(Ideal(ring, [u]), Ideal(ring, [v])) == I2}
    rng = make_rng(seed, "fixture")
    rs, uw_local, lam = [], [], []
    for _ in range(samples):
        while True:
            a, b = (ring.field.random_element(rng) for _ in range(2))
            if a and b:
                break
        J = Ideal(ring, [u.scale(a) + v.scale(b)])
        rs.append(reduction_number(I, J))
        uw_local.append(local_membership(u * w, J))
        lam.append([ring.field.fmt(a), ring.field.fmt(b)])
    rep["reduction_numbers"] = rs
    rep["r_equals_1"] = all(r == 1 for r in rs)
    rep["uw_in_general_reductions"] = all(uw_local)
    rep["uw_in_I2"] = ideal_membership(u * w, I2)
    rep["coefficients"] = lam
    report = classify_hypotheses(I)
    rep["G1_violated"] = not report.g_ell_satisfied
    rep["analytic_spread"] = report.ell
    rep["hypotheses"] = report.to_dict()
    rep["ok"] = (rep["intersection_equals_I2"] and rep["r_equals_1"] and rep["uw_in_general_reductions"]
                 and not rep["uw_in_I2"] and rep["G1_violated"] and report.ell == 1)
    return rep
