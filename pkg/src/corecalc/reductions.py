"""Analytic spread, general reductions, reduction numbers and multiplicity."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .ideals import (
    Ideal,
    eliminate,
    fitting_ideal,
    height,
    ideal_power,
    ideal_product,
    ideal_sum,
    origin_ideal,
    is_origin_primary,
    krull_dimension,
    local_contraction_zero_dim,
    local_membership,
    ring_dimension,
    vector_space_dimension,
)
from .kernel import AlgebraError, Ring

R_MAX = 20
RESAMPLES = 5
COEFF_BOUND = 10_000

RESIDUAL_S2_WARNING = (
    "residual S2 conditions (universally weakly (l-1)-residually S2) are "
    "assumed, not verified"
)


class ReductionError(RuntimeError):
    """No reduction was certified within the configured caps."""


def make_rng(seed, label: str) -> random.Random:
    """Independent, reproducible stream derived from a master seed."""
    return random.Random(f"{seed}:{label}")


@dataclass
class ReductionCertificate:
    """A sampled reduction J of I with its reduction number and proof transcript."""

    I: Ideal
    J: Ideal
    coefficients: List[List[object]]
    r: int
    transcript: List[Dict[str, object]] = field(default_factory=list)
    witness: Optional[str] = None
    seed: object = None

    def to_dict(self) -> dict:
        f = self.J.ring.field
        return {
            "J": [str(g) for g in self.J.gens],
            "coefficients": [[f.fmt(c) for c in row] for row in self.coefficients],
            "r": self.r,
            "transcript": self.transcript,
            "witness": self.witness,
            "seed": self.seed,
        }

    def replay(self) -> bool:
        """Re-check J ⊆ I and I^(r+1) ⊆ J I^r at the origin."""
        if not self.J.issubset(self.I):
            return False
        N = ideal_product(self.J, ideal_power(self.I, self.r))
        return all(local_membership(g, N, method="auto")
                   for g in ideal_power(self.I, self.r + 1).gens)


# ---------------------------------------------------------------- analytic spread


def analytic_spread(I: Ideal) -> int:
    """Krull dimension of the fiber cone of I at the origin."""
    ring = I.ring
    if not I.gens or I.is_zero():
        raise AlgebraError("analytic spread of the zero ideal")
    if any(g.constant_term() for g in I.gens) and I.is_unit():
        raise AlgebraError("analytic spread of the unit ideal")
    if not ring.is_quotient and is_origin_primary(I):
        return ring.nvars
    n = len(I.gens)
    names = ring.fresh_names(["t"] + [f"Y{j + 1}" for j in range(n)])
    t, ys = names[0], names[1:]
    degs = [max(g.degree(), 0) for g in I.gens]
    T = ring.extend(names, [1] + [d + 1 for d in degs])
    tv = T.var(t)
    rel = Ideal(T, [T.var(y) - tv * f.to_ring(T) for y, f in zip(ys, I.gens)])
    rees = eliminate(rel, [t])
    fiber_ring = Ring(ys, [d + 1 for d in degs], ring.field)
    gens = [g.substitute_zero(ring.names).to_ring(fiber_ring) for g in rees.gens]
    return krull_dimension(Ideal(fiber_ring, gens))


# ---------------------------------------------------------------- reductions


def reduction_number(I: Ideal, J: Ideal, r_max: int = R_MAX,
                     transcript: list | None = None) -> int:
    """Least r <= r_max with I^(r+1) ⊆ J I^r after localizing at the origin."""
    for g in J.gens:
        if not I.contains(g):
            raise AlgebraError("J is not contained in I")
    # Nakayama: I^(r+1) ⊆ J I^r locally iff I^(r+1) ⊆ J I^r + m I^(r+1) locally.
    # For origin-primary I the right side is origin-primary, so the test is global.
    primary = is_origin_primary(I)
    m = origin_ideal(I.ring)
    Ir = ideal_power(I, 0)
    for r in range(r_max + 1):
        Ir1 = ideal_product(Ir, I)
        N = ideal_product(J, Ir)
        if primary:
            N = ideal_sum(N, ideal_product(m, Ir1))
        ok = True
        for g in Ir1.gens:
            passed = N.contains(g) if primary else local_membership(g, N, method="auto")
            if transcript is not None:
                transcript.append({"r": r, "element": str(g), "local_member": passed})
            if not passed:
                ok = False
                break
        if ok:
            return r
        Ir = Ir1
    raise ReductionError(f"not verified as a reduction within r_max={r_max}")


def general_combinations(I: Ideal, count: int, rng: random.Random):
    """``count`` random linear combinations of I's generators with their coefficients."""
    ring = I.ring
    coeffs = [[ring.field.random_element(rng, COEFF_BOUND) for _ in I.gens] for _ in range(count)]
    polys = []
    for row in coeffs:
        p = ring.zero()
        for c, f in zip(row, I.gens):
            if c:
                p = p + f.scale(c)
        polys.append(p)
    return polys, coeffs


def sample_general_reduction(I: Ideal, ell: int, rng: random.Random, r_max: int = R_MAX,
                             resamples: int = RESAMPLES, seed=None) -> ReductionCertificate:
    """A general ``ell``-generated reduction of I, certified with its reduction number."""
    last = None
    for _ in range(resamples + 1):
        polys, coeffs = general_combinations(I, ell, rng)
        if any(not p for p in polys):
            continue
        J = Ideal(I.ring, polys)
        transcript: list = []
        try:
            r = reduction_number(I, J, r_max, transcript)
        except ReductionError as e:
            last = e
            continue
        witness = None
        fails = [t for t in transcript if not t["local_member"]]
        if r > 0 and fails:
            witness = fails[-1]["element"]
        return ReductionCertificate(I, J, coeffs, r, transcript, witness, seed)
    raise ReductionError(
        f"no reduction found with r_max={r_max} after {resamples} resamples"
        + (f" ({last})" if last else ""))


def multiplicity(I: Ideal, rng: random.Random | None = None, seed=0) -> int:
    """Hilbert-Samuel multiplicity e(I) of an origin-primary ideal.

    Computed as the length of R/J at the origin for a general parameter
    reduction J, on two independent samples that must agree.
    """
    if not is_origin_primary(I):
        raise AlgebraError("multiplicity needs an ideal primary to the origin")
    rng = rng or make_rng(seed, "multiplicity")
    d = ring_dimension(I.ring)
    values = []
    for _ in range(2):
        cert = sample_general_reduction(I, d, rng)
        local = local_contraction_zero_dim(cert.J, method="power")
        values.append(vector_space_dimension(local))
    if values[0] != values[1]:
        raise ReductionError(f"multiplicity samples disagree ({values}); change the seed")
    return values[0]


# ---------------------------------------------------------------- hypotheses


@dataclass
class HypothesisReport:
    ell: int
    height: int
    g_ell_satisfied: bool
    fitting_heights: Dict[int, Optional[int]]
    classification: str
    quotient_ring: bool
    warnings: List[str] = field(default_factory=list)

    @property
    def violated(self) -> bool:
        return self.classification == "hypotheses-unverified"

    def to_dict(self) -> dict:
        return {
            "analytic_spread": self.ell,
            "height": self.height,
            "G_ell": self.g_ell_satisfied,
            "fitting_heights": {str(k): v for k, v in sorted(self.fitting_heights.items())},
            "classification": self.classification,
            "quotient_ring": self.quotient_ring,
            "warnings": list(self.warnings),
        }


def check_G_s(I: Ideal, s: int, ht: int | None = None):
    """Check ht Fitt_i(I) >= i + 1 for ht(I) <= i <= s - 1.

    Returns ``(satisfied, heights)``; a unit Fitting ideal records ``None``.
    """
    if s < 1:
        raise AlgebraError("G_s needs s >= 1")
    ht = height(I) if ht is None else ht
    heights: Dict[int, Optional[int]] = {}
    ok = True
    for i in range(ht, s):
        if i > len(I.gens):
            break
        F = fitting_ideal(I, i)
        if F.is_unit():
            heights[i] = None
            continue
        h = height(F)
        heights[i] = h
        if h < i + 1:
            ok = False
    return ok, heights


def classify_hypotheses(I: Ideal) -> HypothesisReport:
    ring = I.ring
    ell = analytic_spread(I)
    ht = height(I)
    warnings = [RESIDUAL_S2_WARNING]
    if ring.is_quotient:
        warnings.append("heights in a quotient ring assume it is equidimensional and catenary")
    if ell < ht:
        warnings.append(f"analytic spread {ell} below height {ht}: inconsistent input")
    ok, heights = check_G_s(I, ell, ht)
    if is_origin_primary(I):
        cls = "m-primary"
    elif ell == ht:
        cls = "equimultiple"
    elif ok:
        cls = "G_ell-verified"
    else:
        cls = "hypotheses-unverified"
    if not ok:
        warnings.append(f"G_{ell} fails: Fitting ideal heights {heights}")
    return HypothesisReport(ell, ht, ok, heights, cls, ring.is_quotient, warnings)
