import random

import pytest

from corecalc import (AlgebraError, Ideal, ReductionError, Ring, analytic_spread, check_G_s,
                      classify_hypotheses, multiplicity, reduction_number,
                      sample_general_reduction)
from corecalc.reductions import make_rng

from helpers import UV, mono_str, newton_multiplicity, random_monomial_primary

R3 = Ring(["U", "V", "W"])
QUOT = Ring(["U", "V", "W"], quotient=["U^2+V^2", "V*W"])


def test_rng_streams_are_reproducible_and_independent():
    a = [make_rng(7, "x").random() for _ in range(2)]
    assert a[0] == a[1]
    assert make_rng(7, "x").random() != make_rng(7, "y").random()
    assert make_rng(7, "x").random() != make_rng(8, "x").random()


@pytest.mark.parametrize("ring,gens,ell", [
    (UV, ["U", "V"], 2),
    (UV, ["U^2", "U*V", "V^3"], 2),
    (R3, ["U*V", "U*W"], 2),
    (R3, ["U^2", "U*V", "V^2", "W"], 3),
])
def test_analytic_spread(ring, gens, ell):
    assert analytic_spread(Ideal(ring, gens)) == ell


def test_analytic_spread_of_principal_and_quotient_ideals():
    assert analytic_spread(Ideal(R3, ["U*V"])) == 1
    assert analytic_spread(Ideal(QUOT, ["U", "V"])) == 1
    with pytest.raises(AlgebraError):
        analytic_spread(Ideal(R3, []))


def test_reduction_numbers():
    I = Ideal(UV, ["U^2", "U*V", "V^2"])
    assert reduction_number(I, Ideal(UV, ["U^2", "V^2"])) == 1
    assert reduction_number(I, I) == 0
    with pytest.raises(ReductionError):
        reduction_number(I, Ideal(UV, ["U^2", "U*V"]), r_max=4)
    with pytest.raises(AlgebraError):
        reduction_number(I, Ideal(UV, ["U"]))


def test_sampled_reduction_certificate_replays():
    I = Ideal(UV, ["U^3", "U*V^3", "V^4"])
    cert = sample_general_reduction(I, 2, make_rng(1, "t"), seed=1)
    assert len(cert.J.gens) == 2
    assert cert.replay()
    d = cert.to_dict()
    assert set(d) == {"J", "coefficients", "r", "transcript", "witness", "seed"}
    assert len(d["coefficients"]) == 2 and len(d["coefficients"][0]) == 3
    assert all(abs(int(c)) <= 10_000 for row in d["coefficients"] for c in row)


def test_multiplicity_examples():
    assert multiplicity(Ideal(UV, ["U^2", "U*V", "V^3"])) == 5
    assert multiplicity(Ideal(UV, ["U^2", "V^2"])) == 4
    assert multiplicity(Ideal(R3, ["U", "V", "W"])) == 1
    with pytest.raises(AlgebraError):
        multiplicity(Ideal(UV, ["U"]))


def test_multiplicity_matches_newton_oracle():
    rng = random.Random(61)
    for _ in range(10):
        exps = random_monomial_primary(rng)
        I = Ideal(UV, [mono_str(e) for e in exps])
        assert multiplicity(I, seed=3) == newton_multiplicity(exps), exps


def test_newton_oracle_on_known_values():
    assert newton_multiplicity([(2, 0), (1, 1), (0, 3)]) == 5
    assert newton_multiplicity([(2, 0), (0, 2)]) == 4
    # (1,3) lies above the segment from (0,4) to (3,0), so the hull ignores it
    assert newton_multiplicity([(3, 0), (1, 3), (0, 4)]) == 12


def test_g_s_and_classification():
    I = Ideal(UV, ["U^3", "U*V^3", "V^4"])
    rep = classify_hypotheses(I)
    assert rep.classification == "m-primary"
    assert rep.ell == 2 and rep.height == 2 and not rep.violated
    assert any("residual" in w for w in rep.warnings)

    ok, heights = check_G_s(Ideal(R3, ["U", "V"]), 2)
    assert ok
    rep = classify_hypotheses(Ideal(R3, ["U*V", "U*W"]))
    assert (rep.ell, rep.height, rep.classification) == (2, 1, "G_ell-verified")
    assert rep.fitting_heights == {1: 2}
    assert classify_hypotheses(Ideal(R3, ["U", "V"])).classification == "equimultiple"


def test_classifier_flags_the_quotient_example():
    rep = classify_hypotheses(Ideal(QUOT, ["U", "V"]))
    assert rep.violated
    assert not rep.g_ell_satisfied
    assert rep.quotient_ring
    assert rep.to_dict()["classification"] == "hypotheses-unverified"
