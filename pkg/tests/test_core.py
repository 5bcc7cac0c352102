import pytest

from corecalc import (CoreError, HypothesisViolation, Ideal, Ring, UnsupportedInput,
                      build_universal, compute_core, core_deterministic, core_negative_fixture,
                      core_probabilistic, ideal_intersection, ideal_power, ideal_product,
                      local_contraction_zero_dim, sample_general_reduction, verify_core)
from corecalc.core import graded_zero_part, is_nonzerodivisor
from corecalc.ideals import origin_ideal
from corecalc.reductions import make_rng

from helpers import UV

UVW = Ring(["U", "V", "W"])
QUOT = Ring(["U", "V", "W"], quotient=["U^2+V^2", "V*W"])

EX1 = Ideal(UV, ["U^3", "U*V^3", "V^4"])
EX1_CORE = ideal_product(Ideal(UV, ["U^2", "U*V", "V^2"]), EX1)
EX2 = Ideal(UVW, ["U^3", "U*V^2*W^2", "V^3*W^3"])
EX2_CORE = ideal_product(Ideal(UVW, ["U^2", "U*V*W", "V^2*W^2"]), EX2)


# ---------------------------------------------------------------- universal setup


def test_build_universal_generic_ideal():
    I = Ideal(UV, ["U^2", "U*V", "V^3"])
    S = build_universal(I, 2)
    assert S.x_names == ["X11", "X21", "X31", "X12", "X22", "X32"]
    T = S.ring
    expected = [T("X11*U^2 + X21*U*V + X31*V^3"), T("X12*U^2 + X22*U*V + X32*V^3")]
    assert list(S.B.gens) == expected
    # D = 3: X_11 has degree 1 and X_31 degree 0
    assert S.x_weights == [1, 1, 0, 1, 1, 0]
    assert all(g.is_homogeneous() for g in S.B.gens)
    assert is_nonzerodivisor(S.f) and S.f in I.gens


def test_build_universal_quotient_example():
    I = Ideal(QUOT, ["U", "V"])
    S = build_universal(I, 1, need_f=False)
    T = S.ring
    assert list(S.B.gens) == [T("X11*U + X21*V")]
    assert S.f is None
    # every element of (u, v) is a zerodivisor there, so f cannot be chosen
    with pytest.raises(CoreError, match="zerodivisor"):
        build_universal(I, 1)


def test_graded_zero_part_of_trivial_colon():
    S = build_universal(Ideal(UV, ["U", "V"]), 2)
    assert graded_zero_part(S.B, S.B, UV).is_unit()


# ---------------------------------------------------------------- pipelines


def test_probabilistic_unique_minimal_reduction():
    I = Ideal(UV, ["U^2", "V^2"])
    res = core_probabilistic(I)
    assert res.core == I
    assert res.t_used == 1


def test_probabilistic_example_one():
    res = core_probabilistic(EX1, seed=0)
    assert res.core == EX1_CORE
    assert all(c.replay() for c in res.certificates)


def test_probabilistic_rejects_non_primary_input():
    with pytest.raises(UnsupportedInput):
        core_probabilistic(Ideal(UVW, ["U", "V"]))


def test_pipelines_agree_with_independent_sampling_oracle():
    I = Ideal(UV, ["U^2", "U*V", "V^3"])
    p = core_probabilistic(I, seed=4).core
    d = core_deterministic(I, seed=4).core
    assert p == d
    assert all(g.is_monomial() for g in p.reduced_generators())
    # oracle: intersect 20 local contractions of sampled reductions by elimination
    rng = make_rng("oracle", "twenty")
    oracle = None
    for _ in range(20):
        J = sample_general_reduction(I, 2, rng).J
        local = local_contraction_zero_dim(J, method="colon")
        oracle = local if oracle is None else ideal_intersection(oracle, local)
    assert oracle == p


def test_deterministic_example_one():
    res = core_deterministic(EX1)
    assert res.core == EX1_CORE
    assert res.exponent_used == 12
    assert res.checks["exponent_stable"]


def test_deterministic_example_two():
    res = core_deterministic(EX2)
    assert res.core == EX2_CORE


def test_deterministic_maximal_ideal():
    m = origin_ideal(UVW)
    assert core_deterministic(m).core == m


@pytest.mark.parametrize("gens", [["U^2", "U*V", "V^3"], ["U^3", "U*V^3", "V^4"]])
def test_saturation_variant_matches_power_variant(gens):
    I = Ideal(UV, gens)
    assert core_deterministic(I, variant="hsat").core == core_deterministic(I).core


def test_explicit_exponent_is_used():
    res = core_deterministic(EX1, exponent=13)
    assert res.exponent_used == 13 and res.core == EX1_CORE


def test_deterministic_rejects_ungraded_non_primary_input():
    with pytest.raises(UnsupportedInput):
        core_deterministic(Ideal(UV, ["U + V^2"]))


# ---------------------------------------------------------------- orchestration and checks


def test_compute_core_both_methods():
    res = compute_core(EX1, method="both", seed=2)
    assert res.method == "both" and res.certified
    assert res.core == EX1_CORE
    assert all(res.checks.values()), res.checks
    d = res.to_dict()
    assert set(d) == {"generators", "method", "seed", "t_used", "exponent_used", "certified",
                      "notes", "candidates", "certificates"}
    assert d["generators"] == EX1_CORE.canonical_strings()


def test_compute_core_skips_probabilistic_for_non_primary():
    res = compute_core(EX2, method="both")
    assert res.method == "deterministic"
    assert any("skipped" in n for n in res.notes)


def test_compute_core_refuses_violated_hypotheses():
    with pytest.raises(HypothesisViolation) as e:
        compute_core(Ideal(QUOT, ["U", "V"]), method="prob")
    assert e.value.report.violated


def test_verify_core_examples():
    assert all(verify_core(EX1, EX1_CORE).values())
    bad = Ideal(UV, ["U^2", "U*V", "V^3"])
    checks = verify_core(bad, bad)
    assert not checks["in_sampled_reductions"]
    assert checks["contained_in_I"] and checks["radical_equal"]


def test_verify_core_on_quotient_example_with_named_reductions():
    I = Ideal(QUOT, ["U", "V"])
    C = ideal_power(I, 2)
    checks = verify_core(I, C, reductions=[Ideal(QUOT, ["U"]), Ideal(QUOT, ["V"])])
    assert checks["contained_in_I"] and checks["radical_equal"]
    assert checks["in_sampled_reductions"]
    assert "briancon_skoda" not in checks


def test_negative_fixture():
    rep = core_negative_fixture()
    assert rep["ok"]
    assert rep["reduction_numbers"] == [1] * 5
    assert rep["uw_in_general_reductions"] and not rep["uw_in_I2"]
