import json
import os
import subprocess
import sys

import pytest

from corecalc.cli import JobError, dumps, main, parse_jobspec, run

EX1_JOB = "ring Q[U,V] weights [1,1]; ideal I = U^3, U*V^3, V^4; core --method both"
QUOTIENT_JOB = "ring Q[U,V,W] quotient [U^2+V^2, V*W]; ideal I = U, V; core --method prob"


def _run_text(text):
    return run(parse_jobspec(text))


# ---------------------------------------------------------------- parsing


def test_parse_example_one():
    job = parse_jobspec(EX1_JOB)
    assert job.names == ["U", "V"] and job.weights == [1, 1]
    assert job.ideals == {"I": ["U^3", "U*V^3", "V^4"]}
    assert job.command == "core" and job.options.method == "both"


def test_parse_forced_quotient_job():
    job = parse_jobspec(QUOTIENT_JOB + " --force")
    assert job.quotient == ["U^2+V^2", "V*W"]
    assert job.options.force and job.options.method == "prob"


@pytest.mark.parametrize("text", [
    EX1_JOB,
    QUOTIENT_JOB + " --force --seed 9 --json",
    "ring Fp101[U,V] weights [1,2] quotient [U*V]\nideal I = U^3, V^2\nideal J = U\n"
    "ops intersect I '(U, V)'",
    "ring Q[X,Y]\n# comment\nideal A = X^2 - 1/2*Y  # trailing\nreduction --r-max 5",
])
def test_parse_print_parse_is_identity(text):
    job = parse_jobspec(text)
    printed = job.to_text()
    assert parse_jobspec(printed) == job
    assert parse_jobspec(printed).to_text() == printed


@pytest.mark.parametrize("text,message,line,col", [
    ("ring Q[U,V]; ideal I = ", "at least one generator", 1, 23),
    ("ring Q[U,V]\nideal I = U, Z^2\ncore", "unknown variable", 2, 14),
    ("ring Fp8[U,V]; ideal I = U; core", "not prime", 1, 1),
    ("ring Q[U,V] weights [1]; ideal I = U; core", "count mismatch", 1, 1),
    ("ring Q[U,V]; ideal I = U; core --method fast", "bad flag", 1, 27),
    ("ring Q[U,V]; ideal I = U; frobnicate", "unknown statement", 1, 27),
    ("ideal I = U; ring Q[U]", "before the ring", 1, 1),
    ("ring Q[U,V]; ideal I = U", "missing command", 1, 1),
    ("ring Q[U,V]; ops colon (U)", "2 operand", 1, 14),
    ("ring Q[U,V]; ideal I = U; core --seed -1", "unsigned", 1, 27),
])
def test_parse_errors_carry_positions(text, message, line, col):
    with pytest.raises(JobError) as e:
        parse_jobspec(text)
    assert message in str(e.value)
    assert (e.value.line, e.value.col) == (line, col)


# ---------------------------------------------------------------- running


def test_core_job_reports_example_one():
    report, code = _run_text(EX1_JOB)
    assert code == 0
    assert set(report) == {"input", "hypotheses", "result", "checks", "timing_ms", "counters"}
    res = report["result"]
    assert res["generators"] == ["U^3*V^2", "U^4*V", "U^5", "V^6", "U*V^5", "U^2*V^4"]
    assert res["method"] == "both" and res["exponent_used"] == 12
    assert res["seed"] == 0 and res["t_used"] >= 1
    assert all(report["checks"].values())
    assert report["counters"]["groebner_bases"] > 0


def test_quotient_job_exits_three_without_force():
    report, code = _run_text(QUOTIENT_JOB)
    assert code == 3
    assert report["hypotheses"]["classification"] == "hypotheses-unverified"


def test_quotient_job_with_force_is_reported_not_refused():
    report, code = _run_text(QUOTIENT_JOB + " --force")
    assert code == 2
    assert "primary" in report["result"]["error"]
    assert report["hypotheses"]["G_ell"] is False


def test_spread_job():
    report, code = _run_text("ring Q[U,V]; ideal I = U, V; spread")
    assert code == 0 and report["result"] == {"analytic_spread": 2}


def test_ops_intersect_job():
    report, code = _run_text("ring Q[U,V]; ops intersect (U) (V)")
    assert code == 0 and report["result"] == ["U*V"]


@pytest.mark.parametrize("op,expected", [
    ("gb I", ["U*V", "U^2"]),
    ("colon I (U)", ["V", "U"]),
    ("saturate I (U,V)", ["U"]),
    ("eliminate I V", ["U^2"]),
    ("radical-member U I", True),
    ("dim I", 1),
    ("fitting I 1", ["V", "U"]),
])
def test_ops_calculator(op, expected):
    report, code = _run_text(f"ring Q[U,V]; ideal I = U^2, U*V; ops {op}")
    assert code == 0 and report["result"] == expected


def test_vdim_of_positive_dimensional_ideal_is_an_input_error():
    report, code = _run_text("ring Q[U,V]; ideal I = U; ops vdim I")
    assert code == 1 and "zero-dimensional" in report["result"]["error"]


def test_multiplicity_and_reduction_jobs():
    report, code = _run_text("ring Q[U,V]; ideal I = U^2, U*V, V^3; multiplicity")
    assert code == 0 and report["result"] == {"multiplicity": 5}
    report, code = _run_text("ring Q[U,V]; ideal I = U^2, U*V, V^3; reduction --seed 4")
    assert code == 0 and report["checks"] == {"replay": True}
    assert report["result"]["r"] == 1


def test_verify_job_with_candidate():
    text = ("ring Q[U,V]; ideal I = U^2, U*V, V^3; ideal C = U^2, U*V, V^3; verify C")
    report, code = _run_text(text)
    assert code == 2
    assert report["checks"]["in_sampled_reductions"] is False


def test_prime_field_warning_is_echoed():
    report, _ = _run_text("ring Fp32003[U,V]; ideal I = U^2, V^2; multiplicity")
    assert any("Monte-Carlo" in w for w in report["input"]["warnings"])


def test_same_seed_gives_identical_json():
    a, _ = _run_text(EX1_JOB + " --seed 11")
    b, _ = _run_text(EX1_JOB + " --seed 11")
    a["timing_ms"] = b["timing_ms"] = 0
    assert dumps(a) == dumps(b)


# ---------------------------------------------------------------- entry point


def test_main_exit_codes_and_output(capsys):
    assert main(["-e", "ring Q[U,V]; ideal I = U, V; spread", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["result"] == {"analytic_spread": 2}
    assert main(["-e", "ring Q[U,V]; ideal I = "]) == 1
    assert "at least one generator" in capsys.readouterr().err
    assert main(["-e", QUOTIENT_JOB]) == 3


def test_main_reads_job_file(tmp_path, capsys):
    job = tmp_path / "job.txt"
    job.write_text("ring Q[U,V]\nideal I = U^2, V^2\ncore --method prob\n")
    assert main([str(job)]) == 0
    assert "U^2" in capsys.readouterr().out


def test_json_is_byte_identical_across_hash_seeds():
    outs = []
    for hs in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hs)
        proc = subprocess.run([sys.executable, "-m", "corecalc.cli", "-e",
                               "ring Q[U,V]; ideal I = U^2, U*V, V^3; core --json --seed 5"],
                              capture_output=True, text=True, env=env, check=True)
        rep = json.loads(proc.stdout)
        rep["timing_ms"] = 0
        outs.append(dumps(rep))
    assert outs[0] == outs[1]
