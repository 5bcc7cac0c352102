"""Job specifications, the JSON report and the ``corecalc`` command.

A job is a few statements separated by newlines or semicolons::

    ring Q[U,V] weights [1,1]
    ideal I = U^3, U*V^3, V^4
    core --method both --seed 7

The first declared ideal is the subject of ``core``, ``spread``,
``reduction``, ``multiplicity`` and ``verify``; ``ops`` takes its operands
explicitly, either by name or inline as ``(g1, g2, ...)``.
"""
from __future__ import annotations

import argparse
import json
import re
import shlex
import sys
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .core import (
    CoreError,
    HypothesisViolation,
    T_MAX,
    UnsupportedInput,
    compute_core,
    verify_core,
)
from .groebner import COUNTERS, ResourceLimitError, reset_counters
from .ideals import (
    Ideal,
    eliminate,
    fitting_ideal,
    ideal_colon,
    ideal_intersection,
    ideal_saturation,
    krull_dimension,
    radical_membership,
    vector_space_dimension,
)
from .kernel import AlgebraError, Field, ParseError, Ring, parse_poly
from .reductions import (
    R_MAX,
    ReductionError,
    analytic_spread,
    classify_hypotheses,
    make_rng,
    multiplicity,
    sample_general_reduction,
)

COMMANDS = ("core", "spread", "reduction", "multiplicity", "verify", "ops")
OPS = ("gb", "intersect", "colon", "saturate", "eliminate", "radical-member", "dim", "vdim",
       "fitting")
FP_WARNING = "prime-field coefficients: results are Monte-Carlo evidence only"

EXIT_OK, EXIT_INPUT, EXIT_FAILED, EXIT_HYPOTHESES = 0, 1, 2, 3


class JobError(ValueError):
    """Malformed job text; carries a 1-based line and column."""

    def __init__(self, msg: str, line: int = 1, col: int = 1):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {msg}")


@dataclass
class Options:
    method: str = "both"
    seed: int = 0
    t_max: int = T_MAX
    r_max: int = R_MAX
    exponent: Optional[int] = None
    variant: str = "fpower"
    force: bool = False
    json: bool = False

    def to_flags(self) -> List[str]:
        out = []
        defaults = Options()
        for name, flag in (("method", "--method"), ("seed", "--seed"), ("t_max", "--t-max"),
                           ("r_max", "--r-max"), ("exponent", "--exponent"),
                           ("variant", "--variant")):
            v = getattr(self, name)
            if v != getattr(defaults, name):
                out += [flag, str(v)]
        if self.force:
            out.append("--force")
        if self.json:
            out.append("--json")
        return out


@dataclass
class JobSpec:
    field_p: int
    names: List[str]
    weights: Optional[List[int]]
    quotient: List[str]
    ideals: Dict[str, List[str]]
    command: str
    args: List[str] = field(default_factory=list)
    options: Options = field(default_factory=Options)

    def ring(self) -> Ring:
        return Ring(self.names, self.weights, Field(self.field_p),
                    [parse_poly(q, Ring(self.names, self.weights, Field(self.field_p)))
                     for q in self.quotient])

    def ring_text(self) -> str:
        fld = "Q" if self.field_p == 0 else f"Fp{self.field_p}"
        out = f"ring {fld}[{','.join(self.names)}]"
        if self.weights is not None:
            out += f" weights [{','.join(map(str, self.weights))}]"
        if self.quotient:
            out += f" quotient [{', '.join(self.quotient)}]"
        return out

    def to_text(self) -> str:
        lines = [self.ring_text()]
        lines += [f"ideal {n} = {', '.join(g)}" for n, g in self.ideals.items()]
        lines.append(" ".join([self.command] + [shlex.quote(a) for a in self.args]
                              + self.options.to_flags()))
        return "\n".join(lines) + "\n"

    @property
    def subject(self) -> str:
        return next(iter(self.ideals))


# ---------------------------------------------------------------- parsing


def _statements(text: str):
    """Yield (line, column, statement) with comments and blanks removed."""
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        start = 0
        for piece in body.split(";"):
            stripped = piece.strip()
            if stripped:
                yield ln, start + (len(piece) - len(piece.lstrip())) + 1, stripped
            start += len(piece) + 1


def _split_list(body: str, base_col: int) -> List[Tuple[str, int]]:
    """Comma-separated items (commas inside parentheses are kept)."""
    items, depth, cur, cur_col = [], 0, [], base_col
    for k, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            items.append(("".join(cur), cur_col))
            cur, cur_col = [], base_col + k + 1
        else:
            cur.append(ch)
    items.append(("".join(cur), cur_col))
    out = []
    for s, c in items:
        lead = len(s) - len(s.lstrip())
        out.append((s.strip(), c + lead))
    return out


_RING = re.compile(
    r"ring\s+(?P<field>Q|Fp(?P<p>\d+))\s*\[(?P<vars>[^\]]*)\]"
    r"(?:\s*weights\s*\[(?P<weights>[^\]]*)\])?"
    r"(?:\s*quotient\s*\[(?P<quotient>[^\]]*)\])?\s*$")
_IDEAL = re.compile(r"ideal\s+(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(?P<body>.*)$")


def _options_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, exit_on_error=False, allow_abbrev=False)
    p.add_argument("--method", choices=["prob", "det", "both"])
    p.add_argument("--seed", type=int)
    p.add_argument("--t-max", type=int, dest="t_max")
    p.add_argument("--r-max", type=int, dest="r_max")
    p.add_argument("--exponent", type=int)
    p.add_argument("--variant", choices=["fpower", "hsat"])
    p.add_argument("--force", action="store_true", default=None)
    p.add_argument("--json", action="store_true", default=None)
    return p


def _apply_flags(opts: Options, flags: List[str], where: Tuple[int, int] = (1, 1)) -> List[str]:
    """Fold recognised flags into ``opts``; return the positional leftovers."""
    parser = _options_parser()
    try:
        ns, rest = parser.parse_known_args(flags)
    except (argparse.ArgumentError, SystemExit) as e:
        raise JobError(f"bad flag: {e}", *where) from None
    for bad in rest:
        if bad.startswith("--"):
            raise JobError(f"unknown flag {bad}", *where)
    for k, v in vars(ns).items():
        if v is not None:
            setattr(opts, k, v)
    if opts.seed < 0 or opts.seed >= 1 << 64:
        raise JobError("--seed must be an unsigned 64-bit integer", *where)
    for name in ("t_max", "r_max"):
        if getattr(opts, name) < 0:
            raise JobError(f"--{name.replace('_', '-')} must be non-negative", *where)
    if opts.exponent is not None and opts.exponent < 1:
        raise JobError("--exponent must be positive", *where)
    return rest


def parse_jobspec(text: str) -> JobSpec:
    """Parse and validate a job; polynomials are checked against the ring."""
    ring_stmt = None
    ideals: Dict[str, List[str]] = {}
    command = None
    ring = None
    field_p, names, weights, quotient = 0, [], None, []
    for ln, col, stmt in _statements(text):
        word = stmt.split(None, 1)[0]
        if word == "ring":
            if ring_stmt is not None:
                raise JobError("only one ring statement is allowed", ln, col)
            m = _RING.match(stmt)
            if not m:
                raise JobError("expected: ring Q[v1,...] or ring Fp<prime>[v1,...] "
                               "[weights [...]] [quotient [...]]", ln, col)
            field_p = int(m["p"]) if m["p"] else 0
            names = [v.strip() for v in m["vars"].split(",") if v.strip()]
            try:
                fld = Field(field_p)
                if m["weights"] is not None:
                    try:
                        weights = [int(w) for w in m["weights"].split(",")]
                    except ValueError:
                        raise JobError("weights must be integers", ln, col + m.start("weights"))
                base = Ring(names, weights, fld)
            except AlgebraError as e:
                raise JobError(str(e), ln, col) from None
            if m["quotient"] is not None:
                for q, qcol in _split_list(m["quotient"], col + m.start("quotient")):
                    if not q:
                        raise JobError("empty quotient generator", ln, qcol)
                    try:
                        parse_poly(q, base, ln, qcol - 1)
                    except ParseError as e:
                        raise JobError(str(e).split(": ", 1)[1], ln, e.col) from None
                    quotient.append(q)
            ring = base
            ring_stmt = stmt
        elif word == "ideal":
            if ring is None:
                raise JobError("ideal declared before the ring", ln, col)
            m = _IDEAL.match(stmt)
            if not m:
                raise JobError("expected: ideal <name> = p1, p2, ...", ln, col)
            if m["name"] in ideals:
                raise JobError(f"ideal {m['name']} declared twice", ln, col)
            body_col = col + m.start("body")
            gens = _parse_generators(m["body"], ring, ln, body_col)
            ideals[m["name"]] = gens
        elif word in COMMANDS:
            if command is not None:
                raise JobError("only one command is allowed", ln, col)
            try:
                tokens = shlex.split(stmt)
            except ValueError as e:
                raise JobError(str(e), ln, col) from None
            command = (tokens[0], tokens[1:], ln, col)
        else:
            raise JobError(f"unknown statement {word!r}", ln, col)
    if ring is None:
        raise JobError("missing ring statement")
    if command is None:
        raise JobError("missing command (one of " + ", ".join(COMMANDS) + ")")
    cmd, rest, ln, col = command
    opts = Options()
    args = _apply_flags(opts, rest, (ln, col))
    if cmd != "ops" and not ideals:
        raise JobError(f"{cmd} needs a declared ideal", ln, col)
    if cmd == "ops":
        _check_ops(args, ideals, ring, ln, col)
    elif cmd == "verify":
        if len(args) > 1 or (args and args[0] not in ideals):
            raise JobError("verify takes at most one declared ideal (the candidate core)", ln, col)
    elif args:
        raise JobError(f"unexpected arguments for {cmd}: {' '.join(args)}", ln, col)
    return JobSpec(field_p, names, weights, quotient, ideals, cmd, args, opts)


def _parse_generators(body: str, ring: Ring, ln: int, col: int) -> List[str]:
    if not body.strip():
        raise JobError("ideal requires at least one generator", ln, col)
    gens = []
    for g, gcol in _split_list(body, col):
        if not g:
            raise JobError("empty generator", ln, gcol)
        try:
            parse_poly(g, ring, ln, gcol - 1)
        except ParseError as e:
            raise JobError(str(e).split(": ", 1)[1], ln, e.col) from None
        gens.append(g)
    return gens


_OP_ARITY = {"gb": ("I",), "intersect": ("I", "I"), "colon": ("I", "I"), "saturate": ("I", "I"),
             "eliminate": ("I", "V"), "radical-member": ("P", "I"), "dim": ("I",),
             "vdim": ("I",), "fitting": ("I", "N")}


def _check_ops(args, ideals, ring, ln, col):
    if not args or args[0] not in OPS:
        raise JobError("ops needs one of: " + ", ".join(OPS), ln, col)
    kinds = _OP_ARITY[args[0]]
    if len(args) - 1 != len(kinds):
        raise JobError(f"ops {args[0]} takes {len(kinds)} operand(s)", ln, col)
    for kind, a in zip(kinds, args[1:]):
        if kind == "I" and a not in ideals:
            if not (a.startswith("(") and a.endswith(")")):
                raise JobError(f"{a!r} is neither a declared ideal nor (g1, g2, ...)", ln, col)
            _parse_generators(a[1:-1], ring, ln, col)
        elif kind == "P":
            try:
                parse_poly(a, ring, ln, col - 1)
            except ParseError as e:
                raise JobError(str(e).split(": ", 1)[1], ln, e.col) from None
        elif kind == "V":
            for v in a.split(","):
                if v.strip() not in ring.names:
                    raise JobError(f"unknown variable {v.strip()!r}", ln, col)
        elif kind == "N" and not a.isdigit():
            raise JobError("expected a non-negative integer", ln, col)


# ---------------------------------------------------------------- running


def _ideal(ring: Ring, job: JobSpec, token: str) -> Ideal:
    gens = job.ideals.get(token)
    if gens is None:
        gens = [g for g, _ in _split_list(token[1:-1], 1)]
    return Ideal(ring, gens)


def _run_ops(job: JobSpec, ring: Ring):
    op, *a = job.args
    if op == "gb":
        return _ideal(ring, job, a[0]).canonical_strings()
    if op in ("intersect", "colon", "saturate"):
        f = {"intersect": ideal_intersection, "colon": ideal_colon, "saturate": ideal_saturation}[op]
        return f(_ideal(ring, job, a[0]), _ideal(ring, job, a[1])).canonical_strings()
    if op == "eliminate":
        return eliminate(_ideal(ring, job, a[0]), [v.strip() for v in a[1].split(",")]).canonical_strings()
    if op == "radical-member":
        return radical_membership(ring(a[0]), _ideal(ring, job, a[1]))
    if op == "dim":
        return krull_dimension(_ideal(ring, job, a[0]))
    if op == "vdim":
        return vector_space_dimension(_ideal(ring, job, a[0]))
    return fitting_ideal(_ideal(ring, job, a[0]), int(a[1])).canonical_strings()


def _input_echo(job: JobSpec) -> dict:
    echo = {"ring": job.ring_text(), "ideals": dict(job.ideals), "command": job.command,
            "args": list(job.args),
            "options": {k: v for k, v in vars(job.options).items() if k != "json"}}
    if job.field_p:
        echo["warnings"] = [FP_WARNING]
    return echo


def run(job: JobSpec) -> Tuple[dict, int]:
    """Execute a job; returns the JSON-ready report and the exit code."""
    reset_counters()
    t0 = time.perf_counter()
    report = {"input": _input_echo(job), "hypotheses": None, "result": None, "checks": {},
              "timing_ms": 0, "counters": {}}
    code = EXIT_OK
    opts = job.options
    try:
        ring = job.ring()
        I = Ideal(ring, job.ideals[job.subject]) if job.ideals else None
        if job.command == "core":
            report["hypotheses"] = classify_hypotheses(I).to_dict()
            try:
                res = compute_core(I, method=opts.method, seed=opts.seed, t_max=opts.t_max,
                                   r_max=opts.r_max, exponent=opts.exponent,
                                   variant=opts.variant, force=opts.force)
            except HypothesisViolation as e:
                report["result"] = {"error": str(e)}
                code = EXIT_HYPOTHESES
            else:
                report["hypotheses"] = res.hypothesis_report.to_dict()
                report["result"] = res.to_dict()
                report["checks"] = res.checks
                # A forced run on violated hypotheses is expected to fail checks.
                if res.candidates or (not res.hypothesis_report.violated
                                      and not all(res.checks.values())):
                    code = EXIT_FAILED
        elif job.command == "spread":
            report["result"] = {"analytic_spread": analytic_spread(I)}
        elif job.command == "reduction":
            hyp = classify_hypotheses(I)
            report["hypotheses"] = hyp.to_dict()
            cert = sample_general_reduction(I, hyp.ell, make_rng(opts.seed, "reduction"),
                                            r_max=opts.r_max, seed=opts.seed)
            report["result"] = cert.to_dict()
            report["checks"] = {"replay": cert.replay()}
        elif job.command == "multiplicity":
            report["result"] = {"multiplicity": multiplicity(I, seed=opts.seed)}
        elif job.command == "verify":
            if job.args:
                C = Ideal(ring, job.ideals[job.args[0]])
                report["result"] = {"generators": C.canonical_strings()}
            else:
                res = compute_core(I, method=opts.method, seed=opts.seed, t_max=opts.t_max,
                                   r_max=opts.r_max, exponent=opts.exponent,
                                   variant=opts.variant, force=True, verify=False)
                C = res.core
                report["result"] = res.to_dict()
            report["hypotheses"] = classify_hypotheses(I).to_dict()
            report["checks"] = verify_core(I, C, seed=opts.seed)
            if not all(report["checks"].values()):
                code = EXIT_FAILED
        else:
            report["result"] = _run_ops(job, ring)
    except (CoreError, ReductionError, ResourceLimitError) as e:
        report["result"] = {"error": str(e)}
        code = EXIT_FAILED
    except AlgebraError as e:
        report["result"] = {"error": str(e)}
        code = EXIT_INPUT
    report["timing_ms"] = round((time.perf_counter() - t0) * 1000)
    report["counters"] = dict(sorted(COUNTERS.items()))
    return report, code


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def render_text(report: dict) -> str:
    """Short human-readable summary of a report."""
    lines = [f"{report['input']['command']} on {report['input']['ring']}"]
    for w in report["input"].get("warnings", []):
        lines.append(f"warning: {w}")
    hyp = report.get("hypotheses")
    if hyp:
        lines.append(f"hypotheses: {hyp['classification']} (analytic spread {hyp['analytic_spread']}, "
                     f"height {hyp['height']})")
    res = report["result"]
    if isinstance(res, dict) and "generators" in res:
        lines.append("generators:")
        lines += [f"  {g}" for g in res["generators"]]
        for k in ("method", "t_used", "exponent_used"):
            if res.get(k) is not None:
                lines.append(f"{k}: {res[k]}")
        for n in res.get("notes", []):
            lines.append(f"note: {n}")
    elif isinstance(res, list):
        lines += [f"  {g}" for g in res] or ["  (zero ideal)"]
    else:
        lines.append(f"result: {json.dumps(res, sort_keys=True)}")
    for k, v in report["checks"].items():
        lines.append(f"check {k}: {'pass' if v else 'FAIL'}")
    lines.append(f"time: {report['timing_ms']} ms")
    return "\n".join(lines)


def main(argv: List[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="corecalc",
        description="Cores of ideals at the origin, plus a small ideal calculator.")
    ap.add_argument("job", nargs="?", default="-",
                    help="job file ('-' for stdin); see -e for inline jobs")
    ap.add_argument("-e", "--expr", help="inline job text; ';' separates statements")
    args, extra = ap.parse_known_args(argv)
    text = args.expr
    if text is None:
        text = sys.stdin.read() if args.job == "-" else open(args.job, encoding="utf-8").read()
    try:
        job = parse_jobspec(text)
        _apply_flags(job.options, extra)
        if [a for a in extra if not a.startswith("--") and a not in _flag_values(extra)]:
            raise JobError("unexpected command-line arguments: " + " ".join(extra))
    except JobError as e:
        print(f"corecalc: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if job.field_p:
        print(f"corecalc: warning: {FP_WARNING}", file=sys.stderr)
    report, code = run(job)
    print(dumps(report) if job.options.json else render_text(report))
    return code


def _flag_values(extra: List[str]) -> set:
    takes_value = {"--method", "--seed", "--t-max", "--r-max", "--exponent", "--variant"}
    return {extra[i + 1] for i, a in enumerate(extra[:-1]) if a in takes_value}


if __name__ == "__main__":
    sys.exit(main())
