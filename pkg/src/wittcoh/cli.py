"""Command-line front end: job files, task dispatch, and the self-test corpus.

Job files are line-oriented INI with sections [field], [variety], [task].
Reports go to standard output (and to --out when given), diagnostics to
standard error.  Exit codes: 0 all verdicts pass, 1 any fail or
hypothesis-fails, 2 usage/parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import configparser
import random
import re
import sys

import numpy as np

from . import witt as witt_mod
from .fields import fq
from .galois import galois_ring
from .cohomology import ComplementDatum, ProjectiveHypersurface
from .congruence import (CongruenceReport, cyclic_group_cohomology,
                         etale_rank, find_r0, verify_katz, verify_theorem1,
                         weak_lefschetz_report)
from .pointcount import BudgetExceeded
from .witt import (IntegerRing, WittVector, ghost, witt_add, witt_mul,
                   witt_neg)


class JobError(Exception):
    """Malformed job file or polynomial (exit code 2)."""


# ---------------------------------------------------------------------------
# polynomial parsing: variables x y z w, operators + - * ^, integer coeffs

_VARS = "xyzw"
_TOKEN = re.compile(r"\s*(\d+|[xyzw]|[-+*^])")


def parse_poly(field, text, nvars=4):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise JobError("cannot tokenize polynomial at %r"
                               % text[pos:pos + 10])
            break
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise JobError("empty polynomial")
    out = {}
    i = 0

    def factor():
        nonlocal i
        if i >= len(tokens):
            raise JobError("polynomial ends mid-term")
        tok = tokens[i]
        i += 1
        if tok.isdigit():
            return int(tok), (0,) * nvars
        if tok in _VARS:
            var = _VARS.index(tok)
            e = 1
            if i < len(tokens) and tokens[i] == "^":
                i += 1
                if i >= len(tokens) or not tokens[i].isdigit():
                    raise JobError("exponent must be an integer")
                e = int(tokens[i])
                i += 1
            return 1, tuple(e if k == var else 0 for k in range(nvars))
        raise JobError("unexpected token %r in polynomial" % tok)

    def term():
        nonlocal i
        c, expo = factor()
        while i < len(tokens) and tokens[i] == "*":
            i += 1
            c2, e2 = factor()
            c *= c2
            expo = tuple(a + b for a, b in zip(expo, e2))
        return c, expo

    sign = 1
    if tokens[i] == "-":
        sign = -1
        i += 1
    while True:
        c, expo = term()
        c = field.scalar(sign * c)
        if c:
            out[expo] = field.add(out.get(expo, 0), c)
        if i >= len(tokens):
            break
        if tokens[i] == "+":
            sign = 1
        elif tokens[i] == "-":
            sign = -1
        else:
            raise JobError("expected + or - between terms, got %r"
                           % tokens[i])
        i += 1
    return {e: c for e, c in out.items() if c}


def _used_vars(f):
    top = 0
    for expo in f:
        for k, e in enumerate(expo):
            if e:
                top = max(top, k + 1)
    return top


def _trim_poly(f, nvars):
    return {expo[:nvars]: c for expo, c in f.items()}


# ---------------------------------------------------------------------------
# job files


class JobFile:
    def __init__(self, field, mode, equations, name, task, params):
        self.field = field
        self.mode = mode
        self.equations = equations
        self.name = name
        self.task = task
        self.params = params


def load_job(path) -> JobFile:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        read = cp.read(path)
    except configparser.Error as exc:
        raise JobError("cannot parse job file: %s" % exc)
    if not read:
        raise JobError("cannot read job file %s" % path)
    if "field" not in cp or "task" not in cp:
        raise JobError("job file needs [field] and [task] sections")
    try:
        p = cp.getint("field", "p")
        a = cp.getint("field", "a", fallback=1)
        field = fq(p, a)
    except (ValueError, configparser.Error) as exc:
        raise JobError("bad field block: %s" % exc)
    task = cp.get("task", "task", fallback=None)
    if task not in ("katz", "theorem1", "find-r0", "weak-lefschetz",
                    "etale-rank", "group-cohomology", "selftest"):
        raise JobError("unknown task %r" % task)
    params = {}
    for key in ("n", "r", "r_max", "i", "m", "d", "budget", "pole_bound"):
        if cp.has_option("task", key):
            try:
                params[key] = cp.getint("task", key)
            except ValueError:
                raise JobError("task parameter %s must be an integer" % key)
    if cp.has_option("task", "expect"):
        params["expect"] = cp.get("task", "expect")
    mode = cp.get("variety", "mode", fallback=None) if "variety" in cp \
        else None
    name = cp.get("variety", "name", fallback="") if "variety" in cp else ""
    equations = []
    if "variety" in cp:
        raw = cp.get("variety", "equations",
                     fallback=cp.get("variety", "equation", fallback=""))
        for part in raw.split(";"):
            part = part.strip()
            if part:
                equations.append(parse_poly(field, part))
    if mode not in (None, "hypersurface", "complement", "glued-planes"):
        raise JobError("unknown variety mode %r" % mode)
    if mode in ("hypersurface", "complement") and len(equations) != 1:
        raise JobError("mode %s needs exactly one equation" % mode)
    return JobFile(field, mode, equations, name, task, params)


def run(job_path, budget=None, pole_bound=None, out=None) -> int:
    """Execute a job file; returns the exit code, reports on stdout."""
    lines = []

    def emit(text):
        lines.append(text)

    try:
        job = load_job(job_path)
        code = _dispatch(job, budget, pole_bound, emit)
    except JobError as exc:
        print("job error: %s" % exc, file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return 3
    except ValueError as exc:
        print("job error: %s" % exc, file=sys.stderr)
        return 2
    report = "\n".join(lines) + "\n"
    sys.stdout.write(report)
    if out:
        with open(out, "w") as fh:
            fh.write(report)
    return code


def _hypersurface(job) -> ProjectiveHypersurface:
    if job.mode != "hypersurface" or not job.equations:
        raise JobError("task needs a hypersurface variety block")
    f = job.equations[0]
    nvars = max(3, _used_vars(f))
    return ProjectiveHypersurface(job.field, nvars - 1,
                                  _trim_poly(f, nvars), job.name)


def _dispatch(job, budget, pole_bound, emit) -> int:
    params = job.params
    budget = params.get("budget", budget)
    pole_bound = params.get("pole_bound", pole_bound)
    task = job.task
    if task == "selftest":
        return selftest(emit=emit)
    if task == "katz":
        rep = verify_katz(_hypersurface(job), params.get("r", 1),
                          budget=budget)
        emit(rep.serialize().rstrip("\n"))
        return 0 if rep.passed else 1
    if task == "theorem1":
        rep = verify_theorem1(_hypersurface(job), params.get("n", 1),
                              params.get("r", 1), budget=budget,
                              B=pole_bound)
        emit(rep.serialize().rstrip("\n"))
        return 0 if rep.passed else 1
    if task == "find-r0":
        r0, results = find_r0(_hypersurface(job), params.get("n", 1),
                              params.get("r_max", 4), budget=budget,
                              B=pole_bound)
        emit("subject: %s" % (job.name or "X"))
        for r, trace, count, ok in results:
            emit("r=%d: trace %s count %s %s"
                 % (r, trace, count, "pass" if ok else "fail"))
        emit("r0: %s" % r0)
        return 0 if r0 is not None else 1
    if task == "weak-lefschetz":
        expect = params.get("expect", "vanishing")
        if job.mode == "glued-planes":
            subject = "glued-planes:%d:%d" % (job.field.p, job.field.a)
            verdict, rlines = weak_lefschetz_report(
                subject, params.get("d", 2),
                expect_vanishing=(expect == "vanishing"))
        else:
            if job.mode != "complement" or not job.equations:
                raise JobError("weak-lefschetz needs a complement or "
                               "glued-planes variety")
            g = job.equations[0]
            nvars = max(3, _used_vars(g))
            datum = ComplementDatum(job.field, nvars - 1,
                                    _trim_poly(g, nvars), job.name)
            verdict, rlines = weak_lefschetz_report(
                datum, params.get("d", nvars - 1),
                expect_vanishing=(expect == "vanishing"))
        for line in rlines:
            emit(line)
        return 0 if verdict == "pass" else 1
    if task == "etale-rank":
        n = params.get("n", 1)
        i = params.get("i", 1)
        if job.mode == "hypersurface":
            source = _hypersurface(job)
        elif job.mode == "complement":
            g = job.equations[0]
            nvars = max(3, _used_vars(g))
            source = ComplementDatum(job.field, nvars - 1,
                                     _trim_poly(g, nvars), job.name)
        else:
            raise JobError("etale-rank needs a hypersurface or complement")
        rank = etale_rank(source, n, i)
        emit("subject: %s" % (job.name or "X"))
        emit("degree: %d" % i)
        emit("etale rank: %d" % rank)
        return 0
    if task == "group-cohomology":
        m = params.get("m", 1)
        n = params.get("n", 1)
        i = params.get("i", 0)
        M = cyclic_group_cohomology(job.field.p, m, n, i, job.field.a)
        emit("group: Z/%d^%d" % (job.field.p, m))
        emit("degree %d factors: %s" % (i, list(M.factors)))
        return 0
    raise JobError("unknown task %r" % task)


# ---------------------------------------------------------------------------
# self-test corpus


def _suite_witt_laws(seed, emit):
    """Ghost-map homomorphism identities and the Galois-ring model check."""
    from .witt import witt_tables, witt_to_galois, galois_to_witt, FqRing
    rng = random.Random(seed)
    fails = 0
    for (p, n) in ((2, 2), (2, 3), (3, 2), (5, 2)):
        witt_tables(p, n)
        ring = IntegerRing(p)
        for _ in range(25):
            u = WittVector(ring, [rng.randrange(-50, 50) for _ in range(n)])
            v = WittVector(ring, [rng.randrange(-50, 50) for _ in range(n)])
            gu, gv = ghost(u), ghost(v)
            if ghost(witt_add(u, v)) != [a + b for a, b in zip(gu, gv)]:
                fails += 1
            if ghost(witt_mul(u, v)) != [a * b for a, b in zip(gu, gv)]:
                fails += 1
            if ghost(witt_neg(u)) != [-a for a in gu]:
                fails += 1
        emit("witt-laws p=%d n=%d: ghost identities %s"
             % (p, n, "ok" if fails == 0 else "FAIL"))
    # coordinate model versus Galois ring model, W_2(F_4) exhaustive
    field = fq(2, 2)
    R = galois_ring(2, 2, 2)
    ring = FqRing(field)
    model_fails = 0
    pairs = [(WittVector(ring, (a0, a1)), WittVector(ring, (b0, b1)))
             for a0 in range(4) for a1 in range(4)
             for b0 in range(4) for b1 in range(4)]
    for u, v in pairs:
        xu, xv = witt_to_galois(u, R), witt_to_galois(v, R)
        if witt_to_galois(witt_add(u, v), R) != xu + xv:
            model_fails += 1
        if witt_to_galois(witt_mul(u, v), R) != xu * xv:
            model_fails += 1
        if galois_to_witt(xu) != u:
            model_fails += 1
    emit("witt-laws W_2(F_4) model comparison (%d pairs): %s"
         % (len(pairs), "ok" if model_fails == 0 else "FAIL"))
    return fails + model_fails


def _suite_lemma13(seed, emit):
    """Randomized stable/nilpotent decomposition checks."""
    from .semilinear import (is_direct_sum, random_endo, random_module,
                             semilinear_power, stable_nil_decompose)
    rng = random.Random(seed)
    fails = 0
    rings = [galois_ring(2, 2, 1), galois_ring(2, 2, 2), galois_ring(3, 2, 1),
             galois_ring(2, 3, 1), galois_ring(5, 1, 1)]
    for trial in range(60):
        R = rings[trial % len(rings)]
        M = random_module(R, rng, max_rank=3)
        F = random_endo(M, rng)
        sub_s, F_s, V_s, sub_nil, F_nil = stable_nil_decompose(M, F)
        ok = is_direct_sum(M, sub_s, sub_nil)
        N = max(M.length, 1)
        if sub_nil.module.rank:
            ok = ok and semilinear_power(F_nil, N).is_zero_map()
        if sub_s.module.rank:
            # F bijective on the stable part
            from .semilinear import mat_inverse
            try:
                mat_inverse(R, F_s.matrix)
            except ValueError:
                ok = False
        # M_s equals the image of F^N
        from .semilinear import submodule_from_generators, mat_cols
        img = submodule_from_generators(
            M, mat_cols(semilinear_power(F, N).matrix))
        ok = ok and img.module.factors == sub_s.module.factors
        if not ok:
            fails += 1
    emit("lemma13 randomized suite (60 cases): %s"
         % ("ok" if fails == 0 else "FAIL"))
    return fails


def _suite_katz(seed, emit):
    """Vectorized Katz congruence over the cubic corpus."""
    from .corpus import (batch_cubic_counts, batch_hasse_witt,
                         random_smooth_quartics, smooth_cubics)
    fails = 0
    for p in (2, 3):
        field = fq(p, 1)
        coeffs, _ = smooth_cubics(field)
        if p == 3:
            rng = np.random.default_rng(seed)
            coeffs = coeffs[rng.choice(len(coeffs), 400, replace=False)]
        counts = batch_cubic_counts(field, coeffs)
        hw = batch_hasse_witt(field, coeffs)
        bad = int(np.sum((1 - hw - counts) % p != 0))
        fails += bad
        emit("katz cubics F_%d (%d curves): %s"
             % (p, len(coeffs), "ok" if bad == 0 else "%d FAIL" % bad))
    field = fq(2, 1)
    rng = random.Random(seed)
    bad = 0
    for f in random_smooth_quartics(field, 10, rng):
        rep = verify_katz(ProjectiveHypersurface(field, 2, f))
        if not rep.passed:
            bad += 1
    fails += bad
    emit("katz quartics F_2 (10 random): %s"
         % ("ok" if bad == 0 else "%d FAIL" % bad))
    return fails


def _suite_theorem1(seed, emit):
    """Theorem 1 congruences over the ordinary elliptic corpus."""
    from .corpus import elliptic_corpus
    fails = 0
    for datum in elliptic_corpus():
        X = ProjectiveHypersurface(datum.field, 2, datum.f, datum.name)
        a = datum.field.a
        for n in range(1, 5):
            for r in range(1, 5):
                if r * a > 4:
                    continue
                rep = verify_theorem1(X, n, r)
                if datum.ordinary:
                    if not rep.passed:
                        fails += 1
                elif rep.verdict != "hypothesis-fails":
                    fails += 1
    emit("theorem1 elliptic corpus: %s" % ("ok" if fails == 0 else "FAIL"))
    return fails


def _suite_group_cohomology(seed, emit):
    """Cyclic-group cohomology versus the closed formulas."""
    fails = 0
    for (p, n) in ((2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6),
                   (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1)):
        if p ** n > 81:
            continue
        for m in range(1, 4):
            for i in range(5):
                M = cyclic_group_cohomology(p, m, n, i)
                if i == 0:
                    want = (n,)
                else:
                    want = (min(m, n),) if min(m, n) else ()
                if M.factors != want:
                    fails += 1
    emit("group cohomology table: %s" % ("ok" if fails == 0 else "FAIL"))
    return fails


_SUITES = (
    ("witt-laws", _suite_witt_laws),
    ("lemma13", _suite_lemma13),
    ("katz", _suite_katz),
    ("theorem1", _suite_theorem1),
    ("group-cohomology", _suite_group_cohomology),
)


def selftest(suite=None, seed=0, emit=None) -> int:
    """Run the invariant corpus; returns 0 iff every suite passes."""
    own = emit is None
    lines = []
    if emit is None:
        emit = lines.append
    emit("selftest seed: %d" % seed)
    total = 0
    names = [n for n, _ in _SUITES]
    if suite is not None and suite not in names:
        raise JobError("unknown suite %r (have: %s)"
                       % (suite, ", ".join(names)))
    for name, fn in _SUITES:
        if suite is not None and name != suite:
            continue
        total += fn(seed, emit)
    emit("selftest: %s" % ("all suites pass" if total == 0
                           else "%d failures" % total))
    if own:
        sys.stdout.write("\n".join(lines) + "\n")
    return 0 if total == 0 else 1


# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="wittcoh",
        description="Witt vector cohomology and point-count congruences")
    parser.add_argument("--job", metavar="PATH",
                        help="job file to execute")
    parser.add_argument("--selftest", action="store_true",
                        help="run the self-test corpus")
    parser.add_argument("--suite", metavar="NAME",
                        help="restrict selftest to one suite")
    parser.add_argument("--budget", type=int, default=None,
                        help="point-enumeration budget")
    parser.add_argument("--pole-bound", type=int, default=None,
                        help="denominator-exponent guard for Witt reduction")
    parser.add_argument("--out", metavar="PATH",
                        help="also write the report to this file")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized suites (recorded)")
    parser.add_argument("--corrupt-laws", action="store_true",
                        help="test-only negative control: corrupt the Witt "
                             "addition law before running")
    args = parser.parse_args(argv)
    if args.corrupt_laws:
        witt_mod._CORRUPT_LAWS = True
    try:
        if args.selftest:
            lines = []
            code = selftest(args.suite, args.seed, emit=lines.append)
            report = "\n".join(lines) + "\n"
            sys.stdout.write(report)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(report)
            return code
        if args.job:
            return run(args.job, args.budget, args.pole_bound, args.out)
    except JobError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return 3
    parser.print_usage(sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
