"""Command line front end: polynomial parsing, job files, exit codes,
deterministic output, selftest suites."""

import pytest

import wittcoh.witt as witt_mod
from wittcoh.cli import JobError, load_job, main, parse_poly, run, selftest
from wittcoh.fields import fq
from wittcoh.polys import poly_eval


K2 = fq(2, 1)
K3 = fq(3, 1)


def test_parse_poly():
    f = parse_poly(K3, "x^3 + y^2*z - 3*z^3 + 2*x*y*z", nvars=3)
    assert f.get((3, 0, 0)) == 1
    assert f.get((0, 2, 1)) == 1
    assert f.get((0, 0, 3)) is None  # -3 = 0 mod 3
    assert f.get((1, 1, 1)) == 2
    assert poly_eval(K3, f, (1, 1, 1)) == (1 + 1 + 2) % 3


def test_parse_poly_signs_and_powers():
    f = parse_poly(K3, "-x^2 + 2*y^2 - z^2", nvars=3)
    assert f.get((2, 0, 0)) == 2
    assert f.get((0, 2, 0)) == 2
    assert f.get((0, 0, 2)) == 2


@pytest.mark.parametrize("bad", ["x^^2", "x + ", "q", "x ^ y", "2 * * x",
                                 "x^-1"])
def test_parse_poly_errors(bad):
    with pytest.raises(JobError):
        parse_poly(K2, bad, nvars=3)


def _write_job(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


KATZ_JOB = """
[field]
p = 2
a = 1

[variety]
mode = hypersurface
equations = y^2*z + x*y*z + x^3 + z^3

[task]
task = katz
r = 1
"""

THM_SS_JOB = """
[field]
p = 2
a = 1

[variety]
mode = hypersurface
equations = y^2*z + y*z^2 + x^3

[task]
task = theorem1
n = 2
r = 1
"""

BAD_JOB = KATZ_JOB.replace("x^3", "x^^3")

GROUP_JOB = """
[field]
p = 3
a = 1

[task]
task = group-cohomology
m = 2
n = 2
i = 3
"""


def test_job_exit_codes(tmp_path, capsys):
    assert run(_write_job(tmp_path, "katz.ini", KATZ_JOB)) == 0
    out = capsys.readouterr().out
    assert "verdict: pass" in out
    # supersingular hypothesis failure reports exit code 1
    assert run(_write_job(tmp_path, "ss.ini", THM_SS_JOB)) == 1
    assert "hypothesis-fails" in capsys.readouterr().out
    # malformed polynomial is a job error (2), reported on stderr
    assert run(_write_job(tmp_path, "bad.ini", BAD_JOB)) == 2
    assert capsys.readouterr().err
    # exhausted counting budget is its own exit code (3)
    assert run(_write_job(tmp_path, "katz2.ini", KATZ_JOB), budget=2) == 3


def test_job_output_is_deterministic(tmp_path, capsys):
    path = _write_job(tmp_path, "katz.ini", KATZ_JOB)
    assert run(path) == 0
    first = capsys.readouterr().out
    assert run(path) == 0
    assert capsys.readouterr().out == first


def test_out_file(tmp_path, capsys):
    path = _write_job(tmp_path, "group.ini", GROUP_JOB)
    dest = tmp_path / "report.txt"
    assert run(path, out=str(dest)) == 0
    text = dest.read_text()
    assert capsys.readouterr().out == text
    assert text.strip()


def test_load_job_validates_task(tmp_path):
    with pytest.raises(JobError):
        load_job(_write_job(tmp_path, "x.ini",
                            "[field]\np = 2\na = 1\n[task]\ntask = frobnicate\n"))


def test_selftest_fast_suites(capsys):
    assert selftest("group-cohomology", seed=0) == 0
    assert selftest("witt-laws", seed=0) == 0
    out = capsys.readouterr().out
    assert "selftest seed: 0" in out


def test_corrupt_laws_control():
    # the sabotage flag must make the Witt-law suite fail
    try:
        assert main(["--selftest", "--suite", "witt-laws",
                     "--corrupt-laws"]) == 1
    finally:
        witt_mod._CORRUPT_LAWS = False
    assert main(["--selftest", "--suite", "witt-laws"]) == 0
