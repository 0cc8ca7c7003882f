"""Acceptance criteria 1-10, one reported pass/fail line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import io
import json
import random
import sys
import time
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from gradedbv import Chart  # noqa: E402
from gradedbv.cli.main import main  # noqa: E402
from gradedbv.cli.parser import parse  # noqa: E402
from gradedbv.cli.printer import format_value, from_json_dict, to_json_dict  # noqa: E402
from gradedbv.cli.samplers import sample_superfunction  # noqa: E402
from gradedbv.cli.suites import SuiteConfig, run_suite  # noqa: E402
from gradedbv.grassmann import sf_partial  # noqa: E402

C22 = Chart(2, 2)
SEED = 42
STARTED = time.perf_counter()


def record(number, passed, detail, seconds):
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} {detail} [{seconds:.1f}s]"
    ACCEPTANCE_LINES.append(line)
    return line


def suites(*names, seed=SEED, chart=C22):
    start = time.perf_counter()
    reports = [run_suite(name, seed, SuiteConfig(chart=chart)) for name in names]
    return reports, time.perf_counter() - start


def check(report, identity):
    return next(c for c in report.checks if c.identity == identity)


def summary(reports):
    failed = [f"{r.name}:{c.identity}" for r in reports for c in r.checks if not c.passed]
    return ", ".join(r.name for r in reports) + (f" failing {failed}" if failed else "")


def criterion_1():
    start = time.perf_counter()
    rng = random.Random(SEED)
    ok = True
    d1 = lambda v: sf_partial(("th", 1), v)
    d2 = lambda v: sf_partial(("th", 2), v)
    for _ in range(200):
        f, g, h = (sample_superfunction(C22, 2, rng) for _ in range(3))
        sign = -1 if f.parity() * g.parity() else 1
        ok &= f * g == (g * f).scale(sign)
        ok &= (f * g) * h == f * (g * h)
        ok &= d1(d1(f)) == 0 and d1(d2(f)) == -d2(d1(f))
    seconds = time.perf_counter() - start
    return ok and seconds < 10, "algebra laws on 200 samples (limit 10s)", seconds


def criterion_2():
    (report,), seconds = suites("gsn-axioms")
    return report.passed and seconds < 60, summary([report]) + " (limit 60s)", seconds


def criterion_3():
    (report,), seconds = suites("gsn-route-equivalence")
    ok = report.passed and report.config.max_cohom == 4
    return ok, summary([report]) + " up to cohomological degree 4", seconds


def criterion_4():
    reports, seconds = suites("ks-axioms", "phi-correspondence")
    phi = reports[1]
    uniform = all(check(phi, name).note in ("signs [1]", "signs [-1]")
                  for name in ("star-vs-wedge-uniform-sign", "ks-vs-gsn-uniform-sign"))
    return all(r.passed for r in reports) and uniform, summary(reports), seconds


def criterion_5():
    (report,), seconds = suites("divergence-axiom")
    twists = [c for c in report.checks if c.identity.startswith("divergence-axiom[twist")]
    fixed = {c.identity for c in report.checks if c.identity.startswith("fixed")}
    ok = (report.passed and len(twists) == 5
          and {"fixed div(x1*Dx1) = 1", "fixed div(th1*Dth1) = -1"} <= fixed)
    return ok, summary([report]) + f" with {len(twists)} twists", seconds


def criterion_6():
    reports, seconds = suites("delta-generating", "delta-insertion", "delta-route-equivalence")
    fixed = any(c.identity == "fixed delta(x1*Dx1 ^ Dx2) = -Dx2" for c in reports[0].checks)
    ok = all(r.passed for r in reports) and fixed and seconds < 120
    return ok, summary(reports) + " (limit 120s)", seconds


def criterion_7():
    (report,), seconds = suites("delta-insertion")
    names = ("insertion-derivation-of-wedge", "insertion-derivation-of-bracket")
    ok = all(check(report, n).passed and check(report, n).cases >= 200 for n in names)
    return ok, " and ".join(names), seconds


def criterion_8():
    reports, seconds = suites("koszul", "operator-order")
    fixed = any(c.identity.startswith("fixed phi2") for c in reports[0].checks)
    return all(r.passed for r in reports) and fixed, summary(reports), seconds


def criterion_9():
    (report,), seconds = suites("classical-limit", seed=7, chart=Chart(2, 0))
    return report.passed, summary([report]) + " on chart (2|0)", seconds


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue()


def criterion_10():
    start = time.perf_counter()
    corpus = [line.split("\t") for line in
              (Path(__file__).parent / "data" / "golden_corpus.tsv").read_text().splitlines()
              if line and not line.startswith("#")]
    round_trip = len(corpus) == 50
    for source, canonical, _ in corpus:
        value = parse(source, C22)
        round_trip &= format_value(value) == canonical and parse(canonical, C22) == value
        round_trip &= from_json_dict(json.loads(json.dumps(to_json_dict(value)))) == value
    argv = ("suite", "divergence-axiom", "--seed", "11", "--samples", "50")
    deterministic = _cli(*argv) == _cli(*argv) and _cli(*argv, "--json") == _cli(*argv, "--json")
    codes = [
        _cli("delta", "--chart", "2,2", "x1*Dx1 ^ Dx2") == (0, "-Dx2\nbidegree (1,0)\n"),
        _cli("d", "--chart", "2,2", "th1*")[0] == 1,
        _cli("suite", "no-such-suite")[0] == 1,
        _cli("div", "--chart", "2,2", "Dx1 ^ Dx2")[0] == 2,
    ]
    total = time.perf_counter() - STARTED
    ok = round_trip and deterministic and all(codes) and total < 300
    detail = (f"corpus={'ok' if round_trip else 'bad'} determinism={'ok' if deterministic else 'bad'} "
              f"exit-codes={'ok' if all(codes) else 'bad'} total run {total:.0f}s (limit 300s)")
    return ok, detail, time.perf_counter() - start


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    passed, detail, seconds = CRITERIA[number - 1]()
    line = record(number, passed, detail, seconds)
    assert passed, line


if __name__ == "__main__":
    results = []
    for number, fn in enumerate(CRITERIA, start=1):
        passed, detail, seconds = fn()
        print(record(number, passed, detail, seconds), flush=True)
        results.append(passed)
    sys.exit(0 if all(results) else 1)
