"""Acceptance gate: one PASS/FAIL line per criterion A1-A8.

Runs under pytest (the lines are printed even with output capture on) or
directly as ``python3 tests/test_acceptance.py``.
"""

import functools
import sys

import pytest

from fracgreen import validation as v


@functools.lru_cache(maxsize=None)
def report(name):
    runners = {
        "heat": v.heat_scenario,
        "wave": v.wave_scenario,
        "cauchy": v.cauchy_scenario,
        "mlf": v.mlf_scenario,
        "sumudu": v.sumudu_scenario,
        "reductions": v.reductions_scenario,
        "fd-cross": v.fd_cross_scenario,
    }
    return runners[name]()


def primary_cases(name):
    # realness, mass and doubling checks are the invariant criterion's business
    return [c for c in report(name).cases if not c.name.endswith(("realness", "mass", "grid doubling"))]


def invariant_cases():
    cases = []
    for name in ("heat", "wave", "cauchy", "reductions", "fd-cross"):
        cases += [c for c in report(name).cases if c.name.endswith(("realness", "mass", "grid doubling"))]
    return cases


CRITERIA = {
    "A1": ("heat-kernel limit", lambda: primary_cases("heat")),
    "A2": ("d'Alembert limit", lambda: primary_cases("wave")),
    "A3": ("Cauchy limit", lambda: primary_cases("cauchy")),
    "A4": ("Mittag-Leffler conformance", lambda: primary_cases("mlf")),
    "A5": ("Sumudu round trip", lambda: primary_cases("sumudu")),
    "A6": ("reductions between paths", lambda: primary_cases("reductions")),
    "A7": ("finite-difference cross-check", lambda: primary_cases("fd-cross")),
    "A8": ("invariants on every field run", invariant_cases),
}


def verdict(key):
    title, get = CRITERIA[key]
    cases = get()
    failed = [c for c in cases if not c.passed]
    ok = bool(cases) and not failed
    worst = failed[0] if failed else max(cases, key=lambda c: c.usage)
    label = "first failure" if failed else "tightest"
    rel = "<" if worst.below else ">="
    line = (
        f"{key} {'PASS' if ok else 'FAIL'}  {title}: {len(cases)} checks; "
        f"{label} {worst.name} = {worst.value:.3e} (need {rel} {worst.threshold:.1e})"
    )
    return ok, line, failed


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(key, capsys):
    ok, line, failed = verdict(key)
    with capsys.disabled():
        print("\n" + line)
    assert ok, "\n".join(c.line() for c in failed)


if __name__ == "__main__":
    results = [verdict(k) for k in CRITERIA]
    for _, line, _ in results:
        print(line)
    sys.exit(0 if all(r[0] for r in results) else 1)
