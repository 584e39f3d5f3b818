"""Identity suites run against the engines.

Suites marked exact work in the integer engine (``m = eps = 1``) where
every identity must hold with equality; the others use floats with a
stated tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import closed_forms, lattice
from .lattice import LatticeParams, UNIT


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    failures: int
    worst: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name:<14} {status}  checked={self.checked} failures={self.failures} worst={self.worst:.3g} {self.detail}".rstrip()


class _Rows:
    """Integer rows ``it = 1..it_max`` with zero outside the stored range."""

    def __init__(self, it_max: int):
        self.rows = {it: (A1, A2) for it, A1, A2 in lattice.exact_rows(it_max)}

    def A1(self, ix: int, it: int) -> int:
        return self.rows[it][0].get(ix, 0)

    def A2(self, ix: int, it: int) -> int:
        return self.rows[it][1].get(ix, 0)


def _exact_suite(name: str, it_max: int, cases, check) -> SuiteResult:
    checked = failures = 0
    worst = 0
    first = ""
    for case in cases:
        r = check(*case)
        checked += 1
        if r != 0:
            failures += 1
            worst = max(worst, abs(r))
            if not first:
                first = f"first failure at {case}"
    return SuiteResult(name, failures == 0, checked, failures, float(worst), first)


def conservation(t_max: int = 2000, params: LatticeParams = UNIT, tol: float = 1e-9) -> SuiteResult:
    """Total probability per row equals 1 (float engine) and ``2^(t-1)`` exactly (integers)."""
    worst = 0.0
    checked = failures = 0
    for r in lattice.iter_rows(t_max, params):
        d = abs(float(r.P.sum()) - 1.0)
        worst = max(worst, d)
        checked += 1
        failures += d > tol
    if params == UNIT:
        for it, A1, A2 in lattice.exact_rows(min(t_max, 200)):
            checked += 1
            s = sum(v * v for v in A1.values()) + sum(v * v for v in A2.values())
            failures += s != 2 ** (it - 1)
    return SuiteResult("conservation", failures == 0, checked, failures, worst, f"t_max={t_max}")


def klein_gordon(t_max: int = 40) -> SuiteResult:
    R = _Rows(t_max)

    def check(ix, it, k):
        A = R.A1 if k == 1 else R.A2
        return A(ix, it + 1) + 2 * A(ix, it - 1) - A(ix - 1, it) - A(ix + 1, it)

    cases = [(ix, it, k) for it in range(2, t_max) for ix in range(-it - 2, it + 3) for k in (1, 2)]
    return _exact_suite("klein-gordon", t_max, cases, check)


def symmetry(t_max: int = 40) -> SuiteResult:
    R = _Rows(t_max)

    def check(ix, it, k):
        if k == 1:
            return R.A1(ix, it) - R.A1(-ix, it)
        if k == 2:
            return (it - ix) * R.A2(ix, it) - (it + ix - 2) * R.A2(2 - ix, it)
        return R.A1(ix, it) + R.A2(ix, it) - R.A1(2 - ix, it) - R.A2(2 - ix, it)

    cases = [(ix, it, k) for it in range(1, t_max + 1) for ix in range(-it - 2, it + 3) for k in (1, 2, 3)]
    return _exact_suite("symmetry", t_max, cases, check)


def huygens(t_max: int = 40) -> SuiteResult:
    """Decomposition through three intermediate horizontals per ``t``."""
    R = _Rows(t_max)

    def check(ix, it, itp, k):
        s = 0
        for xp in range(-itp, itp + 2):
            if k == 1:
                s += R.A2(xp, itp) * R.A1(ix - xp + 1, it - itp + 1) + R.A1(xp, itp) * R.A2(xp - ix + 1, it - itp + 1)
            else:
                s += R.A2(xp, itp) * R.A2(ix - xp + 1, it - itp + 1) - R.A1(xp, itp) * R.A1(xp - ix + 1, it - itp + 1)
        return s - (R.A1(ix, it) if k == 1 else R.A2(ix, it))

    cases = []
    for it in range(3, t_max + 1):
        for itp in sorted({1, it // 2, it - 1}):
            for ix in range(-it, it + 2):
                cases += [(ix, it, itp, 1), (ix, it, itp, 2)]
    return _exact_suite("huygens", t_max, cases, check)


def equal_time(t_max: int = 40) -> SuiteResult:
    R = _Rows(t_max)

    def check(x, t, k):
        if k == 1:
            A = lambda y: R.A1(y, t)
            return ((x + 1) * ((x - 1) ** 2 - (t - 1) ** 2) * A(x - 2)
                    + (x - 1) * ((x + 1) ** 2 - (t - 1) ** 2) * A(x + 2)
                    - 2 * x * (3 * (x * x - 1) - (t - 1) ** 2) * A(x))
        A = lambda y: R.A2(y, t)
        return (x * ((x - 2) ** 2 - t * t) * A(x - 2)
                + (x - 2) * (x * x - (t - 2) ** 2) * A(x + 2)
                - 2 * (x - 1) * (3 * (x * x - 2 * x) - t * t + 2 * t) * A(x))

    cases = [(ix, it, k) for it in range(1, t_max + 1) for ix in range(-it - 2, it + 3) for k in (1, 2)]
    return _exact_suite("equal-time", t_max, cases, check)


def explicit(t_max: int = 30) -> SuiteResult:
    """Integer engine against the three binomial closed forms."""
    R = _Rows(t_max)

    def check(ix, it):
        ref = (R.A1(ix, it), R.A2(ix, it))
        got = [closed_forms.explicit_exact(ix, it)]
        got += [closed_forms.alt_explicit_basic(ix, it, v) for v in ("A", "B")]
        return sum(abs(g.A1 - ref[0]) + abs(g.A2 - ref[1]) for g in got)

    cases = [(ix, it) for it in range(1, t_max + 1) for ix in range(2 - it, it, 2)]
    return _exact_suite("explicit", t_max, cases, check)


def young(size: int = 8) -> SuiteResult:
    def check(h, w):
        A = lattice.amplitude_exact(h - w, h + w)
        below = closed_forms.young_counts_below(h, w)
        return abs(closed_forms.young_delta(h, w) - A.A1) + abs(-below.delta - A.A2)

    cases = [(h, w) for h in range(1, size + 1) for w in range(1, size + 1)]
    return _exact_suite("young", size, cases, check)


def fourier(t_max: int = 30, tol: float = 1e-9) -> SuiteResult:
    from .spectral import fourier_amplitude

    worst = 0.0
    checked = failures = 0
    for it, A1, A2 in lattice.exact_rows(t_max):
        s = 2 ** ((it - 1) / 2)
        for ix in range(2 - it, it + 1, 2):
            f = fourier_amplitude(ix, it)
            d = max(abs(f.a1 - A1.get(ix, 0) / s), abs(f.a2 - A2.get(ix, 0) / s))
            worst = max(worst, d)
            checked += 1
            failures += d > tol
    return SuiteResult("fourier", failures == 0, checked, failures, worst, f"tol={tol:g}")


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "conservation": conservation,
    "klein-gordon": klein_gordon,
    "symmetry": symmetry,
    "huygens": huygens,
    "equal-time": equal_time,
    "explicit": explicit,
    "fourier": fourier,
    "young": young,
}


def run_suite(name: str, t_max: int | None = None, params: LatticeParams = UNIT) -> SuiteResult:
    fn = SUITES[name]
    if name == "conservation":
        return fn(t_max or 2000, params)
    if name == "young":
        return fn(min(t_max or 8, closed_forms.YOUNG_MAX))
    if t_max is None:
        return fn()
    return fn(t_max)
