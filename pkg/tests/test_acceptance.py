"""Acceptance criteria, one test per criterion at the stated tolerances.

Run ``python3 tests/test_acceptance.py`` (or pytest) for the one-line summary.
"""
import math
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from checkers import asymptotics as asy
from checkers import closed_forms as cf
from checkers import combinatorics as cb
from checkers import identities, lattice, spectral
from checkers.lattice import AbsorptionSet, LatticeParams, UNIT
from checkers.specfun import GAUSS_G, LEMNISCATE_INV

from oracles import table1, table2

crit = pytest.mark.criterion


@crit(1, "golden tables to 1e-12, < 1 s")
def test_golden_tables():
    start = time.perf_counter()
    for site, value in table1().items():
        assert abs(lattice.amplitude_dp(*site).a - value) < 1e-12
    for mu in (0.5, 1.0, 2.0):
        params = LatticeParams.from_mu(mu)
        for site, value in table2(mu).items():
            assert abs(lattice.amplitude_dp(*site, params).a - value) < 1e-12
    assert time.perf_counter() - start < 1.0


@crit(2, "integer DP = explicit = both variants = Fourier; float DP = explicit, < 30 s")
def test_oracle_equivalence():
    start = time.perf_counter()
    for it, A1, A2 in lattice.exact_rows(30):
        s = 2 ** ((it - 1) / 2)
        for ix in range(2 - it, it + 1, 2):
            ref = (A1.get(ix, 0), A2.get(ix, 0))
            if abs(ix) < it:
                assert tuple(cf.explicit_exact(ix, it)[:2]) == ref
                assert tuple(cf.alt_explicit_basic(ix, it, "A")[:2]) == ref
                assert tuple(cf.alt_explicit_basic(ix, it, "B")[:2]) == ref
            f = spectral.fourier_amplitude(ix, it)
            assert abs(f.a1 - ref[0] / s) < 1e-9 and abs(f.a2 - ref[1] / s) < 1e-9
    for mu in (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2)):
        for r in lattice.iter_rows(30, LatticeParams.from_mu(float(mu))):
            for ix in range(2 - r.it, r.it, 2):
                a = cf.explicit_amplitude(ix, r.it, mu)
                assert abs(a.a1 - r.at(ix).a1) < 1e-10 and abs(a.a2 - r.at(ix).a2) < 1e-10
    assert time.perf_counter() - start < 30.0


@crit(3, "identity suites exact for t <= 40, conservation to t = 2000, < 60 s")
def test_identity_suites():
    start = time.perf_counter()
    res = [identities.conservation(2000, tol=1e-9)]
    res += [identities.run_suite(name, 40) for name in ("klein-gordon", "symmetry", "huygens", "equal-time")]
    for r in res:
        assert r.passed, r.line()
    assert time.perf_counter() - start < 60.0


@crit(4, "double slit and absorption")
def test_double_slit_absorption():
    assert lattice.amplitude_exact(0, 4).P == Fraction(1, 8)
    assert lattice.amplitude_exact(0, 4, AbsorptionSet({(2, 2)})).P == Fraction(1, 4)
    assert abs(lattice.amplitude_bypass(0, 4, UNIT, AbsorptionSet({(2, 2)})).P - 0.25) < 1e-15
    total = lattice.absorption_partial_sum(1000, AbsorptionSet.barrier(0))
    assert abs(total - 2 / math.pi) <= 0.02


@crit(5, "chirality bound for even t <= 10000")
def test_chirality_bound():
    s = lattice.chirality_series(10000)
    t = np.arange(1, 10001)
    even = t % 2 == 0
    assert np.all(np.abs(s[even] - 2 ** -1.5) < 1 / (2 * np.sqrt(t[even])))


@crit(6, "limiting distribution at t = 1000")
def test_limiting_distribution():
    assert asy.cdf_sup_distance(1000) <= 0.05
    for r in (1, 2, 3):
        assert abs(asy.moment(r, 1000) - asy.limit_moment(r)) <= 1e-2


@crit(7, "between-peaks error decays like t^-3/2")
def test_between_peaks():
    ts = [100, 200, 400, 800]
    errs = []
    for t in ts:
        # x = 0 lands on a white site; a2 lives on (1, t + 1)
        exact = lattice.amplitude_dp(1, t + 1).a2
        errs.append(abs(asy.approx_between_peaks(1, t + 1).a2 - exact))
    slope = np.polyfit(np.log(ts), np.log(errs), 1)[0]
    assert -1.9 <= slope <= -1.1
    assert errs[-1] <= 2e-4


@crit(8, "free energy at v = 0.9, t = 200")
def test_free_energy():
    H = asy.rate_H(0.9)
    assert abs(H - 0.3072899077831330) < 1e-12
    assert abs(asy.free_energy(0.9, 200) + H) <= 0.15 * H


@crit(9, "continuum limit bands, < 60 s")
def test_continuum_limit():
    start = time.perf_counter()
    assert 0.03 <= asy.continuum_sup_error(10, 1, 0.002, 0.2) <= 0.12
    assert 0.003 <= asy.continuum_sup_error(10, 1, 0.0002, 0.2) <= 0.012
    assert time.perf_counter() - start < 60.0


@crit(10, "antiparticle values, b-table, b-asymptotics")
def test_antiparticles():
    b1, b2 = spectral.b_values(0, 1)
    assert abs(b1 - GAUSS_G) < 1e-6 and abs(b2 + LEMNISCATE_INV) < 1e-6
    assert len(spectral.B_TABLE) == 20
    for k, ix, it in spectral.B_TABLE:
        assert abs(spectral.b_values(ix, it)[k - 1] - spectral.b_table_value(k, ix, it)) < 1e-9
    # t = 100 at x = 0: the white site (0, 101)
    a = asy.anti_asymptotic(0, 101)
    q = spectral.b_values(0, 101)
    assert abs(a[0] - q[0]) < 5e-3 and abs(a[1] - q[1]) < 5e-3


@crit(11, "loop configurations: T = 1 exact, T = 2 < 120 s")
def test_anti_checkers():
    import sympy as sp

    mu, d = sp.symbols("mu delta", positive=True)
    n = sp.sqrt(1 - d ** 2) * sp.sqrt(1 + mu ** 2)
    nine = [sp.Integer(1), -sp.I * mu * d / n, -sp.I * mu * d / n, -1 / n, -1 / n,
            mu ** 2 / n ** 2, -d ** 2 / n ** 2, -mu ** 2 * d ** 2 / n ** 2, 1 / n ** 2]

    def sym(mono):
        return ((-1) ** mono.loops * (-sp.I * mu) ** mono.oddturns * (-d) ** mono.eventurns
                / ((1 + mu ** 2) ** sp.Rational(mono.oddnodes, 2) * (1 - d ** 2) ** sp.Rational(mono.evennodes, 2)))

    cfgs = cb.enumerate_configs(cb.TorusLattice(1))
    assert len(cfgs) == 9
    for mv, dv in [(1, sp.Rational(1, 10)), (sp.Rational(1, 2), sp.Rational(1, 100))]:
        got = Counter(sp.radsimp(sp.simplify(sym(c.monomial).subs({mu: mv, d: dv}))) for c in cfgs)
        want = Counter(sp.radsimp(sp.simplify(a.subs({mu: mv, d: dv}))) for a in nine)
        assert got == want
    cb._monomials.cache_clear()
    start = time.perf_counter()
    cb.monomial_table(cb.TorusLattice(2))
    assert time.perf_counter() - start < 120.0


@crit(12, "Young diagram parity identity")
def test_young():
    for h in range(1, 9):
        for w in range(1, 9):
            assert cf.young_delta(h, w) == lattice.amplitude_exact(h - w, h + w).A1
    assert cf.young_delta(3, 3) == -2


@crit(13, "propagator algorithm: prescribed step and override run")
def test_algorithm1():
    assert math.isclose(asy.algorithm1_eps(1, 0, 1, 0.1), 6.83e-14, rel_tol=1e-3)
    assert not asy.algorithm1_run(1, 0, 1, 0.1).feasible
    for x in (0.0, 0.3):
        assert asy.algorithm1_run(10, x, 1, 0.1, eps_override=0.0002).error <= 0.1


@crit(14, "dispersion wave residual < 1e-12")
def test_dispersion():
    ix, it = np.meshgrid(np.arange(-25, 25), np.arange(1, 51))
    for lam, mu in [(8.0, 1.0), (5.3, 0.5), (math.inf, 2.0)]:
        d = spectral.dispersion_solve(lam, LatticeParams.from_mu(mu), 0.3 + 0.2j, -0.7)
        assert spectral.dirac_residual(d, ix, it) < 1e-12


@crit(15, "counterexample phase trend and fixed-step oscillation")
def test_counterexample_phases():
    args = np.angle(asy.triple_limit_check(asy.counterexample_sequence(range(3, 9))))
    assert np.all(np.diff(args) < 0) and np.all(args > 1 / 3)
    assert np.all(np.diff(np.abs(args - 1 / 3)) < 0)
    fixed = np.angle(asy.triple_limit_check(asy.fixed_step_sequence(range(1, 201), 0.5)))
    assert fixed.max() - fixed.min() > 0.5


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
