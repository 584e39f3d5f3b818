import math
from collections import Counter

import numpy as np
import pytest
import sympy as sp

from checkers import combinatorics as cb
from checkers.combinatorics import SizeError, TorusLattice

# the four edges of the 1x1 torus
A, D, C, B = (0, 0, 1), (0, 0, -1), (1, 1, 1), (1, 1, -1)

mu_s, d_s = sp.symbols("mu delta", positive=True)
N_s = sp.sqrt(1 - d_s ** 2) * sp.sqrt(1 + mu_s ** 2)


def sym_arrow(mono):
    num = (-sp.I * mu_s) ** mono.oddturns * (-d_s) ** mono.eventurns
    den = (1 + mu_s ** 2) ** sp.Rational(mono.oddnodes, 2) * (1 - d_s ** 2) ** sp.Rational(mono.evennodes, 2)
    return (-1) ** mono.loops * num / den


# hand list of the nine arrows on the 1x1 torus
NINE = [sp.Integer(1), -sp.I * mu_s * d_s / N_s, -sp.I * mu_s * d_s / N_s, -1 / N_s, -1 / N_s,
        mu_s ** 2 / N_s ** 2, -d_s ** 2 / N_s ** 2, -mu_s ** 2 * d_s ** 2 / N_s ** 2, 1 / N_s ** 2]


def transfer_matrix(lat):
    """Node weights W[e, f] for f following e; det(I - W) is the loop sum."""
    edges = lat.edges
    idx = {e: i for i, e in enumerate(edges)}
    mu, d = lat.mu, lat.delta
    W = np.zeros((len(edges), len(edges)), complex)
    for e in edges:
        p = lat.end(e)
        for f in lat.outgoing(p):
            turn = e[2] != f[2]
            if p[0] % 2:
                w = (-1j * mu if turn else 1) / math.sqrt(1 + mu * mu)
            else:
                w = (-d if turn else 1) / math.sqrt(1 - d * d)
            W[idx[e], idx[f]] = w
    return W, idx


def test_t1_nine_configurations():
    lat = TorusLattice(1)
    cfgs = cb.enumerate_configs(lat)
    assert len(cfgs) == 9
    assert len(lat.points) == 2 and len(lat.edges) == 4
    got = Counter(sp.simplify(sym_arrow(c.monomial)) for c in cfgs)
    want = Counter(sp.simplify(a) for a in NINE)
    assert got == want


@pytest.mark.parametrize("mu,delta", [(1, sp.Rational(1, 10)), (sp.Rational(1, 2), sp.Rational(1, 100))])
def test_t1_arrows_symbolic(mu, delta):
    lat = TorusLattice(1, 1.0, float(mu), float(delta))
    vals = sorted((complex(sp.N(sym_arrow(c.monomial).subs({mu_s: mu, d_s: delta}), 30))
                   for c in cb.enumerate_configs(lat)), key=lambda z: (z.real, z.imag))
    ref = sorted((complex(sp.N(a.subs({mu_s: mu, d_s: delta}), 30)) for a in NINE), key=lambda z: (z.real, z.imag))
    assert np.allclose(vals, ref, atol=1e-15, rtol=0)
    for c in cb.enumerate_configs(lat):
        assert abs(c.arrow(lat.mu, lat.delta) - complex(sp.N(sym_arrow(c.monomial).subs({mu_s: mu, d_s: delta})))) < 1e-15
    total = sum(NINE).subs({mu_s: mu, d_s: delta})
    assert abs(cb.weighted_sum(lat) - complex(sp.N(total, 30))) < 1e-14
    assert abs(cb.t1_denominator(float(mu), float(delta)) - complex(sp.N(total, 30))) < 1e-14


def test_t1_denominator_small_delta():
    # m = 0 and delta -> 0: the sum 1 - 2 + 1 cancels
    for delta in (1e-3, 1e-5):
        lat = TorusLattice(1, 1.0, 0.0, delta)
        assert abs(cb.weighted_sum(lat) - cb.t1_denominator(0.0, delta)) < 1e-15
        assert abs(cb.weighted_sum(lat)) < 2 * delta * delta


@pytest.mark.parametrize("source,sink,expected", [
    (A, C, -mu_s ** 2 / (sp.sqrt(1 - d_s ** 2) * (1 + mu_s ** 2))),
    (A, B, -d_s / (sp.sqrt(1 - d_s ** 2) * (1 + mu_s ** 2))),
    (B, D, d_s ** 2 / ((1 - d_s ** 2) * sp.sqrt(1 + mu_s ** 2))),
])
def test_t1_path_arrows(source, sink, expected):
    # abdc, acdb and bacd: same edges, three distinct paths
    lat = TorusLattice(1)
    full = [c for c in cb.enumerate_configs(lat, source, sink) if len(c.path) == 4]
    assert len(full) == 1 and not full[0].loops
    assert sp.simplify(sym_arrow(full[0].monomial) - expected) == 0


def test_t1_loop_counted_once():
    # acdba and bacdb are the same loop
    cfgs = cb.enumerate_configs(TorusLattice(1))
    four = [c.loops[0] for c in cfgs if len(c.loops) == 1 and len(c.loops[0]) == 4]
    assert len(four) == 2
    acdb = [loop for loop in four if set(zip(loop, loop[1:] + loop[:1])) >= {(A, C), (C, D), (D, B), (B, A)}]
    assert len(acdb) == 1
    assert sp.simplify(sym_arrow([c for c in cfgs if c.loops == (acdb[0],)][0].monomial)
                       - (-d_s ** 2 / ((1 - d_s ** 2) * (1 + mu_s ** 2)))) == 0


@pytest.mark.parametrize("T", [1, 2])
def test_edge_disjoint(T):
    lat = TorusLattice(T)
    src, snk = lat.edge_at(0, 0, 1), lat.edge_at(1, 1, -1)
    seen = set()
    for cfg in cb.enumerate_configs(lat, src, snk):
        e = cfg.edges
        assert len(e) == len(set(e))
        assert cfg.path[0] == src and cfg.path[-1] == snk
        key = (frozenset(cfg.loops), cfg.path)
        assert key not in seen
        seen.add(key)


@pytest.mark.parametrize("T,mu,delta", [(1, 1.0, 0.1), (1, 0.5, 0.01), (2, 1.0, 0.1), (2, 0.3, 0.2)])
def test_determinant_oracle(T, mu, delta):
    lat = TorusLattice(T, 1.0, mu, delta)
    W, idx = transfer_matrix(lat)
    I = np.eye(len(idx))
    assert abs(cb.weighted_sum(lat) - np.linalg.det(I - W)) < 1e-12
    inv = np.linalg.inv(I - W)
    a0 = lat.edge_at(0, 0, 1)
    for f in lat.edges[:6]:
        assert abs(cb.finite_propagator(lat, a0, f) - inv[idx[a0], idx[f]]) < 1e-11


def test_t2_counts_and_real_denominator():
    lat = TorusLattice(2, 1.0, 1.0, 0.1)
    table = cb.monomial_table(lat)
    assert sum(c for _, c in table) == 641
    for mu, delta in [(1.0, 0.1), (0.4, 0.3), (2.0, 0.01)]:
        den = cb.weighted_sum(TorusLattice(2, 1.0, mu, delta))
        assert abs(den.imag) < 1e-12 * max(1.0, abs(den))


def test_size_and_delta_errors():
    with pytest.raises(SizeError):
        TorusLattice(4)
    with pytest.raises(ValueError):
        TorusLattice(1, delta=0.5)
    with pytest.raises(ValueError):
        TorusLattice(0)


def test_extrapolation_exact_for_quadratic():
    f = lambda d: 3 + 2 * d * d - 5 * d ** 4
    assert abs(cb._extrapolate([0.1, 0.01, 0.001], [f(d) for d in (0.1, 0.01, 0.001)]) - 3) < 1e-12


def test_anti_estimate_reports():
    est = cb.anti_checker_estimate(0, 0, T=2)
    assert set(est.estimate) == {1, 2} and len(est.raw[1]) == 3
    for k in (1, 2):
        assert math.isfinite(est.discrepancy(k))
