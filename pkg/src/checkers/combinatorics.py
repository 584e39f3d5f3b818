"""Loop configurations on a small torus and the finite-lattice propagator.

Lattice points are stored in doubled units ``X = 2x/eps``, ``Y = 2t/eps``
taken modulo ``2T``, with ``X + Y`` even.  An edge is ``(X, Y, d)`` going
from ``(X, Y)`` to ``(X + d, Y + 1)``, ``d = +-1``.

A configuration (loops, plus possibly one path from a source edge to a
sink edge) is the same thing as a choice, at every point, of a partial
bijection from incoming to outgoing edges: each chosen pair is a node.
The enumeration walks the points in a fixed order, tries the 7 partial
bijections at each one and prunes as soon as an edge is seen to have a
predecessor without a successor or vice versa.  Weights only depend on
five counts, so the result is a table of monomials that can be evaluated
for any ``(m eps, delta)`` afterwards.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Sequence

T_MAX = 3

Edge = tuple[int, int, int]
Point = tuple[int, int]


class SizeError(ValueError):
    pass


@dataclass(frozen=True)
class TorusLattice:
    T: int
    eps: float = 1.0
    m: float = 1.0
    delta: float = 0.1

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("lattice size must be >= 1")
        if self.T > T_MAX:
            raise SizeError(f"enumeration is limited to T <= {T_MAX}, got {self.T}")
        if not 0 < self.delta < 0.5:
            raise ValueError("delta must lie in (0, 1/2)")

    @property
    def mu(self) -> float:
        return self.m * self.eps

    @property
    def points(self) -> list[Point]:
        n = 2 * self.T
        return [(X, Y) for Y in range(n) for X in range(n) if (X + Y) % 2 == 0]

    @property
    def edges(self) -> list[Edge]:
        return [(X, Y, d) for X, Y in self.points for d in (-1, 1)]

    def end(self, e: Edge) -> Point:
        n = 2 * self.T
        return ((e[0] + e[2]) % n, (e[1] + 1) % n)

    def incoming(self, p: Point) -> list[Edge]:
        n = 2 * self.T
        return [((p[0] - d) % n, (p[1] - 1) % n, d) for d in (-1, 1)]

    def outgoing(self, p: Point) -> list[Edge]:
        return [(p[0], p[1], d) for d in (-1, 1)]

    def edge_at(self, ix: int, it: int, d: int) -> Edge:
        """Edge starting at the point ``(ix eps, it eps)`` reduced mod ``T eps``."""
        n = 2 * self.T
        return ((2 * ix) % n, (2 * it) % n, d)


class Monomial(NamedTuple):
    oddturns: int
    eventurns: int
    oddnodes: int
    evennodes: int
    loops: int


def node_kind(e: Edge, f: Edge) -> tuple[bool, bool]:
    """(is the node odd, is it a turn) for consecutive edges ``e, f``."""
    # the endpoint of e is the start of f
    return f[0] % 2 == 1, e[2] != f[2]


def arrow(mono: Monomial, mu: float, delta: float) -> complex:
    """Weight ``+-(-i mu)^oddturns (-delta)^eventurns / ...``, minus per loop."""
    num = (-1j * mu) ** mono.oddturns * (-delta) ** mono.eventurns
    den = (1 + mu * mu) ** (mono.oddnodes / 2) * (1 - delta * delta) ** (mono.evennodes / 2)
    return (-1) ** mono.loops * num / den


@dataclass(frozen=True)
class LoopConfiguration:
    """Loops as canonical edge cycles (starting at the least edge) plus an optional path."""

    loops: tuple[tuple[Edge, ...], ...]
    path: tuple[Edge, ...] | None
    monomial: Monomial

    def arrow(self, mu: float, delta: float) -> complex:
        return arrow(self.monomial, mu, delta)

    @property
    def edges(self) -> list[Edge]:
        out = [e for loop in self.loops for e in loop]
        if self.path:
            out.extend(self.path)
        return out


def _partial_bijections(ins: Sequence[Edge], outs: Sequence[Edge]):
    i0, i1 = ins
    o0, o1 = outs
    return [(), ((i0, o0),), ((i0, o1),), ((i1, o0),), ((i1, o1),),
            ((i0, o0), (i1, o1)), ((i0, o1), (i1, o0))]


def _canonical(cycle: list[Edge]) -> tuple[Edge, ...]:
    k = cycle.index(min(cycle))
    return tuple(cycle[k:] + cycle[:k])


def _structure(succ: dict[Edge, Edge], source: Edge | None):
    path = None
    seen = set()
    if source is not None:
        path = [source]
        while path[-1] in succ:
            path.append(succ[path[-1]])
        seen.update(path)
    loops = []
    for e in sorted(succ):
        if e in seen:
            continue
        cyc = [e]
        seen.add(e)
        while succ[cyc[-1]] != e:
            cyc.append(succ[cyc[-1]])
            seen.add(cyc[-1])
        loops.append(_canonical(cyc))
    return tuple(sorted(loops)), (tuple(path) if path is not None else None)


def _monomial(succ: dict[Edge, Edge], nloops: int) -> Monomial:
    ot = et = on = en = 0
    for e, f in succ.items():
        odd, turn = node_kind(e, f)
        if odd:
            on += 1
            ot += turn
        else:
            en += 1
            et += turn
    return Monomial(ot, et, on, en, nloops)


def _search(lat: TorusLattice, source: Edge | None, sink: Edge | None, visit) -> None:
    if (source is None) != (sink is None):
        raise ValueError("source and sink must be given together")
    points = lat.points
    order = {p: k for k, p in enumerate(points)}
    has_pred: dict[Edge, bool] = {}
    has_succ: dict[Edge, bool] = {}
    succ: dict[Edge, Edge] = {}

    def ok(e: Edge) -> bool:
        p, s = has_pred[e], has_succ[e]
        if e == source:
            return not p and (s or e == sink) and not (e == sink and s)
        if e == sink:
            return p and not s
        return p == s

    def rec(k: int) -> None:
        if k == len(points):
            visit(dict(succ))
            return
        v = points[k]
        ins, outs = lat.incoming(v), lat.outgoing(v)
        for choice in _partial_bijections(ins, outs):
            dom = {e for e, _ in choice}
            rng = {f for _, f in choice}
            for e in ins:
                has_succ[e] = e in dom
            for f in outs:
                has_pred[f] = f in rng
            # edges with both endpoints decided
            good = True
            for e in ins:
                if order[(e[0], e[1])] <= k and not ok(e):
                    good = False
                    break
            if good:
                for f in outs:
                    if order[lat.end(f)] < k and not ok(f):
                        good = False
                        break
            if not good:
                continue
            for e, f in choice:
                succ[e] = f
            rec(k + 1)
            for e, _ in choice:
                del succ[e]
        for e in ins:
            has_succ.pop(e, None)
        for f in outs:
            has_pred.pop(f, None)

    rec(0)


def enumerate_configs(lat: TorusLattice, source: Edge | None = None,
                      sink: Edge | None = None) -> list[LoopConfiguration]:
    """All configurations, listed explicitly (meant for ``T = 1`` and checks)."""
    out = []

    def visit(succ):
        loops, path = _structure(succ, source)
        out.append(LoopConfiguration(loops, path, _monomial(succ, len(loops))))

    _search(lat, source, sink, visit)
    return out


@lru_cache(maxsize=None)
def _monomials(T: int, source: Edge | None, sink: Edge | None) -> tuple[tuple[Monomial, int], ...]:
    counts: Counter = Counter()
    lat = TorusLattice(T)

    def visit(succ):
        loops, _ = _structure(succ, source)
        counts[_monomial(succ, len(loops))] += 1

    _search(lat, source, sink, visit)
    return tuple(sorted(counts.items()))


def monomial_table(lat: TorusLattice, source: Edge | None = None,
                   sink: Edge | None = None) -> tuple[tuple[Monomial, int], ...]:
    """Counts of configurations per monomial; independent of ``m, eps, delta``."""
    return _monomials(lat.T, source, sink)


def weighted_sum(lat: TorusLattice, source: Edge | None = None, sink: Edge | None = None) -> complex:
    """Sum of arrows over configurations (with the source and sink if given)."""
    return sum(c * arrow(mono, lat.mu, lat.delta) for mono, c in monomial_table(lat, source, sink))


def finite_propagator(lat: TorusLattice, source: Edge, sink: Edge) -> complex:
    den = weighted_sum(lat)
    if abs(den) < 1e-300:
        raise ZeroDivisionError("configuration sum vanishes")
    return weighted_sum(lat, source, sink) / den


def _extrapolate(deltas: Sequence[float], values: Sequence[complex]) -> complex:
    """Neville interpolation in ``delta^2`` evaluated at 0."""
    xs = [d * d for d in deltas]
    p = list(values)
    n = len(xs)
    for level in range(1, n):
        for i in range(n - level):
            j = i + level
            p[i] = (xs[j] * p[i] - xs[i] * p[i + 1]) / (xs[j] - xs[i])
    return p[0]


@dataclass
class AntiEstimate:
    ix: int
    it: int
    T: int
    deltas: tuple[float, ...]
    raw: dict[int, list[complex]] = field(default_factory=dict)
    estimate: dict[int, complex] = field(default_factory=dict)
    reference: dict[int, complex] = field(default_factory=dict)

    def discrepancy(self, k: int) -> float:
        return abs(self.estimate[k] - self.reference[k])


def anti_checker_estimate(ix: int, it: int, m: float = 1.0, eps: float = 1.0, T: int = 2,
                          deltas: Sequence[float] = (1e-1, 1e-2, 1e-3)) -> AntiEstimate:
    """``-2 (-i)^k A(a0 -> f_k)`` at fixed ``T``, extrapolated in ``delta``.

    The reference values are the Fourier ones at ``(ix, it+1)`` and
    ``(ix+1, it+1)``.  This is an experiment: no agreement is asserted.
    """
    from .lattice import LatticeParams
    from .spectral import anti_amplitude

    lat0 = TorusLattice(T, eps, m, deltas[0])
    a0 = lat0.edge_at(0, 0, 1)
    sinks = {1: lat0.edge_at(ix, it, -1), 2: lat0.edge_at(ix, it, 1)}
    res = AntiEstimate(ix, it, T, tuple(deltas))
    for k, f in sinks.items():
        vals = []
        for d in deltas:
            lat = TorusLattice(T, eps, m, d)
            vals.append(-2 * (-1j) ** k * finite_propagator(lat, a0, f))
        res.raw[k] = vals
        res.estimate[k] = _extrapolate(deltas, vals)
    params = LatticeParams(m, eps)
    res.reference[1] = anti_amplitude(ix, it + 1, params).A1
    res.reference[2] = anti_amplitude(ix + 1, it + 1, params).A2
    return res


def t1_denominator(mu: float, delta: float) -> complex:
    """Closed form of the configuration sum on the ``1 x 1`` torus."""
    n = math.sqrt(1 - delta * delta) * math.sqrt(1 + mu * mu)
    return (1 + 2 * (-1j * mu * delta) / n + 2 * (-1) / n
            + (mu * mu - delta * delta - mu * mu * delta * delta + 1) / n ** 2)
