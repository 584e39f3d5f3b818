"""Large-time and continuum-limit approximations of the amplitudes.

Conventions: lattice-valued functions take a *query* site ``(ix, it)`` in
integer units and apply the shifts of the underlying formulas themselves.
For a black query site ``(X, T)`` the ``a1`` formula is evaluated at the
base point ``(x, t) = (X, T - 1)`` and the ``a2`` formula at
``(X - 1, T - 1)``; for a white query site the same shifts give ``b1`` and
``b2``.  Functions of continuous ``(x, t)`` take physical coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import lattice
from .lattice import AmplitudePair, LatticeParams, UNIT
from .specfun import airy_ai, j0, j1, k0, k1, y0, y1

SLACK = 1e-12


class RegionError(ValueError):
    """Raised when a formula is evaluated outside its region of validity."""


class InfeasibleError(RuntimeError):
    pass


def _clamp(v: float, lo: float, hi: float) -> float:
    if v < lo - SLACK or v > hi + SLACK:
        raise RegionError(f"argument {v} outside [{lo}, {hi}]")
    return min(max(v, lo), hi)


def peak(params: LatticeParams = UNIT) -> float:
    """Peak velocity ``1/sqrt(1 + mu^2)``."""
    return 1.0 / math.sqrt(1.0 + params.mu ** 2)


# ---------------------------------------------------------------------------
# between the peaks


def theta(x: float, t: float, params: LatticeParams = UNIT) -> float:
    """Stationary-phase angle at real ``(x, t)``, ``|x|/t < 1/sqrt(1+mu^2)``."""
    mu, eps = params.mu, params.eps
    if t <= 0 or abs(x) / t >= peak(params) + SLACK:
        raise RegionError(f"(x, t) = ({x}, {t}) is not between the peaks")
    s = math.sqrt(t * t - x * x)
    u = _clamp(mu * t / (math.sqrt(1 + mu * mu) * s), -1, 1)
    w = _clamp(mu * x / s, -1, 1)
    return t / eps * math.asin(u) - x / eps * math.asin(w) + math.pi / 4


def _envelope(x: float, t: float, params: LatticeParams) -> float:
    mu, eps, m = params.mu, params.eps, params.m
    return eps * math.sqrt(2 * m / math.pi) * (t * t - (1 + mu * mu) * x * x) ** -0.25


def _between(x: float, t: float, params: LatticeParams, delta: float) -> None:
    if t <= 0 or abs(x) / t >= peak(params) - delta:
        raise RegionError(f"(x, t) = ({x}, {t}) is not between the peaks with margin {delta}")


def approx_between_peaks(ix: int, it: int, params: LatticeParams = UNIT,
                         delta: float = 0.0) -> AmplitudePair:
    """Main terms of the oscillatory regime at a black query site."""
    if (ix + it) % 2:
        raise ValueError(f"({ix}, {it}) is not a black site")
    eps = params.eps
    x1, t1 = ix * eps, (it - 1) * eps
    x2 = (ix - 1) * eps
    _between(x1, t1, params, delta)
    _between(x2, t1, params, delta)
    a1 = _envelope(x1, t1, params) * math.sin(theta(x1, t1, params))
    a2 = (_envelope(x2, t1, params) * math.sqrt((t1 + x2) / (t1 - x2))
          * math.cos(theta(x2, t1, params)))
    return AmplitudePair(a1, a2)


def anti_asymptotic(ix: int, it: int, params: LatticeParams = UNIT,
                    delta: float = 0.0) -> tuple[float, float]:
    """Main terms for ``(b1, b2)`` at a white query site."""
    if (ix + it) % 2 == 0:
        raise ValueError(f"({ix}, {it}) is not a white site")
    eps = params.eps
    x1, t1 = ix * eps, (it - 1) * eps
    x2 = (ix - 1) * eps
    _between(x1, t1, params, delta)
    _between(x2, t1, params, delta)
    b1 = _envelope(x1, t1, params) * math.cos(theta(x1, t1, params))
    b2 = -(_envelope(x2, t1, params) * math.sqrt((t1 + x2) / (t1 - x2))
           * math.sin(theta(x2, t1, params)))
    return b1, b2


def simple_asymptotic(x: float, t: float, params: LatticeParams = UNIT) -> complex:
    """Rough form ``eps sqrt(2m/(pi t)) exp(-i m sqrt(t^2-x^2) + i pi/4)``."""
    _between(x, t, params, 0.0)
    m, eps = params.m, params.eps
    return eps * math.sqrt(2 * m / (math.pi * t)) * complex(
        math.cos(-m * math.sqrt(t * t - x * x) + math.pi / 4),
        math.sin(-m * math.sqrt(t * t - x * x) + math.pi / 4))


# ---------------------------------------------------------------------------
# around the peaks


def airy_delta(x: float, t: float, params: LatticeParams = UNIT) -> float:
    """Scaled distance to the peak, the argument of ``Ai``."""
    m, eps, mu = params.m, params.eps, params.mu
    return (2 / (m * m * eps * t)) ** (1 / 3) * (math.sqrt(1 + mu * mu) * x - t) / eps


def approx_airy(ix: int, it: int, params: LatticeParams = UNIT, window: float = 3.0) -> AmplitudePair:
    """Airy main terms at a black query site near either peak."""
    if (ix + it) % 2:
        raise ValueError(f"({ix}, {it}) is not a black site")
    m, eps, mu = params.m, params.eps, params.mu
    tn = (it - 1) * eps
    scale = (2 / (m * m * eps * tn)) ** (1 / 3)

    def base(xq):
        xn = abs(xq)
        if abs(xn / tn - peak(params)) >= window * tn ** (-2 / 3):
            raise RegionError(f"x = {xq} at t = {tn} is outside the Airy window")
        return xn, scale * airy_ai(airy_delta(xn, tn, params))

    # a1(+-x_n, t_n + eps), sign (-1)^((t_n - x_n - eps) / 2 eps)
    xn, ai = base(ix * eps)
    k = round((tn - xn - eps) / (2 * eps))
    a1 = (-1) ** k * mu * ai
    # a2(+-x_n + eps, t_n + eps): the sign choice is that of x_n
    xq = (ix - 1) * eps
    xn, ai = base(xq)
    k = round((tn - xn) / (2 * eps))
    side = 1 if xq >= 0 else -1
    a2 = (-1) ** k * (math.sqrt(1 + mu * mu) + side) * ai
    return AmplitudePair(a1, a2)


# ---------------------------------------------------------------------------
# outside the peaks


def rate_H(v: float, params: LatticeParams = UNIT) -> float:
    """Decay rate ``H(v)`` for ``1/sqrt(1+mu^2) <= |v| < 1``."""
    mu = params.mu
    av = abs(v)
    if not (peak(params) - SLACK <= av < 1):
        raise RegionError(f"|v| = {av} is not outside the peaks")
    u = max(mu / math.sqrt((1 + mu * mu) * (1 - v * v)), 1.0)
    w = max(mu * av / math.sqrt(1 - v * v), 1.0)
    return -2 * math.acosh(u) + 2 * av * math.acosh(w)


def approx_outside(ix: int, it: int, params: LatticeParams = UNIT) -> AmplitudePair:
    """Exponentially small main terms at a black query site beyond the peaks."""
    if (ix + it) % 2:
        raise ValueError(f"({ix}, {it}) is not a black site")
    m, eps, mu = params.m, params.eps, params.mu
    tn = (it - 1) * eps

    def common(xn):
        v = xn / tn
        if not (peak(params) < abs(v) < 1):
            raise RegionError(f"v = {v} is not outside the peaks")
        pref = eps * math.sqrt(m / (2 * math.pi * tn)) / ((1 + mu * mu) * v * v - 1) ** 0.25
        return v, pref * math.exp(-tn / (2 * eps) * rate_H(v, params))

    xn = ix * eps
    v, c = common(xn)
    a1 = (-1) ** round((tn - abs(xn) - eps) / (2 * eps)) * c
    xn = (ix - 1) * eps
    v, c = common(xn)
    a2 = (-1) ** round((tn - abs(xn)) / (2 * eps)) * c * math.sqrt((1 + v) / (1 - v))
    return AmplitudePair(a1, a2)


def _log_probability(ix: int, it: int, params: LatticeParams) -> float:
    if params.m == 1 and params.eps == 1:
        A = lattice.amplitude_exact(ix, it)
        n = A.A1 ** 2 + A.A2 ** 2
        if n == 0:
            return -math.inf
        return math.log(n) - (it - 1) * math.log(2)
    P = lattice.probability(ix, it, params)
    return math.log(P) if P > 0 else -math.inf


def free_energy(v: float, t: float, params: LatticeParams = UNIT) -> float:
    """``(1/t) log P(2 eps ceil(v t / 2 eps), t)`` for ``t`` in ``2 eps Z``."""
    eps = params.eps
    it = round(t / eps)
    if abs(it * eps - t) > 1e-9 * max(1.0, t) or it % 2:
        raise ValueError(f"t = {t} is not in 2*eps*Z")
    ix = 2 * math.ceil(v * t / (2 * eps) - 1e-12)
    return _log_probability(ix, it, params) / t


# ---------------------------------------------------------------------------
# limiting distribution


def limiting_F(v: float, params: LatticeParams = UNIT) -> float:
    """Limiting cumulative distribution of ``x/t``."""
    n = 1 + params.mu ** 2
    edge = 1 / math.sqrt(n)
    if v <= -edge:
        return 0.0
    if v >= edge:
        return 1.0
    g = (1 - n * v) / (math.sqrt(n) * (1 - v))
    return math.acos(min(max(g, -1.0), 1.0)) / math.pi


def limiting_density(v: float, params: LatticeParams = UNIT) -> float:
    mu = params.mu
    n = 1 + mu * mu
    if abs(v) >= 1 / math.sqrt(n):
        return 0.0
    return mu / (math.pi * (1 - v) * math.sqrt(1 - n * v * v))


def _row_distribution(it: int, params: LatticeParams):
    r = lattice.row(it, params)
    P = r.P
    keep = P > 0
    return r.ix[keep] / it, P[keep]


def empirical_cdf(v: float, t: float, params: LatticeParams = UNIT) -> float:
    """``sum_{x <= v t} P(x, t)``."""
    it = round(t / params.eps)
    vs, P = _row_distribution(it, params)
    return float(P[vs <= v + 1e-15].sum())


def cdf_sup_distance(t: float, params: LatticeParams = UNIT) -> float:
    """``sup_v |F_t(v) - F(v)|``, checked on both sides of every jump."""
    it = round(t / params.eps)
    vs, P = _row_distribution(it, params)
    cum = np.cumsum(P)
    worst = 0.0
    prev = 0.0
    for v, c in zip(vs, cum):
        F = limiting_F(v, params)
        worst = max(worst, abs(prev - F), abs(c - F))
        prev = c
    return worst


def moment(r: int, t: float, params: LatticeParams = UNIT) -> float:
    """``sum_x (x/t)^r P(x, t)``."""
    it = round(t / params.eps)
    vs, P = _row_distribution(it, params)
    return float(np.sum(vs ** r * P))


def limit_moment(r: int, params: LatticeParams = UNIT, nodes: int = 200) -> float:
    """``int v^r F'(v) dv`` by Gauss-Legendre after ``v = sin(phi)/sqrt(1+mu^2)``."""
    mu = params.mu
    n = 1 + mu * mu
    x, w = np.polynomial.legendre.leggauss(nodes)
    phi = x * math.pi / 2
    v = np.sin(phi) / math.sqrt(n)
    f = mu / (math.pi * (1 - v)) * v ** r / math.sqrt(n)
    return float(np.sum(w * f) * math.pi / 2)


# ---------------------------------------------------------------------------
# continuum limit and propagators


def continuum_approx(x: float, t: float, params: LatticeParams = UNIT) -> complex:
    """Bessel main term ``m eps (J0(ms) - i (t+x)/s J1(ms))`` inside the light cone."""
    if not abs(x) < t:
        raise RegionError("continuum approximation needs |x| < t")
    m, eps = params.m, params.eps
    s = math.sqrt(t * t - x * x)
    return m * eps * complex(j0(m * s), -(t + x) / s * j1(m * s))


def retarded_G(x: float, t: float, m: float) -> np.ndarray:
    """Retarded spin-1/2 propagator, regular part; zero for ``t < |x|``."""
    if t < abs(x):
        return np.zeros((2, 2), dtype=complex)
    s2 = t * t - x * x
    if s2 <= 0:
        raise RegionError("propagator entries are singular on the light cone")
    s = math.sqrt(s2)
    J0, J1 = j0(m * s), j1(m * s)
    return m / 2 * np.array([[J0, -(t + x) / s * J1],
                             [(t - x) / s * J1, J0]], dtype=complex)


def feynman_G(x: float, t: float, m: float) -> np.ndarray:
    """Feynman spin-1/2 propagator, regular part (Bessel ``J, Y`` inside, ``K`` outside)."""
    s2 = abs(t * t - x * x)
    if s2 == 0:
        raise RegionError("propagator entries are singular on the light cone")
    s = math.sqrt(s2)
    z = m * s
    if abs(x) < abs(t):
        H0 = complex(j0(z), -y0(z))
        H1 = complex(j1(z), -y1(z))
        return m / 4 * np.array([[H0, -(t + x) / s * H1],
                                 [(t - x) / s * H1, H0]], dtype=complex)
    K0, K1 = k0(z), k1(z)
    return 1j * m / (2 * math.pi) * np.array([[K0, (t + x) / s * K1],
                                              [(x - t) / s * K1, K0]], dtype=complex)


def feynman_kernel(x: float, t: float, m: float) -> complex:
    """Free-particle kernel ``sqrt(m/(2 pi t)) exp(i m x^2/(2t) - i pi/4)``."""
    ph = m * x * x / (2 * t) - math.pi / 4
    return math.sqrt(m / (2 * math.pi * t)) * complex(math.cos(ph), math.sin(ph))


def lattice_ceil(v: float, eps: float) -> int:
    """Integer ``k`` with ``2 eps k = 2 eps ceil(v / 2 eps)``, robust to rounding."""
    q = v / (2 * eps)
    k = round(q)
    if abs(q - k) < 1e-9:
        return k
    return math.ceil(q)


def continuum_sup_error(m: float, t: float, eps: float, delta: float) -> float:
    """``max |a(x,t)/(2 eps) - G11 - i G12|`` over ``x in 2 eps Z``, ``t - |x| >= delta``."""
    params = LatticeParams(m, eps)
    it = 2 * lattice_ceil(t, eps)
    r = lattice.row(it, params)
    xs = r.ix * eps
    worst = 0.0
    for j, x in enumerate(xs):
        if r.ix[j] % 2 or t - abs(x) < delta - 1e-12:
            continue
        G = retarded_G(x, t, m)
        approx = complex(r.a1[j], r.a2[j]) / (2 * eps)
        worst = max(worst, abs(approx - G[0, 0] - 1j * G[0, 1]))
    return worst


def concentration(m: float, t: float, eps: float, delta: float) -> float:
    """Probability mass with ``t - |x| <= delta``."""
    params = LatticeParams(m, eps)
    it = round(t / eps)
    r = lattice.row(it, params)
    near = t - np.abs(r.ix * eps) <= delta + 1e-12
    return float(r.P[near].sum())


# ---------------------------------------------------------------------------
# approximation algorithm for the retarded propagator

ALG_C = 100.0
MAX_ROWS = 10 ** 7


def algorithm1_eps(m: float, x: float, t: float, accuracy: float) -> float:
    """Lattice step guaranteeing the requested accuracy."""
    if not (m > 0 and abs(x) < t and accuracy > 0):
        raise ValueError("need m > 0, |x| < t and a positive accuracy")
    first = 1 / (16 * math.exp(3 * m * t))
    # logs keep huge accuracies and large m*t from overflowing
    log_second = 3 * (math.log(accuracy) - math.log(9 * ALG_C * m) - m * m * t * t)
    second = math.exp(log_second) if log_second < 700 else math.inf
    return (t - abs(x)) * min(first, second)


@dataclass
class Algorithm1Result:
    eps: float
    prescribed_eps: float
    feasible: bool
    G: np.ndarray | None = None
    G_exact: np.ndarray | None = None

    @property
    def error(self) -> float | None:
        if self.G is None:
            return None
        return float(np.max(np.abs(self.G - self.G_exact)))


def algorithm1_run(m: float, x: float, t: float, accuracy: float,
                   eps_override: float | None = None) -> Algorithm1Result:
    """Approximate ``G^R(x, t)`` from the lattice; infeasible steps are flagged, not run."""
    prescribed = algorithm1_eps(m, x, t, accuracy)
    eps = prescribed if eps_override is None else float(eps_override)
    it = 2 * lattice_ceil(t, eps)
    if eps_override is None and t / eps > MAX_ROWS:
        return Algorithm1Result(eps, prescribed, False)
    params = LatticeParams(m, eps)
    r = lattice.row(it, params)
    G = np.zeros((2, 2), dtype=complex)
    for k in (1, 2):
        for l in (1, 2):
            sign = (-1) ** ((k - 1) * l)
            ix = 2 * lattice_ceil(sign * x, eps)
            comp = (k + l) % 2 + 1
            pair = r.at(ix)
            G[k - 1, l - 1] = sign / (2 * eps) * (pair.a1 if comp == 1 else pair.a2)
    return Algorithm1Result(eps, prescribed, True, G, retarded_G(x, t, m))


# ---------------------------------------------------------------------------
# Feynman triple limit


def triple_limit_ratio(x: float, t: float, eps: float, m: float = 1.0) -> complex:
    """Ratio of ``a(x,t,m,eps)/(2 i eps)`` to ``sqrt(m/2 pi t) exp(-imt - i pi/4 + imx^2/2t)``."""
    ix, it = round(x / eps), round(t / eps)
    if abs(ix * eps - x) > 1e-9 or abs(it * eps - t) > 1e-9 or (ix + it) % 2:
        raise ValueError(f"({x}, {t}) is not a black lattice site for eps = {eps}")
    a = lattice.amplitude_dp(ix, it, LatticeParams(m, eps)).a
    lhs = a / (2j * eps)
    ph = -m * t - math.pi / 4 + m * x * x / (2 * t)
    rhs = math.sqrt(m / (2 * math.pi * t)) * complex(math.cos(ph), math.sin(ph))
    return lhs / rhs


def triple_limit_check(sequence: Iterable[tuple[float, float, float]], m: float = 1.0) -> np.ndarray:
    """Ratios along a sequence of ``(x_n, t_n, eps_n)``."""
    return np.array([triple_limit_ratio(x, t, e, m) for x, t, e in sequence])


def counterexample_sequence(ns: Sequence[int]) -> list[tuple[float, float, float]]:
    """``(0, 4 n^2, 1/(2n))``: the ratio tends to ``exp(i m^3/3)``."""
    return [(0.0, 4.0 * n * n, 1 / (2 * n)) for n in ns]


def fixed_step_sequence(ns: Sequence[int], eps: float) -> list[tuple[float, float, float]]:
    """``(0, 2 n eps, eps)``: the ratio has no limit."""
    return [(0.0, 2 * n * eps, eps) for n in ns]


def admissible_sequence(ns: Sequence[int], power: float = 0.6) -> list[tuple[float, float, float]]:
    """``x = 0``, ``t = n``, ``eps = 1/k`` with ``k`` the even integer nearest ``n^power``."""
    out = []
    for n in ns:
        k = max(2, 2 * round(n ** power / 2))
        out.append((0.0, float(n), 1.0 / k))
    return out
